"""Single-linkage agglomerative clustering over transfer-time distances."""

from dataclasses import dataclass

import numpy as np

from ..errors import InputError


@dataclass(frozen=True)
class Merge:
    left: tuple  # member labels, sorted
    right: tuple
    height: float


def symmetrize(matrix: np.ndarray) -> np.ndarray:
    """d(i, j) = (t_ij + t_ji) / 2."""
    m = np.asarray(matrix, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InputError(f"expected a square matrix, got {m.shape}")
    if not np.isfinite(m).all():
        raise InputError("matrix has missing or non-finite entries")
    return (m + m.T) / 2.0


def cluster_characters(matrix: np.ndarray, labels) -> list:
    """Merge dendrogram via single linkage on the symmetrized distances.

    Returns merges in order; ties break toward the lowest (i, j) cluster
    indices so the result is deterministic.
    """
    dist = symmetrize(matrix)
    labels = list(labels)
    if len(labels) != dist.shape[0]:
        raise InputError("labels must match matrix size")

    clusters = [(i,) for i in range(len(labels))]
    merges = []
    while len(clusters) > 1:
        best = None
        for i in range(len(clusters)):
            for j in range(i + 1, len(clusters)):
                d = min(dist[a, b] for a in clusters[i] for b in clusters[j])
                if best is None or d < best[0]:
                    best = (d, i, j)
        d, i, j = best
        left, right = clusters[i], clusters[j]
        merges.append(Merge(
            left=tuple(sorted(labels[a] for a in left)),
            right=tuple(sorted(labels[b] for b in right)),
            height=float(d),
        ))
        clusters = [c for k, c in enumerate(clusters) if k not in (i, j)]
        clusters.append(left + right)
    return merges


def format_merges(merges) -> str:
    lines = []
    for k, m in enumerate(merges, 1):
        lines.append(f"{k}: {{{', '.join(m.left)}}} + {{{', '.join(m.right)}}} @ {m.height:g}")
    return "\n".join(lines) + "\n"
