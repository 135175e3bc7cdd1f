"""Deterministic two-player fighting simulator at 30Hz.

``step`` is a pure function of (state, action pair): no hidden state, no
randomness, so identical inputs produce bit-identical successors. The update
pipeline per tick:

  1. control   - each player's action resolves state transitions
  2. physics   - gravity, velocity integration, landing, friction
  3. combat    - simultaneous hitbox/hurtbox resolution for both players
  4. blast     - KO detection and respawn
  5. counters  - attack/stun/dodge/invulnerability frame bookkeeping

Combat is resolved simultaneously from a pre-combat snapshot so the update
commutes with mirroring the stage and swapping seats.
"""

from ..errors import ConfigError, InputError
from .actions import NUM_ACTIONS, ControllerAction, decode_action
from .types import (
    ActionState,
    GameState,
    HitEvent,
    KoEvent,
    PlayerState,
    Roster,
    StepEvents,
)

TICK_RATE_HZ = 30

# States in which the player's controller input is honored.
_CONTROLLABLE = (
    ActionState.IDLE,
    ActionState.WALK,
    ActionState.DASH,
    ActionState.AIRBORNE,
    ActionState.SHIELD,
    ActionState.RESPAWN,
)

_GROUND_STATES = (
    ActionState.IDLE,
    ActionState.WALK,
    ActionState.DASH,
    ActionState.RESPAWN,
    ActionState.SHIELD,
)


def _sign(v: float) -> int:
    if v > 0:
        return 1
    if v < 0:
        return -1
    return 0


class MeleeLite:
    """Simulator bound to one roster. Instances are single-owner."""

    def __init__(self, roster: Roster, damage_weight: float = 0.01):
        self.roster = roster
        self.physics = roster.physics
        self.stage = roster.stage
        self.damage_weight = damage_weight

    # ------------------------------------------------------------------
    # Game setup

    def new_game(self, p1_character: str, p2_character: str, seed: int = 0) -> GameState:
        for name in (p1_character, p2_character):
            if name not in self.roster.characters:
                raise ConfigError(
                    f"unknown character {name!r}; roster has {sorted(self.roster.characters)}"
                )
        off = self.stage.spawn_offset
        return GameState(
            tick=0,
            p1=self._spawn(p1_character, -off, facing=1),
            p2=self._spawn(p2_character, +off, facing=-1),
            rng_seed=seed,
        )

    def _spawn(self, character: str, x: float, facing: int) -> PlayerState:
        return PlayerState(
            x=x, y=0.0, vx=0.0, vy=0.0, facing=facing, damage=0.0,
            state=ActionState.IDLE, state_frame=0, move="", hit_used=False,
            jumps_left=self.physics.air_jumps, kos_taken=0, character=character,
        )

    # ------------------------------------------------------------------
    # Stepping

    def step(self, state: GameState, a1: int, a2: int) -> tuple[GameState, StepEvents]:
        if not 0 <= a1 < NUM_ACTIONS or not 0 <= a2 < NUM_ACTIONS:
            raise InputError(f"action indices ({a1}, {a2}) out of range 0..{NUM_ACTIONS - 1}")

        p1 = state.p1.copy()
        p2 = state.p2.copy()
        events = StepEvents()

        self._control(p1, decode_action(a1))
        self._control(p2, decode_action(a2))

        self._integrate(p1)
        self._integrate(p2)

        fresh = [False, False]  # hitstun/respawn applied this tick, skip countdown
        damage_by = [0.0, 0.0]
        # Decide both hits against the same snapshot, then apply both.
        hit_on_p2 = self._attack_decision(p1, p2)
        hit_on_p1 = self._attack_decision(p2, p1)
        if hit_on_p2 is not None:
            damage_by[0] += self._apply_hit(p1, p2, hit_on_p2, attacker_seat=1,
                                            events=events, fresh=fresh, victim_idx=1)
        if hit_on_p1 is not None:
            damage_by[1] += self._apply_hit(p2, p1, hit_on_p1, attacker_seat=2,
                                            events=events, fresh=fresh, victim_idx=0)

        kos = [False, False]
        for idx, p in enumerate((p1, p2)):
            if self._out_of_bounds(p):
                self._respawn(p)
                fresh[idx] = True
                kos[idx] = True
                events.kos.append(KoEvent(victim=idx + 1))

        self._advance_counters(p1, fresh[0])
        self._advance_counters(p2, fresh[1])

        reward_p1 = (
            (1.0 if kos[1] else 0.0)
            - (1.0 if kos[0] else 0.0)
            + self.damage_weight * (damage_by[0] - damage_by[1])
        )
        events.reward_p1 = reward_p1
        events.reward_p2 = -reward_p1  # zero-sum by construction

        return GameState(tick=state.tick + 1, p1=p1, p2=p2, rng_seed=state.rng_seed), events

    # ------------------------------------------------------------------
    # Phase 1: control

    def _control(self, p: PlayerState, ca: ControllerAction) -> None:
        if p.state not in _CONTROLLABLE:
            return
        char = self.roster.characters[p.character]
        sdx, sdy = ca.stick_dx, ca.stick_dy
        grounded = self._grounded(p)

        if p.state == ActionState.AIRBORNE or not grounded:
            self._control_air(p, ca, char)
            return

        # Grounded. Any transition out of RESPAWN forfeits the invulnerability.
        was_respawn = p.state == ActionState.RESPAWN

        if ca.button == "l":
            if sdy < 0:
                self._enter_dodge(p)
            elif p.state != ActionState.SHIELD:
                p.state = ActionState.SHIELD
                p.state_frame = 0
            return
        if p.state == ActionState.SHIELD:
            # Shield released this tick; continue resolving the new input below.
            p.state = ActionState.IDLE
            p.state_frame = 0

        if ca.button == "x":
            p.state = ActionState.JUMPSQUAT
            p.state_frame = 0
            return
        if ca.button in ("a", "b", "z"):
            if sdx != 0:
                p.facing = sdx
            self._start_attack(p, ca, char)
            return

        # Movement only.
        if sdx != 0:
            p.facing = sdx
            if sdy == 0:
                p.state = ActionState.DASH
                p.vx = sdx * char.dash_speed
            else:
                p.state = ActionState.WALK
                p.vx = sdx * char.walk_speed
            p.state_frame = 0
        else:
            if not was_respawn:
                p.state = ActionState.IDLE
                p.state_frame = 0
            # neutral input inside RESPAWN keeps the invulnerability ticking

    def _control_air(self, p: PlayerState, ca: ControllerAction, char) -> None:
        sdx = ca.stick_dx
        if ca.button == "x" and p.jumps_left > 0:
            p.vy = char.jump_velocity * self.physics.air_jump_ratio
            p.jumps_left -= 1
            p.state = ActionState.AIRBORNE
            p.state_frame = 0
        elif ca.button in ("a", "b", "z"):
            self._start_attack(p, ca, char)
        elif ca.button == "l":
            self._enter_dodge(p)
        if sdx != 0 and p.state in (ActionState.AIRBORNE, ActionState.ATTACK):
            p.vx = sdx * char.air_speed

    def _enter_dodge(self, p: PlayerState) -> None:
        p.state = ActionState.DODGE
        p.state_frame = self.physics.dodge_invuln_frames + self.physics.dodge_recovery_frames

    @staticmethod
    def _move_slot(ca: ControllerAction) -> str:
        if ca.button == "b":
            return "special"
        if ca.button == "z":
            return "grab"
        if ca.stick_dy > 0 and ca.stick_dx == 0:
            return "up"
        if ca.stick_dy < 0 and ca.stick_dx == 0:
            return "down"
        if ca.stick_dx != 0:
            return "side"
        return "jab"

    def _start_attack(self, p: PlayerState, ca: ControllerAction, char) -> None:
        # Lunge velocity is asserted in _integrate while the move is in its
        # startup+active window.
        p.state = ActionState.ATTACK
        p.state_frame = 0
        p.move = self._move_slot(ca)
        p.hit_used = False

    # ------------------------------------------------------------------
    # Phase 2: physics

    def _grounded(self, p: PlayerState) -> bool:
        return p.y == 0.0 and abs(p.x) <= self.stage.platform_half_width

    def _integrate(self, p: PlayerState) -> None:
        phys = self.physics
        grounded_before = self._grounded(p)
        y_before = p.y

        if p.state == ActionState.ATTACK:
            char = self.roster.characters[p.character]
            move = char.moves[p.move]
            if move.lunge != 0.0 and \
                    move.startup <= p.state_frame < move.startup + move.active:
                p.vx = p.facing * move.lunge

        if not grounded_before:
            p.vy -= phys.gravity
            if p.vy < -phys.terminal_fall_speed:
                p.vy = -phys.terminal_fall_speed

        p.x += p.vx
        p.y += p.vy

        on_platform = abs(p.x) <= self.stage.platform_half_width
        if p.y <= 0.0 and y_before >= 0.0 and on_platform:
            # Landed (or never left the ground).
            p.y = 0.0
            if not grounded_before or p.vy < 0.0:
                p.vy = 0.0
                if p.state in (ActionState.AIRBORNE, ActionState.DODGE):
                    p.state = ActionState.IDLE
                    p.state_frame = 0
                p.jumps_left = phys.air_jumps
        elif grounded_before and not on_platform:
            # Walked or slid off the edge.
            if p.state in _GROUND_STATES:
                p.state = ActionState.AIRBORNE
                p.state_frame = 0

        grounded_now = self._grounded(p)
        if grounded_now and p.state not in (ActionState.WALK, ActionState.DASH):
            lunging = False
            if p.state == ActionState.ATTACK:
                move = self.roster.characters[p.character].moves[p.move]
                lunging = move.lunge != 0.0 and \
                    move.startup <= p.state_frame < move.startup + move.active
            if not lunging:
                p.vx *= phys.friction

    # ------------------------------------------------------------------
    # Phase 3: combat

    def _invulnerable(self, p: PlayerState) -> bool:
        if p.state == ActionState.RESPAWN:
            return True
        if p.state == ActionState.DODGE:
            return p.state_frame > self.physics.dodge_recovery_frames
        return False

    def _hitbox_rect(self, p: PlayerState):
        move = self.roster.characters[p.character].moves[p.move]
        dx, dy, w, h = move.hitbox
        if p.facing >= 0:
            x_lo = p.x + dx
            x_hi = p.x + dx + w
        else:
            x_lo = p.x - dx - w
            x_hi = p.x - dx
        return x_lo, x_hi, p.y + dy, p.y + dy + h

    def _hurtbox_rect(self, p: PlayerState):
        half = self.physics.hurtbox_width / 2.0
        return p.x - half, p.x + half, p.y, p.y + self.physics.hurtbox_height

    def _attack_decision(self, att: PlayerState, vic: PlayerState):
        """Decide whether att's attack connects this tick, against the
        pre-combat snapshot. Returns None or (verdict, move config); the move
        is captured here because applying a simultaneous trade mutates both
        players."""
        if att.state != ActionState.ATTACK or att.hit_used:
            return None
        move = self.roster.characters[att.character].moves[att.move]
        if not (move.startup <= att.state_frame < move.startup + move.active):
            return None
        ax_lo, ax_hi, ay_lo, ay_hi = self._hitbox_rect(att)
        vx_lo, vx_hi, vy_lo, vy_hi = self._hurtbox_rect(vic)
        if ax_hi < vx_lo or vx_hi < ax_lo or ay_hi < vy_lo or vy_hi < ay_lo:
            return None
        if self._invulnerable(vic):
            return None  # attack passes through, not consumed
        if vic.state == ActionState.SHIELD and att.move != "grab":
            return "blocked", move
        return "hit", move

    def _apply_hit(self, att: PlayerState, vic: PlayerState, decision,
                   attacker_seat: int, events: StepEvents, fresh: list, victim_idx: int) -> float:
        verdict, move = decision
        att.hit_used = True
        if verdict == "blocked":
            events.hits.append(HitEvent(attacker=attacker_seat, damage_dealt=0.0, blocked=True))
            return 0.0
        vic_char = self.roster.characters[vic.character]

        vic.damage += move.damage
        knockback = (move.base_knockback + vic.damage * move.knockback_growth) / vic_char.weight
        direction = _sign(vic.x - att.x)
        if direction == 0:
            direction = att.facing
        vic.vx = direction * knockback
        vic.vy = knockback * self.physics.knockback_up_ratio
        stun = round(self.physics.hitstun_base + self.physics.hitstun_per_knockback * knockback)
        vic.state = ActionState.HITSTUN
        vic.state_frame = min(self.physics.hitstun_max, int(stun))
        vic.move = ""
        vic.hit_used = False
        fresh[victim_idx] = True

        events.hits.append(HitEvent(attacker=attacker_seat, damage_dealt=move.damage))
        return move.damage

    # ------------------------------------------------------------------
    # Phase 4: blast zones

    def _out_of_bounds(self, p: PlayerState) -> bool:
        s = self.stage
        return p.x < s.blast_left or p.x > s.blast_right or p.y < s.blast_bottom or p.y > s.blast_top

    def _respawn(self, p: PlayerState) -> None:
        ko_x = p.x
        p.kos_taken += 1
        p.x = self.stage.respawn_x
        p.y = self.stage.respawn_y
        p.vx = 0.0
        p.vy = 0.0
        p.damage = 0.0
        p.state = ActionState.RESPAWN
        p.state_frame = self.stage.respawn_invuln
        p.move = ""
        p.hit_used = False
        p.jumps_left = self.physics.air_jumps
        if ko_x != 0.0:
            p.facing = -_sign(ko_x)  # face back toward the stage

    # ------------------------------------------------------------------
    # Phase 5: frame counters

    def _advance_counters(self, p: PlayerState, fresh: bool) -> None:
        if p.state == ActionState.ATTACK:
            p.state_frame += 1
            move = self.roster.characters[p.character].moves[p.move]
            if p.state_frame >= move.total_frames:
                p.move = ""
                p.hit_used = False
                p.state_frame = 0
                p.state = ActionState.IDLE if self._grounded(p) else ActionState.AIRBORNE
        elif p.state == ActionState.JUMPSQUAT:
            p.state_frame += 1
            if p.state_frame >= self.physics.jumpsquat_frames:
                # Liftoff: next integration step carries the player off the
                # ground before gravity resumes.
                p.vy = self.roster.characters[p.character].jump_velocity
                p.state = ActionState.AIRBORNE
                p.state_frame = 0
        elif p.state in (ActionState.HITSTUN, ActionState.DODGE, ActionState.RESPAWN):
            if fresh:
                return
            p.state_frame -= 1
            if p.state_frame <= 0:
                p.state_frame = 0
                p.state = ActionState.IDLE if self._grounded(p) else ActionState.AIRBORNE


# ----------------------------------------------------------------------
# Symmetry helpers (used by tests and paired self-play evaluation)

def mirror_player(p: PlayerState) -> PlayerState:
    q = p.copy()
    q.x = -p.x
    q.vx = -p.vx
    q.facing = -p.facing
    return q


def swap_players(state: GameState) -> GameState:
    return GameState(tick=state.tick, p1=state.p2, p2=state.p1, rng_seed=state.rng_seed)


def mirror_state(state: GameState) -> GameState:
    return GameState(
        tick=state.tick,
        p1=mirror_player(state.p1),
        p2=mirror_player(state.p2),
        rng_seed=state.rng_seed,
    )
