"""Multistage phase II trials with responder / early-progression stopping rules.

Patients are classified into three categories (responder, non-responder,
early progression). At the end of stage ``s`` the cumulative counts
``(r, e)`` decide between stopping (promising / ineffective) and enrolling
the next cohort.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import InvalidDesign, NotDecisionStage, NotStopState
from .lattice import Region
from .path_counting import multinomial


class Decision(enum.Enum):
    PROMISING = "Promising"
    INEFFECTIVE = "Ineffective"
    CONTINUE = "Continue"


@dataclass(frozen=True)
class Stage:
    """One cohort. ``promising=(r_min, e_max)``, ``ineffective=(r_max, e_min)``.

    On the final stage a missing ineffective rule means "everything not promising".
    """

    n: int
    promising: tuple[int, int] | None = None
    ineffective: tuple[int, int] | None = None
    final: bool = False


@dataclass(frozen=True)
class TrialState:
    j: int
    r: int
    e: int

    def __post_init__(self):
        if self.r < 0 or self.e < 0 or self.r + self.e > self.j:
            raise ValueError(f"invalid trial state {self}")

    @property
    def point(self) -> tuple[int, int, int]:
        return (self.r, self.j - self.r - self.e, self.e)


@dataclass(frozen=True)
class TrialDesign:
    stages: tuple[Stage, ...]

    def __post_init__(self):
        object.__setattr__(self, "stages", tuple(self.stages))

    @property
    def K(self) -> int:
        return len(self.stages)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(s.n for s in self.stages)

    @property
    def cumulative(self) -> tuple[int, ...]:
        out, tot = [], 0
        for s in self.stages:
            tot += s.n
            out.append(tot)
        return tuple(out)

    def stage_of(self, j: int) -> int | None:
        """1-based stage whose end is at ``j`` patients, or None."""
        try:
            return self.cumulative.index(j) + 1
        except ValueError:
            return None

    @classmethod
    def from_json(cls, data: dict) -> "TrialDesign":
        stages = []
        raw = data["stages"]
        for idx, st in enumerate(raw):
            last = idx == len(raw) - 1
            rules = st.get("final", st) if last else st
            if not last and "final" in st:
                raise InvalidDesign(f"stage {idx + 1} is marked final but is not the last")
            prom = rules.get("promising")
            ineff = rules.get("ineffective")
            stages.append(Stage(
                n=int(st["n"]),
                promising=(int(prom["r_min"]), int(prom["e_max"])) if prom else None,
                ineffective=(int(ineff["r_max"]), int(ineff["e_min"])) if ineff else None,
                final=last,
            ))
        return cls(tuple(stages))

    def to_json(self) -> dict:
        out = []
        for st in self.stages:
            rules = {}
            if st.promising:
                rules["promising"] = {"r_min": st.promising[0], "e_max": st.promising[1]}
            if st.ineffective:
                rules["ineffective"] = {"r_max": st.ineffective[0], "e_min": st.ineffective[1]}
            out.append({"n": st.n, "final": rules} if st.final else {"n": st.n, **rules})
        return {"stages": out}


def _matches_promising(stage: Stage, r: int, e: int) -> bool:
    return stage.promising is not None and r >= stage.promising[0] and e <= stage.promising[1]


def _matches_ineffective(stage: Stage, r: int, e: int) -> bool:
    return stage.ineffective is not None and r <= stage.ineffective[0] and e >= stage.ineffective[1]


def _classify(stage: Stage, r: int, e: int) -> Decision:
    if _matches_promising(stage, r, e):
        return Decision.PROMISING
    if _matches_ineffective(stage, r, e):
        return Decision.INEFFECTIVE
    if stage.final:
        if stage.ineffective is None:
            return Decision.INEFFECTIVE
        raise InvalidDesign(f"final stage leaves (r={r}, e={e}) unclassified")
    return Decision.CONTINUE


def trial_decision(design: TrialDesign, state: TrialState) -> Decision:
    s = design.stage_of(state.j)
    if s is None:
        raise NotDecisionStage(f"{state.j} patients is not the end of a stage")
    return _classify(design.stages[s - 1], state.r, state.e)


def _stage_states(prev: Sequence[tuple[int, int]], n: int) -> set[tuple[int, int]]:
    out = set()
    for r0, e0 in prev:
        for dr in range(n + 1):
            for de in range(n - dr + 1):
                out.add((r0 + dr, e0 + de))
    return out


def continuation_regions(design: TrialDesign) -> list[frozenset]:
    """Reachable continuation states ``(r, e)`` per stage; the last one is empty."""
    out = []
    prev = [(0, 0)]
    for st in design.stages:
        reach = _stage_states(prev, st.n)
        cont = frozenset(x for x in reach if _classify(st, *x) is Decision.CONTINUE)
        out.append(cont)
        prev = sorted(cont)
    return out


@dataclass(frozen=True)
class DesignReport:
    continuation_sizes: tuple[int, ...]
    unreachable_stages: tuple[int, ...]

    def to_json(self) -> dict:
        return {"valid": True, "continuation_sizes": list(self.continuation_sizes),
                "unreachable_stages": list(self.unreachable_stages)}


def validate_design(design: TrialDesign) -> DesignReport:
    """Reject designs whose stop rules do not partition the reachable states."""
    if design.K < 1:
        raise InvalidDesign("a design needs at least one stage")
    for idx, st in enumerate(design.stages, start=1):
        if st.n < 1:
            raise InvalidDesign(f"stage {idx} has no patients")
        if not st.final:
            if st.promising is None or st.ineffective is None:
                raise InvalidDesign(f"interior stage {idx} needs both stop rules")
            if not st.ineffective[0] < st.promising[0]:
                raise InvalidDesign(f"stage {idx}: need r_max(ineffective) < r_min(promising)")
            if not st.promising[1] < st.ineffective[1]:
                raise InvalidDesign(f"stage {idx}: need e_max(promising) < e_min(ineffective)")
        elif st.promising is None:
            raise InvalidDesign("the final stage needs a promising rule")
    prev = [(0, 0)]
    sizes, unreachable = [], []
    for idx, st in enumerate(design.stages, start=1):
        if not prev:
            unreachable.append(idx)
        reach = _stage_states(prev, st.n)
        cont = []
        for r, e in sorted(reach):
            if _matches_promising(st, r, e) and _matches_ineffective(st, r, e):
                raise InvalidDesign(f"stage {idx}: (r={r}, e={e}) is both promising and ineffective")
            if _classify(st, r, e) is Decision.CONTINUE:
                cont.append((r, e))
        sizes.append(len(cont))
        prev = cont
    return DesignReport(tuple(sizes), tuple(unreachable))


@dataclass(frozen=True, eq=False)
class TrialRegion(Region):
    """The trial as a stopping region over (responders, non-responders, early progressions)."""

    design: TrialDesign | None = None
    _conts: tuple = field(default=(), init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "k", 3)
        object.__setattr__(self, "horizon", self.design.cumulative[-1])
        object.__setattr__(self, "finite", True)
        object.__setattr__(self, "_conts", tuple(continuation_regions(self.design)))

    def admits(self, x) -> bool:
        j = sum(x)
        if j >= self.design.cumulative[-1]:
            return False
        s = self.design.stage_of(j)
        if s is None:
            return True
        return (x[0], x[2]) in self._conts[s - 1]

    def to_json(self) -> dict:
        return {"type": "trial", "design": self.design.to_json()}


def trial_region(design: TrialDesign) -> TrialRegion:
    validate_design(design)
    return TrialRegion(design=design)


def stop_sums(design: TrialDesign) -> dict:
    """Stage-wise DP of the nested multinomial sums.

    Returns ``{(stage, r, e): (den, num_response, num_progression)}`` for every
    reachable stop state. ``den`` is the number of patient sequences reaching
    the state; the numerators fix the first patient as a responder or an early
    progression respectively.
    """
    out = {}
    sums = {(0, 0): (1, 0, 0)}
    for idx, st in enumerate(design.stages, start=1):
        nxt = {}
        n = st.n
        for (r0, e0), (den, n1, n3) in sums.items():
            for dr in range(n + 1):
                for de in range(n - dr + 1):
                    dy = n - dr - de
                    c = multinomial(n, (dr, dy, de))
                    if idx == 1:
                        add = (c, multinomial(n - 1, (dr - 1, dy, de)),
                               multinomial(n - 1, (dr, dy, de - 1)))
                    else:
                        add = (den * c, n1 * c, n3 * c)
                    key = (r0 + dr, e0 + de)
                    old = nxt.get(key, (0, 0, 0))
                    nxt[key] = tuple(a + b for a, b in zip(old, add))
        sums = {}
        for (r, e), val in nxt.items():
            if _classify(st, r, e) is Decision.CONTINUE:
                sums[(r, e)] = val
            else:
                out[(idx, r, e)] = val
    return out


@dataclass(frozen=True)
class TrialEstimate:
    terminal: TrialState
    stage: int
    decision: Decision
    response: Fraction
    nonresponse: Fraction
    progression: Fraction

    def to_json(self) -> dict:
        return {"stage": self.stage, "decision": self.decision.value,
                "r": self.terminal.r, "e": self.terminal.e, "j": self.terminal.j,
                "unbiased": [str(self.response), str(self.nonresponse), str(self.progression)]}


def trial_unbiased_estimate(design: TrialDesign, terminal: TrialState,
                            stage: int | None = None, _sums: dict | None = None) -> TrialEstimate:
    """Unbiased response / early-progression estimates at a terminal stop state."""
    s = design.stage_of(terminal.j)
    if s is None or (stage is not None and stage != s):
        raise NotStopState(f"{terminal} is not at the end of stage {stage}")
    sums = stop_sums(design) if _sums is None else _sums
    key = (s, terminal.r, terminal.e)
    if key not in sums:
        raise NotStopState(f"{terminal} is not a reachable stop state")
    den, n1, n3 = sums[key]
    p1, p3 = Fraction(n1, den), Fraction(n3, den)
    return TrialEstimate(terminal, s, _classify(design.stages[s - 1], terminal.r, terminal.e),
                         p1, 1 - p1 - p3, p3)


def stop_states(design: TrialDesign) -> list[TrialState]:
    cum = design.cumulative
    return [TrialState(cum[s - 1], r, e) for (s, r, e) in sorted(stop_sums(design))]


def verify_trial(design: TrialDesign, p_grid) -> list[dict]:
    """Exact check of ``E[p_hat] == p`` over all stop states for each ``p``."""
    sums = stop_sums(design)
    cum = design.cumulative
    rows = []
    for p in p_grid:
        p = tuple(Fraction(v) for v in p)
        if sum(p) != 1 or len(p) != 3:
            raise ValueError(f"{p} is not a trinomial probability vector")
        tot = [Fraction(0)] * 3
        mass = Fraction(0)
        for (s, r, e), (den, n1, n3) in sums.items():
            y = (r, cum[s - 1] - r - e, e)
            prob = den * p[0] ** y[0] * p[1] ** y[1] * p[2] ** y[2]
            mass += prob
            tot[0] += Fraction(n1, den) * prob
            tot[2] += Fraction(n3, den) * prob
            tot[1] += Fraction(den - n1 - n3, den) * prob
        rows.append({"p": p, "absorbed": mass, "expectations": tuple(tot),
                     "holds": mass == 1 and tuple(tot) == p})
    return rows
