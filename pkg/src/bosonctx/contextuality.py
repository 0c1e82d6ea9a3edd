"""Exclusive events, exclusivity graphs, inequality sums, and the bound
hierarchy: deterministic-assignment (noncontextual) maximum, the odd-cycle
projective quantum bound, and the algebraic fractional-packing ceiling.

Two events are exclusive when some fiber is required transmitted by one and
reflected by the other; equivalently, when no global transmit/reflect
assignment satisfies both.  Event labels reuse the outcome token grammar.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Mapping, Sequence

import numpy as np

from .experiment import (
    FIBERS,
    REFLECTED,
    TRANSMITTED,
    OutcomeTable,
    full_table,
    make_outcome,
    outcome_matches,
    validate_context,
)
from .optics import BeamsplitterSpec, DistinguishabilityParam

PENTAGON = "pentagon"
TRIANGLE = "triangle"

MAX_EXACT_INDEPENDENCE = 24
MAX_EXACT_PACKING = 12


@dataclass(frozen=True)
class EventSpec:
    """A labeled event: a context plus transmit/reflect requirements.

    ``requirements`` maps fiber letters to ``t`` or ``r`` and may constrain a
    subset of the context's fibers (single-fiber events constrain one).
    """

    label: str
    context: str
    requirements: Mapping[str, str]

    def __post_init__(self) -> None:
        validate_context(self.context)
        reqs = dict(self.requirements)
        if not reqs:
            raise ValueError(f"event {self.label!r} has no requirements")
        for fiber, value in reqs.items():
            if fiber not in self.context:
                raise ValueError(
                    f"event {self.label!r} constrains {fiber!r} outside context {self.context!r}")
            if value not in (TRANSMITTED, REFLECTED):
                raise ValueError(f"bad requirement value {value!r} in event {self.label!r}")
        object.__setattr__(self, "requirements", reqs)

    def to_dict(self) -> dict:
        return {"label": self.label, "context": self.context,
                "requirements": dict(self.requirements)}

    @classmethod
    def from_dict(cls, payload: Mapping) -> "EventSpec":
        return cls(str(payload["label"]), str(payload["context"]),
                   dict(payload["requirements"]))


def _event(context: str, requirements: dict[str, str]) -> EventSpec:
    return EventSpec(make_outcome(requirements), context, requirements)


def standard_events(test: str) -> list[EventSpec]:
    """The two built-in event families.

    ``pentagon``: five cyclically exclusive events, one single-fiber event
    plus four pair events, each with probability 1/2 for identical photons at
    a balanced splitter.  ``triangle``: three pairwise exclusive pair events.
    """
    if test == PENTAGON:
        return [
            _event("A", {"A": TRANSMITTED}),
            _event("AB", {"A": REFLECTED, "B": TRANSMITTED}),
            _event("BC", {"B": REFLECTED, "C": TRANSMITTED}),
            _event("BC", {"B": TRANSMITTED, "C": REFLECTED}),
            _event("AC", {"A": REFLECTED, "C": TRANSMITTED}),
        ]
    if test == TRIANGLE:
        return [
            _event("AB", {"A": TRANSMITTED, "B": REFLECTED}),
            _event("BC", {"B": TRANSMITTED, "C": REFLECTED}),
            _event("AC", {"C": TRANSMITTED, "A": REFLECTED}),
        ]
    raise ValueError(f"unknown test {test!r}; expected {PENTAGON!r} or {TRIANGLE!r}")


@dataclass(frozen=True)
class ExclusivityGraph:
    """Vertices are event labels; an edge marks logical exclusivity."""

    vertices: tuple[str, ...]
    edges: frozenset[tuple[str, str]]

    def __post_init__(self) -> None:
        known = set(self.vertices)
        if len(known) != len(self.vertices):
            raise ValueError("duplicate vertex labels")
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop on {u!r}")
            if u not in known or v not in known:
                raise ValueError(f"edge ({u!r}, {v!r}) uses unknown vertices")

    def has_edge(self, u: str, v: str) -> bool:
        return tuple(sorted((u, v))) in self.edges

    def to_dict(self) -> dict:
        return {"vertices": list(self.vertices),
                "edges": sorted(list(e) for e in self.edges)}

    @classmethod
    def from_dict(cls, payload: Mapping) -> "ExclusivityGraph":
        vertices = tuple(str(v) for v in payload["vertices"])
        edges = frozenset(_edge(str(u), str(v)) for u, v in payload["edges"])
        return cls(vertices, edges)


def _edge(u: str, v: str) -> tuple[str, str]:
    return tuple(sorted((u, v)))  # type: ignore[return-value]


def cycle_graph(n: int) -> ExclusivityGraph:
    """The n-cycle on vertices v0..v{n-1}."""
    if n != int(n) or n < 3:
        raise ValueError(f"cycle needs an integer n >= 3, got {n!r}")
    n = int(n)
    names = tuple(f"v{i}" for i in range(n))
    edges = frozenset(_edge(names[i], names[(i + 1) % n]) for i in range(n))
    return ExclusivityGraph(names, edges)


def events_exclusive(e1: EventSpec, e2: EventSpec) -> bool:
    """True when some fiber is required transmitted by one event and reflected
    by the other, so no outcome pre-assignment can satisfy both."""
    return any(fiber in e2.requirements and e2.requirements[fiber] != value
               for fiber, value in e1.requirements.items())


def derive_exclusivity(events: Sequence[EventSpec]) -> ExclusivityGraph:
    labels = [e.label for e in events]
    if len(set(labels)) != len(labels):
        raise ValueError(f"event labels must be distinct, got {labels}")
    edges = set()
    for i, e1 in enumerate(events):
        for e2 in events[i + 1:]:
            if events_exclusive(e1, e2):
                edges.add(_edge(e1.label, e2.label))
    return ExclusivityGraph(tuple(labels), frozenset(edges))


# -- probabilities and inequality sums -------------------------------------


def event_probability(table: OutcomeTable, event: EventSpec) -> float:
    """Probability mass of the table outcomes that satisfy the event.

    The unresolved coincidence labels no fiber, so it never contributes.
    """
    if event.context not in table.contexts:
        raise ValueError(f"table has no context {event.context!r} for event {event.label!r}")
    return sum(p for token, p in table.context_distribution(event.context).items()
               if outcome_matches(token, event.requirements))


def inequality_sum(table: OutcomeTable, events: Sequence[EventSpec]) -> float:
    return sum(event_probability(table, e) for e in events)


# -- bounds -----------------------------------------------------------------


def all_assignments() -> list[dict[str, str]]:
    """The 8 deterministic transmit/reflect assignments to the three photons."""
    return [dict(zip(FIBERS, values))
            for values in product((TRANSMITTED, REFLECTED), repeat=len(FIBERS))]


def assignment_satisfies(assignment: Mapping[str, str], event: EventSpec) -> bool:
    return all(assignment[fiber] == value for fiber, value in event.requirements.items())


def noncontextual_max(events: Sequence[EventSpec]) -> int:
    """Most events any single outcome pre-assignment can satisfy at once.

    Deterministic assignments are extreme points of the noncontextual
    polytope, so this integer bounds every noncontextual mixture.
    """
    return max(sum(assignment_satisfies(a, e) for e in events)
               for a in all_assignments())


def independence_number(graph: ExclusivityGraph) -> int:
    """Exact maximum independent set size by branch and bound on bitmasks."""
    n = len(graph.vertices)
    if n > MAX_EXACT_INDEPENDENCE:
        raise ValueError(f"exact search limited to {MAX_EXACT_INDEPENDENCE} vertices, got {n}")
    if n == 0:
        return 0
    index = {v: i for i, v in enumerate(graph.vertices)}
    adjacency = [0] * n
    for u, v in graph.edges:
        adjacency[index[u]] |= 1 << index[v]
        adjacency[index[v]] |= 1 << index[u]

    best = 0

    def grow(candidates: int, size: int) -> None:
        nonlocal best
        if size + candidates.bit_count() <= best:
            return
        if candidates == 0:
            best = size
            return
        v = (candidates & -candidates).bit_length() - 1
        rest = candidates & ~(1 << v)
        grow(rest & ~adjacency[v], size + 1)
        grow(rest, size)

    grow((1 << n) - 1, 0)
    return best


def lovasz_theta_odd_cycle(n: int) -> float:
    """Lovasz number of an odd cycle: n cos(pi/n) / (1 + cos(pi/n)).

    This is the projective quantum ceiling for a cyclic exclusivity
    structure; for n = 5 it equals sqrt(5).
    """
    if n != int(n) or int(n) < 3 or int(n) % 2 == 0:
        raise ValueError(f"closed form requires an odd integer n >= 3, got {n!r}")
    n = int(n)
    c = math.cos(math.pi / n)
    return n * c / (1.0 + c)


def fractional_packing_max(graph: ExclusivityGraph) -> float:
    """Exact optimum of max sum(p_i) with p_i + p_j <= 1 on edges, p_i in [0, 1].

    The feasible polytope has half-integral extreme points, so enumerating
    p_i in {0, 1/2, 1} (in integer half-units) is exact.
    """
    n = len(graph.vertices)
    if n > MAX_EXACT_PACKING:
        raise ValueError(f"exact enumeration limited to {MAX_EXACT_PACKING} vertices, got {n}")
    if n == 0:
        return 0.0
    if not graph.edges:
        return float(n)
    index = {v: i for i, v in enumerate(graph.vertices)}
    # all {0, 1, 2}^n points, encoded in half-units
    codes = np.arange(3 ** n, dtype=np.int64)
    points = (codes[:, None] // (3 ** np.arange(n, dtype=np.int64))) % 3
    points = points.astype(np.int8)
    feasible = np.ones(len(points), dtype=bool)
    for u, v in graph.edges:
        feasible &= points[:, index[u]] + points[:, index[v]] <= 2
    best_halves = int(points[feasible].sum(axis=1, dtype=np.int64).max())
    return best_halves / 2.0


# -- distinguishability sweeps ----------------------------------------------


@dataclass(frozen=True)
class SweepResult:
    test: str
    theta: float
    etas: tuple[float, ...]
    sums: tuple[float, ...]
    bounds: dict[str, float]
    crossings: dict[str, float | None]

    def to_dict(self) -> dict:
        return {
            "test": self.test,
            "theta": self.theta,
            "bounds": dict(self.bounds),
            "crossings": dict(self.crossings),
            "series": [{"eta": e, "sum": s} for e, s in zip(self.etas, self.sums)],
        }


def _first_crossing(etas: Sequence[float], sums: Sequence[float],
                    bound: float) -> float | None:
    """Leftmost grid point or linear interpolation where the series meets the bound."""
    for i in range(len(sums) - 1):
        lo = sums[i] - bound
        hi = sums[i + 1] - bound
        if lo == 0.0:
            return etas[i]
        if lo * hi < 0.0:
            return etas[i] + (bound - sums[i]) * (etas[i + 1] - etas[i]) / (sums[i + 1] - sums[i])
    if sums and sums[-1] - bound == 0.0:
        return etas[-1]
    return None


def sweep_eta(test: str, bs: BeamsplitterSpec,
              etas: Iterable[float] | None = None, *, steps: int = 101) -> SweepResult:
    """Inequality sum as a function of the photon overlap eta, with the points
    where it crosses the noncontextual bound (and, for the pentagon, the
    projective quantum bound) found by linear interpolation."""
    events = standard_events(test)
    if etas is None:
        if steps < 2:
            raise ValueError(f"need at least 2 grid points, got {steps}")
        grid = [i / (steps - 1) for i in range(steps)]
    else:
        grid = [float(e) for e in etas]
        if len(grid) < 2:
            raise ValueError("eta grid needs at least 2 points")
        if any(not (0.0 <= e <= 1.0) for e in grid):
            raise ValueError("eta grid must lie within [0, 1]")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValueError("eta grid must be strictly increasing")

    sums = [inequality_sum(full_table(bs, DistinguishabilityParam(e)), events)
            for e in grid]

    bounds: dict[str, float] = {"noncontextual": float(noncontextual_max(events))}
    if test == PENTAGON:
        bounds["quantum"] = lovasz_theta_odd_cycle(5)
    crossings = {name: _first_crossing(grid, sums, bound)
                 for name, bound in bounds.items()}
    return SweepResult(test, bs.theta, tuple(grid), tuple(sums), bounds, crossings)
