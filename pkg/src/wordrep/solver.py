"""Branch-and-propagate search for semi-transitive orientations.

The procedure fixes a source vertex (losing no generality: a graph with a
semi-transitive orientation has one with any chosen vertex as source),
then alternates constraint propagation with case splits on unset edges:

- TriangleRule: arcs x->y->z in a triangle force x->z, else the triangle
  would close a directed cycle;
- PathRule: a directed path u ~> v forces an unset edge (u, v) to u->v,
  justified by the cycle the path would otherwise close;
- CycleRule: on a cycle of length m >= 4 whose vertices do not induce a
  clique, if m-2 edges point the same way around then the remaining two
  must point the other way — so with one of the two already against, the
  last is forced against, and with both unset, both are forced against.

A branch ("B") orients an edge one way and snapshots the other way as a
numbered copy for later; a dead end (directed cycle or shortcut) ends the
current line, and the search resumes the lowest-numbered unconsumed copy
("MC").  When every copy has been consumed and every line ended in a
defect, no semi-transitive orientation exists, and the accumulated lines
form a machine-checkable proof trace.  Optionally the very first branch
is oriented one way only (recorded as the preamble arc of the emitted
trace instead of a copy); reversing every arc of a semi-transitive
orientation yields another one, so up to that symmetry the first split
explores both cases at once.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from .graphs import LabeledGraph, induced_subgraph, max_degree_vertex
from .orientations import (
    Orientation,
    PartialOrientation,
    ShortcutWitness,
    find_shortcut,
    is_acyclic,
    is_semitransitive,
)
from .traces import (
    Branch,
    MoveCopy,
    Orient,
    Preamble,
    ProofTrace,
    Root,
    Shortcut,
    TraceLine,
    verify_trace,
)
from .words import BudgetExceeded as WordSearchBudgetExceeded
from .words import find_uniform_representant

__all__ = [
    "Justification",
    "CopyStore",
    "SolverConfig",
    "Forced",
    "Contradiction",
    "Fixpoint",
    "SemiTransitive",
    "NonSemiTransitive",
    "BudgetExceeded",
    "fix_source",
    "propagate",
    "solve",
    "check_theorem1_consistency",
    "DEFAULT_CYCLE_LEN",
    "DEFAULT_NODE_BUDGET",
]

Arc = tuple[str, str]

DEFAULT_CYCLE_LEN = 6
DEFAULT_NODE_BUDGET = 1_000_000

TRIANGLE_RULE = "TriangleRule"
CYCLE_RULE = "CycleRule"


@dataclass(frozen=True)
class Justification:
    """Why an arc was forced: the cycle printed in its "O" step."""

    kind: str  # TRIANGLE_RULE or CYCLE_RULE
    cycle: tuple[str, ...]

    def __post_init__(self):
        if self.kind == TRIANGLE_RULE:
            if len(self.cycle) != 3:
                raise ValueError("triangle justifications have 3 vertices")
        elif self.kind == CYCLE_RULE:
            if len(self.cycle) < 4:
                raise ValueError("cycle justifications have >= 4 vertices")
        else:
            raise ValueError(f"unknown justification kind {self.kind!r}")


class CopyStore:
    """Deferred branch states: snapshot plus the arc to apply on resume.

    Ids are consecutive integers from 2; each is created once and
    consumed once.
    """

    def __init__(self):
        self._next_id = 2
        self._pending: dict[int, tuple[PartialOrientation, tuple[int, int]]] = {}

    def create(self, snapshot: PartialOrientation, deferred: tuple[int, int]) -> int:
        cid = self._next_id
        self._next_id += 1
        self._pending[cid] = (snapshot, deferred)
        return cid

    def pop_lowest(self) -> tuple[int, PartialOrientation, tuple[int, int]]:
        cid = min(self._pending)
        snapshot, deferred = self._pending.pop(cid)
        return cid, snapshot, deferred

    def __len__(self) -> int:
        return len(self._pending)

    def __bool__(self) -> bool:
        return bool(self._pending)


@dataclass(frozen=True)
class SolverConfig:
    """Search knobs.

    source: vertex label to fix as source; None picks the maximum-degree
    vertex (smallest id on ties) per component.  wlog_rule: orient the
    first branch edge one way only, recording it as the trace preamble
    arc.  budget: search nodes (root, branches, resumes) before giving
    up.  trace: build the proof trace for negative verdicts.  cycle_len:
    longest cycle the CycleRule propagates over.
    """

    source: str | None = None
    wlog_rule: bool = True
    budget: int = DEFAULT_NODE_BUDGET
    trace: bool = True
    cycle_len: int = DEFAULT_CYCLE_LEN

    def __post_init__(self):
        if self.budget <= 0:
            raise ValueError("budget must be positive")
        if self.cycle_len < 3:
            raise ValueError("cycle_len must be at least 3")


# --------------------------------------------------------------------------
# propagation results


@dataclass(frozen=True)
class Forced:
    """Arcs applied by propagation, in order, with their justifications."""

    arcs: tuple[tuple[Arc, Justification], ...]


@dataclass(frozen=True)
class Contradiction:
    """The state is dead: ``witness`` is the terminal path (a shortcut,
    or a directed cycle when the closing edge points backward).  Arcs
    forced before the defect arose are included for trace emission."""

    witness: tuple[str, ...]
    forced: tuple[tuple[Arc, Justification], ...] = ()


@dataclass(frozen=True)
class Fixpoint:
    """Nothing forced and no defect; branching is required to proceed."""


# --------------------------------------------------------------------------
# solve verdicts


@dataclass(frozen=True)
class SemiTransitive:
    orientation: Orientation


@dataclass(frozen=True)
class NonSemiTransitive:
    trace: ProofTrace | None


@dataclass(frozen=True)
class BudgetExceeded:
    nodes: int


Verdict = SemiTransitive | NonSemiTransitive | BudgetExceeded


# --------------------------------------------------------------------------
# cycle inventory


def _label_key(label: str) -> tuple[int, int, str]:
    """Numeric labels order numerically, everything else lexically after."""
    if label.isdigit():
        return (0, int(label), label)
    return (1, 0, label)


@dataclass(frozen=True)
class _Cycle:
    ids: tuple[int, ...]  # ring order
    steps: tuple[tuple[int, int], ...]  # ring edges as (ids[i], ids[i+1])
    non_clique: bool
    printed: tuple[str, ...]  # canonical "C..." annotation order


def _canonical_ring_print(g: LabeledGraph, ids: tuple[int, ...]) -> tuple[str, ...]:
    """Rotate/reflect the ring: start at the least label, then towards the
    greater of its two ring neighbours (label order is numeric-first)."""
    m = len(ids)
    start = min(range(m), key=lambda i: _label_key(g.labels[ids[i]]))
    before, after = ids[start - 1], ids[(start + 1) % m]
    if _label_key(g.labels[after]) >= _label_key(g.labels[before]):
        ring = [ids[(start + k) % m] for k in range(m)]
    else:
        ring = [ids[(start - k) % m] for k in range(m)]
    return tuple(g.labels[v] for v in ring)


def _is_clique(g: LabeledGraph, ids: tuple[int, ...]) -> bool:
    return all(g.has_edge(a, b) for a, b in itertools.combinations(ids, 2))


@lru_cache(maxsize=32)
def _cycle_inventory(g: LabeledGraph, max_len: int) -> tuple[_Cycle, ...]:
    """Every simple cycle of length 3..max_len, once per vertex set ring."""
    found: list[_Cycle] = []

    def extend(path: list[int]) -> None:
        tail = path[-1]
        start = path[0]
        for w in g.neighbors(tail):
            if w == start and len(path) >= 3:
                if path[1] < path[-1]:  # one orientation of each ring
                    ids = tuple(path)
                    found.append(
                        _Cycle(
                            ids=ids,
                            steps=tuple(
                                (ids[i], ids[(i + 1) % len(ids)])
                                for i in range(len(ids))
                            ),
                            non_clique=not _is_clique(g, ids),
                            printed=_canonical_ring_print(g, ids),
                        )
                    )
            elif w > start and w not in path and len(path) < max_len:
                path.append(w)
                extend(path)
                path.pop()

    for s in range(g.n):
        extend([s])
    found.sort(key=lambda c: (len(c.ids), c.ids))
    return tuple(found)


@lru_cache(maxsize=32)
def _split_inventory(
    g: LabeledGraph, max_len: int
) -> tuple[tuple[_Cycle, ...], tuple[_Cycle, ...]]:
    cycles = _cycle_inventory(g, max_len)
    triangles = tuple(c for c in cycles if len(c.ids) == 3)
    longer = tuple(c for c in cycles if len(c.ids) >= 4)
    return triangles, longer


# --------------------------------------------------------------------------
# operations


def fix_source(po: PartialOrientation, v: int) -> PartialOrientation:
    """A copy of ``po`` with every edge at ``v`` oriented outward."""
    g = po.graph
    if not 0 <= v < g.n:
        raise ValueError(f"vertex id {v} out of range")
    for u in g.neighbors(v):
        if po.direction(v, u) is not None:
            raise ValueError(
                f"edge {g.labels[v]}-{g.labels[u]} is already oriented"
            )
    out = po.copy()
    for u in g.neighbors(v):
        out.set_arc(v, u)
    return out


def _directed_cycle(po: PartialOrientation) -> list[int] | None:
    """Some simple directed cycle over the set arcs, or None."""
    g = po.graph
    state = [0] * g.n  # 0 unseen, 1 on stack, 2 done
    stack: list[int] = []

    def visit(v: int) -> list[int] | None:
        state[v] = 1
        stack.append(v)
        mask = po.out_adj[v]
        while mask:
            w = (mask & -mask).bit_length() - 1
            mask &= mask - 1
            if state[w] == 1:
                return stack[stack.index(w):]
            if state[w] == 0:
                cyc = visit(w)
                if cyc is not None:
                    return cyc
        state[v] = 2
        stack.pop()
        return None

    for v in range(g.n):
        if state[v] == 0:
            cyc = visit(v)
            if cyc is not None:
                return cyc
    return None


def _scan_defect(po: PartialOrientation) -> tuple[str, ...] | None:
    """Printable terminal path if the state is dead, else None."""
    g = po.graph
    if not is_acyclic(po):
        cyc = _directed_cycle(po)
        assert cyc is not None
        start = min(range(len(cyc)), key=lambda i: _label_key(g.labels[cyc[i]]))
        ring = cyc[start:] + cyc[:start]
        return tuple(g.labels[v] for v in ring)
    witness = find_shortcut(po)
    if witness is not None:
        return tuple(g.labels[v] for v in witness.path)
    return None


def _shortest_directed_path(
    po: PartialOrientation, src: int, dst: int
) -> list[int] | None:
    parent = {src: src}
    frontier = [src]
    while frontier:
        nxt: list[int] = []
        for u in frontier:
            mask = po.out_adj[u]
            while mask:
                w = (mask & -mask).bit_length() - 1
                mask &= mask - 1
                if w not in parent:
                    parent[w] = u
                    if w == dst:
                        path = [dst]
                        while path[-1] != src:
                            path.append(parent[path[-1]])
                        path.reverse()
                        return path
                    nxt.append(w)
        frontier = nxt
    return None


@dataclass(frozen=True)
class _Application:
    arcs: tuple[tuple[int, int], ...]  # one arc, or the two of a paired force
    cycle_ids: tuple[int, ...]
    justification: Justification


def _justify(ids: tuple[int, ...], printed: tuple[str, ...]) -> Justification:
    kind = TRIANGLE_RULE if len(ids) == 3 else CYCLE_RULE
    return Justification(kind, printed)


def _find_application(
    po: PartialOrientation,
    triangles: tuple[_Cycle, ...],
    longer: tuple[_Cycle, ...],
) -> _Application | None:
    g = po.graph

    # TriangleRule: directed path across a triangle forces the third edge
    for cyc in triangles:
        ids = cyc.ids
        for i in range(3):
            mid, a, b = ids[i], ids[(i + 1) % 3], ids[(i + 2) % 3]
            for t, h in ((a, b), (b, a)):
                if (
                    po.has_arc(t, mid)
                    and po.has_arc(mid, h)
                    and po.direction(t, h) is None
                ):
                    return _Application(((t, h),), ids, _justify(ids, cyc.printed))

    # PathRule: an existing directed path decides an unset edge
    for a, b in po.unset_edges():
        for t, h in ((a, b), (b, a)):
            path = _shortest_directed_path(po, t, h)
            if path is not None:
                ids = tuple(path)
                return _Application(
                    ((t, h),), ids, _justify(ids, _canonical_ring_print(g, ids))
                )

    # CycleRule: nearly-aligned non-clique cycles force the stragglers
    for cyc in longer:
        if not cyc.non_clique:
            continue
        m = len(cyc.ids)
        along = against = 0
        unset: list[tuple[int, int]] = []
        for t, h in cyc.steps:
            d = po.direction(t, h)
            if d is None:
                unset.append((t, h))
            elif d == t:
                along += 1
            else:
                against += 1
        just = _justify(cyc.ids, cyc.printed)
        # evaluate the ring direction, then its mirror; "against" an
        # unset step (t, h) means arc (h, t) for the ring direction and
        # (t, h) for the mirror
        for fwd, bwd, mirrored in ((along, against, False), (against, along, True)):
            if len(unset) == 1 and fwd >= m - 2:
                t, h = unset[0]
                arc = (t, h) if mirrored else (h, t)
                return _Application((arc,), cyc.ids, just)
            if len(unset) == 2 and fwd == m - 2 and bwd == 0:
                arcs = tuple(
                    (t, h) if mirrored else (h, t) for t, h in unset
                )
                return _Application(arcs, cyc.ids, just)

    return None


def _assert_flip_defect(
    po: PartialOrientation, cycle_ids: tuple[int, ...], arc: tuple[int, int]
) -> None:
    """Debug check: with the forced arc reversed, the justification
    cycle's induced sub-orientation is defective."""
    g = po.graph
    kept = sorted(cycle_ids)
    sub = induced_subgraph(g, kept)
    remap = {v: i for i, v in enumerate(kept)}
    mini = PartialOrientation(sub)
    for a, b in itertools.combinations(kept, 2):
        if not g.has_edge(a, b):
            continue
        d = po.direction(a, b)
        if d is None:
            continue
        t, h = (a, b) if d == a else (b, a)
        if (t, h) == arc:
            t, h = h, t
        mini.set_arc(remap[t], remap[h])
    assert not is_acyclic(mini) or find_shortcut(mini) is not None, (
        "forced arc is not justified by its cycle"
    )


def propagate(
    po: PartialOrientation,
    cycle_len: int = DEFAULT_CYCLE_LEN,
    _steps: list | None = None,
) -> Forced | Contradiction | Fixpoint:
    """Apply the three rules to fixpoint, mutating ``po``.

    Returns Forced with the applied arcs (labels) and justifications,
    Contradiction as soon as the state is dead, or Fixpoint when nothing
    was forced.  ``_steps``, if given, collects the same information as
    trace Orient steps (with two-arc forces paired).
    """
    g = po.graph
    triangles, longer = _split_inventory(g, cycle_len)
    applied: list[tuple[Arc, Justification]] = []
    while True:
        witness = _scan_defect(po)
        if witness is not None:
            return Contradiction(witness, tuple(applied))
        hit = _find_application(po, triangles, longer)
        if hit is None:
            return Forced(tuple(applied)) if applied else Fixpoint()
        for t, h in hit.arcs:
            po.set_arc(t, h)
        if __debug__:
            for arc in hit.arcs:
                _assert_flip_defect(po, hit.cycle_ids, arc)
        labeled = [
            ((g.labels[t], g.labels[h]), hit.justification) for t, h in hit.arcs
        ]
        applied.extend(labeled)
        if _steps is not None:
            paired = len(hit.arcs) == 2
            for k, (arc, just) in enumerate(labeled):
                _steps.append(
                    Orient(arc, just.cycle, paired_with_next=paired and k == 0)
                )


# --------------------------------------------------------------------------
# branching


def _almost_forced_counts(
    po: PartialOrientation, cycles: tuple[_Cycle, ...]
) -> dict[tuple[int, int], int]:
    """How many rule-usable cycles each unset edge could nearly fire."""
    counts: dict[tuple[int, int], int] = {}
    for cyc in cycles:
        m = len(cyc.ids)
        if m >= 4 and not cyc.non_clique:
            continue
        along = against = 0
        unset: list[tuple[int, int]] = []
        for t, h in cyc.steps:
            d = po.direction(t, h)
            if d is None:
                unset.append((t, h))
            elif d == t:
                along += 1
            else:
                against += 1
        if len(unset) == 3 and (along == 0 or against == 0):
            for t, h in unset:
                edge = (t, h) if t < h else (h, t)
                counts[edge] = counts.get(edge, 0) + 1
    return counts


def _pick_branch_edge(
    po: PartialOrientation, cycles: tuple[_Cycle, ...]
) -> tuple[int, int]:
    counts = _almost_forced_counts(po, cycles)
    return min(po.unset_edges(), key=lambda e: (-counts.get(e, 0), e))


# --------------------------------------------------------------------------
# the search


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def spend(self) -> bool:
        """Consume one node; False when the budget is exhausted."""
        self.used += 1
        return self.used <= self.limit


def _components(g: LabeledGraph) -> list[list[int]]:
    seen = [False] * g.n
    comps: list[list[int]] = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp, frontier = [s], [s]
        seen[s] = True
        while frontier:
            v = frontier.pop()
            for w in g.neighbors(v):
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    frontier.append(w)
        comps.append(sorted(comp))
    return comps


def _choose_source(g: LabeledGraph, cfg: SolverConfig) -> int:
    if cfg.source is not None and cfg.source in g.index:
        return g.index[cfg.source]
    return max_degree_vertex(g)


def _solve_component(
    g: LabeledGraph, cfg: SolverConfig, budget: _Budget
) -> Verdict:
    if not g.edges:
        return SemiTransitive(Orientation(g, ()))
    cycles = _cycle_inventory(g, cfg.cycle_len)
    source = _choose_source(g, cfg)
    po = fix_source(PartialOrientation(g), source)
    if not budget.spend():  # the root node
        return BudgetExceeded(budget.used)

    preamble = Preamble(None, g.labels[source])
    copies = CopyStore()
    lines: list[TraceLine] = []
    opener: Root | MoveCopy = Root()
    steps: list[Orient | Branch] = []
    wlog_pending = cfg.wlog_rule

    while True:
        outcome = propagate(po, cfg.cycle_len, _steps=steps)
        if isinstance(outcome, Contradiction):
            lines.append(
                TraceLine(
                    len(lines) + 1, opener, tuple(steps), Shortcut(outcome.witness)
                )
            )
            if not copies:
                trace = ProofTrace(preamble, tuple(lines)) if cfg.trace else None
                if __debug__ and trace is not None:
                    assert verify_trace(g, trace).accepted, (
                        "emitted trace failed self-verification"
                    )
                return NonSemiTransitive(trace)
            if not budget.spend():
                return BudgetExceeded(budget.used)
            cid, po, (t, h) = copies.pop_lowest()
            opener = MoveCopy(cid, (g.labels[t], g.labels[h]))
            steps = []
            po.set_arc(t, h)
            continue

        if po.fully_oriented():
            orientation = Orientation(g, tuple(po.arcs()))
            assert is_semitransitive(orientation)
            return SemiTransitive(orientation)

        lo, hi = _pick_branch_edge(po, cycles)
        if not budget.spend():
            return BudgetExceeded(budget.used)
        if wlog_pending:
            wlog_pending = False
            preamble = Preamble(
                (g.labels[lo], g.labels[hi]), preamble.source_vertex
            )
        else:
            cid = copies.create(po.copy(), (hi, lo))
            steps.append(Branch((g.labels[lo], g.labels[hi]), cid))
        po.set_arc(lo, hi)


def solve(g: LabeledGraph, cfg: SolverConfig | None = None) -> Verdict:
    """Decide semi-transitive orientability.

    SemiTransitive carries a checked orientation; NonSemiTransitive
    carries a proof trace (when cfg.trace) that verify_trace accepts
    against ``g`` with the same preamble; BudgetExceeded reports the
    nodes consumed.  Disconnected graphs are solved per component.
    """
    cfg = cfg or SolverConfig()
    if cfg.source is not None and cfg.source not in g.index:
        raise ValueError(f"source label {cfg.source!r} is not a vertex")
    budget = _Budget(cfg.budget)

    comps = _components(g)
    if len(comps) <= 1:
        return _solve_component(g, cfg, budget)

    arcs_by_label: list[tuple[str, str]] = []
    for comp in comps:
        sub = induced_subgraph(g, comp)
        verdict = _solve_component(sub, cfg, budget)
        if isinstance(verdict, SemiTransitive):
            labels = sub.labels
            arcs_by_label.extend(
                (labels[t], labels[h]) for t, h in verdict.orientation.arcs
            )
        else:
            # NonSemiTransitive in any component settles the graph (its
            # trace replays against g unchanged); budget exhaustion stops
            # the scan
            return verdict
    arcs = tuple((g.index[a], g.index[b]) for a, b in arcs_by_label)
    return SemiTransitive(Orientation(g, arcs))


# --------------------------------------------------------------------------
# cross-checks


def check_theorem1_consistency(
    g: LabeledGraph, cfg: SolverConfig | None = None
) -> bool:
    """Solver verdict == exhaustive oracle, and a 2-uniform representant
    (when one exists) implies the positive verdict.

    Raises the word-search BudgetExceeded if either exhaustive check runs
    out of budget; a word-search budget overrun only downgrades the word
    evidence to "not found".
    """
    from .orientations import brute_force_semitransitive

    verdict = solve(g, cfg)
    if isinstance(verdict, BudgetExceeded):
        raise WordSearchBudgetExceeded(
            f"solver budget exhausted after {verdict.nodes} nodes"
        )
    oracle = brute_force_semitransitive(g)
    if oracle.verdict == "budget":
        raise WordSearchBudgetExceeded("orientation oracle budget exhausted")
    positive = isinstance(verdict, SemiTransitive)
    if positive != (oracle.verdict == "exists"):
        return False
    try:
        word = find_uniform_representant(g, k_max=2)
    except WordSearchBudgetExceeded:
        word = None
    if word is not None and not positive:
        return False
    return True
