"""Exact hamiltonian path/cycle queries with structural pruning.

One backtracking engine serves every query flavour: free endpoints, fixed
start, fixed endpoint pair, cycle closure, and the spanning-two-paths test
used by the J-cell recognizer.  Verdicts are exact; a node budget can cut a
search short, in which case the result is indeterminate rather than wrong.

Pruning at every node:
  * the unvisited vertices must induce a connected graph;
  * unvisited vertices with residual degree <= 1 must be endpoints of the
    remaining path, so more than two of them (or an infeasible assignment
    of first/last roles) kills the branch;
  * neighbours are tried in ascending residual degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .graph import Graph, GraphError, bits, is_connected


class Status(Enum):
    YES = "yes"
    NO = "no"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class SearchBudget:
    """Optional cap on expanded search-tree nodes; absent means exhaustive."""

    max_nodes: int | None = None


UNLIMITED = SearchBudget()


@dataclass(frozen=True)
class SearchResult:
    status: Status
    witness: tuple[int, ...] | None = None
    nodes: int = 0

    def __bool__(self) -> bool:
        return self.status is Status.YES

    @property
    def is_yes(self) -> bool:
        return self.status is Status.YES

    @property
    def is_no(self) -> bool:
        return self.status is Status.NO


class _BudgetExhausted(Exception):
    pass


def check_path_witness(g: Graph, path: tuple[int, ...]) -> bool:
    """Mechanical validation: distinct consecutive-adjacent vertices."""
    if len(set(path)) != len(path):
        return False
    return all(g.has_edge(u, v) for u, v in zip(path, path[1:]))


class _Engine:
    def __init__(self, g: Graph, budget: SearchBudget):
        self.adj = g.adj
        self.n = g.n
        self.full = g.full_mask()
        self.max_nodes = budget.max_nodes
        self.nodes = 0
        self.path: list[int] = []

    def _connected(self, region: int) -> bool:
        seed = region & -region
        comp = seed
        frontier = seed
        adj = self.adj
        while frontier:
            grow = 0
            for v in bits(frontier):
                grow |= adj[v]
            frontier = grow & region & ~comp
            comp |= frontier
        return comp == region

    def run(self, start: int, end: int | None, end_mask: int | None,
            min_final: int = 0) -> tuple[int, ...] | None:
        """Search a hamiltonian path from ``start``.

        ``end``: exact final vertex, kept unvisited until last.
        ``end_mask``: allowed final vertices (used for cycle closure).
        ``min_final``: free-end symmetry breaking, final index must be >= it.
        """
        self.path = [start]
        if self.n == 1:
            return (start,) if end is None or end == start else None
        visited = 1 << start
        if self._extend(start, visited, end, end_mask, min_final):
            return tuple(self.path)
        return None

    def _extend(self, cur: int, visited: int, end: int | None,
                end_mask: int | None, min_final: int) -> bool:
        adj = self.adj
        rest = self.full & ~visited
        if rest == 0:
            return True
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise _BudgetExhausted
        if rest == rest & -rest:  # single vertex left
            v = rest.bit_length() - 1
            ok = bool(adj[cur] >> v & 1)
            if end is not None:
                ok = ok and v == end
            elif end_mask is not None:
                ok = ok and bool(end_mask >> v & 1)
            else:
                ok = ok and v >= min_final
            if ok:
                self.path.append(v)
            return ok
        if not self._connected(rest):
            return False
        if end_mask is not None and rest & end_mask == 0:
            return False
        # Residual-degree screening: the rest of the path is a hamiltonian
        # path of G[rest] whose first vertex neighbours cur and whose last
        # vertex satisfies the end constraint.
        low: list[int] = []
        cur_adj = adj[cur]
        for v in bits(rest):
            d = (adj[v] & rest).bit_count()
            if d <= 1:
                low.append(v)
                if len(low) > 2:
                    return False
        if low:
            def may_first(v: int) -> bool:
                return bool(cur_adj >> v & 1) and v != end
            def may_last(v: int) -> bool:
                if end is not None:
                    return v == end
                if end_mask is not None:
                    return bool(end_mask >> v & 1)
                return v >= min_final
            if len(low) == 2:
                a, b = low
                if not ((may_first(a) and may_last(b))
                        or (may_first(b) and may_last(a))):
                    return False
            else:
                if not (may_first(low[0]) or may_last(low[0])):
                    return False
        if end is not None and (adj[end] & rest & ~(1 << end)) == 0 \
                and rest != 1 << end and not (cur_adj >> end & 1):
            return False
        cands = cur_adj & rest
        if end is not None and cands != 1 << end:
            cands &= ~(1 << end)  # keep the target for last unless forced
        ordered = sorted(bits(cands),
                         key=lambda v: (adj[v] & rest).bit_count())
        for v in ordered:
            self.path.append(v)
            if self._extend(v, visited | 1 << v, end, end_mask, min_final):
                return True
            self.path.pop()
        return False


def _result(g: Graph, engine: _Engine, path: tuple[int, ...] | None) -> SearchResult:
    if path is None:
        return SearchResult(Status.NO, nodes=engine.nodes)
    assert check_path_witness(g, path)
    return SearchResult(Status.YES, path, engine.nodes)


def has_ham_path_from(g: Graph, start: int,
                      budget: SearchBudget = UNLIMITED) -> SearchResult:
    """Hamiltonian path with a prescribed first vertex."""
    if not (0 <= start < g.n):
        raise GraphError(f"start vertex {start} out of range")
    if not is_connected(g):
        return SearchResult(Status.NO)
    engine = _Engine(g, budget)
    try:
        return _result(g, engine, engine.run(start, None, None))
    except _BudgetExhausted:
        return SearchResult(Status.INDETERMINATE, nodes=engine.nodes)


def has_ham_path_between(g: Graph, a: int, b: int,
                         budget: SearchBudget = UNLIMITED) -> SearchResult:
    """Hamiltonian path with endpoints exactly {a, b}."""
    if a == b:
        raise GraphError("endpoints must be distinct")
    if not (0 <= a < g.n and 0 <= b < g.n):
        raise GraphError("endpoint out of range")
    if not is_connected(g):
        return SearchResult(Status.NO)
    engine = _Engine(g, budget)
    try:
        return _result(g, engine, engine.run(a, b, None))
    except _BudgetExhausted:
        return SearchResult(Status.INDETERMINATE, nodes=engine.nodes)


def has_ham_path(g: Graph, budget: SearchBudget = UNLIMITED) -> SearchResult:
    """Hamiltonian path, endpoints free.

    Tries each start vertex in ascending order; a path whose two endpoints
    are u < v is only accepted when searching from u, which halves the
    refutation work without losing any witness.
    """
    if g.n == 0:
        return SearchResult(Status.NO)
    if not is_connected(g):
        return SearchResult(Status.NO)
    if g.n == 1:
        return SearchResult(Status.YES, (0,))
    engine = _Engine(g, budget)
    try:
        for s in range(g.n - 1):
            path = engine.run(s, None, None, min_final=s + 1)
            if path is not None:
                return _result(g, engine, path)
        return SearchResult(Status.NO, nodes=engine.nodes)
    except _BudgetExhausted:
        return SearchResult(Status.INDETERMINATE, nodes=engine.nodes)


def has_ham_cycle(g: Graph, budget: SearchBudget = UNLIMITED) -> SearchResult:
    """Hamiltonian cycle; witness lists each vertex once, closure implied.

    Anchored at vertex 0; the symmetry second-vertex < last-vertex halves
    the traversal directions.
    """
    if g.n < 3:
        raise GraphError("hamiltonian cycle needs at least 3 vertices")
    if not is_connected(g):
        return SearchResult(Status.NO)
    engine = _Engine(g, budget)
    try:
        nbrs0 = sorted(bits(g.adj[0]))
        for i, s in enumerate(nbrs0):
            end_mask = 0
            for t in nbrs0[i + 1:]:
                end_mask |= 1 << t
            if not end_mask:
                break
            engine.path = [0, s]
            if engine._extend(s, (1 << 0) | (1 << s), None, end_mask, 0):
                path = tuple(engine.path)
                assert check_path_witness(g, path) and g.has_edge(path[-1], 0)
                return SearchResult(Status.YES, path, engine.nodes)
        return SearchResult(Status.NO, nodes=engine.nodes)
    except _BudgetExhausted:
        return SearchResult(Status.INDETERMINATE, nodes=engine.nodes)


def has_spanning_two_paths(g: Graph, p1: tuple[int, int], p2: tuple[int, int],
                           budget: SearchBudget = UNLIMITED) -> SearchResult:
    """Two vertex-disjoint paths with the given endpoint pairs covering V(g).

    The witness is the concatenation path1 + path2; a path may be a single
    vertex only through graphs handed in by the J-cell condition-3 checks,
    never via coinciding endpoints, which are rejected.
    """
    a, b = p1
    c, d = p2
    if len({a, b, c, d}) != 4:
        raise GraphError("the four path endpoints must be distinct")
    for v in (a, b, c, d):
        if not (0 <= v < g.n):
            raise GraphError("endpoint out of range")
    counter = _Engine(g, budget)  # reused for node accounting only

    full = g.full_mask()
    adj = g.adj

    def second_phase(visited: int) -> tuple[int, ...] | None:
        rest = full & ~visited
        sub = _Engine(g, SearchBudget(None))
        sub.full = rest | (1 << c)
        path = sub.run(c, d, None)
        counter.nodes += sub.nodes
        return path

    result: list[tuple[int, ...]] = []

    def phase1(cur: int, visited: int, trail: list[int]) -> bool:
        counter.nodes += 1
        if counter.max_nodes is not None and counter.nodes > counter.max_nodes:
            raise _BudgetExhausted
        if cur == b:
            rest = full & ~visited
            if rest & (1 << c) == 0 or rest & (1 << d) == 0:
                return False
            tail = second_phase(visited)
            if tail is not None:
                result.append(tuple(trail) + tail)
                return True
            return False
        rest = full & ~visited
        # both remaining path pieces are connected, so <= 2 residual parts
        comps = 0
        region = rest
        while region:
            seed = region & -region
            comp = seed
            frontier = seed
            while frontier:
                grow = 0
                for v in bits(frontier):
                    grow |= adj[v]
                frontier = grow & region & ~comp
                comp |= frontier
            comps += 1
            if comps > 2:
                return False
            region &= ~comp
        for v in bits(adj[cur] & rest):
            if v in (c, d):
                continue
            trail.append(v)
            if phase1(v, visited | 1 << v, trail):
                return True
            trail.pop()
        return False

    if not is_connected(g):
        return SearchResult(Status.NO)
    try:
        found = phase1(a, 1 << a, [a])
    except _BudgetExhausted:
        return SearchResult(Status.INDETERMINATE, nodes=counter.nodes)
    if not found:
        return SearchResult(Status.NO, nodes=counter.nodes)
    return SearchResult(Status.YES, result[0], counter.nodes)


# --- J-cells --------------------------------------------------------------

_JCELL_SINGLE = (("a", "b"), ("c", "d"), ("a", "c"), ("b", "d"))
_JCELL_DOUBLE = ((("a", "b"), ("c", "d")), (("a", "c"), ("b", "d")))


@dataclass(frozen=True)
class JcellReport:
    is_jcell: bool
    failing_condition: str | None = None


def _good_pair(g: Graph, u: int, v: int, budget: SearchBudget) -> SearchResult:
    return has_ham_path_between(g, u, v, budget)


def is_jcell(h: Graph, a: int, b: int, c: int, d: int,
             budget: SearchBudget = UNLIMITED) -> JcellReport:
    """Hsu-Lin terminal-quadruple recognition.

    Condition 1: (a,d) and (b,c) joined by hamiltonian paths.
    Condition 2: none of (a,b),(c,d),(a,c),(b,d) nor the spanning path pairs
    ((a,b),(c,d)), ((a,c),(b,d)) exist.
    Condition 3: after deleting any single vertex, one of the condition-2
    pairs becomes good; pairs that lost an endpoint to the deletion are
    skipped.
    """
    if len({a, b, c, d}) != 4:
        raise GraphError("J-cell terminals must be distinct")
    names = {"a": a, "b": b, "c": c, "d": d}

    for u, v in ((a, d), (b, c)):
        r = _good_pair(h, u, v, budget)
        if r.status is Status.INDETERMINATE:
            return JcellReport(False, "indeterminate")
        if not r.is_yes:
            return JcellReport(False, f"condition 1: pair ({u},{v}) not good")
    for x, y in _JCELL_SINGLE:
        r = _good_pair(h, names[x], names[y], budget)
        if r.status is Status.INDETERMINATE:
            return JcellReport(False, "indeterminate")
        if r.is_yes:
            return JcellReport(False, f"condition 2: pair ({x},{y}) is good")
    for (x1, y1), (x2, y2) in _JCELL_DOUBLE:
        r = has_spanning_two_paths(
            h, (names[x1], names[y1]), (names[x2], names[y2]), budget)
        if r.status is Status.INDETERMINATE:
            return JcellReport(False, "indeterminate")
        if r.is_yes:
            return JcellReport(
                False, f"condition 2: pair (({x1},{y1}),({x2},{y2})) is good")
    from .graph import induced_subgraph

    for v in range(h.n):
        keep = [u for u in range(h.n) if u != v]
        sub, mapping = induced_subgraph(h, keep)
        back = {orig: i for i, orig in enumerate(mapping)}
        found = False
        for x, y in _JCELL_SINGLE:
            u1, u2 = names[x], names[y]
            if u1 == v or u2 == v:
                continue
            r = _good_pair(sub, back[u1], back[u2], budget)
            if r.status is Status.INDETERMINATE:
                return JcellReport(False, "indeterminate")
            if r.is_yes:
                found = True
                break
        if not found:
            for (x1, y1), (x2, y2) in _JCELL_DOUBLE:
                ends = (names[x1], names[y1], names[x2], names[y2])
                if v in ends:
                    continue
                r = has_spanning_two_paths(
                    sub, (back[ends[0]], back[ends[1]]),
                    (back[ends[2]], back[ends[3]]), budget)
                if r.status is Status.INDETERMINATE:
                    return JcellReport(False, "indeterminate")
                if r.is_yes:
                    found = True
                    break
        if not found:
            return JcellReport(False, f"condition 3: no good pair in H-{v}")
    return JcellReport(True, None)
