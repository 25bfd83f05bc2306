"""Graph isomorphism, canonical forms, and automorphism orbits.

Everything here targets small graphs (at most a few dozen vertices):
iterated degree/neighbourhood colour refinement, a backtracking matcher for
pairwise isomorphism, and an individualise-refine canonical form whose leaf
enumeration also yields the full automorphism group.  No canonical-form
cache is kept; callers hash the returned bytes if they need one.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, bits


def color_refine(g: Graph, colors: tuple[int, ...] | None = None,
                 nbrs: list[tuple[int, ...]] | None = None) -> tuple[int, ...]:
    """Stable colouring from iterated neighbour-colour refinement.

    Colour ids are normalised by sorted signature, so they are invariant
    under vertex relabelling; refined ids also stay ordered consistently
    with the ids they split (a signature leads with the previous colour).
    ``nbrs`` lets hot callers reuse precomputed neighbour lists.
    """
    n = g.n
    if nbrs is None:
        nbrs = [tuple(bits(a)) for a in g.adj]
    cur = colors if colors is not None else tuple(len(nb) for nb in nbrs)
    ncls = len(set(cur))
    rng = range(n)
    while True:
        sigs = [
            (cur[v], *sorted([cur[w] for w in nbrs[v]]))
            for v in rng
        ]
        order = {s: i for i, s in enumerate(sorted(set(sigs)))}
        nxt = tuple(order[s] for s in sigs)
        if len(order) == ncls:
            return nxt
        cur = nxt
        ncls = len(order)


def _cells(colors: tuple[int, ...]) -> dict[int, list[int]]:
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    return cells


def pair_seeds(g: Graph) -> list[tuple[int, ...]]:
    """Per-vertex invariant: degree plus the sorted multiset of
    (common-neighbour count, adjacency) codes against every other vertex.

    Subsumes triangle and 4-cycle statistics, so it separates vertices of
    regular graphs that plain degree refinement leaves untouched."""
    adj = g.adj
    n = g.n
    profiles: list[list[int]] = [[] for _ in range(n)]
    for u in range(n):
        au = adj[u]
        pu = profiles[u]
        for v in range(u + 1, n):
            code = (au & adj[v]).bit_count() << 1 | (au >> v & 1)
            pu.append(code)
            profiles[v].append(code)
    for v in range(n):
        profiles[v].sort()
        profiles[v].insert(0, adj[v].bit_count())
    return [tuple(p) for p in profiles]


def seeded_colors(g: Graph, seeds: list[tuple[int, ...]],
                  nbrs: list[tuple[int, ...]] | None = None) -> tuple[int, ...]:
    """Refined colouring with an invariant seed partition."""
    order = {s: i for i, s in enumerate(sorted(set(seeds)))}
    return color_refine(g, tuple(order[s] for s in seeds), nbrs)


def are_isomorphic(g1: Graph, g2: Graph) -> bool:
    """Exact isomorphism test: invariant screens, then canonical forms.

    The screens (degree sequences, pairwise-profile invariants, refined
    colour multisets) settle most non-isomorphic pairs; ties are decided
    by comparing canonical forms, which stays fast on regular graphs
    where the pure backtracking matcher degenerates.
    """
    if g1.n != g2.n or g1.edge_count != g2.edge_count:
        return False
    s1, s2 = pair_seeds(g1), pair_seeds(g2)
    if sorted(s1) != sorted(s2):
        return False
    # identical seed multisets make the per-graph colour normalisations
    # comparable across the two graphs
    if sorted(seeded_colors(g1, s1)) != sorted(seeded_colors(g2, s2)):
        return False
    return canonical_form(g1) == canonical_form(g2)


def find_isomorphism(g1: Graph, g2: Graph) -> list[int] | None:
    """Explicit vertex mapping g1 -> g2 by refinement plus backtracking,
    or None.  Independent of the canonical-form machinery; intended for
    small graphs (regular inputs can degenerate)."""
    if g1.n != g2.n or g1.edge_count != g2.edge_count:
        return None
    c1 = color_refine(g1)
    c2 = color_refine(g2)
    if sorted(c1) != sorted(c2):
        return None
    cells2 = _cells(c2)
    # Match most-constrained vertices first: small colour classes early.
    order = sorted(range(g1.n), key=lambda v: (len(cells2[c1[v]]), c1[v], v))
    image = [-1] * g1.n
    used = 0

    def extend(i: int) -> bool:
        nonlocal used
        if i == g1.n:
            return True
        v = order[i]
        nbr_imgs = 0
        pending = 0
        for w in bits(g1.adj[v]):
            if image[w] >= 0:
                nbr_imgs |= 1 << image[w]
            else:
                pending += 1
        for x in cells2[c1[v]]:
            if used >> x & 1:
                continue
            # x must be adjacent to exactly the images of v's mapped neighbours
            if g2.adj[x] & used != nbr_imgs:
                continue
            image[v] = x
            used |= 1 << x
            if extend(i + 1):
                return True
            used &= ~(1 << x)
            image[v] = -1
        return False

    return list(image) if extend(0) else None


@dataclass(frozen=True)
class CanonicalData:
    form: bytes
    labeling: tuple[int, ...]  # labeling[position] = original vertex
    automorphisms: tuple[tuple[int, ...], ...]  # full group, as images per vertex
    orbit: tuple[int, ...]  # orbit[v] = smallest vertex in v's orbit


def _leaf_form(g: Graph, lab: list[int]) -> bytes:
    pos = [0] * g.n
    for i, v in enumerate(lab):
        pos[v] = i
    out = bytearray()
    acc = 0
    k = 0
    for i in range(g.n):
        ai = g.adj[lab[i]]
        for j in range(i):
            acc = acc << 1 | (ai >> lab[j] & 1)
            k += 1
            if k == 8:
                out.append(acc)
                acc = k = 0
    if k:
        out.append(acc << (8 - k))
    return bytes(out)


def canonical_data(g: Graph,
                   initial_colors: tuple[int, ...] | None = None) -> CanonicalData:
    """Canonical form by individualise-refine; leaves also give Aut(g).

    Every leaf whose form equals the first leaf's form corresponds to one
    automorphism, and all automorphisms appear this way, so the returned
    group and orbit partition are exact.

    ``initial_colors`` may carry any isomorphism-invariant vertex colouring
    (it must be computed from the graph alone); the colour-respecting
    automorphisms are then still the full group, and the returned form is
    canonical for graphs sharing that colouring scheme.
    """
    n = g.n
    if n == 0:
        return CanonicalData(b"", (), ((),), ())
    nbrs = [tuple(bits(a)) for a in g.adj]
    first_form: bytes | None = None
    first_lab: list[int] = []
    best_form: bytes | None = None
    best_lab: list[int] = []
    autos: list[tuple[int, ...]] = []

    def descend(colors: tuple[int, ...]) -> None:
        nonlocal first_form, best_form, first_lab, best_lab
        colors = color_refine(g, colors, nbrs)
        cells = _cells(colors)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1:
                target = cells[c]
                break
        if target is None:
            lab = sorted(range(n), key=lambda v: colors[v])
            form = _leaf_form(g, lab)
            if first_form is None:
                first_form = form
                first_lab = lab
            elif form == first_form:
                perm = [0] * n
                for a, b in zip(first_lab, lab):
                    perm[a] = b
                autos.append(tuple(perm))
            if best_form is None or form > best_form:
                best_form = form
                best_lab = lab
            return
        mark = n  # colour id outside the normalised 0..ncls-1 range
        for v in target:
            branched = tuple(
                mark if u == v else c for u, c in enumerate(colors)
            )
            descend(branched)

    descend(color_refine(g, initial_colors, nbrs))
    autos.append(tuple(range(n)))
    orbit = list(range(n))

    def find(v: int) -> int:
        while orbit[v] != v:
            orbit[v] = orbit[orbit[v]]
            v = orbit[v]
        return v

    for perm in autos:
        for v, w in enumerate(perm):
            rv, rw = find(v), find(w)
            if rv != rw:
                if rv > rw:
                    rv, rw = rw, rv
                orbit[rw] = rv
    roots = tuple(find(v) for v in range(n))
    assert best_form is not None
    return CanonicalData(best_form, tuple(best_lab), tuple(autos), roots)


def canonical_form(g: Graph) -> bytes:
    return canonical_data(g).form
