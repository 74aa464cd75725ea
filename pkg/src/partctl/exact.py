"""Exact oracles: connected edge/vertex partition profiles, connected r-partite
maximum cuts, and small-scale connected partitions with prescribed sizes.

All solvers enumerate connected sets with the standard grow-by-boundary,
forbid-rejected scheme, so each connected set is visited exactly once.  Part 1
of any partition is anchored at the lowest-id unused element, which kills the
k! permutation symmetry.  Two prunings keep the 38-edge nonmonotone example
tractable: rejected elements pinned in too many residual components kill a
branch, and (for k=2 profiles) a branch whose whole size range is already
witnessed is skipped.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    DisconnectedError,
    SizeMismatchError,
    TooLargeError,
)
from .graph import bits, components, is_biconnected, is_connected, st_numbering

DEFAULT_EDGE_BUDGET = {2: 40, 3: 20, 4: 16}
DEFAULT_VERTEX_BUDGET = {2: 24, 3: 18, 4: 14}
FALLBACK_EDGE_BUDGET = 12
FALLBACK_VERTEX_BUDGET = 12


@dataclass
class ProfileResult:
    """Exact size profile plus one stored witness partition per tuple."""

    profile: set = field(default_factory=set)
    witnesses: dict = field(default_factory=dict)

    @property
    def value(self):
        return len(self.profile)

    def record(self, parts):
        key = tuple(sorted((p.bit_count() for p in parts), reverse=True))
        if key not in self.profile:
            self.profile.add(key)
            self.witnesses[key] = list(parts)


@dataclass
class CutWitness:
    parts: list  # vertex bitmasks
    cut_size: int


def cut_size(G, parts):
    """Number of edges whose endpoints land in different parts."""
    where = {}
    for i, p in enumerate(parts):
        for v in bits(p):
            where[v] = i
    return sum(1 for u, v in G.edges if where[u] != where[v])


def _edge_set_components(ea, mask):
    """Components of an edge set under shared-endpoint adjacency."""
    comps = []
    rem = mask
    while rem:
        start = (rem & -rem).bit_length() - 1
        comp = 1 << start
        frontier = ea[start] & rem
        while frontier & ~comp:
            comp |= frontier
            nf = 0
            for e in bits(frontier):
                nf |= ea[e]
            frontier = nf & rem & ~comp
        comp &= rem
        comps.append(comp)
        rem &= ~comp
    return comps


def edge_partition_profile(G, k, max_edges=None):
    """Exact set of canonical size k-tuples of connected edge partitions.

    P(G, k) is the size of the returned profile.  Graphs with fewer than k
    edges get an empty profile.
    """
    if not is_connected(G):
        raise DisconnectedError("edge partition profile needs a connected graph")
    budget = max_edges or DEFAULT_EDGE_BUDGET.get(k, FALLBACK_EDGE_BUDGET)
    if G.m > budget:
        raise TooLargeError(f"m={G.m} exceeds budget {budget} for k={k}")
    result = ProfileResult()
    m = G.m
    if m < k:
        return result
    ea = G.edge_adjacency()

    def all_sizes_taken(lo, hi):
        for s in range(lo, hi + 1):
            if (max(s, m - s), min(s, m - s)) not in result.profile:
                return False
        return True

    def grow(rem, acc, j, S, cand, forb):
        comp = rem & ~S
        comps = _edge_set_components(ea, comp)
        pinned = sum(1 for c in comps if c & forb)
        parts_left = k - j
        if comp and len(comps) <= parts_left:
            if parts_left == 1:
                result.record(acc + [S, comp])
            else:
                descend(comp, acc + [S], j + 1)
        if pinned > parts_left:
            return
        avail = cand & ~forb & comp
        if k == 2 and avail:
            # every descendant part-1 lies strictly between these sizes
            ssz = S.bit_count()
            hi = min(ssz + (comp & ~forb).bit_count(), m - 1)
            if all_sizes_taken(ssz + 1, hi):
                return
        f = forb
        while avail:
            b = avail & -avail
            e = b.bit_length() - 1
            grow(rem, acc, j, S | b, cand | ea[e], f)
            avail ^= b
            f |= b

    def descend(rem, acc, j):
        anchor = rem & -rem
        e = anchor.bit_length() - 1
        grow(rem, acc, j, anchor, ea[e] & rem, 0)

    descend(G.full_edge_mask(), [], 1)
    return result


def vertex_partition_profile(G, k, max_vertices=None):
    """Exact profile of connected vertex partitions; pi(G, k) is its size."""
    if not is_connected(G):
        raise DisconnectedError("vertex partition profile needs a connected graph")
    budget = max_vertices or DEFAULT_VERTEX_BUDGET.get(k, FALLBACK_VERTEX_BUDGET)
    if G.n > budget:
        raise TooLargeError(f"n={G.n} exceeds budget {budget} for k={k}")
    result = ProfileResult()
    n = G.n
    if n < k:
        return result

    def all_sizes_taken(lo, hi):
        for s in range(lo, hi + 1):
            if (max(s, n - s), min(s, n - s)) not in result.profile:
                return False
        return True

    def grow(rem, acc, j, S, cand, forb):
        comp = rem & ~S
        comps = components(G, removed=G.full_vertex_mask() & ~comp)
        pinned = sum(1 for c in comps if c & forb)
        parts_left = k - j
        if comp and len(comps) <= parts_left:
            if parts_left == 1:
                result.record(acc + [S, comp])
            else:
                descend(comp, acc + [S], j + 1)
        if pinned > parts_left:
            return
        avail = cand & ~forb & comp
        if k == 2 and avail:
            ssz = S.bit_count()
            hi = min(ssz + (comp & ~forb).bit_count(), n - 1)
            if all_sizes_taken(ssz + 1, hi):
                return
        f = forb
        while avail:
            b = avail & -avail
            v = b.bit_length() - 1
            grow(rem, acc, j, S | b, cand | G.neighbor_mask(v), f)
            avail ^= b
            f |= b

    def descend(rem, acc, j):
        anchor = rem & -rem
        v = anchor.bit_length() - 1
        grow(rem, acc, j, anchor, G.neighbor_mask(v) & rem, 0)

    descend(G.full_vertex_mask(), [], 1)
    return result


def iter_connected_vertex_partitions(G, r):
    """Yield every connected vertex partition into r parts exactly once
    (parts anchored at lowest unused vertex; no size-based pruning)."""

    def grow(rem, acc, j, S, cand, forb):
        comp = rem & ~S
        comps = components(G, removed=G.full_vertex_mask() & ~comp)
        pinned = sum(1 for c in comps if c & forb)
        parts_left = r - j
        if comp and len(comps) <= parts_left:
            if parts_left == 1:
                yield acc + [S, comp]
            else:
                yield from descend(comp, acc + [S], j + 1)
        if pinned > parts_left:
            return
        avail = cand & ~forb & comp
        f = forb
        while avail:
            b = avail & -avail
            v = b.bit_length() - 1
            yield from grow(rem, acc, j, S | b, cand | G.neighbor_mask(v), f)
            avail ^= b
            f |= b

    def descend(rem, acc, j):
        anchor = rem & -rem
        v = anchor.bit_length() - 1
        yield from grow(rem, acc, j, anchor, G.neighbor_mask(v) & rem, 0)

    return descend(G.full_vertex_mask(), [], 1)


def cmc(G, r=2, max_vertices=None):
    """Connected r-partite maximum cut with a witness partition."""
    if not is_connected(G):
        raise DisconnectedError("cmc needs a connected graph")
    budget = max_vertices or DEFAULT_VERTEX_BUDGET.get(r, FALLBACK_VERTEX_BUDGET)
    if G.n > budget:
        raise TooLargeError(f"n={G.n} exceeds budget {budget} for r={r}")
    if G.n < r:
        raise TooLargeError(f"cannot split {G.n} vertices into {r} connected parts")
    best = None
    for parts in iter_connected_vertex_partitions(G, r):
        inside = sum(G.edge_set_of_vertices(p).bit_count() for p in parts)
        cut = G.m - inside
        if best is None or cut > best.cut_size:
            best = CutWitness(list(parts), cut)
    return best


def validate_vertex_partition(G, parts, k=None, sizes=None):
    if k is not None and len(parts) != k:
        return False
    if sizes is not None and sorted(p.bit_count() for p in parts) != sorted(sizes):
        return False
    union = 0
    for p in parts:
        if p == 0 or (union & p):
            return False
        union |= p
        if not _induced_connected(G, p):
            return False
    return union == G.full_vertex_mask()


def _induced_connected(G, mask):
    start = (mask & -mask).bit_length() - 1
    seen = 1 << start
    frontier = G.neighbor_mask(start) & mask
    while frontier & ~seen:
        seen |= frontier
        nf = 0
        for v in bits(frontier):
            nf |= G.neighbor_mask(v)
        frontier = nf & mask & ~seen
    return seen & mask == mask


def gyori_lovasz(G, sizes, max_vertices=16):
    """A connected vertex partition with the given part sizes, or None.

    For k=2 on a 2-connected graph the st-numbering prefix construction
    always succeeds; otherwise an exhaustive search runs (n <= max_vertices).
    """
    sizes = list(sizes)
    if sum(sizes) != G.n or any(s < 1 for s in sizes):
        raise SizeMismatchError(f"sizes {sizes} do not sum to n={G.n}")
    k = len(sizes)
    if k == 1:
        return [G.full_vertex_mask()] if is_connected(G) else None
    if k == 2 and is_biconnected(G):
        order = st_numbering(G, 0, G.n - 1)
        a = 0
        for v in order[: sizes[0]]:
            a |= 1 << v
        return [a, G.full_vertex_mask() & ~a]
    if G.n > max_vertices:
        raise TooLargeError(f"n={G.n} exceeds search budget {max_vertices}")

    def connected_sets_of_size(allowed, anchor_bit, s):
        """Connected-in-G subsets of `allowed` containing the anchor with
        exactly s vertices."""
        found = []

        def grow(S, cand, forb):
            if S.bit_count() == s:
                found.append(S)
                return
            avail = cand & ~forb & allowed & ~S
            if S.bit_count() + avail.bit_count() < s:
                return
            f = forb
            while avail:
                b = avail & -avail
                v = b.bit_length() - 1
                grow(S | b, cand | G.neighbor_mask(v), f)
                avail ^= b
                f |= b

        v0 = anchor_bit.bit_length() - 1
        grow(anchor_bit, G.neighbor_mask(v0), 0)
        return found

    def search(rem, remaining_sizes):
        if not remaining_sizes:
            return []
        anchor = rem & -rem
        for s in sorted(set(remaining_sizes)):
            rest = list(remaining_sizes)
            rest.remove(s)
            for S in connected_sets_of_size(rem, anchor, s):
                sub = search(rem & ~S, rest)
                if sub is not None:
                    return [S] + sub
        return None

    parts = search(G.full_vertex_mask(), sorted(sizes))
    if parts is None:
        return None
    # reorder the found parts to match the requested size order
    pool = list(parts)
    ordered = []
    for s in sizes:
        i = next(i for i, p in enumerate(pool) if p.bit_count() == s)
        ordered.append(pool.pop(i))
    return ordered
