"""Constructive lower-bound pipelines: dense-core peeling, greedy long paths,
the path-cut 2-partition family, spanning-tree packing and the k-partition
family on top of it, the connected-cut witness, and the ordered
vertex-partition family.

Every pipeline re-verifies the guarantees it relies on (connectivity of each
emitted part, core minimum degree, packing feasibility) instead of assuming
them, and returns a machine-readable report next to its partitions.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import (
    ConstructionFailedError,
    DisconnectedError,
    PackingInfeasibleError,
    TooSmallError,
)
from .exact import CutWitness, cut_size, gyori_lovasz, validate_vertex_partition
from .graph import (
    Graph,
    bits,
    blocks,
    components,
    is_connected,
    min_degree,
    st_numbering,
)
from .splits import validate_edge_partition


@dataclass
class CoreSubgraph:
    """Result of min-degree peeling: a connected subgraph of the parent with
    minimum degree at least half the parent's average degree."""

    parent: Graph
    vertices: int  # vertex bitmask
    min_degree: int
    peel_trace: list  # removal order

    def induced(self):
        return self.parent.induced(self.vertices)

    @property
    def size(self):
        return self.vertices.bit_count()


def dense_core(G):
    """Iteratively peel vertices of degree < d(G)/2 (lowest id first) and
    return the largest connected component of what remains."""
    n, m = G.n, G.m
    alive = G.full_vertex_mask()
    deg = [G.degree(v) for v in range(n)]
    trace = []
    # deg < d/2 = m/n, compared in integers as deg*n < m
    changed = True
    while changed:
        changed = False
        for v in range(n):
            if (alive >> v) & 1 and deg[v] * n < m:
                alive &= ~(1 << v)
                trace.append(v)
                for u in bits(G.neighbor_mask(v) & alive):
                    deg[u] -= 1
                changed = True
    assert alive, "peeling emptied the graph"
    comps = components(G, removed=G.full_vertex_mask() & ~alive)
    comps.sort(key=lambda c: (-c.bit_count(), (c & -c).bit_length()))
    core = comps[0]
    dmin = min(
        (G.neighbor_mask(v) & core).bit_count() for v in bits(core)
    )
    return CoreSubgraph(G, core, dmin, trace)


def long_path(H):
    """Greedy path, extended at both endpoints until each endpoint has all
    its neighbors on the path; at least min_degree(H)+1 vertices."""
    path = deque([0 if H.n else -1])
    onpath = 1
    while True:
        tail = path[-1]
        cand = H.neighbor_mask(tail) & ~onpath
        if cand:
            v = (cand & -cand).bit_length() - 1
            path.append(v)
            onpath |= 1 << v
            continue
        head = path[0]
        cand = H.neighbor_mask(head) & ~onpath
        if cand:
            v = (cand & -cand).bit_length() - 1
            path.appendleft(v)
            onpath |= 1 << v
            continue
        break
    return list(path)


@dataclass
class PathCutReport:
    core_size: int
    delta_core: int
    path_len: int
    prefix_len: int
    m_cut: int
    emitted: int
    distinct_pairs: int


def path_cut_partitions(G):
    """The path-cut family of connected 2-edge-partitions.

    Pipeline: dense core H, greedy long path truncated to ceil(delta(H)/2)
    vertices, cut edges ordered along the path; prefix l of the cut plus the
    reached path prefix plus the outside components already touched forms one
    part, the rest the other.
    """
    if not is_connected(G):
        raise DisconnectedError("path-cut pipeline needs a connected graph")
    core = dense_core(G)
    Hsub, vmap, _ = core.induced()
    delta = core.min_degree
    path = [vmap[v] for v in long_path(Hsub)]
    t = max(1, (delta + 1) // 2)
    prefix = path[:t]
    pset = 0
    for v in prefix:
        pset |= 1 << v
    pos = {v: i for i, v in enumerate(prefix)}

    cut = []  # (path_index, edge_id)
    for ei, (u, v) in enumerate(G.edges):
        inu, inv = (pset >> u) & 1, (pset >> v) & 1
        if inu != inv:
            cut.append((pos[u if inu else v], ei))
    cut.sort()
    m_cut = len(cut)

    comps = components(G, removed=pset)
    comp_edges = [G.edge_set_of_vertices(c) for c in comps]
    attach = [None] * len(comps)  # first cut index (1-based) touching comp
    for idx, (_, ei) in enumerate(cut, start=1):
        u, v = G.edges[ei]
        w = v if (pset >> u) & 1 else u
        for ci, c in enumerate(comps):
            if (c >> w) & 1:
                if attach[ci] is None:
                    attach[ci] = idx
                break

    prefix_edges = [0] * (t + 1)
    acc_v = 0
    for r, v in enumerate(prefix, start=1):
        acc_v |= 1 << v
        prefix_edges[r] = G.edge_set_of_vertices(acc_v)

    full = G.full_edge_mask()
    out = []
    e1 = 0
    for idx, (pi, ei) in enumerate(cut, start=1):
        e1 |= 1 << ei
        e1 |= prefix_edges[pi + 1]
        for ci in range(len(comps)):
            if attach[ci] == idx:
                e1 |= comp_edges[ci]
        e2 = full & ~e1
        if e2:
            parts = [e1, e2]
            if not validate_edge_partition(G, parts, k=2):
                raise ConstructionFailedError(f"path-cut partition {idx} invalid")
            out.append(parts)
    if not out and G.m >= 2:
        # degenerate low-degree case (m_cut <= 1): split off a single
        # removable edge so at least one valid partition is emitted
        out.append(_single_edge_split(G))
    pairs = {tuple(sorted((p.bit_count() for p in ps), reverse=True)) for ps in out}
    report = PathCutReport(
        core_size=core.size,
        delta_core=delta,
        path_len=len(path),
        prefix_len=t,
        m_cut=m_cut,
        emitted=len(out),
        distinct_pairs=len(pairs),
    )
    return out, report


def _single_edge_split(G):
    """[{e}, E - e] for a pendant edge, or any edge whose removal keeps the
    remaining edge set connected."""
    from .graph import is_connected_edge_set

    full = G.full_edge_mask()
    for ei, (u, v) in enumerate(G.edges):
        if G.degree(u) == 1 or G.degree(v) == 1:
            return [1 << ei, full & ~(1 << ei)]
    for ei in range(G.m):
        rest = full & ~(1 << ei)
        if is_connected_edge_set(G, rest):
            return [1 << ei, rest]
    raise ConstructionFailedError("no removable edge found")


@dataclass
class TreePacking:
    graph: Graph
    trees: list  # k edge bitmasks, each a spanning tree
    leftover: int  # edge bitmask


def spanning_tree_packing(G, k):
    """k edge-disjoint spanning trees via incremental matroid-union
    augmentation (exchange-path BFS over forest cycles); deterministic edge
    order.  Raises PackingInfeasibleError with the final forests if G has no
    such packing."""
    if not is_connected(G):
        raise DisconnectedError("packing needs a connected graph")
    n, m = G.n, G.m
    owner = [-1] * m
    fadj = [[[] for _ in range(n)] for _ in range(k)]  # forest -> vertex -> [(nbr, eid)]

    def forest_path(i, src, dst):
        """Edge ids on the path src..dst in forest i, or None."""
        prev = {src: (-1, -1)}
        q = deque([src])
        while q:
            x = q.popleft()
            if x == dst:
                path = []
                while x != src:
                    px, pe = prev[x]
                    path.append(pe)
                    x = px
                return path
            for y, eid in fadj[i][x]:
                if y not in prev:
                    prev[y] = (x, eid)
                    q.append(y)
        return None

    def insert(i, eid):
        u, v = G.edges[eid]
        owner[eid] = i
        fadj[i][u].append((v, eid))
        fadj[i][v].append((u, eid))

    def remove(i, eid):
        u, v = G.edges[eid]
        fadj[i][u].remove((v, eid))
        fadj[i][v].remove((u, eid))

    for e in range(m):
        prevE = {e: None}
        q = deque([e])
        found = None
        while q and found is None:
            f = q.popleft()
            fu, fv = G.edges[f]
            for i in range(k):
                if owner[f] == i:
                    continue
                cyc = forest_path(i, fu, fv)
                if cyc is None:
                    found = (f, i)
                    break
                for h in cyc:
                    if h not in prevE:
                        prevE[h] = f
                        q.append(h)
        if found is None:
            continue  # edge stays in the leftover
        f, i = found
        while True:
            g = prevE[f]
            j = owner[f]
            if j >= 0:
                remove(j, f)
            insert(i, f)
            if g is None:
                break
            f, i = g, j

    trees = [0] * k
    for eid, o in enumerate(owner):
        if o >= 0:
            trees[o] |= 1 << eid
    if any(t.bit_count() != n - 1 for t in trees):
        raise PackingInfeasibleError(
            f"no {k} edge-disjoint spanning trees (forest sizes "
            f"{[t.bit_count() for t in trees]}, need {n - 1})",
            forests=trees,
        )
    leftover = G.full_edge_mask() & ~sum(trees)
    packing = TreePacking(G, trees, leftover)
    _check_packing(packing, k)
    return packing


def _check_packing(packing, k):
    G = packing.graph
    seen = 0
    for t in packing.trees:
        assert seen & t == 0, "trees not edge-disjoint"
        seen |= t
        # acyclic + n-1 edges + touches every vertex => spanning tree
        touched = 0
        for eid in bits(t):
            u, v = G.edges[eid]
            touched |= (1 << u) | (1 << v)
        assert touched == G.full_vertex_mask(), "forest does not span"
        assert _acyclic(G, t), "forest has a cycle"
    assert seen & packing.leftover == 0


def _acyclic(G, emask):
    parent = list(range(G.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for eid in bits(emask):
        u, v = G.edges[eid]
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def _ascending_compositions(total, k):
    """Nondecreasing k-tuples of nonnegative ints summing to total."""

    def rec(rest, parts_left, minimum):
        if parts_left == 1:
            if rest >= minimum:
                yield (rest,)
            return
        for a in range(minimum, rest // parts_left + 1):
            for tail in rec(rest - a, parts_left - 1, a):
                yield (a,) + tail

    return rec(total, k, 0)


@dataclass
class PackingReport:
    core_size: int
    delta_core: int
    packed_k: int
    leftover: int
    emitted: int


def packing_partitions(G, k):
    """Connected k-edge-partitions from a spanning-tree packing of the dense
    core: tree i plus a block of leftover edges, with everything outside the
    core hanging off the last tree."""
    if k < 2:
        raise TooSmallError("k must be >= 2")
    if not is_connected(G):
        raise DisconnectedError("packing pipeline needs a connected graph")
    core = dense_core(G)
    Hsub, _, emap = core.induced()
    packing = spanning_tree_packing(Hsub, k)  # may raise PackingInfeasibleError

    def to_parent(local_mask):
        out = 0
        for j in bits(local_mask):
            out |= 1 << emap[j]
        return out

    trees = [to_parent(t) for t in packing.trees]
    leftover_ids = [emap[j] for j in bits(packing.leftover)]
    core_edges = 0
    for ei in emap:
        core_edges |= 1 << ei
    outside = G.full_edge_mask() & ~core_edges

    out = []
    for sizes in _ascending_compositions(len(leftover_ids), k):
        blocks_, at = [], 0
        for a in sizes:
            bm = 0
            for ei in leftover_ids[at : at + a]:
                bm |= 1 << ei
            blocks_.append(bm)
            at += a
        parts = [trees[i] | blocks_[i] for i in range(k)]
        parts[k - 1] |= outside
        if not validate_edge_partition(G, parts, k=k):
            raise ConstructionFailedError("packing partition failed validation")
        out.append(parts)
    report = PackingReport(
        core_size=core.size,
        delta_core=core.min_degree,
        packed_k=k,
        leftover=len(leftover_ids),
        emitted=len(out),
    )
    return out, report


def _attach_outside(G, parts, assigned):
    """Attach every component of G - assigned to a part it touches."""
    comps = components(G, removed=assigned)
    for c in comps:
        nbr = 0
        for v in bits(c):
            nbr |= G.neighbor_mask(v)
        nbr &= assigned
        if not nbr:
            raise ConstructionFailedError("outside component touches no part")
        anchor = (nbr & -nbr).bit_length() - 1
        for i, p in enumerate(parts):
            if (p >> anchor) & 1:
                parts[i] |= c
                break
    return parts


def connected_cut_bound(G, r=2):
    """A certified connected r-partite cut witness built inside the dense
    core (st-numbering split of a largest block for r=2, prescribed-size
    connected partition for r >= 3), with outside components re-attached."""
    if not is_connected(G):
        raise DisconnectedError("cut bound needs a connected graph")
    if G.n < r:
        raise ConstructionFailedError(f"cannot cut {G.n} vertices into {r} parts")
    core = dense_core(G)
    Hsub, vmap, _ = core.induced()
    delta = core.min_degree

    if r == 2:
        if Hsub.m == 0:
            # core is a single vertex: G is a single vertex too (guarded
            # above), so this only happens for degenerate inputs
            raise ConstructionFailedError("core has no edges")
        blks = blocks(Hsub)
        blks.sort(key=lambda bm: (-bm.bit_count(), (bm & -bm).bit_length()))
        bmask = blks[0]
        Bsub, bvmap, _ = Hsub.induced(bmask)
        s = max(1, min((delta + 1) // 2, Bsub.n - 1))
        order = st_numbering(Bsub, 0, Bsub.n - 1)
        a = 0
        for lv in order[:s]:
            a |= 1 << vmap[bvmap[lv]]
        b = 0
        for lv in order[s:]:
            b |= 1 << vmap[bvmap[lv]]
        parts = [a, b]
    else:
        if Hsub.n < r:
            raise ConstructionFailedError(f"core smaller than r={r}")
        s = max(1, delta // (2 * r))
        while (r - 1) * s >= Hsub.n:
            s -= 1
        if s < 1:
            raise ConstructionFailedError(f"core smaller than r={r}")
        sizes = [s] * (r - 1) + [Hsub.n - (r - 1) * s]
        local = None
        if Hsub.n <= 16:
            local = gyori_lovasz(Hsub, sizes)
        if local is None:
            local = _greedy_regions(Hsub, sizes)
        if local is None:
            local = _leaf_peel(Hsub, r)
        parts = []
        for p in local:
            gm = 0
            for lv in bits(p):
                gm |= 1 << vmap[lv]
            parts.append(gm)

    assigned = 0
    for p in parts:
        assigned |= p
    parts = _attach_outside(G, parts, assigned)
    if not validate_vertex_partition(G, parts, k=r):
        raise ConstructionFailedError("cut witness failed validation")
    return CutWitness(parts, cut_size(G, parts))


def _greedy_regions(H, sizes):
    """BFS region growing: parts of the requested sizes, last part is the
    remainder (validated for connectivity)."""
    remaining = H.full_vertex_mask()
    parts = []
    for s in sizes[:-1]:
        seed = (remaining & -remaining).bit_length() - 1
        S = 1 << seed
        frontier = deque([seed])
        while S.bit_count() < s and frontier:
            x = frontier.popleft()
            for y in bits(H.neighbor_mask(x) & remaining & ~S):
                if S.bit_count() >= s:
                    break
                S |= 1 << y
                frontier.append(y)
        if S.bit_count() != s:
            return None
        parts.append(S)
        remaining &= ~S
    if remaining == 0:
        return None
    parts.append(remaining)
    if not validate_vertex_partition(H, parts):
        return None
    return parts


def _leaf_peel(H, r):
    """Always-valid fallback partition: r-1 spanning-tree leaves become
    singleton parts, the remaining tree is the last part."""
    from .graph import spanning_tree

    T = spanning_tree(H, 0)
    tdeg = [0] * H.n
    for u, v in T.graph.edges:
        tdeg[u] += 1
        tdeg[v] += 1
    alive = H.full_vertex_mask()
    parts = []
    for _ in range(r - 1):
        leaf = next(v for v in bits(alive) if tdeg[v] <= 1)
        parts.append(1 << leaf)
        alive &= ~(1 << leaf)
        for u, v in T.graph.edges:
            if u == leaf and (alive >> v) & 1:
                tdeg[v] -= 1
            elif v == leaf and (alive >> u) & 1:
                tdeg[u] -= 1
    parts.append(alive)
    return parts


@dataclass
class OrderedPartitionReport:
    core_size: int
    delta_core: int
    path_len: int
    subpath_lens: list = field(default_factory=list)
    attempted: int = 0
    succeeded: int = 0


def ordered_vertex_partitions(G, k):
    """Connected k-vertex-partitions with pairwise distinct ordered size
    vectors: prefixes of k-1 subpaths of a long core path, remainder of the
    core as the last part (connectivity verified directly), outside
    components attached to the first part they touch."""
    if k < 2:
        raise TooSmallError("k must be >= 2")
    if not is_connected(G):
        raise DisconnectedError("ordered partitions need a connected graph")
    core = dense_core(G)
    Hsub, vmap, _ = core.induced()
    path = [vmap[v] for v in long_path(Hsub)]
    hmask = 0
    for lv in range(Hsub.n):
        hmask |= 1 << vmap[lv]

    report = OrderedPartitionReport(
        core_size=core.size, delta_core=core.min_degree, path_len=len(path)
    )
    if len(path) - 1 < k - 1:
        return [], report

    # the last path vertex is reserved for the final part, so every prefix
    # choice leaves it nonempty
    usable = path[:-1]
    base, extra = divmod(len(usable), k - 1)
    subpaths = []
    at = 0
    for i in range(k - 1):
        ln = base + (1 if i < extra else 0)
        subpaths.append(usable[at : at + ln])
        at += ln
    report.subpath_lens = [len(p) for p in subpaths]

    outside = components(G, removed=hmask)
    outside_nbr = []
    for c in outside:
        nb = 0
        for v in bits(c):
            nb |= G.neighbor_mask(v)
        outside_nbr.append(nb)

    out = []
    seen_vecs = set()

    def tuples(i, chosen):
        if i == k - 1:
            yield tuple(chosen)
            return
        for a in range(1, len(subpaths[i]) + 1):
            yield from tuples(i + 1, chosen + [a])

    for tup in tuples(0, []):
        report.attempted += 1
        xs = []
        used = 0
        for i, a in enumerate(tup):
            xm = 0
            for v in subpaths[i][:a]:
                xm |= 1 << v
            xs.append(xm)
            used |= xm
        xk = hmask & ~used
        if xk == 0 or not _induced_connected_mask(G, xk):
            continue
        parts = xs + [xk]
        ok = True
        for ci, c in enumerate(outside):
            for j in range(k):
                if outside_nbr[ci] & parts[j]:
                    parts[j] |= c
                    break
            else:
                ok = False
                break
        if not ok:
            continue
        if not validate_vertex_partition(G, parts, k=k):
            raise ConstructionFailedError("ordered partition failed validation")
        vec = tuple(p.bit_count() for p in parts)
        if vec in seen_vecs:
            continue
        seen_vecs.add(vec)
        out.append(parts)
        report.succeeded += 1
    return out, report


def _induced_connected_mask(G, mask):
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


def core_min_degree_floor(G):
    """The peel guarantee: ceil(d(G)/2) as an integer."""
    return -(-G.m // G.n)


__all__ = [
    "CoreSubgraph",
    "CutWitness",
    "OrderedPartitionReport",
    "PackingReport",
    "PathCutReport",
    "TreePacking",
    "connected_cut_bound",
    "dense_core",
    "long_path",
    "min_degree",
    "ordered_vertex_partitions",
    "packing_partitions",
    "path_cut_partitions",
    "spanning_tree_packing",
]
