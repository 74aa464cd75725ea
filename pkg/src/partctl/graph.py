"""Graph substrate: immutable simple graphs, bitset vertex/edge sets, and the
connectivity machinery (components, spanning trees, blocks, st-numbering) the
rest of the package is built on.

Vertex sets and edge sets are plain Python ints used as bitmasks; bit i stands
for vertex/edge id i.  All tie-breaking is by ascending id so every derived
object is reproducible.
"""

from __future__ import annotations

from collections import deque

from .errors import (
    DisconnectedError,
    DuplicateEdgeError,
    EmptySetError,
    NotBiconnectedError,
    ParseError,
    SelfLoopError,
    VertexOutOfRangeError,
)


def bits(mask):
    """Yield the set bit positions of a bitmask in ascending order."""
    while mask:
        b = mask & -mask
        yield b.bit_length() - 1
        mask ^= b


def mask_of(ids):
    m = 0
    for i in ids:
        m |= 1 << i
    return m


class Graph:
    """Simple undirected graph with dense integer vertex and edge ids.

    Immutable after construction.  Edges are stored min-endpoint first; the
    edge id is the index into ``edges``.
    """

    __slots__ = (
        "n",
        "edges",
        "adj",
        "_nbr_mask",
        "_inc_mask",
        "_edge_adj",
    )

    def __init__(self, n, edges):
        seen = set()
        canon = []
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise VertexOutOfRangeError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise SelfLoopError(f"self-loop at vertex {u}")
            if u > v:
                u, v = v, u
            if (u, v) in seen:
                raise DuplicateEdgeError(f"duplicate edge ({u},{v})")
            seen.add((u, v))
            canon.append((u, v))
        self.n = n
        self.edges = tuple(canon)
        adj = [[] for _ in range(n)]
        nbr = [0] * n
        inc = [0] * n
        for ei, (u, v) in enumerate(self.edges):
            adj[u].append(ei)
            adj[v].append(ei)
            nbr[u] |= 1 << v
            nbr[v] |= 1 << u
            inc[u] |= 1 << ei
            inc[v] |= 1 << ei
        self.adj = tuple(tuple(a) for a in adj)
        self._nbr_mask = tuple(nbr)
        self._inc_mask = tuple(inc)
        self._edge_adj = None

    @property
    def m(self):
        return len(self.edges)

    def average_degree(self):
        return 2.0 * self.m / self.n

    def degree(self, v):
        return len(self.adj[v])

    def neighbor_mask(self, v):
        return self._nbr_mask[v]

    def incident_mask(self, v):
        """Bitmask of edge ids incident to v."""
        return self._inc_mask[v]

    def neighbors(self, v):
        return list(bits(self._nbr_mask[v]))

    def other_end(self, ei, v):
        u, w = self.edges[ei]
        return w if u == v else u

    def full_vertex_mask(self):
        return (1 << self.n) - 1

    def full_edge_mask(self):
        return (1 << self.m) - 1

    def edge_adjacency(self):
        """Per-edge bitmask of edges sharing an endpoint (lazy, cached)."""
        if self._edge_adj is None:
            ea = []
            for ei, (u, v) in enumerate(self.edges):
                ea.append((self._inc_mask[u] | self._inc_mask[v]) & ~(1 << ei))
            self._edge_adj = tuple(ea)
        return self._edge_adj

    def edge_id(self, u, v):
        if u > v:
            u, v = v, u
        for ei in self.adj[u]:
            if self.edges[ei] == (u, v):
                return ei
        raise KeyError((u, v))

    def edge_set_of_vertices(self, vmask):
        """Edges with both endpoints inside vmask."""
        out = 0
        for ei, (u, v) in enumerate(self.edges):
            if (vmask >> u) & 1 and (vmask >> v) & 1:
                out |= 1 << ei
        return out

    def induced(self, vmask):
        """Induced subgraph on vmask with relabeled dense ids.

        Returns (subgraph, vmap, emap): vmap[i] is the parent vertex id of
        subgraph vertex i, emap[j] the parent edge id of subgraph edge j.
        """
        vmap = list(bits(vmask))
        inv = {v: i for i, v in enumerate(vmap)}
        sub_edges = []
        emap = []
        for ei, (u, v) in enumerate(self.edges):
            if u in inv and v in inv:
                sub_edges.append((inv[u], inv[v]))
                emap.append(ei)
        return Graph(len(vmap), sub_edges), vmap, emap

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.n, self.edges))


def build_graph(n, edges):
    """Canonical Graph constructor (validates, stores min endpoint first)."""
    return Graph(n, edges)


class RootedTree:
    """A tree (m = n-1, connected) with a designated root and parent map."""

    __slots__ = ("graph", "root", "parent")

    def __init__(self, graph, root):
        if graph.m != graph.n - 1:
            raise DisconnectedError("not a tree: m != n-1")
        parent = [-1] * graph.n
        order = [root]
        seen = 1 << root
        qi = 0
        while qi < len(order):
            v = order[qi]
            qi += 1
            for u in bits(graph.neighbor_mask(v) & ~seen):
                seen |= 1 << u
                parent[u] = v
                order.append(u)
        if len(order) != graph.n:
            raise DisconnectedError("not a tree: disconnected")
        self.graph = graph
        self.root = root
        self.parent = tuple(parent)

    @property
    def n(self):
        return self.graph.n

    def __repr__(self):
        return f"RootedTree(n={self.n}, root={self.root})"


def is_connected_vertex_set(G, S):
    """True iff the subgraph induced by vertex bitmask S is connected."""
    if S == 0:
        raise EmptySetError("empty vertex set")
    start = (S & -S).bit_length() - 1
    seen = 1 << start
    frontier = G.neighbor_mask(start) & S
    while frontier & ~seen:
        seen |= frontier
        nf = 0
        for v in bits(frontier):
            nf |= G.neighbor_mask(v)
        frontier = nf & S & ~seen
    return seen & S == S


def is_connected_edge_set(G, F):
    """True iff the edges in bitmask F form a connected subgraph on the
    vertices they touch."""
    if F == 0:
        raise EmptySetError("empty edge set")
    ea = G.edge_adjacency()
    start = (F & -F).bit_length() - 1
    seen = 1 << start
    frontier = ea[start] & F
    while frontier & ~seen:
        seen |= frontier
        nf = 0
        for e in bits(frontier):
            nf |= ea[e]
        frontier = nf & F & ~seen
    return seen & F == F


def components(G, removed=0):
    """Connected components of G - removed as a list of vertex bitmasks,
    ordered by smallest contained vertex id."""
    alive = G.full_vertex_mask() & ~removed
    comps = []
    while alive:
        start = (alive & -alive).bit_length() - 1
        comp = 1 << start
        frontier = G.neighbor_mask(start) & alive
        while frontier & ~comp:
            comp |= frontier
            nf = 0
            for v in bits(frontier):
                nf |= G.neighbor_mask(v)
            frontier = nf & alive & ~comp
        comp &= alive
        comps.append(comp)
        alive &= ~comp
    return comps


def is_connected(G):
    if G.n == 0:
        return False
    return len(components(G)) == 1


def spanning_tree(G, root=0):
    """Deterministic BFS spanning tree (neighbors visited by ascending id)."""
    if not is_connected(G):
        raise DisconnectedError("graph is disconnected")
    seen = 1 << root
    order = deque([root])
    tree_edges = []
    while order:
        v = order.popleft()
        for u in bits(G.neighbor_mask(v) & ~seen):
            seen |= 1 << u
            tree_edges.append((min(v, u), max(v, u)))
            order.append(u)
    T = Graph(G.n, tree_edges)
    return RootedTree(T, root)


def min_degree(G):
    return min(len(a) for a in G.adj) if G.n else 0


def blocks(G):
    """2-connected blocks as vertex bitmasks, via lowpoint DFS.

    Bridges yield 2-vertex blocks.  Isolated vertices yield no block.  Output
    sorted by (smallest vertex, mask) for determinism.
    """
    disc = [-1] * G.n
    low = [0] * G.n
    out = []
    counter = 0
    for start in range(G.n):
        if disc[start] != -1 or G.degree(start) == 0:
            continue
        stack = [(start, -1, iter(G.neighbors(start)))]
        disc[start] = low[start] = counter
        counter += 1
        estack = []  # vertex-pair stack for block extraction
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for u in it:
                if u == parent:
                    # skip one occurrence of the tree edge only; simple
                    # graphs have no parallel edges so skipping all is fine
                    continue
                if disc[u] == -1:
                    estack.append((v, u))
                    disc[u] = low[u] = counter
                    counter += 1
                    stack.append((u, v, iter(G.neighbors(u))))
                    advanced = True
                    break
                elif disc[u] < disc[v]:
                    estack.append((v, u))
                    low[v] = min(low[v], disc[u])
            if advanced:
                continue
            stack.pop()
            if stack:
                pv = stack[-1][0]
                low[pv] = min(low[pv], low[v])
                if low[v] >= disc[pv]:
                    # pv is an articulation point (or root): pop a block
                    bm = 0
                    while estack:
                        a, b = estack.pop()
                        bm |= (1 << a) | (1 << b)
                        if (a, b) == (pv, v):
                            break
                    out.append(bm)
    out.sort(key=lambda bm: ((bm & -bm).bit_length(), bm))
    return out


def is_biconnected(G):
    if G.n < 2 or not is_connected(G):
        return False
    if G.n == 2:
        return G.m == 1
    return len(blocks(G)) == 1


def st_numbering(G, s, t):
    """Ordering of V starting at s and ending at t in which every prefix and
    every suffix induces a connected subgraph.

    Classic lowpoint construction on a DFS from s that visits t first (the
    st-edge is treated as virtual if absent, which is sound because the
    prefix/suffix property never uses it).  Requires a 2-connected graph.
    """
    if s == t:
        raise NotBiconnectedError("s and t must differ")
    if not is_biconnected(G):
        raise NotBiconnectedError("graph is not 2-connected")
    if G.n == 2:
        return [s, t]

    pre = [-1] * G.n
    parent = [-1] * G.n
    lowv = list(range(G.n))  # vertex of smallest preorder reachable
    preorder = []

    def dfs_children(v):
        nbrs = G.neighbors(v)
        if v == s:
            # force t as the first child (virtual st edge if needed)
            nbrs = [t] + [u for u in nbrs if u != t]
        return nbrs

    pre[s] = 0
    preorder.append(s)
    stack = [(s, iter(dfs_children(s)))]
    counter = 1
    while stack:
        v, it = stack[-1]
        advanced = False
        for u in it:
            if pre[u] == -1:
                pre[u] = counter
                counter += 1
                parent[u] = v
                preorder.append(u)
                stack.append((u, iter(dfs_children(u))))
                advanced = True
                break
            elif u != parent[v] and pre[u] < pre[lowv[v]]:
                lowv[v] = u
        if not advanced:
            stack.pop()
            if stack:
                pv = stack[-1][0]
                if pre[lowv[v]] < pre[lowv[pv]]:
                    lowv[pv] = lowv[v]

    # doubly linked insertion list seeded with [s, t]
    nxt = {s: t, t: None}
    prv = {t: s, s: None}
    sign = {s: -1}
    for v in preorder:
        if v in (s, t):
            continue
        p = parent[v]
        if sign[lowv[v]] == -1:
            # insert v before its parent
            q = prv[p]
            nxt[q] = v
            prv[v] = q
            nxt[v] = p
            prv[p] = v
            sign[p] = 1
        else:
            q = nxt[p]
            nxt[p] = v
            prv[v] = p
            nxt[v] = q
            prv[q] = v
            sign[p] = -1

    order = []
    cur = s
    while cur is not None:
        order.append(cur)
        cur = nxt[cur]

    # safety net: verify the defining property
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        if v != s and all(pos[u] > pos[v] for u in G.neighbors(v)):
            raise NotBiconnectedError("st-numbering failed validation")
        if v != t and all(pos[u] < pos[v] for u in G.neighbors(v)):
            raise NotBiconnectedError("st-numbering failed validation")
    return order


def write_graph(G, fh):
    """Text format: 'n m' then one 'u v' line per edge, min endpoint first."""
    fh.write(f"{G.n} {G.m}\n")
    for u, v in G.edges:
        fh.write(f"{u} {v}\n")


def read_graph(fh):
    lines = [ln.strip() for ln in fh]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty graph file")
    try:
        n, m = map(int, lines[0].split())
    except ValueError as exc:
        raise ParseError(f"bad header line: {lines[0]!r}") from exc
    if len(lines) - 1 != m:
        raise ParseError(f"expected {m} edge lines, got {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        try:
            u, v = map(int, ln.split())
        except ValueError as exc:
            raise ParseError(f"bad edge line: {ln!r}") from exc
        edges.append((u, v))
    return Graph(n, edges)
