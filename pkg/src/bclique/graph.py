"""Simple undirected graphs on bitset adjacency, plus the structural predicates
and B-restricted extremal parameters used throughout the package.

Vertices are 0-based indices internally. Each graph also carries external
labels (1-based by default) that survive induced-subgraph construction, so
reports can always name vertices the way the input file did.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Optional

MAX_VERTICES = 64

VertexSet = frozenset  # frozenset[int] of 0-based vertex indices


class GraphError(ValueError):
    pass


class GraphFormatError(GraphError):
    """Malformed graph or homomorphism file; ``lineno`` is 1-based."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]
    labels: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if self.n > MAX_VERTICES:
            raise GraphError(f"graph has {self.n} vertices; limit is {MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise GraphError("adjacency length does not match n")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(1, self.n + 1)))
        if len(self.labels) != self.n or len(set(self.labels)) != self.n:
            raise GraphError("vertex labels must be distinct, one per vertex")
        full = (1 << self.n) - 1
        for v, nb in enumerate(self.adj):
            if nb & ~full:
                raise GraphError(f"vertex index out of range in adjacency of {v}")
            if nb >> v & 1:
                raise GraphError(f"self-loop at vertex {self.labels[v]}")
            for u in bits(nb):
                if not self.adj[u] >> v & 1:
                    raise GraphError("adjacency is not symmetric")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], labels=()) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj), tuple(labels))

    @property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def neighbors(self, v: int) -> VertexSet:
        return frozenset(bits(self.adj[v]))

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u]) if u < v]

    @property
    def num_edges(self) -> int:
        return sum(popcount(a) for a in self.adj) // 2

    def index_of(self, label: int) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise GraphError(f"no vertex labelled {label}") from None

    def label_set(self, s: Iterable[int]) -> list[int]:
        return sorted(self.labels[v] for v in s)

    def is_clique_mask(self, mask: int) -> bool:
        for v in bits(mask):
            if (mask & ~(1 << v)) & ~self.adj[v]:
                return False
        return True

    def without_vertex(self, v: int) -> tuple["Graph", list[int]]:
        return induced_subgraph(self, frozenset(range(self.n)) - {v})

    def without_edge(self, u: int, v: int) -> "Graph":
        if not self.has_edge(u, v):
            raise GraphError(f"no edge {self.labels[u]}-{self.labels[v]}")
        adj = list(self.adj)
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
        return Graph(self.n, tuple(adj), self.labels)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "labels": list(self.labels),
            "edges": [[self.labels[u], self.labels[v]] for u, v in self.edges()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Graph":
        labels = list(data["labels"])
        pos = {lab: i for i, lab in enumerate(labels)}
        return cls.from_edges(data["n"], [(pos[a], pos[b]) for a, b in data["edges"]], labels)


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def circulant_graph(n: int, jumps: Iterable[int]) -> Graph:
    edges = {tuple(sorted((i, (i + j) % n))) for i in range(n) for j in jumps}
    return Graph.from_edges(n, [e for e in edges if e[0] != e[1]])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


@dataclass(frozen=True)
class GraphFile:
    graph: Graph
    B: VertexSet
    weights: Optional[dict[int, int]] = None


def parse_graph(text: str) -> GraphFile:
    """Parse the line-oriented graph format (``n``, ``e``, ``b``, ``w`` lines)."""
    n = None
    edges: set[tuple[int, int]] = set()
    B: Optional[frozenset] = None
    weights: dict[int, int] = {}
    w_line: dict[int, int] = {}

    def vertex(tok: str, lineno: int) -> int:
        try:
            v = int(tok)
        except ValueError:
            raise GraphFormatError(lineno, f"vertex {tok!r} is not an integer") from None
        if not 1 <= v <= n:
            raise GraphFormatError(lineno, f"vertex {v} out of range 1..{n}")
        return v - 1

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tag, *args = line.split()
        if n is None:
            if tag != "n":
                raise GraphFormatError(lineno, "first line must be 'n <count>'")
            if len(args) != 1 or not args[0].isdigit():
                raise GraphFormatError(lineno, "expected 'n <count>'")
            n = int(args[0])
            if n == 0:
                raise GraphFormatError(lineno, "empty graph (n = 0) is not supported")
            if n > MAX_VERTICES:
                raise GraphFormatError(lineno, f"n = {n} exceeds the limit of {MAX_VERTICES}")
            continue
        if tag == "n":
            raise GraphFormatError(lineno, "duplicate 'n' line")
        elif tag == "e":
            if len(args) != 2:
                raise GraphFormatError(lineno, "expected 'e <u> <v>'")
            u, v = vertex(args[0], lineno), vertex(args[1], lineno)
            if u == v:
                raise GraphFormatError(lineno, f"self-loop at vertex {u + 1}")
            key = (min(u, v), max(u, v))
            if key in edges:
                raise GraphFormatError(lineno, f"duplicate edge {u + 1}-{v + 1}")
            edges.add(key)
        elif tag == "b":
            if B is not None:
                raise GraphFormatError(lineno, "'b' may appear at most once")
            members = [vertex(a, lineno) for a in args]
            if len(set(members)) != len(members):
                raise GraphFormatError(lineno, "repeated vertex in 'b' line")
            B = frozenset(members)
        elif tag == "w":
            if len(args) != 2:
                raise GraphFormatError(lineno, "expected 'w <v> <weight>'")
            v = vertex(args[0], lineno)
            try:
                wt = int(args[1])
            except ValueError:
                raise GraphFormatError(lineno, f"weight {args[1]!r} is not an integer") from None
            if wt < 1:
                raise GraphFormatError(lineno, f"weight must be a positive integer, got {wt}")
            if v in weights:
                raise GraphFormatError(lineno, f"duplicate weight for vertex {v + 1}")
            weights[v] = wt
            w_line[v] = lineno
        else:
            raise GraphFormatError(lineno, f"unknown line type {tag!r}")

    if n is None:
        raise GraphFormatError(1, "missing 'n <count>' line")
    B = B if B is not None else frozenset()
    if weights:
        for v, lineno in w_line.items():
            if v not in B:
                raise GraphFormatError(lineno, f"weight given for vertex {v + 1} not in B")
        missing = sorted(v + 1 for v in B - weights.keys())
        if missing:
            raise GraphFormatError(max(w_line.values()), f"no weight for B vertices {missing}")
    return GraphFile(Graph.from_edges(n, sorted(edges)), B, weights or None)


def format_graph(g: Graph, B: Iterable[int] = (), weights: Optional[dict[int, int]] = None) -> str:
    """Inverse of :func:`parse_graph` for graphs with default labels."""
    lines = [f"n {g.n}"]
    lines += [f"e {u + 1} {v + 1}" for u, v in g.edges()]
    B = sorted(B)
    if B:
        lines.append("b " + " ".join(str(v + 1) for v in B))
    for v, w in sorted((weights or {}).items()):
        lines.append(f"w {v + 1} {w}")
    return "\n".join(lines) + "\n"


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, list[int]]:
    """Return ``(G[S], old_index)`` where ``old_index[i]`` is the original index of new vertex ``i``."""
    old = sorted(s)
    pos = {v: i for i, v in enumerate(old)}
    adj = []
    for v in old:
        adj.append(to_mask(pos[u] for u in bits(g.adj[v]) if u in pos))
    return Graph(len(old), tuple(adj), tuple(g.labels[v] for v in old)), old


def common_neighborhood(g: Graph, s: Iterable[int]) -> VertexSet:
    s = frozenset(s)
    if not s:
        raise GraphError("common neighborhood of the empty set is undefined")
    m = g.all_mask
    for v in s:
        m &= g.adj[v]
    return frozenset(bits(m & ~to_mask(s)))


def is_connected_mask(g: Graph, mask: int) -> bool:
    """Whether the subgraph induced on ``mask`` is connected (empty counts as connected)."""
    if mask == 0:
        return True
    start = mask & -mask
    seen = start
    frontier = start
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= g.adj[v]
        nxt &= mask & ~seen
        seen |= nxt
        frontier = nxt
    return seen == mask


def is_connected(g: Graph) -> bool:
    return is_connected_mask(g, g.all_mask)


@dataclass(frozen=True)
class Peo:
    """A vertex order in which every vertex's earlier neighbours form a clique.

    Construction fails unless the order is verified against ``graph``.
    """

    graph: Graph
    order: tuple[int, ...]

    def __post_init__(self):
        g = self.graph
        if sorted(self.order) != list(range(g.n)):
            raise GraphError("PEO must be a permutation of the vertices")
        seen = 0
        for v in self.order:
            earlier = g.adj[v] & seen
            if not g.is_clique_mask(earlier):
                raise GraphError(
                    f"not a perfect elimination ordering: earlier neighbours of "
                    f"vertex {g.labels[v]} are not a clique"
                )
            seen |= 1 << v

    def earlier_neighbors(self) -> list[tuple[int, int]]:
        """Pairs ``(v_i, mask of N(v_i) among v_1..v_{i-1})`` in order."""
        out, seen = [], 0
        for v in self.order:
            out.append((v, self.graph.adj[v] & seen))
            seen |= 1 << v
        return out


def max_cardinality_search(g: Graph) -> list[int]:
    weight = [0] * g.n
    unvisited = set(range(g.n))
    order = []
    while unvisited:
        v = max(sorted(unvisited), key=lambda u: weight[u])
        unvisited.discard(v)
        order.append(v)
        for u in bits(g.adj[v]):
            if u in unvisited:
                weight[u] += 1
    return order


def is_chordal(g: Graph) -> Optional[Peo]:
    """Return a verified PEO if ``g`` is chordal, else ``None``.

    The visiting order of maximum cardinality search is a PEO exactly when the
    graph is chordal, so a failed verification means the graph is not chordal.
    """
    try:
        return Peo(g, tuple(max_cardinality_search(g)))
    except GraphError:
        return None


def _disconnects(g: Graph, removed: int) -> bool:
    rest = g.all_mask & ~removed
    return popcount(rest) >= 2 and not is_connected_mask(g, rest)


def _local_connectivity(g: Graph, s: int, t: int) -> int:
    # Vertex-disjoint s-t paths by unit-capacity max flow on the split graph:
    # node 2v is v_in, 2v+1 is v_out.
    cap: dict[tuple[int, int], int] = {}
    out: dict[int, list[int]] = {i: [] for i in range(2 * g.n)}

    def arc(a, b, c):
        if (a, b) not in cap:
            out[a].append(b)
            out[b].append(a)
            cap.setdefault((b, a), 0)
        cap[(a, b)] = cap.get((a, b), 0) + c

    big = g.n
    for v in range(g.n):
        arc(2 * v, 2 * v + 1, big if v in (s, t) else 1)
    for u, v in g.edges():
        arc(2 * u + 1, 2 * v, big)
        arc(2 * v + 1, 2 * u, big)
    src, sink = 2 * s + 1, 2 * t
    flow = 0
    while True:
        parent = {src: None}
        queue = deque([src])
        while queue and sink not in parent:
            a = queue.popleft()
            for b in out[a]:
                if b not in parent and cap[(a, b)] > 0:
                    parent[b] = a
                    queue.append(b)
        if sink not in parent:
            return flow
        b = sink
        while parent[b] is not None:
            a = parent[b]
            cap[(a, b)] -= 1
            cap[(b, a)] += 1
            b = a
        flow += 1


def vertex_connectivity(g: Graph) -> int:
    """kappa(G); complete graphs get n - 1 by convention, disconnected graphs 0."""
    n = g.n
    if n <= 1:
        return 0
    if g.num_edges == n * (n - 1) // 2:
        return n - 1
    if not is_connected(g):
        return 0
    if n <= 12:
        for k in range(1, n - 1):
            for sep in combinations(range(n), k):
                if _disconnects(g, to_mask(sep)):
                    return k
        return n - 1
    best = n - 1
    for s in range(n):
        for t in range(s + 1, n):
            if not g.has_edge(s, t):
                best = min(best, _local_connectivity(g, s, t))
    return best


def _max_clique(g: Graph, cand: int) -> int:
    if cand == 0:
        return 0
    best = 0
    while cand:
        if popcount(cand) <= best:
            break
        v = cand.bit_length() - 1
        cand &= ~(1 << v)
        best = max(best, 1 + _max_clique(g, cand & g.adj[v]))
    return best


def clique_number(g: Graph) -> int:
    return _max_clique(g, g.all_mask)


def is_kr_free(g: Graph, r: int) -> bool:
    return clique_number(g) < r


def _max_independent(g: Graph, cand: int) -> int:
    if cand == 0:
        return 0
    v = (cand & -cand).bit_length() - 1
    if g.adj[v] & cand == 0:
        return 1 + _max_independent(g, cand & ~(1 << v))
    return max(
        _max_independent(g, cand & ~(1 << v)),
        1 + _max_independent(g, cand & ~(1 << v) & ~g.adj[v]),
    )


def b_independence(g: Graph, B: Iterable[int]) -> int:
    """Largest independent set contained in B, by exhaustive branching."""
    return _max_independent(g, to_mask(B))


def b_girth(g: Graph, B: Iterable[int]) -> Optional[int]:
    """Girth of G[B], or None if G[B] is a forest."""
    mask = to_mask(B)
    best = None
    for root in bits(mask):
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in bits(g.adj[u] & mask):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    length = dist[u] + dist[w] + 1
                    if best is None or length < best:
                        best = length
    return best


@dataclass(frozen=True)
class ExtremalParams:
    alphaB: int
    gB: Optional[int]


def extremal_params(g: Graph, B: Iterable[int]) -> ExtremalParams:
    B = frozenset(B)
    return ExtremalParams(b_independence(g, B), b_girth(g, B))


def is_triangle_free(g: Graph) -> bool:
    return find_triangle(g) is None


def find_triangle(g: Graph) -> Optional[tuple[int, int, int]]:
    for u, v in g.edges():
        common = g.adj[u] & g.adj[v]
        if common:
            return (u, v, (common & -common).bit_length() - 1)
    return None


def enumerate_r_cliques(g: Graph, r: int) -> Iterator[tuple[int, ...]]:
    def extend(chosen, cand):
        if len(chosen) == r:
            yield tuple(chosen)
            return
        for v in bits(cand):
            yield from extend(chosen + [v], cand & g.adj[v] & ~((1 << (v + 1)) - 1))

    yield from extend([], g.all_mask)


def stability_hypotheses(g: Graph, r: int) -> dict:
    """Audit of the r-connected / K_{r+3}-free / chordal hypotheses."""
    kappa = vertex_connectivity(g)
    omega = clique_number(g)
    peo = is_chordal(g)
    audit = {
        "r": r,
        "connectivity": kappa,
        "clique_number": omega,
        "chordal": peo is not None,
        "peo": [g.labels[v] for v in peo.order] if peo else None,
        "r_connected": kappa >= r,
        "kr3_free": omega < r + 3,
    }
    if g.num_edges == g.n * (g.n - 1) // 2:
        audit["complete_graph_connectivity_convention"] = "kappa(K_n) = n - 1"
    return audit


def check_neighborhood_geometry(g: Graph, r: int):
    from .report import CheckReport, Verdict

    claim = "neighborhood-geometry"
    if r < 1:
        raise GraphError("r must be a positive integer")
    audit = stability_hypotheses(g, r)
    failing = [h for h in ("r_connected", "kr3_free", "chordal") if not audit[h]]

    per_clique = []
    first_bad = None
    for k in enumerate_r_cliques(g, r):
        nb = common_neighborhood(g, k)
        sub, _ = induced_subgraph(g, nb)
        tri = find_triangle(sub)
        status = {
            "clique": g.label_set(k),
            "neighborhood": g.label_set(nb),
            "nonempty": bool(nb),
            "triangle_free": tri is None,
            "chordal": is_chordal(sub) is not None,
        }
        per_clique.append(status)
        if first_bad is None and not (status["nonempty"] and status["triangle_free"] and status["chordal"]):
            first_bad = status

    details = {"hypotheses": audit, "cliques": per_clique}
    if failing:
        notes = [f"hypothesis fails: {h}" for h in failing]
        if first_bad is not None:
            notes.append(f"conclusion also fails for clique {first_bad['clique']}")
        return CheckReport(claim, Verdict.NOT_APPLICABLE, None, notes, details)
    if first_bad is not None:
        witness = {"graph": g.to_json(), "r": r, **first_bad}
        return CheckReport(claim, Verdict.VIOLATED, witness, [], details)
    return CheckReport(claim, Verdict.HOLDS, None, [], details)
