"""Simple graphs, vertex covers, and the compressed (G_X, h) representation."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property


class CoverSizeExceeded(Exception):
    """No vertex cover of the requested size exists."""


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph on integer vertex ids."""

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        vs = tuple(sorted(set(self.vertices)))
        es = []
        vset = set(vs)
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if u not in vset or v not in vset:
                raise ValueError(f"edge ({u},{v}) leaves the vertex set")
            es.append((u, v) if u < v else (v, u))
        es_sorted = tuple(sorted(es))
        for a, b in zip(es_sorted, es_sorted[1:]):
            if a == b:
                raise ValueError(f"repeated edge {a}")
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", es_sorted)

    @staticmethod
    def from_edges(edges, extra_vertices=()) -> "Graph":
        vs = set(extra_vertices)
        for u, v in edges:
            vs.add(u)
            vs.add(v)
        return Graph(tuple(sorted(vs)), tuple(edges))

    @cached_property
    def adjacency(self) -> dict[int, tuple[int, ...]]:
        adj: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return {v: tuple(sorted(ns)) for v, ns in adj.items()}

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighborhood(self, v: int) -> frozenset[int]:
        return frozenset(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self.edge_set

    def induced(self, keep) -> "Graph":
        keep = set(keep)
        return Graph(
            tuple(sorted(keep)),
            tuple(e for e in self.edges if e[0] in keep and e[1] in keep),
        )

    def components(self) -> list[frozenset[int]]:
        seen: set[int] = set()
        comps = []
        for start in self.vertices:
            if start in seen:
                continue
            stack, comp = [start], {start}
            seen.add(start)
            while stack:
                for w in self.adjacency[stack.pop()]:
                    if w not in comp:
                        comp.add(w)
                        seen.add(w)
                        stack.append(w)
            comps.append(frozenset(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1


def complete_bipartite(m: int, n: int) -> Graph:
    """K_{m,n} with the m-side on ids 0..m-1."""
    edges = [(i, m + j) for i in range(m) for j in range(n)]
    return Graph(tuple(range(m + n)), tuple(edges))


def complete_graph(n: int) -> Graph:
    return Graph(tuple(range(n)), tuple(itertools.combinations(range(n), 2)))


# ---------------------------------------------------------------------------
# vertex covers


@dataclass(frozen=True)
class VertexCover:
    cover: frozenset[int]

    @property
    def size(self) -> int:
        return len(self.cover)

    def covers(self, g: Graph) -> bool:
        return all(u in self.cover or v in self.cover for u, v in g.edges)


def _cover_search(edges, chosen, budget, out):
    """Collect all covers of the remaining edges using <= budget extra picks."""
    uncovered = [e for e in edges if e[0] not in chosen and e[1] not in chosen]
    if not uncovered:
        out.append(frozenset(chosen))
        return
    if budget == 0:
        return
    u, v = min(uncovered)
    for pick in (u, v):
        chosen.add(pick)
        _cover_search(uncovered, chosen, budget - 1, out)
        chosen.remove(pick)


def find_vertex_cover(g: Graph, k_max: int) -> VertexCover:
    """Minimum vertex cover via edge branching, capped at size k_max.

    Returns the lexicographically least cover among those of minimum size.
    Raises CoverSizeExceeded when every cover is larger than k_max.
    """
    if k_max < 0:
        raise ValueError("k_max must be nonnegative")
    for k in range(k_max + 1):
        found: list[frozenset[int]] = []
        _cover_search(list(g.edges), set(), k, found)
        exact = [c for c in found if len(c) == k]
        if exact:
            best = min(sorted(c) for c in exact)
            return VertexCover(frozenset(best))
    raise CoverSizeExceeded(f"no vertex cover of size <= {k_max}")


def minimum_cover_size_bruteforce(g: Graph) -> int:
    """Reference oracle: smallest cover by direct subset search."""
    vs = g.vertices
    for k in range(len(vs) + 1):
        for sub in itertools.combinations(vs, k):
            s = set(sub)
            if all(u in s or v in s for u, v in g.edges):
                return k
    return len(vs)


# ---------------------------------------------------------------------------
# compressed representation


@dataclass(frozen=True)
class CompressedGraph:
    """(X, G_X, h): cover size k, induced subgraph on cover indices 0..k-1,
    and counts h mapping neighborhood bitmasks to multiplicities."""

    k: int
    gx_edges: tuple[tuple[int, int], ...]
    h: tuple[tuple[int, int], ...]  # sorted (bitmask, count), count > 0

    def __post_init__(self):
        for u, v in self.gx_edges:
            if not (0 <= u < v < self.k):
                raise ValueError(f"G_X edge ({u},{v}) outside cover range")
        seen = set()
        for mask, count in self.h:
            if mask < 0 or mask >= (1 << self.k):
                raise ValueError(f"h mask {mask} not a subset of the cover")
            if count <= 0:
                raise ValueError("h counts must be positive")
            if mask in seen:
                raise ValueError(f"duplicate h mask {mask}")
            seen.add(mask)
        object.__setattr__(self, "gx_edges", tuple(sorted(self.gx_edges)))
        object.__setattr__(self, "h", tuple(sorted(self.h)))

    @property
    def h_map(self) -> dict[int, int]:
        return dict(self.h)

    def gx_graph(self) -> Graph:
        return Graph(tuple(range(self.k)), self.gx_edges)

    def total_vertices(self) -> int:
        return self.k + sum(c for _, c in self.h)

    @staticmethod
    def make(k, gx_edges, h_map) -> "CompressedGraph":
        items = tuple(sorted((m, c) for m, c in h_map.items() if c))
        return CompressedGraph(k, tuple(gx_edges), items)


def compress(g: Graph, x: VertexCover) -> CompressedGraph:
    """Collapse non-cover vertices into neighborhood-multiplicity counts."""
    for u, v in g.edges:
        if u not in x.cover and v not in x.cover:
            raise ValueError(f"edge ({u},{v}) has no end in the cover")
    order = sorted(x.cover)
    index = {v: i for i, v in enumerate(order)}
    gx = [
        (index[u], index[v])
        for u, v in g.edges
        if u in x.cover and v in x.cover
    ]
    gx = [(a, b) if a < b else (b, a) for a, b in gx]
    h: dict[int, int] = {}
    for v in g.vertices:
        if v in x.cover:
            continue
        mask = 0
        for w in g.adjacency[v]:
            mask |= 1 << index[w]
        h[mask] = h.get(mask, 0) + 1
    return CompressedGraph.make(len(order), gx, h)


def expand(cg: CompressedGraph) -> Graph:
    """Concrete graph realizing (G_X, h): cover on ids 0..k-1, the rest fresh."""
    edges = list(cg.gx_edges)
    vertices = list(range(cg.k))
    nxt = cg.k
    for mask, count in cg.h:
        members = [i for i in range(cg.k) if mask >> i & 1]
        for _ in range(count):
            vertices.append(nxt)
            edges.extend((i, nxt) for i in members)
            nxt += 1
    return Graph(tuple(vertices), tuple(edges))


# ---------------------------------------------------------------------------
# isomorphism and canonical forms (small graphs only)


def canonical_form(g: Graph) -> tuple:
    """Canonical edge tuple under vertex relabeling.

    Color-refined brute force per connected component; intended for the
    small graphs used in tests.
    """
    comps = g.components()
    if len(comps) > 1:
        parts = sorted(canonical_form(g.induced(c)) for c in comps)
        shift = 0
        edges = []
        for cn, ces in parts:
            edges.extend((u + shift, v + shift) for u, v in ces)
            shift += cn
        return (shift, tuple(sorted(edges)))
    vs = list(g.vertices)
    n = len(vs)
    # iterated color refinement to cut the permutation space
    sig = {v: g.degree(v) for v in vs}
    for _ in range(n):
        nxt = {
            v: (sig[v], tuple(sorted(sig[w] for w in g.adjacency[v])))
            for v in vs
        }
        names = {s: i for i, s in enumerate(sorted(set(nxt.values())))}
        renamed = {v: names[nxt[v]] for v in vs}
        if len(set(renamed.values())) == len(set(sig.values())):
            break
        sig = renamed
    classes: dict = {}
    for v in vs:
        classes.setdefault(sig[v], []).append(v)
    ordered_classes = [sorted(classes[s]) for s in sorted(classes)]
    counts = [len(c) for c in ordered_classes]
    total = 1
    for c in counts:
        total *= _factorial(c)
    if total > 2_000_000:
        raise ValueError("canonical_form limited to small graphs")
    best = None
    slot = 0
    base_positions = []
    for cls in ordered_classes:
        base_positions.append(list(range(slot, slot + len(cls))))
        slot += len(cls)
    for perms in itertools.product(
        *[itertools.permutations(cls) for cls in ordered_classes]
    ):
        label = {}
        for cls_perm, positions in zip(perms, base_positions):
            for v, p in zip(cls_perm, positions):
                label[v] = p
        relabeled = tuple(
            sorted(
                tuple(sorted((label[u], label[v]))) for u, v in g.edges
            )
        )
        key = (n, relabeled)
        if best is None or key < best:
            best = key
    return best


def _factorial(n):
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def isomorphic(g1: Graph, g2: Graph) -> bool:
    if len(g1.vertices) != len(g2.vertices) or len(g1.edges) != len(g2.edges):
        return False
    return canonical_form(g1) == canonical_form(g2)


def automorphisms(g: Graph) -> list[dict[int, int]]:
    """All automorphisms by degree-pruned backtracking (small graphs)."""
    vs = sorted(g.vertices)
    by_degree: dict[int, list[int]] = {}
    for v in vs:
        by_degree.setdefault(g.degree(v), []).append(v)
    out: list[dict[int, int]] = []

    def extend(i, mapping, used):
        if i == len(vs):
            out.append(dict(mapping))
            return
        v = vs[i]
        for w in by_degree[g.degree(v)]:
            if w in used:
                continue
            ok = True
            for u in vs[:i]:
                if g.has_edge(v, u) != g.has_edge(w, mapping[u]):
                    ok = False
                    break
            if ok:
                mapping[v] = w
                used.add(w)
                extend(i + 1, mapping, used)
                used.remove(w)
                del mapping[v]

    extend(0, {}, set())
    return out


# ---------------------------------------------------------------------------
# text formats


def parse_edge_list(text: str) -> Graph:
    """One "u v" pair per line; '#' starts a comment; "v <id>" adds a vertex."""
    edges = []
    extra = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "v" and len(parts) == 2:
            extra.append(int(parts[1]))
            continue
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise ValueError(f"line {lineno}: non-integer vertex id") from exc
        edges.append((u, v))
    return Graph.from_edges(edges, extra)


def format_edge_list(g: Graph) -> str:
    lines = [f"v {v}" for v in g.vertices if not g.adjacency[v]]
    lines += [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def parse_compressed(text: str) -> CompressedGraph:
    """First line "k", then "gx u v" and "h <bitmask> <count>" lines."""
    k = None
    gx = []
    h: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if k is None:
            if len(parts) != 1:
                raise ValueError(f"line {lineno}: expected cover size 'k'")
            k = int(parts[0])
            continue
        if parts[0] == "gx" and len(parts) == 3:
            gx.append((int(parts[1]), int(parts[2])))
        elif parts[0] == "h" and len(parts) == 3:
            mask, count = int(parts[1]), int(parts[2])
            h[mask] = h.get(mask, 0) + count
        else:
            raise ValueError(f"line {lineno}: unrecognized record {raw!r}")
    if k is None:
        raise ValueError("empty compressed graph input")
    return CompressedGraph.make(k, gx, h)


def format_compressed(cg: CompressedGraph) -> str:
    lines = [str(cg.k)]
    lines += [f"gx {u} {v}" for u, v in cg.gx_edges]
    lines += [f"h {mask} {count}" for mask, count in cg.h]
    return "\n".join(lines) + "\n"
