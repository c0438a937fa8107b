"""Enumeration of abstract topological clusterings.

A representative set picks, for every present neighborhood, a nonempty set
of cyclic orders; the router then enumerates all good drawings of the cover
subgraph plus one star per chosen (neighborhood, rotation), up to a crossing
budget, with each representative's rotation pinned to its tag.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .drawing import CombinatorialDrawing, canonical_cycle, structural_key
from .embedding import Emb, vnode, xnode
from .graphs import CompressedGraph, Graph


def rotations(j: int) -> int:
    """Distinct cyclic orders of j labeled elements."""
    if j <= 2:
        return 1
    out = 1
    for i in range(2, j):
        out *= i
    return out


def cyclic_orders(members: tuple) -> list[tuple]:
    """All cyclic orders of `members`, least element first, sorted."""
    members = tuple(sorted(members))
    if len(members) <= 2:
        return [members]
    first, rest = members[0], members[1:]
    return sorted((first,) + p for p in itertools.permutations(rest))


def mask_members(mask: int, k: int) -> tuple:
    return tuple(i for i in range(k) if mask >> i & 1)


@dataclass(frozen=True)
class RepSpec:
    vertex: int
    mask: int
    tag: tuple  # cyclic order of the neighborhood, canonical rotation


@dataclass(frozen=True)
class RepresentativeSet:
    """One rotation-tagged representative per chosen (neighborhood, order)."""

    k: int
    reps: tuple  # RepSpec tuple, sorted by (mask, tag)

    def host_graph(self, gx_edges) -> Graph:
        edges = list(gx_edges)
        for spec in self.reps:
            edges.extend((x, spec.vertex) for x in mask_members(spec.mask, self.k))
        return Graph.from_edges(edges, extra_vertices=tuple(range(self.k)))

    def tags_by_vertex(self) -> dict[int, tuple]:
        return {s.vertex: s.tag for s in self.reps}


def rep_cap(mask: int, k: int, count: int) -> int:
    """min(h(Y), #rotations): extra zero-weight representatives never help."""
    return min(count, rotations(bin(mask).count("1")))


def enumerate_rep_sets(cg: CompressedGraph):
    """All representative sets, lexicographic in (mask, rotation index set).

    Isolated vertices (the empty neighborhood) never enter a clustering and
    are skipped here; the pipeline reattaches them at drawing-emission time.
    """
    masks = [m for m, _ in cg.h if m != 0]
    h = cg.h_map
    per_mask_choices = []
    for m in masks:
        orders = cyclic_orders(mask_members(m, cg.k))
        cap = rep_cap(m, cg.k, h[m])
        subsets = []
        for size in range(1, cap + 1):
            subsets.extend(itertools.combinations(range(len(orders)), size))
        subsets.sort()
        per_mask_choices.append([(m, [orders[i] for i in sub]) for sub in subsets])
    for combo in itertools.product(*per_mask_choices):
        reps = []
        nxt = cg.k
        for m, tags in combo:
            for tag in tags:
                reps.append(RepSpec(nxt, m, tag))
                nxt += 1
        yield RepresentativeSet(cg.k, tuple(reps))


# ---------------------------------------------------------------------------
# the router: enumerate good drawings by face-guided edge insertion


def _connected_edge_order(graph: Graph) -> list[tuple]:
    """Edges ordered so every prefix after the first is connected."""
    remaining = set(graph.edges)
    placed: set[int] = set()
    order = []
    while remaining:
        touching = sorted(
            e for e in remaining if e[0] in placed or e[1] in placed
        )
        e = touching[0] if touching else min(remaining)
        order.append(e)
        remaining.remove(e)
        placed.update(e)
    return order


def _cyclic_subsequence(partial: tuple, tag: tuple) -> bool:
    """True iff `partial` is a cyclic subsequence of cyclic `tag`."""
    n = len(tag)
    if len(partial) <= 2:
        return set(partial) <= set(tag)
    for off in range(n):
        rot = tag[off:] + tag[:off]
        it = iter(rot)
        if all(x in it for x in partial):
            return True
    return False


class _Router:
    """DFS over face-guided insertions of the host graph's edges.

    Each edge is routed incrementally: every crossing is applied to a copy
    of the arrangement before the route continues, so the reachable corners
    always reflect the partially drawn edge (routes through a face with
    repeated boundary pieces would otherwise claim impossible chords).
    """

    def __init__(self, graph, fixed_rotations, bound_fn):
        self.graph = graph
        self.fixed = fixed_rotations or {}
        self.bound_fn = bound_fn
        self.order = _connected_edge_order(graph)

    def run(self):
        emb = Emb()
        for v in self.graph.vertices:
            emb.add_vertex(v)
        yield from self._place(emb, 0)

    def _place(self, emb, idx):
        if idx == len(self.order):
            if self._tags_ok(emb, final=True):
                yield emb
            return
        edge = self.order[idx]
        budget_left = self.bound_fn() - emb.crossing_count()
        if budget_left < 0:
            return
        for child in self._route(emb, edge, budget_left):
            if not self._tags_ok(child, final=False):
                continue
            yield from self._place(child, idx + 1)

    def _tags_ok(self, emb, final):
        for v, tag in self.fixed.items():
            if vnode(v) not in emb.rot:
                if final:
                    return False
                continue
            got = emb.vertex_rotation(v)
            if final and len(got) == len(tag):
                if canonical_cycle(got) != canonical_cycle(tag):
                    return False
            elif not _cyclic_subsequence(got, tag):
                return False
        return True

    # -- incremental routing ------------------------------------------------

    def _route(self, emb, edge, budget_left):
        """Yield copies of `emb` with `edge` drawn, one per distinct route."""
        u, v = edge
        blocked = {edge} | {
            f for f in self.graph.edges if set(f) & set(edge) and f != edge
        }
        ring_u = emb.rot[vnode(u)]
        faces, where = emb.dart_face_map()
        if ring_u:
            starts = [(("v_pos", pos), where[ring_u[pos]])
                      for pos in range(len(ring_u))]
        elif faces:
            starts = [(("v_pos", 0), fid) for fid in range(len(faces))]
        else:
            starts = [(("v_pos", 0), None)]
        for attach, fid in starts:
            yield from self._grow(
                emb, edge, vnode(u), attach, fid, frozenset(), budget_left
            )

    def _grow(self, emb, edge, prev_node, prev_attach, fid, crossed, budget):
        """Extend the partial route living at (prev_node, prev_attach)."""
        vn_ = vnode(edge[1])
        if fid is None:
            # empty arrangement: only the plain segment is possible
            child = emb.copy()
            self._finish(child, edge, prev_node, prev_attach, 0)
            yield child
            return
        faces, where = emb.dart_face_map()
        cycle = faces[fid]
        ring_v = emb.rot[vn_]
        if not ring_v:
            child = emb.copy()
            self._finish(child, edge, prev_node, prev_attach, 0)
            yield child
        else:
            for pos in range(len(ring_v)):
                if where[ring_v[pos]] == fid:
                    child = emb.copy()
                    self._finish(child, edge, prev_node, prev_attach, pos)
                    yield child
        if budget <= len(crossed):
            return
        for dart in cycle:
            g = emb.edge_of(dart)
            if g in crossed or g == edge or (set(g) & set(edge)):
                continue
            child = emb.copy()
            x_node, next_fid = self._cross(
                child, edge, prev_node, prev_attach, dart
            )
            yield from self._grow(
                child, edge, x_node, ("x_gap",), next_fid,
                crossed | {g}, budget,
            )

    def _attach_back(self, emb, node, attach, dart):
        """Wire the back-dart of a new route segment at its tail."""
        ring = emb.rot[node]
        if attach == ("x_gap",):
            ring.insert(1, dart)  # the reserved forward slot of a dummy
        elif not ring:
            ring.append(dart)
        else:
            ring.insert(attach[1], dart)

    def _cross(self, emb, edge, prev_node, prev_attach, dart):
        """Split under `dart` and draw the route piece up to the new dummy.

        The dummy's ring is left with the forward slot open (list gap 1);
        the next piece fills it via the ("x_gap",) attach.
        """
        g = emb.edge_of(dart)
        cid = emb._next_x
        emb._next_x += 1
        x = xnode(cid)
        emb.rot[x] = []
        pat = emb._split(dart, x)  # [to_head, None, to_tail, None]
        emb.xpairs[cid] = (g, edge)
        seg = emb._new_seg(prev_node, x, edge)
        emb.chains.setdefault(edge, []).append(seg)
        self._attach_back(emb, prev_node, prev_attach, (seg, 0))
        ring = [pat[0], pat[2], (seg, 1)]
        emb.rot[x] = ring
        # continuation face: the open slot sits between pat[0] and pat[2]
        _, where = emb.dart_face_map()
        return x, where[ring[1]]

    def _finish(self, emb, edge, prev_node, prev_attach, v_pos):
        v = edge[1]
        seg = emb._new_seg(prev_node, vnode(v), edge)
        emb.chains.setdefault(edge, []).append(seg)
        self._attach_back(emb, prev_node, prev_attach, (seg, 0))
        ring_v = emb.rot[vnode(v)]
        if not ring_v:
            ring_v.append((seg, 1))
        else:
            ring_v.insert(v_pos, (seg, 1))


def enumerate_embeddings(graph, fixed_rotations=None, bound=0, bound_fn=None):
    """All sphere drawings of `graph` with at most `bound` crossings.

    `fixed_rotations` pins cyclic neighbor orders at chosen vertices;
    `bound_fn` makes the crossing budget dynamic (branch-and-bound).
    Yields Emb objects in deterministic DFS order; every emitted structure
    is distinct, but callers wanting equivalence-level uniqueness still
    deduplicate by canonical key.
    """
    fn = bound_fn if bound_fn is not None else (lambda: bound)
    comps = graph.components()
    if len(comps) <= 1:
        yield from _Router(graph, fixed_rotations, fn).run()
        return
    # disconnected hosts: per-component streams, no inter-component crossings
    comps = sorted(comps, key=min)
    streams = []
    for comp in comps:
        sub = graph.induced(comp)
        fixed = {
            v: t for v, t in (fixed_rotations or {}).items() if v in comp
        }
        streams.append(list(_Router(sub, fixed, fn).run()))
    for combo in itertools.product(*streams):
        merged = Emb()
        for emb in combo:
            _merge_into(merged, emb)
        if merged.crossing_count() <= fn():
            yield merged


def _merge_into(target: Emb, other: Emb):
    seg_map = {}
    for sid in sorted(other.segs):
        a, b, e = other.segs[sid]
        seg_map[sid] = target._new_seg(None, None, None)  # placeholder ids
    x_map = {}
    for cid in sorted(other.xpairs):
        x_map[cid] = target._next_x
        target._next_x += 1

    def node_map(n):
        return n if n[0] == "v" else ("x", x_map[n[1]])

    for sid, (a, b, e) in other.segs.items():
        target.segs[seg_map[sid]] = (node_map(a), node_map(b), e)
    for e, chain in other.chains.items():
        target.chains[e] = [seg_map[s] for s in chain]
    for n, ring in other.rot.items():
        target.rot[node_map(n)] = [(seg_map[s], d) for s, d in ring]
    for cid, pair in other.xpairs.items():
        target.xpairs[x_map[cid]] = pair


# ---------------------------------------------------------------------------
# abstract clusterings


@dataclass(frozen=True)
class AbstractClustering:
    """A good drawing of G_X plus tagged representatives; the IQP skeleton."""

    k: int
    reps: tuple  # RepSpec tuple in group order
    drawing: CombinatorialDrawing
    r: int  # crossings of the subdrawing induced by the cover

    @property
    def groups(self) -> tuple:
        """(mask, rep index range) per neighborhood, in mask order."""
        out = []
        for i, spec in enumerate(self.reps):
            if out and out[-1][0] == spec.mask:
                out[-1][1].append(i)
            else:
                out.append((spec.mask, [i]))
        return tuple((m, tuple(ix)) for m, ix in out)

    def star_edges(self, rep_index: int) -> tuple:
        spec = self.reps[rep_index]
        return tuple(
            (x, spec.vertex) for x in mask_members(spec.mask, self.k)
        )


def _cover_crossings(drawing: CombinatorialDrawing, k: int) -> int:
    n = 0
    for e, f in drawing.crossing_pairs.values():
        if max(e) < k and max(f) < k:
            n += 1
    return n


def clustering_from_emb(cg, rep_set, emb) -> AbstractClustering:
    host = rep_set.host_graph(cg.gx_edges)
    seqs, orients = emb.drawing_data()
    rots = {v: emb.vertex_rotation(v) for v in host.vertices}
    d = CombinatorialDrawing.make(host, seqs, rots, None, orients)
    return AbstractClustering(
        cg.k, rep_set.reps, d, _cover_crossings(d, cg.k)
    )


def enumerate_clusterings(cg: CompressedGraph, budget: int):
    """Stream all abstract topological clusterings within the budget.

    Representative sets in lexicographic order; within a set, drawings are
    deduplicated up to combinatorial equivalence and sorted by canonical
    form, so the stream order is deterministic.
    """
    for rep_set in enumerate_rep_sets(cg):
        found = []
        seen = set()
        host = rep_set.host_graph(cg.gx_edges)
        for emb in enumerate_embeddings(
            host, rep_set.tags_by_vertex(), bound=budget
        ):
            c = clustering_from_emb(cg, rep_set, emb)
            key = structural_key(c.drawing)
            if key in seen:
                continue
            seen.add(key)
            found.append((key, c))
        found.sort(key=lambda t: repr(t[0]))
        for _, c in found:
            yield c
