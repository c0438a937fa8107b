"""Embedded planarizations: rotation systems over edge chains with dummy
vertices at crossings, face tracing, and Euler-based sphere checks.

Nodes are ('v', vertex) for original vertices and ('x', crossing_id) for
dummies.  A drawing edge (u, v) is a chain of segments oriented u -> v; a
dart is (segment_id, end) where end 0 points along the chain.  Rotations
list outgoing darts in counterclockwise order and faces are traced with
succ(d) = rotation-successor of rev(d) at head(d); a rotation system is a
sphere embedding iff V - E + F = 2 on every connected component.
"""

from __future__ import annotations


def vnode(v):
    return ("v", v)


def xnode(c):
    return ("x", c)


class Emb:
    """Mutable embedded planarization of a combinatorial drawing."""

    def __init__(self):
        self.segs: dict[int, tuple] = {}   # seg id -> (node_a, node_b, edge)
        self.chains: dict[tuple, list[int]] = {}  # edge -> seg ids, u->v
        self.rot: dict[tuple, list[tuple]] = {}   # node -> outgoing darts
        self.xpairs: dict[int, tuple] = {}  # crossing id -> (crossed, crosser)
        self._next_seg = 0
        self._next_x = 0

    # -- dart algebra ---------------------------------------------------

    def tail(self, dart):
        seg, end = dart
        rec = self.segs[seg]
        return rec[0] if end == 0 else rec[1]

    def head(self, dart):
        seg, end = dart
        rec = self.segs[seg]
        return rec[1] if end == 0 else rec[0]

    def edge_of(self, dart):
        return self.segs[dart[0]][2]

    @staticmethod
    def rev(dart):
        return (dart[0], 1 - dart[1])

    def succ(self, dart):
        """Next dart along the face containing `dart`."""
        w = self.head(dart)
        ring = self.rot[w]
        i = ring.index(self.rev(dart))
        return ring[(i + 1) % len(ring)]

    def copy(self) -> "Emb":
        e = Emb.__new__(Emb)
        e.segs = dict(self.segs)
        e.chains = {k: list(v) for k, v in self.chains.items()}
        e.rot = {k: list(v) for k, v in self.rot.items()}
        e.xpairs = dict(self.xpairs)
        e._next_seg = self._next_seg
        e._next_x = self._next_x
        return e

    # -- queries ----------------------------------------------------------

    def add_vertex(self, v):
        node = vnode(v)
        if node not in self.rot:
            self.rot[node] = []
        return node

    def degree(self, node) -> int:
        return len(self.rot[node])

    def crossing_count(self) -> int:
        return len(self.xpairs)

    def all_darts(self):
        for sid in sorted(self.segs):
            yield (sid, 0)
            yield (sid, 1)

    def faces(self):
        """All face cycles (tuples of darts) in deterministic order."""
        seen = set()
        out = []
        for d0 in self.all_darts():
            if d0 in seen:
                continue
            cycle = []
            d = d0
            while True:
                cycle.append(d)
                seen.add(d)
                d = self.succ(d)
                if d == d0:
                    break
            out.append(tuple(cycle))
        return out

    def dart_face_map(self):
        faces = self.faces()
        where = {}
        for i, cyc in enumerate(faces):
            for d in cyc:
                where[d] = i
        return faces, where

    def components(self):
        adj: dict[tuple, list[tuple]] = {n: [] for n in self.rot}
        for a, b, _ in self.segs.values():
            adj[a].append(b)
            adj[b].append(a)
        seen = set()
        comps = []
        for start in sorted(self.rot):
            if start in seen:
                continue
            comp = {start}
            seen.add(start)
            stack = [start]
            while stack:
                for w in adj[stack.pop()]:
                    if w not in comp:
                        comp.add(w)
                        seen.add(w)
                        stack.append(w)
            comps.append(comp)
        return comps

    def euler_ok(self) -> bool:
        """True iff the rotation system is a sphere embedding per component."""
        comps = self.components()
        node_comp = {}
        for i, comp in enumerate(comps):
            for n in comp:
                node_comp[n] = i
        v = [0] * len(comps)
        e = [0] * len(comps)
        f = [0] * len(comps)
        for n in node_comp:
            v[node_comp[n]] += 1
        for a, _, _ in self.segs.values():
            e[node_comp[a]] += 1
        for cyc in self.faces():
            f[node_comp[self.tail(cyc[0])]] += 1
        for i in range(len(comps)):
            if e[i] == 0:
                continue  # an isolated node fills its own sphere
            if v[i] - e[i] + f[i] != 2:
                return False
        return True

    # -- corners ----------------------------------------------------------

    def corner_face_dart(self, node, pos):
        """Dart whose face is the face at rotation gap `pos` of `node`.

        A dart inserted at list position p lands between rot[p-1] and
        rot[p]; the face of that gap is the face containing rot[p].
        """
        ring = self.rot[node]
        return ring[pos % len(ring)] if ring else None

    # -- surgery ----------------------------------------------------------

    def _new_seg(self, a, b, edge):
        sid = self._next_seg
        self._next_seg += 1
        self.segs[sid] = (a, b, edge)
        return sid

    def _split(self, dart, node):
        """Split the segment under `dart` at `node`.

        Returns the dummy's rotation pattern [toward head(dart), None,
        toward tail(dart), None] for a route crossing out of the face of
        `dart`; slot 1 takes the route's forward dart and slot 3 its
        backward dart (faces sit on the right of their darts, so the
        forward dart follows the head-side dart counterclockwise).
        """
        seg, end = dart
        ga, gb, g = self.segs[seg]
        s1 = self._new_seg(ga, node, g)
        s2 = self._new_seg(node, gb, g)
        chain = self.chains[g]
        k = chain.index(seg)
        chain[k : k + 1] = [s1, s2]
        self._replace(ga, (seg, 0), (s1, 0))
        self._replace(gb, (seg, 1), (s2, 1))
        del self.segs[seg]
        to_start = (s1, 1)  # dart from node toward ga
        to_end = (s2, 0)    # dart from node toward gb
        if end == 0:
            return [to_end, None, to_start, None]
        return [to_start, None, to_end, None]

    def _replace(self, node, old, new):
        ring = self.rot[node]
        ring[ring.index(old)] = new

    def insert_edge(self, edge, start_pos, steps, end_pos):
        """Insert drawing edge (u, v) along an explicit route.

        start_pos / end_pos are rotation insertion positions (ignored when
        the endpoint has no edges yet); steps are the darts crossed in
        order, each bounding the face the route occupies just before the
        crossing.  Returns the new crossing ids in route order.
        """
        u, v = edge
        if edge in self.chains:
            raise ValueError(f"edge {edge} already drawn")
        un, vn_ = self.add_vertex(u), self.add_vertex(v)
        new_cids = []
        patterns = []
        stops = [un]
        for dart in steps:
            g = self.edge_of(dart)
            if g == edge:
                raise ValueError("route crosses its own edge")
            cid = self._next_x
            self._next_x += 1
            node = xnode(cid)
            self.rot[node] = []
            patterns.append(self._split(dart, node))
            self.xpairs[cid] = (g, edge)
            new_cids.append(cid)
            stops.append(node)
        stops.append(vn_)
        chain = [self._new_seg(a, b, edge) for a, b in zip(stops, stops[1:])]
        self.chains[edge] = chain
        for i, cid in enumerate(new_cids):
            pat = patterns[i]
            pat[1] = (chain[i + 1], 0)  # forward toward the next stop
            pat[3] = (chain[i], 1)      # back toward the previous stop
            self.rot[xnode(cid)] = pat
        self._insert_end(un, (chain[0], 0), start_pos)
        self._insert_end(vn_, (chain[-1], 1), end_pos)
        return new_cids

    def _insert_end(self, node, dart, pos):
        """Insert at rotation gap `pos`; pos == len(ring) appends, which is
        the same gap as 0 cyclically but keeps insertion-order bookkeeping."""
        ring = self.rot[node]
        if not ring:
            ring.append(dart)
        else:
            ring.insert(pos, dart)

    # -- extraction -------------------------------------------------------

    def sequences(self) -> dict[tuple, tuple[int, ...]]:
        """Per-edge crossing ids in chain (u -> v) order."""
        out = {}
        for edge, chain in self.chains.items():
            cids = []
            for sid in chain[:-1]:
                node = self.segs[sid][1]
                cids.append(node[1])
            out[edge] = tuple(cids)
        return out

    def vertex_rotation(self, v) -> tuple[int, ...]:
        """Neighbor ids of v in rotation order (simple graphs)."""
        out = []
        for d in self.rot[vnode(v)]:
            a, b = self.edge_of(d)
            out.append(b if a == v else a)
        return tuple(out)

    def chain_darts(self, edge, cid, forward=True):
        """The darts of `edge` leaving the dummy of `cid` along/against
        the chain."""
        chain = self.chains[edge]
        node = xnode(cid)
        for i, sid in enumerate(chain):
            if self.segs[sid][0] == node:
                back = (chain[i - 1], 1)
                return (chain[i], 0) if forward else back
        raise KeyError((edge, cid))

    def orientation_bit(self, cid) -> int:
        """0 if the rotation at the dummy reads (e_prev, f_prev, e_next,
        f_next) cyclically for the lexicographically smaller edge e."""
        node = xnode(cid)
        e, f = sorted(self.xpairs[cid])
        ring = self.rot[node]
        e_prev = self._dart_toward_prev(e, node)
        f_prev = self._dart_toward_prev(f, node)
        i = ring.index(e_prev)
        return 0 if ring[(i + 1) % 4] == f_prev else 1

    def _dart_toward_prev(self, edge, node):
        chain = self.chains[edge]
        for i, sid in enumerate(chain):
            if self.segs[sid][0] == node:
                return (chain[i - 1], 1)
        raise KeyError((edge, node))

    def drawing_data(self):
        """(sequences, orientation bits) in one pass over the chains."""
        seqs = {}
        prev_dart = {}
        for edge, chain in self.chains.items():
            cids = []
            for i, sid in enumerate(chain[:-1]):
                node = self.segs[sid][1]
                cids.append(node[1])
                prev_dart[(node, edge)] = (sid, 1)
            seqs[edge] = tuple(cids)
        orients = {}
        for cid, pair in self.xpairs.items():
            e, f = sorted(pair)
            node = xnode(cid)
            ring = self.rot[node]
            e_prev = prev_dart[(node, e)]
            f_prev = prev_dart[(node, f)]
            i = ring.index(e_prev)
            orients[cid] = 0 if ring[(i + 1) % 4] == f_prev else 1
        return seqs, orients

    def validate_structure(self):
        """Internal consistency assertions; used in tests and after surgery."""
        for node, ring in self.rot.items():
            for d in ring:
                assert self.tail(d) == node, (node, d)
            assert len(set(ring)) == len(ring), f"duplicate dart at {node}"
            if node[0] == "x":
                assert len(ring) == 4, f"dummy {node} not degree 4"
                edges = [self.edge_of(d) for d in ring]
                assert edges[0] == edges[2] and edges[1] == edges[3], (
                    f"segments at {node} do not alternate"
                )
                assert edges[0] != edges[1], f"self-crossing at {node}"
        for edge, chain in self.chains.items():
            assert self.segs[chain[0]][0] == vnode(edge[0])
            assert self.segs[chain[-1]][1] == vnode(edge[1])
            for s1, s2 in zip(chain, chain[1:]):
                assert self.segs[s1][1] == self.segs[s2][0]
        darts = set(self.all_darts())
        in_rings = {d for ring in self.rot.values() for d in ring}
        assert darts == in_rings, "rotation rings do not cover all darts"


def build_emb(graph, sequences, rotations, orientations) -> Emb:
    """Assemble an Emb from drawing data.

    `sequences`: edge -> crossing ids in u -> v order; `rotations`: vertex ->
    cyclic neighbor tuple; `orientations`: crossing id -> 0/1 bit as produced
    by Emb.orientation_bit.
    """
    emb = Emb()
    pair_of: dict[int, list] = {}
    for edge, seq in sequences.items():
        for cid in seq:
            pair_of.setdefault(cid, []).append(edge)
    for v in graph.vertices:
        emb.add_vertex(v)
    for cid, edges in sorted(pair_of.items()):
        if len(edges) != 2:
            raise ValueError(f"crossing {cid} not on exactly two edges")
        emb.rot[xnode(cid)] = []
        emb.xpairs[cid] = tuple(sorted(edges))
    emb._next_x = max(pair_of, default=-1) + 1
    for edge in sorted(sequences):
        seq = sequences[edge]
        stops = [vnode(edge[0])] + [xnode(c) for c in seq] + [vnode(edge[1])]
        emb.chains[edge] = [
            emb._new_seg(a, b, edge) for a, b in zip(stops, stops[1:])
        ]
    # vertex rotations: map neighbor order to first-segment darts
    for v, neighbors in rotations.items():
        ring = []
        for w in neighbors:
            edge = (v, w) if v < w else (w, v)
            chain = emb.chains[edge]
            ring.append((chain[0], 0) if edge[0] == v else (chain[-1], 1))
        emb.rot[vnode(v)] = ring
    # dummy rotations from orientation bits
    for cid, (e, f) in emb.xpairs.items():
        e_prev = emb._dart_toward_prev(e, xnode(cid))
        e_next = emb.chain_darts(e, cid, forward=True)
        f_prev = emb._dart_toward_prev(f, xnode(cid))
        f_next = emb.chain_darts(f, cid, forward=True)
        if orientations.get(cid, 0) == 0:
            emb.rot[xnode(cid)] = [e_prev, f_prev, e_next, f_next]
        else:
            emb.rot[xnode(cid)] = [e_prev, f_next, e_next, f_prev]
    return emb
