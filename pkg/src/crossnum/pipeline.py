"""End-to-end solver: enumerate abstract clusterings, minimize each IQP,
select the global optimum, and lift the winner to a drawing of the input."""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import comb

from .drawing import (
    CombinatorialDrawing,
    canonical_cycle,
    structural_key,
    crossing_count,
    drawing_to_text,
    validate_good,
    zee,
)
from .embedding import Emb, vnode
from .enumeration import (
    AbstractClustering,
    RepresentativeSet,
    RepSpec,
    _merge_into,
    clustering_from_emb,
    cyclic_orders,
    enumerate_embeddings,
    enumerate_rep_sets,
    mask_members,
)
from .geometry import convex_position_drawing
from .graphs import CompressedGraph, Graph, expand
from .iqp import IqpInstance, build_iqp, solve_iqp
from .oraclecfg import OracleConfig


class ResourceCapExceeded(Exception):
    """An enumeration cap was hit; the result would not be exact."""


@dataclass(frozen=True)
class PipelineOptions:
    iqp_cap: int = 200_000
    clustering_cap: int = 2_000_000
    rep_set_cap: int = 100_000
    want_drawing: bool = False
    collect_log: bool = False


@dataclass
class ComponentResult:
    cover: tuple  # global cover vertices of this component
    cg: CompressedGraph
    value: int
    winner: AbstractClustering
    weights: tuple
    instance: IqpInstance
    clusterings_seen: int
    rep_set_counts: tuple
    log: tuple = ()


@dataclass
class SolveReport:
    value: int
    components: list
    isolated: int
    options: PipelineOptions
    lifted: CombinatorialDrawing | None = None

    def to_json(self) -> str:
        payload = {
            "crossing_number": str(self.value),
            "isolated_vertices": self.isolated,
            "components": [
                {
                    "cover": list(c.cover),
                    "value": str(c.value),
                    "weights": [str(w) for w in c.weights],
                    "clusterings_seen": c.clusterings_seen,
                    "rep_set_counts": list(c.rep_set_counts),
                    "winner": drawing_to_text(c.winner.drawing),
                    "winner_reps": [
                        [s.vertex, s.mask, list(s.tag)] for s in c.winner.reps
                    ],
                    "log": [
                        [str(a), str(b)] for a, b in c.log
                    ],
                }
                for c in self.components
            ],
        }
        if self.lifted is not None:
            payload["lifted_drawing"] = drawing_to_text(self.lifted)
        return json.dumps(payload, indent=1, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# chord construction


def chord_clustering(cg: CompressedGraph) -> AbstractClustering:
    """Feasible starting clustering: everything in convex position.

    One representative per present neighborhood, carrying the canonical
    (sorted) rotation, drawn with all vertices on a convex curve and edges
    as straight chords.
    """
    masks = [m for m, _ in cg.h if m != 0]
    reps = []
    nxt = cg.k
    for m in masks:
        tag = cyclic_orders(mask_members(m, cg.k))[0]
        reps.append(RepSpec(nxt, m, tag))
        nxt += 1
    rep_set = RepresentativeSet(cg.k, tuple(reps))
    host = rep_set.host_graph(cg.gx_edges)
    drawing = convex_position_drawing(host)
    for spec in reps:
        got = canonical_cycle(drawing.rot_map[spec.vertex])
        assert got == canonical_cycle(spec.tag), "convex rotation mismatch"
    r = sum(
        1
        for e, f in drawing.crossing_pairs.values()
        if max(e) < cg.k and max(f) < cg.k
    )
    return AbstractClustering(cg.k, tuple(reps), drawing, r)


def initial_budget(cg: CompressedGraph) -> int:
    """Unweighted crossing count of the canonical chord clustering."""
    if cg.k == 0 or (not cg.gx_edges and not any(m for m, _ in cg.h)):
        return 0
    return len(chord_clustering(cg).drawing.crossing_pairs)


# ---------------------------------------------------------------------------
# component decomposition


def _component_split(cg: CompressedGraph):
    """Split the compressed graph along connectivity; isolated count apart."""
    parent = list(range(cg.k))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        parent[find(i)] = find(j)

    for u, v in cg.gx_edges:
        union(u, v)
    isolated = 0
    for mask, count in cg.h:
        if mask == 0:
            isolated += count
            continue
        ms = mask_members(mask, cg.k)
        for x in ms[1:]:
            union(ms[0], x)
    comps: dict[int, list[int]] = {}
    for i in range(cg.k):
        comps.setdefault(find(i), []).append(i)
    out = []
    for root in sorted(comps, key=lambda r: min(comps[r])):
        members = sorted(comps[root])
        index = {v: i for i, v in enumerate(members)}
        mset = set(members)
        gx = [
            (index[u], index[v])
            for u, v in cg.gx_edges
            if u in mset and v in mset
        ]
        h = {}
        for mask, count in cg.h:
            if mask == 0:
                continue
            ms = mask_members(mask, cg.k)
            if ms[0] in mset:
                h[sum(1 << index[x] for x in ms)] = count
        out.append((tuple(members), CompressedGraph.make(len(members), gx, h)))
    return out, isolated


def _cl_min(rep_set: RepresentativeSet, cg: CompressedGraph) -> int:
    """Least possible forced intra-cluster crossings for this rep set."""
    h = cg.h_map
    by_mask: dict[int, int] = {}
    for spec in rep_set.reps:
        by_mask[spec.mask] = by_mask.get(spec.mask, 0) + 1
    total = 0
    for mask, g in by_mask.items():
        z_val = zee(bin(mask).count("1"))
        if z_val == 0:
            continue
        q, rem = divmod(h[mask], g)
        total += ((g - rem) * comb(q, 2) + rem * comb(q + 1, 2)) * z_val
    return total


def _max_pairs(host: Graph) -> int:
    n = 0
    edges = host.edges
    for i, e in enumerate(edges):
        for f in edges[i + 1 :]:
            if not set(e) & set(f):
                n += 1
    return n


def _solve_component(cg: CompressedGraph, opts: PipelineOptions) -> tuple:
    chord = chord_clustering(cg)
    inst0 = build_iqp(chord, cg)
    sol0 = solve_iqp(inst0, opts.iqp_cap)
    best = {
        "value": sol0.value,
        "key": structural_key(chord.drawing),
        "clustering": chord,
        "weights": sol0.z,
        "instance": inst0,
    }
    log = []
    rep_sets = []
    for i, rs in enumerate(enumerate_rep_sets(cg)):
        if i >= opts.rep_set_cap:
            raise ResourceCapExceeded("representative-set cap exceeded")
        rep_sets.append(rs)
    rep_sets.sort(
        key=lambda rs: (len(rs.reps), [(s.mask, s.tag) for s in rs.reps])
    )
    seen_total = 0
    per_set_counts = []
    for rs in rep_sets:
        host = rs.host_graph(cg.gx_edges)
        clmin = _cl_min(rs, cg)
        maxp = _max_pairs(host)

        def bound(best=best, clmin=clmin, maxp=maxp):
            return min(maxp, best["value"] - 1 - clmin)

        count = 0
        if bound() < 0:
            per_set_counts.append(0)
            continue
        for emb in enumerate_embeddings(
            host, rs.tags_by_vertex(), bound_fn=bound
        ):
            count += 1
            seen_total += 1
            if seen_total > opts.clustering_cap:
                raise ResourceCapExceeded("clustering enumeration cap exceeded")
            c = clustering_from_emb(cg, rs, emb)
            inst = build_iqp(c, cg)
            sol = solve_iqp(inst, opts.iqp_cap)
            if opts.collect_log:
                log.append((sol.f, sol.value))
            if sol.value > best["value"]:
                continue
            key = structural_key(c.drawing)
            if sol.value < best["value"] or repr(key) < repr(best["key"]):
                best.update(
                    value=sol.value,
                    key=key,
                    clustering=c,
                    weights=sol.z,
                    instance=inst,
                )
        per_set_counts.append(count)
    return best, seen_total, tuple(per_set_counts), tuple(log)


def crossing_number(cg: CompressedGraph, opts: PipelineOptions | None = None) -> SolveReport:
    """Exact crossing number of the compressed input graph."""
    opts = opts or PipelineOptions()
    comps, isolated = _component_split(cg)
    results = []
    total = 0
    for cover, sub in comps:
        best, seen, per_set, log = _solve_component(sub, opts)
        total += best["value"]
        results.append(
            ComponentResult(
                cover,
                sub,
                best["value"],
                best["clustering"],
                best["weights"],
                best["instance"],
                seen,
                per_set,
                log,
            )
        )
    report = SolveReport(total, results, isolated, opts)
    if opts.want_drawing:
        report.lifted = assemble_lifted(cg, report)
    return report


# ---------------------------------------------------------------------------
# lifting: stacking weighted copies of each representative


def _away_dart(emb: Emb, edge, v):
    chain = emb.chains[edge]
    return (chain[-1], 1) if edge[1] == v else (chain[0], 0)


def duplicate_star(emb: Emb, v: int, v_new: int):
    """Add a parallel copy of v's star at a fresh vertex.

    The copy realizes the two-sided stacking pattern: the new star crosses
    v's star exactly Z(deg v) times (left half of the rotation bundled
    against the right half) and repeats every crossing currently carried by
    v's edges, so each existing star copy is crossed just as v was.  The
    sphere property is asserted after each copy at desk scale and by the
    caller's validation at stacking scale.
    """
    ring = emb.rot[vnode(v)]
    m = len(ring)
    edges = [emb.edge_of(d) for d in ring]
    if m:
        start = min(range(m), key=lambda i: edges[i])
        edges = edges[start:] + edges[:start]
    a = m // 2
    snapshot = {
        e: [emb.segs[sid][0] for sid in emb.chains[e][1:]] for e in edges
    }
    emb.add_vertex(v_new)
    hub_cnt = {e: 0 for e in edges}
    for q0, e_q in enumerate(edges):
        q = q0 + 1
        left = q <= a
        y_q = e_q[0] if e_q[1] == v else e_q[1]
        steps_out = []
        if left:
            # cross each earlier-left edge's innermost segment from above:
            # the crossed dart points away from v (its face is the corner
            # sector the copy's edge occupies)
            for p0 in range(q - 1):
                e_p = edges[p0]
                chain = emb.chains[e_p]
                if e_p[1] == v:
                    steps_out.append((chain[-1], 1))
                else:
                    steps_out.append((chain[0], 0))
        else:
            # cross the farther-right edges just beyond their earlier hub
            # dummies, via the dart pointing back toward v
            for p0 in range(m - 1, q - 1, -1):
                e_p = edges[p0]
                chain = emb.chains[e_p]
                if e_p[1] == v:
                    sid = chain[len(chain) - 1 - hub_cnt[e_p]]
                    steps_out.append((sid, 0))
                else:
                    sid = chain[hub_cnt[e_p]]
                    steps_out.append((sid, 1))
                hub_cnt[e_p] += 1
        # corridor along e_q, outward from v over the pre-duplication dummies
        # (e_q's own chain never changes during its corridor, so index once)
        interior = snapshot[e_q]
        outward = reversed(interior) if e_q[1] == v else iter(interior)
        chain = emb.chains[e_q]
        at = {emb.segs[sid][0]: j for j, sid in enumerate(chain)}
        for node in outward:
            i = at[node]
            if e_q[1] == v:
                beta = (chain[i - 1], 1)
            else:
                beta = (chain[i], 0)
            ringx = emb.rot[node]
            j = ringx.index(beta)
            # left copies run on the walk's right (clockwise of beta), right
            # copies on its left; cross the partner's half on that side
            if left:
                target = ringx[(j - 1) % 4]
            else:
                target = Emb.rev(ringx[(j + 1) % 4])
            assert emb.edge_of(target) != e_q
            steps_out.append(target)
        ring_y = emb.rot[vnode(y_q)]
        t_dart = _away_dart(emb, e_q, y_q)
        idx = ring_y.index(t_dart)
        start_pos = idx + 1 if left else idx
        new_edge = (y_q, v_new) if y_q < v_new else (v_new, y_q)
        if new_edge[0] == y_q:
            steps = [Emb.rev(d) for d in reversed(steps_out)]
            emb.insert_edge(
                new_edge, start_pos, steps, len(emb.rot[vnode(v_new)])
            )
        else:
            emb.insert_edge(
                new_edge, len(emb.rot[vnode(v_new)]), list(steps_out), start_pos
            )
    # per-copy sphere validation is cheap at desk scale; at stacking scale
    # the final lift validation covers it
    if emb.crossing_count() < 2000:
        assert emb.euler_ok(), "stacked copy broke the sphere embedding"


def remove_edge(emb: Emb, edge):
    while len(emb.chains[edge]) > 1:
        node = emb.segs[emb.chains[edge][0]][1]
        _unsplit(emb, node, edge)
    chain = emb.chains.pop(edge)
    a, b, _ = emb.segs[chain[0]]
    emb.rot[a].remove((chain[0], 0))
    emb.rot[b].remove((chain[0], 1))
    del emb.segs[chain[0]]


def _unsplit(emb: Emb, node, removed_edge):
    """Delete a dummy on `removed_edge`, merging the partner's segments."""
    cid = node[1]
    ring = emb.rot[node]
    partner_darts = [d for d in ring if emb.edge_of(d) != removed_edge]
    (s_out_dart,) = [d for d in partner_darts if d[1] == 0]
    (s_in_dart,) = [d for d in partner_darts if d[1] == 1]
    s_out = s_out_dart[0]  # (node, b)
    s_in = s_in_dart[0]  # (a, node)
    a = emb.segs[s_in][0]
    b = emb.segs[s_out][1]
    g = emb.segs[s_in][2]
    merged = emb._new_seg(a, b, g)
    chain = emb.chains[g]
    i = chain.index(s_in)
    assert chain[i + 1] == s_out
    chain[i : i + 2] = [merged]
    emb._replace(a, (s_in, 0), (merged, 0))
    emb._replace(b, (s_out, 1), (merged, 1))
    # splice the dummy out of the removed edge's chain
    rchain = emb.chains[removed_edge]
    j = next(jj for jj, sid in enumerate(rchain) if emb.segs[sid][1] == node)
    ra = emb.segs[rchain[j]][0]
    rb = emb.segs[rchain[j + 1]][1]
    rmerged = emb._new_seg(ra, rb, removed_edge)
    emb._replace(ra, (rchain[j], 0), (rmerged, 0))
    emb._replace(rb, (rchain[j + 1], 1), (rmerged, 1))
    del emb.segs[rchain[j]]
    del emb.segs[rchain[j + 1]]
    del emb.segs[s_in]
    del emb.segs[s_out]
    rchain[j : j + 2] = [rmerged]
    del emb.rot[node]
    del emb.xpairs[cid]


def _relabel(emb: Emb, mapping: dict) -> Emb:
    out = Emb.__new__(Emb)

    def me(edge):
        u, v = mapping[edge[0]], mapping[edge[1]]
        assert u < v, "relabeling must not flip edge orientation"
        return (u, v)

    def mn(node):
        return ("v", mapping[node[1]]) if node[0] == "v" else node

    out.segs = {
        sid: (mn(a), mn(b), me(e)) for sid, (a, b, e) in emb.segs.items()
    }
    out.chains = {me(e): list(chain) for e, chain in emb.chains.items()}
    out.rot = {mn(n): list(ring) for n, ring in emb.rot.items()}
    out.xpairs = {c: (me(e), me(f)) for c, (e, f) in emb.xpairs.items()}
    out._next_seg = emb._next_seg
    out._next_x = emb._next_x
    return out


def lift(c: AbstractClustering, z) -> CombinatorialDrawing:
    """Replace each representative by z parallel stacked copies.

    Copies are labeled k, k+1, ... in representative order; the total
    crossing count equals the instance's true value at z.
    """
    emb = c.drawing.emb()
    temp = max(list(c.drawing.graph.vertices) + [c.k]) + 1
    copies: dict[int, list[int]] = {}
    for i, spec in enumerate(c.reps):
        w = z[i]
        if w == 0:
            for edge in c.star_edges(i):
                remove_edge(emb, edge)
            node = vnode(spec.vertex)
            assert not emb.rot[node]
            del emb.rot[node]
            copies[i] = []
            continue
        copies[i] = [spec.vertex]
        for _ in range(w - 1):
            duplicate_star(emb, spec.vertex, temp)
            copies[i].append(temp)
            temp += 1
    mapping = {x: x for x in range(c.k)}
    nxt = c.k
    for i in range(len(c.reps)):
        for old in copies[i]:
            mapping[old] = nxt
            nxt += 1
    emb = _relabel(emb, mapping)
    vertices = tuple(range(nxt))
    edges = tuple(sorted(emb.chains))
    graph = Graph(vertices, edges)
    seqs, orients = emb.drawing_data()
    rots = {u: emb.vertex_rotation(u) for u in vertices if emb.rot.get(vnode(u))}
    return CombinatorialDrawing.make(graph, seqs, rots, None, orients)


def assemble_lifted(cg: CompressedGraph, report: SolveReport) -> CombinatorialDrawing:
    """Lift every component winner and lay the pieces side by side, with
    the isolated vertices reattached as their own trivial components."""
    comps, isolated = _component_split(cg)
    merged = Emb()
    # global ids: cover 0..k-1, then copies per component, isolated last
    nxt = cg.k
    for (cover, sub), res in zip(comps, report.components):
        lifted = lift(res.winner, res.weights)
        emb = lifted.emb()
        mapping = {}
        for i, x in enumerate(cover):
            mapping[i] = x
        for u in lifted.graph.vertices:
            if u >= sub.k:
                mapping[u] = nxt
                nxt += 1
        emb = _relabel(emb, mapping)
        _merge_into(merged, emb)
    iso_ids = list(range(nxt, nxt + isolated))
    for u in iso_ids:
        merged.add_vertex(u)
    vertices = tuple(sorted(
        [n[1] for n in merged.rot if n[0] == "v"]
    ))
    edges = tuple(sorted(merged.chains))
    graph = Graph(vertices, edges)
    seqs, orients = merged.drawing_data()
    rots = {
        u: merged.vertex_rotation(u)
        for u in vertices
        if merged.rot.get(vnode(u))
    }
    return CombinatorialDrawing.make(graph, seqs, rots, None, orients)


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    detail: str = ""


def verify(report: SolveReport, cg: CompressedGraph,
           oracle_gate: OracleConfig | None = None) -> VerifyResult:
    """Re-validate the lifted winner and recount; compare to the brute
    oracle when the expanded graph is small enough."""
    lifted = report.lifted or assemble_lifted(cg, report)
    rep = validate_good(lifted)
    if not rep.ok:
        return VerifyResult(False, f"lifted drawing invalid: {rep.violation}")
    recount = crossing_count(lifted)
    if recount != report.value:
        return VerifyResult(
            False,
            f"lift count != reported value ({recount} != {report.value})",
        )
    gate = oracle_gate or OracleConfig()
    g = None
    if cg.total_vertices() <= gate.max_vertices:
        g = expand(cg)
        if len(g.edges) > gate.max_edges:
            g = None
    if g is not None:
        from .oracle import oracle_cr

        ocr = oracle_cr(g, gate)
        if ocr != report.value:
            return VerifyResult(
                False, f"oracle disagrees ({ocr} != {report.value})"
            )
        return VerifyResult(True, f"pipeline={report.value} oracle={ocr}")
    return VerifyResult(True, f"pipeline={report.value} oracle=skipped")
