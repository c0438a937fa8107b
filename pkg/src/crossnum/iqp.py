"""Crossing vector / crossing matrix extraction and exact minimization of
f(z) = z^T Q z + 2 p^T z over products of integer simplices."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

from .drawing import zee
from .enumeration import AbstractClustering
from .graphs import CompressedGraph


class IqpCapExceeded(Exception):
    """The configured enumeration / branch-and-bound work cap was hit."""


@dataclass(frozen=True)
class IqpInstance:
    groups: tuple  # (mask, size, target h) per group, in mask order
    q: tuple  # symmetric |I| x |I| matrix, rows as tuples
    p: tuple  # length |I|
    r: int  # crossings inside the cover subdrawing
    diag_z: tuple  # Z(|Y_i|) per index, duplicating the diagonal of q

    @property
    def size(self) -> int:
        return len(self.p)

    def index_groups(self) -> list[tuple]:
        """Per-group index ranges into the flat z vector."""
        out = []
        at = 0
        for _, size, _ in self.groups:
            out.append(tuple(range(at, at + size)))
            at += size
        return out


@dataclass(frozen=True)
class IqpSolution:
    z: tuple
    f: int
    value: int  # r + weighted crossings + forced intra-cluster crossings


def build_iqp(c: AbstractClustering, cg: CompressedGraph) -> IqpInstance:
    """Read p, Q and r off an abstract clustering."""
    k = c.k
    h = cg.h_map
    reps = c.reps
    idx_of = {spec.vertex: i for i, spec in enumerate(reps)}
    n = len(reps)
    qm = [[0] * n for _ in range(n)]
    p = [0] * n
    r = 0
    for e, f in c.drawing.crossing_pairs.values():
        re = max(e) if max(e) >= k else None
        rf = max(f) if max(f) >= k else None
        if re is None and rf is None:
            r += 1
        elif re is None:
            p[idx_of[rf]] += 1
        elif rf is None:
            p[idx_of[re]] += 1
        else:
            a, b = idx_of[re], idx_of[rf]
            qm[a][b] += 1
            qm[b][a] += 1
    diag = []
    for spec in reps:
        d = bin(spec.mask).count("1")
        diag.append(zee(d))
    for i in range(n):
        qm[i][i] = diag[i]
    groups = tuple(
        (mask, len(ix), h[mask]) for mask, ix in c.groups
    )
    assert r == c.r, "cover-crossing count disagrees with the clustering"
    return IqpInstance(
        groups,
        tuple(tuple(row) for row in qm),
        tuple(p),
        r,
        tuple(diag),
    )


def objective(inst: IqpInstance, z) -> int:
    q, p = inst.q, inst.p
    n = inst.size
    total = 0
    for a in range(n):
        za = z[a]
        if za:
            row = q[a]
            total += row[a] * za * za
            for b in range(a + 1, n):
                total += 2 * row[b] * za * z[b]
            total += 2 * p[a] * za
    return total


def true_value(inst: IqpInstance, z) -> int:
    """r + weighted crossings of the clustering + forced cluster crossings.

    Computed directly rather than by inverting f: the two differ by the
    instance constant sum_i Z(|Y_i|) * h(Y_i) (see the objective/true-value
    identity in the tests).
    """
    q, p = inst.q, inst.p
    n = inst.size
    total = inst.r
    for a in range(n):
        za = z[a]
        if not za:
            continue
        total += p[a] * za
        for b in range(a + 1, n):
            total += q[a][b] * za * z[b]
        total += comb(za, 2) * inst.diag_z[a]
    return total


def _compositions(total: int, parts: int):
    """Weak compositions in lexicographic order."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def feasible_points(inst: IqpInstance):
    per_group = [
        list(_compositions(h, size)) for _, size, h in inst.groups
    ]
    for combo in itertools.product(*per_group):
        yield tuple(x for part in combo for x in part)


def _feasible_count(inst: IqpInstance) -> int:
    total = 1
    for _, size, h in inst.groups:
        total *= comb(h + size - 1, size - 1)
    return total


def solve_iqp(inst: IqpInstance, cap: int = 200_000) -> IqpSolution:
    """Exact global minimizer of f, lexicographically least among optima.

    Small feasible sets are enumerated outright; otherwise an interval
    branch-and-bound handles the huge-h instances, with `cap` bounding the
    node budget (IqpCapExceeded on overrun, never a silent approximation).
    """
    if inst.size == 0:
        return IqpSolution((), 0, inst.r)
    if _feasible_count(inst) <= cap:
        best = None
        best_z = None
        for z in feasible_points(inst):
            f = objective(inst, z)
            if best is None or f < best:
                best, best_z = f, z
        return IqpSolution(best_z, best, true_value(inst, best_z))
    f_star, _ = _bb_min(inst, _full_box(inst), cap)
    z = _lex_tighten(inst, f_star, cap)
    return IqpSolution(z, f_star, true_value(inst, z))


def _full_box(inst):
    box = []
    for _, size, h in inst.groups:
        box.extend([(0, h)] * size)
    return box


def _propagate(inst, box):
    """Tighten box bounds against the per-group sum constraints."""
    box = list(box)
    for ix, (_, _, h) in zip(inst.index_groups(), inst.groups):
        lo_sum = sum(box[i][0] for i in ix)
        hi_sum = sum(box[i][1] for i in ix)
        if lo_sum > h or hi_sum < h:
            return None
        for i in ix:
            lo, hi = box[i]
            lo2 = max(lo, h - (hi_sum - hi))
            hi2 = min(hi, h - (lo_sum - lo))
            if lo2 > hi2:
                return None
            box[i] = (lo2, hi2)
    return box


def _lower_bound(inst, box):
    """Termwise interval lower bound; all coefficients are nonnegative."""
    q, p = inst.q, inst.p
    n = inst.size
    total = 0
    for a in range(n):
        lo = box[a][0]
        total += q[a][a] * lo * lo + 2 * p[a] * lo
        for b in range(a + 1, n):
            total += 2 * q[a][b] * lo * box[b][0]
    return total


def _box_sample(inst, box):
    """A feasible point inside the box: greedy fill above the lower corner."""
    z = [lo for lo, _ in box]
    for ix, (_, _, h) in zip(inst.index_groups(), inst.groups):
        need = h - sum(z[i] for i in ix)
        for i in ix:
            room = box[i][1] - z[i]
            take = min(room, need)
            z[i] += take
            need -= take
        if need:
            return None
    return tuple(z)


def _bb_min(inst, box, cap):
    box = _propagate(inst, box)
    if box is None:
        return None, 0
    incumbent = None
    z0 = _box_sample(inst, box)
    if z0 is not None:
        incumbent = objective(inst, z0)
    stack = [box]
    nodes = 0
    while stack:
        nodes += 1
        if nodes > cap:
            raise IqpCapExceeded(f"IQP branch-and-bound exceeded {cap} nodes")
        cur = stack.pop()
        lb = _lower_bound(inst, cur)
        if incumbent is not None and lb >= incumbent:
            continue
        if all(lo == hi for lo, hi in cur):
            val = objective(inst, [lo for lo, _ in cur])
            if incumbent is None or val < incumbent:
                incumbent = val
            continue
        z = _box_sample(inst, cur)
        if z is not None:
            val = objective(inst, z)
            if incumbent is None or val < incumbent:
                incumbent = val
        # split the widest coordinate
        widths = [(hi - lo, i) for i, (lo, hi) in enumerate(cur)]
        w, i = max(widths)
        lo, hi = cur[i]
        mid = (lo + hi) // 2
        left = list(cur)
        left[i] = (lo, mid)
        right = list(cur)
        right[i] = (mid + 1, hi)
        for child in (left, right):
            child = _propagate(inst, child)
            if child is None:
                continue
            if incumbent is not None and _lower_bound(inst, child) > incumbent:
                continue
            stack.append(child)
    return incumbent, nodes


def _min_with_coord_range(inst, fixed, i, lo_hi, cap):
    box = _full_box(inst)
    for j, v in fixed.items():
        box[j] = (v, v)
    box[i] = lo_hi
    val, _ = _bb_min(inst, box, cap)
    return val


def _lex_tighten(inst, f_star, cap):
    """Lexicographically least optimum via per-coordinate binary search."""
    fixed: dict[int, int] = {}
    for i in range(inst.size):
        lo, hi = 0, None
        for ix, (_, _, h) in zip(inst.index_groups(), inst.groups):
            if i in ix:
                hi = h
        low, high = lo, hi
        while low < high:
            mid = (low + high) // 2
            val = _min_with_coord_range(inst, fixed, i, (low, mid), cap)
            if val is not None and val == f_star:
                high = mid
            else:
                low = mid + 1
        # the coordinate's least achievable value given earlier choices
        fixed[i] = low
    return tuple(fixed[i] for i in range(inst.size))


def iqp_to_text(inst: IqpInstance) -> str:
    """Deterministic dump: group structure, Q rows, p, h targets, r."""
    lines = ["iqp"]
    lines.append(
        "groups " + " ".join(f"{m}:{s}:{h}" for m, s, h in inst.groups)
    )
    for row in inst.q:
        lines.append("q " + " ".join(str(x) for x in row))
    lines.append("p " + " ".join(str(x) for x in inst.p))
    lines.append(f"r {inst.r}")
    return "\n".join(lines) + "\n"
