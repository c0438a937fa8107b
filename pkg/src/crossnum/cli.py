"""Command-line front end.

Exit codes: 0 success, 2 input parse error, 3 vertex-cover size exceeded,
4 resource cap exceeded, 1 anything else.
"""

from __future__ import annotations

import argparse
import sys

from .drawing import drawing_to_text
from .graphs import (
    CompressedGraph,
    CoverSizeExceeded,
    compress,
    expand,
    find_vertex_cover,
    parse_compressed,
    parse_edge_list,
)
from .iqp import IqpCapExceeded, iqp_to_text
from .oracle import OracleCeilingExceeded, oracle_cr
from .oraclecfg import OracleConfig
from .pipeline import (
    PipelineOptions,
    ResourceCapExceeded,
    assemble_lifted,
    crossing_number,
    initial_budget,
    verify,
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PARSE = 2
EXIT_COVER = 3
EXIT_CAP = 4


def build_parser():
    p = argparse.ArgumentParser(
        prog="crossnum",
        description="Exact crossing numbers for graphs with a small vertex cover",
    )
    p.add_argument("input", help="input graph file")
    p.add_argument(
        "--format",
        choices=("edge-list", "compressed"),
        default="edge-list",
        help="input format (compressed inputs carry the cover explicitly)",
    )
    p.add_argument(
        "--mode",
        choices=("solve", "oracle", "verify", "dump-clusterings"),
        default="solve",
    )
    p.add_argument("--k-max", type=int, default=8,
                   help="largest vertex cover to search for")
    p.add_argument("--budget-cap", type=int, default=2_000_000,
                   help="cap on enumerated clusterings")
    p.add_argument("--iqp-cap", type=int, default=200_000,
                   help="cap on IQP solver work")
    p.add_argument("--oracle-crossings", type=int, default=8,
                   help="iterative deepening ceiling for the oracle")
    p.add_argument("--out-report", help="write the solve report (JSON)")
    p.add_argument("--out-drawing", help="write the lifted drawing (text)")
    p.add_argument("--out-svg", help="render the lifted drawing")
    p.add_argument(
        "--seed-free",
        action="store_true",
        help="assert that no randomness is configured (always true)",
    )
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _load(args) -> CompressedGraph:
    with open(args.input) as fh:
        text = fh.read()
    if args.format == "compressed":
        return parse_compressed(text)
    g = parse_edge_list(text)
    cover = find_vertex_cover(g, args.k_max)
    return compress(g, cover)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cg = _load(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CoverSizeExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COVER
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE

    opts = PipelineOptions(
        iqp_cap=args.iqp_cap,
        clustering_cap=args.budget_cap,
        want_drawing=bool(args.out_drawing or args.out_svg),
    )
    try:
        if args.mode == "solve":
            return _run_solve(cg, opts, args)
        if args.mode == "oracle":
            g = expand(cg)
            cfg = OracleConfig(
                max_crossings=args.oracle_crossings,
                max_edges=max(18, len(g.edges)),
                max_vertices=max(9, len(g.vertices)),
            )
            print(oracle_cr(g, cfg))
            return EXIT_OK
        if args.mode == "verify":
            return _run_verify(cg, opts, args)
        return _run_dump(cg, args)
    except (ResourceCapExceeded, IqpCapExceeded, OracleCeilingExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP


def _run_solve(cg, opts, args) -> int:
    report = crossing_number(cg, opts)
    print(report.value)
    if args.verbose:
        for comp in report.components:
            print(
                f"# component cover={comp.cover} value={comp.value} "
                f"clusterings={comp.clusterings_seen}",
                file=sys.stderr,
            )
            print("# " + iqp_to_text(comp.instance).replace("\n", "\n# "),
                  file=sys.stderr)
    if args.out_report:
        with open(args.out_report, "w") as fh:
            fh.write(report.to_json())
    if args.out_drawing or args.out_svg:
        lifted = report.lifted or assemble_lifted(cg, report)
        if args.out_drawing:
            with open(args.out_drawing, "w") as fh:
                fh.write(drawing_to_text(lifted))
        if args.out_svg:
            from .render import render_svg

            render_svg(lifted, args.out_svg)
    return EXIT_OK


def _run_verify(cg, opts, args) -> int:
    report = crossing_number(cg, opts)
    gate = OracleConfig(max_crossings=args.oracle_crossings)
    res = verify(report, cg, gate)
    print(res.detail)
    if not res.ok:
        print("error: verification mismatch", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_OK


def _run_dump(cg, args) -> int:
    from .enumeration import enumerate_clusterings

    budget = initial_budget(cg)
    count = 0
    for c in enumerate_clusterings(cg, budget):
        count += 1
        print(f"clustering {count} r={c.r}")
        print(
            "reps "
            + " ".join(
                f"{s.vertex}:{s.mask}:{','.join(map(str, s.tag))}"
                for s in c.reps
            )
        )
        print(drawing_to_text(c.drawing), end="")
        print("end")
        if count >= args.budget_cap:
            print("error: clustering cap hit", file=sys.stderr)
            return EXIT_CAP
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
