"""Command-line entry point: ``permquot verify <campaign>`` and ``permquot show <groupspec>``."""

from __future__ import annotations

import argparse
import sys
import time

from .bounds import AmbiguousComparison
from .campaigns import CAMPAIGNS, run_campaign
from .config import ConfigError, load_config
from .constructions import GroupSpecError, parse_group_spec
from .group import GroupError, nilpotent_residual, solvable_residual
from .report import FORMATS, ReportError, emit_report
from .structure import block_systems, is_primitive, is_transitive

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="permquot",
                                     description="Verify nilpotent and solvable quotient bounds for permutation groups.")
    sub = parser.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run a verification campaign")
    v.add_argument("campaign", choices=CAMPAIGNS + ("all",))
    v.add_argument("--max-degree", type=int, default=None)
    v.add_argument("--out", default=None, help="write the report here instead of stdout")
    v.add_argument("--format", choices=FORMATS, default="summary-text")
    v.add_argument("--allow-slow", action="store_true", default=None,
                   help="build the 6561-point stabilizer chain for the extremal affine group")
    v.add_argument("--workers", type=int, default=None)
    v.add_argument("--timing", action="store_true", help="include wall times (output is then not reproducible)")
    v.add_argument("--config", default=None)
    s = sub.add_parser("show", help="describe a group given by a group spec")
    s.add_argument("spec")
    return parser


def _verify(args) -> int:
    cfg = load_config(args.config).with_overrides(allow_slow=args.allow_slow, workers=args.workers)
    if args.max_degree is not None and args.max_degree < 2:
        raise ConfigError("--max-degree must be at least 2")
    if args.max_degree is not None and args.max_degree > 6:
        raise ConfigError("exhaustive campaigns support --max-degree up to 6")
    t0 = time.perf_counter()
    records = run_campaign(args.campaign, cfg, args.max_degree)
    meta = {"precision_ladder": list(cfg.precision_ladder), "allow_slow": cfg.allow_slow}
    if args.timing:
        meta["wall_time"] = round(time.perf_counter() - t0, 3)
    text = emit_report(records, args.format, args.out, meta=meta, timing=args.timing)
    if args.out is None:
        sys.stdout.write(text)
    return EXIT_FAIL if any(r.verdict == "fail" for r in records) else EXIT_OK


def _show(args) -> int:
    spec = parse_group_spec(args.spec)
    G = spec.group
    print(f"group: {spec.text}")
    print(f"degree: {G.degree}")
    print(f"order: {G.order()}")
    if spec.vector_space_size is not None:
        print(f"|V|: {spec.vector_space_size}")
    print(f"transitive: {is_transitive(G)}")
    print(f"primitive: {is_primitive(G)}")
    systems = block_systems(G)
    print(f"block systems: {len(systems)}")
    for B in systems:
        print(f"  {B}")
    for res in (nilpotent_residual(G), solvable_residual(G)):
        status = "certified" if res.certified else "uncertified"
        print(f"{res.kind} residual: order {res.residual.order()}, index {res.index} ({status}: {res.certificate})")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        return _verify(args) if args.command == "verify" else _show(args)
    except (ConfigError, AmbiguousComparison, ReportError, GroupSpecError, GroupError) as exc:
        print(f"permquot: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
