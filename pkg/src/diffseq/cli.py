"""Command-line interface.

Subcommands:
    construct   build the level-l expansion coloring and write it out
    psi         longest diffsequence of a coloring file under a hop budget
    delta       exact Ramsey-type threshold with certificate
    bounds      bound table over a k range (text/csv/json, optional figure)
    verify      seeded property suites (expansion bound, construction
                budget, block reduction)

Exit codes: 0 success, 1 property violation, 2 capacity exceeded,
3 malformed input file, 64 usage error.

Examples:
    diffseq construct -l 3 --out level3.txt
    diffseq psi level3.txt --hops 1 --format json
    diffseq delta -k 4 --cache delta.jsonl
    diffseq bounds 2 40 --format csv --out table.csv --plot
    diffseq verify lemma1 --trials 10000 --seed 42
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .bounds import bound_report, render_table
from .colorings import (
    DEFAULT_MAX_BITS,
    CapacityError,
    Coloring,
    ColoringFormatError,
    GapSet,
    expanded_alternating,
)
from .engine import longest_with_hops
from .ramsey import RamseyResult, load_cached_values, ramsey_table
from .verify import construction_suite, expansion_bound_suite, reduction_suite

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_CAPACITY = 2
EXIT_MALFORMED = 3
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # exit 64 instead of argparse's 2
        raise UsageError(message)


@dataclass(frozen=True)
class RunConfig:
    """Everything that may influence output; identical configs must produce
    byte-identical stdout."""

    command: str
    fmt: str
    seed: int
    cache: Path | None
    jobs: int
    out: Path | None
    max_bits: int
    gaps: GapSet


def _parse_gapset(text: str) -> GapSet:
    if text.startswith("pow:"):
        try:
            return GapSet.powers_of(int(text[4:]))
        except ValueError as exc:
            raise UsageError(f"bad gap set {text!r}: {exc}") from exc
    try:
        return GapSet.explicit(int(x) for x in text.split(","))
    except ValueError as exc:
        raise UsageError(
            f"bad gap set {text!r}; use pow:<base> or a comma-separated list"
        ) from exc


def build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument(
        "--format", choices=("text", "json", "csv"), default="text",
        help="output format (default text)",
    )
    common.add_argument("--seed", type=int, default=0, help="seed for randomized runs")
    common.add_argument("--cache", type=Path, default=None, help="certificate cache file")
    common.add_argument("--jobs", type=int, default=1, help="parallel subtree tasks")
    common.add_argument("--out", type=Path, default=None, help="output file")
    common.add_argument(
        "--max-bits", type=int, default=DEFAULT_MAX_BITS,
        help="capacity limit for constructed colorings",
    )
    common.add_argument(
        "--gaps", default="pow:2",
        help="gap set: pow:<base> or comma-separated list (default pow:2)",
    )

    parser = _Parser(prog="diffseq", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common],
                       help="build the level-l expansion coloring")
    p.add_argument("-l", "--level", type=int, required=True)
    p.add_argument("--binary", action="store_true",
                   help="write the compact binary form (requires --out)")

    p = sub.add_parser("psi", parents=[common],
                       help="longest diffsequence under a hop budget")
    p.add_argument("coloring", type=Path, help="coloring file (text or binary)")
    p.add_argument("-H", "--hops", type=int, default=0)

    p = sub.add_parser("delta", parents=[common],
                       help="exact threshold with certificate")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-r", type=int, default=2)
    p.add_argument("--n-max", type=int, default=None)

    p = sub.add_parser("bounds", parents=[common], help="bound table over a k range")
    p.add_argument("k_min", type=int)
    p.add_argument("k_max", type=int)
    p.add_argument("--plot", nargs="?", const="", default=None, metavar="PATH",
                   help="also render the table as a figure")

    p = sub.add_parser("verify", parents=[common], help="run a property suite")
    p.add_argument("target",
                   choices=("lemma1", "expansion", "construction",
                            "corollaries", "reduction"))
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--max-level", type=int, default=6,
                   help="construction levels to check")

    return parser


def _emit(text: str, out: Path | None) -> None:
    sys.stdout.write(text)
    if out is not None:
        out.write_text(text)


def load_coloring(path: Path) -> Coloring:
    """Read a coloring file, auto-detecting text vs binary form."""
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise ColoringFormatError(f"cannot read {path}: {exc}") from exc
    if not data.strip(b"01\n"):
        try:
            return Coloring.from_text(data.decode("ascii"))
        except ColoringFormatError:
            pass
    return Coloring.from_binary(data)


def _cmd_construct(cfg: RunConfig, args: argparse.Namespace) -> int:
    coloring = expanded_alternating(args.level, max_bits=cfg.max_bits)
    if args.binary and cfg.out is None:
        raise UsageError("--binary requires --out")
    if cfg.out is None:
        sys.stdout.write(coloring.to_text())
        return EXIT_OK
    cfg.out.write_bytes(coloring.to_binary() if args.binary
                        else coloring.to_text().encode("ascii"))
    if cfg.fmt == "json":
        info = {"level": args.level, "length": len(coloring), "out": str(cfg.out)}
        sys.stdout.write(json.dumps(info) + "\n")
    elif cfg.fmt == "csv":
        sys.stdout.write(f"level,length\n{args.level},{len(coloring)}\n")
    else:
        sys.stdout.write(f"length {len(coloring)}\n")
    return EXIT_OK


def _cmd_psi(cfg: RunConfig, args: argparse.Namespace) -> int:
    if args.hops < 0:
        raise UsageError("--hops must be >= 0")
    coloring = load_coloring(args.coloring)
    result = longest_with_hops(coloring, cfg.gaps, args.hops)
    d = result.to_json_dict()
    if cfg.fmt == "json":
        text = json.dumps(d) + "\n"
    elif cfg.fmt == "csv":
        wit = " ".join(map(str, d["witness"]))
        text = f"length,hops,witness\n{d['length']},{d['hops']},{wit}\n"
    else:
        wit = " ".join(map(str, d["witness"]))
        text = f"length {d['length']}\nhops {d['hops']}\nwitness {wit}\n"
    _emit(text, cfg.out)
    return EXIT_OK


def _render_delta(result: RamseyResult, fmt: str) -> str:
    d = result.to_json_dict()
    if fmt == "json":
        return json.dumps(d) + "\n"
    if fmt == "csv":
        head = "gaps,k,r,value,n_max,certificate,nodes,max_depth"
        vals = [d["gaps"], d["k"], d["r"],
                "" if d["value"] is None else d["value"],
                d["n_max"], d["certificate"], d["nodes"], d["max_depth"]]
        return head + "\n" + ",".join(map(str, vals)) + "\n"
    value = f"exceeds {result.n_max}" if result.exceeded else str(result.value)
    return (
        f"gaps {result.gaps}\nk {result.k}\nr {result.r}\nvalue {value}\n"
        f"certificate {result.certificate}\nnodes {result.nodes}\n"
    )


def _cmd_delta(cfg: RunConfig, args: argparse.Namespace) -> int:
    try:
        results = ramsey_table(
            cfg.gaps, [args.k], r=args.r, n_max=args.n_max,
            cache_path=cfg.cache, jobs=cfg.jobs,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit(_render_delta(results[0], cfg.fmt), cfg.out)
    return EXIT_OK


def _cmd_bounds(cfg: RunConfig, args: argparse.Namespace) -> int:
    if not 2 <= args.k_min <= args.k_max:
        raise UsageError("need 2 <= k_min <= k_max")
    reports = [bound_report(k) for k in range(args.k_min, args.k_max + 1)]
    exact = {}
    if cfg.cache is not None:
        exact = load_cached_values(cfg.cache, cfg.gaps)
    _emit(render_table(reports, cfg.fmt, exact=exact), cfg.out)
    if args.plot is not None:
        from .plotting import save_bounds_figure

        if args.plot:
            fig_path = Path(args.plot)
        elif cfg.out is not None:
            fig_path = cfg.out.with_suffix(".png")
        else:
            fig_path = Path("bounds.png")
        save_bounds_figure(reports, fig_path, exact=exact)
    return EXIT_OK


def _cmd_verify(cfg: RunConfig, args: argparse.Namespace) -> int:
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    target = args.target
    if target in ("lemma1", "expansion"):
        report = expansion_bound_suite(args.trials, cfg.seed)
    elif target == "construction":
        report = construction_suite(args.max_level, max_bits=cfg.max_bits)
    else:  # corollaries / reduction
        report = reduction_suite(args.trials, cfg.seed)
    lines = [report.summary()]
    lines.extend("  " + d for d in report.details)
    _emit("\n".join(lines) + "\n", cfg.out)
    return EXIT_OK if report.passed else EXIT_VIOLATION


_COMMANDS = {
    "construct": _cmd_construct,
    "psi": _cmd_psi,
    "delta": _cmd_delta,
    "bounds": _cmd_bounds,
    "verify": _cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = RunConfig(
            command=args.command,
            fmt=args.format,
            seed=args.seed,
            cache=args.cache,
            jobs=args.jobs,
            out=args.out,
            max_bits=args.max_bits,
            gaps=_parse_gapset(args.gaps),
        )
        return _COMMANDS[args.command](cfg, args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except ColoringFormatError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
