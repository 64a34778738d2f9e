"""Command line interface for the tame lattice toolkit."""

import argparse
import json
import sys
from pathlib import Path
from typing import List

# Add src directory to path for imports
sys.path.insert(0, str(Path(__file__).parent))

from src.config import load_config
from src.lattice import EnumerationBudgetError
from src.logger import get_logger, setup_logger
from src.main_app import FAMILIES, LatticeRequest, TameLatticeToolkit
from src.models import STATUS_FAIL, STATUS_PASS, ReportDocument, RSPair
from src.reports import (
    dump_reports,
    format_gram,
    read_gram_file,
    save_reports,
    write_gram_file,
)

EXIT_USAGE = 64

logger = get_logger("cli")


class UsageErrorParser(argparse.ArgumentParser):
    """Argument parser that exits with the usage status on bad arguments."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_family_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--family", choices=FAMILIES, default="tame", help="Lattice family (default: tame)"
    )
    parser.add_argument("--n", type=int, help="Dimension N (degree for field families)")
    parser.add_argument("--h", type=int, help="Off-diagonal parameter h of a tame lattice")
    parser.add_argument("--p", type=int, help="Prime degree for conner-perlis")
    parser.add_argument("--cond", type=int, help="Conductor n for field families")
    parser.add_argument("--k", type=int, help="Denominator k for wr-not-swr")


def create_parser() -> argparse.ArgumentParser:
    """Create command line argument parser."""
    common = UsageErrorParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Print JSON reports")
    common.add_argument(
        "--budget", type=int, help="Enumeration node budget (default: TAMELAT_BUDGET)"
    )
    common.add_argument(
        "--oracle", action="store_true", help="Cross-check with the brute-force box scan"
    )
    common.add_argument("--out", help="Write the Gram file or JSON reports here")

    parser = UsageErrorParser(
        description="Tame lattices, their Phi-sublattices and minimal bases",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python cli.py build --n 4 --h 16                          # Gram of the conductor-65 quartic
  python cli.py build --family prime-conductor --n 6 --cond 13
  python cli.py svp --gram data/example3.gram --oracle      # Minimum and minimal vectors
  python cli.py verify --n 6 --h 2 --r 1 --s 1 --json       # Check one sublattice
  python cli.py sweep --n 4 --h 16                          # Every admissible m
  python cli.py catalog-list                                # Built-in field families
        """,
    )

    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    # Build command
    build_parser = subparsers.add_parser(
        "build", parents=[common], help="Write the Gram file of a lattice"
    )
    _add_family_arguments(build_parser)

    # SVP command
    svp_parser = subparsers.add_parser(
        "svp", parents=[common], help="Exact minimum and minimal vectors"
    )
    svp_parser.add_argument("--gram", help="Gram file to read (instead of a family)")
    _add_family_arguments(svp_parser)

    # Verify command
    verify_parser = subparsers.add_parser(
        "verify", parents=[common], help="Check the minimal-basis theorem for one (r, s)"
    )
    _add_family_arguments(verify_parser)
    verify_parser.add_argument("--r", type=int, required=True, help="Parameter r, 0 < |r| < N")
    verify_parser.add_argument("--s", type=int, required=True, help="Parameter s")

    # Sweep command
    sweep_parser = subparsers.add_parser(
        "sweep", parents=[common], help="Verify every admissible m >= 2"
    )
    _add_family_arguments(sweep_parser)
    sweep_parser.add_argument(
        "--r-abs", type=int, default=1, help="|r| used for every pair (default: 1)"
    )
    sweep_parser.add_argument(
        "--workers", type=int, help="Worker processes (default: TAMELAT_WORKERS)"
    )

    # Catalog command
    subparsers.add_parser(
        "catalog-list", parents=[common], help="List the built-in field families"
    )

    return parser


def _request(args) -> LatticeRequest:
    return LatticeRequest(
        family=args.family, n=args.n, h=args.h, p=args.p, cond=args.cond, k=args.k
    )


def _exit_code(documents: List[ReportDocument]) -> int:
    codes = [doc.exit_code for doc in documents]
    if 1 in codes:
        return 1
    return max(codes, default=0)


def _emit(args, documents: List[ReportDocument]) -> None:
    if args.out:
        save_reports(args.out, documents)
        print(f"💾 Reports saved to {args.out}", file=sys.stderr)
    if args.json:
        print(dump_reports(documents))


def _status_icon(status: str) -> str:
    return {STATUS_PASS: "✅", STATUS_FAIL: "❌"}.get(status, "⚠️ ")


def _print_verification(doc: ReportDocument) -> None:
    inputs, outputs = doc.inputs, doc.outputs
    print(
        f"\n{_status_icon(doc.status)} N={inputs['N']} h={inputs['h']} "
        f"r={inputs['r']} s={inputs['s']} m={inputs['m']}: {doc.status.upper()}"
    )
    if "error" in outputs:
        print(f"   {outputs['error']}")
        return
    bounds = outputs["bounds"]
    print(f"   Index: {outputs['index_computed']} (predicted {outputs['index_predicted']})")
    print(
        f"   lambda1: {outputs['lambda1_enumerated']} "
        f"(predicted {outputs['lambda1_predicted'] or 'n/a'})"
    )
    print(
        f"   Bounds: {bounds['lower']['numerator']}/{bounds['lower']['denominator']} <= "
        f"{bounds['value']['numerator']}/{bounds['value']['denominator']} <= "
        f"{bounds['upper']['numerator']}/{bounds['upper']['denominator']}: "
        f"{'hold' if bounds['holds'] else 'fail'}"
    )
    print(f"   Kissing number: {outputs['kissing_number']}")
    print(f"   Minimal basis: {'yes' if outputs['basis_is_minimal'] else 'no'}")
    for flag in outputs["flags"]:
        print(f"   Flag: {flag}")
    if "oracle" in outputs:
        minima = ", ".join(outputs["oracle"]["coset_minima"])
        print(f"🔍 Box scans agree (S_d minima for d = 1..N: {minima})")


def handle_build_command(args) -> int:
    """Handle the build command."""
    app = TameLatticeToolkit()
    label, gram = app.build_gram(_request(args))

    if args.out:
        write_gram_file(args.out, gram, comment=label)
        print(f"💾 {label} written to {args.out}")
    else:
        sys.stdout.write(format_gram(gram, comment=label))
    return 0


def handle_svp_command(args) -> int:
    """Handle the svp command."""
    app = TameLatticeToolkit()
    if args.gram:
        gram = read_gram_file(args.gram)
        inputs = {"gram": args.gram}
    else:
        request = _request(args)
        _, gram = app.build_gram(request)
        inputs = request.inputs()

    doc = app.shortest_vectors(gram, inputs, budget=args.budget, oracle=args.oracle)
    _emit(args, [doc])

    if not args.json:
        outputs = doc.outputs
        print(f"\n{_status_icon(doc.status)} Shortest vectors: {doc.status.upper()}")
        print("=" * 40)
        if "error" in outputs:
            print(f"   {outputs['error']}")
        else:
            density = outputs["center_density_sq"]
            print(f"📏 lambda1: {outputs['lambda1']}")
            print(f"🔢 Kissing number: {outputs['kissing_number']}")
            print(f"📦 det G: {outputs['volume_sq']}")
            print(f"🎯 Center density^2: {density['numerator']}/{density['denominator']}")
            print(f"   Well rounded: {outputs['well_rounded']}")
            print(f"   Strongly well rounded: {outputs['strongly_well_rounded']}")
            print(f"   Minimal basis: {outputs['has_minimal_basis']}")
            if "oracle" in outputs:
                print(f"🔍 Box scan (bound {outputs['oracle']['box_bound']}) agrees")

    return doc.exit_code


def handle_verify_command(args) -> int:
    """Handle the verify command."""
    app = TameLatticeToolkit()
    params = app.tame_params(_request(args))
    rs = RSPair.for_params(params, args.r, args.s)

    doc = app.verify(params, rs, budget=args.budget, oracle=args.oracle)
    _emit(args, [doc])
    if not args.json:
        _print_verification(doc)
    return doc.exit_code


def handle_sweep_command(args) -> int:
    """Handle the sweep command."""
    app = TameLatticeToolkit()
    params = app.tame_params(_request(args))

    documents = app.sweep(
        params, r_abs=args.r_abs, budget=args.budget, workers=args.workers, oracle=args.oracle
    )
    _emit(args, documents)

    passed = sum(doc.status == STATUS_PASS for doc in documents)
    if not args.json:
        print(f"\n📊 Sweep N={params.N}, h={params.h}, |r|={args.r_abs}")
        print("=" * 40)
        for doc in documents:
            _print_verification(doc)
    print(f"\nSummary: {passed}/{len(documents)} passed", file=sys.stderr)
    return _exit_code(documents)


def handle_catalog_list_command(args) -> int:
    """Handle the catalog-list command."""
    app = TameLatticeToolkit()
    entries = app.catalog_entries()

    if args.json:
        print(json.dumps(entries, indent=2, ensure_ascii=False))
        return 0

    print("\n📚 Catalog")
    print("=" * 40)
    for entry in entries:
        print(f"🔹 {entry['label']}")
        print(f"   N={entry['N']}, a={entry['a']}, h={entry['h']} ({entry['provenance']})")
        print(f"   Admissible m: {', '.join(entry['admissible_m']) or 'none'}")
    return 0


def main(argv=None) -> int:
    """Main CLI entry point."""
    parser = create_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        return EXIT_USAGE

    # Route to appropriate handler
    handlers = {
        "build": handle_build_command,
        "svp": handle_svp_command,
        "verify": handle_verify_command,
        "sweep": handle_sweep_command,
        "catalog-list": handle_catalog_list_command,
    }

    handler = handlers[args.command]
    if getattr(args, "budget", None) is not None and args.budget < 1:
        parser.error("--budget must be positive")

    try:
        setup_logger("cli", load_config())
        return handler(args)
    except EnumerationBudgetError as e:
        logger.error(f"Enumeration budget exceeded: {e}")
        return 2
    except ValueError as e:
        logger.error(f"Invalid input: {e}")
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    exit_code = main()
    sys.exit(exit_code)
