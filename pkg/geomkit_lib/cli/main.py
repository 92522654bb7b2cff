"""
``geomkit`` command-line entry point.

Subcommands: gp-check, wcp-check, wsp-check, recover, apply, generate.

Exit codes: 0 when the report holds (or the artifact was written), 1 when the report
fails, 2 on input, configuration or numerical contract errors. The output document goes
to ``--out`` or stdout; diagnostics go to stderr.
"""

import argparse
import logging
import sys
from collections.abc import Sequence
from pathlib import Path

from partsnap_logger.logging import psnap_get_logger
from pydantic import ValidationError

from geomkit_lib.any.container import container
from geomkit_lib.any.exceptions import GeomKitError, GeomKitInputError
from geomkit_lib.any.types import CheckMode, GeneratorKind, PositionMode, RecoveryStrategy
from geomkit_lib.cli.commands import (
    DEFAULT_CHECK_SPHERES,
    EXIT_INPUT,
    CommandResult,
    cmd_apply,
    cmd_check,
    cmd_generate,
    cmd_gp_check,
    cmd_recover,
)
from geomkit_lib.cli.documents import write_document
from geomkit_lib.config.loaders import load_settings
from geomkit_lib.config.schemas import AnalysisSettings

LOGGER = psnap_get_logger("geomkit_lib.cli.main")


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=None, help="ambient dimension (required by generate)")
    common.add_argument("--seed", type=int, default=None, help="sampling seed (default: $GEOM_KIT_SEED or settings)")
    common.add_argument("--tol", type=float, default=None, help="verification tolerance εverify")
    common.add_argument("--out", type=Path, default=None, help="output file (default: stdout)")
    common.add_argument("--config", type=Path, default=None, help="YAML settings file (default: $GEOM_KIT_CONFIG)")
    common.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(prog="geomkit", description="Inversive geometry and Möbius recovery on S^n")
    sub = parser.add_subparsers(dest="command", required=True)

    gp = sub.add_parser("gp-check", parents=[common], help="general position of a point set")
    gp.add_argument("input", type=Path)
    gp.add_argument("--mode", choices=[m.value for m in PositionMode], default=PositionMode.SPHERICAL.value)

    for mode in CheckMode:
        p = sub.add_parser(f"{mode.value}-check", parents=[common], help=f"{mode.value.upper()} check of a map table")
        p.add_argument("input", type=Path)
        p.add_argument("--circles", type=int, default=DEFAULT_CHECK_SPHERES, help="maximum spheres tested")
        p.add_argument("--samples", type=int, default=None, help="minimum table points per tested sphere")
        p.set_defaults(check_mode=mode.value)

    rec = sub.add_parser("recover", parents=[common], help="recover the Möbius map behind a table")
    rec.add_argument("input", type=Path)
    rec.add_argument("--strategy", choices=[s.value for s in RecoveryStrategy], default=RecoveryStrategy.DIRECT.value)

    app = sub.add_parser("apply", parents=[common], help="apply a Möbius map to a point set")
    app.add_argument("map", type=Path)
    app.add_argument("points", type=Path)

    gen = sub.add_parser("generate", parents=[common], help="generate a sample artifact")
    gen.add_argument("kind", choices=[k.value for k in GeneratorKind])
    gen.add_argument("--count", type=int, default=None)
    gen.add_argument("--images", type=int, default=3, help="image count for finite-image-table")
    return parser


def resolve_settings(args: argparse.Namespace) -> AnalysisSettings:
    """Settings file (or defaults) with ``--seed`` and ``--tol`` applied on top."""
    settings = load_settings(args.config)
    updates: dict[str, object] = {}
    if args.seed is not None:
        updates["seed"] = args.seed
    if args.tol is not None:
        updates["tolerances"] = {**settings.tolerances.model_dump(), "verify": args.tol}
    if updates:
        settings = AnalysisSettings.model_validate({**settings.model_dump(), **updates})
    container.settings.override(settings)
    return settings


def run(args: argparse.Namespace) -> CommandResult:
    settings = resolve_settings(args)
    if args.command == "gp-check":
        return cmd_gp_check(args.input, PositionMode(args.mode), settings, args.n)
    if args.command in ("wcp-check", "wsp-check"):
        return cmd_check(args.input, CheckMode(args.check_mode), settings, args.circles, args.samples, args.n)
    if args.command == "recover":
        return cmd_recover(args.input, RecoveryStrategy(args.strategy), settings, args.n)
    if args.command == "apply":
        return cmd_apply(args.map, args.points, settings, args.n)
    if args.n is None:
        raise GeomKitInputError("generate needs --n")
    return cmd_generate(GeneratorKind(args.kind), args.n, settings, args.count, args.images)


def main(argv: Sequence[str] | None = None) -> int:
    """Run one subcommand and return its exit code."""
    args = build_parser().parse_args(argv)
    if args.verbose:
        logging.getLogger("geomkit_lib").setLevel(logging.DEBUG)
    try:
        result = run(args)
    except (GeomKitError, ValidationError) as e:
        print(f"geomkit {args.command}: error: {e}", file=sys.stderr)
        return EXIT_INPUT
    finally:
        container.settings.reset_override()

    text = write_document(result.document, args.out)
    if args.out is None:
        sys.stdout.write(text)
    else:
        LOGGER.info(f"wrote {args.out}")
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
