#!/usr/bin/env python3
"""ces-kit CLI: completely entangled subspaces, their bases and NPT certificates."""
import argparse
import json
import logging
import sys

from backend.app.api.commands import run_command
from backend.app.core.config import get_settings
from backend.app.core.errors import EXIT_USAGE, CESKitError
from backend.app.core.logging_config import setup_logging
from backend.app.models.config_models import RunConfig
from backend.app.services.reporting.report_writer import write_output

logger = logging.getLogger("ces-kit-cli")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dims", action="append", default=[], help="Local dimensions, e.g. 2,3,4 (repeatable)")
    common.add_argument("--pair", default="1,2", help="Slot pair j,j' or 'all'")
    common.add_argument("--seed", type=int, default=None, help="Seed (falls back to CES_KIT_SEED)")
    common.add_argument("--tol", type=float, default=None, help="Verdict tolerance")
    common.add_argument("--restarts", type=int, default=None, help="Seesaw restarts")
    common.add_argument("--iterations", type=int, default=None, help="Seesaw iterations per restart")
    common.add_argument("--format", dest="output_format", choices=["json", "csv"], default="json")
    common.add_argument("--out", default=None, help="Write the report here instead of stdout")
    common.add_argument("--no-assert", dest="no_assert", action="store_true", help="Exit 0 even if a certificate fails")
    common.add_argument("--eigensolver", dest="method", choices=["jacobi", "numpy"], default=None)
    common.add_argument("--timing", action="store_true", help="Include wall-clock timing in the report")
    common.add_argument("--log-level", default=None)
    common.add_argument("--log-json", action="store_true", help="JSON-lines logs on stderr")

    parser = argparse.ArgumentParser(description="ces-kit: completely entangled subspaces and NPT certificates")
    subparsers = parser.add_subparsers(dest="command", required=True)

    subparsers.add_parser("dims", parents=[common], help="N, M, D and the level sizes |I_n|")

    basis_parser = subparsers.add_parser("basis", parents=[common], help="Build and check an orthonormal basis of S")
    basis_parser.add_argument("--rotate-fill", dest="rotate_fill", action="store_true",
                              help="Mix fill vectors inside each level by a seeded random unitary")

    certify_parser = subparsers.add_parser("certify", parents=[common], help="Certify NPT_j of P_S or of a mixture")
    certify_parser.add_argument("--all-levels", dest="all_levels", action="store_true", help="Certify every slot j")
    certify_parser.add_argument("--weights", default="uniform", help="uniform | random | weight file")
    certify_parser.add_argument("--reflect", action="store_true", help="Also certify R rho R")

    upb_parser = subparsers.add_parser("upb", parents=[common], help="UPB validation and the bound-entangled state")
    upb_parser.add_argument("--fixture", default=None, help="Product family JSON (default: TILES)")
    upb_parser.add_argument("--search-F", dest="search_f", action="store_true", help="Search F for orthogonal z^lambda families")

    seesaw_parser = subparsers.add_parser("seesaw", parents=[common], help="Best product-state overlap with P_S or P_T")
    seesaw_parser.add_argument("--target", choices=["S", "T"], default="S")

    survey_parser = subparsers.add_parser("survey", parents=[common], help="Sample PT spectra of states supported on S")
    survey_parser.add_argument("--samples", type=int, default=20)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    settings = get_settings()
    setup_logging(settings.logging, level=args.log_level, json_output=True if args.log_json else None)

    options = {key: value for key, value in vars(args).items()
               if key not in ("command", "log_level", "log_json") and value is not None}
    if "seed" not in options and settings.seed is not None:
        options["seed"] = settings.seed
    try:
        if not options.get("dims") and (args.command != "upb" or options.get("search_f")):
            raise CESKitError("At least one --dims is required")
        config = RunConfig(**options)
        result = run_command(args.command, config)
    except CESKitError as e:
        logger.error(e.message)
        sys.stderr.write(json.dumps(e.to_dict()) + "\n")
        return e.exit_code
    except ValueError as e:
        logger.error(f"Invalid configuration: {e}")
        return EXIT_USAGE

    write_output(result.render(), config.out)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
