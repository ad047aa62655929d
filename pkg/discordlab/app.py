import argparse
import logging
import sys

import numpy as np

from discordlab.commands import ancilla, check, make_state, measures, scan
from discordlab.config import Config
from discordlab.errors import NumericalError, ValidationError
from discordlab.utils.formatting import FORMATS

logger = logging.getLogger('discordlab')

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NUMERICAL = 2


def positive_float(text: str) -> float:
    value = float(text)
    if not (value > 0 and np.isfinite(value)):
        raise argparse.ArgumentTypeError(f"must be a positive number, got {text!r}")
    return value


def common_options() -> argparse.ArgumentParser:
    """Global flags, accepted before or after the sub-command"""
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument('--seed', type=int, default=argparse.SUPPRESS,
                        help='Root RNG seed (printed in every report)')
    parser.add_argument('--tolerance', type=positive_float, default=argparse.SUPPRESS,
                        help='Zero threshold for partial-transpose eigenvalues')
    parser.add_argument('--format', choices=FORMATS, default=argparse.SUPPRESS,
                        help='Report format for standard output')
    parser.add_argument('--workers', type=int, default=argparse.SUPPRESS,
                        help='Threads for scans')
    parser.add_argument('-v', '--verbose', action='store_true', default=argparse.SUPPRESS)
    return parser


def create_parser() -> argparse.ArgumentParser:
    """Application factory"""
    parents = [common_options()]
    parser = argparse.ArgumentParser(
        prog='discordlab', parents=parents,
        description='Geometric discord and negativity of bipartite states, '
                    'and the hierarchy relations between them'
    )
    subparsers = parser.add_subparsers(dest='command', required=True)

    # Register sub-commands
    measures.register(subparsers, parents)
    check.register(subparsers, parents)
    scan.register(subparsers, parents)
    make_state.register(subparsers, parents)
    ancilla.register(subparsers, parents)
    return parser


def main(argv=None) -> int:
    parser = create_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INPUT

    logging.basicConfig(
        level=logging.DEBUG if getattr(args, 'verbose', False) else logging.WARNING,
        format='%(levelname)s %(name)s: %(message)s',
        stream=sys.stderr
    )
    Config.init_app(args)

    try:
        return args.handler(args)
    except ValidationError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (NumericalError, np.linalg.LinAlgError, FloatingPointError) as e:
        print(f"numerical failure: {e}", file=sys.stderr)
        return EXIT_NUMERICAL
    except Exception as e:
        logger.exception("Unexpected error in %s", args.command)
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_NUMERICAL
