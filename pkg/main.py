#!/usr/bin/env python3
"""
cobordism toolkit - main entry point
"""

import argparse
import logging
import sys
from typing import List, Optional

from core.models import Command
from core.orchestrator import SUBCOMMANDS, Orchestrator

HELP = {
    'fgl': 'coefficients a[i,j] of the universal formal group law',
    'log': 'the universal logarithm h(u)',
    'gseries': 'the g-series with u g(u) = h^-1(u)',
    'chi': 'formal inverse of the universal law',
    'genus': 'genus of a variety for a specialization of the lazard ring',
    'chern': 'chern numbers of a variety or complete intersection',
    'decompose': 'milnor-basis coordinates of a variety or complete intersection',
    'hrr': 'riemann-roch check: integral of g^-1(T_X) against l(X)',
    'hrrc': 'riemann-roch check for complete intersections',
    'verify': 'run the full identity suite',
}


def setup_logging(verbose: bool = False):
    """setup logging configuration"""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format='%(levelname)s | %(message)s',
        handlers=[
            logging.StreamHandler(sys.stderr),
        ]
    )


def build_parser(default_order: int = 8) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--order', type=int, default=None,
                        help=f'truncation order (default {default_order})')
    common.add_argument('--variety', type=str, help='product of projective spaces, e.g. P2xP1')
    common.add_argument('--bundles', type=str, action='append', default=[],
                        help='line bundle like O(1,1); repeat for several')
    common.add_argument('--spec', type=str, help='genus preset or inline p1=1,p2=1/2')
    common.add_argument('--format', choices=('text', 'json'), default='text', help='output format')
    common.add_argument('--config', type=str, default=None, help='path to config file')
    common.add_argument('--verbose', action='store_true', help='debug logging')

    parser = argparse.ArgumentParser(description='exact formal group laws, chern numbers and cobordism classes')
    subparsers = parser.add_subparsers(dest='subcommand', required=True)
    for name in SUBCOMMANDS:
        subparsers.add_parser(name, parents=[common], help=HELP[name])
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """main entry point"""
    args = build_parser().parse_args(argv)

    # setup logging
    setup_logging(args.verbose)

    # create orchestrator
    orchestrator = Orchestrator(config_path=args.config)

    command = Command(
        subcommand=args.subcommand,
        order=args.order if args.order is not None else orchestrator.default_order,
        variety=args.variety,
        bundles=list(args.bundles),
        spec=args.spec,
        format=args.format,
    )

    # run command
    return orchestrator.run(command)


if __name__ == '__main__':
    sys.exit(main())
