#!/usr/bin/env python3

"""
Kraupy - Python Random-Unitary Channel Package
Command Line Program

    kraupy analyze CHANNEL
    kraupy decompose CHANNEL [--max-restarts N] [--schedule N,N,...]
    kraupy povm-reduce CHANNEL POVM
    kraupy simulate-correct CHANNEL DECOMPOSITION [--trials N]
    kraupy gen --d D --k K

Common flags: --tol, --seed, --out, -v. A file name of '-' reads standard
input. Exit codes: 0 ok, 2 malformed input, 3 invariant violation,
4 decomposition not found, 5 channel not unital, 6 POVM fails the
classical-dice condition.
"""

import argparse
import json
import logging
import os
import sys
from kraupy.constants import default_tol, SearchConfig
from kraupy.channel import kraus_to_choi
from kraupy.correction import haar_pure_states, simulate_correction
from kraupy.decompose import (FOUND, NOT_FOUND, analyze_channel,
                              decompose_channel, reduce_cardinality,
                              entropy_and_bounds, generate_random_ru_channel)
from kraupy.errors import (RepresentationError, DimensionError,
                           UnsupportedChannelError, PreconditionError,
                           InconsistentDecompositionError, NumericalFailure)
from kraupy.fileio import (read_json, write_json, channel_from_dict,
                           channel_to_dict, povm_from_dict,
                           decomposition_from_dict, decomposition_to_dict,
                           search_report_to_dict, correction_report_to_dict)
from kraupy.statistics import derived_seeds

EXIT_OK = 0
EXIT_MALFORMED = 2
EXIT_INVARIANT = 3
EXIT_NOT_FOUND = 4
EXIT_NOT_UNITAL = 5
EXIT_DICE = 6

_log = logging.getLogger(__name__)

invariant_errors = (RepresentationError, DimensionError,
                    UnsupportedChannelError, PreconditionError,
                    InconsistentDecompositionError, NumericalFailure)


def _schedule(text):
    try:
        return [int(n) for n in text.split(',')]
    except ValueError:
        raise argparse.ArgumentTypeError(f'invalid schedule "{text}"')


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f'expected a positive integer, got '
                                         f'{text}')
    return value


def _tolerances(args):
    if args.tol is None:
        return default_tol
    return default_tol.replace(eps_eq=args.tol, eps_psd=args.tol)


def _bounds_entry(dec, ch, tol):
    h_bits, bound_rank, bound_dim, ok = entropy_and_bounds(
        dec, kraus_to_choi(ch, tol), tol)
    return {'h_bits': h_bits, 'bound_rank': bound_rank,
            'bound_dim': bound_dim, 'ok': ok}


def cmd_analyze(args, tol):
    ch = channel_from_dict(read_json(args.channel), tol)
    write_json(analyze_channel(ch, tol), args.out)
    return EXIT_OK


def cmd_decompose(args, tol):
    ch = channel_from_dict(read_json(args.channel), tol)
    cfg = SearchConfig(n_schedule=args.schedule, restarts=args.max_restarts,
                       max_iters=args.max_iters, seed=args.seed,
                       workers=args.workers)
    report = decompose_channel(ch, cfg, tol)
    result = search_report_to_dict(report)
    if report.status == FOUND:
        result['bounds'] = _bounds_entry(report.decomposition, ch, tol)
        status = EXIT_OK
    elif report.status == NOT_FOUND:
        status = EXIT_NOT_FOUND
    else:
        status = EXIT_NOT_UNITAL
    write_json(result, args.out)
    return status


def cmd_povm_reduce(args, tol):
    ch = channel_from_dict(read_json(args.channel), tol)
    povm = povm_from_dict(read_json(args.povm))
    try:
        dec = reduce_cardinality(ch, povm, tol)
    except PreconditionError as err:
        print(f'kraupy: {err}', file=sys.stderr)
        return EXIT_DICE
    result = decomposition_to_dict(dec)
    result['bounds'] = _bounds_entry(dec, ch, tol)
    write_json(result, args.out)
    return EXIT_OK


def cmd_simulate(args, tol):
    ch = channel_from_dict(read_json(args.channel), tol)
    dec = decomposition_from_dict(read_json(args.decomposition), tol)
    state_seed, sample_seed = derived_seeds(args.seed, 2)
    states = haar_pure_states(ch.d_in, args.trials, state_seed)
    report = simulate_correction(ch, dec, states, sample_seed, tol)
    write_json(correction_report_to_dict(report), args.out)
    return EXIT_OK


def cmd_gen(args, tol):
    ch, dec = generate_random_ru_channel(args.d, args.k, args.seed)
    if args.out is None or args.out == '-':
        write_json({'channel': channel_to_dict(ch),
                    'decomposition': decomposition_to_dict(dec)})
    else:
        fn_part = os.path.splitext(args.out)
        fn_dec = fn_part[0] + '_dec' + fn_part[1]
        write_json(channel_to_dict(ch), args.out)
        write_json(decomposition_to_dict(dec), fn_dec)
        _log.info('channel saved as %s, decomposition as %s', args.out,
                  fn_dec)
    return EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--tol', type=float, default=None,
                        help='equality and PSD tolerance (default 1e-9)')
    common.add_argument('--seed', type=int, default=0,
                        help='master seed (default 0)')
    common.add_argument('--out', type=str, default=None,
                        help='output file (default: standard output)')
    common.add_argument('-v', '--verbose', action='count', default=0,
                        help='-v for progress, -vv for detail')

    parser = argparse.ArgumentParser(
        prog='kraupy',
        description='Random-unitary decomposition of quantum channels')
    commands = parser.add_subparsers(dest='command', required=True)

    analyze = commands.add_parser('analyze', parents=[common],
                                  help='Choi rank, unitality and bounds')
    analyze.add_argument('channel', help='channel JSON file or -')
    analyze.set_defaults(func=cmd_analyze)

    decompose = commands.add_parser('decompose', parents=[common],
                                    help='find a random-unitary '
                                         'decomposition')
    decompose.add_argument('channel', help='channel JSON file or -')
    decompose.add_argument('--max-restarts', type=_positive, default=20,
                           help='restarts per POVM cardinality')
    decompose.add_argument('--max-iters', type=_positive, default=5000,
                           help='descent iterations per restart')
    decompose.add_argument('--schedule', type=_schedule, default=None,
                           help='comma-separated POVM cardinalities')
    decompose.add_argument('--workers', type=_positive, default=1,
                           help='threads for independent restarts')
    decompose.set_defaults(func=cmd_decompose)

    reduce = commands.add_parser('povm-reduce', parents=[common],
                                 help='extremal reduction of a dice POVM')
    reduce.add_argument('channel', help='channel JSON file or -')
    reduce.add_argument('povm', help='POVM JSON file')
    reduce.set_defaults(func=cmd_povm_reduce)

    simulate = commands.add_parser('simulate-correct', parents=[common],
                                   help='environment-assisted correction')
    simulate.add_argument('channel', help='channel JSON file or -')
    simulate.add_argument('decomposition', help='decomposition JSON file')
    simulate.add_argument('--trials', type=_positive, default=100,
                          help='number of Haar-random pure inputs')
    simulate.set_defaults(func=cmd_simulate)

    gen = commands.add_parser('gen', parents=[common],
                              help='random random-unitary channel')
    gen.add_argument('--d', type=_positive, required=True, help='dimension')
    gen.add_argument('--k', type=_positive, required=True,
                     help='number of unitaries (at most d^2)')
    gen.set_defaults(func=cmd_gen)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose,
                                                      logging.DEBUG)
    logging.basicConfig(level=level, stream=sys.stderr,
                        format='%(levelname)s %(name)s: %(message)s')
    try:
        tol = _tolerances(args)
        return args.func(args, tol)
    except invariant_errors as err:
        print(f'kraupy: {err}', file=sys.stderr)
        return EXIT_INVARIANT
    except (json.JSONDecodeError, KeyError, TypeError, ValueError,
            OSError) as err:
        print(f'kraupy: malformed input: {err}', file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == '__main__':
    sys.exit(main())
