"""pancake-lab: build pancake graphs and verify their structural properties."""
import argparse
import logging
import sys

from .exceptions import PancakeLabError, TheoremViolation
from .main import ALL_SUITES, PancakeLab

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_ERROR = 2


def build_parser():
    parser = argparse.ArgumentParser(prog='pancake-lab', description=__doc__)
    parser.add_argument('-v', '--verbose', action='store_true', help='debug logging')
    commands = parser.add_subparsers(dest='command', required=True)

    build = commands.add_parser('build', help='write P_n to a file')
    build.add_argument('--n', type=int, required=True)
    build.add_argument('--emit', required=True, metavar='FILE')
    build.add_argument('--format', choices=('json', 'edgelist'), default='json')

    verify = commands.add_parser('verify', help='run verification suites and write a JSON report')
    verify.add_argument('--n', type=int, required=True)
    verify.add_argument('--suite', action='append', choices=ALL_SUITES + ('all',),
                        help='repeatable; defaults to all')
    verify.add_argument('--deep', action='store_true', help='raise the max-flow and exact-cover bounds by one')
    verify.add_argument('--exhaustive', action='store_true',
                        help='refuse instead of falling back to structural certificates')
    verify.add_argument('--parallel', action='store_true', help='run suites concurrently')
    verify.add_argument('--concurrency', type=int, default=None, help='workers for cut enumeration')
    verify.add_argument('--out', metavar='FILE', default=None, help='report path, stdout if omitted')
    return parser


def _verify(args, logger):
    suites = None if not args.suite or 'all' in args.suite else args.suite
    lab = PancakeLab({
        'deep': args.deep,
        'exhaustive': True if args.exhaustive else None,
        'parallel': args.parallel,
        'concurrency': args.concurrency
    }, logger=logger)
    report = lab.run_suite(args.n, suites)
    text = report.dumps() + '\n'
    if args.out:
        with open(args.out, 'w') as handle:
            handle.write(text)
        logger.info(f'Report written to {args.out}')
    else:
        sys.stdout.write(text)
    if not report.passed:
        raise TheoremViolation(report.failures)


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR

    logging.basicConfig(format='%(asctime)s: %(levelname)s: %(message)s',
                        level=logging.DEBUG if args.verbose else logging.INFO)
    logger = logging.getLogger('pancake_lab')

    try:
        if args.command == 'build':
            PancakeLab(logger=logger).export_graph(args.n, args.emit, args.format)
        else:
            _verify(args, logger)
    except TheoremViolation as exc:
        logger.error(str(exc))
        return EXIT_VIOLATION
    except (PancakeLabError, OSError) as exc:
        logger.error(str(exc))
        return EXIT_ERROR
    except Exception:
        # exit 1 is reserved for disagreements with the expected outcomes
        logger.exception('Verification aborted')
        return EXIT_ERROR
    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
