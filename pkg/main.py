#!/usr/bin/env python

import sys
import argparse
import logging

from cli import Options, COMMANDS, LoadError, UsageError, EXIT_USAGE, run, parse_pair

if __name__ == '__main__':
    parser = argparse.ArgumentParser(description='Defects of extriangulated categories: '
                                     'checks and certificates.')
    parser.add_argument("command", help='one of: {}'.format(
        ', '.join(list(COMMANDS) + ['selftest', 'replay'])))
    parser.add_argument("input", nargs='?', default=None,
                        help='descriptor file (JSON or TOML), or a certificate for replay')
    parser.add_argument("--caps", help='resource caps, e.g. "mult=2,samples=50"')
    parser.add_argument("--seed", type=int, help='seed for sampled checks')
    parser.add_argument("--field", help='override the field: a prime p or Q')
    parser.add_argument("--pair", nargs='+', metavar='U=..|V=..',
                        help='a cotorsion pair, e.g. --pair U=S1 V=S1,S3')
    parser.add_argument("--sigma", help='comma separated Σ for quotient (default: def_simples)')
    parser.add_argument("--format", choices=('json', 'text'), default='json')
    parser.add_argument("--timing", action='store_true', help='record the running time')
    parser.add_argument("-v", "--verbose", action='count', default=0)
    args = parser.parse_args()

    level = (logging.WARNING, logging.INFO, logging.DEBUG)[min(args.verbose, 2)]
    logging.basicConfig(stream=sys.stderr, level=level,
                        format='%(levelname)s %(name)s: %(message)s')

    try:
        sigma = None
        if args.sigma is not None:
            sigma = tuple(s.strip() for s in args.sigma.split(',') if s.strip())
        options = Options(caps=args.caps, seed=args.seed, field=args.field,
                          pair=parse_pair(args.pair) if args.pair else None,
                          sigma=sigma, timing=args.timing)
        certificate = run(args.command, args.input, options)
    except (LoadError, UsageError) as error:
        print("error: {}".format(error), file=sys.stderr)
        sys.exit(EXIT_USAGE)

    print(certificate.dumps(args.format))
    sys.exit(certificate.exit_code)
