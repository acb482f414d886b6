"""
Command-line front end.

Results go to standard output; progress and diagnostics go to standard error. Exit codes: 0 on success,
2 when a verification finds a mismatch, 1 on usage, configuration or resource errors.
"""
import argparse
import logging
import sys
from typing import Callable, Dict, Optional, Sequence

from hitcalc import core, export, file_utils, golden, invariants, quotient, steenrod
from hitcalc.config import Group, RunConfig
from hitcalc.core import Monomial, WeightVector
from hitcalc.exceptions import (DegreeMismatchException, GoldenDataException, InvalidConfigException,
                                NoSpikeException, ResourceLimitException)
from hitcalc.steenrod import Polynomial

logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_MISMATCH = 2

HANDLED_ERRORS = (ValueError, ResourceLimitException, NoSpikeException, DegreeMismatchException,
                  GoldenDataException, InvalidConfigException)


class UsageError(Exception):

    def __init__(self, message: str):
        self.message = message

    def __str__(self):
        return f"UsageError: {self.message}"


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for verification mismatches here.
    def error(self, message):
        raise UsageError(message)


def _emit(text: str) -> None:
    sys.stdout.write(text)
    if not text.endswith('\n'):
        sys.stdout.write('\n')


def _part(args) -> Optional[str]:
    return None if args.part == 'all' else args.part


def cmd_dim(args, config: RunConfig) -> int:
    basis = quotient.build_quotient(args.s, args.d, config)
    zero, positive = len(basis.admissible_zero), len(basis.admissible_positive)
    payload = {
        's': args.s,
        'degree': args.d,
        'dim': basis.dim,
        'zero': zero,
        'positive': positive,
        'by_weight': {str(w): {'zero': z, 'positive': p} for w, (z, p) in basis.by_weight().items()}
    }
    frame = export.weight_frame(basis)
    text = f"dim (QP_{args.s})_{args.d} = {basis.dim} (P^0: {zero}, P^+: {positive})"
    if len(frame):
        text += '\n' + frame.to_string(index=False)
    _emit(export.render(payload, frame, config.output_format, text))
    return EXIT_OK


def cmd_basis(args, config: RunConfig) -> int:
    basis = quotient.build_quotient(args.s, args.d, config)
    monomials = basis.part(_part(args))
    if args.weight is not None:
        omega = WeightVector.parse(args.weight)
        monomials = [m for m in monomials if core.weight_vector(m) == omega]
    payload = {'s': args.s, 'degree': args.d, 'count': len(monomials), 'admissible': [list(m) for m in monomials]}
    frame = export.basis_frame(basis)
    frame = frame[frame['monomial'].isin([str(m) for m in monomials])]
    text = '\n'.join([f"{len(monomials)} admissible monomial(s)"] + [str(m) for m in monomials])
    _emit(export.render(payload, frame, config.output_format, text))
    return EXIT_OK


def cmd_hit_test(args, config: RunConfig) -> int:
    f = Polynomial.parse(args.polynomial, args.s)
    hit = quotient.is_hit(f, config)
    payload = {'polynomial': f.to_json(), 'hit': hit}
    if f.is_zero():
        text = 'hit (zero polynomial)'
    elif hit:
        text = 'hit'
        if args.certificate:
            certificate = quotient.hit_certificate(f, config)
            payload['certificate'] = certificate.to_dict()
            text += f" (certificate: {certificate.size} generator(s))"
    else:
        remainder = quotient.build_quotient(f.s, f.degree, config).reduce(f)
        payload['class'] = remainder.to_json()
        text = f"not hit: [{f}] = [{remainder}]"
    frame = export.table_frame([{'polynomial': str(f), 'hit': hit}])
    _emit(export.render(payload, frame, config.output_format, text))
    return EXIT_OK


def cmd_strict_test(args, config: RunConfig) -> int:
    m = Monomial.parse(args.monomial, args.s)
    modulo = WeightVector.parse(args.modulo_weight) if args.modulo_weight is not None else None
    strict = quotient.is_strictly_inadmissible(m, modulo, config)
    inadmissible = quotient.is_inadmissible(m, config)
    payload = {'monomial': list(m), 'strictly_inadmissible': strict, 'inadmissible': inadmissible}
    if modulo is not None:
        payload['modulo_weight'] = modulo.to_json()
    text = f"{m}: {'strictly inadmissible' if strict else 'not strictly inadmissible'}, " \
           f"{'inadmissible' if inadmissible else 'admissible'}"
    frame = export.table_frame([{'monomial': str(m), 'strictly_inadmissible': strict, 'inadmissible': inadmissible}])
    _emit(export.render(payload, frame, config.output_format, text))
    return EXIT_OK


def cmd_kameko(args, config: RunConfig) -> int:
    kernel = quotient.kameko_kernel(args.s, args.d, config)
    payload = kernel.to_dict()
    frame = export.table_frame([payload])
    text = str(kernel)
    if args.show_kernel:
        text += '\n' + '\n'.join(str(p) for p in kernel.kernel_polynomials())
    _emit(export.render(payload, frame, config.output_format, text))
    return EXIT_OK


def cmd_invariants(args, config: RunConfig) -> int:
    group = Group.from_name(args.group)
    basis = quotient.build_quotient(args.s, args.d, config)
    weight = WeightVector.parse(args.weight) if args.weight is not None else None
    space = invariants.invariants(basis, group, weight)
    _emit(export.render(space.to_dict(), export.invariant_frame(space), config.output_format, str(space)))
    return EXIT_OK


def cmd_verify(args, config: RunConfig) -> int:
    families = golden.load_families(args.data)
    report = golden.verify_against_computed(args.s, args.t, config, families)
    _emit(export.render(report.to_dict(), export.report_frame(report), config.output_format, str(report)))
    return EXIT_OK if report.passed else EXIT_MISMATCH


def cmd_export(args, config: RunConfig) -> int:
    basis = quotient.build_quotient(args.s, args.d, config)
    output = args.output
    if output is None:
        output = f"qp{args.s}_{args.d}_{args.what}.{config.output_format.extension()}"
    if args.what == 'weights':
        if file_utils.get_extension(output) == 'json':
            export.write_json({str(w): list(c) for w, c in basis.by_weight().items()}, output)
        else:
            export.write_frame(export.weight_frame(basis), output)
    else:
        basis.write_to_file(output)
    logger.info(f"Wrote {args.what} of (QP_{args.s})_{args.d} to {output}")
    return EXIT_OK


def cmd_table(args, config: RunConfig) -> int:
    rows = []
    for t in range(1, args.t_max + 1):
        d, target = core.family_degree(t), core.kameko_target_degree(t)
        try:
            dim_d = quotient.build_quotient(args.s, d, config).dim
            dim_target = quotient.build_quotient(args.s, target, config).dim
        except ResourceLimitException as e:
            logger.warning(f"Stopping the table at t = {t}: {e}")
            break
        rows.append({'t': t, 'degree': d, 'dim': dim_d, 'target_degree': target, 'target_dim': dim_target})
    frame = export.table_frame(rows)
    _emit(export.render({'s': args.s, 'rows': rows}, frame, config.output_format,
                        frame.to_string(index=False) if rows else 'no rows'))
    return EXIT_OK


def cmd_sq(args, config: RunConfig) -> int:
    f = Polynomial.parse(args.polynomial, args.s)
    if args.chi:
        result = steenrod.chi_sq(args.k, f, steenrod.ChiOperator(config.chi_cache))
    else:
        result = steenrod.sq(args.k, f)
    payload = {'k': args.k, 'chi': args.chi, 'polynomial': f.to_json(), 'result': result.to_json()}
    frame = export.table_frame([{'monomial': str(m)} for m in result])
    _emit(export.render(payload, frame, config.output_format, str(result)))
    return EXIT_OK


COMMANDS: Dict[str, Callable] = {
    'dim': cmd_dim,
    'basis': cmd_basis,
    'hit-test': cmd_hit_test,
    'strict-test': cmd_strict_test,
    'kameko': cmd_kameko,
    'invariants': cmd_invariants,
    'verify': cmd_verify,
    'export': cmd_export,
    'table': cmd_table,
    'sq': cmd_sq,
}


def build_parser() -> argparse.ArgumentParser:
    shared = _Parser(add_help=False)
    shared.add_argument('--config', help='key=value configuration file')
    shared.add_argument('--strategy', help='direct or recursive')
    shared.add_argument('--generators', dest='generator_mode', help='powers-of-two or all')
    shared.add_argument('--format', dest='output_format', help='text, json or csv')
    shared.add_argument('--max-space', type=int, help='largest degree space or generator batch')
    shared.add_argument('--threads', type=int, help='worker threads for the recursive strategy')
    shared.add_argument('--chi-cache', type=int, help='largest k memoized by chi(Sq^k)')
    shared.add_argument('-v', '--verbose', action='count', default=0, help='-v for progress, -vv for detail')

    parser = _Parser(prog='hitcalc', description='Admissible monomial bases of the polynomial algebra '
                                                 'over the mod 2 Steenrod algebra.')
    commands = parser.add_subparsers(dest='command', parser_class=_Parser)
    commands.required = True

    def degree_command(name: str, help_text: str) -> argparse.ArgumentParser:
        command = commands.add_parser(name, parents=[shared], help=help_text)
        command.add_argument('-s', type=int, required=True, help='number of variables')
        command.add_argument('-d', type=int, required=True, help='degree')
        return command

    degree_command('dim', 'dimension of (QP_s)_d with its weight breakdown')
    basis = degree_command('basis', 'admissible monomials of (QP_s)_d')
    basis.add_argument('--part', choices=['all', quotient.ZERO, quotient.POSITIVE], default='all')
    basis.add_argument('--weight', help='only monomials of this weight vector, e.g. [3,3,1]')

    hit = commands.add_parser('hit-test', parents=[shared], help='test whether a polynomial is hit')
    hit.add_argument('-s', type=int, required=True)
    hit.add_argument('polynomial', help='e.g. [2,2,1,1,7]+[1,2,2,1,7]')
    hit.add_argument('--no-certificate', dest='certificate', action='store_false')

    strict = commands.add_parser('strict-test', parents=[shared], help='test strict inadmissibility of a monomial')
    strict.add_argument('-s', type=int, required=True)
    strict.add_argument('monomial', help='e.g. [1,2,2,1,7]')
    strict.add_argument('--modulo-weight', help='also allow monomials below this weight vector')

    kameko = degree_command('kameko', "kernel of Kameko's map on (QP_s)_d")
    kameko.add_argument('--show-kernel', action='store_true')

    invariant = degree_command('invariants', 'invariants of the symmetric or general linear group')
    invariant.add_argument('--group', default=Group.GL.label(), help='Sigma or GL')
    invariant.add_argument('--weight', help='restrict to QP_s(omega), e.g. [3,3,1]')

    verify = commands.add_parser('verify', parents=[shared], help='check the monomial catalogues at t')
    verify.add_argument('--t', type=int, required=True)
    verify.add_argument('-s', type=int, default=5)
    verify.add_argument('--data', help='catalogue file; defaults to the packaged one')

    exporter = degree_command('export', 'write a basis or its weight table to a file')
    exporter.add_argument('--output', help='.csv, .json or .txt file; defaults to qp<s>_<d>_<what> with the --format extension')
    exporter.add_argument('--what', choices=['basis', 'weights'], default='basis')

    table = commands.add_parser('table', parents=[shared], help='dimensions of the degree family')
    table.add_argument('--t-max', type=int, default=2)
    table.add_argument('-s', type=int, default=5)

    square = commands.add_parser('sq', parents=[shared], help='apply Sq^k or chi(Sq^k) to a polynomial')
    square.add_argument('-s', type=int, required=True)
    square.add_argument('-k', type=int, required=True)
    square.add_argument('polynomial')
    square.add_argument('--chi', action='store_true')
    return parser


def configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    root = logging.getLogger('hitcalc')
    for handler in list(root.handlers):
        if getattr(handler, '_hitcalc_cli', False):
            root.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter('%(levelname)s %(name)s: %(message)s'))
    handler._hitcalc_cli = True
    root.addHandler(handler)
    root.setLevel(level)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"error: {e.message}\n")
        return EXIT_ERROR
    except SystemExit as e:
        return EXIT_OK if e.code is None else int(e.code)
    configure_logging(args.verbose)
    try:
        config = RunConfig.from_sources(args.config, overrides={
            'max_space': args.max_space,
            'strategy': args.strategy,
            'generator_mode': args.generator_mode,
            'format': args.output_format,
            'threads': args.threads,
            'chi_cache': args.chi_cache
        })
        logger.info(f"Running {args.command} with {config!r}")
        return COMMANDS[args.command](args, config)
    except HANDLED_ERRORS as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_ERROR


if __name__ == '__main__':
    sys.exit(main())
