"""CLI entry point for addact -- local algebras and additive actions on hypersurfaces.

Usage:
    python -m addact analyze samples/example2_3.alg
    python -m addact equation samples/example2_3.alg
    python -m addact action samples/example2_3.alg
    python -m addact reduce samples/example2_3.alg
    python -m addact two-actions samples/example2_3.alg --order 3,2,1,0
    python -m addact shrink samples/shrink_alternate.alg
    python -m addact family 5 3
    python -m addact census
    python -m addact member "x^5" samples/example2_3.alg
"""

import argparse
import json
import logging
import sys
from dataclasses import asdict
from typing import Callable, Optional

from rich import box
from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape
from rich.panel import Panel
from rich.table import Table

from .calc.artin import (
    LocalAlgebra,
    build_algebra,
    describe_subspace,
    hilbert_function,
    largest_ideal_in,
    socle,
)
from .calc.exactpoly import format_poly, parse_poly
from .errors import AddactError, PresentationFileError
from .fileformat import PresentationFile, load_presentation_file
from .models import (
    DEFAULT_SAMPLE_COUNT,
    DEFAULT_SEED,
    DEFAULT_TRUNCATION_CAP,
    Presentation,
    Report,
    UniquenessReport,
)
from .pairs.construct import add_variable_pair, membership_certificate, shrink_generators, two_actions
from .pairs.families import catalog6, family_checks, family_pair, family_spec, verify_census
from .pairs.geometry import check_cone, check_invariance, essential_variables
from .pairs.hpair import (
    HPair,
    action_matrix,
    action_rows,
    fixed_locus,
    hpair_from_polys,
    hypersurface_equation,
    invariant_vector,
    reduce_hpair_with_coordinates,
    uniqueness_report,
)

EXIT_OK = 0
EXIT_DOMAIN_ERROR = 1
EXIT_USAGE = 2


# ---------------------------------------------------------------------------
# Logging
# ---------------------------------------------------------------------------

class _WarningCollector(logging.Handler):
    """Copies WARNING records into the report."""

    def __init__(self, report: Report):
        super().__init__(level=logging.WARNING)
        self.report = report

    def emit(self, record: logging.LogRecord):
        self.report.warnings.append(record.getMessage())


def _install_logging(report: Report, verbose: bool, err_console: Console) -> list[logging.Handler]:
    package_logger = logging.getLogger('addact')
    package_logger.setLevel(logging.DEBUG if verbose else logging.WARNING)
    handlers = [
        RichHandler(console=err_console, show_time=False, show_path=False),
        _WarningCollector(report),
    ]
    for handler in handlers:
        package_logger.addHandler(handler)
    return handlers


def _remove_logging(handlers: list[logging.Handler]):
    package_logger = logging.getLogger('addact')
    for handler in handlers:
        package_logger.removeHandler(handler)


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------

def _load(args) -> tuple[PresentationFile, LocalAlgebra]:
    pf = load_presentation_file(args.file)
    return pf, build_algebra(pf.presentation(args.max_degree))


def _load_pair(args) -> tuple[PresentationFile, HPair]:
    pf, A = _load(args)
    if pf.u_polys is None:
        raise PresentationFileError(f"{args.file}: no 'U' given; this command needs a generating subspace")
    return pf, hpair_from_polys(A, pf.u_polys, pf.complement)


def _fill_algebra(report: Report, A: LocalAlgebra):
    report.dim = A.dim
    report.hilbert = hilbert_function(A)
    report.socle_dim = socle(A).dim
    report.gorenstein = report.socle_dim == 1
    report.nilpotency_degree = A.nilpotency_degree
    report.details['basis'] = A.basis_labels()
    report.details['socle'] = describe_subspace(A, socle(A))


def _fill_pair(report: Report, H: HPair) -> UniquenessReport:
    _fill_algebra(report, H.algebra)
    uniqueness = uniqueness_report(H)
    report.nondegenerate = uniqueness.nondegenerate
    report.unique_action = uniqueness.nondegenerate
    equation = hypersurface_equation(H)
    report.equation = str(equation)
    report.degree = equation.degree
    report.details['frame'] = H.frame_labels()
    report.details['largest_ideal_in_U'] = describe_subspace(H.algebra, largest_ideal_in(H.algebra, H.U))
    report.details['verdict'] = uniqueness.verdict
    return uniqueness


def _parse_order(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(','))
    except ValueError:
        raise argparse.ArgumentTypeError(f"order must be comma-separated integers, got '{text}'")


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if value is None or isinstance(value, (bool, int, str)):
        return value
    return str(value)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_analyze(args, report: Report) -> int:
    """Build the algebra; with U, also the pair's uniqueness verdict."""
    pf, A = _load(args)
    if pf.u_polys is None:
        _fill_algebra(report, A)
        report.details['presentation'] = A.presentation.describe()
        return EXIT_OK
    H = hpair_from_polys(A, pf.u_polys, pf.complement)
    uniqueness = _fill_pair(report, H)
    report.details['presentation'] = A.presentation.describe()
    report.certificates.append(
        f"gorenstein={uniqueness.gorenstein}, U complementary to socle={uniqueness.socle_complementary}, "
        f"no ideal inside U={uniqueness.nondegenerate}"
    )
    return EXIT_OK


def cmd_equation(args, report: Report) -> int:
    _, H = _load_pair(args)
    equation = hypersurface_equation(H)
    report.dim = H.size
    report.equation = str(equation)
    report.degree = equation.degree
    report.details['frame'] = H.frame_labels()
    report.details['essential_variables'] = essential_variables(equation)
    return EXIT_OK


def cmd_action(args, report: Report) -> int:
    _, H = _load_pair(args)
    matrix = action_matrix(H)
    equation = hypersurface_equation(H)
    report.dim = H.size
    report.equation = str(equation)
    report.degree = equation.degree
    for name, row in zip(H.coordinate_names(), action_rows(H, matrix)):
        report.action.append(f"{name} -> {format_poly(row)}")
    fixed = fixed_locus(H)
    report.details['fixed_locus'] = describe_subspace(H.algebra, fixed)
    report.details['fixed_locus_dim'] = fixed.dim
    report.certificates.append(f"unipotent: {matrix.is_unipotent()}")
    report.certificates.append(f"equation invariant: {check_invariance(equation, matrix)}")
    return EXIT_OK


def cmd_reduce(args, report: Report) -> int:
    _, H = _load_pair(args)
    reduced, kept = reduce_hpair_with_coordinates(H)
    _fill_pair(report, reduced)
    big = hypersurface_equation(H)
    small = hypersurface_equation(reduced)
    report.details['original_equation'] = str(big)
    report.details['presentation'] = reduced.algebra.presentation.describe()
    report.details['kept_coordinates'] = list(kept)
    report.certificates.append(f"cone over reduced equation: {check_cone(big, small, kept)}")
    return EXIT_OK


def _pair_details(H: HPair) -> dict:
    equation = hypersurface_equation(H)
    vector = invariant_vector(H)
    return {
        'presentation': H.algebra.presentation.describe(),
        'frame': H.frame_labels(),
        'equation': str(equation),
        'hilbert': list(vector.hilbert),
        'embedding_dim': vector.embedding_dim,
    }


def cmd_two_actions(args, report: Report) -> int:
    _, H = _load_pair(args)
    result = two_actions(H, order=args.order)
    _fill_pair(report, H)
    base_equation = hypersurface_equation(result.base)
    report.details['base'] = _pair_details(result.base)
    report.details['first'] = _pair_details(result.first)
    report.details['second'] = _pair_details(result.second)
    report.details['shrunk_generator'] = str(result.shrink.distinguished)
    report.details['added_variables'] = result.added
    report.certificates.append(result.certificate)
    for label, pair in (('first', result.first), ('second', result.second)):
        _, kept = reduce_hpair_with_coordinates(pair)
        cone = check_cone(hypersurface_equation(pair), base_equation, kept)
        report.certificates.append(f"{label} is a cone over the base: {cone}")
    return EXIT_OK


def cmd_shrink(args, report: Report) -> int:
    pf, A = _load(args)
    result = shrink_generators(pf.relations, order=args.order, cap=args.max_degree)
    shrunk = build_algebra(Presentation(pf.variables, result.relations, args.max_degree))
    _fill_algebra(report, shrunk)
    report.details['original_dim'] = A.dim
    report.details['generators'] = [str(g) for g in result.generators]
    report.details['distinguished'] = str(result.distinguished)
    report.details['relations'] = [str(r) for r in result.relations]
    report.details['order'] = list(result.order)
    report.certificates.append(
        f"{result.distinguished} not in the shrunken ideal (degree {result.certificate_degree})"
    )
    report.certificates.append(f"dimension {A.dim} -> {shrunk.dim}")
    return EXIT_OK


def cmd_addvar(args, report: Report) -> int:
    _, H = _load_pair(args)
    bigger = add_variable_pair(H)
    _fill_pair(report, bigger)
    report.details['presentation'] = bigger.algebra.presentation.describe()
    report.certificates.append(
        f"embedding dims {invariant_vector(H).embedding_dim} -> {invariant_vector(bigger).embedding_dim}"
    )
    return EXIT_OK


def _family_line(n: int, d: int, cap: int) -> tuple[str, bool]:
    checks = family_checks(family_pair(n, d, cap), n, d)
    failed = [name for name, ok in checks.items() if not ok]
    return f"n={n} d={d}: " + ("ok" if not failed else "FAILED " + ", ".join(failed)), not failed


def cmd_family(args, report: Report) -> int:
    if args.sweep is not None:
        lines = []
        all_ok = True
        for n in range(2, args.sweep + 1):
            for d in range(2, n + 1):
                line, ok = _family_line(n, d, args.max_degree)
                lines.append(line)
                all_ok = all_ok and ok
        report.certificates.extend(lines)
        report.details['cases'] = len(lines)
        return EXIT_OK if all_ok else EXIT_DOMAIN_ERROR

    spec = family_spec(args.n, args.d)
    H = family_pair(args.n, args.d, args.max_degree)
    _fill_pair(report, H)
    report.details['presentation'] = H.algebra.presentation.describe()
    report.details['branch'] = spec.branch
    report.details['k'] = spec.k
    checks = family_checks(H, args.n, args.d)
    report.certificates.extend(f"{name}: {ok}" for name, ok in checks.items())
    return EXIT_OK if all(checks.values()) else EXIT_DOMAIN_ERROR


def cmd_census(args, report: Report) -> int:
    matched = 0
    entries = {}
    for entry in catalog6():
        verdict = verify_census(entry, seed=args.seed, samples=args.samples)
        matched += verdict.ok
        entries[entry.name] = {
            'equation': verdict.equation,
            'degree': verdict.degree,
            'equation_matches': verdict.equation_matches,
            'gorenstein': verdict.gorenstein,
            'nondegenerate': verdict.nondegenerate,
            'singular_locus': [r.verdict for r in verdict.singularity],
            'locus_matches': verdict.locus_matches,
        }
        report.certificates.append(f"{entry.name}: {'match' if verdict.ok else 'MISMATCH'}")
    report.details['entries'] = entries
    report.details['matched'] = f"{matched}/{len(entries)}"
    return EXIT_OK if matched == len(entries) else EXIT_DOMAIN_ERROR


def cmd_member(args, report: Report) -> int:
    pf = load_presentation_file(args.file)
    f = parse_poly(args.poly, pf.variables)
    member, degree = membership_certificate(f, pf.relations, args.max_degree)
    report.details['polynomial'] = str(f)
    report.details['member'] = member
    report.certificates.append(f"{'in' if member else 'not in'} the ideal (tested at degree {degree})")
    return EXIT_OK


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def render_text(console: Console, report: Report):
    table = Table(
        title=f"addact {report.command[0] if report.command else ''}",
        box=box.ROUNDED,
        header_style="bold white",
    )
    table.add_column("Invariant", style="bold cyan")
    table.add_column("Value")
    for key in ('dim', 'hilbert', 'socle_dim', 'gorenstein', 'nilpotency_degree',
                'nondegenerate', 'unique_action', 'degree'):
        value = getattr(report, key)
        if value is not None:
            table.add_row(key, escape(str(value)))
    if table.row_count:
        console.print(table)

    if report.equation is not None:
        console.print("[bold]Equation[/bold]")
        console.out(report.equation)
    if report.action:
        console.print("[bold]Action[/bold]")
        for row in report.action:
            console.out(row)
    if report.certificates:
        console.print("[bold]Certificates[/bold]")
        for line in report.certificates:
            console.out(line)
    for key in sorted(report.details):
        console.out(f"{key}: {json.dumps(_jsonable(report.details[key]), sort_keys=True)}")
    for warning in report.warnings:
        console.out(f"warning: {warning}")


def render_json(console: Console, report: Report):
    console.out(json.dumps(_jsonable(asdict(report)), sort_keys=True, indent=2))


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--format', choices=('text', 'json'), default='text', help='Output format')
    common.add_argument('--max-degree', type=int, default=DEFAULT_TRUNCATION_CAP,
                        help='Truncation cap for building algebras')
    common.add_argument('--seed', type=int, default=DEFAULT_SEED, help='Seed for sampled points')
    common.add_argument('--samples', type=int, default=DEFAULT_SAMPLE_COUNT, help='Number of sampled points')
    common.add_argument('--verbose', action='store_true', help='Debug logging on stderr')
    return common


def build_parser() -> argparse.ArgumentParser:
    """Build the argparse parser with subcommands."""
    parser = argparse.ArgumentParser(
        prog='addact',
        description='addact -- local algebras and additive actions on hypersurfaces',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=(
            "Examples:\n"
            '  python -m addact equation samples/example2_3.alg\n'
            '  python -m addact two-actions samples/example2_3.alg\n'
            '  python -m addact family 5 3\n'
            '  python -m addact census\n'
        ),
    )
    common = _common_options()
    subparsers = parser.add_subparsers(dest='command', help='Available commands')

    for name, help_text in (
        ('analyze', 'Build an algebra and report its invariants'),
        ('equation', 'Hypersurface equation of an H-pair'),
        ('action', 'Induced action formulas and fixed locus'),
        ('reduce', 'Reduce a pair by the largest ideal inside U'),
        ('addvar', 'Adjoin a variable w with x_i*w = w^2 = 0'),
    ):
        sub = subparsers.add_parser(name, parents=[common], help=help_text)
        sub.add_argument('file', help='Presentation file')

    for name, help_text in (
        ('two-actions', 'Two non-equivalent actions on a degenerate hypersurface'),
        ('shrink', 'Shrink the relation ideal by one dimension'),
    ):
        sub = subparsers.add_parser(name, parents=[common], help=help_text)
        sub.add_argument('file', help='Presentation file')
        sub.add_argument('--order', type=_parse_order, default=None,
                         help='Generator order as a permutation, e.g. 1,0')

    family_parser = subparsers.add_parser('family', parents=[common], help='Family pair for (n, d)')
    family_parser.add_argument('n', type=int, nargs='?', default=5, help='Projective dimension')
    family_parser.add_argument('d', type=int, nargs='?', default=3, help='Degree, 2 <= d <= n')
    family_parser.add_argument('--sweep', type=int, default=None, metavar='N',
                               help='Check every 2 <= d <= n <= N')

    subparsers.add_parser('census', parents=[common], help='Verify the dimension-6 census')

    member_parser = subparsers.add_parser('member', parents=[common], help='Ideal membership')
    member_parser.add_argument('poly', help='Polynomial to test')
    member_parser.add_argument('file', help='Presentation file')

    return parser


# ---------------------------------------------------------------------------
# Main entry point
# ---------------------------------------------------------------------------

DISPATCH: dict[str, Callable] = {
    'analyze': cmd_analyze,
    'equation': cmd_equation,
    'action': cmd_action,
    'reduce': cmd_reduce,
    'two-actions': cmd_two_actions,
    'shrink': cmd_shrink,
    'addvar': cmd_addvar,
    'family': cmd_family,
    'census': cmd_census,
    'member': cmd_member,
}


def run(argv: Optional[list[str]] = None) -> int:
    """Run one command and return its exit code."""
    argv = list(sys.argv[1:] if argv is None else argv)
    console = Console(highlight=False, soft_wrap=True)
    err_console = Console(stderr=True, highlight=False, soft_wrap=True)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    if args.command is None:
        err_console.print(Panel(
            "[bold]Local algebras and additive actions[/bold]\n\n"
            "Build Artinian local algebras, synthesize hypersurface equations\n"
            "and compare induced additive actions.",
            title="[bold cyan]addact[/bold cyan]",
            border_style="cyan",
            padding=(1, 2),
        ))
        parser.print_help(sys.stderr)
        return EXIT_USAGE

    report = Report(command=argv)
    handlers = _install_logging(report, args.verbose, err_console)
    try:
        status = DISPATCH[args.command](args, report)
    except AddactError as exc:
        err_console.print(f"[red]Error:[/red] {type(exc).__name__}: {escape(str(exc))}")
        return EXIT_DOMAIN_ERROR
    except OSError as exc:
        err_console.print(f"[red]Error:[/red] {escape(str(exc))}")
        return EXIT_USAGE
    except KeyboardInterrupt:
        err_console.print("\n[dim]Interrupted.[/dim]")
        return 130
    finally:
        _remove_logging(handlers)

    if args.format == 'json':
        render_json(console, report)
    else:
        render_text(console, report)
    return status


def main():
    """CLI entry point."""
    sys.exit(run(sys.argv[1:]))
