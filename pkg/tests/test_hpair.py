"""Tests for H-pairs, hypersurface equations and induced actions.

Tests verify:
- make_hpair / hpair_from_polys: validation errors, default complement
- hypersurface_equation: the running example, degree and monic term
- action_matrix: unipotence, identity at t = 0, group law rho(t)rho(s) = rho(t+s)
- is_nondegenerate / uniqueness_report
- reduce_hpair_with_coordinates: reduced frame and kept coordinates
- invariant_vector / compare_invariants
"""
import pytest
from hypothesis import given
from hypothesis import strategies as st

from addact.calc.artin import Subspace, basis_element, build_algebra
from addact.calc.exactpoly import Poly, evaluate, format_poly, parse_poly
from addact.calc.linalg import mat_mul
from addact.errors import (
    ComplementInU,
    DimensionMismatch,
    DoesNotGenerate,
    IdealNotInsideU,
    InternalInvariantViolation,
    NotInMaximalIdeal,
    WrongCodimension,
)
from addact.fileformat import load_presentation_file
from addact.models import NOT_UNIQUE_VERDICT, UNIQUE_VERDICT, InvariantVector, Presentation, ambient_names
from addact.pairs.hpair import (
    ActionMatrix,
    HomogPoly,
    action_matrix,
    action_rows,
    compare_invariants,
    fixed_locus,
    hpair_from_polys,
    hypersurface_equation,
    invariant_vector,
    is_nondegenerate,
    make_hpair,
    reduce_hpair,
    reduce_hpair_with_coordinates,
    uniqueness_report,
)
from tests.conftest import EXAMPLE_EQUATION, SAMPLES, xy
from tests.strategies import rationals

_EXAMPLE_FILE = load_presentation_file(SAMPLES / "example2_3.alg")
EXAMPLE_ACTION = action_matrix(
    hpair_from_polys(build_algebra(_EXAMPLE_FILE.presentation()), _EXAMPLE_FILE.u_polys, _EXAMPLE_FILE.complement)
)
PARAMETERS = st.lists(rationals(), min_size=4, max_size=4)


def polys(*texts):
    return [xy(t) for t in texts]


def at(M, values):
    return [[evaluate(entry, values) for entry in row] for row in M.entries]


class TestMakeHPair:
    """Test validation of (A, U)."""

    def test_frame(self, example_pair):
        assert example_pair.size == 6
        assert example_pair.frame_labels() == ['1', 'x', 'y', 'x^2', 'x*y', 'x^3']
        assert example_pair.coordinate_names() == ambient_names(6)

    def test_default_complement(self, example_algebra):
        """Without e the grlex-largest basis monomial outside U is used."""
        H = hpair_from_polys(example_algebra, polys("x", "y", "x^2", "x*y"))
        assert H.frame_labels()[-1] == 'x^3'

    def test_wrong_codimension(self, example_algebra):
        with pytest.raises(WrongCodimension):
            hpair_from_polys(example_algebra, polys("x", "y"))

    def test_does_not_generate(self, example_algebra):
        """<x, x^2, x*y, x^3> never produces y."""
        with pytest.raises(DoesNotGenerate):
            hpair_from_polys(example_algebra, polys("x", "x^2", "x*y", "x^3"), xy("y"))

    def test_not_in_maximal_ideal(self, example_algebra):
        with pytest.raises(NotInMaximalIdeal):
            hpair_from_polys(example_algebra, polys("1 + x", "y", "x^2", "x*y"))

    def test_complement_in_u(self, example_algebra):
        with pytest.raises(ComplementInU):
            hpair_from_polys(example_algebra, polys("x", "y", "x^2", "x*y"), xy("x + y"))

    def test_u_basis_order_kept(self, example_algebra):
        """A caller's basis of U fixes the coordinate order."""
        H = hpair_from_polys(example_algebra, polys("y", "x", "x*y", "x^2"), xy("x^3"))
        assert H.frame_labels() == ['1', 'y', 'x', 'x*y', 'x^2', 'x^3']


class TestHypersurfaceEquation:
    """Test the equation z0^D * pi(ln(1 + z/z0))."""

    def test_running_example(self, example_pair):
        f = hypersurface_equation(example_pair)
        assert str(f) == EXAMPLE_EQUATION
        assert f.degree == 3

    def test_monic_term(self, example_pair):
        """z0^(D-1)*z_{N-1} always has coefficient 1."""
        f = hypersurface_equation(example_pair)
        assert f.poly.coefficient((2, 0, 0, 0, 0, 1)) == 1

    def test_z4_absent(self, example_pair):
        """x*y spans the ideal inside U, so its coordinate never appears."""
        f = hypersurface_equation(example_pair)
        assert not f.poly.uses(4)

    def test_chain_quadric(self):
        """K[x]/(x^3) with U = <x>, e = x^2 gives z0*z2 - 1/2*z1^2."""
        x = Poly.variable('x', ('x',))
        A = build_algebra(Presentation(('x',), (x ** 3,)))
        H = make_hpair(A, Subspace.span([basis_element(A, 1).coords], 3))
        assert str(hypersurface_equation(H)) == "z0*z2 - 1/2*z1^2"

    def test_homogeneity_enforced(self):
        zs = ambient_names(2)
        with pytest.raises(InternalInvariantViolation):
            HomogPoly(parse_poly("z0^2 + z1", zs), 2)


class TestAction:
    """Test the induced action of G_a^(N-2)."""

    def test_unipotent(self, example_pair):
        M = action_matrix(example_pair)
        assert M.is_unipotent()
        assert M.parameters == ('t1', 't2', 't3', 't4')

    def test_identity_at_zero(self, example_pair):
        M = action_matrix(example_pair)
        assert M.at_zero() == [[int(i == j) for j in range(6)] for i in range(6)]

    def test_x_squared_row(self, example_pair):
        """z3 -> z3 + t1*z1 + (t3 + t1^2/2)*z0."""
        rows = action_rows(example_pair)
        names = rows[3].variables
        assert rows[3] == parse_poly("z3 + t1*z1 + t3*z0 + 1/2*t1^2*z0", names)

    def test_unit_row_fixed(self, example_pair):
        rows = action_rows(example_pair)
        assert format_poly(rows[0]) == "z0"

    def test_rows_length_checked(self, example_pair):
        with pytest.raises(DimensionMismatch):
            action_matrix(example_pair).rows(('z0', 'z1'))

    @given(PARAMETERS, PARAMETERS)
    def test_one_parameter_group(self, t, s):
        """rho(t) rho(s) = rho(t + s)."""
        M = EXAMPLE_ACTION
        combined = [a + b for a, b in zip(t, s)]
        assert mat_mul(at(M, t), at(M, s)) == at(M, combined)

    @given(PARAMETERS)
    def test_inverse(self, t):
        M = EXAMPLE_ACTION
        identity = [[int(i == j) for j in range(6)] for i in range(6)]
        assert mat_mul(at(M, t), at(M, [-a for a in t])) == identity

    def test_fixed_locus_is_socle(self, example_pair):
        """U generates m, so the fixed subspace is the socle."""
        assert fixed_locus(example_pair).dim == 2

    def test_shear(self):
        one = Poly.constant(1, ('t1',))
        M = ActionMatrix(((one, Poly.zero(('t1',))), (Poly.variable('t1', ('t1',)), one)), ('t1',))
        assert M.is_unipotent()
        assert format_poly(M.rows(('z0', 'z1'))[1]) == "z0*t1 + z1"


class TestDegeneracy:
    """Test non-degeneracy and the uniqueness verdict."""

    def test_example_is_degenerate(self, example_pair):
        assert not is_nondegenerate(example_pair)
        report = uniqueness_report(example_pair)
        assert report.verdict == NOT_UNIQUE_VERDICT
        assert not report.gorenstein
        assert not report.socle_complementary

    def test_reduced_is_nondegenerate(self, reduced_pair):
        report = uniqueness_report(reduced_pair)
        assert report.nondegenerate
        assert report.gorenstein
        assert report.socle_complementary
        assert report.verdict == UNIQUE_VERDICT


class TestReduce:
    """Test reduction by the largest ideal inside U."""

    def test_kept_coordinates(self, example_pair):
        reduced, kept = reduce_hpair_with_coordinates(example_pair)
        assert kept == (0, 1, 2, 3, 5)
        assert reduced.size == 5
        assert reduced.frame_labels() == ['1', 'x', 'y', 'x^2', 'x^3']

    def test_reduced_equation(self, reduced_pair):
        assert str(hypersurface_equation(reduced_pair)) == "z0^2*z4 - z0*z1*z3 - 1/2*z0*z2^2 + 1/3*z1^3"

    def test_nondegenerate_unchanged(self, reduced_pair):
        again, kept = reduce_hpair_with_coordinates(reduced_pair)
        assert again is reduced_pair
        assert kept == tuple(range(5))

    def test_ideal_outside_u(self, example_pair):
        A = example_pair.algebra
        socle_top = Subspace.span([basis_element(A, 5).coords], A.dim)
        with pytest.raises(IdealNotInsideU):
            reduce_hpair(example_pair, socle_top)


class TestInvariants:
    """Test the invariant vector and its comparison."""

    def test_example_vector(self, example_pair):
        assert invariant_vector(example_pair) == InvariantVector(
            dim=6, hilbert=(1, 2, 2, 1), socle_dim=2, embedding_dim=2,
            nilpotency_degree=3, gorenstein=False,
        )

    def test_embedding_dims_differ(self, example_pair, reduced_pair):
        first = invariant_vector(example_pair)
        second = invariant_vector(reduced_pair)
        assert compare_invariants(first, second) == "non-equivalent: dim 6 vs 5"

    def test_equal_vectors(self, example_pair):
        v = invariant_vector(example_pair)
        assert compare_invariants(v, v) == "inconclusive: invariant vectors agree"
