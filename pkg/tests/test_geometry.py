"""Tests for polynomial-side checks on hypersurface equations.

Tests verify:
- essential_variables: rank of the first partials; on pairs it equals
  dim A minus the dimension of the largest ideal inside U
- LinearSubspace: coordinate subspaces, parametrization, rank checks
- verify_singular_subspace: smooth quadrics, cones, non-singular subspaces
- check_invariance / check_cone
"""
import pytest

from addact.calc.artin import largest_ideal_in
from addact.calc.exactpoly import Poly, parse_poly
from addact.errors import DimensionMismatch, IndexOutOfRange, ZeroPolynomial
from addact.models import ambient_names
from addact.pairs.construct import add_variable_pair, two_actions
from addact.pairs.families import CENSUS_NAMES, census_pair, family_pair
from addact.pairs.geometry import (
    LinearSubspace,
    check_cone,
    check_invariance,
    essential_variables,
    verify_singular_subspace,
)
from addact.pairs.hpair import ActionMatrix, action_matrix, hypersurface_equation, reduce_hpair
from tests.conftest import EXAMPLE_EQUATION


def z(text, count):
    return parse_poly(text, ambient_names(count))


CONIC = z("z0*z2 - z1^2", 3)
CONE = z("z0*z3 - z1^2", 4)


class TestEssentialVariables:
    """Test the number of variables after a linear change of coordinates."""

    def test_running_example(self):
        assert essential_variables(z(EXAMPLE_EQUATION, 6)) == 5

    def test_product(self):
        assert essential_variables(z("z0*z1", 3)) == 2

    def test_hidden_linear_change(self):
        """(z0 + z1)^2 needs one variable."""
        assert essential_variables(z("z0^2 + 2*z0*z1 + z1^2", 2)) == 1

    def test_zero(self):
        with pytest.raises(ZeroPolynomial):
            essential_variables(Poly.zero(ambient_names(3)))

    @pytest.mark.parametrize('build', [
        lambda H: H,
        reduce_hpair,
        add_variable_pair,
        lambda H: add_variable_pair(add_variable_pair(reduce_hpair(H))),
        lambda H: two_actions(H).second,
    ], ids=['example', 'reduced', 'added', 'added-twice', 'shrunk'])
    def test_drop_by_largest_ideal(self, example_pair, build):
        """The equation loses one variable per dimension of the largest ideal inside U."""
        H = build(example_pair)
        J = largest_ideal_in(H.algebra, H.U)
        assert essential_variables(hypersurface_equation(H)) == H.size - J.dim

    @pytest.mark.parametrize('name', CENSUS_NAMES)
    def test_census_uses_every_variable(self, census, name):
        H = census_pair(census[name])
        assert essential_variables(hypersurface_equation(H)) == H.size

    @pytest.mark.parametrize('n, d', [(4, 4), (5, 3), (5, 4), (7, 4), (8, 2)])
    def test_family_uses_every_variable(self, n, d):
        H = family_pair(n, d)
        assert essential_variables(hypersurface_equation(H)) == H.size


class TestLinearSubspace:
    """Test parametrized linear subspaces."""

    def test_from_vanishing(self):
        L = LinearSubspace.from_vanishing(4, (0, 1))
        assert L.dim == 2
        assert [str(p) for p in L.parametrization()] == ['0', '0', 's1', 's2']

    def test_point(self):
        L = LinearSubspace.point((0, 0, 1))
        assert L.dim == 1
        assert L.ambient == 3

    def test_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            LinearSubspace.from_vanishing(3, (3,))

    def test_dependent_columns(self):
        with pytest.raises(DimensionMismatch):
            LinearSubspace(2, ((1, 1), (2, 2)))


class TestSingularSubspace:
    """Test the Jacobian check along a subspace."""

    def test_smooth_conic(self):
        report = verify_singular_subspace(CONIC, None, samples=20)
        assert report.verdict == "normal (smooth)"
        assert report.smooth_samples == 20

    def test_not_singular_along(self):
        """The conic is smooth at (0:0:1)."""
        report = verify_singular_subspace(CONIC, LinearSubspace.point((0, 0, 1)))
        assert not report.all_vanish
        assert report.verdict == "not singular along L"

    def test_cone_vertex(self):
        """z0*z3 - z1^2 is a cone with vertex (0:0:1:0), codimension 2."""
        vertex = LinearSubspace.from_vanishing(4, (0, 1, 3))
        report = verify_singular_subspace(CONE, vertex, samples=20)
        assert report.all_vanish
        assert report.codimension == 2
        assert report.verdict == "codimension of verified locus: 2"
        assert verify_singular_subspace(CONE, vertex, exhaustive=True, samples=20).verdict == "normal"

    def test_codimension_one(self):
        """The cuspidal cubic is singular at (0:0:1), a point of a curve."""
        f = z("z0^2*z2 - z1^3", 3)
        cusp = LinearSubspace.from_vanishing(3, (0, 1))
        report = verify_singular_subspace(f, cusp, exhaustive=True, samples=10)
        assert report.all_vanish
        assert report.verdict == "not normal"

    def test_same_seed_same_samples(self):
        first = verify_singular_subspace(CONE, None, seed=7, samples=15)
        second = verify_singular_subspace(CONE, None, seed=7, samples=15)
        assert first == second

    def test_degenerate_quadric_not_smooth(self):
        """A quadric cone never gets the smooth verdict."""
        report = verify_singular_subspace(CONE, None, samples=10)
        assert report.verdict == "smoothness not established"

    def test_ambient_mismatch(self):
        with pytest.raises(DimensionMismatch):
            verify_singular_subspace(CONIC, LinearSubspace.point((0, 0, 0, 1)))


class TestInvarianceAndCones:
    """Test invariance under an action and cone structure."""

    def test_example_invariant(self, example_pair):
        assert check_invariance(hypersurface_equation(example_pair), action_matrix(example_pair))

    def test_shear(self):
        params = ('t1',)
        one = Poly.constant(1, params)
        M = ActionMatrix(((one, Poly.zero(params)), (Poly.variable('t1', params), one)), params)
        assert check_invariance(z("z0", 2), M)
        assert not check_invariance(z("z1", 2), M)

    def test_size_mismatch(self, example_pair):
        with pytest.raises(DimensionMismatch):
            check_invariance(CONIC, action_matrix(example_pair))

    def test_cone(self):
        assert check_cone(CONE, CONIC, (0, 1, 3))
        assert not check_cone(CONE, CONIC, (0, 1, 2))

    def test_cone_indices(self):
        with pytest.raises(IndexOutOfRange):
            check_cone(CONE, CONIC, (0, 0, 3))
