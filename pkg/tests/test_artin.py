"""Tests for finite-dimensional local algebras.

Tests verify:
- build_algebra: basis, stabilization, presentation errors
- normal_form, mul_elements, structure constants
- exp_nilpotent / log_unipotent: inverse to each other, closed forms
- m_power, socle, hilbert_function, is_gorenstein
- largest_ideal_in, is_ideal, generates_algebra
- quotient_by_ideal: rebuilt presentations, elimination of redundant generators
"""
from fractions import Fraction

import pytest
from hypothesis import given

from addact.calc.artin import (
    Element,
    Subspace,
    basis_element,
    build_algebra,
    describe_subspace,
    element,
    exp_nilpotent,
    generates_algebra,
    hilbert_function,
    is_gorenstein,
    is_ideal,
    largest_ideal_in,
    log_unipotent,
    m_power,
    mul_elements,
    normal_form,
    parametric_element,
    quotient_by_ideal,
    socle,
    structure_constants_consistent,
    unit,
)
from addact.calc.exactpoly import Poly, parse_poly
from addact.errors import (
    DimensionMismatch,
    NonzeroConstantTerm,
    NotAnIdeal,
    NotInMaximalIdeal,
    NotNilpotent,
    QuotientIsZero,
    TruncationCapExceeded,
    UnitPartNotOne,
)
from addact.models import Presentation, parameter_names
from addact.pairs.families import CENSUS_NAMES, catalog6
from tests.conftest import xy
from tests.strategies import nilpotent_elements


EXAMPLE = build_algebra(Presentation(('x', 'y'), (xy("x^4"), xy("x^2*y"), xy("x^3 - y^2"))))
CENSUS_ALGEBRAS = {entry.name: build_algebra(entry.presentation) for entry in catalog6()}


def unit_vectors(A, *indices):
    return [basis_element(A, i).coords for i in indices]


class TestBuildAlgebra:
    """Test construction from a presentation."""

    def test_basis(self, example_algebra):
        assert example_algebra.dim == 6
        assert example_algebra.basis_labels() == ['1', 'x', 'y', 'x^2', 'x*y', 'x^3']

    def test_y_squared_reduces_to_x_cubed(self, example_algebra):
        """y^2 = x^3 in the algebra, and x^3 is basis element 5."""
        assert normal_form(example_algebra, xy("y^2")) == basis_element(example_algebra, 5)

    def test_high_degree_is_zero(self, example_algebra):
        assert not any(normal_form(example_algebra, xy("x^2*y^3 + x^7")).coords)

    def test_chain(self):
        x = Poly.variable('x', ('x',))
        A = build_algebra(Presentation(('x',), (x ** 2,)))
        assert A.dim == 2
        assert A.nilpotency_degree == 1

    def test_linear_relation_eliminates_generator(self):
        A = build_algebra(Presentation(('x', 'y'), (xy("x - y^2"), xy("y^3"))))
        assert A.dim == 3
        assert A.basis_labels() == ['1', 'y', 'y^2']

    def test_not_primary(self):
        """(x*y) has an infinite quotient."""
        with pytest.raises(TruncationCapExceeded):
            build_algebra(Presentation(('x', 'y'), (xy("x*y"),), truncation_cap=6))

    def test_constant_term(self):
        with pytest.raises(NonzeroConstantTerm):
            build_algebra(Presentation(('x', 'y'), (xy("x^2 + 1"), xy("y^2"))))

    def test_structure_constants(self, example_algebra):
        assert structure_constants_consistent(example_algebra)

    def test_describe(self, example_algebra):
        assert example_algebra.describe().startswith("K[x, y]/(x^4, x^2*y, x^3 - y^2)")


class TestProducts:
    """Test multiplication through structure constants."""

    def test_x_times_x_squared(self, example_algebra):
        A = example_algebra
        product = mul_elements(A, basis_element(A, 1), basis_element(A, 3))
        assert product == basis_element(A, 5)

    def test_x_times_xy_is_zero(self, example_algebra):
        A = example_algebra
        assert not any(mul_elements(A, basis_element(A, 1), basis_element(A, 4)).coords)

    def test_unit(self, example_algebra):
        A = example_algebra
        e = basis_element(A, 2)
        assert mul_elements(A, unit(A), e) == e

    def test_y_squared(self, example_algebra):
        A = example_algebra
        y = element(A, [0, 0, 1, 0, 0, 0])
        assert mul_elements(A, y, y) == basis_element(A, 5)

    def test_length_mismatch(self, example_algebra):
        with pytest.raises(DimensionMismatch):
            mul_elements(example_algebra, Element((1, 0)), unit(example_algebra))
        with pytest.raises(DimensionMismatch):
            element(example_algebra, [1, 0])


class TestExpLog:
    """Test exp on nilpotents and ln on unipotents."""

    @given(nilpotent_elements(6))
    def test_log_exp(self, u):
        assert log_unipotent(EXAMPLE, exp_nilpotent(EXAMPLE, u)) == u

    @given(nilpotent_elements(6))
    def test_exp_log(self, u):
        one_plus = unit(EXAMPLE) + u
        assert exp_nilpotent(EXAMPLE, log_unipotent(EXAMPLE, one_plus)) == one_plus

    @pytest.mark.parametrize('name', CENSUS_NAMES)
    @given(u=nilpotent_elements(6))
    def test_inverse_on_census(self, name, u):
        A = CENSUS_ALGEBRAS[name]
        assert log_unipotent(A, exp_nilpotent(A, u)) == u
        one_plus = unit(A) + u
        assert exp_nilpotent(A, log_unipotent(A, one_plus)) == one_plus

    @pytest.mark.parametrize('name', CENSUS_NAMES)
    @given(u=nilpotent_elements(6), v=nilpotent_elements(6))
    def test_exp_of_sum(self, name, u, v):
        """Nilpotents commute, so exp(u + v) = exp(u) exp(v)."""
        A = CENSUS_ALGEBRAS[name]
        assert exp_nilpotent(A, u + v) == mul_elements(A, exp_nilpotent(A, u), exp_nilpotent(A, v))

    @given(nilpotent_elements(6), nilpotent_elements(6))
    def test_exp_of_sum_degenerate(self, u, v):
        product = mul_elements(EXAMPLE, exp_nilpotent(EXAMPLE, u), exp_nilpotent(EXAMPLE, v))
        assert exp_nilpotent(EXAMPLE, u + v) == product

    def test_log_closed_form(self, example_algebra):
        """x^3 coordinate of ln(1 + t1 x + t2 y + t3 x^2 + t4 xy + t5 x^3)."""
        A = example_algebra
        params = parameter_names(5)
        ts = [Poly.variable(t, params) for t in params]
        w = parametric_element(A, ts, unit_vectors(A, 1, 2, 3, 4, 5))
        one = Element(tuple(Poly.constant(c, params) for c in unit(A).coords))
        logarithm = log_unipotent(A, one + w)
        expected = parse_poly("t5 - t1*t3 - 1/2*t2^2 + 1/3*t1^3", params)
        assert logarithm.coords[5] == expected
        assert logarithm.coords[1] == ts[0]

    def test_exp_chain(self):
        """exp(x) in K[x]/(x^4) is 1 + x + x^2/2 + x^3/6."""
        x = Poly.variable('x', ('x',))
        A = build_algebra(Presentation(('x',), (x ** 4,)))
        result = exp_nilpotent(A, basis_element(A, 1))
        assert result.coords == (1, 1, Fraction(1, 2), Fraction(1, 6))

    def test_exp_needs_nilpotent(self, example_algebra):
        with pytest.raises(NotNilpotent):
            exp_nilpotent(example_algebra, unit(example_algebra))

    def test_log_needs_unipotent(self, example_algebra):
        A = example_algebra
        with pytest.raises(UnitPartNotOne):
            log_unipotent(A, unit(A).scale(2))


class TestInvariants:
    """Test powers of m, socle and Hilbert function."""

    def test_hilbert(self, example_algebra):
        assert hilbert_function(example_algebra) == [1, 2, 2, 1]

    def test_m_powers(self, example_algebra):
        A = example_algebra
        assert [m_power(A, j).dim for j in range(5)] == [6, 5, 3, 1, 0]

    def test_socle(self, example_algebra):
        A = example_algebra
        assert describe_subspace(A, socle(A)) == ['x*y', 'x^3']
        assert not is_gorenstein(A)

    def test_socle_meets_u(self, example_algebra):
        """Only x*y of the socle lies in U."""
        A = example_algebra
        U = Subspace.span(unit_vectors(A, 1, 2, 3, 4), A.dim)
        assert U.intersection_dim(socle(A)) == 1
        assert (U + socle(A)).dim == 5

    def test_chain_is_gorenstein(self):
        x = Poly.variable('x', ('x',))
        A = build_algebra(Presentation(('x',), (x ** 5,)))
        assert is_gorenstein(A)
        assert socle(A) == m_power(A, 4)


class TestIdeals:
    """Test ideal detection and quotients."""

    def test_largest_ideal_in_u(self, example_algebra):
        A = example_algebra
        U = Subspace.span(unit_vectors(A, 1, 2, 3, 4), A.dim)
        J = largest_ideal_in(A, U)
        assert describe_subspace(A, J) == ['x*y']
        assert is_ideal(A, J)

    def test_largest_ideal_needs_maximal_ideal(self, example_algebra):
        A = example_algebra
        with pytest.raises(NotInMaximalIdeal):
            largest_ideal_in(A, Subspace.span(unit_vectors(A, 0, 1), A.dim))

    def test_generates(self, example_algebra):
        A = example_algebra
        assert generates_algebra(A, Subspace.span(unit_vectors(A, 1, 2), A.dim))
        assert not generates_algebra(A, Subspace.span(unit_vectors(A, 3), A.dim))

    def test_quotient(self, example_algebra):
        A = example_algebra
        J = Subspace.span(unit_vectors(A, 4), A.dim)
        Q, projection = quotient_by_ideal(A, J)
        assert Q.dim == 5
        assert Q.basis_labels() == ['1', 'x', 'y', 'x^2', 'x^3']
        assert hilbert_function(Q) == [1, 2, 1, 1]
        assert is_gorenstein(Q)
        assert projection(basis_element(A, 4).coords) == (0, 0, 0, 0, 0)
        assert structure_constants_consistent(Q)

    def test_quotient_by_non_ideal(self, example_algebra):
        A = example_algebra
        with pytest.raises(NotAnIdeal):
            quotient_by_ideal(A, Subspace.span(unit_vectors(A, 1), A.dim))

    def test_quotient_by_everything(self, example_algebra):
        A = example_algebra
        with pytest.raises(QuotientIsZero):
            quotient_by_ideal(A, Subspace.whole(A.dim))

    def test_quotient_presentation_rebuilds(self, example_algebra):
        A = example_algebra
        J = Subspace.span(unit_vectors(A, 4), A.dim)
        Q, _ = quotient_by_ideal(A, J)
        assert build_algebra(Q.presentation).dim == A.dim - J.dim

    def test_chain_quotient(self):
        """K[x]/(x^6) modulo x^5 is the chain algebra K[x]/(x^5)."""
        x = Poly.variable('x', ('x',))
        A = build_algebra(Presentation(('x',), (x ** 6,)))
        Q, _ = quotient_by_ideal(A, Subspace.span(unit_vectors(A, 5), A.dim))
        chain = build_algebra(Presentation(('x',), (x ** 5,)))
        assert Q.dim == 5
        assert Q.basis_labels() == chain.basis_labels()
        assert Q.products == chain.products

    def test_adjoined_variable_eliminated(self):
        """Dividing out w leaves a presentation over x, y with no linear relation."""
        names = ('x', 'y', 'w')
        relations = [parse_poly(t, names) for t in ("x*y", "x^3 - y^2", "x*w", "y*w", "w^2")]
        A = build_algebra(Presentation(names, relations))
        assert A.basis_labels() == ['1', 'x', 'y', 'w', 'x^2', 'x^3']
        Q, projection = quotient_by_ideal(A, Subspace.span(unit_vectors(A, 3), A.dim))
        assert Q.generators == ('x', 'y')
        assert Q.basis_labels() == ['1', 'x', 'y', 'x^2', 'x^3']
        assert all(r.min_degree >= 2 for r in Q.presentation.relations)
        assert build_algebra(Q.presentation).dim == A.dim - 1
        assert projection(basis_element(A, 3).coords) == (0, 0, 0, 0, 0)
        assert projection(basis_element(A, 5).coords) == (0, 0, 0, 0, 1)
        assert structure_constants_consistent(Q)

    def test_linear_generator_replaced(self):
        """Modulo x - y^2 the generator x is rewritten as y^2."""
        names = ('x', 'y')
        A = build_algebra(Presentation(names, (xy("x^2"), xy("x*y"), xy("y^3"))))
        assert A.basis_labels() == ['1', 'x', 'y', 'y^2']
        J = Subspace.span([normal_form(A, xy("x - y^2")).coords], A.dim)
        Q, projection = quotient_by_ideal(A, J)
        assert Q.generators == ('y',)
        assert Q.basis_labels() == ['1', 'y', 'y^2']
        assert projection(basis_element(A, 1).coords) == (0, 0, 1)
