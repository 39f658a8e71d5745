"""Shared fixtures for addact tests.

Provides the running degenerate example K[x,y]/(x^4, x^2*y, x^3 - y^2) with
U = <x, y, x^2, x*y> and e = x^3, its reduction, and the dimension-6 census.
Hand-checked values:

    basis        1, x, y, x^2, x*y, x^3
    Hilbert      (1, 2, 2, 1)
    socle        <x*y, x^3>
    equation     z0^2*z5 - z0*z1*z3 - 1/2*z0*z2^2 + 1/3*z1^3
"""
from pathlib import Path

import pytest
from hypothesis import settings

from addact.calc.artin import build_algebra
from addact.calc.exactpoly import Poly, parse_poly
from addact.fileformat import load_presentation_file
from addact.pairs.families import catalog6
from addact.pairs.hpair import hpair_from_polys, reduce_hpair

settings.register_profile('addact', derandomize=True, deadline=None, max_examples=40)
settings.load_profile('addact')

SAMPLES = Path(__file__).parent.parent / 'samples'

EXAMPLE_EQUATION = "z0^2*z5 - z0*z1*z3 - 1/2*z0*z2^2 + 1/3*z1^3"
ADDED_VARIABLE_EQUATION = "z0^2*z5 - z0*z1*z4 - 1/2*z0*z2^2 + 1/3*z1^3"


def xy(text: str) -> Poly:
    """Parse a polynomial in x, y."""
    return parse_poly(text, ('x', 'y'))


@pytest.fixture
def example_file():
    return load_presentation_file(SAMPLES / 'example2_3.alg')


@pytest.fixture
def example_algebra(example_file):
    return build_algebra(example_file.presentation())


@pytest.fixture
def example_pair(example_file, example_algebra):
    return hpair_from_polys(example_algebra, example_file.u_polys, example_file.complement)


@pytest.fixture
def reduced_pair(example_pair):
    """(A_0, U_0) = (K[x,y]/(x^4, x^2*y, x^3 - y^2, x*y), <x, y, x^2>)."""
    return reduce_hpair(example_pair)


@pytest.fixture(scope='module')
def census():
    return {entry.name: entry for entry in catalog6()}
