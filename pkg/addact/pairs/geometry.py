"""Polynomial-side checks on hypersurface equations.

Essential variables, Jacobian checks along linear subspaces, invariance of
an equation under an action, and cone structure.
"""

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from ..calc.exactpoly import Poly, embed, evaluate, partial_derivative, substitute
from ..calc.linalg import Vector, rank
from ..errors import DimensionMismatch, IndexOutOfRange, ZeroPolynomial
from ..models import (
    DEFAULT_SAMPLE_COUNT,
    DEFAULT_SEED,
    SAMPLE_DENOMINATOR_BOUND,
    SAMPLE_NUMERATOR_BOUND,
    SUBSPACE_PREFIX,
    SingularityReport,
)
from .hpair import ActionMatrix, HomogPoly

logger = logging.getLogger(__name__)

Form = Union[HomogPoly, Poly]


def _poly(f: Form) -> Poly:
    return f.poly if isinstance(f, HomogPoly) else f


# ---------------------------------------------------------------------------
# Linear subspaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LinearSubspace:
    """Subspace of K^(n+1) parametrized as z = sum_j s_j * columns[j]."""
    ambient: int
    columns: tuple[Vector, ...]

    def __post_init__(self):
        cols = tuple(tuple(Fraction(x) for x in c) for c in self.columns)
        object.__setattr__(self, 'columns', cols)
        for c in cols:
            if len(c) != self.ambient:
                raise DimensionMismatch(f"Column of length {len(c)} in K^{self.ambient}")
        if cols and rank(cols, self.ambient) != len(cols):
            raise DimensionMismatch("Parametrization does not have full rank")

    @classmethod
    def from_vanishing(cls, ambient: int, indices: Sequence[int]) -> 'LinearSubspace':
        """The coordinate subspace {z_i = 0 for i in indices}."""
        for i in indices:
            if not 0 <= i < ambient:
                raise IndexOutOfRange(f"Coordinate index {i} out of range for {ambient} coordinates")
        vanishing = set(indices)
        columns = [
            tuple(Fraction(int(i == j)) for j in range(ambient))
            for i in range(ambient) if i not in vanishing
        ]
        return cls(ambient, tuple(columns))

    @classmethod
    def point(cls, coords: Sequence) -> 'LinearSubspace':
        return cls(len(coords), (tuple(coords),))

    @property
    def dim(self) -> int:
        return len(self.columns)

    def parametrization(self) -> list[Poly]:
        """z_i as linear forms in s1..s_r."""
        names = tuple(f"{SUBSPACE_PREFIX}{j}" for j in range(1, self.dim + 1))
        out = []
        for i in range(self.ambient):
            terms = {}
            for j, col in enumerate(self.columns):
                if col[i]:
                    mono = [0] * self.dim
                    mono[j] = 1
                    terms[tuple(mono)] = col[i]
            out.append(Poly(names, terms))
        return out


# ---------------------------------------------------------------------------
# Essential variables
# ---------------------------------------------------------------------------

def essential_variables(f: Form) -> int:
    """Minimal number of variables of f after a linear change of coordinates.

    This is the dimension of the span of the first partial derivatives.

    Raises:
        ZeroPolynomial: f is zero.
    """
    p = _poly(f)
    if not p:
        raise ZeroPolynomial("The zero form has no essential variables")
    partials = [partial_derivative(p, i) for i in range(len(p.variables))]
    monos = sorted({m for q in partials for m in q.terms})
    if not monos:
        return 0
    rows = [[q.coefficient(m) for m in monos] for q in partials]
    return rank(rows, len(monos))


# ---------------------------------------------------------------------------
# Singular subspaces
# ---------------------------------------------------------------------------

def _sample_value(rng: random.Random) -> Fraction:
    return Fraction(
        rng.randint(-SAMPLE_NUMERATOR_BOUND, SAMPLE_NUMERATOR_BOUND),
        rng.randint(1, SAMPLE_DENOMINATOR_BOUND),
    )


def _sample_point(p: Poly, rng: random.Random) -> Optional[list[Fraction]]:
    """A point of {f = 0} with z0 = 1, solving for the last coordinate."""
    n = len(p.variables)
    point = [Fraction(1)] + [_sample_value(rng) for _ in range(n - 2)]
    # f(point, y) = a*y + b when f is linear in the last coordinate
    a = b = Fraction(0)
    for mono, coeff in p.terms.items():
        value = coeff
        for v, e in zip(point, mono[:-1]):
            if e:
                value *= v ** e
        last = mono[-1]
        if last == 0:
            b += value
        elif last == 1:
            a += value
        else:
            return None
    if not a:
        return None
    return point + [-b / a]


def _sample_smoothness(p: Poly, seed: int, samples: int) -> tuple[int, list[str]]:
    rng = random.Random(seed)
    partials = [partial_derivative(p, i) for i in range(len(p.variables))]
    smooth = 0
    failures = []
    for _ in range(samples):
        point = _sample_point(p, rng)
        if point is None:
            failures.append("could not solve for the last coordinate")
            continue
        if any(evaluate(q, point) for q in partials):
            smooth += 1
        else:
            failures.append("singular sample at (" + ", ".join(str(v) for v in point) + ")")
    return smooth, failures


def verify_singular_subspace(
    f: Form,
    L: Optional[LinearSubspace],
    exhaustive: bool = False,
    seed: int = DEFAULT_SEED,
    samples: int = DEFAULT_SAMPLE_COUNT,
) -> SingularityReport:
    """Check that every partial of f vanishes on L and sample smoothness off L.

    Args:
        f: Equation of a hypersurface in P^n.
        L: Candidate singular subspace, or None for an expected empty locus.
        exhaustive: L is known to be the whole singular locus, so a
            normality verdict may be given.
        seed: Seed for the sampled points.
        samples: Number of sampled points.

    Returns:
        SingularityReport. The codimension is that of P(L) inside the
        hypersurface, (n - 1) - (r - 1).
    """
    p = _poly(f)
    n = len(p.variables) - 1
    smooth, failures = _sample_smoothness(p, seed, samples)
    logger.debug("%d of %d sampled points are smooth", smooth, samples)

    if L is None:
        full_quadric = p.degree == 2 and essential_variables(p) == n + 1
        if full_quadric and smooth == samples:
            verdict = "normal (smooth)"
        else:
            verdict = "smoothness not established"
        return SingularityReport(False, n, samples, smooth, tuple(failures), verdict)

    if L.ambient != n + 1:
        raise DimensionMismatch(f"Subspace of K^{L.ambient} for a form in {n + 1} variables")
    assignment = L.parametrization()
    all_vanish = all(
        not substitute(partial_derivative(p, i), assignment) for i in range(n + 1)
    )
    codimension = n - L.dim
    if not all_vanish:
        verdict = "not singular along L"
    elif exhaustive:
        verdict = "normal" if codimension >= 2 else "not normal"
    else:
        verdict = f"codimension of verified locus: {codimension}"
    return SingularityReport(all_vanish, codimension, samples, smooth, tuple(failures), verdict)


# ---------------------------------------------------------------------------
# Invariance and cones
# ---------------------------------------------------------------------------

def check_invariance(f: Form, M: ActionMatrix) -> bool:
    """True iff f(rho(t) z) = f(z) identically in t and z."""
    p = _poly(f)
    if M.size != len(p.variables):
        raise DimensionMismatch(f"{M.size}x{M.size} action on a form in {len(p.variables)} variables")
    rows = M.rows(p.variables)
    return substitute(p, rows) == embed(p, rows[0].variables)


def check_cone(f_big: Form, f_small: Form, kept: Sequence[int]) -> bool:
    """True iff f_big only uses the kept coordinates and equals f_small on them.

    Raises:
        IndexOutOfRange: A kept index is out of range or repeated.
    """
    big, small = _poly(f_big), _poly(f_small)
    nbig = len(big.variables)
    if len(set(kept)) != len(kept) or any(not 0 <= i < nbig for i in kept):
        raise IndexOutOfRange(f"Kept indices {list(kept)} are not distinct indices below {nbig}")
    if len(kept) != len(small.variables):
        return False
    dropped = [i for i in range(nbig) if i not in set(kept)]
    if any(big.uses(i) for i in dropped):
        return False
    renamed = {tuple(mono[i] for i in kept): c for mono, c in big.terms.items()}
    return renamed == dict(small.terms)

