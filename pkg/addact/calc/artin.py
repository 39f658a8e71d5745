"""Finite-dimensional local algebras over the rationals.

An algebra is built from a presentation K[x_1..x_k]/I by truncated linear
algebra: for growing D the span of {monomial * f_i, truncated below D} is
row-reduced inside the polynomials of degree < D. Once the quotient
dimension stops growing, m^D lies in I (locally) and the quotient by the
truncated span is the algebra. Elements are coordinate vectors on a
monomial basis; subspaces are kept in reduced row-echelon form so equal
subspaces compare equal.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..errors import (
    DimensionMismatch,
    InternalInvariantViolation,
    NonzeroConstantTerm,
    NotAnIdeal,
    NotInMaximalIdeal,
    NotNilpotent,
    QuotientIsZero,
    TruncationCapExceeded,
    UnitPartNotOne,
    VariableMismatch,
)
from ..models import Presentation
from .exactpoly import Monomial, Poly, format_poly, grlex_key, monomials_below, substitute
from .linalg import Vector, express_in_rref, nullspace, rref

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Truncated spans of an ideal
# ---------------------------------------------------------------------------

class MonomialEchelon:
    """Sparse echelon basis of a span of polynomials (as monomial -> coeff rows).

    Each stored row is keyed by its grlex-smallest monomial, normalized to
    coefficient 1 there. Eliminating a pivot only introduces larger
    monomials, so reduction always terminates.
    """

    def __init__(self):
        self.pivots: dict[Monomial, dict[Monomial, Fraction]] = {}

    def reduce(self, row: dict[Monomial, Fraction]) -> dict[Monomial, Fraction]:
        row = {m: c for m, c in row.items() if c}
        while True:
            hits = [m for m in row if m in self.pivots]
            if not hits:
                return row
            mono = min(hits, key=grlex_key)
            factor = row[mono]
            for m, c in self.pivots[mono].items():
                value = row.get(m, 0) - factor * c
                if value:
                    row[m] = value
                else:
                    row.pop(m, None)

    def insert(self, row: dict[Monomial, Fraction]) -> bool:
        reduced = self.reduce(row)
        if not reduced:
            return False
        lead = min(reduced, key=grlex_key)
        scale = reduced[lead]
        self.pivots[lead] = {m: c / scale for m, c in reduced.items()}
        return True

    def __len__(self):
        return len(self.pivots)


def truncated_span(relations: Sequence[Poly], nvars: int, bound: int) -> MonomialEchelon:
    """Echelon basis of (I + m^bound) / m^bound inside polynomials of degree < bound."""
    echelon = MonomialEchelon()
    for f in relations:
        if not f:
            continue
        low = f.min_degree
        for mono in monomials_below(nvars, bound - low):
            row = {}
            for fm, c in f.terms.items():
                shifted = tuple(a + b for a, b in zip(mono, fm))
                if sum(shifted) < bound:
                    row[shifted] = c
            if row:
                echelon.insert(row)
    return echelon


def count_monomials_below(nvars: int, bound: int) -> int:
    return sum(1 for _ in monomials_below(nvars, bound))


def stabilize(relations: Sequence[Poly], nvars: int, cap: int) -> tuple[int, MonomialEchelon, list[int]]:
    """Find the first D with dim_D == dim_{D+1}.

    Returns:
        (D_stab, echelon of the span at D_stab, list of dims dim_1..dim_{D_stab+1}).

    Raises:
        TruncationCapExceeded: If dimensions are still growing at ``cap``.
    """
    dims: list[int] = []
    previous = None
    for bound in range(1, cap + 1):
        echelon = truncated_span(relations, nvars, bound)
        dim = count_monomials_below(nvars, bound) - len(echelon)
        dims.append(dim)
        logger.debug("Truncation degree %d: quotient dimension %d", bound, dim)
        if previous is not None and previous[1] == dim:
            return previous[0], previous[2], dims
        previous = (bound, dim, echelon)
    raise TruncationCapExceeded(
        f"Quotient dimensions {dims} still growing at truncation cap {cap}; "
        f"the ideal is not primary to the maximal ideal"
    )


def reduce_in_span(echelon: MonomialEchelon, f: Poly, bound: int) -> dict[Monomial, Fraction]:
    """Remainder of ``f`` truncated below ``bound`` modulo the span."""
    return echelon.reduce({m: c for m, c in f.terms.items() if sum(m) < bound})


# ---------------------------------------------------------------------------
# Subspaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """Subspace of K^N in canonical reduced row-echelon form."""
    ambient: int
    rows: tuple[Vector, ...]
    pivots: tuple[int, ...]

    @classmethod
    def span(cls, vectors: Sequence[Sequence], ambient: int) -> 'Subspace':
        rows, pivots = rref(list(vectors), ambient)
        return cls(ambient, tuple(rows), tuple(pivots))

    @classmethod
    def zero(cls, ambient: int) -> 'Subspace':
        return cls(ambient, (), ())

    @classmethod
    def whole(cls, ambient: int) -> 'Subspace':
        return cls.span(_unit_vectors(ambient), ambient)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def contains(self, vector: Sequence) -> bool:
        return express_in_rref(self.rows, self.pivots, vector) is not None

    def coordinates(self, vector: Sequence) -> list[Fraction] | None:
        return express_in_rref(self.rows, self.pivots, vector)

    def issubset(self, other: 'Subspace') -> bool:
        return all(other.contains(r) for r in self.rows)

    def __add__(self, other: 'Subspace') -> 'Subspace':
        if other.ambient != self.ambient:
            raise DimensionMismatch(f"Subspaces of K^{self.ambient} and K^{other.ambient}")
        return Subspace.span(self.rows + other.rows, self.ambient)

    def with_vectors(self, vectors: Sequence[Sequence]) -> 'Subspace':
        return Subspace.span(list(self.rows) + [list(v) for v in vectors], self.ambient)

    def intersection_dim(self, other: 'Subspace') -> int:
        return self.dim + other.dim - (self + other).dim


def _unit_vectors(n: int, start: int = 0) -> list[Vector]:
    return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(start, n)]


# ---------------------------------------------------------------------------
# Elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Element:
    """Coordinates on an algebra basis; entries are Fractions or Polys."""
    coords: tuple

    def __len__(self):
        return len(self.coords)

    @property
    def is_nilpotent(self) -> bool:
        return not self.coords[0]

    def __add__(self, other: 'Element') -> 'Element':
        _check_same_length(self, other)
        return Element(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: 'Element') -> 'Element':
        _check_same_length(self, other)
        return Element(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def scale(self, factor) -> 'Element':
        return Element(tuple(c * factor for c in self.coords))


def _check_same_length(a: Element, b: Element):
    if len(a) != len(b):
        raise DimensionMismatch(f"Elements of length {len(a)} and {len(b)}")


# ---------------------------------------------------------------------------
# Local algebras
# ---------------------------------------------------------------------------

class LocalAlgebra:
    """A finite-dimensional local algebra with a monomial basis.

    Attributes:
        presentation: Generators and relations this algebra is a quotient by.
        basis: Basis monomials; basis[0] is the monomial 1.
        stabilization_degree: Monomials of this degree or higher are zero.
        nilpotency_degree: Largest j with m^j != 0.
    """

    def __init__(
        self,
        presentation: Presentation,
        basis: Sequence[Monomial],
        normal_forms: dict[Monomial, Vector],
        products: Sequence[Sequence[dict[int, Fraction]]],
        stabilization_degree: int,
    ):
        self.presentation = presentation
        self.basis = tuple(basis)
        self.dim = len(self.basis)
        self.normal_forms = normal_forms
        self.products = tuple(tuple(row) for row in products)
        self.stabilization_degree = stabilization_degree
        self._m_powers: dict[int, Subspace] = {}
        if self.basis[0] != (0,) * len(presentation.generators):
            raise InternalInvariantViolation("First basis monomial must be 1")
        self.nilpotency_degree = self._compute_nilpotency_degree()

    @property
    def generators(self) -> tuple[str, ...]:
        return self.presentation.generators

    def _compute_nilpotency_degree(self) -> int:
        j = 0
        while m_power(self, j + 1).dim:
            j += 1
        return j

    def basis_labels(self) -> list[str]:
        return [format_poly(Poly.monomial(m, self.generators)) for m in self.basis]

    def describe(self) -> str:
        return f"{self.presentation.describe()}, basis {', '.join(self.basis_labels())}"

    def product_vector(self, i: int, j: int) -> list[Fraction]:
        vec = [Fraction(0)] * self.dim
        for k, c in self.products[i][j].items():
            vec[k] = c
        return vec

    def __repr__(self):
        return f"LocalAlgebra({self.presentation.describe()}, dim={self.dim})"


def _basis_order(mono: Monomial) -> tuple:
    # degree ascending, then grlex descending within a degree
    return (sum(mono), tuple(-e for e in mono))


def build_algebra(presentation: Presentation) -> LocalAlgebra:
    """Build the local algebra of a presentation.

    Args:
        presentation: Generators, relations and truncation cap.

    Returns:
        The algebra with basis, normal-form table and structure constants.

    Raises:
        NonzeroConstantTerm: A relation is not inside the maximal ideal.
        TruncationCapExceeded: The quotient is not finite-dimensional.
    """
    nvars = len(presentation.generators)
    for rel in presentation.relations:
        if rel.constant_term:
            raise NonzeroConstantTerm(f"Relation {rel} has constant term {rel.constant_term}")
        if rel.min_degree == 1:
            logger.warning("Relation %s has linear terms; it eliminates a generator", rel)

    bound, echelon, dims = stabilize(presentation.relations, nvars, presentation.truncation_cap)
    logger.info("Presentation %s stabilizes at degree %d (dims %s)", presentation.describe(), bound, dims)

    monomials = list(monomials_below(nvars, bound))
    basis = sorted((m for m in monomials if m not in echelon.pivots), key=_basis_order)
    index = {m: i for i, m in enumerate(basis)}

    normal_forms: dict[Monomial, Vector] = {}
    for mono in monomials:
        vec = [Fraction(0)] * len(basis)
        for m, c in echelon.reduce({mono: Fraction(1)}).items():
            vec[index[m]] = c
        normal_forms[mono] = tuple(vec)

    products = []
    for a in basis:
        row = []
        for b in basis:
            mono = tuple(x + y for x, y in zip(a, b))
            vec = normal_forms.get(mono) if sum(mono) < bound else None
            row.append({k: c for k, c in enumerate(vec) if c} if vec else {})
        products.append(row)

    algebra = LocalAlgebra(presentation, basis, normal_forms, products, bound)
    top = max(sum(m) for m in basis)
    if algebra.nilpotency_degree != top:
        raise InternalInvariantViolation(
            f"Nilpotency degree {algebra.nilpotency_degree} differs from top basis degree {top}"
        )
    return algebra


# ---------------------------------------------------------------------------
# Elements and products
# ---------------------------------------------------------------------------

def unit(A: LocalAlgebra) -> Element:
    return basis_element(A, 0)


def zero_element(A: LocalAlgebra) -> Element:
    return Element((Fraction(0),) * A.dim)


def basis_element(A: LocalAlgebra, i: int) -> Element:
    return Element(tuple(Fraction(int(i == j)) for j in range(A.dim)))


def element(A: LocalAlgebra, coords: Sequence) -> Element:
    if len(coords) != A.dim:
        raise DimensionMismatch(f"Expected {A.dim} coordinates, got {len(coords)}")
    return Element(tuple(coords))


def normal_form(A: LocalAlgebra, f: Poly) -> Element:
    """Coordinates of the class of ``f`` in the algebra basis."""
    if f.variables != A.generators:
        raise VariableMismatch(f"Polynomial over {f.variables}, algebra generators are {A.generators}")
    coords = [Fraction(0)] * A.dim
    for mono, c in f.terms.items():
        if sum(mono) >= A.stabilization_degree:
            continue
        for k, v in enumerate(A.normal_forms[mono]):
            if v:
                coords[k] += c * v
    return Element(tuple(coords))


def lift(A: LocalAlgebra, vector: Sequence) -> Poly:
    """Polynomial representative sum(v_i * basis_i) of a coordinate vector."""
    return Poly(A.generators, {m: c for m, c in zip(A.basis, vector) if c})


def mul_elements(A: LocalAlgebra, a: Element, b: Element) -> Element:
    """Product through the structure constants; entries may be parametric."""
    if len(a) != A.dim or len(b) != A.dim:
        raise DimensionMismatch(f"Elements of length {len(a)}, {len(b)} in an algebra of dim {A.dim}")
    out = [Fraction(0)] * A.dim
    for i, ai in enumerate(a.coords):
        if not ai:
            continue
        for j, bj in enumerate(b.coords):
            if not bj:
                continue
            prod = ai * bj
            for k, c in A.products[i][j].items():
                out[k] = out[k] + prod * c
    return Element(tuple(out))


def exp_nilpotent(A: LocalAlgebra, u: Element) -> Element:
    """exp(u) = sum_{i<=d} u^i / i! for nilpotent ``u``."""
    if len(u) != A.dim:
        raise DimensionMismatch(f"Element of length {len(u)} in an algebra of dim {A.dim}")
    if not u.is_nilpotent:
        raise NotNilpotent(f"Unit coordinate is {u.coords[0]}, expected 0")
    result = unit(A)
    term = unit(A)
    for i in range(1, A.nilpotency_degree + 1):
        term = mul_elements(A, term, u).scale(Fraction(1, i))
        result = result + term
    return result


def _is_one(c) -> bool:
    if isinstance(c, Poly):
        return c.is_constant() and c.constant_term == 1
    return c == 1


def log_unipotent(A: LocalAlgebra, u: Element) -> Element:
    """ln(u) = sum_{i<=d} (-1)^(i+1) (u-1)^i / i for ``u`` with unit part 1."""
    if len(u) != A.dim:
        raise DimensionMismatch(f"Element of length {len(u)} in an algebra of dim {A.dim}")
    if not _is_one(u.coords[0]):
        raise UnitPartNotOne(f"Unit coordinate is {u.coords[0]}, expected 1")
    x = u - unit(A)
    result = zero_element(A)
    power = unit(A)
    for i in range(1, A.nilpotency_degree + 1):
        power = mul_elements(A, power, x)
        sign = 1 if i % 2 else -1
        result = result + power.scale(Fraction(sign, i))
    return result


# ---------------------------------------------------------------------------
# Subspace calculus
# ---------------------------------------------------------------------------

def _multiply_vectors(A: LocalAlgebra, a: Sequence, b: Sequence) -> list[Fraction]:
    return list(mul_elements(A, Element(tuple(a)), Element(tuple(b))).coords)


def m_power(A: LocalAlgebra, j: int) -> Subspace:
    """The subspace m^j; m^0 = A."""
    if j < 0:
        raise ValueError(f"Power must be non-negative, got {j}")
    if j in A._m_powers:
        return A._m_powers[j]
    if j == 0:
        result = Subspace.whole(A.dim)
    elif j == 1:
        result = Subspace.span(_unit_vectors(A.dim, start=1), A.dim)
    else:
        previous = m_power(A, j - 1)
        products = []
        for row in previous.rows:
            for i in range(1, A.dim):
                products.append(_multiply_vectors(A, row, basis_element(A, i).coords))
        result = Subspace.span(products, A.dim)
    A._m_powers[j] = result
    return result


def maximal_ideal(A: LocalAlgebra) -> Subspace:
    return m_power(A, 1)


def annihilator(A: LocalAlgebra, S: Subspace) -> Subspace:
    """{a in A : a*s = 0 for all s in S}."""
    equations = []
    for s in S.rows:
        images = [_multiply_vectors(A, basis_element(A, i).coords, s) for i in range(A.dim)]
        for k in range(A.dim):
            equations.append([images[i][k] for i in range(A.dim)])
    if not equations:
        return Subspace.whole(A.dim)
    return Subspace.span(nullspace(equations, A.dim), A.dim)


def socle(A: LocalAlgebra) -> Subspace:
    return annihilator(A, maximal_ideal(A))


def is_gorenstein(A: LocalAlgebra) -> bool:
    return socle(A).dim == 1


def _check_inside_m(S: Subspace, what: str = "Subspace"):
    for row in S.rows:
        if row[0]:
            raise NotInMaximalIdeal(f"{what} is not contained in the maximal ideal")


def largest_ideal_in(A: LocalAlgebra, U: Subspace) -> Subspace:
    """The largest ideal of A contained in U: {a : a*b in U for every basis b}."""
    _check_inside_m(U)
    functionals = nullspace(U.rows, A.dim) if U.rows else _unit_vectors(A.dim)
    equations = []
    for phi in functionals:
        for j in range(A.dim):
            equations.append([
                sum(phi[k] * c for k, c in A.products[i][j].items())
                for i in range(A.dim)
            ])
    return Subspace.span(nullspace(equations, A.dim), A.dim)


def is_ideal(A: LocalAlgebra, J: Subspace) -> bool:
    for row in J.rows:
        for i in range(1, A.dim):
            if not J.contains(_multiply_vectors(A, row, basis_element(A, i).coords)):
                return False
    return True


def generates_algebra(A: LocalAlgebra, S: Subspace) -> bool:
    """True when 1 and S generate A as an algebra."""
    closure = S.with_vectors([unit(A).coords])
    while True:
        products = [
            _multiply_vectors(A, v, s) for v in closure.rows for s in S.rows
        ]
        grown = closure.with_vectors(products)
        if grown.dim == closure.dim:
            return closure.dim == A.dim
        closure = grown


def hilbert_function(A: LocalAlgebra) -> list[int]:
    """dim m^j / m^(j+1) for j = 0..d."""
    return [
        m_power(A, j).dim - m_power(A, j + 1).dim
        for j in range(A.nilpotency_degree + 1)
    ]


def describe_subspace(A: LocalAlgebra, S: Subspace) -> list[str]:
    return [format_poly(lift(A, row)) for row in S.rows]


# ---------------------------------------------------------------------------
# Quotients
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Projection:
    """Linear map A -> A/J on coordinates.

    ``change`` holds, for each kept basis vector of A, its coordinates on
    the quotient's own basis; it is empty when the two bases agree.
    """
    ideal: Subspace
    kept: tuple[int, ...]
    change: tuple[Vector, ...] = ()

    def __call__(self, vector: Sequence) -> tuple[Fraction, ...]:
        v = [Fraction(x) for x in vector]
        for row, p in zip(self.ideal.rows, self.ideal.pivots):
            c = v[p]
            if c:
                v = [a - c * b for a, b in zip(v, row)]
        kept = tuple(v[i] for i in self.kept)
        if not self.change:
            return kept
        out = [Fraction(0)] * len(kept)
        for c, row in zip(kept, self.change):
            if c:
                out = [a + c * b for a, b in zip(out, row)]
        return tuple(out)

    def subspace(self, S: Subspace) -> Subspace:
        return Subspace.span([self(r) for r in S.rows], len(self.kept))


def quotient_by_ideal(A: LocalAlgebra, J: Subspace) -> tuple[LocalAlgebra, Projection]:
    """The algebra A/J and the coordinate projection onto it.

    Generators that become redundant in A/J (J holding elements with linear
    terms, such as an adjoined w) are eliminated, so the quotient's
    presentation keeps every relation inside m^2.

    Raises:
        NotAnIdeal: J is not closed under multiplication by A.
        QuotientIsZero: J is all of A.
    """
    if J.ambient != A.dim:
        raise DimensionMismatch(f"Subspace of K^{J.ambient} in an algebra of dim {A.dim}")
    if not is_ideal(A, J):
        raise NotAnIdeal("Subspace is not closed under multiplication by the algebra")
    if J.dim == A.dim:
        raise QuotientIsZero("Quotient by the whole algebra is zero")
    pivot_set = set(J.pivots)
    kept = tuple(i for i in range(A.dim) if i not in pivot_set)
    projection = Projection(J, kept)
    if not J.rows:
        return A, projection

    relations = list(A.presentation.relations) + [lift(A, row) for row in J.rows]
    presentation = Presentation(A.generators, relations, A.presentation.truncation_cap)
    basis = [A.basis[i] for i in kept]
    normal_forms = {m: projection(v) for m, v in A.normal_forms.items()}
    products = []
    for i in kept:
        row = []
        for j in kept:
            vec = projection(A.product_vector(i, j))
            row.append({k: c for k, c in enumerate(vec) if c})
        products.append(row)
    quotient = LocalAlgebra(presentation, basis, normal_forms, products, A.stabilization_degree)
    logger.info("Quotient by an ideal of dim %d: dim %d -> %d", J.dim, A.dim, quotient.dim)
    redundant = _redundant_generators(quotient)
    if not redundant or len(redundant) == len(quotient.generators):
        return quotient, projection
    return _eliminate_generators(quotient, projection, redundant)


def _redundant_generators(A: LocalAlgebra) -> list[int]:
    """Generators lying in m^2 plus the span of the earlier generators."""
    span = m_power(A, 2)
    redundant = []
    for i, name in enumerate(A.generators):
        grown = span.with_vectors([normal_form(A, Poly.variable(name, A.generators)).coords])
        if grown.dim > span.dim:
            span = grown
        else:
            redundant.append(i)
    return redundant


def _polynomial_in(A: LocalAlgebra, target: Sequence, names: Sequence[str]) -> Poly:
    """A polynomial in the generators ``names`` whose class in A is ``target``."""
    names = tuple(names)
    gens = [normal_form(A, Poly.variable(n, A.generators)) for n in names]
    monos = [m for m in monomials_below(len(names), A.nilpotency_degree + 1) if sum(m)]
    values: dict[Monomial, Element] = {}
    for mono in monos:
        i = next(k for k, e in enumerate(mono) if e)
        smaller = mono[:i] + (mono[i] - 1,) + mono[i + 1:]
        factor = values[smaller] if sum(smaller) else unit(A)
        values[mono] = mul_elements(A, factor, gens[i])
    columns = [values[m].coords for m in monos] + [tuple(target)]
    matrix = [[col[r] for col in columns] for r in range(A.dim)]
    solution = next((v for v in nullspace(matrix, len(columns)) if v[-1]), None)
    if solution is None:
        raise InternalInvariantViolation(f"Generators {names} do not generate the algebra")
    return Poly(names, {m: -c / solution[-1] for m, c in zip(monos, solution) if c})


def _eliminate_generators(
    spanned: LocalAlgebra, projection: Projection, redundant: Sequence[int]
) -> tuple[LocalAlgebra, Projection]:
    """Rebuild a quotient over its essential generators.

    Each redundant generator g is replaced by a polynomial p_g in the
    others; the relations become their images under g -> p_g, which
    generate the kernel of K[kept] -> A/J.
    """
    old = spanned.generators
    names = tuple(n for i, n in enumerate(old) if i not in redundant)
    assignment = []
    for i, name in enumerate(old):
        if i in redundant:
            target = normal_form(spanned, Poly.variable(name, old)).coords
            assignment.append(_polynomial_in(spanned, target, names))
        else:
            assignment.append(Poly.variable(name, names))
    relations = [r for r in (substitute(f, assignment) for f in spanned.presentation.relations) if r]
    quotient = build_algebra(Presentation(names, relations, spanned.presentation.truncation_cap))
    if quotient.dim != spanned.dim:
        raise InternalInvariantViolation(
            f"Eliminating generators changed the quotient dimension {spanned.dim} -> {quotient.dim}"
        )
    change = tuple(
        normal_form(quotient, substitute(Poly.monomial(m, old), assignment)).coords
        for m in spanned.basis
    )
    logger.info("Eliminated generators %s from the quotient", ", ".join(old[i] for i in redundant))
    return quotient, Projection(projection.ideal, projection.kept, change)


# ---------------------------------------------------------------------------
# Checks
# ---------------------------------------------------------------------------

def structure_constants_consistent(A: LocalAlgebra) -> bool:
    """Exhaustive commutativity and associativity over basis triples."""
    for i in range(A.dim):
        for j in range(A.dim):
            if A.products[i][j] != A.products[j][i]:
                return False
    for i in range(A.dim):
        for j in range(A.dim):
            ij = A.product_vector(i, j)
            for k in range(A.dim):
                left = _multiply_vectors(A, ij, basis_element(A, k).coords)
                right = _multiply_vectors(A, basis_element(A, i).coords, A.product_vector(j, k))
                if left != right:
                    return False
    return True


def parametric_element(A: LocalAlgebra, coefficients: Sequence[Poly], vectors: Sequence[Sequence]) -> Element:
    """sum_k coefficients[k] * vectors[k] as an element with Poly coordinates."""
    if len(coefficients) != len(vectors):
        raise DimensionMismatch(f"{len(coefficients)} coefficients for {len(vectors)} vectors")
    if not coefficients:
        raise ValueError("Need at least one coefficient")
    variables = coefficients[0].variables
    coords = [Poly(variables) for _ in range(A.dim)]
    for coeff, vec in zip(coefficients, vectors):
        for k, v in enumerate(vec):
            if v:
                coords[k] = coords[k] + coeff * v
    return Element(tuple(coords))


