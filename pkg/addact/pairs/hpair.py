"""H-pairs: a local algebra with a generating hyperplane of its maximal ideal.

An H-pair (A, U) with dim A = N gives a hypersurface in P^(N-1) with an
induced additive action of G_a^(N-2). Projective coordinates follow the
frame (1, u_1, .., u_{N-2}, e): z0 for the unit, z1..z_{N-2} for the U basis
in the caller's order, z_{N-1} for the complement e.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from ..calc.artin import (
    Element,
    LocalAlgebra,
    Subspace,
    annihilator,
    exp_nilpotent,
    generates_algebra,
    hilbert_function,
    is_ideal,
    largest_ideal_in,
    lift,
    log_unipotent,
    mul_elements,
    normal_form,
    parametric_element,
    quotient_by_ideal,
    socle,
    unit,
)
from ..calc.exactpoly import Poly, embed, format_poly, grlex_key, homogenize, substitute
from ..calc.linalg import Vector, inverse, mat_mul
from ..errors import (
    ComplementInU,
    DimensionMismatch,
    DoesNotGenerate,
    IdealNotInsideU,
    InternalInvariantViolation,
    NotAnIdeal,
    NotInMaximalIdeal,
    WrongCodimension,
)
from ..models import (
    NOT_UNIQUE_VERDICT,
    UNIQUE_VERDICT,
    InvariantVector,
    UniquenessReport,
    ambient_names,
    parameter_names,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class HPair:
    algebra: LocalAlgebra
    U: Subspace
    u_basis: tuple[Vector, ...]
    complement: Vector

    @property
    def size(self) -> int:
        return self.algebra.dim

    @property
    def frame(self) -> list[Vector]:
        """Coordinate frame (1, u_1, .., u_{N-2}, e)."""
        return [unit(self.algebra).coords, *self.u_basis, self.complement]

    def coordinate_names(self) -> tuple[str, ...]:
        return ambient_names(self.size)

    def frame_labels(self) -> list[str]:
        return [format_poly(lift(self.algebra, v)) for v in self.frame]


@dataclass(frozen=True)
class HomogPoly:
    poly: Poly
    degree: int

    def __post_init__(self):
        for mono in self.poly.terms:
            if sum(mono) != self.degree:
                raise InternalInvariantViolation(
                    f"Term of degree {sum(mono)} in a form of degree {self.degree}"
                )

    @property
    def variables(self) -> tuple[str, ...]:
        return self.poly.variables

    def __str__(self):
        return format_poly(self.poly)


@dataclass(frozen=True)
class ActionMatrix:
    entries: tuple[tuple[Poly, ...], ...]
    parameters: tuple[str, ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    def at_zero(self) -> list[list[Fraction]]:
        return [[p.constant_term for p in row] for row in self.entries]

    def is_unipotent(self) -> bool:
        n = self.size
        shifted = [
            [self.entries[i][j] - int(i == j) for j in range(n)]
            for i in range(n)
        ]
        power = shifted
        for _ in range(n - 1):
            power = mat_mul(power, shifted)
        return all(not x for row in power for x in row)

    def rows(self, coordinates: Sequence[str]) -> list[Poly]:
        """Formulas z_k -> sum_i rho_ki z_i over (coordinates + parameters)."""
        if len(coordinates) != self.size:
            raise DimensionMismatch(f"{len(coordinates)} coordinates for a {self.size}x{self.size} action")
        names = tuple(coordinates) + self.parameters
        zs = [Poly.variable(n, names) for n in coordinates]
        out = []
        for row in self.entries:
            total = Poly(names)
            for entry, z in zip(row, zs):
                if entry:
                    total = total + embed(entry, names) * z
            out.append(total)
        return out


# ---------------------------------------------------------------------------
# Construction and validation
# ---------------------------------------------------------------------------

def _default_complement(A: LocalAlgebra, U: Subspace) -> Vector:
    candidates = sorted(range(1, A.dim), key=lambda i: grlex_key(A.basis[i]), reverse=True)
    for i in candidates:
        vec = tuple(Fraction(int(i == j)) for j in range(A.dim))
        if not U.contains(vec):
            return vec
    raise WrongCodimension("U is all of the maximal ideal; no complement exists")


def make_hpair(
    A: LocalAlgebra,
    U: Subspace,
    complement: Optional[Sequence] = None,
    u_basis: Optional[Sequence[Sequence]] = None,
) -> HPair:
    """Validate (A, U) as an H-pair and fix its coordinate frame.

    Args:
        A: The local algebra.
        U: Candidate generating hyperplane of m.
        complement: Vector e in m outside U; defaults to the grlex-largest
            basis monomial outside U + <1>.
        u_basis: Ordered basis of U; kept when it is a basis of U,
            otherwise the echelon rows of U are used.

    Raises:
        WrongCodimension: dim U != dim A - 2.
        NotInMaximalIdeal: U or e has a nonzero unit coordinate.
        DoesNotGenerate: 1 and U do not generate A.
        ComplementInU: e lies in U.
    """
    if U.ambient != A.dim:
        raise DimensionMismatch(f"Subspace of K^{U.ambient} in an algebra of dim {A.dim}")
    if U.dim != A.dim - 2:
        raise WrongCodimension(f"dim U = {U.dim}, expected {A.dim - 2} (codimension 1 in m)")
    for row in U.rows:
        if row[0]:
            raise NotInMaximalIdeal("U is not contained in the maximal ideal")
    if not generates_algebra(A, U):
        raise DoesNotGenerate("1 and U do not generate the algebra")

    ordered = tuple(U.rows)
    if u_basis is not None:
        given = tuple(tuple(Fraction(x) for x in v) for v in u_basis)
        if len(given) == U.dim and Subspace.span(given, A.dim) == U:
            ordered = given

    if complement is None:
        e = _default_complement(A, U)
    else:
        e = tuple(Fraction(x) for x in complement)
        if len(e) != A.dim:
            raise DimensionMismatch(f"Complement has {len(e)} coordinates, expected {A.dim}")
        if e[0]:
            raise NotInMaximalIdeal("Complement is not in the maximal ideal")
        if U.contains(e):
            raise ComplementInU("Complement lies in U")
    return HPair(A, U, ordered, e)


def hpair_from_polys(A: LocalAlgebra, u_polys: Sequence[Poly], complement: Optional[Poly] = None) -> HPair:
    """make_hpair with U and e given as polynomials in the generators."""
    vectors = [normal_form(A, p).coords for p in u_polys]
    U = Subspace.span(vectors, A.dim)
    e = normal_form(A, complement).coords if complement is not None else None
    return make_hpair(A, U, e, u_basis=vectors)


def _frame_inverse(H: HPair) -> list[list[Fraction]]:
    frame = H.frame
    columns = [[frame[i][k] for i in range(H.size)] for k in range(H.size)]
    try:
        return inverse(columns)
    except ValueError as exc:
        raise InternalInvariantViolation(f"Coordinate frame is not a basis: {exc}") from exc


# ---------------------------------------------------------------------------
# Equation and action
# ---------------------------------------------------------------------------

def hypersurface_equation(H: HPair) -> HomogPoly:
    """Equation z0^D * pi(ln(1 + z/z0)) of the hypersurface of an H-pair.

    pi is the functional vanishing on U with pi(e) = 1, so the form always
    contains z0^(D-1)*z_{N-1} with coefficient 1.
    """
    A = H.algebra
    names = H.coordinate_names()
    zs = [Poly.variable(n, names) for n in names]
    w = parametric_element(A, zs[1:], H.frame[1:])
    one = Element(tuple(Poly.constant(c, names) for c in unit(A).coords))
    logarithm = log_unipotent(A, one + w)

    phi = _frame_inverse(H)[H.size - 1]
    affine = Poly(names)
    for k, coeff in enumerate(phi):
        if coeff:
            affine = affine + logarithm.coords[k] * coeff
    degree = affine.degree
    form = HomogPoly(homogenize(affine, 0, degree), degree)

    expected = _reduced_nilpotency_degree(H)
    if degree != expected:
        raise InternalInvariantViolation(
            f"Equation degree {degree} differs from the nilpotency degree {expected} of A/J"
        )
    anchor = [0] * H.size
    anchor[0] = degree - 1
    anchor[-1] += 1
    if form.poly.coefficient(tuple(anchor)) != 1:
        raise InternalInvariantViolation("Equation lacks the monic z0^(D-1)*z_{N-1} term")
    return form


def _reduced_nilpotency_degree(H: HPair) -> int:
    J = largest_ideal_in(H.algebra, H.U)
    if not J.rows:
        return H.algebra.nilpotency_degree
    quotient, _ = quotient_by_ideal(H.algebra, J)
    return quotient.nilpotency_degree


def _as_poly(x, variables: Sequence[str]) -> Poly:
    return x if isinstance(x, Poly) else Poly.constant(x, variables)


def action_matrix(H: HPair) -> ActionMatrix:
    """rho(t) = B^-1 * exp(sum t_j L_{u_j}) * B in the pair's coordinates."""
    A = H.algebra
    params = parameter_names(H.size - 2)
    ts = [Poly.variable(p, params) for p in params]
    g = exp_nilpotent(A, parametric_element(A, ts, H.u_basis))
    g = Element(tuple(_as_poly(c, params) for c in g.coords))

    natural = []
    for i in range(A.dim):
        basis_i = Element(tuple(Fraction(int(i == j)) for j in range(A.dim)))
        natural.append(mul_elements(A, g, basis_i).coords)
    # natural[i][k] is coordinate k of g * basis_i
    M = [[natural[i][k] for i in range(A.dim)] for k in range(A.dim)]

    frame = H.frame
    B = [[frame[i][k] for i in range(A.dim)] for k in range(A.dim)]
    rho = mat_mul(mat_mul(_frame_inverse(H), M), B)
    entries = tuple(tuple(_as_poly(x, params) for x in row) for row in rho)
    return ActionMatrix(entries, params)


def action_rows(H: HPair, matrix: Optional[ActionMatrix] = None) -> list[Poly]:
    """Coordinate formulas z_k -> sum_i rho_ki z_i over (z.., t..)."""
    rho = matrix or action_matrix(H)
    return rho.rows(H.coordinate_names())


def restricted_action(H: HPair, vanishing: Sequence[int]) -> dict[int, Poly]:
    """Action formulas on the coordinate subspace {z_i = 0 for i in vanishing}."""
    rows = action_rows(H)
    names = rows[0].variables
    assignment = [
        Poly(names) if i in vanishing else Poly.variable(n, names)
        for i, n in enumerate(names)
    ]
    return {
        k: substitute(row, assignment)
        for k, row in enumerate(rows) if k not in vanishing
    }


def fixed_locus(H: HPair) -> Subspace:
    """Annihilator of U; its projectivization is the fixed-point set."""
    return annihilator(H.algebra, H.U)


# ---------------------------------------------------------------------------
# Degeneracy and reduction
# ---------------------------------------------------------------------------

def is_nondegenerate(H: HPair) -> bool:
    """True iff U contains no nonzero ideal.

    For a non-degenerate pair the algebra must be Gorenstein with U
    complementary to the socle; a violation raises InternalInvariantViolation.
    """
    J = largest_ideal_in(H.algebra, H.U)
    if J.rows:
        return False
    soc = socle(H.algebra)
    if soc.dim != 1 or (H.U + soc).dim != H.size - 1:
        raise InternalInvariantViolation(
            "Non-degenerate pair without a Gorenstein algebra and U complementary to the socle"
        )
    return True


def uniqueness_report(H: HPair) -> UniquenessReport:
    nondegenerate = is_nondegenerate(H)
    soc = socle(H.algebra)
    complementary = soc.dim == 1 and (H.U + soc).dim == H.size - 1
    return UniquenessReport(
        nondegenerate=nondegenerate,
        gorenstein=soc.dim == 1,
        socle_complementary=complementary,
        verdict=UNIQUE_VERDICT if nondegenerate else NOT_UNIQUE_VERDICT,
    )


def reduce_hpair_with_coordinates(
    H: HPair, J: Optional[Subspace] = None
) -> tuple[HPair, tuple[int, ...]]:
    """Reduce (A, U) to (A/J, U/J), reporting which coordinates survive.

    Returns:
        (reduced pair, indices of the original coordinates kept, in order).

    Raises:
        NotAnIdeal: J is not an ideal.
        IdealNotInsideU: J is not contained in U.
    """
    A = H.algebra
    if J is None:
        J = largest_ideal_in(A, H.U)
    if J.ambient != A.dim:
        raise DimensionMismatch(f"Subspace of K^{J.ambient} in an algebra of dim {A.dim}")
    if not J.rows:
        return H, tuple(range(H.size))
    if not is_ideal(A, J):
        raise NotAnIdeal("Subspace is not closed under multiplication by the algebra")
    if not J.issubset(H.U):
        raise IdealNotInsideU("Ideal is not contained in U")

    quotient, projection = quotient_by_ideal(A, J)
    images: list[tuple] = []
    kept_u: list[int] = []
    span = Subspace.zero(quotient.dim)
    for idx, u in enumerate(H.u_basis):
        image = projection(u)
        grown = span.with_vectors([image])
        if grown.dim > span.dim:
            images.append(image)
            kept_u.append(idx)
            span = grown

    e_image = projection(H.complement)
    complement = e_image
    if span.contains(e_image):
        logger.warning("Complement falls into U/J after reduction; selecting the default complement")
        complement = None
    reduced = make_hpair(quotient, span, complement, u_basis=images)
    kept = (0,) + tuple(1 + i for i in kept_u) + (H.size - 1,)
    return reduced, kept


def reduce_hpair(H: HPair, J: Optional[Subspace] = None) -> HPair:
    """The reduction (A/J, U/J); J defaults to the largest ideal inside U."""
    return reduce_hpair_with_coordinates(H, J)[0]


# ---------------------------------------------------------------------------
# Invariants
# ---------------------------------------------------------------------------

def invariant_vector(obj: Union[HPair, LocalAlgebra]) -> InvariantVector:
    A = obj.algebra if isinstance(obj, HPair) else obj
    hilbert = tuple(hilbert_function(A))
    soc_dim = socle(A).dim
    return InvariantVector(
        dim=A.dim,
        hilbert=hilbert,
        socle_dim=soc_dim,
        embedding_dim=hilbert[1] if len(hilbert) > 1 else 0,
        nilpotency_degree=A.nilpotency_degree,
        gorenstein=soc_dim == 1,
    )


def compare_invariants(first: InvariantVector, second: InvariantVector) -> str:
    """Certificate text: a differing invariant proves non-equivalence."""
    if first.embedding_dim != second.embedding_dim:
        return f"non-equivalent: embedding dims {first.embedding_dim} vs {second.embedding_dim}"
    for name in ('dim', 'hilbert', 'socle_dim', 'nilpotency_degree', 'gorenstein'):
        a, b = getattr(first, name), getattr(second, name)
        if a != b:
            return f"non-equivalent: {name} {a} vs {b}"
    return "inconclusive: invariant vectors agree"


def proxy_equal(first: HPair, second: HPair) -> bool:
    """Equal invariant vectors and identical equations.

    A necessary condition for equivalence of pairs, used to check that a
    construction reduces back to its base pair.
    """
    if invariant_vector(first) != invariant_vector(second):
        return False
    return hypersurface_equation(first).poly == hypersurface_equation(second).poly

