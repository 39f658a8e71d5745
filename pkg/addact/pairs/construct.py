"""Constructions over a degenerate H-pair.

Starting from the non-degenerate core (A_0, U_0) of a pair, two pairs of
dimension dim A_0 + 1 are built that both reduce back to it:

* adding a variable w with x_i*w = w^2 = 0 and putting w into U;
* shrinking the relation ideal I to (f_1, .., f_{l-1}, x_1 f_l, .., x_k f_l)
  and putting f_l into U.

Their embedding dimensions differ by one, so the two actions are not
equivalent.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

from ..calc.artin import build_algebra, lift, m_power, reduce_in_span, stabilize, truncated_span
from ..calc.exactpoly import Poly, embed
from ..errors import (
    IndexOutOfRange,
    InternalInvariantViolation,
    NondegenerateInput,
    PassLimitExceeded,
    TruncationCapExceeded,
    VariableMismatch,
    ZeroIdeal,
)
from ..models import (
    DEFAULT_PASS_LIMIT,
    DEFAULT_TRUNCATION_CAP,
    NEW_VARIABLE_NAME,
    Presentation,
    ShrinkResult,
)
from .hpair import (
    HPair,
    compare_invariants,
    hpair_from_polys,
    invariant_vector,
    is_nondegenerate,
    reduce_hpair,
)

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Ideal membership
# ---------------------------------------------------------------------------

def membership_certificate(
    f: Poly, relations: Sequence[Poly], cap: int = DEFAULT_TRUNCATION_CAP
) -> tuple[bool, int]:
    """Decide f in (relations) locally, returning the truncation degree used.

    The test runs at D_stab + 1, where the truncated span already contains
    every monomial of degree D_stab.

    Raises:
        TruncationCapExceeded: The ideal is not primary to the maximal ideal.
    """
    for rel in relations:
        if rel.variables != f.variables:
            raise VariableMismatch(f"Relation over {rel.variables}, expected {f.variables}")
    nvars = len(f.variables)
    bound, _, _ = stabilize(relations, nvars, cap)
    degree = bound + 1
    remainder = reduce_in_span(truncated_span(relations, nvars, degree), f, degree)
    return not remainder, degree


def ideal_membership(f: Poly, relations: Sequence[Poly], cap: int = DEFAULT_TRUNCATION_CAP) -> bool:
    """True iff ``f`` lies in the ideal generated by ``relations``."""
    return membership_certificate(f, relations, cap)[0]


def _member_or_false(f: Poly, relations: Sequence[Poly], cap: int) -> bool:
    if not relations:
        return False
    try:
        return ideal_membership(f, relations, cap)
    except TruncationCapExceeded:
        return False


def drop_redundant(relations: Sequence[Poly], cap: int = DEFAULT_TRUNCATION_CAP) -> list[Poly]:
    """Drop generators that lie in the ideal of the others, scanning last to first.

    A generator whose removal leaves a non m-primary ideal is never
    redundant, so the others only need to stabilize by the degree where the
    full system does.
    """
    system = [r for r in relations if r]
    if not system:
        return system
    full_bound, _, _ = stabilize(system, len(system[0].variables), cap)
    i = len(system) - 1
    while i >= 0:
        others = system[:i] + system[i + 1:]
        if _member_or_false(system[i], others, full_bound + 1):
            logger.debug("Dropping redundant generator %s", system[i])
            del system[i]
        i -= 1
    return system


def _apply_order(relations: Sequence[Poly], order: Optional[Sequence[int]]) -> list[Poly]:
    if order is None:
        return list(relations)
    if sorted(order) != list(range(len(relations))):
        raise IndexOutOfRange(
            f"Order {list(order)} is not a permutation of 0..{len(relations) - 1}"
        )
    return [relations[i] for i in order]


def shrink_generators(
    relations: Sequence[Poly],
    order: Optional[Sequence[int]] = None,
    cap: int = DEFAULT_TRUNCATION_CAP,
    pass_limit: int = DEFAULT_PASS_LIMIT,
) -> ShrinkResult:
    """Find a generator f_l whose replacement by x_i*f_l strictly shrinks the ideal.

    Args:
        relations: Generators of an m-primary ideal I.
        order: Optional permutation applied to ``relations`` before the scan.
        cap: Truncation cap for membership tests.
        pass_limit: Full passes allowed before giving up.

    Returns:
        ShrinkResult with the reordered system (distinguished generator last),
        the shrunken relations and the degree certifying f_l is not in them.

    Raises:
        ZeroIdeal: No nonzero relation.
        PassLimitExceeded: No strict shrink within ``pass_limit`` passes.
    """
    if not any(relations):
        raise ZeroIdeal("The relation ideal is zero; there is nothing to shrink")
    ordered = _apply_order(relations, order)
    variables = ordered[0].variables
    xs = [Poly.variable(n, variables) for n in variables]
    system = drop_redundant(ordered, cap)

    for pass_number in range(1, pass_limit + 1):
        pos = len(system) - 1
        while pos >= 0:
            candidate = system[pos]
            rest = system[:pos] + system[pos + 1:]
            multiples = [x * candidate for x in xs]
            member, degree = membership_certificate(candidate, rest + multiples, cap)
            if not member:
                logger.info("Shrinking %s on pass %d (certified at degree %d)", candidate, pass_number, degree)
                return ShrinkResult(
                    generators=tuple(rest) + (candidate,),
                    distinguished=candidate,
                    relations=tuple(rest + multiples),
                    certificate_degree=degree,
                    order=tuple(order) if order is not None else tuple(range(len(relations))),
                )
            system = system[:pos] + multiples + system[pos + 1:]
            pos -= 1
    raise PassLimitExceeded(f"No strict shrink found within {pass_limit} passes")


# ---------------------------------------------------------------------------
# The two constructions
# ---------------------------------------------------------------------------

def _fresh_name(taken: Sequence[str]) -> str:
    if NEW_VARIABLE_NAME not in taken:
        return NEW_VARIABLE_NAME
    i = 1
    while f"{NEW_VARIABLE_NAME}{i}" in taken:
        i += 1
    return f"{NEW_VARIABLE_NAME}{i}"


def add_variable_pair(base: HPair, name: Optional[str] = None) -> HPair:
    """Adjoin a variable w with x_i*w = w^2 = 0 and put w into U.

    w is placed in the U basis right after the last base vector outside m^2,
    so K[x,y]/(xy, x^3-y^2) with U = <x, y, x^2> gives U = <x, y, w, x^2>.
    """
    A0 = base.algebra
    gens = A0.generators
    new = name or _fresh_name(gens)
    variables = gens + (new,)
    w = Poly.variable(new, variables)
    relations = [embed(r, variables) for r in A0.presentation.relations]
    relations += [Poly.variable(g, variables) * w for g in gens]
    relations.append(w ** 2)
    A1 = build_algebra(Presentation(variables, relations, A0.presentation.truncation_cap))

    square = m_power(A0, 2)
    position = 0
    for i, u in enumerate(base.u_basis):
        if not square.contains(u):
            position = i + 1
    lifts = [embed(lift(A0, u), variables) for u in base.u_basis]
    u_polys = lifts[:position] + [w] + lifts[position:]
    complement = embed(lift(A0, base.complement), variables)
    pair = hpair_from_polys(A1, u_polys, complement)
    if A1.dim != A0.dim + 1:
        raise InternalInvariantViolation(f"Adding a variable gave dim {A1.dim}, expected {A0.dim + 1}")
    return pair


def shrunk_pair(
    base: HPair,
    order: Optional[Sequence[int]] = None,
    shrink: Optional[ShrinkResult] = None,
) -> HPair:
    """Build K[x]/I~ with U_2 = lift(U_0) + <f_l> from a base pair."""
    A0 = base.algebra
    cap = A0.presentation.truncation_cap
    if shrink is None:
        shrink = shrink_generators(A0.presentation.relations, order=order, cap=cap)
    A2 = build_algebra(Presentation(A0.generators, shrink.relations, cap))
    if A2.dim != A0.dim + 1:
        raise InternalInvariantViolation(f"Shrunken ideal gave dim {A2.dim}, expected {A0.dim + 1}")
    u_polys = [lift(A0, u) for u in base.u_basis] + [shrink.distinguished]
    return hpair_from_polys(A2, u_polys, lift(A0, base.complement))


@dataclass(frozen=True, eq=False)
class TwoActions:
    base: HPair
    first: HPair                  # added variables
    second: HPair                 # shrunken ideal, then added variables
    shrink: ShrinkResult
    added: int                    # r = dim A - dim A_0
    certificate: str


def two_actions(H: HPair, order: Optional[Sequence[int]] = None) -> TwoActions:
    """Two non-equivalent H-pairs with the same degenerate hypersurface type.

    Raises:
        NondegenerateInput: H is non-degenerate, so its action is unique.
    """
    if is_nondegenerate(H):
        raise NondegenerateInput("The pair is non-degenerate; its induced action is unique")
    base = reduce_hpair(H)
    added = H.size - base.size

    first = base
    for _ in range(added):
        first = add_variable_pair(first)

    A0 = base.algebra
    shrink = shrink_generators(A0.presentation.relations, order=order, cap=A0.presentation.truncation_cap)
    second = shrunk_pair(base, shrink=shrink)
    for _ in range(added - 1):
        second = add_variable_pair(second)

    v1, v2 = invariant_vector(first), invariant_vector(second)
    if v1.embedding_dim - v2.embedding_dim != 1:
        raise InternalInvariantViolation(
            f"Embedding dims {v1.embedding_dim} and {v2.embedding_dim} do not differ by one"
        )
    return TwoActions(base, first, second, shrink, added, compare_invariants(v1, v2))
