"""Non-degenerate families of every degree and the dimension-6 census.

For 2 <= d <= n there is a Gorenstein local algebra of dimension n + 1 and
nilpotency degree d whose pair gives a non-degenerate hypersurface of
degree d in P^n:

* d = n: the chain K[x]/(x^(n+1));
* n - d = 2k even: S_1..S_(2k+1) with S_i S_j = 0 except
  S_1 S_2 = S_3 S_4 = .. = S_(2k-1) S_(2k) = S_(2k+1)^(n-2k);
* n - d = 2k - 1 odd: S_1..S_(2k) with S_i S_j = 0 except
  S_1 S_2 = .. = S_(2k-3) S_(2k-2) = S_(2k-1)^2 = S_(2k)^(n-2k+1).

The census files under ``data/census`` hold the six Gorenstein algebras of
dimension 6 with their expected equations and singular loci.
"""

import logging
from pathlib import Path
from typing import Union

from ..calc.artin import LocalAlgebra, Subspace, build_algebra, m_power, socle
from ..calc.exactpoly import Poly, format_poly, parse_poly
from ..errors import InvalidRange, PresentationFileError
from ..fileformat import load_presentation_file
from ..models import (
    BRANCH_CHAIN,
    BRANCH_EVEN,
    BRANCH_ODD,
    DEFAULT_SAMPLE_COUNT,
    DEFAULT_SEED,
    DEFAULT_TRUNCATION_CAP,
    CensusEntry,
    CensusVerdict,
    FamilySpec,
    Presentation,
    ambient_names,
)
from .geometry import LinearSubspace, verify_singular_subspace
from .hpair import HPair, hpair_from_polys, hypersurface_equation, is_nondegenerate, make_hpair

logger = logging.getLogger(__name__)

CENSUS_DIR = Path(__file__).parent.parent / 'data' / 'census'
CENSUS_NAMES = ('A1', 'A2', 'A3', 'A4', 'A5', 'A6')


# ---------------------------------------------------------------------------
# Families
# ---------------------------------------------------------------------------

def family_spec(n: int, d: int) -> FamilySpec:
    """Classify (n, d) into its branch.

    Raises:
        InvalidRange: Unless 2 <= d <= n.
    """
    if not 2 <= d <= n:
        raise InvalidRange(f"Need 2 <= d <= n, got n={n}, d={d}")
    gap = n - d
    if gap == 0:
        return FamilySpec(n, d, BRANCH_CHAIN, 0)
    if gap % 2 == 0:
        return FamilySpec(n, d, BRANCH_EVEN, gap // 2)
    return FamilySpec(n, d, BRANCH_ODD, (gap + 1) // 2)


def _product_relations(names: tuple[str, ...], exceptions: set[tuple[int, int]]) -> list[Poly]:
    gens = [Poly.variable(s, names) for s in names]
    relations = []
    for i in range(len(names)):
        for j in range(i, len(names)):
            if (i + 1, j + 1) not in exceptions:
                relations.append(gens[i] * gens[j])
    return relations


def family_presentation(n: int, d: int, cap: int = DEFAULT_TRUNCATION_CAP) -> Presentation:
    """The presentation of the family algebra for (n, d)."""
    spec = family_spec(n, d)
    k = spec.k
    if spec.branch == BRANCH_CHAIN:
        x = Poly.variable('x', ('x',))
        return Presentation(('x',), (x ** (n + 1),), cap)

    if spec.branch == BRANCH_EVEN:
        names = tuple(f'S{i}' for i in range(1, 2 * k + 2))
        S = [None] + [Poly.variable(s, names) for s in names]
        exceptions = {(2 * a - 1, 2 * a) for a in range(1, k + 1)} | {(2 * k + 1, 2 * k + 1)}
        # S1S2 = S3S4 = .. = S(2k-1)S(2k) = S(2k+1)^(n-2k)
        chain = [S[2 * a - 1] * S[2 * a] for a in range(1, k + 1)] + [S[2 * k + 1] ** (n - 2 * k)]
    else:
        names = tuple(f'S{i}' for i in range(1, 2 * k + 1))
        S = [None] + [Poly.variable(s, names) for s in names]
        exceptions = {(2 * a - 1, 2 * a) for a in range(1, k)}
        exceptions |= {(2 * k - 1, 2 * k - 1), (2 * k, 2 * k)}
        # S1S2 = .. = S(2k-3)S(2k-2) = S(2k-1)^2 = S(2k)^(n-2k+1)
        chain = [S[2 * a - 1] * S[2 * a] for a in range(1, k)]
        chain += [S[2 * k - 1] ** 2, S[2 * k] ** (n - 2 * k + 1)]

    relations = _product_relations(names, exceptions)
    relations += [a - b for a, b in zip(chain, chain[1:])]
    return Presentation(names, relations, cap)


def _top_pair(A: LocalAlgebra) -> HPair:
    top = max(i for i in range(A.dim) if sum(A.basis[i]) == A.nilpotency_degree)
    vectors = [
        tuple(int(i == j) for j in range(A.dim))
        for i in range(1, A.dim) if i != top
    ]
    U = Subspace.span(vectors, A.dim)
    return make_hpair(A, U, tuple(int(top == j) for j in range(A.dim)), u_basis=vectors)


def family_pair(n: int, d: int, cap: int = DEFAULT_TRUNCATION_CAP) -> HPair:
    """The family pair: U spans every basis monomial of m except the socle generator.

    Raises:
        InvalidRange: Unless 2 <= d <= n.
    """
    A = build_algebra(family_presentation(n, d, cap))
    return _top_pair(A)


def family_checks(H: HPair, n: int, d: int) -> dict[str, bool]:
    """The facts the family construction promises, each checked directly."""
    A = H.algebra
    soc = socle(A)
    return {
        'dimension': A.dim == n + 1,
        'gorenstein': soc.dim == 1,
        'socle_is_top_power': soc == m_power(A, d),
        'nondegenerate': is_nondegenerate(H),
        'degree': hypersurface_equation(H).degree == d,
    }


# ---------------------------------------------------------------------------
# Census
# ---------------------------------------------------------------------------

def load_census_entry(path: Union[str, Path]) -> CensusEntry:
    """Read a census file; every expect_* key is required.

    Raises:
        PresentationFileError: A required key is missing.
    """
    pf = load_presentation_file(path)
    missing = [
        key for key, value in (
            ('U', pf.u_polys), ('complement', pf.complement),
            ('expect_equation', pf.expect_equation), ('expect_degree', pf.expect_degree),
            ('expect_normal', pf.expect_normal),
        ) if value is None
    ]
    if not pf.expect_singular_given:
        missing.append('expect_singular')
    if missing:
        raise PresentationFileError(f"{path}: census file lacks {', '.join(missing)}")
    return CensusEntry(
        name=pf.name,
        presentation=pf.presentation(),
        u_basis=pf.u_polys,
        complement=pf.complement,
        expected_equation=pf.expect_equation,
        degree=pf.expect_degree,
        singular_locus=pf.expect_singular,
        normal=pf.expect_normal,
    )


def catalog6() -> list[CensusEntry]:
    """The six Gorenstein local algebras of dimension 6, in table order."""
    return [load_census_entry(CENSUS_DIR / f'{name}.alg') for name in CENSUS_NAMES]


def census_pair(entry: CensusEntry) -> HPair:
    A = build_algebra(entry.presentation)
    return hpair_from_polys(A, entry.u_basis, entry.complement)


def verify_census(
    entry: CensusEntry, seed: int = DEFAULT_SEED, samples: int = DEFAULT_SAMPLE_COUNT
) -> CensusVerdict:
    """Rebuild an entry and compare against its stored expectations."""
    H = census_pair(entry)
    equation = hypersurface_equation(H)
    expected = parse_poly(entry.expected_equation, ambient_names(H.size))
    soc = socle(H.algebra)

    if entry.singular_locus is None:
        reports = (verify_singular_subspace(equation, None, seed=seed, samples=samples),)
        locus_matches = entry.normal and reports[0].verdict == "normal (smooth)"
    else:
        reports = tuple(
            verify_singular_subspace(
                equation, LinearSubspace.from_vanishing(H.size, component),
                exhaustive=True, seed=seed, samples=samples,
            )
            for component in entry.singular_locus
        )
        # normal iff every component has codimension at least 2
        normal = all(r.verdict == "normal" for r in reports)
        locus_matches = (
            all(r.all_vanish and r.smooth_samples == r.sampled for r in reports)
            and normal == entry.normal
        )

    verdict = CensusVerdict(
        name=entry.name,
        equation=format_poly(equation.poly),
        equation_matches=equation.poly == expected,
        degree=equation.degree,
        degree_matches=equation.degree == entry.degree,
        gorenstein=soc.dim == 1,
        nondegenerate=is_nondegenerate(H),
        singularity=reports,
        locus_matches=locus_matches,
    )
    logger.info("Census %s: %s", entry.name, "match" if verdict.ok else "MISMATCH")
    return verdict
