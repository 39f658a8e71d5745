"""Data models and defaults for addact computations."""
from dataclasses import dataclass, field
from typing import Optional

from .calc.exactpoly import Poly
from .errors import VariableMismatch


# Largest truncation degree tried before a presentation is declared
# infinite-dimensional.
DEFAULT_TRUNCATION_CAP = 32

# Full passes over a generator system in shrink_generators.
DEFAULT_PASS_LIMIT = 64

DEFAULT_SEED = 0
DEFAULT_SAMPLE_COUNT = 100

# Sampled coordinates are drawn as p/q with |p| <= SAMPLE_NUMERATOR_BOUND.
SAMPLE_NUMERATOR_BOUND = 9
SAMPLE_DENOMINATOR_BOUND = 4

NEW_VARIABLE_NAME = 'w'
AMBIENT_PREFIX = 'z'
PARAMETER_PREFIX = 't'
SUBSPACE_PREFIX = 's'

BRANCH_CHAIN = 'chain'
BRANCH_EVEN = 'even'
BRANCH_ODD = 'odd'

UNIQUE_VERDICT = 'action is unique'
NOT_UNIQUE_VERDICT = 'at least two non-equivalent actions exist'


def ambient_names(count: int) -> tuple[str, ...]:
    """Projective coordinate names z0 .. z{count-1}."""
    return tuple(f'{AMBIENT_PREFIX}{i}' for i in range(count))


def parameter_names(count: int) -> tuple[str, ...]:
    """Group parameter names t1 .. t{count}."""
    return tuple(f'{PARAMETER_PREFIX}{i}' for i in range(1, count + 1))


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relations: tuple[Poly, ...]
    truncation_cap: int = DEFAULT_TRUNCATION_CAP

    def __post_init__(self):
        object.__setattr__(self, 'generators', tuple(self.generators))
        object.__setattr__(self, 'relations', tuple(self.relations))
        if not self.generators:
            raise ValueError("A presentation needs at least one generator")
        if self.truncation_cap < 1:
            raise ValueError(f"Truncation cap must be positive, got {self.truncation_cap}")
        for rel in self.relations:
            if rel.variables != self.generators:
                raise VariableMismatch(
                    f"Relation {rel} is over {rel.variables}, expected {self.generators}"
                )

    def describe(self) -> str:
        gens = ', '.join(self.generators)
        rels = ', '.join(str(r) for r in self.relations)
        return f"K[{gens}]/({rels})"


@dataclass(frozen=True)
class InvariantVector:
    dim: int
    hilbert: tuple[int, ...]
    socle_dim: int
    embedding_dim: int            # dim m/m^2 = hilbert[1]
    nilpotency_degree: int
    gorenstein: bool


@dataclass(frozen=True)
class ShrinkResult:
    generators: tuple[Poly, ...]  # reordered, distinguished generator last
    distinguished: Poly
    relations: tuple[Poly, ...]   # f_1..f_{l-1}, x_1 f_l, .., x_k f_l
    certificate_degree: int       # truncation degree of the non-membership test
    order: tuple[int, ...] = ()   # generator order the scan ran over


@dataclass(frozen=True)
class FamilySpec:
    n: int
    d: int
    branch: str                   # chain | even | odd
    k: int


@dataclass(frozen=True)
class CensusEntry:
    name: str
    presentation: Presentation
    u_basis: tuple[Poly, ...]
    complement: Poly
    expected_equation: str
    degree: int
    singular_locus: Optional[tuple[tuple[int, ...], ...]]  # components as vanishing coordinates, None for empty
    normal: bool


@dataclass(frozen=True)
class UniquenessReport:
    nondegenerate: bool
    gorenstein: bool
    socle_complementary: bool
    verdict: str


@dataclass(frozen=True)
class SingularityReport:
    all_vanish: bool
    codimension: int              # of the subspace inside the hypersurface
    sampled: int
    smooth_samples: int
    sample_failures: tuple[str, ...]
    verdict: str


@dataclass(frozen=True)
class CensusVerdict:
    name: str
    equation: str
    equation_matches: bool
    degree: int
    degree_matches: bool
    gorenstein: bool
    nondegenerate: bool
    singularity: tuple[SingularityReport, ...]  # one per locus component
    locus_matches: bool

    @property
    def ok(self) -> bool:
        return (self.equation_matches and self.degree_matches and self.gorenstein
                and self.nondegenerate and self.locus_matches)


@dataclass
class Report:
    """Structured CLI output. Every key is always present."""
    command: list[str]
    dim: Optional[int] = None
    hilbert: Optional[list[int]] = None
    socle_dim: Optional[int] = None
    gorenstein: Optional[bool] = None
    nilpotency_degree: Optional[int] = None
    nondegenerate: Optional[bool] = None
    unique_action: Optional[bool] = None
    equation: Optional[str] = None
    degree: Optional[int] = None
    action: list[str] = field(default_factory=list)
    certificates: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)
