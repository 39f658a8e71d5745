"""Reader for line-oriented presentation files.

A file is a sequence of keyed sections::

    name: example
    vars: x, y
    relations:
      x^4
      x^2*y
      x^3 - y^2
    U: x, y, x^2, x*y
    complement: x^3

``relations`` takes one polynomial per following line until the next key.
``#`` starts a comment. Census files add ``expect_equation``,
``expect_degree``, ``expect_singular`` and ``expect_normal`` (``yes`` or
``no``). A singular locus is ``none`` or components separated by ``;``,
each listing its vanishing coordinates: ``z0, z1, z2; z0, z1, z3``.
"""

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

from .calc.exactpoly import Poly, parse_poly
from .errors import AddactError, PresentationFileError
from .models import AMBIENT_PREFIX, DEFAULT_TRUNCATION_CAP, Presentation

_KEY_RE = re.compile(r'^([A-Za-z_]+)\s*:\s*(.*)$')

KNOWN_KEYS = (
    'name', 'vars', 'relations', 'U', 'complement',
    'expect_equation', 'expect_degree', 'expect_singular', 'expect_normal',
)


@dataclass(frozen=True)
class PresentationFile:
    name: str
    variables: tuple[str, ...]
    relations: tuple[Poly, ...]
    u_polys: Optional[tuple[Poly, ...]] = None
    complement: Optional[Poly] = None
    expect_equation: Optional[str] = None
    expect_degree: Optional[int] = None
    expect_singular: Optional[tuple[tuple[int, ...], ...]] = None
    expect_singular_given: bool = False
    expect_normal: Optional[bool] = None

    def presentation(self, cap: int = DEFAULT_TRUNCATION_CAP) -> Presentation:
        return Presentation(self.variables, self.relations, cap)


def _split_list(text: str) -> list[str]:
    return [item.strip() for item in text.split(',') if item.strip()]


def _sections(text: str, source: str) -> dict[str, list[str]]:
    sections: dict[str, list[str]] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        match = _KEY_RE.match(line)
        if match and match.group(1) in KNOWN_KEYS:
            key, rest = match.group(1), match.group(2).strip()
            if key in sections:
                raise PresentationFileError(f"{source}:{lineno}: duplicate key '{key}'")
            sections[key] = [rest] if rest else []
            current = key
        elif match:
            raise PresentationFileError(f"{source}:{lineno}: unknown key '{match.group(1)}'")
        elif current == 'relations':
            sections[current].append(line)
        else:
            raise PresentationFileError(f"{source}:{lineno}: unexpected line '{line}'")
    return sections


def _single(sections: dict[str, list[str]], key: str, source: str) -> Optional[str]:
    values = sections.get(key)
    if values is None:
        return None
    if len(values) != 1:
        raise PresentationFileError(f"{source}: key '{key}' takes exactly one value")
    return values[0]


def _parse_component(text: str, source: str) -> tuple[int, ...]:
    indices = []
    for item in _split_list(text):
        if not (item.startswith(AMBIENT_PREFIX) and item[len(AMBIENT_PREFIX):].isdigit()):
            raise PresentationFileError(f"{source}: bad coordinate '{item}' in expect_singular")
        indices.append(int(item[len(AMBIENT_PREFIX):]))
    if not indices:
        raise PresentationFileError(f"{source}: empty component in expect_singular")
    return tuple(indices)


def _parse_singular(value: str, source: str) -> Optional[tuple[tuple[int, ...], ...]]:
    """``none``, or components separated by ``;``, each a list of vanishing coordinates."""
    if value.lower() == 'none':
        return None
    return tuple(_parse_component(part, source) for part in value.split(';'))


def _parse_flag(value: str, source: str) -> bool:
    lowered = value.lower()
    if lowered in ('yes', 'true'):
        return True
    if lowered in ('no', 'false'):
        return False
    raise PresentationFileError(f"{source}: expected yes or no, got '{value}'")


def parse_presentation_text(text: str, source: str = '<string>') -> PresentationFile:
    """Parse the contents of a presentation file.

    Raises:
        PresentationFileError: Missing keys or malformed lines.
        AddactError: A polynomial fails to parse (the parser's own error
            type, with the file name prefixed).
    """
    sections = _sections(text, source)
    vars_line = _single(sections, 'vars', source)
    if not vars_line:
        raise PresentationFileError(f"{source}: missing 'vars'")
    variables = tuple(_split_list(vars_line))
    if len(set(variables)) != len(variables):
        raise PresentationFileError(f"{source}: repeated variable in {variables}")
    if 'relations' not in sections:
        raise PresentationFileError(f"{source}: missing 'relations'")

    def parse(expr: str) -> Poly:
        try:
            return parse_poly(expr, variables)
        except AddactError as exc:
            raise type(exc)(f"{source}: {exc}") from exc

    relations = tuple(parse(line) for line in sections['relations'])
    u_line = _single(sections, 'U', source)
    u_polys = tuple(parse(item) for item in _split_list(u_line)) if u_line else None
    complement_line = _single(sections, 'complement', source)
    degree_line = _single(sections, 'expect_degree', source)
    if degree_line is not None and not degree_line.isdigit():
        raise PresentationFileError(f"{source}: expect_degree must be an integer")
    singular_line = _single(sections, 'expect_singular', source)
    normal_line = _single(sections, 'expect_normal', source)

    return PresentationFile(
        name=_single(sections, 'name', source) or Path(source).stem,
        variables=variables,
        relations=relations,
        u_polys=u_polys,
        complement=parse(complement_line) if complement_line else None,
        expect_equation=_single(sections, 'expect_equation', source),
        expect_degree=int(degree_line) if degree_line is not None else None,
        expect_singular=_parse_singular(singular_line, source) if singular_line else None,
        expect_singular_given=singular_line is not None,
        expect_normal=_parse_flag(normal_line, source) if normal_line else None,
    )


def load_presentation_file(path: Union[str, Path]) -> PresentationFile:
    path = Path(path)
    with open(path, encoding='utf-8') as f:
        return parse_presentation_text(f.read(), source=str(path))
