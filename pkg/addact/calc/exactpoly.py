"""Exact sparse multivariate polynomials over the rationals.

A polynomial lives over an ordered tuple of variable names and stores a map
from exponent tuples to ``Fraction`` coefficients with no zero entries.
Terms are printed in descending graded-lexicographic order, so output is
deterministic and reads back through ``parse_poly`` unchanged.
"""

import itertools
import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from ..errors import (
    IndexOutOfRange,
    NegativeExponent,
    PolySyntaxError,
    UnknownVariable,
    VariableMismatch,
)


Monomial = tuple[int, ...]
Scalar = Fraction


def grlex_key(mono: Monomial) -> tuple[int, Monomial]:
    """Sort key for graded-lex order: total degree first, then lex on exponents."""
    return (sum(mono), mono)


def monomials_of_degree(nvars: int, degree: int) -> list[Monomial]:
    """All exponent tuples of the given total degree, ascending in grlex."""
    monos = []
    for combo in itertools.combinations_with_replacement(range(nvars), degree):
        exps = [0] * nvars
        for idx in combo:
            exps[idx] += 1
        monos.append(tuple(exps))
    monos.sort()
    return monos


def monomials_below(nvars: int, bound: int) -> Iterator[Monomial]:
    """Yield every monomial of total degree < bound, ascending in grlex."""
    for deg in range(bound):
        yield from monomials_of_degree(nvars, deg)


class Poly:
    """Immutable sparse polynomial with ``Fraction`` coefficients."""

    __slots__ = ('variables', 'terms', '_hash')

    def __init__(self, variables: Sequence[str], terms: Mapping[Monomial, object] | None = None):
        self.variables = tuple(variables)
        nvars = len(self.variables)
        clean: dict[Monomial, Fraction] = {}
        for mono, coeff in (terms or {}).items():
            mono = tuple(mono)
            if len(mono) != nvars:
                raise VariableMismatch(
                    f"Monomial {mono} has {len(mono)} exponents, expected {nvars}"
                )
            c = Fraction(coeff)
            if c:
                clean[mono] = c
        self.terms = clean
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, variables: Sequence[str]) -> 'Poly':
        return cls(variables)

    @classmethod
    def constant(cls, value, variables: Sequence[str]) -> 'Poly':
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): value})

    @classmethod
    def variable(cls, name: str, variables: Sequence[str]) -> 'Poly':
        variables = tuple(variables)
        if name not in variables:
            raise UnknownVariable(f"Variable '{name}' is not among {variables}")
        exps = [0] * len(variables)
        exps[variables.index(name)] = 1
        return cls(variables, {tuple(exps): 1})

    @classmethod
    def monomial(cls, mono: Monomial, variables: Sequence[str], coeff=1) -> 'Poly':
        return cls(variables, {tuple(mono): coeff})

    # -- inspection -------------------------------------------------------

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    @property
    def min_degree(self) -> int:
        """Lowest total degree among the terms; -1 for the zero polynomial."""
        return min((sum(m) for m in self.terms), default=-1)

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    @property
    def constant_term(self) -> Fraction:
        return self.coefficient((0,) * len(self.variables))

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self.terms)

    def uses(self, index: int) -> bool:
        """True when some term has a positive exponent on variable ``index``."""
        return any(m[index] for m in self.terms)

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda item: grlex_key(item[0]), reverse=True)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> 'Poly':
        if isinstance(other, Poly):
            if other.variables != self.variables:
                raise VariableMismatch(
                    f"Cannot combine polynomials over {self.variables} and {other.variables}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.constant(other, self.variables)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            terms[mono] = terms.get(mono, 0) + c
        return Poly(self.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.variables, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly(self.variables)
            return Poly(self.variables, {m: c * other for m, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                terms[mono] = terms.get(mono, 0) + c1 * c2
        return Poly(self.variables, terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            raise NegativeExponent(f"Exponent must be non-negative, got {exponent}")
        result = Poly.constant(1, self.variables)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    # -- protocol ---------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r}, vars={list(self.variables)})"


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------

def _format_monomial(mono: Monomial, variables: Sequence[str]) -> str:
    parts = []
    for name, exp in zip(variables, mono):
        if exp == 1:
            parts.append(name)
        elif exp > 1:
            parts.append(f"{name}^{exp}")
    return '*'.join(parts)


def format_poly(p: Poly) -> str:
    """Canonical text: descending grlex, coefficients as ``a`` or ``a/b``.

    >>> format_poly(parse_poly("1/3*z1^3 + z0^2*z5", ["z0", "z1", "z5"]))
    'z0^2*z5 + 1/3*z1^3'
    """
    if not p.terms:
        return '0'
    pieces = []
    for i, (mono, coeff) in enumerate(p.sorted_terms()):
        negative = coeff < 0
        magnitude = -coeff if negative else coeff
        body = _format_monomial(mono, p.variables)
        if not body:
            text = str(magnitude)
        elif magnitude == 1:
            text = body
        else:
            text = f"{magnitude}*{body}"
        if i == 0:
            pieces.append(f"-{text}" if negative else text)
        else:
            pieces.append(f" - {text}" if negative else f" + {text}")
    return ''.join(pieces)


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------
#   expr     := term (('+'|'-') term)*
#   term     := ('-')? factor ('*' factor)*
#   factor   := rational | ident ('^' nat)? | '(' expr ')'
#   rational := int ('/' nat)?

_TOKEN_RE = re.compile(r'\s*(?:(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()])|(?P<bad>\S))')


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            break
        kind = match.lastgroup
        value = match.group(kind)
        if kind == 'bad':
            raise PolySyntaxError(f"Unexpected character '{value}' at position {match.start(kind)}")
        tokens.append((kind, value, match.start(kind)))
        pos = match.end()
    return tokens


class _Parser:
    def __init__(self, text: str, variables: tuple[str, ...]):
        self.text = text
        self.variables = variables
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        return None

    def at(self, value: str) -> bool:
        tok = self.peek()
        return tok is not None and tok[0] == 'op' and tok[1] == value

    def advance(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def fail(self, message: str):
        tok = self.peek()
        where = f"position {tok[2]}" if tok else "end of input"
        raise PolySyntaxError(f"{message} at {where} in '{self.text}'")

    def parse(self) -> Poly:
        if not self.tokens:
            self.fail("Empty expression")
        result = self.expr()
        if self.peek() is not None:
            self.fail(f"Unexpected token '{self.peek()[1]}'")
        return result

    def expr(self) -> Poly:
        result = self.term()
        while self.at('+') or self.at('-'):
            op = self.advance()[1]
            rhs = self.term()
            result = result + rhs if op == '+' else result - rhs
        return result

    def term(self) -> Poly:
        negate = False
        if self.at('-'):
            self.advance()
            negate = True
        result = self.factor()
        while self.at('*'):
            self.advance()
            result = result * self.factor()
        return -result if negate else result

    def factor(self) -> Poly:
        tok = self.peek()
        if tok is None:
            self.fail("Expected a factor")
        kind, value, _ = tok
        if kind == 'num':
            self.advance()
            numerator = int(value)
            if self.at('/'):
                self.advance()
                den_tok = self.peek()
                if den_tok is None or den_tok[0] != 'num':
                    self.fail("Expected a natural denominator")
                self.advance()
                denominator = int(den_tok[1])
                if denominator == 0:
                    raise PolySyntaxError(f"Zero denominator in '{self.text}'")
                return Poly.constant(Fraction(numerator, denominator), self.variables)
            return Poly.constant(numerator, self.variables)
        if kind == 'ident':
            self.advance()
            if value not in self.variables:
                raise UnknownVariable(f"Unknown variable '{value}' (expected one of {list(self.variables)})")
            base = Poly.variable(value, self.variables)
            if self.at('^'):
                self.advance()
                if self.at('-'):
                    raise NegativeExponent(f"Negative exponent on '{value}' in '{self.text}'")
                exp_tok = self.peek()
                if exp_tok is None or exp_tok[0] != 'num':
                    self.fail("Expected a natural exponent")
                self.advance()
                return base ** int(exp_tok[1])
            return base
        if self.at('('):
            self.advance()
            inner = self.expr()
            if not self.at(')'):
                self.fail("Expected ')'")
            self.advance()
            return inner
        self.fail(f"Unexpected token '{value}'")


def parse_poly(text: str, variables: Sequence[str]) -> Poly:
    """Parse a polynomial expression over the given variable names.

    Args:
        text: Expression such as ``"x^3 - y^2"`` or ``"1/2*x*y"``.
        variables: Ordered ambient variable names.

    Returns:
        The exact polynomial denoted by ``text``.

    Raises:
        PolySyntaxError: Malformed expression (including implicit products).
        UnknownVariable: An identifier is not in ``variables``.
        NegativeExponent: An exponent written as ``^-k``.
    """
    return _Parser(text, tuple(variables)).parse()


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

ARITH_OPS = ('add', 'sub', 'mul', 'scale', 'pow')


def arith(op: str, a: Poly, b) -> Poly:
    """Dispatch a named arithmetic operation.

    ``scale`` takes a scalar, ``pow`` a non-negative integer exponent, the
    others a polynomial over the same variables.
    """
    if op == 'add':
        return a + _same_ambient(a, b)
    if op == 'sub':
        return a - _same_ambient(a, b)
    if op == 'mul':
        return a * _same_ambient(a, b)
    if op == 'scale':
        return a * Fraction(b)
    if op == 'pow':
        return a ** b
    raise ValueError(f"Unknown operation '{op}'. Choose from {ARITH_OPS}")


def _same_ambient(a: Poly, b) -> Poly:
    if not isinstance(b, Poly):
        return Poly.constant(b, a.variables)
    if b.variables != a.variables:
        raise VariableMismatch(f"Cannot combine polynomials over {a.variables} and {b.variables}")
    return b


def partial_derivative(f: Poly, index: int) -> Poly:
    """Formal partial derivative with respect to variable ``index``."""
    if not 0 <= index < len(f.variables):
        raise IndexOutOfRange(f"Variable index {index} out of range for {len(f.variables)} variables")
    terms: dict[Monomial, Fraction] = {}
    for mono, coeff in f.terms.items():
        exp = mono[index]
        if exp:
            lowered = mono[:index] + (exp - 1,) + mono[index + 1:]
            terms[lowered] = terms.get(lowered, 0) + coeff * exp
    return Poly(f.variables, terms)


def substitute(f: Poly, assignment: Sequence[Poly]) -> Poly:
    """Replace each variable of ``f`` by the matching polynomial of ``assignment``.

    All assignment polynomials must share one ambient variable list, which
    becomes the ambient of the result.
    """
    if len(assignment) != len(f.variables):
        raise VariableMismatch(
            f"Substitution needs {len(f.variables)} polynomials, got {len(assignment)}"
        )
    if not assignment:
        return f
    target = assignment[0].variables
    for a in assignment:
        if a.variables != target:
            raise VariableMismatch("Substitution polynomials must share one ambient variable list")

    powers: dict[tuple[int, int], Poly] = {}

    def power(i: int, e: int) -> Poly:
        key = (i, e)
        if key not in powers:
            powers[key] = assignment[i] ** e
        return powers[key]

    result = Poly(target)
    for mono, coeff in f.terms.items():
        term = Poly.constant(coeff, target)
        for i, e in enumerate(mono):
            if e:
                term = term * power(i, e)
        result = result + term
    return result


def truncate_at_degree(f: Poly, bound: int) -> Poly:
    """Drop every term of total degree >= bound."""
    return Poly(f.variables, {m: c for m, c in f.terms.items() if sum(m) < bound})


def evaluate(f: Poly, values: Sequence) -> Fraction:
    """Exact value of ``f`` at a rational point."""
    if len(values) != len(f.variables):
        raise VariableMismatch(f"Need {len(f.variables)} values, got {len(values)}")
    point = [Fraction(v) for v in values]
    total = Fraction(0)
    for mono, coeff in f.terms.items():
        term = coeff
        for v, e in zip(point, mono):
            if e:
                term *= v ** e
        total += term
    return total


def homogenize(f: Poly, index: int, degree: int) -> Poly:
    """Raise every term to total degree ``degree`` with powers of variable ``index``."""
    if not 0 <= index < len(f.variables):
        raise IndexOutOfRange(f"Variable index {index} out of range for {len(f.variables)} variables")
    terms = {}
    for mono, coeff in f.terms.items():
        gap = degree - sum(mono)
        if gap < 0:
            raise ValueError(f"Term of degree {sum(mono)} exceeds target degree {degree}")
        lifted = list(mono)
        lifted[index] += gap
        terms[tuple(lifted)] = coeff
    return Poly(f.variables, terms)


def embed(f: Poly, variables: Sequence[str]) -> Poly:
    """Re-express ``f`` over a larger variable list, matching names."""
    variables = tuple(variables)
    positions = []
    for name in f.variables:
        if name not in variables:
            raise UnknownVariable(f"Variable '{name}' is missing from {variables}")
        positions.append(variables.index(name))
    terms = {}
    for mono, coeff in f.terms.items():
        exps = [0] * len(variables)
        for pos, e in zip(positions, mono):
            exps[pos] = e
        terms[tuple(exps)] = coeff
    return Poly(variables, terms)


def rename(f: Poly, variables: Sequence[str]) -> Poly:
    """Same term map over a new list of names of equal length."""
    variables = tuple(variables)
    if len(variables) != len(f.variables):
        raise VariableMismatch(f"Cannot rename {len(f.variables)} variables to {len(variables)}")
    return Poly(variables, f.terms)