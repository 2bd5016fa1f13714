"""Exact multivariate polynomial arithmetic over rational coefficients.

Polynomials live in Q[λ, x, y, a, b, p] with a fixed, ordered variable
registry.  Terms are stored as a map from dense exponent tuples (one slot
per registry variable) to nonzero ``Fraction`` coefficients, so mathematical
equality of polynomials coincides with structural equality of the maps.

The canonical term order used for printing is graded lexicographic over the
registry order (λ before x before y before a before b before p), highest
terms first.  ``str`` and ``Poly.parse`` are mutual inverses on that form,
which is what the CLI golden files and the JSON round-trip rely on.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Mapping, Union

VAR_NAMES: tuple[str, ...] = ("λ", "x", "y", "a", "b", "p")
NVARS = len(VAR_NAMES)

_VAR_INDEX = {name: i for i, name in enumerate(VAR_NAMES)}
# ASCII spellings accepted on input (CLI flags, config files, parsing).
_VAR_ALIASES = {"lambda": "λ", "lam": "λ"}

_ZERO_EXP = (0,) * NVARS

Scalar = Union[int, Fraction]
PolyLike = Union["Poly", int, Fraction]


class UnboundVariable(Exception):
    """A variable occurring in a polynomial was not assigned a value."""


def canonical_var(name: str) -> str:
    """Resolve a variable name (or alias) to its registry spelling."""
    name = _VAR_ALIASES.get(name, name)
    if name not in _VAR_INDEX:
        raise KeyError(f"unknown variable {name!r}; registry is {VAR_NAMES}")
    return name


class Poly:
    """Immutable polynomial in the registry variables with Fraction coefficients.

    Instances are canonical (no zero terms stored) and hashable; all
    operations are pure and return new values, so sharing across threads
    is safe.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, ...], Scalar] | None = None):
        canon: dict[tuple[int, ...], Fraction] = {}
        if terms:
            for exps, coeff in terms.items():
                coeff = Fraction(coeff)
                if coeff:
                    canon[exps] = coeff
        self._terms = canon
        self._hash: int | None = None

    @classmethod
    def const(cls, value: Scalar) -> "Poly":
        return cls({_ZERO_EXP: Fraction(value)})

    @classmethod
    def var(cls, name: str) -> "Poly":
        exps = [0] * NVARS
        exps[_VAR_INDEX[canonical_var(name)]] = 1
        return cls({tuple(exps): Fraction(1)})

    # -- basic structure ---------------------------------------------------

    @property
    def terms(self) -> Mapping[tuple[int, ...], Fraction]:
        return self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or self._terms.keys() == {_ZERO_EXP}

    def constant_value(self) -> Fraction:
        """The value of a constant polynomial (raises if non-constant)."""
        if not self._terms:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError(f"not a constant polynomial: {self}")
        return self._terms[_ZERO_EXP]

    def variables(self) -> set[str]:
        used: set[str] = set()
        for exps in self._terms:
            for i, e in enumerate(exps):
                if e:
                    used.add(VAR_NAMES[i])
        return used

    def degree(self, var: str | None = None) -> int:
        """Total degree, or the degree in one variable.  Zero poly has degree 0."""
        if not self._terms:
            return 0
        if var is None:
            return max(sum(exps) for exps in self._terms)
        i = _VAR_INDEX[canonical_var(var)]
        return max(exps[i] for exps in self._terms)

    def coefficient_of(self, var: str, power: int) -> Poly:
        """Collect the terms with the given power of ``var``, dropping that factor."""
        i = _VAR_INDEX[canonical_var(var)]
        out: dict[tuple[int, ...], Fraction] = {}
        for exps, coeff in self._terms.items():
            if exps[i] == power:
                reduced = list(exps)
                reduced[i] = 0
                out[tuple(reduced)] = coeff
        return Poly(out)

    # -- ring operations ---------------------------------------------------

    @staticmethod
    def _coerce(value) -> "Poly | None":
        if isinstance(value, Poly):
            return value
        if isinstance(value, (int, Fraction)):
            return Poly.const(value)
        return None

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for exps, coeff in other._terms.items():
            out[exps] = out.get(exps, Fraction(0)) + coeff
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly({exps: -coeff for exps, coeff in self._terms.items()})

    def __sub__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self._terms or not other._terms:
            return Poly()
        out: dict[tuple[int, ...], Fraction] = {}
        for ea, ca in self._terms.items():
            for eb, cb in other._terms.items():
                key = tuple(i + j for i, j in zip(ea, eb))
                out[key] = out.get(key, Fraction(0)) + ca * cb
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        return NotImplemented

    def __pow__(self, exponent: int) -> "Poly":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        result = Poly.const(1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- substitution and evaluation ----------------------------------------

    def substitute(self, assignments: Mapping[str, PolyLike]) -> "Poly":
        """Simultaneously substitute polynomials for variables.

        Unassigned variables are left in place.  Substitution is a ring
        homomorphism: ``(p*q).substitute(s) == p.substitute(s) * q.substitute(s)``.
        """
        amap: dict[int, Poly] = {}
        for name, value in assignments.items():
            replacement = self._coerce(value)
            if replacement is None:
                raise TypeError(f"cannot substitute value of type {type(value)!r}")
            amap[_VAR_INDEX[canonical_var(name)]] = replacement
        power_cache: dict[tuple[int, int], Poly] = {}

        def factor(i: int, e: int) -> Poly:
            key = (i, e)
            got = power_cache.get(key)
            if got is None:
                base = amap.get(i)
                if base is None:
                    base = Poly({tuple(1 if j == i else 0 for j in range(NVARS)): Fraction(1)})
                got = base ** e
                power_cache[key] = got
            return got

        total = Poly()
        for exps, coeff in self._terms.items():
            term = Poly.const(coeff)
            for i, e in enumerate(exps):
                if e:
                    term = term * factor(i, e)
            total = total + term
        return total

    def evaluate(self, point: Mapping[str, Scalar]) -> Fraction:
        """Exact value at a fully specified point.

        Raises ``UnboundVariable`` if any variable of the polynomial is
        missing from ``point``.
        """
        values: dict[int, Fraction] = {}
        for name, v in point.items():
            values[_VAR_INDEX[canonical_var(name)]] = Fraction(v)
        total = Fraction(0)
        for exps, coeff in self._terms.items():
            term = coeff
            for i, e in enumerate(exps):
                if e:
                    if i not in values:
                        raise UnboundVariable(f"variable {VAR_NAMES[i]!r} has no assigned value")
                    term *= values[i] ** e
            total += term
        return total

    # -- canonical text form -------------------------------------------------

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Terms in descending graded-lexicographic order."""
        return sorted(self._terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)

    @staticmethod
    def _monomial_str(exps: tuple[int, ...]) -> str:
        parts = []
        for i, e in enumerate(exps):
            if e == 1:
                parts.append(VAR_NAMES[i])
            elif e > 1:
                parts.append(f"{VAR_NAMES[i]}^{e}")
        return "*".join(parts)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces: list[str] = []
        for exps, coeff in self.sorted_terms():
            mono = self._monomial_str(exps)
            mag = abs(coeff)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not pieces:
                pieces.append(f"-{body}" if coeff < 0 else body)
            else:
                pieces.append(f"- {body}" if coeff < 0 else f"+ {body}")
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"Poly({self})"

    _TOKEN = re.compile(
        r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>λ|lambda|lam|[xyabp])|(?P<op>[*^+-])|(?P<bad>\S))"
    )

    @classmethod
    def parse(cls, text: str) -> "Poly":
        """Parse the canonical text form (inverse of ``str``).

        Accepts sums of terms ``coeff*var^e*...`` with optional signs,
        integer or num/den coefficients, and the ``lambda``/``lam`` aliases.
        """
        tokens: list[tuple[str, str]] = []
        for m in cls._TOKEN.finditer(text):
            kind = m.lastgroup
            if kind == "bad":
                raise ValueError(f"unexpected character {m.group('bad')!r} in polynomial {text!r}")
            tokens.append((kind, m.group(kind)))
        pos = 0

        def peek():
            return tokens[pos] if pos < len(tokens) else (None, None)

        def take():
            nonlocal pos
            tok = tokens[pos]
            pos += 1
            return tok

        def parse_factor() -> Poly:
            nonlocal pos
            kind, value = peek()
            if kind == "num":
                take()
                return cls.const(Fraction(value))
            if kind == "var":
                take()
                base = cls.var(value)
                kind, value = peek()
                if kind == "op" and value == "^":
                    take()
                    kind, value = peek()
                    if kind != "num" or "/" in value:
                        raise ValueError(f"exponent must be an integer in {text!r}")
                    take()
                    return base ** int(value)
                return base
            raise ValueError(f"malformed polynomial text {text!r}")

        def parse_term() -> Poly:
            term = parse_factor()
            while True:
                kind, value = peek()
                if kind == "op" and value == "*":
                    take()
                    term = term * parse_factor()
                else:
                    return term

        total = cls()
        sign = 1
        kind, value = peek()
        if kind == "op" and value in "+-":
            take()
            sign = -1 if value == "-" else 1
        elif kind is None:
            raise ValueError("empty polynomial text")
        while True:
            total = total + parse_term() * sign
            kind, value = peek()
            if kind is None:
                return total
            if kind == "op" and value in "+-":
                take()
                sign = -1 if value == "-" else 1
            else:
                raise ValueError(f"expected '+' or '-' in polynomial text {text!r}")


def as_poly(value: PolyLike) -> Poly:
    """Coerce an int or Fraction to a constant polynomial."""
    coerced = Poly._coerce(value)
    if coerced is None:
        raise TypeError(f"cannot interpret {value!r} as a polynomial")
    return coerced


ZERO = Poly()
ONE = Poly.const(1)
LAM = Poly.var("λ")
X = Poly.var("x")
Y = Poly.var("y")
A = Poly.var("a")
B = Poly.var("b")
P = Poly.var("p")
