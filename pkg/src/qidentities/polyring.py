"""Exact Laurent polynomials in the parameters a, b, z, t over the rationals.

Monomials are exponent 4-tuples in the fixed variable order ``VARIABLES``.
Coefficients are kept as ``int`` whenever they are integral and as
``fractions.Fraction`` otherwise, so the common integer case stays fast.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Mapping, Tuple, Union

from .errors import InvalidBinding, NotDivisible

VARIABLES = ("a", "b", "z", "t")
NVARS = len(VARIABLES)
_INDEX = {name: i for i, name in enumerate(VARIABLES)}

Monomial = Tuple[int, int, int, int]
Scalar = Union[int, Fraction]
ZERO_EXP: Monomial = (0, 0, 0, 0)


def _norm(c) -> Scalar:
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        return _norm(Fraction(c.numerator, c.denominator))
    raise TypeError(f"coefficient must be rational, got {type(c).__name__}")


def monomial(**exps: int) -> Monomial:
    """Build an exponent tuple from keyword exponents, e.g. ``monomial(a=2, b=-1)``."""
    out = [0] * NVARS
    for name, e in exps.items():
        out[_INDEX[name]] = e
    return tuple(out)


def _madd(m1: Monomial, m2: Monomial) -> Monomial:
    return (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2], m1[3] + m2[3])


def _msub(m1: Monomial, m2: Monomial) -> Monomial:
    return (m1[0] - m2[0], m1[1] - m2[1], m1[2] - m2[2], m1[3] - m2[3])


class LaurentPoly:
    """Immutable Laurent polynomial with rational coefficients.

    Terms are stored in a dict ``Monomial -> coefficient`` with no zero
    coefficients, which makes equality a plain dict comparison.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        clean: Dict[Monomial, Scalar] = {}
        if terms:
            for m, c in terms.items():
                if len(m) != NVARS:
                    raise ValueError(f"monomial {m!r} must have {NVARS} exponents")
                c = _norm(c)
                if c:
                    clean[tuple(int(e) for e in m)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Scalar]) -> "LaurentPoly":
        # caller guarantees canonical form
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        c = _norm(c)
        return cls._raw({ZERO_EXP: c} if c else {})

    @classmethod
    def var(cls, name: str) -> "LaurentPoly":
        return cls._raw({monomial(**{name: 1}): 1})

    @classmethod
    def mono(cls, coeff=1, **exps: int) -> "LaurentPoly":
        return cls({monomial(**exps): coeff})

    @classmethod
    def coerce(cls, x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        return cls.const(x)

    # -- inspection -----------------------------------------------------

    @property
    def terms(self) -> Dict[Monomial, Scalar]:
        return dict(self._terms)

    def items(self):
        """Terms in canonical (lexicographic) monomial order."""
        return sorted(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and ZERO_EXP in self._terms)

    def constant_value(self) -> Scalar:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self._terms.get(ZERO_EXP, 0)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def coefficient(self, m: Monomial) -> Scalar:
        return self._terms.get(tuple(m), 0)

    def variables(self) -> set:
        used = set()
        for m in self._terms:
            used.update(VARIABLES[i] for i, e in enumerate(m) if e)
        return used

    # -- ring operations ------------------------------------------------

    def __add__(self, other) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            try:
                other = LaurentPoly.const(other)
            except TypeError:
                return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = _norm(s)
            else:
                out.pop(m, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            try:
                other = LaurentPoly.const(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return LaurentPoly.coerce(other) - self

    def scale(self, c) -> "LaurentPoly":
        c = _norm(c)
        if not c:
            return LaurentPoly._raw({})
        if c == 1:
            return self
        return LaurentPoly._raw({m: _norm(v * c) for m, v in self._terms.items()})

    def __mul__(self, other) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return LaurentPoly._raw({})
        if len(a) > len(b):
            a, b = b, a
        if len(a) == 1:
            ((m1, c1),) = a.items()
            if m1 == ZERO_EXP:
                return LaurentPoly._raw(dict(b)) if c1 == 1 else LaurentPoly._raw(
                    {m: _norm(c * c1) for m, c in b.items()})
            return LaurentPoly._raw({_madd(m1, m2): _norm(c1 * c2) for m2, c2 in b.items()})
        out: Dict[Monomial, Scalar] = {}
        get = out.get
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = _madd(m1, m2)
                out[m] = get(m, 0) + c1 * c2
        return LaurentPoly._raw({m: _norm(c) for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse_monomial() ** (-n)
        result = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse_monomial(self) -> "LaurentPoly":
        """Inverse of a single nonzero term; any other polynomial has no Laurent inverse."""
        if len(self._terms) != 1:
            raise NotDivisible(f"{self} is not an invertible monomial")
        ((m, c),) = self._terms.items()
        return LaurentPoly._raw({tuple(-e for e in m): _norm(Fraction(1) / c)})

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        try:
            return self._terms == LaurentPoly.const(other)._terms
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- division -------------------------------------------------------

    def _content_monomial(self) -> Monomial:
        ms = list(self._terms)
        return tuple(min(m[i] for m in ms) for i in range(NVARS))

    def exact_div(self, d) -> "LaurentPoly":
        """Return ``r`` with ``r * d == self``; raise NotDivisible otherwise."""
        d = LaurentPoly.coerce(d)
        if not d._terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self._terms:
            return self
        if len(d._terms) == 1:
            return self * d.inverse_monomial()
        # Factor out monomial content; the quotient of content-free parts is an
        # ordinary polynomial, found by lex-order division by a single divisor.
        mp, md = self._content_monomial(), d._content_monomial()
        num = {_msub(m, mp): c for m, c in self._terms.items()}
        den = {_msub(m, md): c for m, c in d._terms.items()}
        lead_m = max(den)
        lead_c = Fraction(den[lead_m])
        quot: Dict[Monomial, Scalar] = {}
        rem = num
        while rem:
            rm = max(rem)
            shift = _msub(rm, lead_m)
            if min(shift) < 0:
                raise NotDivisible(f"{self} is not divisible by {d}")
            qc = _norm(rem[rm] / lead_c)
            quot[shift] = qc
            for m, c in den.items():
                key = _madd(m, shift)
                v = rem.get(key, 0) - qc * c
                if v:
                    rem[key] = v
                else:
                    rem.pop(key, None)
        shift = _msub(mp, md)
        return LaurentPoly({_madd(m, shift): c for m, c in quot.items()})

    def __truediv__(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return self.exact_div(other)
        if isinstance(other, (int, Rational)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self.scale(Fraction(1) / _norm(other))
        return NotImplemented

    # -- substitution and evaluation ------------------------------------

    def substitute(self, bindings: Mapping[str, object]) -> "LaurentPoly":
        """Simultaneously replace variables by polynomials or rationals."""
        if not bindings:
            return self
        idx = []
        for name, value in bindings.items():
            if name not in _INDEX:
                raise InvalidBinding(f"unknown variable {name!r}")
            idx.append((_INDEX[name], LaurentPoly.coerce(value)))
        bound = {i for i, _ in idx}
        cache: Dict[Tuple[int, int], LaurentPoly] = {}

        def power(i: int, value: LaurentPoly, e: int) -> LaurentPoly:
            key = (i, e)
            if key not in cache:
                if e < 0 and len(value) != 1:
                    raise InvalidBinding(
                        f"negative power of {VARIABLES[i]} bound to non-monomial {value}")
                cache[key] = value ** e
            return cache[key]

        result = LaurentPoly._raw({})
        for m, c in self._terms.items():
            keep = tuple(0 if i in bound else e for i, e in enumerate(m))
            term = LaurentPoly._raw({keep: c})
            for i, value in idx:
                if m[i]:
                    term = term * power(i, value, m[i])
            result = result + term
        return result

    def evaluate(self, point: Mapping[str, object]) -> Fraction:
        """Exact value at a rational point; every used variable must be bound."""
        total = Fraction(0)
        for m, c in self._terms.items():
            v = Fraction(c)
            for i, e in enumerate(m):
                if not e:
                    continue
                name = VARIABLES[i]
                if name not in point:
                    raise KeyError(f"variable {name!r} is unbound")
                x = Fraction(point[name])
                if e < 0 and x == 0:
                    raise ZeroDivisionError(f"{name}=0 at negative exponent {e}")
                v *= x ** e
            total += v
        return total

    # -- serialization --------------------------------------------------

    def to_json(self) -> list:
        out = []
        for m, c in self.items():
            c = Fraction(c)
            out.append({"coeff": f"{c.numerator}/{c.denominator}",
                        "exps": dict(zip(VARIABLES, m))})
        return out

    @classmethod
    def from_json(cls, data: Iterable[Mapping]) -> "LaurentPoly":
        terms: Dict[Monomial, Fraction] = {}
        for entry in data:
            m = tuple(int(entry["exps"].get(v, 0)) for v in VARIABLES)
            terms[m] = terms.get(m, 0) + Fraction(entry["coeff"])
        return cls(terms)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for m, c in sorted(self._terms.items(), reverse=True):
            mono = "*".join(
                VARIABLES[i] if e == 1 else f"{VARIABLES[i]}^{e}"
                for i, e in enumerate(m) if e)
            neg = c < 0
            mag = -c if neg else c
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not pieces:
                pieces.append(f"-{body}" if neg else body)
            else:
                pieces.append(f" - {body}" if neg else f" + {body}")
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)
a = LaurentPoly.var("a")
b = LaurentPoly.var("b")
z = LaurentPoly.var("z")
t = LaurentPoly.var("t")


def poly_add(p, q) -> LaurentPoly:
    return LaurentPoly.coerce(p) + LaurentPoly.coerce(q)


def poly_mul(p, q) -> LaurentPoly:
    return LaurentPoly.coerce(p) * LaurentPoly.coerce(q)


def poly_exact_div(p, d) -> LaurentPoly:
    return LaurentPoly.coerce(p).exact_div(d)


def poly_substitute(p, bindings: Mapping[str, object]) -> LaurentPoly:
    return LaurentPoly.coerce(p).substitute(bindings)


def poly_eval(p, point: Mapping[str, object]) -> Fraction:
    return LaurentPoly.coerce(p).evaluate(point)
