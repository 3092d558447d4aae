"""Exact scalar rings: Laurent polynomials in q^(1/4) and v, and skein values.

All arithmetic is over the integers; no floating point anywhere.  Exponents of
q are stored in quarter-integer units (the stored integer k means q^(k/4)),
exponents of v in whole units.  The two rings are related by the substitution
v = q^(-1/2), realized by :func:`v_to_q`.

A :class:`SkeinValue` is an element of the free commutative ring over the
q-scalars on the winding variables x1, x2, ...; the variable x_m stands for a
crossingless loop of absolute winding m, and the empty monomial for a multiple
of the empty link.
"""

from __future__ import annotations

from typing import Iterable, Mapping


class Laurent:
    """Sparse Laurent polynomial with integer coefficients in one variable.

    Internally a map from exponent to nonzero coefficient.  Immutable;
    arithmetic returns new objects, zero coefficients are never stored.
    """

    __slots__ = ("terms",)

    #: printed name of the variable, overridden by subclasses
    VAR = "z"

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, int] = {}
        for exp, coeff in items:
            c = acc.get(exp, 0) + coeff
            if c:
                acc[exp] = c
            elif exp in acc:
                del acc[exp]
        object.__setattr__(self, "terms", dict(sorted(acc.items())))

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({0: 1})

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1):
        return cls({exp: coeff})

    # -- ring structure ----------------------------------------------------

    def _check_same(self, other) -> None:
        if type(self) is not type(other):
            raise TypeError(
                f"cannot combine {type(self).__name__} with {type(other).__name__}"
            )

    def __add__(self, other):
        self._check_same(other)
        acc = dict(self.terms)
        for exp, c in other.terms.items():
            s = acc.get(exp, 0) + c
            if s:
                acc[exp] = s
            elif exp in acc:
                del acc[exp]
        return type(self)(acc)

    def __neg__(self):
        return type(self)({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return type(self)({e: c * other for e, c in self.terms.items()})
        if not isinstance(other, Laurent):
            return NotImplemented
        self._check_same(other)
        acc: dict[int, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                s = acc.get(e, 0) + c1 * c2
                if s:
                    acc[e] = s
                elif e in acc:
                    del acc[e]
        return type(self)(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = type(self).one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self):
        """Inverse of a monomial with coefficient +-1."""
        if len(self.terms) != 1:
            raise ValueError(f"cannot invert non-monomial {self}")
        ((e, c),) = self.terms.items()
        if c not in (1, -1):
            raise ValueError(f"cannot invert coefficient {c}")
        return type(self)({-e: c})

    def divide_exact(self, divisor):
        """Exact quotient self / divisor; raises ValueError if not divisible."""
        self._check_same(divisor)
        if not divisor.terms:
            raise ValueError("division by zero")
        if not self.terms:
            return type(self).zero()
        rem = dict(self.terms)
        d_lead = max(divisor.terms)
        d_coeff = divisor.terms[d_lead]
        # any true quotient has exponents bounded below by this
        e_min = min(self.terms) - min(divisor.terms)
        quot: dict[int, int] = {}
        while rem:
            r_lead = max(rem)
            q, r = divmod(rem[r_lead], d_coeff)
            if r:
                raise ValueError(f"{self} is not divisible by {divisor}")
            e = r_lead - d_lead
            if e < e_min:
                raise ValueError(f"{self} is not divisible by {divisor}")
            quot[e] = q
            for de, dc in divisor.terms.items():
                s = rem.get(e + de, 0) - q * dc
                if s:
                    rem[e + de] = s
                elif e + de in rem:
                    del rem[e + de]
        return type(self)(quot)

    # -- comparisons / hashing ---------------------------------------------

    def __eq__(self, other):
        return type(self) is type(other) and self.terms == other.terms

    def __hash__(self):
        return hash((type(self).__name__, tuple(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_one(self) -> bool:
        return self.terms == {0: 1}

    # -- rendering -----------------------------------------------------------

    def _term_str(self, exp: int, coeff: int) -> str:
        if exp == 0:
            return str(coeff)
        return f"{coeff}*{self.VAR}^{self._exp_str(exp)}"

    @staticmethod
    def _exp_str(exp: int) -> str:
        return str(exp)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(self._term_str(e, c) for e, c in self.terms.items())

    def __repr__(self):
        return f"{type(self).__name__}({self.terms!r})"


class QScalar(Laurent):
    """Element of Z[q^(+-1/4)]; exponent k means q^(k/4)."""

    VAR = "q"

    @staticmethod
    def _exp_str(exp: int) -> str:
        return f"({exp}/4)"

    @classmethod
    def q_quarter(cls, k: int, coeff: int = 1) -> "QScalar":
        """coeff * q^(k/4)."""
        return cls({k: coeff})


class VScalar(Laurent):
    """Element of Z[v^(+-1)]."""

    VAR = "v"

    @classmethod
    def v(cls, m: int, coeff: int = 1) -> "VScalar":
        """coeff * v^m."""
        return cls({m: coeff})


#: the value of a trivial (winding-zero) loop: -(q^(1/2) + q^(-1/2))
DELTA = QScalar({2: -1, -2: -1})

#: -q^(3/4), the framing factor of a positive kink
MINUS_Q34 = QScalar({3: -1})


def v_to_q(a: VScalar) -> QScalar:
    """Ring homomorphism substituting v = q^(-1/2): v^m -> q^(-2m/4)."""
    return QScalar({-2 * m: c for m, c in a.terms.items()})


# ---------------------------------------------------------------------------
# Skein values
# ---------------------------------------------------------------------------

Monomial = tuple[tuple[int, int], ...]  # sorted ((index, exponent), ...), exps > 0


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    acc: dict[int, int] = dict(m1)
    for idx, e in m2:
        acc[idx] = acc.get(idx, 0) + e
    return tuple(sorted(acc.items()))


class SkeinValue:
    """Finitely supported map from monomials in x1, x2, ... to QScalar.

    The product is the disjoint-union product: bilinear, commutative,
    monomial exponent vectors add.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, QScalar] | Iterable[tuple[Monomial, QScalar]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Monomial, QScalar] = {}
        for mono, coeff in items:
            mono = tuple(sorted((i, e) for i, e in mono if e))
            if any(e < 0 or i < 1 for i, e in mono):
                raise ValueError(f"bad monomial {mono}")
            c = acc.get(mono, QScalar.zero()) + coeff
            if c:
                acc[mono] = c
            elif mono in acc:
                del acc[mono]
        object.__setattr__(self, "terms", dict(sorted(acc.items())))

    def __setattr__(self, name, value):
        raise AttributeError("SkeinValue is immutable")

    @classmethod
    def zero(cls) -> "SkeinValue":
        return cls()

    @classmethod
    def scalar(cls, c: QScalar) -> "SkeinValue":
        return cls({(): c})

    @classmethod
    def variable(cls, m: int) -> "SkeinValue":
        """The single variable x_m."""
        if m < 1:
            raise ValueError("variable index must be >= 1")
        return cls({((m, 1),): QScalar.one()})

    def __add__(self, other: "SkeinValue") -> "SkeinValue":
        acc = dict(self.terms)
        for mono, c in other.terms.items():
            s = acc.get(mono, QScalar.zero()) + c
            if s:
                acc[mono] = s
            elif mono in acc:
                del acc[mono]
        return SkeinValue(acc)

    def __neg__(self) -> "SkeinValue":
        return SkeinValue({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "SkeinValue") -> "SkeinValue":
        return self + (-other)

    def __mul__(self, other) -> "SkeinValue":
        if isinstance(other, QScalar):
            return SkeinValue({m: c * other for m, c in self.terms.items()})
        acc: dict[Monomial, QScalar] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                s = acc.get(m, QScalar.zero()) + c1 * c2
                if s:
                    acc[m] = s
                elif m in acc:
                    del acc[m]
        return SkeinValue(acc)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, SkeinValue) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple((m, c) for m, c in self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def max_variable_index(self) -> int:
        """Largest winding-variable index present (0 for pure scalars)."""
        return max((i for mono in self.terms for i, _ in mono), default=0)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, coeff in self.terms.items():
            mono_s = "*".join(
                f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in mono
            )
            if not mono:
                parts.append(str(coeff))
            elif coeff.is_one():
                parts.append(mono_s)
            else:
                parts.append(f"({coeff})*{mono_s}")
        return " + ".join(parts)

    def __repr__(self):
        return f"SkeinValue({self.terms!r})"
