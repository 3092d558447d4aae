"""Kauffman bracket state sum for closed dl-braids and the Markov trace.

The closure of a classical dl-braid word is evaluated by resolving every
crossing with  L_+ = q^{1/4} L_0 + q^{-1/4} L_oo.  Each of the 2^c resulting
states is a disjoint union of loops decorated by double-line passages; a
loop's winding is the absolute net signed count of passages along a
traversal (a passage counts with the double line's sign when crossed
downward, against it when crossed upward).  A winding-zero loop contributes
the scalar delta = -(q^{1/2} + q^{-1/2}); a winding-m loop contributes the
variable x_m.

Multiwinding variables are then eliminated recursively: x_k is the value of
the crossingless k-winding loop, presented as the closure of
sigma_1 ... sigma_{k-1} tau_1 ... tau_k with the framing of that braided
presentation corrected by (-q^{3/4})^{-(k-1)}.  The result lives in Z[q^(1/4),
q^(-1/4)][x], with x = x_1.

The trace divides out a writhe power.  The framed normalization
(-q^{3/4})^{-wr} makes positive and negative stabilization act trivially and
is the default; the "paper" normalization (-q^{1/4})^{-wr} is kept as a mode
for comparison, with the two stabilization factors exact inverses of each
other rather than a common scalar.

The Chebyshev basis S_0 = 1, S_1 = x, S_{i+1} = x S_i - S_{i-1} carries the
torsion of the skein module of S^2 x S^1: the S_i coefficient for i >= 1
lives in Z[q^(+-1/4)]/(1 - q^{(2i+4)/4}), reduced by ``hp_reduce``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping

from .braid import BraidWord, sigma, tau
from .ring import DELTA, MINUS_Q34, QScalar, SkeinValue


class XPoly:
    """Polynomial in x = x_1 with QScalar coefficients, degrees >= 0."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, QScalar] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[int, QScalar] = {}
        for d, c in items:
            if d < 0:
                raise ValueError("XPoly degrees must be nonnegative")
            s = acc.get(d, QScalar.zero()) + c
            if s:
                acc[d] = s
            elif d in acc:
                del acc[d]
        object.__setattr__(self, "coeffs", dict(sorted(acc.items())))

    def __setattr__(self, name, value):
        raise AttributeError("XPoly is immutable")

    @classmethod
    def zero(cls) -> "XPoly":
        return cls()

    @classmethod
    def scalar(cls, c: QScalar) -> "XPoly":
        return cls({0: c})

    @classmethod
    def x_power(cls, d: int, c: QScalar = QScalar.one()) -> "XPoly":
        return cls({d: c})

    def degree(self) -> int:
        return max(self.coeffs, default=-1)

    def coeff(self, d: int) -> QScalar:
        return self.coeffs.get(d, QScalar.zero())

    def __add__(self, other: "XPoly") -> "XPoly":
        acc = dict(self.coeffs)
        for d, c in other.coeffs.items():
            s = acc.get(d, QScalar.zero()) + c
            if s:
                acc[d] = s
            elif d in acc:
                del acc[d]
        return XPoly(acc)

    def __neg__(self) -> "XPoly":
        return XPoly({d: -c for d, c in self.coeffs.items()})

    def __sub__(self, other: "XPoly") -> "XPoly":
        return self + (-other)

    def __mul__(self, other: "XPoly") -> "XPoly":
        acc: dict[int, QScalar] = {}
        for d1, c1 in self.coeffs.items():
            for d2, c2 in other.coeffs.items():
                s = acc.get(d1 + d2, QScalar.zero()) + c1 * c2
                if s:
                    acc[d1 + d2] = s
                elif d1 + d2 in acc:
                    del acc[d1 + d2]
        return XPoly(acc)

    def scale(self, c: QScalar) -> "XPoly":
        return XPoly({d: v * c for d, v in self.coeffs.items()}) if c else XPoly()

    def __eq__(self, other):
        return isinstance(other, XPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs.items()))

    def __bool__(self):
        return bool(self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for d, c in self.coeffs.items():
            mono = "" if d == 0 else ("x1" if d == 1 else f"x1^{d}")
            if not mono:
                parts.append(str(c))
            elif c.is_one():
                parts.append(mono)
            else:
                parts.append(f"({c})*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"XPoly({self.coeffs!r})"


# ---------------------------------------------------------------------------
# state sum
# ---------------------------------------------------------------------------

def bracket_states(w: BraidWord) -> Iterator[tuple[QScalar, list[int]]]:
    """All bracket states of the closure of w.

    Yields (state coefficient, list of per-loop net signed windings).
    Crossings are resolved in word order, identity smoothing first.
    """
    if not w.is_classical():
        raise ValueError("bracket is defined for classical (rho-free) words")
    n, letters = w.n, w.letters
    rows = len(letters)
    if rows == 0:
        yield QScalar.one(), [0] * n
        return
    crossings = [k for k, lt in enumerate(letters) if lt.kind == "s"]
    for mask in range(1 << len(crossings)):
        smooth = {k: (mask >> j) & 1 for j, k in enumerate(crossings)}
        coeff = QScalar.one()
        # edges: (upper point, lower point, tau weight); for cups and caps
        # the two points sit on the same boundary and the weight is 0
        edges: list[tuple[tuple[int, int], tuple[int, int], int]] = []
        for k, lt in enumerate(letters):
            i = lt.index
            if lt.kind == "t":
                busy = {i}
                edges.append(((k, i), (k + 1, i), lt.sign))
            else:
                busy = {i, i + 1}
                if smooth[k] == 0:
                    coeff = coeff * QScalar.q_quarter(lt.sign)
                    edges.append(((k, i), (k + 1, i), 0))
                    edges.append(((k, i + 1), (k + 1, i + 1), 0))
                else:
                    coeff = coeff * QScalar.q_quarter(-lt.sign)
                    edges.append(((k, i), (k, i + 1), 0))
                    edges.append(((k + 1, i), (k + 1, i + 1), 0))
            for p in range(1, n + 1):
                if p not in busy:
                    edges.append(((k, p), (k + 1, p), 0))
        for p in range(1, n + 1):
            edges.append(((rows, p), (0, p), 0))
        yield coeff, _loop_windings(edges)


def _loop_windings(edges) -> list[int]:
    incident: dict[tuple[int, int], list[int]] = {}
    for idx, (a, b, _) in enumerate(edges):
        incident.setdefault(a, []).append(idx)
        incident.setdefault(b, []).append(idx)
    used = [False] * len(edges)
    nets = []
    for start in range(len(edges)):
        if used[start]:
            continue
        net = 0
        idx = start
        pt = edges[start][0]
        while not used[idx]:
            used[idx] = True
            a, b, wgt = edges[idx]
            if pt == a:
                net += wgt
                pt = b
            else:
                net -= wgt
                pt = a
            e1, e2 = incident[pt]
            idx = e2 if e1 == idx else e1
        nets.append(net)
    return nets


def bracket(w: BraidWord) -> SkeinValue:
    """Bracket value of the closure of w, before multiwinding resolution."""
    total = SkeinValue.zero()
    for coeff, nets in bracket_states(w):
        mono: dict[int, int] = {}
        for net in nets:
            m = abs(net)
            if m == 0:
                coeff = coeff * DELTA
            else:
                mono[m] = mono.get(m, 0) + 1
        total = total + SkeinValue({tuple(sorted(mono.items())): coeff})
    return total


# ---------------------------------------------------------------------------
# multiwinding resolution
# ---------------------------------------------------------------------------

_X_CACHE: dict[int, XPoly] = {}


def _x_poly(k: int) -> XPoly:
    """The crossingless k-winding loop as a polynomial in x = x_1."""
    if k in _X_CACHE:
        return _X_CACHE[k]
    if k == 1:
        val = XPoly.x_power(1)
    else:
        word = BraidWord(
            k,
            tuple(sigma(i, 1) for i in range(1, k)) + tuple(tau(j, 1) for j in range(1, k + 1)),
        )
        b = bracket(word)
        if b.max_variable_index() >= k:
            raise AssertionError(
                f"multiwinding recursion failed to descend below x_{k}"
            )
        val = resolve_multiwinding(b).scale(MINUS_Q34 ** (-(k - 1)))
    _X_CACHE[k] = val
    return val


def resolve_multiwinding(s: SkeinValue) -> XPoly:
    """Eliminate every x_k, k >= 2, leaving a polynomial in x = x_1."""
    out = XPoly.zero()
    for mono, coeff in s.terms.items():
        term = XPoly.scalar(QScalar.one())
        for idx, exp in mono:
            p = _x_poly(idx)
            for _ in range(exp):
                term = term * p
        out = out + term.scale(coeff)
    return out


def trace(w: BraidWord, normalization: str = "framed") -> XPoly:
    """Writhe-normalized resolved bracket of the closure of w."""
    if normalization == "framed":
        factor = MINUS_Q34 ** (-w.writhe())
    elif normalization == "paper":
        factor = QScalar({1: -1}) ** (-w.writhe())
    else:
        raise ValueError(f"unknown normalization {normalization!r}")
    return resolve_multiwinding(bracket(w)).scale(factor)


def stabilization_factor(w: BraidWord, sign: int, normalization: str = "framed") -> QScalar:
    """The scalar u with trace(w with a stabilized extra strand) = u * trace(w)."""
    if sign not in (1, -1):
        raise ValueError("sign must be +-1")
    base = trace(w, normalization)
    stab = trace(w.shift(right=1).compose(BraidWord(w.n + 1, (sigma(w.n, sign),))), normalization)
    if not base:
        raise ValueError("trace of the base word vanishes; factor undefined")
    d = base.degree()
    u = stab.coeff(d).divide_exact(base.coeff(d))
    if stab != base.scale(u):
        raise ValueError("stabilization did not act by a scalar")
    return u


# ---------------------------------------------------------------------------
# Chebyshev basis and the torsion normal form
# ---------------------------------------------------------------------------

def _chebyshev_polys(up_to: int) -> list[XPoly]:
    polys = [XPoly.scalar(QScalar.one()), XPoly.x_power(1)]
    x = XPoly.x_power(1)
    while len(polys) <= up_to:
        polys.append(x * polys[-1] - polys[-2])
    return polys[: up_to + 1]


def chebyshev_coeffs(p: XPoly) -> list[QScalar]:
    """Coefficients of p in the basis S_0 = 1, S_1 = x, S_{i+1} = x S_i - S_{i-1}."""
    deg = p.degree()
    if deg < 0:
        return [QScalar.zero()]
    polys = _chebyshev_polys(deg)
    coeffs = [QScalar.zero()] * (deg + 1)
    work = p
    for d in range(deg, -1, -1):
        c = work.coeff(d)
        coeffs[d] = c
        if c:
            work = work - polys[d].scale(c)
    if work:
        raise AssertionError("Chebyshev reduction left a remainder")
    return coeffs


def chebyshev_expand(coeffs: list[QScalar]) -> XPoly:
    """Inverse of chebyshev_coeffs."""
    polys = _chebyshev_polys(max(len(coeffs) - 1, 1))
    out = XPoly.zero()
    for i, c in enumerate(coeffs):
        out = out + polys[i].scale(c)
    return out


@dataclass(frozen=True)
class HPNormalForm:
    """Image in Z[q^(+-1/4)] + sum_i Z[q^(+-1/4)]/(1 - q^{(2i+4)/4})."""

    c0: QScalar
    torsion: tuple[QScalar, ...]  # entry i-1 reduced mod 2i+4 quarter-units

    def __str__(self):
        inner = "; ".join(
            f"i={i + 1}: {c}" for i, c in enumerate(self.torsion)
        )
        return f"[{self.c0} | {inner}]" if inner else f"[{self.c0} | ]"


def reduce_exponents(c: QScalar, modulus: int) -> QScalar:
    """Fold every quarter-exponent of c into [0, modulus)."""
    acc: dict[int, int] = {}
    for k, v in c.terms.items():
        r = k % modulus
        acc[r] = acc.get(r, 0) + v
    return QScalar(acc)


def hp_reduce(coeffs: list[QScalar]) -> HPNormalForm:
    """Reduce Chebyshev coefficients; S_i torsion modulus is 2i+4 quarter-units."""
    c0 = coeffs[0] if coeffs else QScalar.zero()
    torsion = [
        reduce_exponents(c, 2 * i + 4) for i, c in enumerate(coeffs[1:], start=1)
    ]
    while torsion and not torsion[-1]:
        torsion.pop()
    return HPNormalForm(c0, tuple(torsion))


def hp_normal_form(w: BraidWord, normalization: str = "framed") -> HPNormalForm:
    return hp_reduce(chebyshev_coeffs(trace(w, normalization)))
