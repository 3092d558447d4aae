"""Affine Hecke algebra with an exact Bernstein-style normal form.

Elements are finitely supported sums  sum_k  c_k * X^lambda_k T_{w_k}  with
lambda in Z^n, w a permutation of {1..n} and c a Laurent polynomial in v.
Generators T_1..T_{n-1}, X_1..X_n satisfy

    (T_i + 1)(T_i - v^-2) = 0,          T_i X_i T_i = v^-2 X_{i+1},
    braid relations for the T_i,        all X_j commuting,
    T_i X_j = X_j T_i for j not in {i, i+1}.

Products are normalized by pushing each T_i through X-letters one at a time:

    T_i X_i     = X_{i+1} T_i + (1 - v^-2) X_{i+1}
    T_i X_{i+1} = X_i T_i + (v^-2 - 1) X_{i+1}
    T_i X_i^-1     = X_{i+1}^-1 T_i + (v^-2 - 1) X_i^-1
    T_i X_{i+1}^-1 = X_i^-1 T_i + (1 - v^-2) X_i^-1

and composing T-parts with  T_i T_w = T_{s_i w}  when the length grows, else
(v^-2 - 1) T_w + v^-2 T_{s_i w}.

The map ``phi`` carries classical double-line braid words into the algebra by
sigma_i -> v T_i, tau_j -> X_j.  An independent polynomial-representation
oracle (generator actions on Laurent polynomials in x_1..x_n) is provided for
validating the multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

from .braid import BraidWord
from .ring import VScalar

Perm = tuple[int, ...]  # one-line notation, p[i-1] = image of i

V_ONE = VScalar.one()
T_COEF_LOW = VScalar({-2: 1, 0: -1})   # v^-2 - 1
T_COEF_Q = VScalar({-2: 1})            # v^-2


# ---------------------------------------------------------------------------
# permutations
# ---------------------------------------------------------------------------

def identity_perm(n: int) -> Perm:
    return tuple(range(1, n + 1))


def perm_len(p: Perm) -> int:
    """Number of inversions."""
    return sum(
        1
        for a in range(len(p))
        for b in range(a + 1, len(p))
        if p[a] > p[b]
    )


def s_apply_left(i: int, p: Perm) -> Perm:
    """s_i o p (swap the values i, i+1)."""
    swap = {i: i + 1, i + 1: i}
    return tuple(swap.get(x, x) for x in p)


def perm_compose(p: Perm, q: Perm) -> Perm:
    """(p o q)(x) = p(q(x)); concatenated reduced words compose this way."""
    return tuple(p[q[x] - 1] for x in range(len(q)))


@lru_cache(maxsize=None)
def reduced_word(p: Perm) -> tuple[int, ...]:
    """Lexicographically smallest reduced word for p (letters are indices i)."""
    word = []
    cur = p
    length = perm_len(cur)
    while length:
        for i in range(1, len(p)):
            nxt = s_apply_left(i, cur)
            ln = perm_len(nxt)
            if ln < length:
                word.append(i)
                cur, length = nxt, ln
                break
    return tuple(word)


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HeckeKey:
    """Basis key X^lambda T_w."""

    lam: tuple[int, ...]
    w: Perm

    def __str__(self):
        lam = ",".join(str(a) for a in self.lam)
        w = "id" if self.w == identity_perm(len(self.w)) else " ".join(map(str, self.w))
        return f"X^({lam}) T[{w}]"


class HeckeElement:
    """Finitely supported map from basis keys to VScalar coefficients."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[HeckeKey, VScalar] | Iterable[tuple[HeckeKey, VScalar]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[HeckeKey, VScalar] = {}
        for key, coeff in items:
            if len(key.lam) != n or len(key.w) != n:
                raise ValueError(f"key {key} does not fit n={n}")
            c = acc.get(key, VScalar.zero()) + coeff
            if c:
                acc[key] = c
            elif key in acc:
                del acc[key]
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "terms", acc)

    def __setattr__(self, name, value):
        raise AttributeError("HeckeElement is immutable")

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "HeckeElement":
        return cls(n)

    @classmethod
    def unit(cls, n: int, coeff: VScalar = V_ONE) -> "HeckeElement":
        return cls(n, {HeckeKey((0,) * n, identity_perm(n)): coeff})

    @classmethod
    def t_gen(cls, i: int, n: int) -> "HeckeElement":
        _check_t_index(i, n)
        w = s_apply_left(i, identity_perm(n))
        return cls(n, {HeckeKey((0,) * n, w): V_ONE})

    @classmethod
    def x_gen(cls, j: int, n: int, exp: int = 1) -> "HeckeElement":
        if not 1 <= j <= n:
            raise ValueError(f"X index {j} out of bounds for n={n}")
        lam = tuple(exp if k == j - 1 else 0 for k in range(n))
        return cls(n, {HeckeKey(lam, identity_perm(n)): V_ONE})

    # -- module structure ----------------------------------------------------

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        self._check(other)
        acc = dict(self.terms)
        for k, c in other.terms.items():
            s = acc.get(k, VScalar.zero()) + c
            if s:
                acc[k] = s
            elif k in acc:
                del acc[k]
        return HeckeElement(self.n, acc)

    def __neg__(self) -> "HeckeElement":
        return HeckeElement(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        return self + (-other)

    def scale(self, c: VScalar) -> "HeckeElement":
        return HeckeElement(self.n, {k: v * c for k, v in self.terms.items()})

    def _check(self, other: "HeckeElement") -> None:
        if self.n != other.n:
            raise ValueError(f"rank mismatch: {self.n} vs {other.n}")

    def __eq__(self, other):
        return (
            isinstance(other, HeckeElement)
            and self.n == other.n
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def sorted_terms(self) -> list[tuple[HeckeKey, VScalar]]:
        return sorted(self.terms.items(), key=lambda kv: (kv[0].lam, kv[0].w))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for key, coeff in self.sorted_terms():
            if coeff.is_one():
                parts.append(str(key))
            else:
                parts.append(f"({coeff})*{key}")
        return " + ".join(parts)

    def __repr__(self):
        return f"HeckeElement(n={self.n}, {{{', '.join(f'{k}: {c}' for k, c in self.sorted_terms())}}})"


def _check_t_index(i: int, n: int) -> None:
    if not 1 <= i <= n - 1:
        raise ValueError(f"T index {i} out of bounds for n={n}")


# ---------------------------------------------------------------------------
# multiplication
# ---------------------------------------------------------------------------

def _push_t_through_lambda(i: int, lam: tuple[int, ...]) -> list[tuple[tuple[int, ...], bool, VScalar]]:
    """Rewrite T_i X^lam as a sum of X^mu [T_i]; returns (mu, has_T, coeff)."""
    n = len(lam)
    a, b = lam[i - 1], lam[i]
    letters: list[tuple[int, int]] = []
    letters += [(i, 1 if a > 0 else -1)] * abs(a)
    letters += [(i + 1, 1 if b > 0 else -1)] * abs(b)
    # (accumulated exponent on positions i, i+1, has_T) -> coeff
    work: dict[tuple[int, int, bool], VScalar] = {(0, 0, True): V_ONE}
    one_minus = -T_COEF_LOW          # 1 - v^-2
    low = T_COEF_LOW                 # v^-2 - 1
    for j, e in letters:
        nxt: dict[tuple[int, int, bool], VScalar] = {}

        def put(key, c):
            s = nxt.get(key, VScalar.zero()) + c
            if s:
                nxt[key] = s
            elif key in nxt:
                del nxt[key]

        for (ei, ei1, has_t), coeff in work.items():
            if not has_t:
                if j == i:
                    put((ei + e, ei1, False), coeff)
                else:
                    put((ei, ei1 + e, False), coeff)
                continue
            if j == i and e == 1:
                put((ei, ei1 + 1, True), coeff)
                put((ei, ei1 + 1, False), coeff * one_minus)
            elif j == i + 1 and e == 1:
                put((ei + 1, ei1, True), coeff)
                put((ei, ei1 + 1, False), coeff * low)
            elif j == i and e == -1:
                put((ei, ei1 - 1, True), coeff)
                put((ei - 1, ei1, False), coeff * low)
            else:  # j == i + 1, e == -1
                put((ei - 1, ei1, True), coeff)
                put((ei - 1, ei1, False), coeff * one_minus)
        work = nxt
    out = []
    for (ei, ei1, has_t), coeff in work.items():
        mu = list(lam)
        mu[i - 1], mu[i] = ei, ei1
        out.append((tuple(mu), has_t, coeff))
    return out


def _t_times_tw(i: int, w: Perm) -> list[tuple[Perm, VScalar]]:
    """T_i * T_w in the T-basis."""
    siw = s_apply_left(i, w)
    if perm_len(siw) > perm_len(w):
        return [(siw, V_ONE)]
    return [(w, T_COEF_LOW), (siw, T_COEF_Q)]


def mul_gen_left(gen: tuple[str, int, int], e: HeckeElement) -> HeckeElement:
    """Left-multiply by a single generator; gen = ("T"|"X", index, exponent).

    Exponent +-1; T_i^-1 is expanded via v^2 T_i + (v^2 - 1).
    """
    kind, idx, exp = gen
    n = e.n
    if kind == "X":
        if not 1 <= idx <= n:
            raise ValueError(f"X index {idx} out of bounds for n={n}")
        acc: list[tuple[HeckeKey, VScalar]] = []
        for key, coeff in e.terms.items():
            lam = list(key.lam)
            lam[idx - 1] += exp
            acc.append((HeckeKey(tuple(lam), key.w), coeff))
        return HeckeElement(n, acc)
    if kind != "T":
        raise ValueError(f"unknown generator kind {kind}")
    _check_t_index(idx, n)
    if exp == -1:
        # T_i^-1 = v^2 T_i + (v^2 - 1)
        pos = mul_gen_left(("T", idx, 1), e)
        return pos.scale(VScalar({2: 1})) + e.scale(VScalar({2: 1, 0: -1}))
    acc2: list[tuple[HeckeKey, VScalar]] = []
    for key, coeff in e.terms.items():
        for mu, has_t, c1 in _push_t_through_lambda(idx, key.lam):
            if has_t:
                for w2, c2 in _t_times_tw(idx, key.w):
                    acc2.append((HeckeKey(mu, w2), coeff * c1 * c2))
            else:
                acc2.append((HeckeKey(mu, key.w), coeff * c1))
    return HeckeElement(n, acc2)


def key_letters(key: HeckeKey) -> list[tuple[str, int, int]]:
    """Generator letters whose left-to-right product is X^lam T_w."""
    letters: list[tuple[str, int, int]] = []
    for j, a in enumerate(key.lam, start=1):
        if a:
            letters += [("X", j, 1 if a > 0 else -1)] * abs(a)
    letters += [("T", i, 1) for i in reduced_word(key.w)]
    return letters


def mul(a: HeckeElement, b: HeckeElement) -> HeckeElement:
    """Product in normal form."""
    a._check(b)
    out = HeckeElement.zero(a.n)
    for key, coeff in a.terms.items():
        e = b
        for gen in reversed(key_letters(key)):
            e = mul_gen_left(gen, e)
        out = out + e.scale(coeff)
    return out


def t_inverse(i: int, n: int) -> HeckeElement:
    """v^2 T_i + (v^2 - 1)."""
    return HeckeElement.t_gen(i, n).scale(VScalar({2: 1})) + HeckeElement.unit(
        n, VScalar({2: 1, 0: -1})
    )


# ---------------------------------------------------------------------------
# the braid-word homomorphism
# ---------------------------------------------------------------------------

def phi_letter(lt, n: int) -> HeckeElement:
    if lt.kind == "s":
        if lt.sign > 0:
            return HeckeElement.t_gen(lt.index, n).scale(VScalar.v(1))
        return t_inverse(lt.index, n).scale(VScalar.v(-1))
    if lt.kind == "t":
        return HeckeElement.x_gen(lt.index, n, lt.sign)
    raise ValueError(f"word contains a virtual letter {lt}")


def phi(w: BraidWord) -> HeckeElement:
    """Image of a classical word: sigma_i -> v T_i, tau_j -> X_j."""
    if not w.is_classical():
        raise ValueError("phi is defined on classical (rho-free) words only")
    e = HeckeElement.unit(w.n)
    for lt in w.letters:
        e = mul(e, phi_letter(lt, w.n))
    return e


def quadratic_check(i: int, n: int) -> HeckeElement:
    """(phi(sigma_i) - v^-1)(phi(sigma_i) + v); zero iff the quadratic holds."""
    s = HeckeElement.t_gen(i, n).scale(VScalar.v(1))
    lo = s - HeckeElement.unit(n, VScalar.v(-1))
    hi = s + HeckeElement.unit(n, VScalar.v(1))
    return mul(lo, hi)


# ---------------------------------------------------------------------------
# polynomial-representation oracle
# ---------------------------------------------------------------------------
#
# Independent check of the multiplication: the algebra acts on Laurent
# polynomials in x_1..x_n over Z[v^(+-1)], with X_j acting by multiplication
# and T_i by the divided-difference style operator
#
#     T_i f = v^-2 (s_i f) + (v^-2 - 1) (f - s_i f) / (1 - x_i x_{i+1}^-1).
#
# The quotient is computed per monomial by an explicit geometric sum, so the
# action is exact.  Composition of generator actions must agree with acting
# by the normal-form product.

LPoly = dict  # {tuple exponent vector: VScalar}


def lpoly_one(n: int) -> LPoly:
    return {(0,) * n: V_ONE}


def lpoly_add(f: LPoly, g: LPoly) -> LPoly:
    acc = dict(f)
    for m, c in g.items():
        s = acc.get(m, VScalar.zero()) + c
        if s:
            acc[m] = s
        elif m in acc:
            del acc[m]
    return acc


def lpoly_scale(f: LPoly, c: VScalar) -> LPoly:
    return {m: v * c for m, v in f.items()} if c else {}


def lpoly_eq(f: LPoly, g: LPoly) -> bool:
    return {m: c for m, c in f.items() if c} == {m: c for m, c in g.items() if c}


def _swap_mono(m: tuple[int, ...], i: int) -> tuple[int, ...]:
    out = list(m)
    out[i - 1], out[i] = out[i], out[i - 1]
    return tuple(out)


def _dl_quotient(m: tuple[int, ...], i: int) -> LPoly:
    """(x^m - x^{s_i m}) / (1 - x_i x_{i+1}^-1), exactly, per monomial."""
    a, b = m[i - 1], m[i]
    if a == b:
        return {}
    out: LPoly = {}
    if a > b:
        for k in range(a - b):
            mono = list(m)
            mono[i - 1], mono[i] = b + k, a - k
            out[tuple(mono)] = out.get(tuple(mono), VScalar.zero()) - V_ONE
    else:
        for k in range(b - a):
            mono = list(m)
            mono[i - 1], mono[i] = a + k, b - k
            out[tuple(mono)] = out.get(tuple(mono), VScalar.zero()) + V_ONE
    return {mo: c for mo, c in out.items() if c}


def poly_rep_apply(gen: tuple[str, int, int], f: LPoly, n: int) -> LPoly:
    """Action of a single generator on a Laurent polynomial."""
    kind, idx, exp = gen
    if kind == "X":
        out: LPoly = {}
        for m, c in f.items():
            mm = list(m)
            mm[idx - 1] += exp
            out[tuple(mm)] = c
        return out
    _check_t_index(idx, n)
    if exp == -1:
        pos = poly_rep_apply(("T", idx, 1), f, n)
        return lpoly_add(lpoly_scale(pos, VScalar({2: 1})), lpoly_scale(f, VScalar({2: 1, 0: -1})))
    out = {}
    for m, c in f.items():
        sw = _swap_mono(m, idx)
        out = lpoly_add(out, lpoly_scale({sw: V_ONE}, c * T_COEF_Q))
        out = lpoly_add(out, lpoly_scale(_dl_quotient(m, idx), c * T_COEF_LOW))
    return out


def poly_rep_act(e: HeckeElement, f: LPoly) -> LPoly:
    """Action of a full element: sum of coeff * X^lam T_w applied to f."""
    out: LPoly = {}
    for key, coeff in e.terms.items():
        g = f
        for gen in reversed(key_letters(key)):
            g = poly_rep_apply(gen, g, e.n)
        out = lpoly_add(out, lpoly_scale(g, coeff))
    return out
