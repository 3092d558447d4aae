"""Words in the virtual braid groups with double lines, and their moves.

A braid word on n strands is a sequence of generator letters: sigma_i^(+-1)
(classical crossings between strands i, i+1), rho_i (virtual crossings), and
tau_j^(+-1) (signed double lines on strand j).  Words carrying no rho letters
are called classical.

The defining relations of the group are provided as a rewriting table
(:func:`relation_instances`, :func:`rewrite_step`), and the braid-closure
moves (conjugation, the three kinds of stabilization, and the virtual
exchange moves) as :class:`MarkovMove` objects with a bounded neighborhood
search (:func:`markov_neighbors`, :func:`markov_search`).

Letter convention: letters act top-to-bottom; the closure joins top position
i to bottom position i.  A positive double line contributes +1 winding when
traversed along the strand orientation.

Canonical text grammar (whitespace separated): ``n=<strands>; token*`` where
token is ``s<i>``, ``s<i>'``, ``t<j>``, ``t<j>'`` or ``r<i>``; the apostrophe
marks an inverse (rho is self-inverse and never takes one).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Literal, Optional


@dataclass(frozen=True)
class Letter:
    kind: Literal["s", "t", "r"]
    index: int
    sign: int = 1

    def __post_init__(self):
        if self.kind not in ("s", "t", "r"):
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +-1, got {self.sign}")
        if self.kind == "r" and self.sign != 1:
            raise ValueError("rho is self-inverse; no signed rho letters")
        if self.index < 1:
            raise ValueError(f"generator index must be >= 1, got {self.index}")

    def inverse(self) -> "Letter":
        if self.kind == "r":
            return self
        return Letter(self.kind, self.index, -self.sign)

    def __str__(self):
        return f"{self.kind}{self.index}" + ("'" if self.sign < 0 else "")


def sigma(i: int, sign: int = 1) -> Letter:
    return Letter("s", i, sign)


def tau(j: int, sign: int = 1) -> Letter:
    return Letter("t", j, sign)


def rho(i: int) -> Letter:
    return Letter("r", i)


_PRETTY = {"s": "σ", "t": "τ", "r": "ρ"}
_SUBS = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


@dataclass(frozen=True)
class BraidWord:
    """A strand count together with a sequence of generator letters."""

    n: int
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"strand count must be positive, got {self.n}")
        object.__setattr__(self, "letters", tuple(self.letters))
        for lt in self.letters:
            hi = self.n if lt.kind == "t" else self.n - 1
            if not 1 <= lt.index <= hi:
                raise ValueError(
                    f"letter {lt} out of bounds for {self.n} strands"
                )

    def __len__(self):
        return len(self.letters)

    def is_classical(self) -> bool:
        """True if the word lies in the rho-free subgroup."""
        return all(lt.kind != "r" for lt in self.letters)

    def compose(self, other: "BraidWord") -> "BraidWord":
        if self.n != other.n:
            raise ValueError(f"strand count mismatch: {self.n} vs {other.n}")
        return BraidWord(self.n, self.letters + other.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.n, tuple(lt.inverse() for lt in reversed(self.letters)))

    def shift(self, left: int = 0, right: int = 0) -> "BraidWord":
        """Index-shift embedding l_s^t: add strands on the left and right."""
        return BraidWord(
            self.n + left + right,
            tuple(Letter(lt.kind, lt.index + left, lt.sign) for lt in self.letters),
        )

    # -- derived invariants -------------------------------------------------

    def underlying_permutation(self) -> tuple[int, ...]:
        """Map top position -> bottom position; tuple p with p[i-1] = image of i."""
        pos = list(range(self.n + 1))  # pos[strand] = current position, 1-based
        for lt in self.letters:
            if lt.kind in ("s", "r"):
                i = lt.index
                for s in range(1, self.n + 1):
                    if pos[s] == i:
                        pos[s] = i + 1
                    elif pos[s] == i + 1:
                        pos[s] = i
        return tuple(pos[s] for s in range(1, self.n + 1))

    def writhe(self) -> int:
        return sum(lt.sign for lt in self.letters if lt.kind == "s")

    def total_winding(self) -> int:
        return sum(lt.sign for lt in self.letters if lt.kind == "t")

    def closure_components(self) -> list[tuple[frozenset[int], int]]:
        """One (top-position set, winding) pair per closure component.

        The winding of a component is the sum of tau signs over letters whose
        strand, tracked dynamically through the word, belongs to the
        component's cycle.
        """
        perm = self.underlying_permutation()
        # cycles of the permutation
        seen = set()
        cycles: list[frozenset[int]] = []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            cyc = []
            p = start
            while p not in seen:
                seen.add(p)
                cyc.append(p)
                p = perm[p - 1]
            cycles.append(frozenset(cyc))
        cycle_of = {p: i for i, cyc in enumerate(cycles) for p in cyc}
        winding = [0] * len(cycles)
        pos = list(range(self.n + 1))  # pos[strand] = position
        at = list(range(self.n + 1))   # at[position] = strand
        for lt in self.letters:
            if lt.kind == "t":
                winding[cycle_of[at[lt.index]]] += lt.sign
            else:
                i = lt.index
                a, b = at[i], at[i + 1]
                at[i], at[i + 1] = b, a
                pos[a], pos[b] = i + 1, i
        return [(cycles[i], winding[i]) for i in range(len(cycles))]

    # -- text form -----------------------------------------------------------

    def __str__(self):
        body = " ".join(str(lt) for lt in self.letters)
        return f"n={self.n};" + (f" {body}" if body else "")

    def pretty(self) -> str:
        return "".join(
            _PRETTY[lt.kind]
            + str(lt.index).translate(_SUBS)
            + ("⁻¹" if lt.sign < 0 else "")
            for lt in self.letters
        ) or "1"


_TOKEN_RE = re.compile(r"([str])(\d+)(')?$")


def parse_word(text: str) -> BraidWord:
    """Parse the canonical grammar ``n=<strands>; token*``."""
    head, sep, body = text.partition(";")
    if not sep:
        raise ValueError("missing ';' after strand count")
    m = re.fullmatch(r"\s*n\s*=\s*(\d+)\s*", head)
    if not m:
        raise ValueError(f"bad strand-count header {head!r}")
    n = int(m.group(1))
    letters = []
    for col, tok in enumerate(body.split()):
        tm = _TOKEN_RE.fullmatch(tok)
        if not tm:
            raise ValueError(f"bad token {tok!r} (token {col + 1})")
        kind, idx, prime = tm.group(1), int(tm.group(2)), tm.group(3)
        if kind == "r" and prime:
            raise ValueError(
                f"token {tok!r}: rho is self-inverse and takes no inverse mark"
            )
        letters.append(Letter(kind, idx, -1 if prime else 1))
    return BraidWord(n, tuple(letters))


# ---------------------------------------------------------------------------
# Defining relations as a rewriting table
# ---------------------------------------------------------------------------

def relation_sides(rel_id: int, n: int) -> list[tuple[tuple[Letter, ...], tuple[Letter, ...]]]:
    """All (lhs, rhs) instances of defining relation ``rel_id`` on n strands.

    Ids follow the group presentation: (1) far sigma commutation, (2) braid
    relation, (3) rho^2 = 1, (4) far rho commutation, (5) rho braid relation,
    (6) mixed sigma/rho slide, (7) tau commutation, (8) sigma/tau commutation
    for distant indices, (9) rho/tau commutation, (10) tau_i sigma_i =
    sigma_i^-1 tau_{i+1}.
    """
    out = []
    if rel_id == 1:
        for i in range(1, n):
            for j in range(i + 2, n):
                out.append(((sigma(i), sigma(j)), (sigma(j), sigma(i))))
    elif rel_id == 2:
        for i in range(1, n - 1):
            out.append((
                (sigma(i), sigma(i + 1), sigma(i)),
                (sigma(i + 1), sigma(i), sigma(i + 1)),
            ))
    elif rel_id == 3:
        for i in range(1, n):
            out.append(((rho(i), rho(i)), ()))
    elif rel_id == 4:
        for i in range(1, n):
            for j in range(i + 2, n):
                out.append(((rho(i), rho(j)), (rho(j), rho(i))))
    elif rel_id == 5:
        for i in range(1, n - 1):
            out.append((
                (rho(i), rho(i + 1), rho(i)),
                (rho(i + 1), rho(i), rho(i + 1)),
            ))
    elif rel_id == 6:
        for i in range(1, n - 1):
            out.append((
                (sigma(i), rho(i + 1), rho(i)),
                (rho(i + 1), rho(i), sigma(i + 1)),
            ))
    elif rel_id == 7:
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                out.append(((tau(i), tau(j)), (tau(j), tau(i))))
    elif rel_id == 8:
        for i in range(1, n):
            for j in range(1, n + 1):
                if j not in (i, i + 1):
                    out.append(((sigma(i), tau(j)), (tau(j), sigma(i))))
    elif rel_id == 9:
        for i in range(1, n):
            for j in range(1, n + 1):
                out.append(((rho(i), tau(j)), (tau(j), rho(i))))
    elif rel_id == 10:
        for i in range(1, n):
            out.append(((tau(i), sigma(i)), (sigma(i, -1), tau(i + 1))))
    else:
        raise ValueError(f"unknown relation id {rel_id}")
    return out


#: relation ids whose instances make sense for classical (rho-free) words
CLASSICAL_RELATIONS = (1, 2, 7, 8, 10)
ALL_RELATIONS = tuple(range(1, 11))

#: pseudo-relation id for free cancellation g g^-1 -> (empty)
CANCEL = 0


def _matches(word: tuple[Letter, ...], pos: int, pattern: tuple[Letter, ...]) -> bool:
    return word[pos:pos + len(pattern)] == pattern


def rewrite_step(w: BraidWord, rel_id: int, pos: int, direction: int = +1) -> BraidWord:
    """Replace one occurrence of a relation side at ``pos`` by the other side.

    ``direction`` +1 rewrites lhs -> rhs, -1 rewrites rhs -> lhs.  Relation id
    0 is free cancellation: forward removes ``g g^-1`` at pos; backward is not
    supported through this entry point (use insert_cancel_pair).
    """
    if rel_id == CANCEL:
        if direction != +1:
            raise ValueError("free insertion is done via insert_cancel_pair")
        ls = w.letters
        if pos + 1 >= len(ls) or ls[pos + 1] != ls[pos].inverse():
            raise ValueError(f"no cancelling pair at position {pos}")
        return BraidWord(w.n, ls[:pos] + ls[pos + 2:])
    for lhs, rhs in relation_sides(rel_id, w.n):
        src, dst = (lhs, rhs) if direction == +1 else (rhs, lhs)
        if not src:
            # empty-side insertions are ambiguous in index; use
            # insert_cancel_pair with a rho letter instead
            continue
        if _matches(w.letters, pos, src):
            return BraidWord(w.n, w.letters[:pos] + dst + w.letters[pos + len(src):])
    raise ValueError(f"relation {rel_id} not applicable at position {pos}")


def insert_cancel_pair(w: BraidWord, pos: int, lt: Letter) -> BraidWord:
    """Insert ``lt lt^-1`` at position pos (inverse of free cancellation)."""
    return BraidWord(w.n, w.letters[:pos] + (lt, lt.inverse()) + w.letters[pos:])


def relation_instances(w: BraidWord, rel_ids=ALL_RELATIONS) -> Iterator[tuple[int, int, int]]:
    """Yield every applicable (rel_id, position, direction) on w."""
    ls = w.letters
    for pos in range(len(ls) - 1):
        if ls[pos + 1] == ls[pos].inverse() and ls[pos].kind != "r":
            yield (CANCEL, pos, +1)
    for rid in rel_ids:
        for lhs, rhs in relation_sides(rid, w.n):
            for pos in range(len(ls) + 1):
                if lhs and _matches(ls, pos, lhs) and pos + len(lhs) <= len(ls):
                    yield (rid, pos, +1)
                if rhs and _matches(ls, pos, rhs) and pos + len(rhs) <= len(ls):
                    yield (rid, pos, -1)


# ---------------------------------------------------------------------------
# Markov moves
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MarkovMove:
    """One closure-preserving move.

    kind "M0": relation rewrite, fields rel_id, pos, direction.
    kind "M1": conjugation by ``conjugator`` (same strand count).
    kind "M2": stabilization; stab_type in {"positive", "negative",
               "virtual"}, stab_dir in {"stab", "destab"}.
    kind "M3": virtual exchange; side in {"left", "right"}, pos locates the
               first exchange letter.
    """

    kind: Literal["M0", "M1", "M2", "M3"]
    rel_id: int = 0
    pos: int = 0
    direction: int = +1
    conjugator: Optional[BraidWord] = None
    stab_type: str = "positive"
    stab_dir: str = "stab"
    side: str = "left"
    insert_letter: Optional[Letter] = None

    def describe(self) -> str:
        if self.kind == "M0":
            if self.rel_id == CANCEL:
                if self.insert_letter is not None:
                    return f"M0 insert {self.insert_letter}{self.insert_letter.inverse()} at {self.pos}"
                return f"M0 cancel at {self.pos}"
            arrow = "->" if self.direction == +1 else "<-"
            return f"M0 relation {self.rel_id} {arrow} at {self.pos}"
        if self.kind == "M1":
            return f"M1 conjugate by {self.conjugator}"
        if self.kind == "M2":
            return f"M2 {self.stab_type} {self.stab_dir}"
        return f"M3 {self.side} exchange at {self.pos}"


_STAB_LETTERS = {"positive": 1, "negative": -1}


def apply_markov(w: BraidWord, m: MarkovMove) -> BraidWord:
    """Apply a single dl-Markov move; raises ValueError on precondition failure."""
    if m.kind == "M0":
        if m.rel_id == CANCEL and m.insert_letter is not None:
            return insert_cancel_pair(w, m.pos, m.insert_letter)
        return rewrite_step(w, m.rel_id, m.pos, m.direction)

    if m.kind == "M1":
        if m.conjugator is None or m.conjugator.n != w.n:
            raise ValueError("conjugator must share the strand count")
        return m.conjugator.inverse().compose(w).compose(m.conjugator)

    if m.kind == "M2":
        if m.stab_dir == "stab":
            up = w.shift(right=1)
            if m.stab_type == "virtual":
                new = rho(w.n)
            else:
                new = sigma(w.n, _STAB_LETTERS[m.stab_type])
            return BraidWord(up.n, up.letters + (new,))
        # destabilization
        if w.n < 2 or not w.letters:
            raise ValueError("nothing to destabilize")
        last = w.letters[-1]
        i = w.n - 1
        ok = (last.kind == "s" and last.index == i) or (
            last.kind == "r" and last.index == i
        )
        if m.stab_type == "virtual":
            ok = ok and last.kind == "r"
        else:
            ok = ok and last.kind == "s" and last.sign == _STAB_LETTERS[m.stab_type]
        if not ok:
            raise ValueError(f"word does not end with the {m.stab_type} stabilization letter")
        for lt in w.letters[:-1]:
            if lt.kind in ("s", "r") and lt.index == i:
                raise ValueError(f"strand {w.n} is used elsewhere ({lt})")
            if lt.kind == "t" and lt.index == w.n:
                raise ValueError(f"strand {w.n} carries a double line ({lt})")
        return BraidWord(w.n - 1, w.letters[:-1])

    if m.kind == "M3":
        return _apply_exchange(w, m.side, m.pos)

    raise ValueError(f"unknown move kind {m.kind}")


def _exchange_splits(w: BraidWord, side: str) -> Iterator[tuple[int, int]]:
    """Yield (p, q): positions of the two exchange letters for an M3 move.

    For side "left" the pattern is a sigma_1^-1 ... sigma_1 (or rho_1 ...
    rho_1) with the segments between/around them not using strand 1; "right"
    uses index n-1 and strand n.
    """
    n = w.n
    if n < 2:
        return
    idx = 1 if side == "left" else n - 1
    avoid_strand = 1 if side == "left" else n

    def clear(seg) -> bool:
        # the segment must not touch the exchange strand
        for lt in seg:
            if lt.kind in ("s", "r") and lt.index == idx:
                return False
            if lt.kind == "t" and lt.index == avoid_strand:
                return False
        return True

    ls = w.letters
    for p in range(len(ls)):
        for q in range(p + 1, len(ls)):
            a, b = ls[p], ls[q]
            sig_form = (
                a.kind == "s" and a.index == idx and a.sign == -1
                and b.kind == "s" and b.index == idx and b.sign == +1
            )
            rho_form = (
                a.kind == "r" and a.index == idx and b.kind == "r" and b.index == idx
            )
            if not (sig_form or rho_form):
                continue
            if clear(ls[:p]) and clear(ls[p + 1:q]) and clear(ls[q + 1:]):
                yield (p, q)


def _apply_exchange(w: BraidWord, side: str, pos: int) -> BraidWord:
    idx = 1 if side == "left" else w.n - 1
    for p, q in _exchange_splits(w, side):
        if p != pos:
            continue
        a = w.letters[p]
        if a.kind == "s":
            new_p, new_q = rho(idx), rho(idx)
        else:
            new_p, new_q = sigma(idx, -1), sigma(idx, +1)
        ls = list(w.letters)
        ls[p], ls[q] = new_p, new_q
        return BraidWord(w.n, tuple(ls))
    raise ValueError(f"no {side} exchange pattern starting at position {pos}")


@dataclass(frozen=True)
class SearchBounds:
    max_strands: int = 5
    max_length: int = 12
    #: enable free insertion moves (inverse of cancellation); expensive
    allow_insertions: bool = True


def _word_key(w: BraidWord):
    return (w.n, tuple((lt.kind, lt.index, lt.sign) for lt in w.letters))


def enumerate_moves(w: BraidWord, bounds: SearchBounds) -> Iterator[MarkovMove]:
    """All Markov moves applicable to w within the bounds, deterministically."""
    # M0: relation rewrites and cancellations/insertions
    for rid, pos, direction in relation_instances(w):
        yield MarkovMove("M0", rel_id=rid, pos=pos, direction=direction)
    if bounds.allow_insertions and len(w) + 2 <= bounds.max_length:
        gens = [sigma(i, s) for i in range(1, w.n) for s in (1, -1)]
        gens += [rho(i) for i in range(1, w.n)]
        gens += [tau(j, s) for j in range(1, w.n + 1) for s in (1, -1)]
        for pos in range(len(w) + 1):
            for g in gens:
                yield MarkovMove("M0", rel_id=CANCEL, pos=pos, insert_letter=g)
    # M1: conjugation by single generators
    if len(w) + 2 <= bounds.max_length:
        gens = [sigma(i, s) for i in range(1, w.n) for s in (1, -1)]
        gens += [rho(i) for i in range(1, w.n)]
        gens += [tau(j, s) for j in range(1, w.n + 1) for s in (1, -1)]
        for g in gens:
            yield MarkovMove("M1", conjugator=BraidWord(w.n, (g,)))
    # M2
    if w.n + 1 <= bounds.max_strands and len(w) + 1 <= bounds.max_length:
        for st in ("positive", "negative", "virtual"):
            yield MarkovMove("M2", stab_type=st, stab_dir="stab")
    if w.n >= 2 and w.letters:
        last = w.letters[-1]
        if last.kind == "s" and last.index == w.n - 1:
            st = "positive" if last.sign > 0 else "negative"
            yield MarkovMove("M2", stab_type=st, stab_dir="destab")
        elif last.kind == "r" and last.index == w.n - 1:
            yield MarkovMove("M2", stab_type="virtual", stab_dir="destab")
    # M3
    for side in ("left", "right"):
        for p, _q in _exchange_splits(w, side):
            yield MarkovMove("M3", side=side, pos=p)


def markov_neighbors(w: BraidWord, depth: int, bounds: SearchBounds = SearchBounds()) -> set[BraidWord]:
    """All words reachable from w by at most ``depth`` moves within bounds."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    seen = {w}
    frontier = [w]
    for _ in range(depth):
        nxt = []
        for u in sorted(frontier, key=_word_key):
            for mv in enumerate_moves(u, bounds):
                try:
                    v = apply_markov(u, mv)
                except ValueError:
                    continue
                if v.n > bounds.max_strands or len(v) > bounds.max_length:
                    continue
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt
        if not frontier:
            break
    return seen


def markov_search(
    src: BraidWord, dst: BraidWord, depth: int, bounds: SearchBounds = SearchBounds()
) -> Optional[list[MarkovMove]]:
    """BFS for a move sequence turning src into dst; None if not found."""
    if src == dst:
        return []
    parents: dict[BraidWord, tuple[BraidWord, MarkovMove]] = {}
    seen = {src}
    frontier = [src]
    for _ in range(depth):
        nxt = []
        for u in sorted(frontier, key=_word_key):
            for mv in enumerate_moves(u, bounds):
                try:
                    v = apply_markov(u, mv)
                except ValueError:
                    continue
                if v.n > bounds.max_strands or len(v) > bounds.max_length:
                    continue
                if v in seen:
                    continue
                seen.add(v)
                parents[v] = (u, mv)
                if v == dst:
                    path = []
                    cur = v
                    while cur != src:
                        prev, mv2 = parents[cur]
                        path.append(mv2)
                        cur = prev
                    return list(reversed(path))
                nxt.append(v)
        frontier = nxt
        if not frontier:
            break
    return None
