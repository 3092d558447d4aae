import random

import pytest

from dlbraid.braid import (
    CLASSICAL_RELATIONS,
    BraidWord,
    SearchBounds,
    apply_markov,
    enumerate_moves,
    insert_cancel_pair,
    markov_neighbors,
    markov_search,
    parse_word,
    relation_instances,
    relation_sides,
    rewrite_step,
    rho,
    sigma,
    tau,
)


def rand_word(n, length, rng, classical=False):
    letters = []
    for _ in range(length):
        r = rng.random()
        if r < 0.45 and n > 1:
            letters.append(sigma(rng.randrange(1, n), rng.choice([1, -1])))
        elif r < 0.6 and n > 1 and not classical:
            letters.append(rho(rng.randrange(1, n)))
        else:
            letters.append(tau(rng.randrange(1, n + 1), rng.choice([1, -1])))
    return BraidWord(n, tuple(letters))


def test_parse_and_str_round_trip():
    w = parse_word("n=3; s1 s2' t3 r1 t1'")
    assert w.n == 3
    assert w.letters == (sigma(1), sigma(2, -1), tau(3), rho(1), tau(1, -1))
    assert parse_word(str(w)) == w
    assert parse_word("n=2;").letters == ()


def test_parse_rejects_bad_input():
    with pytest.raises(ValueError):
        parse_word("s1 s2")
    with pytest.raises(ValueError):
        parse_word("n=2; s2")
    with pytest.raises(ValueError):
        parse_word("n=2; t3")
    with pytest.raises(ValueError):
        parse_word("n=0;")


def test_compose_inverse_shift():
    a = parse_word("n=2; s1 t1")
    b = parse_word("n=2; t2'")
    assert a.compose(b) == parse_word("n=2; s1 t1 t2'")
    assert a.inverse() == parse_word("n=2; t1' s1'")
    sh = a.shift(left=1, right=2)
    assert sh.n == 5
    assert sh.letters == (sigma(2), tau(2))


def test_underlying_permutation_and_writhe():
    w = parse_word("n=3; s1 s2 t1 r2")
    # one-line image of strand positions top to bottom
    assert w.underlying_permutation() == (2, 1, 3)
    assert w.writhe() == 2
    assert parse_word("n=2; s1 s1' r1").writhe() == 0
    assert parse_word("n=2; t1 t2 t1'").total_winding() == 1


def test_closure_components():
    comps = parse_word("n=3; t1 t3'").closure_components()
    # identity permutation: three components with windings +1, 0, -1
    assert sorted(wd for _, wd in comps) == [-1, 0, 1]
    comps = parse_word("n=2; s1 t1 t2").closure_components()
    assert len(comps) == 1
    assert comps[0][1] == 2


def test_relation_sides_preserve_invariants():
    rng = random.Random(0)
    for n in (2, 3, 4):
        for rid in range(1, 11):
            for lhs, rhs in relation_sides(rid, n):
                a, b = BraidWord(n, lhs), BraidWord(n, rhs)
                assert a.underlying_permutation() == b.underlying_permutation(), (rid, lhs)
                assert a.total_winding() == b.total_winding()
                if rid != 10:
                    assert a.writhe() == b.writhe()
    # relation 10 shifts writhe by exactly two
    for lhs, rhs in relation_sides(10, 4):
        assert BraidWord(4, lhs).writhe() - BraidWord(4, rhs).writhe() == 2


def test_rewrite_step_round_trip():
    rng = random.Random(1)
    for _ in range(300):
        w = rand_word(rng.randrange(2, 5), rng.randrange(1, 9), rng)
        insts = list(relation_instances(w))
        if not insts:
            continue
        rid, pos, direction = rng.choice(insts)
        w2 = rewrite_step(w, rid, pos, direction)
        assert w2.underlying_permutation() == w.underlying_permutation()
        assert w2.total_winding() == w.total_winding()
        # free cancellation (0) and rho^2 = 1 (3) erase letters; their
        # reversals go through insert_cancel_pair instead
        if rid not in (0, 3):
            assert rewrite_step(w2, rid, pos, -direction) == w


def test_rewrite_step_rejects_bad_position():
    w = parse_word("n=2; s1 s1")
    with pytest.raises(ValueError):
        rewrite_step(w, 10, 0)


def test_insert_cancel_pair():
    w = parse_word("n=2; s1")
    w2 = insert_cancel_pair(w, 1, tau(2))
    assert w2 == parse_word("n=2; s1 t2 t2'")
    assert rewrite_step(w2, 0, 1) == w


def test_classical_relation_ids():
    assert CLASSICAL_RELATIONS == (1, 2, 7, 8, 10)
    for rid in CLASSICAL_RELATIONS:
        for lhs, rhs in relation_sides(rid, 4):
            assert all(lt.kind != "r" for lt in lhs + rhs)


def test_apply_markov_round_trip_conjugation():
    w = parse_word("n=3; s1 t2 s2'")
    for mv in enumerate_moves(w, SearchBounds()):
        w2 = apply_markov(w, mv)
        assert w2.n <= 5
        assert isinstance(w2, BraidWord)


def test_markov_neighbors_contains_conjugates():
    w = parse_word("n=2; s1 t1")
    nb = markov_neighbors(w, 2)
    # conjugation by sigma_1 then cancellation yields the cyclic rotation
    assert parse_word("n=2; t1 s1") in nb


def test_markov_search_destabilization():
    mv = markov_search(parse_word("n=2; s1"), parse_word("n=1;"), 2, SearchBounds())
    assert mv is not None
    assert any("destab" in m.describe() for m in mv)


def test_markov_search_relation_ten():
    mv = markov_search(
        parse_word("n=2; t1 s1"), parse_word("n=2; s1' t2"), 1, SearchBounds()
    )
    assert mv is not None and len(mv) == 1


def test_markov_search_failure_is_none():
    # distinct permutations can never be related
    res = markov_search(
        parse_word("n=2; s1"), parse_word("n=2;"), 1,
        SearchBounds(max_strands=3, max_length=6, allow_insertions=False),
    )
    assert res is None
