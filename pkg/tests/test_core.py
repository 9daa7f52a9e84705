from itertools import product

import pytest

from supercluster.core import (
    Functional,
    NilMatrix,
    UniMatrix,
    act_adjoint,
    act_left,
    act_right,
    coact_coadjoint,
    coact_left,
    coact_right,
    conj,
    e_ij,
    elementary,
    eps_ij,
    evaluate,
    from_json,
    identity,
    nil_mul,
    positions,
    to_json,
)
from supercluster.oracle import enumerate_dual, enumerate_group, enumerate_nil


def test_positions():
    assert positions(3) == [(1, 2), (1, 3), (2, 3)]
    assert positions(1) == []


def test_zero_entries_dropped(F2):
    x = NilMatrix(F2, 3, {(1, 2): F2.zero, (1, 3): F2.one})
    assert x.entries == {(1, 3): F2.one}


def test_lower_positions_rejected(F2):
    with pytest.raises(ValueError):
        NilMatrix(F2, 3, {(2, 1): F2.one})
    with pytest.raises(ValueError):
        Functional(F2, 3, {(3, 3): F2.one})


def test_group_mul_basic(F2):
    g = elementary(F2, 3, 1, 2, F2.one)
    h = elementary(F2, 3, 2, 3, F2.one)
    prod = g * h
    assert prod.off == e_ij(F2, 3, 1, 2) + e_ij(F2, 3, 2, 3) + e_ij(F2, 3, 1, 3)
    assert (g * identity(F2, 3)) == g
    assert (g * g) == identity(F2, 3)  # char 2 and e12^2 = 0


def test_group_inv(F2, F3):
    assert identity(F2, 3).inv() == identity(F2, 3)
    g = elementary(F2, 3, 1, 3, F2.one)
    assert g.inv().off == e_ij(F2, 3, 1, 3)  # -1 = 1 in char 2, e13^2 = 0
    h = UniMatrix(e_ij(F3, 3, 1, 2) + e_ij(F3, 3, 2, 3))
    two = F3.elements[2]
    expected = e_ij(F3, 3, 1, 2, two) + e_ij(F3, 3, 2, 3, two) + e_ij(F3, 3, 1, 3)
    assert h.inv().off == expected  # I - X + X^2


def test_group_inverse_everywhere(F3):
    for g in enumerate_group(3, F3):
        assert g * g.inv() == identity(F3, 3)
        assert g.inv() * g == identity(F3, 3)


def test_size_mismatch_raises(F2):
    with pytest.raises(ValueError):
        identity(F2, 3) * identity(F2, 4)
    with pytest.raises(ValueError):
        evaluate(eps_ij(F2, 3, 1, 2), e_ij(F2, 4, 1, 2))


def test_act_left_example(F2):
    g = elementary(F2, 3, 1, 2, F2.one)
    assert act_left(g, e_ij(F2, 3, 2, 3)) == e_ij(F2, 3, 2, 3) + e_ij(F2, 3, 1, 3)
    assert act_left(identity(F2, 3), e_ij(F2, 3, 2, 3)) == e_ij(F2, 3, 2, 3)


def test_act_adjoint_example(F2):
    g = elementary(F2, 3, 1, 2, F2.one)
    assert act_adjoint(g, e_ij(F2, 3, 2, 3)) == e_ij(F2, 3, 2, 3) + e_ij(F2, 3, 1, 3)


def test_coact_left_displayed_rule(F3):
    # (I + a*e_ij) * eps_kl = eps_kl + a*eps_ki when l = j and k < i
    a = F3.elements[2]
    lam = eps_ij(F3, 3, 1, 3)
    assert coact_left(elementary(F3, 3, 1, 2, a), lam) == lam  # no k < 1
    got = coact_left(elementary(F3, 3, 2, 3, a), lam)
    assert got == lam + eps_ij(F3, 3, 1, 2, a)


def test_coact_right_displayed_rule(F3):
    # eps_kl * (I + a*e_ij) = eps_kl + a*eps_jl when k = i and l > j
    a = F3.elements[2]
    lam = eps_ij(F3, 3, 1, 3)
    got = coact_right(lam, elementary(F3, 3, 1, 2, a))
    assert got == lam + eps_ij(F3, 3, 2, 3, a)
    assert coact_right(lam, elementary(F3, 3, 2, 3, a)) == lam


def test_eval_examples(F2, F3):
    assert evaluate(eps_ij(F2, 3, 1, 3), e_ij(F2, 3, 1, 3)) == F2.one
    assert evaluate(eps_ij(F2, 3, 1, 3), e_ij(F2, 3, 1, 2)) == F2.zero
    lam = eps_ij(F3, 3, 1, 2, F3.elements[2]) + eps_ij(F3, 3, 2, 3)
    x = e_ij(F3, 3, 1, 2) + e_ij(F3, 3, 2, 3)
    assert evaluate(lam, x) == F3.zero  # 2 + 1 = 0 mod 3


def test_actions_commute_exhaustive(F2):
    group = enumerate_group(3, F2)
    nils = enumerate_nil(3, F2)
    for g in group:
        for h in group:
            for x in nils:
                assert act_left(g, act_right(x, h)) == act_right(act_left(g, x), h)


def test_coactions_commute_and_match_coadjoint(F2):
    group = enumerate_group(3, F2)
    duals = enumerate_dual(3, F2)
    for g in group:
        for h in group:
            for lam in duals:
                assert coact_left(g, coact_right(lam, h)) == coact_right(coact_left(g, lam), h)
    for g in group:
        for lam in duals:
            assert coact_left(g, coact_right(lam, g.inv())) == coact_coadjoint(lam, g)


def test_coadjoint_identity_sampled_n4(F2):
    import random

    rng = random.Random(7)
    pts = positions(4)
    def random_entries():
        return {pos: v for pos in pts if (v := rng.choice(F2.elements))}
    for _ in range(25):
        g = UniMatrix(NilMatrix(F2, 4, random_entries()))
        lam = Functional(F2, 4, random_entries())
        assert coact_left(g, coact_right(lam, g.inv())) == coact_coadjoint(lam, g)
        assert coact_right(coact_left(g, lam), g.inv()) == coact_coadjoint(lam, g)


def test_left_coaction_is_action_composition(F3):
    # g2 * (g1 * lam) = (g2 g1) * lam and (lam * g1) * g2 = lam * (g1 g2)
    group = enumerate_group(3, F3)[:10]
    duals = enumerate_dual(3, F3)[:20]
    for g1 in group:
        for g2 in group:
            for lam in duals:
                assert coact_left(g2, coact_left(g1, lam)) == coact_left(g2 * g1, lam)
                assert coact_right(coact_right(lam, g1), g2) == coact_right(lam, g1 * g2)


def test_coact_left_adjoint_to_right_action(F2):
    group = enumerate_group(3, F2)
    duals = enumerate_dual(3, F2)
    nils = enumerate_nil(3, F2)
    for g in group:
        for lam in duals:
            glam = coact_left(g, lam)
            for x in nils:
                assert evaluate(glam, x) == evaluate(lam, act_right(x, g))


def test_conjugation_matches_adjoint(F2):
    group = enumerate_group(3, F2)
    nils = enumerate_nil(3, F2)
    for h in group:
        for x in nils:
            assert conj(h, UniMatrix(x)) == UniMatrix(act_adjoint(h, x))


def test_nil_mul(F2):
    assert nil_mul(e_ij(F2, 3, 1, 2), e_ij(F2, 3, 2, 3)) == e_ij(F2, 3, 1, 3)
    assert not nil_mul(e_ij(F2, 3, 2, 3), e_ij(F2, 3, 1, 2))


def test_functional_matrix_reinterpretation(F2):
    lam = eps_ij(F2, 3, 1, 3)
    assert lam.as_matrix() == e_ij(F2, 3, 1, 3)
    assert e_ij(F2, 3, 1, 3).as_functional() == lam


def test_json_round_trip(F3):
    values = [
        e_ij(F3, 3, 1, 3, F3.elements[2]),
        eps_ij(F3, 3, 1, 2) + eps_ij(F3, 3, 2, 3, F3.elements[2]),
        UniMatrix(e_ij(F3, 3, 1, 2)),
    ]
    for v in values:
        data = to_json(v)
        assert from_json(F3, data) == v
    assert to_json(values[0]) == {
        "kind": "nil",
        "n": 3,
        "entries": [{"i": 1, "j": 3, "v": "2"}],
    }
