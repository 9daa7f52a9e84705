import pickle

import pytest

from supercluster.gf import field_make


def test_prime_fields():
    assert field_make(2, 1).q == 2
    assert field_make(3, 1).q == 3
    assert field_make(2, 1).modulus == (0, 1)  # the polynomial x


def test_gf4_modulus_is_unique_irreducible_quadratic():
    F4 = field_make(2, 2)
    assert F4.q == 4
    assert F4.modulus == (1, 1, 1)  # x^2 + x + 1


def test_gf8_modulus_is_lex_smallest():
    # candidates in tuple-lex order over (c0,c1,c2): x^3, x^3+x^2, x^3+x,
    # x^3+x^2+x, x^3+1 all factor; x^3+x^2+1 is the first irreducible
    assert field_make(2, 3).modulus == (1, 0, 1, 1)


def test_gf9_modulus():
    # candidates in lex order: x^2 (red), x^2+x (red), x^2+2x (red), 1+x^2 ...
    F9 = field_make(3, 2)
    c0, c1, c2 = F9.modulus
    assert c2 == 1
    # no roots in Z_3: irreducible quadratic
    for r in range(3):
        assert (c0 + c1 * r + r * r) % 3 != 0


def test_bad_arguments():
    with pytest.raises(ValueError):
        field_make(4, 1)
    with pytest.raises(ValueError):
        field_make(1, 1)
    with pytest.raises(ValueError):
        field_make(2, 0)
    with pytest.raises(ValueError):
        field_make(2, 7)  # q = 128 over the default cap
    field_make(2, 7, max_q=128)  # raised cap admits it


def test_char2_addition(F2):
    one = F2.one
    assert not (one + one)


def test_gf3_inverse(F3):
    two = F3.elements[2]
    assert two.inverse() == two  # 2*2 = 4 = 1 mod 3


def test_gf4_generator_square(F4):
    g = F4.elements[2]  # the class of x
    assert g * g == g + F4.one  # x^2 = x + 1 mod the modulus


@pytest.mark.parametrize("p,k", [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (2, 4), (13, 1)])
def test_field_axioms_exhaustive(p, k):
    F = field_make(p, k)
    els = F.elements
    for a in els:
        assert a + F.zero == a
        assert a * F.one == a
        assert a + (-a) == F.zero
        assert a - a == F.zero
        if a:
            assert a.inverse() * a == F.one
        for b in els:
            assert a + b == b + a
            assert a * b == b * a
    # associativity and distributivity over all triples
    for a in els:
        for b in els:
            for c in els:
                assert (a + b) + c == a + (b + c)
                assert (a * b) * c == a * (b * c)
                assert a * (b + c) == a * b + a * c


def test_inverse_of_zero_raises(F2):
    with pytest.raises(ZeroDivisionError):
        F2.zero.inverse()


def test_trace_prime_field_is_identity(F2, F3):
    assert F2.one.trace() == 1
    assert F3.elements[2].trace() == 2


def test_trace_gf4(F4):
    g = F4.elements[2]
    assert g.trace() == 1  # g + g^2 = g + g + 1 = 1


@pytest.mark.parametrize("p,k", [(2, 1), (3, 1), (2, 2), (3, 2), (2, 3), (5, 1)])
def test_trace_additive_and_balanced(p, k):
    F = field_make(p, k)
    for a in F.elements:
        for b in F.elements:
            assert (a + b).trace() == (a.trace() + b.trace()) % p
    counts = {r: 0 for r in range(p)}
    for a in F.elements:
        counts[a.trace()] += 1
    assert all(c == F.q // p for c in counts.values())


def test_text_round_trip(F3, F4):
    assert str(F3.elements[2]) == "2"
    assert F3.parse("2") == F3.elements[2]
    g = F4.elements[2]
    assert str(g) == "[0,1]"
    assert F4.parse("[0,1]") == g
    assert F4.parse(" [1,1] ") == g * g


def test_from_int_embeds_prime_subfield(F4):
    assert F4.from_int(1) == F4.one
    assert F4.from_int(2) == F4.zero  # characteristic 2


def test_pickle_preserves_interning(F4):
    g = F4.elements[3]
    g2 = pickle.loads(pickle.dumps(g))
    assert g2 is g
    assert pickle.loads(pickle.dumps(F4)) is F4


def test_element_order_is_index_order(F3):
    assert [e.index for e in F3.elements] == [0, 1, 2]
    assert F3.nonzero == F3.elements[1:]
