import pytest

from supercluster import field_make
from supercluster.clusters import Template, enumerate_templates, invariants_of, parse_template
from supercluster.errors import InvariantViolation, ResourceCapExceeded
from supercluster.oracle import brute_tensor
from supercluster.tensor import (
    CharSum,
    c_count,
    fold_by_counting,
    primary_product,
    tensor_by_counting,
    tensor_product,
    tensor_rewrite,
)


def T(field, n, text):
    return parse_template(field, n, text)


def test_charsum_invariants(F2):
    t = T(F2, 3, "(1,3)=1")
    s = CharSum(F2, 3, {t: 2, T(F2, 3, "0"): 0})
    assert s.terms == {t: 2}
    assert s.total_degree == 4
    with pytest.raises(InvariantViolation):
        CharSum(F2, 3, {t: -1})


def test_trivial_factor_is_identity(F2):
    got = primary_product(3, 1, 3, F2.one, 1, 2, F2.zero)
    assert got.terms == {T(F2, 3, "(1,3)=1"): 1}


def test_disjoint_factors_merge(F3):
    a, b = F3.elements[2], F3.one
    got = tensor_rewrite(F3, 3, [(1, 2, a), (2, 3, b)])
    assert got.terms == {Template(F3, 3, [(1, 2, a), (2, 3, b)]): 1}


def test_self_product_with_cancellation(F2):
    # a = -a in characteristic 2, so the fully expanded bracket product shows up
    got = primary_product(3, 1, 3, F2.one, 1, 3, F2.one)
    expected = {
        T(F2, 3, "0"): 1,
        T(F2, 3, "(1,2)=1"): 1,
        T(F2, 3, "(2,3)=1"): 1,
        T(F2, 3, "(1,2)=1;(2,3)=1"): 1,
    }
    assert got.terms == expected
    assert got.total_degree == 4


def test_same_column_dissolves(F2):
    f3 = field_make(3, 1)
    # (2,4) collides with (1,4) in column 4 and dissolves into row-2 cells
    for field in (F2, f3):
        a = field.one
        for b in field.nonzero:
            got = primary_product(4, 1, 4, a, 2, 4, b)
            expected = {Template(field, 4, [(1, 4, a)]): 1}
            for c in field.nonzero:
                expected[Template(field, 4, [(1, 4, a), (2, 3, c)])] = 1
            assert got.terms == expected


def test_same_row_dissolves(F2):
    got = primary_product(4, 1, 4, F2.one, 1, 3, F2.one)
    expected = {
        T(F2, 4, "(1,4)=1"): 1,
        T(F2, 4, "(1,4)=1;(2,3)=1"): 1,
    }
    assert got.terms == expected


def test_second_diagonal_absorption(F2):
    # a second-diagonal factor sharing a row or column is absorbed outright
    got = primary_product(3, 1, 2, F2.one, 1, 3, F2.one)
    assert got.terms == {T(F2, 3, "(1,3)=1"): 1}
    got = primary_product(3, 2, 3, F2.one, 1, 3, F2.one)
    assert got.terms == {T(F2, 3, "(1,3)=1"): 1}
    f3 = field_make(3, 1)
    got = tensor_rewrite(f3, 3, [(1, 2, f3.one), (1, 2, f3.one)])
    assert got.terms == {Template(f3, 3, [(1, 2, f3.elements[2])]): 1}
    got = tensor_rewrite(f3, 3, [(1, 2, f3.one), (1, 2, f3.elements[2])])
    assert got.terms == {T(f3, 3, "0"): 1}


def test_same_cell_noncancelling_both_expansions(F3):
    # the same-column and same-row brackets give the same decomposition
    one = F3.one
    keep = (1, 3, F3.elements[2])  # a + b = 2
    direct = tensor_rewrite(F3, 3, [(1, 3, one), (1, 3, one)])
    col_form = tensor_rewrite(F3, 3, [keep])
    row_form = tensor_rewrite(F3, 3, [keep])
    for c in F3.nonzero:
        col_form = col_form + tensor_rewrite(F3, 3, [keep, (2, 3, c)])
        row_form = row_form + tensor_rewrite(F3, 3, [keep, (1, 2, c)])
    assert direct == col_form == row_form


def test_three_factor_product_degree(F2):
    got = tensor_rewrite(F2, 3, [(1, 3, F2.one)] * 3)
    assert got.total_degree == 8
    assert brute_tensor_matches(F2, got, [(1, 3, F2.one)] * 3)


def brute_tensor_matches(field, result, cells):
    # check against iterated brute pairwise products
    acc = CharSum.trivial(field, 3)
    for cell in cells:
        nxt = CharSum(field, 3, {})
        for tau, mult in acc.items():
            nxt = nxt + brute_tensor(tau, Template(field, 3, [cell])).scale(mult)
        acc = nxt
    return acc == result


def test_c_count_examples(F2):
    t0 = T(F2, 3, "0")
    t13 = T(F2, 3, "(1,3)=1")
    t12 = T(F2, 3, "(1,2)=1")
    t23 = T(F2, 3, "(2,3)=1")
    chain = T(F2, 3, "(1,2)=1;(2,3)=1")
    assert c_count(t0, t0, t0) == 1
    assert c_count(t13, t13, t0) == 4
    assert c_count(t12, t23, chain) == 1
    with pytest.raises(ResourceCapExceeded):
        c_count(t13, t13, t0, max_pairs=3)


@pytest.mark.parametrize("q", [2, 3])
def test_counting_equals_rewrite_equals_brute_n3(q):
    field = field_make(q, 1)
    templates = enumerate_templates(3, field)
    for t1 in templates:
        for t2 in templates:
            counted = tensor_by_counting(t1, t2)  # self-checks against rewrite
            assert counted == brute_tensor(t1, t2)
            d1 = field.q ** invariants_of(t1).d
            d2 = field.q ** invariants_of(t2).d
            assert counted.total_degree == d1 * d2
            assert counted == tensor_by_counting(t2, t1)


def test_trivial_multiplicity_rule_n3(F3):
    templates = enumerate_templates(3, F3)
    trivial = T(F3, 3, "0")
    for t1 in templates:
        minus = Template(F3, 3, [(i, j, -v) for (i, j, v) in t1.cells])
        for t2 in templates:
            mult = tensor_product(t1, t2).terms.get(trivial, 0)
            expected = F3.q ** invariants_of(t1).i if t2 == minus else 0
            assert mult == expected


def test_fold_by_counting_matches_rewrite(F2):
    cells = [(1, 3, F2.one), (1, 3, F2.one), (2, 3, F2.one)]
    assert fold_by_counting(F2, 3, cells) == tensor_rewrite(F2, 3, cells)


def test_charsum_json(F2):
    got = primary_product(3, 1, 3, F2.one, 1, 3, F2.one)
    data = got.to_json()
    assert data["total_degree"] == "4"
    assert {"template": "0", "mult": 1} in data["terms"]
    assert all(isinstance(term["mult"], int) for term in data["terms"])
