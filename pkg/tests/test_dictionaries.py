import random

import pytest

from stu_families import cayley_hyperdet, delta
from stu_families.dictionaries import (
    DUFF_ASSIGNMENT,
    ComplementRuleError,
    Correspondence,
    SignVector,
    cayley_poly,
    complete_assignment,
    correspondence_residual,
    delta_poly,
    dictionary_state,
    duff_swap,
    enumerate_dictionaries,
    reference_label,
    solve_sign_vectors,
    verify_correspondence,
)
from stu_families.state import FullChargeVector

# Row-wise copy of the eight positive dictionaries: charge -> signs for C1..C8.
ROWS = {
    "p0": (-1, +1, +1, +1, +1, -1, -1, -1),
    "p1": (-1, -1, +1, -1, +1, +1, -1, +1),
    "p2": (-1, -1, +1, +1, -1, +1, +1, -1),
    "p3": (+1, -1, +1, +1, +1, -1, +1, +1),
    "q0": (-1, +1, -1, +1, +1, +1, +1, +1),
    "q1": (+1, +1, +1, +1, -1, +1, -1, +1),
    "q2": (+1, +1, +1, -1, +1, +1, +1, -1),
    "q3": (-1, +1, +1, -1, -1, -1, +1, +1),
}
LABELS = {"p0": 0, "p1": 1, "p2": 2, "p3": 4, "q0": 7, "q1": 6, "q2": 5, "q3": 3}


def column(i):
    delta = [0] * 8
    for name, signs in ROWS.items():
        delta[LABELS[name]] = signs[i]
    return SignVector(tuple(delta))


def hyperdet(a):
    return (a[0] * a[7] - a[1] * a[6] - a[2] * a[5] + a[3] * a[4]) ** 2 - 4 * (a[0] * a[3] - a[1] * a[2]) * (
        a[4] * a[7] - a[5] * a[6]
    )


def quartic(c):
    p0, p1, p2, p3, q0, q1, q2, q3 = c
    return (p0 * q0 + p1 * q1 + p2 * q2 - p3 * q3) ** 2 + 4 * (p0 * q3 - p1 * p2) * (p3 * q0 + q2 * q1)


def test_assignment_is_the_expected_one():
    assert DUFF_ASSIGNMENT == LABELS


def test_polynomials_match_numeric_formulas():
    rng = random.Random(1)
    dp, cp = delta_poly(), cayley_poly()
    for _ in range(10_000):
        vals = [rng.randint(-20, 20) for _ in range(8)]
        assert dp.evaluate(dict(zip(dp.variables, vals))) == quartic(vals)
        assert cp.evaluate(dict(zip(cp.variables, vals))) == hyperdet(vals)


def test_polynomials_are_quartic_forms():
    assert delta_poly().is_homogeneous(4)
    assert cayley_poly().is_homogeneous(4)


def test_hyperdet_vanishes_on_product_state():
    assert hyperdet([1, 0, 0, 0, 0, 0, 0, 0]) == 0
    assert cayley_poly().evaluate({f"a{i}": int(i == 0) for i in range(8)}) == 0


def test_sixteen_dictionaries_match_table():
    found = enumerate_dictionaries()
    assert len(found) == 16 and len(set(found)) == 16
    assert {-s for s in found} == set(found)
    expected = {column(i) for i in range(8)}
    assert expected | {-s for s in expected} == set(found)
    for i in range(8):
        assert reference_label(column(i)) == f"C{i + 1}"
        assert reference_label(-column(i)) == f"-C{i + 1}"


def test_all_plus_signs_is_not_a_dictionary():
    assert SignVector((1,) * 8) not in enumerate_dictionaries()
    assert reference_label(SignVector((1,) * 8)) == ""


def test_working_dictionary_member():
    # a1 = -p1, a2 = -p2, a4 = -p3, a7 = q0 and the rest positive
    working = SignVector((1, -1, -1, 1, -1, 1, 1, 1))
    assert working == column(1)
    assert verify_correspondence(Correspondence(DUFF_ASSIGNMENT, working))


def test_each_dictionary_numerically():
    rng = random.Random(2)
    for signs in enumerate_dictionaries():
        for _ in range(1000):
            c = FullChargeVector(*(rng.randint(-50, 50) for _ in range(8)))
            assert cayley_hyperdet(dictionary_state(c, signs)) == delta(c)


def test_swap_p1_p2_is_a_dictionary():
    corr = duff_swap("p1", "p2")
    assert verify_correspondence(corr)
    assert len(solve_sign_vectors(corr.assignment)) == 16


def test_swap_p0_p3_is_not():
    corr = duff_swap("p0", "p3")
    assert not verify_correspondence(corr)
    assert not correspondence_residual(corr).is_zero()


def test_complement_rule_enforced():
    bad = dict(LABELS)
    bad["q1"], bad["q2"] = bad["q2"], bad["q1"]
    with pytest.raises(ComplementRuleError):
        Correspondence(bad, SignVector((1,) * 8))


def test_complete_assignment():
    assert complete_assignment({"p0": 0, "p1": 1, "p2": 2, "p3": 4}) == LABELS


def test_sign_vector_validation():
    with pytest.raises(ValueError):
        SignVector((1, 0, 1, 1, 1, 1, 1, 1))
    with pytest.raises(ValueError):
        SignVector((1,) * 7)
