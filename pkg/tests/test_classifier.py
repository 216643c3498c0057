import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stu_families import (
    ChargeVector,
    acin_invariants,
    case_label,
    classify_family,
    group_signature,
    schmidt_decompose,
    sign_equivalent,
)
from stu_families.classifier import exact_j1_is_zero

from conftest import SIGN_PATTERNS, family_charges, random_charges, with_signs

# Zero pattern of (J1, J2, J3) per group, written out independently of the package.
EXPECTED_ZEROS = {
    1: (True, True, True),
    2: (True, False, True),
    3: (True, True, False),
    4: (False, True, True),
    5: (False, True, False),
    6: (False, False, True),
    7: (None, False, False),
}


@pytest.mark.parametrize(
    "charges, family",
    [
        ((1, 1, 1, -1), 1),
        ((2, 1, 4, -8), 5),
        ((1, 1, 1, -4), 7),
        ((1, 2, 1, 2), 2),
        ((1, 2, 2, 1), 3),
        ((1, 1, 2, 2), 4),
        ((1, 2, 3, 6), 6),
    ],
)
def test_family_examples(charges, family):
    fam = classify_family(ChargeVector(*charges))
    assert fam.id == family
    assert fam.criteria_trace


def test_partition_is_exhaustive_on_small_box():
    values = [v for v in range(-4, 5) if v]
    counts = {}
    for t in itertools.product(values, repeat=4):
        fid = classify_family(ChargeVector(*t)).id
        counts[fid] = counts.get(fid, 0) + 1
    assert sum(counts.values()) == 8 ** 4
    assert set(counts) == set(range(1, 8))


@settings(max_examples=200, deadline=None)
@given(st.tuples(*[st.integers(1, 40)] * 4))
def test_family_is_sign_blind(mags):
    ids = {classify_family(with_signs(mags, s)).id for s in SIGN_PATTERNS}
    assert len(ids) == 1


@pytest.mark.parametrize("family", range(1, 8))
def test_generated_family_members(family):
    for c in family_charges(family, 60, seed=7):
        assert classify_family(c).id == family
        sig = group_signature(schmidt_decompose(c))
        want = EXPECTED_ZEROS[family]
        assert all(w is None or w == g for w, g in zip(want, sig.as_tuple()))


def test_exact_j1_agrees_with_float():
    for c in random_charges(2000, seed=11, hi=30):
        j1 = acin_invariants(schmidt_decompose(c)).j1
        if exact_j1_is_zero(c):
            assert j1 <= 1e-12
        else:
            assert j1 > 1e-14


def test_group7_reaches_both_j1_outcomes():
    seen = set()
    for t in itertools.product(range(1, 9), repeat=4):
        for signs in ((1, 1, 1, 1), (1, 1, 1, -1)):
            c = with_signs(t, signs)
            if classify_family(c).id == 7:
                seen.add(group_signature(schmidt_decompose(c)).j1_zero)
        if seen == {True, False}:
            break
    assert seen == {True, False}


def test_signature_without_charges_uses_float_threshold():
    f = schmidt_decompose(ChargeVector(1, 1, 1, -4))
    bare = type(f)(f.lambdas, f.phi, f.norm_factor)
    assert group_signature(bare).as_tuple() == (False, False, False)


def test_sign_equivalent():
    assert sign_equivalent(ChargeVector(1, 1, 1, 4), ChargeVector(1, 1, 1, -4))
    assert sign_equivalent(ChargeVector(-2, 1, 4, 8), ChargeVector(2, -1, -4, -8))
    assert not sign_equivalent(ChargeVector(1, 1, 1, 4), ChargeVector(1, 1, 4, 1))


@pytest.mark.parametrize(
    "charges, label",
    [((1, 1, 1, -4), "D"), ((2, 1, 4, -8), "boundary"), ((3, 1, 2, -1), "C"), ((1, 3, 4, 1), "A"), ((1, 3, 2, 1), "B")],
)
def test_case_label(charges, label):
    assert case_label(ChargeVector(*charges)) == label


@pytest.mark.parametrize("m", [1, 2, 7, 31])
def test_family_one_canonical_form(m):
    f = schmidt_decompose(ChargeVector(m, -m, m, m))
    etas = f.unnormalized_etas
    assert etas[0] == pytest.approx(m * math.sqrt(2), rel=1e-12)
    assert etas[4] == pytest.approx(m * math.sqrt(2), rel=1e-12)
    assert max(etas[1:4]) <= 1e-12 * m


def test_equivalence_class_has_one_canonical_form():
    mags = (3, 5, 7, 11)
    forms = [schmidt_decompose(with_signs(mags, s)) for s in SIGN_PATTERNS]
    assert len({with_signs(mags, s) for s in SIGN_PATTERNS}) == 16
    assert all(f.is_close(forms[0], 1e-12) for f in forms)
