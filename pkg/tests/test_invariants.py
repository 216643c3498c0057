import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stu_families import (
    ChargeVector,
    FullChargeVector,
    PureState3Q,
    acin_invariants,
    cayley_hyperdet,
    charges_to_state,
    delta,
    entropy,
    normalize,
    schmidt_decompose,
    three_tangle,
)
from stu_families.schmidt import SchmidtForm, full_charges_to_state


def test_delta_four_charge_examples():
    assert delta(FullChargeVector(p1=1, p2=1, p3=1, q0=-1)) == 4
    assert delta(FullChargeVector()) == 0
    assert delta(FullChargeVector(p1=1, p2=1, p3=1, q0=-4)) == 16


def test_delta_is_exact_for_huge_charges():
    big = 10 ** 30
    c = FullChargeVector(p1=big, p2=big, p3=big, q0=-big)
    assert delta(c) == 4 * big ** 4


def test_delta_accepts_charge_vector():
    assert delta(ChargeVector(2, 1, 4, -8)) == 256


def test_cayley_of_charge_state_and_product_state():
    assert cayley_hyperdet(charges_to_state(ChargeVector(1, 1, 1, -1))) == 4
    assert cayley_hyperdet(PureState3Q.basis(0)) == 0


def test_cayley_on_schmidt_pattern():
    # With amplitudes only on 000,100,101,110,111 the first square vanishes
    # except for l0*l4, and the second product is zero: det = (l0 l4)^2.
    lam = (0.5, 0.0, 0.3, 0.4, math.sqrt(1 - 0.25 - 0.09 - 0.16))
    f = SchmidtForm(lam, 0.0, 1.0)
    assert cayley_hyperdet(f.amplitudes()) == pytest.approx((lam[0] * lam[4]) ** 2, rel=1e-14)


@given(st.lists(st.integers(-50, 50), min_size=8, max_size=8))
def test_dictionary_contract_delta_equals_det(values):
    c = FullChargeVector(*values)
    d = delta(c)
    det = cayley_hyperdet(full_charges_to_state(c))
    assert isinstance(det, int) and d == det


nonzero = st.builds(lambda m, s: m * s, st.integers(1, 10 ** 6), st.sampled_from((1, -1)))


@given(st.tuples(nonzero, nonzero, nonzero, nonzero))
def test_abs_det_of_charge_state(values):
    c = ChargeVector(*values)
    assert abs(cayley_hyperdet(charges_to_state(c))) == 4 * abs(c.product())


def test_three_tangle_values():
    assert three_tangle(normalize(charges_to_state(ChargeVector(1, 1, 1, -1)))) == pytest.approx(1.0, abs=1e-14)
    assert three_tangle(PureState3Q.basis(0)) == 0
    ghz = PureState3Q((1 / math.sqrt(2), 0, 0, 0, 0, 0, 0, 1 / math.sqrt(2)))
    assert three_tangle(ghz) == pytest.approx(1.0, abs=1e-14)


def test_three_tangle_requires_normalized_state():
    with pytest.raises(ValueError):
        three_tangle(charges_to_state(ChargeVector(1, 1, 1, -1)))


@settings(max_examples=200)
@given(st.integers(0, 2 ** 32 - 1))
def test_three_tangle_in_unit_interval(seed):
    rng = np.random.default_rng(seed)
    psi = rng.normal(size=8) + 1j * rng.normal(size=8)
    tau = three_tangle(normalize(PureState3Q.from_array(psi)))
    assert -1e-12 <= tau <= 1 + 1e-12


@pytest.mark.parametrize(
    "charges, over_pi",
    [((1, 1, 1, -1), 2.0), ((1, 1, 1, 4), 4.0), ((2, 1, 4, -8), 16.0)],
)
def test_entropy_values(charges, over_pi):
    assert entropy(ChargeVector(*charges)) == pytest.approx(over_pi * math.pi, rel=1e-12)


def test_acin_invariants_ghz():
    r = 1 / math.sqrt(2)
    j = acin_invariants(SchmidtForm((r, 0, 0, 0, r), 0.0, 1.0))
    assert j.as_tuple() == pytest.approx((0, 0, 0), abs=1e-15)
    assert j.j4 == pytest.approx(0.25, rel=1e-14)


def test_acin_invariants_of_the_q0_minus_4_example():
    # Hand evaluation on sqrt5 * (1, 6/5, 3/5, 3/5, 4/5) / sqrt19, phi = 0:
    # J1 = ((24/5 - 9/5)/19)^2 = 9/361, J2 = J3 = (3/19)^2 = 9/361.
    r5 = math.sqrt(5)
    lam = tuple(x * r5 / math.sqrt(19) for x in (1, 6 / 5, 3 / 5, 3 / 5, 4 / 5))
    j = acin_invariants(SchmidtForm(lam, 0.0, math.sqrt(19)))
    assert j.as_tuple() == pytest.approx((9 / 361,) * 3, abs=1e-12)
    from_charges = acin_invariants(schmidt_decompose(ChargeVector(1, 1, 1, -4)))
    assert from_charges.as_tuple() == pytest.approx((9 / 361,) * 3, abs=1e-12)


def test_acin_j2_vanishes_with_lambda2():
    f = SchmidtForm((0.6, 0.0, 0.0, 0.0, 0.8), 0.0, 1.0)
    assert acin_invariants(f).j2 == 0


def test_j4_transports_abs_det():
    for c in [ChargeVector(1, 1, 1, -4), ChargeVector(3, -5, 7, 11), ChargeVector(2, 1, 4, -8)]:
        j = acin_invariants(schmidt_decompose(c))
        assert c.norm_squared() ** 2 * j.j4 == pytest.approx(4 * abs(c.product()), rel=1e-10)
