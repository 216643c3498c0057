"""Closed-form Schmidt decomposition of the four-charge black-hole state.

The charge state ``-p1|001> - p2|010> - p3|100> + q0|111>`` is brought to the
form ``eta0|000> + eta1|100> + eta2|101> + eta3|110> + eta4|111>`` by an
explicit product of single-qubit unitaries, one construction per sign of
``p1 p2 p3 q0``. A second product of diagonal phase unitaries then makes every
coefficient except the ``|100>`` one real and non-negative, which is the
canonical form ``l0|000> + l1 e^{i phi}|100> + l2|101> + l3|110> + l4|111>``.

Which coefficients vanish is decided from exact integer criteria on the
charges; floating point only supplies magnitudes and phases.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .state import (
    ChargeVector,
    FullChargeVector,
    LocalUnitary,
    PureState3Q,
    apply_local_unitaries,
    unitarity_error,
)

CONSTRUCTED_UNITARY_TOL = 1e-12
CLOSED_FORM_TOL = 1e-10
NORM_TOL = 1e-10
PHASE_SNAP_TOL = 1e-9

# Amplitude labels carrying eta0..eta4 and the ones that must vanish.
SUPPORT = (0, 4, 5, 6, 7)
OFF_SUPPORT = (1, 2, 3)


@dataclass(frozen=True)
class SchmidtForm:
    """Normalized canonical form plus the original norm.

    ``charges`` records provenance for exact zero tests; it does not take part
    in equality, so sign-related charge vectors compare equal.
    """

    lambdas: tuple
    phi: float
    norm_factor: float
    charges: Optional[ChargeVector] = field(default=None, compare=False)

    def __post_init__(self):
        lam = tuple(float(x) for x in self.lambdas)
        if len(lam) != 5:
            raise ValueError("a Schmidt form has five coefficients")
        if any(x < 0 for x in lam):
            raise ValueError(f"Schmidt coefficients must be non-negative: {lam}")
        if abs(sum(x * x for x in lam) - 1.0) > NORM_TOL:
            raise ValueError("Schmidt coefficients must be normalized")
        if not 0.0 <= self.phi < 2 * math.pi:
            raise ValueError(f"phase must lie in [0, 2pi), got {self.phi}")
        if not self.norm_factor > 0:
            raise ValueError("norm_factor must be positive")
        object.__setattr__(self, "lambdas", lam)

    @property
    def mu(self) -> float:
        return 1.0 / self.norm_factor

    @property
    def phase_factor(self) -> complex:
        return cmath.exp(1j * self.phi)

    @property
    def unnormalized_etas(self) -> tuple:
        """Magnitudes ``|eta_j|`` of the unnormalized canonical state."""
        return tuple(x * self.norm_factor for x in self.lambdas)

    def amplitudes(self) -> np.ndarray:
        l0, l1, l2, l3, l4 = self.lambdas
        out = np.zeros(8, dtype=complex)
        out[0], out[4], out[5], out[6], out[7] = l0, l1 * self.phase_factor, l2, l3, l4
        return out

    def is_close(self, other: "SchmidtForm", tol: float = 1e-12) -> bool:
        return bool(
            np.allclose(self.lambdas, other.lambdas, rtol=0, atol=tol)
            and abs(self.phase_factor - other.phase_factor) <= tol
        )


@dataclass(frozen=True)
class SdIntermediates:
    """Parameters of the unitary construction and the resulting coefficients.

    ``t, k, b`` are real on the non-BPS branch and purely imaginary on the BPS
    branch; ``a`` and ``chi`` are always real. ``zero_mask[j]`` is True iff
    ``eta_j`` vanishes by the exact integer criterion.
    """

    charges: ChargeVector
    bps: bool
    t: complex
    k: complex
    a: float
    b: complex
    chi: float
    etas: Optional[tuple] = None
    thetas: Optional[tuple] = None
    zero_mask: Optional[tuple] = None


def full_charges_to_state(c: FullChargeVector) -> PureState3Q:
    """Eight-charge state under the dictionary
    ``p0=a0, p1=-a1, p2=-a2, p3=-a4, q0=a7, q1=a6, q2=a5, q3=a3``."""
    amps = [0] * 8
    amps[0] = c.p0
    amps[1] = -c.p1
    amps[2] = -c.p2
    amps[4] = -c.p3
    amps[7] = c.q0
    amps[6] = c.q1
    amps[5] = c.q2
    amps[3] = c.q3
    return PureState3Q(tuple(amps))


def charges_to_state(c: ChargeVector) -> PureState3Q:
    return full_charges_to_state(c.to_full())


def _checked(matrix: np.ndarray, qubit: str) -> LocalUnitary:
    err = unitarity_error(matrix)
    if err > CONSTRUCTED_UNITARY_TOL:
        raise RuntimeError(f"constructed operator on {qubit} misses unitarity by {err:.3g}")
    return LocalUnitary(matrix, qubit)


def build_sd_unitaries(c: ChargeVector):
    """Return ``(uA, uB, uC, intermediates)`` for the branch fixed by
    ``sign(p1 p2 p3 q0)``."""
    p1, p2, p3, q0 = c.as_tuple()
    ratio = math.sqrt(abs(p3 * q0) / abs(p1 * p2))
    if c.product() < 0:
        t = ratio
        k = t * p2 / p3
        a = -p3 / math.sqrt(t * t + 1)
        b = -t * p1 / math.sqrt(t * t + 1)
        chi = 1.0 / (math.sqrt(k * k + 1) * math.sqrt(a * a + b * b) * (t * t + 1))
        ua = np.array([[t, 1], [1, -t]]) / math.sqrt(t * t + 1)
        ub = np.array([[1, k], [k, -1]]) / math.sqrt(k * k + 1)
        uc = np.array([[-p3, -t * p1], [-t * p1, p3]]) / (math.sqrt(a * a + b * b) * math.sqrt(t * t + 1))
        inter = SdIntermediates(c, False, complex(t), complex(k), a, complex(b), chi)
    else:
        t = 1j * ratio
        k = t * p2 / p3
        tt = abs(t) ** 2 + 1
        a = -p3 / math.sqrt(tt)
        b = -t * p1 / math.sqrt(tt)
        chi = 1.0 / (math.sqrt(abs(k) ** 2 + 1) * math.sqrt(a * a + abs(b) ** 2) * tt)
        ua = np.array([[t, 1], [1, -t.conjugate()]]) / math.sqrt(tt)
        ub = np.array([[1, k.conjugate()], [k, -1]]) / math.sqrt(abs(k) ** 2 + 1)
        uc = np.array([[-p3, -t.conjugate() * p1], [-t.conjugate() * p1, -p3]]) / (
            math.sqrt(a * a + abs(b) ** 2) * math.sqrt(tt)
        )
        inter = SdIntermediates(c, True, t, k, a, b, chi)
    return _checked(ua, "A"), _checked(ub, "B"), _checked(uc, "C"), inter


def exact_zero_mask(c: ChargeVector) -> tuple:
    """Which of eta0..eta4 vanish, from integer identities only."""
    p1, p2, p3, q0 = c.as_tuple()
    return (
        False,
        p1 * p1 + p2 * p2 - p3 * p3 - q0 * q0 == 0,
        abs(p1 * p3) == abs(p2 * q0),
        abs(p2 * p3) == abs(p1 * q0),
        False,
    )


def _closed_form_etas(inter: SdIntermediates) -> tuple:
    p1, p2, p3, q0 = inter.charges.as_tuple()
    t, k, a, b, chi = inter.t, inter.k, inter.a, inter.b, inter.chi
    spread = p1 * p1 + p2 * p2 - p3 * p3 - q0 * q0
    tt = abs(t) ** 2 + 1
    eta0 = math.sqrt(a * a + abs(b) ** 2) * math.sqrt(abs(k) ** 2 + 1)
    if not inter.bps:
        t = t.real
        return (
            complex(eta0),
            complex(chi * t * spread),
            complex(-chi * tt * (p1 * p3 + p2 * q0)),
            complex(-chi * tt * (p2 * p3 + p1 * q0)),
            complex(-2 * chi * t * (p1 * p2 - p3 * q0)),
        )
    return (
        complex(eta0),
        chi * t.conjugate() * spread,
        complex(chi * tt * (p1 * p3 - p2 * q0)),
        complex(-chi * tt * (p2 * p3 - p1 * q0)),
        2 * chi * t * (p1 * p2 + p3 * q0),
    )


def eta_coefficients(c: ChargeVector, inter: SdIntermediates, unitaries=None) -> SdIntermediates:
    """Fill in eta0..eta4 and their phases.

    The closed-form coefficients are cross-checked against applying the
    constructed unitaries to the charge state; any disagreement beyond
    ``1e-10`` relative is an implementation bug and raises ``RuntimeError``.
    ``unitaries`` may pass the operators already returned by
    :func:`build_sd_unitaries` to skip rebuilding them.
    """
    if inter.charges != c:
        raise ValueError("intermediates were built for different charges")
    etas = _closed_form_etas(inter)
    if unitaries is None:
        unitaries = build_sd_unitaries(c)[:3]
    ua, ub, uc = unitaries
    moved = apply_local_unitaries(charges_to_state(c), ua, ub, uc).as_array()
    scale = math.sqrt(c.norm_squared())
    for label, eta in zip(SUPPORT, etas):
        if abs(moved[label] - eta) > CLOSED_FORM_TOL * scale:
            raise RuntimeError(
                f"closed-form coefficient at |{label:03b}> disagrees with the unitary action: "
                f"{eta} vs {moved[label]}"
            )
    for label in OFF_SUPPORT:
        if abs(moved[label]) > CLOSED_FORM_TOL * scale:
            raise RuntimeError(f"amplitude on |{label:03b}> should vanish, got {moved[label]}")

    mask = exact_zero_mask(c)
    if etas[0].real <= 0 or abs(etas[0].imag) > 0:
        raise RuntimeError("eta0 must be real and positive")
    thetas = tuple(0.0 if zero else cmath.phase(eta) for eta, zero in zip(etas, mask))
    etas = tuple(0j if zero else eta for eta, zero in zip(etas, mask))
    return replace(inter, etas=etas, thetas=thetas, zero_mask=mask)


def _free_phases(inter: SdIntermediates) -> tuple:
    """Phases theta1..theta4 with undefined ones (zero coefficients) chosen so
    that the relative phase vanishes whenever it can be absorbed."""
    _, th1, th2, th3, th4 = inter.thetas
    _, z1, z2, z3, _ = inter.zero_mask
    if z1:
        th1 = th2 + th3 - th4
    elif z2:
        th2 = th1 - th3 + th4
    elif z3:
        th3 = th1 - th2 + th4
    return th1, th2, th3, th4


def phase_unitaries(inter: SdIntermediates):
    """Diagonal unitaries ``diag(1, e^{i alpha})`` etc. taking the eta form to
    the canonical form."""
    _, th2, th3, th4 = _free_phases(inter)
    alpha = th4 - th3 - th2
    beta = -th3 - alpha
    gamma = -th2 - alpha
    return tuple(
        LocalUnitary(np.diag([1.0, cmath.exp(1j * angle)]), q)
        for angle, q in ((alpha, "A"), (beta, "B"), (gamma, "C"))
    )


def _snap_phase(phi: float) -> float:
    phi = phi % (2 * math.pi)
    quarter = math.pi / 2
    nearest = round(phi / quarter)
    if abs(phi - nearest * quarter) <= PHASE_SNAP_TOL:
        phi = (nearest % 4) * quarter
    return phi


def phase_canonicalize(inter: SdIntermediates, norm: float) -> SchmidtForm:
    if inter.etas is None:
        raise ValueError("eta coefficients have not been computed")
    th1, th2, th3, th4 = _free_phases(inter)
    phi = _snap_phase(th1 - th2 - th3 + th4)
    mags = [abs(e) for e in inter.etas]
    form = SchmidtForm(tuple(m / norm for m in mags), phi, norm, inter.charges)

    eta_state = np.zeros(8, dtype=complex)
    eta_state[list(SUPPORT)] = inter.etas
    da, db, dc = phase_unitaries(inter)
    moved = apply_local_unitaries(PureState3Q.from_array(eta_state), da, db, dc).as_array()
    if np.max(np.abs(moved - form.amplitudes() * norm)) > CLOSED_FORM_TOL * norm:
        raise RuntimeError("phase unitaries do not reproduce the canonical form")
    return form


def exact_phase_sign(c: ChargeVector) -> int:
    """``e^{i phi}`` (always +1 or -1) from integer signs alone.

    Returns +1 whenever the phase is absorbable, i.e. some of eta1..eta3 vanish.
    """
    p1, p2, p3, q0 = c.as_tuple()
    _, z1, z2, z3, _ = exact_zero_mask(c)
    if z1 or z2 or z3:
        return 1
    sgn = lambda x: 1 if x > 0 else -1  # noqa: E731
    spread = sgn(p1 * p1 + p2 * p2 - p3 * p3 - q0 * q0)
    if c.product() < 0:
        return -spread * sgn(p1 * p3 + p2 * q0) * sgn(p2 * p3 + p1 * q0) * sgn(p1 * p2 - p3 * q0)
    return -spread * sgn(p1 * p3 - p2 * q0) * sgn(p2 * p3 - p1 * q0) * sgn(p1 * p2 + p3 * q0)


def sd_transform(c: ChargeVector):
    """The full local-unitary chain (one operator per qubit) taking the charge
    state to its unnormalized canonical form."""
    ua, ub, uc, inter = build_sd_unitaries(c)
    da, db, dc = phase_unitaries(eta_coefficients(c, inter, (ua, ub, uc)))
    return tuple(
        LocalUnitary(d.matrix @ u.matrix, u.qubit) for d, u in ((da, ua), (db, ub), (dc, uc))
    )


def schmidt_decompose(c: ChargeVector) -> SchmidtForm:
    ua, ub, uc, inter = build_sd_unitaries(c)
    inter = eta_coefficients(c, inter, (ua, ub, uc))
    return phase_canonicalize(inter, math.sqrt(c.norm_squared()))
