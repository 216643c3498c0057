"""Scalar invariants: the quartic charge invariant, Cayley's hyperdeterminant,
the 3-tangle, black-hole entropy and the Acin local-unitary invariants."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

from .state import ChargeVector, FullChargeVector, PureState3Q, state_norm

if TYPE_CHECKING:
    from .schmidt import SchmidtForm

NORMALIZATION_TOL = 1e-9


@dataclass(frozen=True)
class InvariantTriple:
    """J1, J2, J3 of the canonical form; ``j4 = (lambda0 lambda4)^2`` is a
    cross-check only and never used for classification."""

    j1: float
    j2: float
    j3: float
    j4: float

    def as_tuple(self) -> tuple:
        return (self.j1, self.j2, self.j3)


def delta(c: FullChargeVector) -> int:
    """Quartic invariant of the eight charges (exact integer)."""
    if isinstance(c, ChargeVector):
        c = c.to_full()
    p0, p1, p2, p3, q0, q1, q2, q3 = c.as_tuple()
    return (p0 * q0 + p1 * q1 + p2 * q2 - p3 * q3) ** 2 + 4 * (p0 * q3 - p1 * p2) * (p3 * q0 + q2 * q1)


def cayley_hyperdet(s) -> complex:
    """Cayley's hyperdeterminant of the 2x2x2 amplitude tensor.

    Exact when every amplitude is a Python int; complex otherwise.
    """
    a = s.amplitudes if isinstance(s, PureState3Q) else tuple(s)
    first = a[0] * a[7] - a[1] * a[6] - a[2] * a[5] + a[3] * a[4]
    return first * first - 4 * (a[0] * a[3] - a[1] * a[2]) * (a[4] * a[7] - a[5] * a[6])


def three_tangle(s: PureState3Q) -> float:
    n = state_norm(s)
    if abs(n - 1.0) > NORMALIZATION_TOL:
        raise ValueError(f"three_tangle needs a normalized state (norm = {n!r})")
    return 4.0 * abs(cayley_hyperdet(s))


def entropy(c: ChargeVector) -> float:
    """Black-hole entropy ``S = (pi/2) sqrt(tau)`` with ``tau = 4 |det psi|``
    evaluated on the unnormalized charge state; equals ``2 pi sqrt|p1 p2 p3 q0|``."""
    from .schmidt import charges_to_state

    det = cayley_hyperdet(charges_to_state(c))
    return 0.5 * math.pi * math.sqrt(4 * abs(det))


def acin_invariants(f: "SchmidtForm") -> InvariantTriple:
    l0, l1, l2, l3, l4 = f.lambdas
    j1 = abs(l1 * l4 * complex(math.cos(f.phi), math.sin(f.phi)) - l2 * l3) ** 2
    return InvariantTriple(
        j1=j1,
        j2=(l0 * l2) ** 2,
        j3=(l0 * l3) ** 2,
        j4=(l0 * l4) ** 2,
    )
