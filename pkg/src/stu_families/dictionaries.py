"""Charge/amplitude dictionaries re-derived by exact polynomial identity testing.

A dictionary assigns each of the eight charges to one basis amplitude with a
sign, ``charge = delta_l * a_l``, such that the quartic charge invariant equals
Cayley's hyperdeterminant identically.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping

from .polynomial import IntPolynomial
from .state import FullChargeVector, PureState3Q

CHARGE_NAMES = FullChargeVector.names()
MAGNETIC = ("p0", "p1", "p2", "p3")
ELECTRIC = ("q0", "q1", "q2", "q3")
COEFF_NAMES = tuple(f"a{i}" for i in range(8))

# Duff's charge -> basis label correspondence.
DUFF_ASSIGNMENT = {"p0": 0, "p1": 1, "p2": 2, "p3": 4, "q0": 7, "q1": 6, "q2": 5, "q3": 3}

# Eight dictionaries B = C_i as charge -> sign; the other eight are -C_i.
REFERENCE_DICTIONARIES = {
    "C1": dict(p0=-1, p1=-1, p2=-1, p3=+1, q0=-1, q1=+1, q2=+1, q3=-1),
    "C2": dict(p0=+1, p1=-1, p2=-1, p3=-1, q0=+1, q1=+1, q2=+1, q3=+1),
    "C3": dict(p0=+1, p1=+1, p2=+1, p3=+1, q0=-1, q1=+1, q2=+1, q3=+1),
    "C4": dict(p0=+1, p1=-1, p2=+1, p3=+1, q0=+1, q1=+1, q2=-1, q3=-1),
    "C5": dict(p0=+1, p1=+1, p2=-1, p3=+1, q0=+1, q1=-1, q2=+1, q3=-1),
    "C6": dict(p0=-1, p1=+1, p2=+1, p3=-1, q0=+1, q1=+1, q2=+1, q3=-1),
    "C7": dict(p0=-1, p1=-1, p2=+1, p3=+1, q0=+1, q1=-1, q2=+1, q3=+1),
    "C8": dict(p0=-1, p1=+1, p2=-1, p3=+1, q0=+1, q1=+1, q2=-1, q3=+1),
}

# The dictionary used for the charge state throughout the package.
WORKING_DICTIONARY = "C2"


class ComplementRuleError(ValueError):
    """A correspondence does not send q_i to the complement of p_i's label."""


@dataclass(frozen=True, order=True)
class SignVector:
    """Signs delta_0..delta_7, indexed by basis label."""

    delta: tuple

    def __post_init__(self):
        d = tuple(int(x) for x in self.delta)
        if len(d) != 8 or any(x not in (1, -1) for x in d):
            raise ValueError(f"a sign vector has 8 entries in {{+1, -1}}, got {self.delta}")
        object.__setattr__(self, "delta", d)

    def __neg__(self) -> "SignVector":
        return SignVector(tuple(-x for x in self.delta))

    def __getitem__(self, label: int) -> int:
        return self.delta[label]

    @classmethod
    def from_charge_signs(cls, signs: Mapping, assignment: Mapping = DUFF_ASSIGNMENT) -> "SignVector":
        delta = [0] * 8
        for name, label in assignment.items():
            delta[label] = signs[name]
        return cls(tuple(delta))

    def charge_signs(self, assignment: Mapping = DUFF_ASSIGNMENT) -> dict:
        return {name: self.delta[assignment[name]] for name in CHARGE_NAMES}


@dataclass(frozen=True)
class Correspondence:
    """A charge -> basis-label bijection together with a sign per label."""

    assignment: Mapping
    signs: SignVector

    def __post_init__(self):
        assignment = dict(self.assignment)
        if set(assignment) != set(CHARGE_NAMES):
            raise ValueError(f"assignment must cover exactly {CHARGE_NAMES}")
        if sorted(assignment.values()) != list(range(8)):
            raise ValueError("assignment must be a bijection onto the labels 0..7")
        for p, q in zip(MAGNETIC, ELECTRIC):
            if assignment[q] != 7 - assignment[p]:
                raise ComplementRuleError(
                    f"{q} sits on |{assignment[q]:03b}> but {p} sits on |{assignment[p]:03b}>; "
                    f"{q} must take the complement |{7 - assignment[p]:03b}>"
                )
        object.__setattr__(self, "assignment", assignment)

    @classmethod
    def from_magnetic(cls, magnetic: Mapping, signs: SignVector) -> "Correspondence":
        return cls(complete_assignment(magnetic), signs)


def complete_assignment(magnetic: Mapping) -> dict:
    """Extend a magnetic-charge placement by the complement rule."""
    assignment = {p: magnetic[p] for p in MAGNETIC}
    for p, q in zip(MAGNETIC, ELECTRIC):
        assignment[q] = 7 - magnetic[p]
    return assignment


def duff_swap(a: str, b: str, dictionary: str = WORKING_DICTIONARY) -> Correspondence:
    """Duff's correspondence with magnetic charges ``a`` and ``b`` exchanged
    (their electric partners follow by the complement rule).

    Each charge keeps the sign it has in the named reference dictionary.
    """
    magnetic = {p: DUFF_ASSIGNMENT[p] for p in MAGNETIC}
    if a not in MAGNETIC or b not in MAGNETIC:
        raise ValueError(f"can only swap magnetic charges {MAGNETIC}, got {a!r}, {b!r}")
    magnetic[a], magnetic[b] = magnetic[b], magnetic[a]
    assignment = complete_assignment(magnetic)
    signs = SignVector.from_charge_signs(REFERENCE_DICTIONARIES[dictionary], assignment)
    return Correspondence(assignment, signs)


def duff_correspondence(dictionary: str = WORKING_DICTIONARY) -> Correspondence:
    return Correspondence(DUFF_ASSIGNMENT, reference_sign_vectors()[dictionary])


@lru_cache(maxsize=None)
def delta_poly() -> IntPolynomial:
    p0, p1, p2, p3, q0, q1, q2, q3 = IntPolynomial.variables_of(CHARGE_NAMES)
    return (p0 * q0 + p1 * q1 + p2 * q2 - p3 * q3) ** 2 + 4 * (p0 * q3 - p1 * p2) * (p3 * q0 + q2 * q1)


@lru_cache(maxsize=None)
def cayley_poly() -> IntPolynomial:
    a = IntPolynomial.variables_of(COEFF_NAMES)
    return (a[0] * a[7] - a[1] * a[6] - a[2] * a[5] + a[3] * a[4]) ** 2 - 4 * (a[0] * a[3] - a[1] * a[2]) * (
        a[4] * a[7] - a[5] * a[6]
    )


def _coefficient_images(assignment: Mapping, signs: SignVector) -> dict:
    by_label = {label: name for name, label in assignment.items()}
    return {
        f"a{label}": signs[label] * IntPolynomial.variable(CHARGE_NAMES, by_label[label]) for label in range(8)
    }


def correspondence_residual(corr: Correspondence) -> IntPolynomial:
    """``det Psi - Delta`` after substituting the correspondence; zero iff it is a dictionary."""
    return cayley_poly().substitute(_coefficient_images(corr.assignment, corr.signs)) - delta_poly()


def verify_correspondence(corr: Correspondence) -> bool:
    return correspondence_residual(corr).is_zero()


def solve_sign_vectors(assignment: Mapping = DUFF_ASSIGNMENT) -> list:
    """All sign vectors making ``assignment`` a dictionary, in lexicographic order."""
    Correspondence(assignment, SignVector((1,) * 8))  # validates the assignment
    target = delta_poly()
    found = []
    for delta in itertools.product((-1, 1), repeat=8):
        signs = SignVector(delta)
        if cayley_poly().substitute(_coefficient_images(assignment, signs)) == target:
            found.append(signs)
    return sorted(found)


def enumerate_dictionaries() -> list:
    """The 16 sign dictionaries of Duff's correspondence."""
    found = solve_sign_vectors(DUFF_ASSIGNMENT)
    if len(found) != 16:
        raise RuntimeError(f"expected 16 dictionaries, found {len(found)}")
    if {-s for s in found} != set(found):
        raise RuntimeError("dictionary set is not closed under global negation")
    return found


def reference_sign_vectors() -> dict:
    return {name: SignVector.from_charge_signs(signs) for name, signs in REFERENCE_DICTIONARIES.items()}


def reference_label(signs: SignVector) -> str:
    """``"C3"`` for a reference dictionary, ``"-C3"`` for its negation, else ``""``."""
    for name, column in reference_sign_vectors().items():
        if signs == column:
            return name
        if signs == -column:
            return "-" + name
    return ""


def dictionary_state(c: FullChargeVector, signs: SignVector, assignment: Mapping = DUFF_ASSIGNMENT) -> PureState3Q:
    """Amplitudes ``a_l = delta_l * charge(l)``."""
    amps = [0] * 8
    for name in CHARGE_NAMES:
        label = assignment[name]
        amps[label] = signs[label] * getattr(c, name)
    return PureState3Q(tuple(amps))
