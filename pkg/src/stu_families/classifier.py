"""Partition of four-charge black holes into seven LU-inequivalent families."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .invariants import acin_invariants
from .schmidt import SchmidtForm, exact_phase_sign, exact_zero_mask, schmidt_decompose
from .state import ChargeVector

SIGN_EQUIVALENCE_TOL = 1e-12
FLOAT_ZERO_TOL = 1e-12

# Expected zero pattern (J1, J2, J3) per group; True = vanishes, None = either.
GROUP_ZERO_PATTERNS = {
    1: (True, True, True),
    2: (True, False, True),
    3: (True, True, False),
    4: (False, True, True),
    5: (False, True, False),
    6: (False, False, True),
    7: (None, False, False),
}


class PartitionError(RuntimeError):
    """A charge vector matched zero or several families."""


@dataclass(frozen=True)
class FamilyId:
    id: int
    criteria_trace: tuple

    def __post_init__(self):
        if not 1 <= self.id <= 7:
            raise ValueError(f"family id must be in 1..7, got {self.id}")


@dataclass(frozen=True)
class GroupSignature:
    """Whether J1, J2, J3 vanish; ``None`` means "either" (only J1 of G7)."""

    j1_zero: Optional[bool]
    j2_zero: bool
    j3_zero: bool

    def matches(self, column: tuple) -> bool:
        return all(want is None or want == got for want, got in zip(column, self.as_tuple()))

    def as_tuple(self) -> tuple:
        return (self.j1_zero, self.j2_zero, self.j3_zero)


def _criteria(c: ChargeVector) -> dict:
    """All family criteria as lists of (text, holds) pairs."""
    p1, p2, p3, q0 = c.as_tuple()
    s1, s2, s3, s0 = p1 * p1, p2 * p2, p3 * p3, q0 * q0
    r13, r20 = abs(p1 * p3), abs(p2 * q0)
    r23, r10 = abs(p2 * p3), abs(p1 * q0)
    return {
        1: [("p1^2 = p2^2 = p3^2 = q0^2", s1 == s2 == s3 == s0)],
        2: [("p1^2 = p3^2", s1 == s3), ("p2^2 = q0^2", s2 == s0), ("p1^2 != p2^2", s1 != s2)],
        3: [("p2^2 = p3^2", s2 == s3), ("p1^2 = q0^2", s1 == s0), ("p1^2 != p2^2", s1 != s2)],
        4: [("p1^2 = p2^2", s1 == s2), ("p3^2 = q0^2", s3 == s0), ("p1^2 != p3^2", s1 != s3)],
        5: [
            ("p1^2 != q0^2", s1 != s0),
            ("p2^2 != p3^2", s2 != s3),
            ("p3^2 != q0^2", s3 != s0),
            ("|p1 p3| = |p2 q0|", r13 == r20),
        ],
        6: [
            ("p2^2 != q0^2", s2 != s0),
            ("p1^2 != p3^2", s1 != s3),
            ("p3^2 != q0^2", s3 != s0),
            ("|p2 p3| = |p1 q0|", r23 == r10),
        ],
        7: [("|p1 p3| != |p2 q0|", r13 != r20), ("|p2 p3| != |p1 q0|", r23 != r10)],
    }


def classify_family(c: ChargeVector) -> FamilyId:
    """Family 1..7 of a charge vector.

    Every family's criteria are evaluated in exact integer arithmetic and the
    result is audited for exclusivity, so a gap or overlap in the partition
    raises :class:`PartitionError` instead of being masked.
    """
    criteria = _criteria(c)
    hits = [fid for fid, checks in criteria.items() if all(ok for _, ok in checks)]
    if len(hits) != 1:
        detail = {fid: [(text, ok) for text, ok in checks] for fid, checks in criteria.items()}
        what = "no family matched" if not hits else f"multiple families matched {hits}"
        raise PartitionError(f"{what} for {c}: {detail}")
    fid = hits[0]
    return FamilyId(fid, tuple(text for text, _ in criteria[fid]))


def exact_j1_is_zero(c: ChargeVector) -> bool:
    """Decide ``J1 = |l1 l4 e^{i phi} - l2 l3|^2 == 0`` exactly.

    With ``P = |p3 q0|`` and ``Q = |p1 p2|`` one has ``l1 l4 = l2 l3`` iff
    ``2 P Q |p1^2 + p2^2 - p3^2 - q0^2| == (P + Q) |d2 d3|`` where
    ``d2 = |p1 p3| - |p2 q0|`` and ``d3 = |p2 p3| - |p1 q0|``.
    """
    p1, p2, p3, q0 = c.as_tuple()
    _, z1, z2, z3, _ = exact_zero_mask(c)
    if z1:
        return z2 or z3
    if z2 or z3:
        return False
    big_p, big_q = abs(p3 * q0), abs(p1 * p2)
    spread = abs(p1 * p1 + p2 * p2 - p3 * p3 - q0 * q0)
    d2 = abs(p1 * p3) - abs(p2 * q0)
    d3 = abs(p2 * p3) - abs(p1 * q0)
    balanced = 2 * big_p * big_q * spread == (big_p + big_q) * abs(d2 * d3)
    return balanced and exact_phase_sign(c) == 1


def group_signature(f: SchmidtForm) -> GroupSignature:
    """Zero pattern of (J1, J2, J3).

    For forms produced from charges the pattern is exact and is audited
    against the expected pattern of the charges' family; a mismatch raises
    :class:`PartitionError`. Forms without charge provenance fall back to a
    ``1e-12`` threshold on the floating invariants.
    """
    c = f.charges
    if c is None:
        j = acin_invariants(f)
        return GroupSignature(j.j1 <= FLOAT_ZERO_TOL, j.j2 <= FLOAT_ZERO_TOL, j.j3 <= FLOAT_ZERO_TOL)
    _, _, z2, z3, _ = exact_zero_mask(c)
    sig = GroupSignature(exact_j1_is_zero(c), z2, z3)
    fam = classify_family(c).id
    if not sig.matches(GROUP_ZERO_PATTERNS[fam]):
        raise PartitionError(f"signature {sig.as_tuple()} of {c} does not fit group {fam}")
    return sig


def sign_equivalent(c1: ChargeVector, c2: ChargeVector) -> bool:
    """True iff the charge vectors differ only by signs.

    When true, their canonical forms are also checked to agree within
    ``1e-12``; disagreement raises ``RuntimeError``.
    """
    if c1.magnitudes() != c2.magnitudes():
        return False
    f1, f2 = schmidt_decompose(c1), schmidt_decompose(c2)
    if not f1.is_close(f2, SIGN_EQUIVALENCE_TOL):
        raise RuntimeError(f"sign-related charges {c1} and {c2} gave different canonical forms")
    return True


def case_label(c: ChargeVector) -> str:
    """Which of the strict cases A-D holds, or ``"boundary"`` on equality."""
    p1, p2, p3, q0 = c.as_tuple()
    r23, r10 = abs(p2 * p3), abs(p1 * q0)
    r13, r20 = abs(p1 * p3), abs(p2 * q0)
    if r23 == r10 or r13 == r20:
        return "boundary"
    return {(True, True): "A", (True, False): "B", (False, True): "C", (False, False): "D"}[
        (r23 > r10, r13 > r20)
    ]
