"""Charge vectors, three-qubit pure states and single-qubit unitaries.

Basis convention: amplitude index ``l = 4*i + 2*j + k`` for ``|ijk>``, with
qubit A the leftmost factor. So ``a[4]`` is the amplitude of ``|100>``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

UNITARY_TOL = 1e-10
QUBITS = ("A", "B", "C")


class NotUnitaryError(ValueError):
    """Raised when a matrix fails the unitarity check."""


@dataclass(frozen=True)
class ChargeVector:
    """The four non-vanishing charges of a "large" STU black hole.

    Positional order is ``(p1, p2, p3, q0)``, magnetic charges first, which is
    how charge tuples are written throughout this package. The CLI takes
    ``q0`` first; use :meth:`from_q0_first` for that ordering.
    """

    p1: int
    p2: int
    p3: int
    q0: int

    def __post_init__(self):
        for name in ("q0", "p1", "p2", "p3"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
                raise TypeError(f"{name} must be an integer, got {value!r}")
            if value == 0:
                raise ValueError(f"{name} must be non-zero")
            object.__setattr__(self, name, int(value))

    @classmethod
    def from_q0_first(cls, q0, p1, p2, p3) -> "ChargeVector":
        return cls(p1, p2, p3, q0)

    def as_tuple(self) -> tuple:
        return (self.p1, self.p2, self.p3, self.q0)

    def magnitudes(self) -> tuple:
        return tuple(abs(x) for x in self.as_tuple())

    def product(self) -> int:
        return self.p1 * self.p2 * self.p3 * self.q0

    def product_sign(self) -> int:
        """Sign of p1*p2*p3*q0: -1 is the non-BPS branch, +1 the BPS one."""
        return 1 if self.product() > 0 else -1

    def is_bps(self) -> bool:
        return self.product() > 0

    def norm_squared(self) -> int:
        return self.p1 ** 2 + self.p2 ** 2 + self.p3 ** 2 + self.q0 ** 2

    def to_full(self) -> "FullChargeVector":
        return FullChargeVector(p1=self.p1, p2=self.p2, p3=self.p3, q0=self.q0)


@dataclass(frozen=True)
class FullChargeVector:
    """All eight charges; zeros are allowed."""

    p0: int = 0
    p1: int = 0
    p2: int = 0
    p3: int = 0
    q0: int = 0
    q1: int = 0
    q2: int = 0
    q3: int = 0

    def __post_init__(self):
        for name in self.names():
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
                raise TypeError(f"{name} must be an integer, got {value!r}")
            object.__setattr__(self, name, int(value))

    @staticmethod
    def names() -> tuple:
        return ("p0", "p1", "p2", "p3", "q0", "q1", "q2", "q3")

    def as_tuple(self) -> tuple:
        return tuple(getattr(self, n) for n in self.names())


Number = Union[int, float, complex]


@dataclass(frozen=True)
class PureState3Q:
    """Eight amplitudes of a (not necessarily normalized) three-qubit state.

    Amplitudes are kept as Python numbers so integer states stay exact.
    """

    amplitudes: tuple

    def __post_init__(self):
        amps = tuple(self.amplitudes)
        if len(amps) != 8:
            raise ValueError(f"a three-qubit state needs 8 amplitudes, got {len(amps)}")
        amps = tuple(_py_number(a) for a in amps)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_array(cls, array) -> "PureState3Q":
        return cls(tuple(np.asarray(array).reshape(8).tolist()))

    @classmethod
    def basis(cls, label: int) -> "PureState3Q":
        amps = [0] * 8
        amps[label] = 1
        return cls(tuple(amps))

    def __getitem__(self, label: int) -> Number:
        return self.amplitudes[label]

    def __len__(self) -> int:
        return 8

    def as_array(self) -> np.ndarray:
        return np.array(self.amplitudes, dtype=complex)

    def is_exact(self) -> bool:
        return all(isinstance(a, int) for a in self.amplitudes)


def _py_number(a):
    if isinstance(a, (bool, np.bool_)):
        raise TypeError("amplitudes must be numbers")
    if isinstance(a, np.integer):
        return int(a)
    if isinstance(a, np.floating):
        return float(a)
    if isinstance(a, np.complexfloating):
        return complex(a)
    if isinstance(a, (int, float, complex)):
        return a
    raise TypeError(f"unsupported amplitude type {type(a).__name__}")


@dataclass(frozen=True, eq=False)
class LocalUnitary:
    """A 2x2 unitary acting on one named qubit (``"A"``, ``"B"`` or ``"C"``)."""

    matrix: np.ndarray
    qubit: str

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.shape != (2, 2):
            raise ValueError(f"local unitary must be 2x2, got shape {m.shape}")
        if self.qubit not in QUBITS:
            raise ValueError(f"qubit must be one of {QUBITS}, got {self.qubit!r}")
        err = unitarity_error(m)
        if not err <= UNITARY_TOL:
            raise NotUnitaryError(f"matrix on qubit {self.qubit} is not unitary (max |U^dag U - I| = {err:.3g})")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def identity(cls, qubit: str) -> "LocalUnitary":
        return cls(np.eye(2), qubit)

    def __eq__(self, other):
        if not isinstance(other, LocalUnitary):
            return NotImplemented
        return self.qubit == other.qubit and np.array_equal(self.matrix, other.matrix)

    def __hash__(self):
        return hash((self.qubit, self.matrix.tobytes()))


def hadamard(qubit: str) -> LocalUnitary:
    return LocalUnitary(np.array([[1, 1], [1, -1]]) / math.sqrt(2), qubit)


def unitarity_error(matrix) -> float:
    """Largest entry of ``|U^dag U - I|``."""
    m = np.asarray(matrix, dtype=complex)
    return float(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0]))))


def state_norm(s: PureState3Q) -> float:
    """Euclidean norm of the amplitude vector."""
    if all(isinstance(a, int) for a in s.amplitudes):
        return math.sqrt(sum(a * a for a in s.amplitudes))
    return math.sqrt(sum(abs(a) ** 2 for a in s.amplitudes))


def normalize(s: PureState3Q) -> PureState3Q:
    n = state_norm(s)
    if n == 0:
        raise ValueError("cannot normalize the zero state")
    return PureState3Q(tuple(a / n for a in s.amplitudes))


def _as_unitary(u, qubit: str) -> LocalUnitary:
    if isinstance(u, LocalUnitary):
        if u.qubit != qubit:
            raise ValueError(f"expected an operator on qubit {qubit}, got one tagged {u.qubit}")
        return u
    return LocalUnitary(np.asarray(u), qubit)


def apply_local_unitaries(s: PureState3Q, uA, uB, uC) -> PureState3Q:
    """Return ``(uA x uB x uC) |s>``.

    Raw 2x2 arrays are accepted and go through the same unitarity check as
    :class:`LocalUnitary`; a failing operator raises :class:`NotUnitaryError`.
    """
    ua = _as_unitary(uA, "A").matrix
    ub = _as_unitary(uB, "B").matrix
    uc = _as_unitary(uC, "C").matrix
    psi = s.as_array().reshape(2, 2, 2)
    out = np.einsum("ai,bj,ck,ijk->abc", ua, ub, uc, psi)
    return PureState3Q.from_array(out)
