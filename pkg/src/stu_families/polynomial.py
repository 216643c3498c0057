"""Sparse multivariate polynomials with integer coefficients."""
from __future__ import annotations

from typing import Mapping


class IntPolynomial:
    """Immutable polynomial over a fixed tuple of named variables.

    Terms are stored as ``{exponent tuple: coefficient}`` with zero
    coefficients dropped, so two polynomials over the same variables are equal
    iff their term maps are equal.

    >>> x, y = IntPolynomial.variables_of(("x", "y"))
    >>> (x + y) * (x - y) == x ** 2 - y ** 2
    True
    """

    __slots__ = ("_vars", "_terms")

    def __init__(self, variables, terms: Mapping = None):
        self._vars = tuple(variables)
        clean = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(self._vars) or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps} for variables {self._vars}")
            if coeff:
                clean[exps] = clean.get(exps, 0) + int(coeff)
        self._terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def constant(cls, variables, value: int) -> "IntPolynomial":
        return cls(variables, {(0,) * len(tuple(variables)): value})

    @classmethod
    def variable(cls, variables, name: str) -> "IntPolynomial":
        variables = tuple(variables)
        exps = tuple(1 if v == name else 0 for v in variables)
        if sum(exps) != 1:
            raise KeyError(name)
        return cls(variables, {exps: 1})

    @classmethod
    def variables_of(cls, variables) -> tuple:
        return tuple(cls.variable(variables, v) for v in variables)

    @property
    def variables(self) -> tuple:
        return self._vars

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self, degree: int = None) -> bool:
        degrees = {sum(e) for e in self._terms}
        if degree is not None:
            return degrees <= {degree}
        return len(degrees) <= 1

    def _coerce(self, other) -> "IntPolynomial":
        if isinstance(other, IntPolynomial):
            if other._vars != self._vars:
                raise ValueError(f"variable mismatch: {self._vars} vs {other._vars}")
            return other
        if isinstance(other, int):
            return IntPolynomial.constant(self._vars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for k, v in other._terms.items():
            terms[k] = terms.get(k, 0) + v
        return IntPolynomial(self._vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(self._vars, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return IntPolynomial(self._vars, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = IntPolynomial.constant(self._vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPolynomial.constant(self._vars, other)
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self._vars == other._vars and self._terms == other._terms

    def __hash__(self):
        return hash((self._vars, frozenset(self._terms.items())))

    def evaluate(self, values: Mapping) -> int:
        """Value at an integer point given as ``{name: value}``."""
        point = [values[v] for v in self._vars]
        total = 0
        for exps, coeff in self._terms.items():
            term = coeff
            for x, e in zip(point, exps):
                if e:
                    term *= x ** e
            total += term
        return total

    def substitute(self, mapping: Mapping) -> "IntPolynomial":
        """Replace every variable by a polynomial; all images must share one
        variable tuple, which becomes the result's."""
        images = [mapping[v] for v in self._vars]
        target = images[0].variables
        result = IntPolynomial(target)
        for exps, coeff in self._terms.items():
            term = IntPolynomial.constant(target, coeff)
            for img, e in zip(images, exps):
                if e:
                    term = term * img ** e
            result = result + term
        return result

    def __repr__(self):
        return f"IntPolynomial({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for exps in sorted(self._terms, reverse=True):
            coeff = self._terms[exps]
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self._vars, exps) if e
            )
            if not mono:
                body = str(abs(coeff))
            elif abs(coeff) == 1:
                body = mono
            else:
                body = f"{abs(coeff)}*{mono}"
            sign = "-" if coeff < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out
