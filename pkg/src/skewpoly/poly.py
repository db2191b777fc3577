"""Polynomials in the spectral variable z with exact (or jet-valued) coefficients."""

from __future__ import annotations

from fractions import Fraction

from .scalars import exact_div, format_scalar


class PolyInZ:
    """Dense polynomial; coefficient ring is whatever the entries support."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = list(coeffs)
        while coeffs and _is_zero(coeffs[-1]):
            coeffs.pop()
        self.coeffs = coeffs

    @staticmethod
    def zero() -> "PolyInZ":
        return PolyInZ([])

    @staticmethod
    def monomial(coeff, power: int) -> "PolyInZ":
        return PolyInZ([0] * power + [coeff])

    @staticmethod
    def from_dict(d: dict) -> "PolyInZ":
        if not d:
            return PolyInZ([])
        deg = max(d)
        return PolyInZ([d.get(i, 0) for i in range(deg + 1)])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def leading(self):
        if not self.coeffs:
            return 0
        return self.coeffs[-1]

    def __add__(self, other):
        if not isinstance(other, PolyInZ):
            other = PolyInZ([other])
        n = max(len(self.coeffs), len(other.coeffs))
        return PolyInZ([self.coeff(i) + other.coeff(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return PolyInZ([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, PolyInZ):
            other = PolyInZ([other])
        n = max(len(self.coeffs), len(other.coeffs))
        return PolyInZ([self.coeff(i) - other.coeff(i) for i in range(n)])

    def __rsub__(self, other):
        return PolyInZ([other]) - self

    def __mul__(self, other):
        if isinstance(other, PolyInZ):
            if self.is_zero() or other.is_zero():
                return PolyInZ([])
            out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
            return PolyInZ(out)
        return PolyInZ([c * other for c in self.coeffs])

    def __rmul__(self, other):
        return PolyInZ([other * c for c in self.coeffs])

    def __truediv__(self, scalar):
        return PolyInZ([exact_div(c, scalar) for c in self.coeffs])

    def __eq__(self, other):
        if not isinstance(other, PolyInZ):
            other = PolyInZ([other])
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def shift(self, k: int) -> "PolyInZ":
        """Multiply by z**k."""
        if self.is_zero():
            return self
        return PolyInZ([0] * k + self.coeffs)

    def divide_z(self, m: int) -> "PolyInZ":
        """Exact division by z**m; the low coefficients must vanish."""
        if self.is_zero():
            return self
        for c in self.coeffs[:m]:
            if not _is_zero(c):
                raise ValueError("polynomial not divisible by z^m")
        return PolyInZ(self.coeffs[m:])

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def map_coeffs(self, fn) -> "PolyInZ":
        return PolyInZ([fn(c) for c in self.coeffs])

    def __repr__(self):
        if self.is_zero():
            return "PolyInZ(0)"
        return "PolyInZ([" + ", ".join(str(c) for c in self.coeffs) + "])"

    def to_json_dict(self) -> dict:
        return {
            "degree": self.degree,
            "coeffs": [format_scalar(Fraction(c) if isinstance(c, int) else c)
                       for c in self.coeffs],
        }


def _is_zero(v) -> bool:
    if hasattr(v, "is_zero"):
        return v.is_zero()
    return not v
