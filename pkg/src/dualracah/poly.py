"""Dense univariate polynomials over exact rationals.

The indeterminate is the sinusoidal variable throughout the library, but
nothing here depends on that interpretation.  The zero polynomial has
``degree is None`` (an explicit sentinel, never -1).
"""

from __future__ import annotations

from typing import Sequence

from .backend import rat
from .errors import DegreeMismatch, SingularMatrix


class Poly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        cs = [rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls) -> "Poly":
        return cls(())

    @classmethod
    def one(cls) -> "Poly":
        return cls((1,))

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls((c,))

    @property
    def degree(self):
        """Degree, or None for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __getitem__(self, k: int):
        """Coefficient of x^k (zero beyond the degree)."""
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else rat(0)

    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self[k] + other[k] for k in range(n)])

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        if self.is_zero() or other.is_zero():
            return Poly.zero()
        out = [rat(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    def scale(self, c) -> "Poly":
        return Poly([c * a for a in self.coeffs])

    def __call__(self, point):
        """Horner evaluation; exact for rational arguments."""
        acc = rat(0)
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    def compose_affine(self, alpha, beta) -> "Poly":
        """p(alpha*x + beta), exact."""
        acc = Poly.zero()
        lin = Poly((beta, alpha))
        for c in reversed(self.coeffs):
            acc = acc * lin + Poly.constant(c)
        return acc

    def __repr__(self) -> str:
        if self.is_zero():
            return "Poly(0)"
        terms = [f"{c}*x^{k}" for k, c in enumerate(self.coeffs) if c != 0]
        return "Poly(" + " + ".join(terms) + ")"


def interpolate(nodes: Sequence, values: Sequence, max_degree: int = None) -> Poly:
    """Exact polynomial interpolation through distinct nodes.

    Uses Newton divided differences.  If ``max_degree`` is given, the result
    must not exceed it (DegreeMismatch otherwise); this certifies degree
    bounds on determinant-built grid data.
    """
    n = len(nodes)
    if n != len(values):
        raise ValueError("nodes/values length mismatch")
    if len(set(nodes)) != n:
        raise SingularMatrix("coincident interpolation nodes")
    nodes = [rat(v) for v in nodes]
    coeffs = [rat(v) for v in values]  # divided differences, in place
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coeffs[i] = (coeffs[i] - coeffs[i - 1]) / (nodes[i] - nodes[i - j])
    # Newton -> monomial basis.
    p = Poly.zero()
    for i in range(n - 1, -1, -1):
        p = p * Poly((-nodes[i], 1)) + Poly.constant(coeffs[i])
    if max_degree is not None and p.degree is not None and p.degree > max_degree:
        raise DegreeMismatch(
            f"interpolant has degree {p.degree}, expected <= {max_degree}"
        )
    return p
