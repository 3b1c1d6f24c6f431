"""Parameter sets for the Racah (R) and q-Racah (qR) families.

For R the four parameters (a,b,c,d) are used additively; for qR the stored
values are the q-powers themselves, so shifts become multiplications by
powers of q.  All parameters are concrete rationals (q included), which
keeps the whole grid theory inside exact arithmetic.  The same formulas
also accept high-precision floats for the q->1 limit checks, where no
exactness assertions are made.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional, Sequence, Tuple

from .backend import is_rational, rat
from .errors import BadN, BadQ, IndexOutOfRange

R = "R"
QR = "qR"


def ipow(base, k: int):
    """base**k for integer k of either sign (exact for rationals)."""
    if k >= 0:
        return base ** k
    return 1 / (base ** (-k))


@dataclass(frozen=True)
class ParamSet:
    family: str
    N: int
    a: object
    b: object
    c: object
    d: object
    q: Optional[object] = None

    @property
    def dtilde(self):
        """The dual fourth parameter, always recomputed."""
        if self.family == R:
            return self.a + self.b + self.c - self.d - 1
        return self.a * self.b * self.c / (self.d * self.q)

    def is_exact(self) -> bool:
        return is_rational(self.b)

    def with_d(self, new_d) -> "ParamSet":
        return replace(self, d=new_d)

    def dual(self) -> "ParamSet":
        """Swap d with dtilde (an involution)."""
        return replace(self, d=self.dtilde)


def make_params(family: str, N: int, b, c, d, q=None) -> ParamSet:
    if N < 1:
        raise BadN(f"N must be >= 1, got {N}")
    if family == R:
        return ParamSet(R, N, rat(-N), rat(b), rat(c), rat(d))
    if family == QR:
        q = rat(q)
        if not (0 < q < 1):
            raise BadQ(f"q must lie in (0,1), got {q}")
        return ParamSet(QR, N, ipow(q, -N), rat(b), rat(c), rat(d), q)
    raise ValueError(f"unknown family {family!r}")


def ell(D: Sequence[int]) -> int:
    m = len(D)
    return sum(D) - m * (m - 1) // 2


def index_set(values: Sequence[int]) -> Tuple[int, ...]:
    """Validated multi-index set: strictly increasing positive integers."""
    D = tuple(int(v) for v in values)
    for i, v in enumerate(D):
        if v < 1 or (i > 0 and v <= D[i - 1]):
            raise IndexOutOfRange(f"index set must be strictly increasing positive: {D}")
    assert ell(D) >= len(D)
    return D


def validate(p: ParamSet, D: Sequence[int]) -> list:
    """Admissibility violations (empty list = admissible).

    The inequalities are applied literally, with max(D)=0 for empty D.
    """
    dmax = max(D) if D else 0
    out = []
    if p.family == R:
        if not (0 < p.d < p.a + p.b):
            out.append("0<d<a+b")
        if not (0 < p.c < 1 + p.d):
            out.append("0<c<1+d")
        if not (p.d + dmax + 1 < p.a + p.b):
            out.append("d+max(D)+1<a+b")
    else:
        ab = p.a * p.b
        if not (0 < ab < p.d < 1):
            out.append("0<ab<d<1")
        if not (p.q * p.d < p.c < 1):
            out.append("qd<c<1")
        if not (ab < p.d * ipow(p.q, dmax + 1)):
            out.append("ab<d*q^(max(D)+1)")
    return out


def shift(p: ParamSet, k: int, kind: str = "delta") -> ParamSet:
    """Shift by k*delta (all four slots) or k*delta-tilde (c,d slots only)."""
    if kind not in ("delta", "tilde"):
        raise ValueError(f"unknown shift kind {kind!r}")
    if p.family == R:
        if kind == "delta":
            return replace(p, a=p.a + k, b=p.b + k, c=p.c + k, d=p.d + k)
        return replace(p, c=p.c + k, d=p.d + k)
    f = ipow(p.q, k)
    if kind == "delta":
        return replace(p, a=p.a * f, b=p.b * f, c=p.c * f, d=p.d * f)
    return replace(p, c=p.c * f, d=p.d * f)


def eta(x: int, p: ParamSet):
    """Sinusoidal coordinate; x may be negative (off-grid antiderivative value)."""
    if p.family == R:
        return x * (x + p.d)
    return (ipow(p.q, -x) - 1) * (1 - p.d * ipow(p.q, x))


def energy(n: int, p: ParamSet):
    dt = p.dtilde
    if p.family == R:
        return n * (n + dt)
    return (ipow(p.q, -n) - 1) * (1 - dt * ipow(p.q, n))


def twist(p: ParamSet) -> ParamSet:
    """The parameter involution generating virtual-state data."""
    if p.family == R:
        t = replace(p, a=p.d - p.a + 1, b=p.d - p.b + 1)
    else:
        t = replace(p, a=p.d * p.q / p.a, b=p.d * p.q / p.b)
    if p.is_exact():
        for x in range(p.N + 1):
            assert eta(x, t) == eta(x, p)
    return t
