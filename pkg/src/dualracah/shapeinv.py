"""Semidefinite factorization and the shape-invariance test.

The band Hamiltonian is positive semi-definite with a zero ground level, so
its upper-triangular factor has a zero last row.  Shape invariance would
force the spectrum at shrunk size N-1 to be an affine rescaling of the tail
of the original spectrum; that necessary condition is checked exactly, and
the full matrix condition is reported as a high-precision float residual.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import List, Optional, Tuple

import mpmath

from .bigreal import to_real
from .dualsystem import build_hamiltonians, dual_values
from .errors import InadmissibleCandidate, NegativePivot
from .linalg import SquareMatrix
from .multiindexed import MISystem, build_mi_system
from .params import R, ParamSet, validate
from .poly import Poly
from .recurrence import XPoly, build_X, extract_r


@dataclass
class UpperFactor:
    A: SquareMatrix      # real upper triangular, last row zero
    precision: int


def factor_upper(h_sym: SquareMatrix) -> UpperFactor:
    """Upper-triangular factor with nonnegative diagonal, A^T A = h_sym.

    Zero pivots (within tolerance) yield zero rows, as required for a
    positive semi-definite matrix with nontrivial kernel.
    """
    n = h_sym.n
    prec = h_sym.prec or 256
    with mpmath.workprec(prec):
        scale = max((abs(v) for row in h_sym.rows for v in row), default=mpmath.mpf(1))
        tol = mpmath.mpf(2) ** (-(prec // 2)) * (scale if scale > 0 else 1)
        a = [[mpmath.mpf(0)] * n for _ in range(n)]
        for x in range(n):
            pivot = h_sym.rows[x][x] - sum(a[z][x] ** 2 for z in range(x))
            if pivot < -tol:
                raise NegativePivot(f"pivot {pivot} at row {x}")
            if pivot <= tol:
                continue  # zero row
            a[x][x] = mpmath.sqrt(pivot)
            for y in range(x + 1, n):
                hxy = h_sym.rows[x][y] - sum(a[z][x] * a[z][y] for z in range(x))
                a[x][y] = hxy / a[x][x]
        # reconstruction check
        err = max(
            abs(sum(a[z][x] * a[z][y] for z in range(n)) - h_sym.rows[x][y])
            for x in range(n)
            for y in range(n)
        )
        assert err <= tol * 4 * n
    return UpperFactor(A=SquareMatrix(a, kind="real", prec=prec), precision=prec)


def builtin_candidates(p: ParamSet) -> List[Tuple[str, ParamSet]]:
    """The natural parameter transforms tested for shape invariance,
    each stated at the shrunk size N-1."""
    N = p.N
    if p.family == R:
        return [
            ("delta", replace(p, N=N - 1, a=p.a + 1, b=p.b + 1, c=p.c + 1, d=p.d + 1)),
            ("delta_tilde", replace(p, N=N - 1, c=p.c + 1, d=p.d + 1)),
            ("delta_dplus", replace(p, N=N - 1, a=p.a + 1, b=p.b + 1, c=p.c + 1, d=p.d + 2)),
        ]
    q = p.q
    return [
        ("delta", replace(p, N=N - 1, a=p.a * q, b=p.b * q, c=p.c * q, d=p.d * q)),
        ("delta_tilde", replace(p, N=N - 1, c=p.c * q, d=p.d * q)),
        ("delta_dplus", replace(p, N=N - 1, a=p.a * q, b=p.b * q, c=p.c * q, d=p.d * q * q)),
    ]


def check_candidate(p2: ParamSet, D) -> None:
    """Admissibility of a shrunk-size candidate (InadmissibleCandidate if not)."""
    N2 = p2.N
    if p2.family == R:
        if p2.a != -N2:
            raise InadmissibleCandidate(f"candidate a-slot {p2.a} != -{N2}")
    else:
        if p2.a * p2.q ** N2 != 1:
            raise InadmissibleCandidate(f"candidate a-slot is not the size-{N2} power")
    bad = validate(p2, D)
    if bad:
        raise InadmissibleCandidate(f"candidate violates ranges: {bad}")


@dataclass
class CandidateVerdict:
    name: str
    admissible: bool
    kappa: Optional[object]
    spectral_pass: bool
    first_fail_x: Optional[int]
    mismatch: Optional[object]
    matrix_residual: Optional[object]


@dataclass
class SIReport:
    verdicts: List[CandidateVerdict]
    precision: int

    @property
    def shape_invariant(self) -> bool:
        return any(v.admissible and v.spectral_pass for v in self.verdicts)


def _pipeline(p: ParamSet, D, Y: Poly):
    s = build_mi_system(p, D)
    xp = build_X(s, Y, for_hamiltonian=True)
    t = extract_r(s, xp)
    dt = dual_values(s)
    return s, xp, build_hamiltonians(s, xp, t, dt)


def si_test(
    s: MISystem,
    xp: XPoly,
    extra_candidates: Optional[List[Tuple[str, ParamSet]]] = None,
    precision: int = 256,
    with_matrix_residual: bool = True,
) -> SIReport:
    p, D, Y, N = s.params, s.D, xp.Y, s.params.N
    verdicts = []
    h_self = None
    for name, p2 in builtin_candidates(p) + list(extra_candidates or []):
        try:
            check_candidate(p2, D)
        except InadmissibleCandidate:
            verdicts.append(
                CandidateVerdict(name, False, None, False, None, None, None)
            )
            continue
        s2 = build_mi_system(p2, D)
        xp2 = build_X(s2, Y, for_hamiltonian=True)
        kappa = (xp.grid[2] - xp.grid[1]) / xp2.grid[1]
        spectral_pass, first_fail, mismatch = True, None, None
        for x in range(N):
            want = xp.grid[x + 1] - xp.grid[1]
            got = kappa * xp2.grid[x]
            if got != want:
                spectral_pass, first_fail, mismatch = False, x, got - want
                break
        residual = None
        if with_matrix_residual:
            if h_self is None:
                t = extract_r(s, xp)
                dt = dual_values(s)
                h_self = build_hamiltonians(s, xp, t, dt, precision=precision)
            _, _, h2 = _pipeline(p2, D, Y)
            A = factor_upper(h_self.h_sym).A
            A2 = factor_upper(h2.h_sym).A
            with mpmath.workprec(precision):
                k = to_real(kappa, precision)
                e1 = to_real(xp.grid[1], precision)
                residual = mpmath.mpf(0)
                for x in range(N):
                    for y in range(N):
                        aad = sum(A.rows[x][z] * A.rows[y][z] for z in range(N + 1))
                        ata = sum(A2.rows[z][x] * A2.rows[z][y] for z in range(N))
                        target = aad - k * ata - (e1 if x == y else 0)
                        residual = max(residual, abs(target))
        verdicts.append(
            CandidateVerdict(name, True, kappa, spectral_pass, first_fail, mismatch, residual)
        )
    return SIReport(verdicts=verdicts, precision=precision)
