"""Closure relation and spectral-calculus ladder operators.

The three closure polynomials are degree-N interpolants through node data
built from the X grid; the double-commutator identity is then checked as an
exact matrix equation.  Ladder operators are assembled entirely through
exact spectral calculus (the square roots hidden in the half-difference
functions are rational on the spectrum).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .backend import rat
from .dualsystem import DualHamiltonian
from .errors import CrossCheckMismatch, SingularR0
from .linalg import (
    SquareMatrix,
    commutator,
    exact_det,
    exact_inverse,
    exact_solve,
    matrix_poly,
)
from .poly import Poly


@dataclass
class ClosureTriple:
    R0: Poly
    R1: Poly
    Rm1: Poly
    r0_vanishes_at_zero: bool


def _vandermonde(nodes: Sequence) -> SquareMatrix:
    return SquareMatrix([[z ** i for i in range(len(nodes))] for z in nodes])


def solve_closure(h: DualHamiltonian) -> ClosureTriple:
    N = h.h_tilde.n - 1
    X = h.x_grid
    nodes = [X[j] for j in range(N + 1)]
    b_dual = h.dual.b_dual

    beta0 = [(X[j + 1] - X[j]) * (X[j] - X[j - 1]) for j in range(N + 1)]
    beta1 = [X[j + 1] - 2 * X[j] + X[j - 1] for j in range(N + 1)]
    betam1 = [-b0 * b_dual[j] for j, b0 in enumerate(beta0)]

    vm = _vandermonde(nodes)
    tripel = []
    for beta in (beta0, beta1, betam1):
        coeffs = exact_solve(vm, beta)
        tripel.append(Poly(coeffs))
    r0, r1, rm1 = tripel

    # Cramer cross-check on the leading coefficient of R0
    top = SquareMatrix(
        [[nodes[j] ** i for i in range(N)] + [beta0[j]] for j in range(N + 1)]
    )
    if r0[N] != exact_det(top) / exact_det(vm):
        raise CrossCheckMismatch("Cramer determinant ratio disagrees with solve")

    for j in range(N + 1):
        z = nodes[j]
        assert r0(z) == beta0[j] and r1(z) == beta1[j] and rm1(z) == betam1[j]
        assert r1(z) ** 2 + 4 * r0(z) == (X[j + 1] - X[j - 1]) ** 2

    return ClosureTriple(R0=r0, R1=r1, Rm1=rm1, r0_vanishes_at_zero=(r0(rat(0)) == 0))


def verify_closure(h: DualHamiltonian, c: ClosureTriple) -> SquareMatrix:
    """Exact residual of the double-commutator identity (zero matrix = pass)."""
    ht = h.h_tilde
    ebar = SquareMatrix.diagonal(list(h.ebar))
    inner = commutator(ht, ebar)
    lhs = commutator(ht, inner)
    rhs = (
        ebar @ matrix_poly(c.R0.coeffs, ht)
        + inner @ matrix_poly(c.R1.coeffs, ht)
        + matrix_poly(c.Rm1.coeffs, ht)
    )
    return lhs - rhs


def spectral_fn(h: DualHamiltonian, node_values: Sequence) -> SquareMatrix:
    """V diag(node_values) V^(-1): the function of h_tilde taking the given
    value on each eigenvalue."""
    if not hasattr(h, "_vinv"):
        h._vinv = exact_inverse(h.V)
    return h.V @ SquareMatrix.diagonal(list(node_values)) @ h._vinv


@dataclass
class LadderPair:
    a_plus: SquareMatrix
    a_minus: SquareMatrix


def build_ladder(h: DualHamiltonian, c: ClosureTriple) -> LadderPair:
    N = h.h_tilde.n - 1
    X = h.x_grid
    r0_vals = [c.R0(X[n]) for n in range(N + 1)]
    if any(v == 0 for v in r0_vals):
        raise SingularR0("R0 vanishes on the spectrum (degenerate seed with Y(0)=0)")

    # -Rm1/R0 on the spectrum must reproduce the middle dual coefficient
    for n in range(N + 1):
        if -c.Rm1(X[n]) / r0_vals[n] != h.dual.b_dual[n]:
            raise CrossCheckMismatch(f"-Rm1/R0 differs from dual coefficient at n={n}")

    alpha_p = spectral_fn(h, [X[n + 1] - X[n] for n in range(N + 1)])
    alpha_m = spectral_fn(h, [X[n - 1] - X[n] for n in range(N + 1)])
    gap_inv = spectral_fn(h, [1 / (X[n + 1] - X[n - 1]) for n in range(N + 1)])
    corr = spectral_fn(h, [c.Rm1(X[n]) / r0_vals[n] for n in range(N + 1)])

    ebar = SquareMatrix.diagonal(list(h.ebar))
    inner = commutator(h.h_tilde, ebar)
    shifted = ebar + corr
    a_plus = (inner - shifted @ alpha_m) @ gap_inv
    a_minus = ((inner - shifted @ alpha_p) @ gap_inv).scale(-1)
    return LadderPair(a_plus=a_plus, a_minus=a_minus)


def verify_ladder(h: DualHamiltonian, lp: LadderPair) -> list:
    """Exact residuals of both ladder actions on every eigenvector column."""
    N = h.h_tilde.n - 1
    failures = []
    for n in range(N + 1):
        col = h.V.column(n)
        up = lp.a_plus.matvec(col)
        expect_up = (
            [h.dual.a_dual[n] * v for v in h.V.column(n + 1)] if n < N else [0] * (N + 1)
        )
        if up != [rat(0) + v for v in expect_up]:
            failures.append(("plus", n))
        down = lp.a_minus.matvec(col)
        expect_dn = (
            [h.dual.c_dual[n] * v for v in h.V.column(n - 1)] if n > 0 else [0] * (N + 1)
        )
        if down != [rat(0) + v for v in expect_dn]:
            failures.append(("minus", n))
    return failures
