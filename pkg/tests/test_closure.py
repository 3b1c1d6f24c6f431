"""Closure relation residuals and spectral-calculus ladder operators."""

import pytest

from dualracah.backend import rat
from dualracah.closure import (
    build_ladder,
    spectral_fn,
    verify_closure,
    verify_ladder,
)
from dualracah.errors import SingularR0
from dualracah.linalg import SquareMatrix
from dualracah.params import QR, R

FAMILIES = (R, QR)
CASES = [((1,), "1"), ((2,), "1"), ((1, 2), "1"), ((1,), "eta")]


@pytest.mark.parametrize("family", FAMILIES)
@pytest.mark.parametrize("D,y", CASES)
@pytest.mark.parametrize("N", [4, 5, 6])
def test_closure_residual_is_zero(family, D, y, N, pipe):
    h = pipe.hamiltonian(family, N, D, y)
    trip = pipe.closure_triple(family, N, D, y)
    assert verify_closure(h, trip).is_zero()


@pytest.mark.parametrize("family", FAMILIES)
def test_undeformed_control_degrees(family, pipe):
    """Without deformation the closure polynomials have the classical
    degree pattern (2, 1, 2) and the residual still vanishes."""
    h = pipe.hamiltonian(family, 5, ())
    trip = pipe.closure_triple(family, 5, ())
    assert verify_closure(h, trip).is_zero()
    assert (trip.R0.degree or 0) <= 2
    assert (trip.R1.degree or 0) <= 1
    assert (trip.Rm1.degree or 0) <= 2


@pytest.mark.parametrize("family", FAMILIES)
def test_node_identities_fail_off_grid_when_deformed(family, pipe):
    """For a genuine deformation the interpolated closure polynomials do
    not extend to the node just past the grid."""
    from dualracah.params import eta, shift
    s = pipe.system(family, 5, (1,))
    xp = pipe.xpoly(family, 5, (1,), "1")
    trip = pipe.closure_triple(family, 5, (1,))
    p_m = shift(s.params, s.M, "delta")
    j = s.params.N + 1  # one step off the spectrum
    X = {i: xp.poly(eta(i, p_m)) for i in (j - 1, j, j + 1)}
    beta0 = (X[j + 1] - X[j]) * (X[j] - X[j - 1])
    assert trip.R0(X[j]) != beta0


@pytest.mark.parametrize("family", FAMILIES)
def test_discriminant_is_a_square_on_nodes(family, pipe):
    h = pipe.hamiltonian(family, 6, (1, 2))
    trip = pipe.closure_triple(family, 6, (1, 2))
    X = h.x_grid
    for j in range(7):
        z = X[j]
        assert trip.R1(z) ** 2 + 4 * trip.R0(z) == (X[j + 1] - X[j - 1]) ** 2


@pytest.mark.parametrize("family", FAMILIES)
def test_r0_vanishes_iff_degenerate_seed(family, pipe):
    assert not pipe.closure_triple(family, 5, (1,), "1").r0_vanishes_at_zero
    assert pipe.closure_triple(family, 5, (1,), "eta").r0_vanishes_at_zero


def test_spectral_fn_reproduces_polynomials(pipe):
    h = pipe.hamiltonian(R, 5, (1,))
    # the function n -> X(n)^2 of the Hamiltonian is the matrix square
    sq = spectral_fn(h, [v * v for v in h.energies])
    assert (sq - h.h_tilde @ h.h_tilde).is_zero()
    ident = spectral_fn(h, [rat(1)] * 6)
    assert (ident - SquareMatrix.identity(6)).is_zero()


@pytest.mark.parametrize("family", FAMILIES)
@pytest.mark.parametrize("D", [(1,), (2,), (1, 2)])
def test_ladder_actions_exact(family, D, pipe):
    h = pipe.hamiltonian(family, 6, D)
    trip = pipe.closure_triple(family, 6, D)
    lp = build_ladder(h, trip)
    assert verify_ladder(h, lp) == []


@pytest.mark.parametrize("family", FAMILIES)
def test_ladder_degenerate_seed_raises(family, pipe):
    h = pipe.hamiltonian(family, 6, (1,), "eta")
    trip = pipe.closure_triple(family, 6, (1,), "eta")
    with pytest.raises(SingularR0):
        build_ladder(h, trip)


@pytest.mark.parametrize("family", FAMILIES)
def test_ladder_boundary_annihilation(family, pipe):
    h = pipe.hamiltonian(family, 5, (1,))
    lp = build_ladder(h, pipe.closure_triple(family, 5, (1,)))
    top = lp.a_plus.matvec(h.V.column(5))
    bottom = lp.a_minus.matvec(h.V.column(0))
    assert all(v == 0 for v in top)
    assert all(v == 0 for v in bottom)


@pytest.mark.parametrize("family", FAMILIES)
def test_middle_coefficient_from_closure(family, pipe):
    """-Rm1/R0 on the spectrum equals the middle dual recurrence
    coefficient; this ties the closure data to the dual table."""
    h = pipe.hamiltonian(family, 6, (2,))
    trip = pipe.closure_triple(family, 6, (2,))
    for n in range(7):
        z = h.x_grid[n]
        assert -trip.Rm1(z) / trip.R0(z) == h.dual.b_dual[n]
