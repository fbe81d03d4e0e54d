"""Decomposition functionals: closed forms, identities, and the scan."""

import math

import numpy as np
import pytest

import dequant as dq
from dequant.functionals import (
    OSMOTIC_FLOOR_REL,
    classical_integrand,
    quantum_kinetic_integrand,
    weizsacker_integrand,
)
from dequant.quadgrid import RealField, integrate


@pytest.fixture(scope="module")
def line():
    return dq.make_uniform_grid(-12.0, 12.0, 2001)


@pytest.fixture(scope="module")
def gauss0(line):
    return dq.gaussian_evolve(dq.GaussianPacket(), 0.0, line)


@pytest.fixture(scope="module")
def gauss15(line):
    return dq.gaussian_evolve(dq.GaussianPacket(), 1.5, line)


def test_scalar_closed_forms_static(gauss0):
    assert dq.quantum_kinetic(gauss0) == pytest.approx(0.25, rel=1e-10)
    assert dq.classical_kinetic(gauss0) == 0.0
    assert dq.weizsacker(gauss0) == pytest.approx(0.25, rel=1e-10)


def test_scalar_closed_forms_spreading(gauss15):
    assert dq.quantum_kinetic(gauss15) == pytest.approx(0.25, rel=1e-10)
    assert dq.classical_kinetic(gauss15) == pytest.approx(9.0 / 52.0, rel=1e-10)
    assert dq.weizsacker(gauss15) == pytest.approx(1.0 / 13.0, rel=1e-10)


def test_fisher_gaussian_equals_two(gauss0):
    # p = exp(-x^2)/sqrt(pi) gives integral((2x)^2 p) = 2
    assert dq.fisher_information(gauss0) == pytest.approx(2.0, rel=1e-10)


def test_fisher_ground_state_equals_four(report_of):
    assert report_of(1, 0, 0).fisher == pytest.approx(4.0, rel=1e-10)


def test_fisher_322(report_of):
    assert report_of(3, 2, 2).fisher == pytest.approx(8.0 / 54.0, rel=1e-8)


def test_fisher_cross_check_flag_changes_nothing(gauss15):
    assert dq.fisher_information(gauss15, cross_check=False) == dq.fisher_information(
        gauss15
    )


def test_shannon_frozen_values(gauss0, pib_grid, report_of):
    # differential entropy of exp(-x^2)/sqrt(pi) is (1 + ln pi)/2
    assert dq.shannon_entropy(gauss0) == pytest.approx(1.0723649429247001, abs=1e-10)
    # single-mode box density 2 sin^2(pi x): entropy ln 2 - 1
    w = dq.Wavefunction.from_values(
        dq.PibSuperposition((1.0,)).values(pib_grid.points, 0.0), pib_grid
    )
    assert dq.shannon_entropy(w) == pytest.approx(math.log(2.0) - 1.0, abs=1e-9)
    # ground state: ln pi + 3, short of the density floor's tail cut
    assert report_of(1, 0, 0).shannon == pytest.approx(math.log(math.pi) + 3.0, abs=1e-7)


def test_osmotic_gaussian_is_linear(gauss0, line):
    u = dq.osmotic_term(gauss0)
    assert len(u.components) == 1
    x = line.points
    p = np.abs(gauss0.values) ** 2
    live = p >= OSMOTIC_FLOOR_REL * p.max()
    np.testing.assert_allclose(u.components[0].values[live], x[live], rtol=1e-6, atol=1e-9)
    assert np.all(u.components[0].values[~live] == 0.0)


def test_osmotic_field_algebra(gauss0):
    u = dq.osmotic_term(gauss0)
    doubled = u.scaled(2.0)
    summed = u.plus(u)
    np.testing.assert_allclose(doubled.components[0].values, summed.components[0].values)
    with pytest.raises(ValueError):
        dq.OsmoticField(())
    with pytest.raises(ValueError):
        dq.OsmoticField((u.components[0], u.components[0]))


def test_deformed_at_zero_is_quantum_kinetic(gauss15, line):
    zero = dq.OsmoticField((RealField(np.zeros(2001), line),))
    assert dq.deformed_kinetic(gauss15, zero) == dq.quantum_kinetic(gauss15)


def test_deformation_traces_parabola(gauss15):
    # T_alpha = T_C + (1 - alpha)^2 T_W
    t_c = dq.classical_kinetic(gauss15)
    t_w = dq.weizsacker(gauss15)
    for alpha, value in dq.variational_scan(gauss15, [0.0, 0.5, 1.0, 1.5, 2.0]):
        assert value == pytest.approx(t_c + (1 - alpha) ** 2 * t_w, rel=1e-9)


def test_deformed_minimum_recovers_classical_part(orbital_of):
    w = orbital_of(3, 1, 1)
    t_u = dq.deformed_kinetic(w, dq.osmotic_term(w))
    assert t_u == pytest.approx(1.0 / 54.0, abs=1e-9)


def test_identity_chain_on_smooth_states(report_of, orbital_of, gauss0, gauss15):
    # T - fisher/8 = T_{u_c} = T_C, checked against the total energy scale
    cases = []
    for nlm in [(1, 0, 0), (2, 1, 1), (3, 0, 0), (3, 1, 1), (3, 2, 2)]:
        rep = report_of(*nlm)
        w = orbital_of(*nlm)
        cases.append((w, rep))
    for w, rep in cases + [(gauss0, dq.decompose(gauss0)), (gauss15, dq.decompose(gauss15))]:
        t_u = dq.deformed_kinetic(w, dq.osmotic_term(w))
        lhs = rep.T - rep.fisher / 8.0
        assert abs(lhs - t_u) <= 1e-9 * rep.T
        assert abs(t_u - rep.T_C) <= 1e-9 * rep.T


def test_identity_chain_near_node_lines(report_of, orbital_of):
    # the equatorial zero of this state lies on a grid line, where the
    # floored phase route loses real weight; the chain still closes at
    # the grid's node-limited accuracy
    rep = report_of(3, 2, 1)
    t_u = dq.deformed_kinetic(orbital_of(3, 2, 1), dq.osmotic_term(orbital_of(3, 2, 1)))
    assert abs(t_u - rep.T_C) <= 5e-3 * rep.T


def test_identity_chain_hard_walls(pib_grid, pib_pair):
    # wall points carry kinetic density with zero density, which the
    # deformation cannot cancel; the defect is one quadrature weight
    w = dq.pib_evolve(pib_pair, 0.0, pib_grid)
    rep = dq.decompose(w)
    t_u = dq.deformed_kinetic(w, dq.osmotic_term(w))
    assert abs(t_u - rep.T_C) <= 1e-3 * rep.T
    assert abs(t_u - rep.T_C) > 1e-6 * rep.T


def test_quadratic_expansion_around_minimum(gauss15, line):
    rng = np.random.default_rng(23)
    u_c = dq.osmotic_term(gauss15)
    t_min = dq.deformed_kinetic(gauss15, u_c)
    p = np.abs(gauss15.values) ** 2
    window = (p >= 1e-8 * p.max()).astype(float)
    x = line.points
    for _ in range(20):
        delta = np.zeros(2001)
        for _ in range(5):
            delta += rng.uniform(-0.5, 0.5) * np.sin(
                rng.uniform(0.2, 3.0) * x + rng.uniform(0.0, 2 * math.pi)
            )
        delta *= window
        shifted = u_c.plus(dq.OsmoticField((RealField(delta, line),)))
        gain = dq.deformed_kinetic(gauss15, shifted) - t_min
        expect = 0.5 * integrate(delta**2 * p, line)
        assert gain == pytest.approx(expect, rel=1e-8)
        assert gain > 0.0


def test_variational_scan_validation(gauss0):
    with pytest.raises(ValueError):
        dq.variational_scan(gauss0, [])


def test_parabola_vertex_validation():
    with pytest.raises(ValueError):
        dq.parabola_vertex([(0.0, 1.0), (1.0, 0.0)])
    with pytest.raises(ValueError):
        dq.parabola_vertex([(0.0, 0.0), (1.0, 1.0), (2.0, 2.0)])
    alpha, value = dq.parabola_vertex([(0.0, 1.0), (1.0, 0.0), (2.0, 1.0)])
    assert alpha == pytest.approx(1.0, abs=1e-12)
    assert value == pytest.approx(0.0, abs=1e-12)


def test_decompose_report_consistency(gauss15, line):
    rep = dq.decompose(gauss15)
    assert rep.closure_residual <= 1e-10
    assert rep.fisher == pytest.approx(8.0 * rep.T_W, rel=1e-12)
    for field, scalar in [
        (rep.integrand_T, rep.T),
        (rep.integrand_TC, rep.T_C),
        (rep.integrand_TW, rep.T_W),
    ]:
        assert integrate(field, line) == pytest.approx(scalar, rel=1e-12)


def test_decompose_radial_profiles(report_of, spherical_grid):
    rep = report_of(3, 1, 1)
    assert rep.integrand_T.grid is spherical_grid.r
    for field, scalar in [
        (rep.integrand_T, rep.T),
        (rep.integrand_TC, rep.T_C),
        (rep.integrand_TW, rep.T_W),
    ]:
        total = float((spherical_grid.r.weights * field.values).sum())
        assert total == pytest.approx(scalar, rel=1e-12)


def test_pointwise_identity_smooth_state(gauss0):
    residual, mask = dq.identity_residual(gauss0)
    assert mask.any()
    assert residual <= 1e-12


def test_pointwise_identity_excludes_node_region(orbital_of, spherical_grid):
    w = orbital_of(3, 1, 1)
    residual, mask = dq.identity_residual(w)
    assert residual <= 1e-6
    # the radial zero at r = 6 and its surroundings are masked out
    node_row = np.abs(spherical_grid.r.points - 6.0).argmin()
    assert not mask[node_row].any()
    assert mask.any()


def test_integrands_are_nonnegative(gauss15):
    assert quantum_kinetic_integrand(gauss15).values.min() >= 0.0
    assert classical_integrand(gauss15).values.min() >= 0.0
    assert weizsacker_integrand(gauss15).values.min() >= 0.0
