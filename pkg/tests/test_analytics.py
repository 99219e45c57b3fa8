"""Analytic degree computations against frozen values and independent oracles."""

import math

import numpy as np
import pytest

from dirnet.analytics import (
    DegreeEstimate,
    HardDiskMu2Mode,
    QuadMethod,
    QuadratureSpec,
    h2_exact_fixed,
    hard_disk_lens_area,
    hm_approx_fixed,
    mu1_closed_form,
    mu2_hard_disk,
    mu2_quadrature,
)
from dirnet.channel import ChannelModel, OrientedNode

from _oracles import (
    mu1_grid_quadrature,
    mu2_hard_disk_riemann,
    mu2_plain_monte_carlo,
    shared_relay_probability_enum,
)

# frozen 30-digit references for the closed forms
MU1_RHO1_ETA3 = 2.83605798039741879257740789445
MU1_RATIO_ETA3 = 1.1805212137020862671765119071
LENS_AT_R0 = 1.22836969860875684554470575143
MU2_HD_RHO10 = 75.0449970038308253219878575795


class TestMu1ClosedForm:
    def test_eta2_gives_rho_pi(self):
        est = mu1_closed_form(1.0, ChannelModel.rayleigh(eta=2.0))
        assert est.value == pytest.approx(math.pi, rel=1e-14)

    def test_linearity_in_density(self):
        ch = ChannelModel.rayleigh(eta=2.0)
        assert mu1_closed_form(2.0, ch).value == pytest.approx(2.0 * math.pi, rel=1e-14)
        ch3 = ChannelModel.rayleigh(eta=3.0, epsilon=0.8)
        ratio = mu1_closed_form(3.2, ch3).value / mu1_closed_form(1.0, ch3).value
        assert ratio == pytest.approx(3.2, rel=1e-13)

    def test_isotropic_eta3(self):
        est = mu1_closed_form(1.0, ChannelModel.rayleigh(eta=3.0))
        assert est.value == pytest.approx(MU1_RHO1_ETA3, rel=1e-13)

    def test_isotropic_to_anisotropic_ratio_eta3(self):
        iso = mu1_closed_form(3.0, ChannelModel.rayleigh(eta=3.0, epsilon=0.0))
        aniso = mu1_closed_form(3.0, ChannelModel.rayleigh(eta=3.0, epsilon=1.0))
        assert iso.value / aniso.value == pytest.approx(MU1_RATIO_ETA3, rel=1e-12)

    def test_matches_grid_quadrature(self):
        # direct tensor quadrature of the defining triple integral
        for eta in (2.5, 3.0, 4.0):
            for eps in (0.0, 0.6, 1.0):
                ch = ChannelModel.rayleigh(eta=eta, epsilon=eps, beta=1.2)
                want = mu1_grid_quadrature(1.7, ch)
                got = mu1_closed_form(1.7, ch).value
                assert got == pytest.approx(want, rel=1e-6), (eta, eps)

    def test_strictly_decreasing_in_epsilon_above_eta2(self):
        for eta in (2.5, 3.0, 4.0, 6.0):
            vals = [mu1_closed_form(1.0, ChannelModel.rayleigh(eta=eta, epsilon=e)).value
                    for e in np.linspace(0.0, 1.0, 11)]
            assert all(a > b for a, b in zip(vals, vals[1:])), eta

    def test_eta2_constant_in_epsilon(self):
        vals = [mu1_closed_form(1.0, ChannelModel.rayleigh(eta=2.0, epsilon=e)).value
                for e in (0.0, 0.25, 0.5, 0.75, 1.0)]
        assert max(vals) - min(vals) <= 1e-10 * vals[0]

    def test_rejects_hard_disk_and_bad_density(self):
        with pytest.raises(ValueError):
            mu1_closed_form(1.0, ChannelModel.hard_disk(r0=1.0))
        with pytest.raises(ValueError):
            mu1_closed_form(0.0, ChannelModel.rayleigh(eta=3.0))


FAST_SPEC = QuadratureSpec(qmc_samples=1024, inner_points=16, angular_points=12)


class TestMu2Quadrature:
    def test_vanishes_at_low_density(self):
        est = mu2_quadrature(1e-6, ChannelModel.rayleigh(eta=3.0), FAST_SPEC)
        assert 0.0 <= est.value <= 1e-6

    def test_agrees_with_plain_monte_carlo(self):
        ch = ChannelModel.rayleigh(eta=3.0)
        est = mu2_quadrature(1.0, ch)
        ref, stderr = mu2_plain_monte_carlo(1.0, ch, seed=42)
        assert abs(est.value - ref) <= 3.0 * stderr + est.error_bound

    def test_resolution_doubling_within_error_bound(self):
        ch = ChannelModel.rayleigh(eta=3.0, epsilon=1.0)
        lo = mu2_quadrature(2.0, ch, FAST_SPEC)
        hi = mu2_quadrature(2.0, ch, QuadratureSpec(
            qmc_samples=2048, inner_points=32, angular_points=24))
        assert abs(hi.value - lo.value) <= lo.error_bound

    def test_tensor_gauss_outer_agrees_with_qmc(self):
        ch = ChannelModel.rayleigh(eta=3.0)
        tg = mu2_quadrature(1.0, ch, QuadratureSpec(
            method=QuadMethod.TENSOR_GAUSS, outer_points=10,
            inner_points=16, angular_points=12))
        qm = mu2_quadrature(1.0, ch, FAST_SPEC)
        assert abs(tg.value - qm.value) <= tg.error_bound + qm.error_bound

    def test_eval_cap_refusal_mentions_remedies(self):
        with pytest.raises(ValueError, match="cap"):
            mu2_quadrature(1.0, ChannelModel.rayleigh(eta=3.0),
                           QuadratureSpec(eval_cap=1000))


def _random_nodes(rng, n):
    return [OrientedNode(float(x), float(y), float(o))
            for x, y, o in zip(rng.uniform(-1.5, 1.5, n),
                               rng.uniform(-1.5, 1.5, n),
                               rng.uniform(0.0, 2.0 * math.pi, n))]


class TestFixedConfiguration:
    def test_no_relays_gives_zero(self):
        nodes = [OrientedNode(0.0, 0.0), OrientedNode(1.0, 0.0)]
        assert h2_exact_fixed(nodes, ChannelModel.rayleigh(eta=3.0), 0, 1) == 0.0

    def test_certain_relay_gives_one(self):
        # hard disk with the relay inside both ranges: both links certain
        nodes = [OrientedNode(0.0, 0.0), OrientedNode(1.0, 0.0), OrientedNode(0.5, 0.0)]
        assert h2_exact_fixed(nodes, ChannelModel.hard_disk(r0=0.8), 0, 1) == 1.0

    def test_matches_enumeration(self):
        rng = np.random.default_rng(314)
        for _ in range(10):
            n = int(rng.integers(3, 7))
            nodes = _random_nodes(rng, n)
            ch = ChannelModel.rayleigh(eta=float(rng.uniform(2.0, 5.0)),
                                       epsilon=float(rng.uniform(0.0, 1.0)),
                                       beta=float(rng.uniform(0.5, 2.0)))
            want = shared_relay_probability_enum(nodes, ch, 0, 1, m=2)
            assert h2_exact_fixed(nodes, ch, 0, 1) == pytest.approx(want, abs=1e-12)

    def test_m1_is_direct_link(self):
        rng = np.random.default_rng(9)
        nodes = _random_nodes(rng, 5)
        ch = ChannelModel.rayleigh(eta=3.0, epsilon=0.5)
        want = ch.connection_probability(nodes[2], nodes[4])
        assert hm_approx_fixed(nodes, ch, 2, 4, m=1) == pytest.approx(want, rel=1e-12)

    def test_m2_reduces_to_h2_exactly(self):
        rng = np.random.default_rng(27)
        for _ in range(8):
            n = int(rng.integers(3, 8))
            nodes = _random_nodes(rng, n)
            ch = ChannelModel.rayleigh(eta=float(rng.uniform(2.0, 4.0)),
                                       epsilon=float(rng.uniform(0.0, 1.0)))
            i, j = 0, n - 1
            assert hm_approx_fixed(nodes, ch, i, j, m=2) == h2_exact_fixed(nodes, ch, i, j)

    def test_m3_is_a_probability(self):
        rng = np.random.default_rng(101)
        nodes = _random_nodes(rng, 6)
        ch = ChannelModel.rayleigh(eta=3.0, epsilon=1.0)
        val = hm_approx_fixed(nodes, ch, 0, 1, m=3)
        assert 0.0 <= val <= 1.0

    def test_index_validation(self):
        nodes = _random_nodes(np.random.default_rng(1), 4)
        ch = ChannelModel.rayleigh(eta=3.0)
        with pytest.raises(ValueError):
            h2_exact_fixed(nodes, ch, 1, 1)
        with pytest.raises(ValueError):
            h2_exact_fixed(nodes, ch, 0, 7)
        with pytest.raises(ValueError):
            hm_approx_fixed(nodes, ch, 0, 1, m=0)


class TestHardDisk:
    def test_lens_trivial_values(self):
        assert hard_disk_lens_area(1.0, 0.0) == pytest.approx(math.pi, rel=1e-14)
        assert hard_disk_lens_area(1.0, 2.0) == 0.0
        assert hard_disk_lens_area(1.0, 2.5) == 0.0
        assert hard_disk_lens_area(1.0, 1.0) == pytest.approx(LENS_AT_R0, rel=1e-13)

    def test_lens_continuous_and_decreasing(self):
        r = np.linspace(0.0, 2.0, 2001)
        a = hard_disk_lens_area(1.0, r)
        assert np.all(np.diff(a) < 0.0)
        assert abs(a[-1]) < 1e-12

    def test_lens_tangency_expansion(self):
        # near tangency the lens shrinks like (4*sqrt(r0)/3) * gap**1.5
        r0 = 1.3
        rel_errs = []
        for gap in (1e-1, 1e-2, 1e-3, 1e-4):
            exact = hard_disk_lens_area(r0, 2.0 * r0 - gap)
            approx = (4.0 * math.sqrt(r0) / 3.0) * gap ** 1.5
            rel_errs.append(abs(approx - exact) / exact)
        assert all(a > b for a, b in zip(rel_errs, rel_errs[1:]))
        assert rel_errs[-1] < 1e-3

    def test_numeric_integral_frozen_value(self):
        est = mu2_hard_disk(10.0, 1.0)
        assert est.value == pytest.approx(MU2_HD_RHO10, rel=1e-10)

    def test_numeric_integral_matches_riemann_oracle(self):
        for rho in (2.0, 10.0, 50.0):
            est = mu2_hard_disk(rho, 1.0)
            want = mu2_hard_disk_riemann(rho, 1.0)
            assert est.value == pytest.approx(want, rel=1e-6), rho

    def test_leading_order_at_high_density(self):
        rho = 1e4
        ratio = mu2_hard_disk(rho, 1.0).value / (3.0 * rho * math.pi)
        assert 0.99 <= ratio < 1.0

    def test_asymptotic_2d_value(self):
        from dirnet.specfun import gamma
        rho, r0 = 100.0, 1.0
        want = 3.0 * rho * math.pi - 2.0 * math.pi * 2.0 ** (2.0 / 3.0) \
            * gamma(2.0 / 3.0) * (rho / 3.0) ** (1.0 / 3.0)
        est = mu2_hard_disk(rho, r0, HardDiskMu2Mode.ASYMPTOTIC_2D)
        assert est.value == pytest.approx(want, rel=1e-14)

    def test_asymptotic_3d_value(self):
        rho, r0 = 10.0, 1.0
        want = 28.0 / 3.0 * math.pi * rho - 8.0 * math.pi * math.sqrt(2.0 * rho)
        est = mu2_hard_disk(rho, r0, HardDiskMu2Mode.ASYMPTOTIC_3D)
        assert est.value == pytest.approx(want, rel=1e-14)

    def test_asymptotic_refuses_low_density(self):
        with pytest.raises(ValueError, match="large densities"):
            mu2_hard_disk(0.2, 1.0, HardDiskMu2Mode.ASYMPTOTIC_2D)


class TestTypes:
    def test_degree_estimate_validation(self):
        with pytest.raises(ValueError):
            DegreeEstimate(value=-0.1, error_bound=0.0)
        with pytest.raises(ValueError):
            DegreeEstimate(value=1.0, error_bound=-1e-3)

    def test_quadrature_spec_validation(self):
        with pytest.raises(ValueError):
            QuadratureSpec(tail_tolerance=0.0)
        with pytest.raises(ValueError):
            QuadratureSpec(inner_points=4)
        with pytest.raises(ValueError):
            QuadratureSpec(qmc_samples=10)
