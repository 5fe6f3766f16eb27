import math

import numpy as np
import pytest

from fraclat.chain import (
    INFINITE,
    ChainSpec,
    FractionalOrder,
    element_infinite_closed,
    element_periodic_bloch,
)
from fraclat.lattice import (
    ExtrapolationError,
    LatticeSpec,
    OffsetVector,
    SizeLimitError,
    asymptotic_constant_nd,
    bessel_element_extrapolated,
    dispersion_surface,
    eigenvalue_nd,
    element_infinite_nd_bessel,
    element_infinite_nd_bz,
    element_periodic_nd,
    normalized_dispersion_2d,
)
from fraclat.special import QuadratureSpec, ToleranceError


class TestLatticeValidation:
    def test_dim_bounds(self):
        with pytest.raises(ValueError):
            LatticeSpec(dim=0, sizes=())
        with pytest.raises(ValueError):
            LatticeSpec(dim=5, sizes=(4, 4, 4, 4, 4))

    def test_sizes(self):
        spec = LatticeSpec(dim=2, sizes=(8, 6))
        assert spec.n_points == 48
        assert not spec.is_infinite
        inf = LatticeSpec(dim=2, sizes=(INFINITE, INFINITE))
        assert inf.is_infinite
        with pytest.raises(ValueError):
            LatticeSpec(dim=2, sizes=(8, INFINITE))
        with pytest.raises(ValueError):
            LatticeSpec(dim=2, sizes=(8, 1))
        with pytest.raises(ValueError):
            LatticeSpec(dim=2, sizes=(8,))

    def test_offset_vector(self):
        off = OffsetVector((3, -2))
        assert off.dim == 2
        assert off.total_order == 5
        assert off.reduced((8, 8)).components == (3, 6)
        with pytest.raises(ValueError):
            OffsetVector((1.5, 0))


class TestEigenvalue:
    def test_reference_points(self):
        assert eigenvalue_nd([0.0, 0.0]) == 0.0
        assert eigenvalue_nd([math.pi, math.pi]) == pytest.approx(8.0, rel=1e-15)
        assert eigenvalue_nd([math.pi, 0.0, 0.0]) == pytest.approx(4.0, rel=1e-15)

    def test_array_input(self):
        kappa = np.array([[0.0, 0.0], [math.pi, math.pi]])
        np.testing.assert_allclose(eigenvalue_nd(kappa), [0.0, 8.0], atol=1e-14)


class TestSpectralSum:
    def test_one_dimensional_reduction(self):
        chain = ChainSpec(size=12)
        lattice = LatticeSpec(dim=1, sizes=(12,))
        for alpha in (0.7, 2.0):
            order = FractionalOrder(alpha=alpha)
            for p in range(12):
                np.testing.assert_allclose(
                    element_periodic_nd(order, lattice, OffsetVector((p,))),
                    element_periodic_bloch(order, chain, p),
                    rtol=0.0,
                    atol=1e-12,
                )

    def test_classical_2d_diagonal(self):
        order = FractionalOrder(alpha=2.0)
        lattice = LatticeSpec(dim=2, sizes=(8, 8))
        value = element_periodic_nd(order, lattice, OffsetVector((0, 0)))
        np.testing.assert_allclose(value, 4.0, rtol=1e-13)
        scaled_order = FractionalOrder(alpha=2.0, omega_sq=2.5)
        scaled_lattice = LatticeSpec(dim=2, sizes=(8, 8), omega_sq=2.5)
        np.testing.assert_allclose(
            element_periodic_nd(scaled_order, scaled_lattice, OffsetVector((0, 0))),
            10.0,
            rtol=1e-13,
        )

    def test_frozen_regression(self):
        # value computed once by an independent direct double loop over all
        # 16 x 16 Bloch vectors and frozen here
        order = FractionalOrder(alpha=1.0)
        lattice = LatticeSpec(dim=2, sizes=(16, 16))
        value = element_periodic_nd(order, lattice, OffsetVector((2, 1)))
        np.testing.assert_allclose(value, -0.014063814095614628, rtol=1e-12)

    def test_scale_mismatch_rejected(self):
        order = FractionalOrder(alpha=1.0, omega_sq=2.0)
        lattice = LatticeSpec(dim=2, sizes=(8, 8))
        with pytest.raises(ValueError):
            element_periodic_nd(order, lattice, OffsetVector((0, 0)))

    def test_size_cap(self):
        order = FractionalOrder(alpha=1.0)
        lattice = LatticeSpec(dim=3, sizes=(300, 300, 300))
        with pytest.raises(SizeLimitError):
            element_periodic_nd(order, lattice, OffsetVector((0, 0, 0)))

    def test_offset_dim_mismatch(self):
        order = FractionalOrder(alpha=1.0)
        lattice = LatticeSpec(dim=2, sizes=(8, 8))
        with pytest.raises(ValueError):
            element_periodic_nd(order, lattice, OffsetVector((1,)))

    def test_row_sum_vanishes(self):
        order = FractionalOrder(alpha=1.3)
        lattice = LatticeSpec(dim=2, sizes=(6, 4))
        values = [
            element_periodic_nd(order, lattice, OffsetVector((p1, p2)))
            for p1 in range(6)
            for p2 in range(4)
        ]
        assert abs(sum(values)) <= 1e-9 * max(abs(v) for v in values)

    def test_symmetries(self):
        order = FractionalOrder(alpha=1.3)
        lattice = LatticeSpec(dim=2, sizes=(12, 12))
        base = element_periodic_nd(order, lattice, OffsetVector((2, 1)))
        for comps in ((1, 2), (-2, 1), (2, -1), (-1, -2)):
            np.testing.assert_allclose(
                element_periodic_nd(order, lattice, OffsetVector(comps)), base, rtol=1e-12
            )
        cube = LatticeSpec(dim=3, sizes=(6, 6, 6))
        base3 = element_periodic_nd(order, cube, OffsetVector((1, 2, 0)))
        for comps in ((2, 1, 0), (0, 1, 2), (1, 0, 2), (-1, 2, 0), (1, -2, 0)):
            np.testing.assert_allclose(
                element_periodic_nd(order, cube, OffsetVector(comps)), base3, rtol=1e-12
            )


class TestZoneIntegral:
    def test_one_dimensional_reduction(self):
        for alpha in (0.5, 1.5, 3.1):
            order = FractionalOrder(alpha=alpha)
            for p in (0, 1, 5, 17):
                np.testing.assert_allclose(
                    element_infinite_nd_bz(order, 1, OffsetVector((p,))),
                    element_infinite_closed(order, p),
                    rtol=0.0,
                    atol=1e-9,
                )

    def test_classical_2d_diagonal(self):
        order = FractionalOrder(alpha=2.0)
        np.testing.assert_allclose(
            element_infinite_nd_bz(order, 2, OffsetVector((0, 0))), 4.0, rtol=1e-12
        )

    def test_periodization_limit(self):
        order = FractionalOrder(alpha=1.5)
        infinite = element_infinite_nd_bz(order, 2, OffsetVector((3, 0)))
        lattice = LatticeSpec(dim=2, sizes=(256, 256))
        periodic = element_periodic_nd(order, lattice, OffsetVector((3, 0)))
        assert abs(periodic - infinite) <= 256.0**-1.5

    def test_dim_limit(self):
        order = FractionalOrder(alpha=1.0)
        with pytest.raises(ValueError):
            element_infinite_nd_bz(order, 4, OffsetVector((0, 0, 0, 0)))
        with pytest.raises(ValueError):
            element_infinite_nd_bz(order, 2, OffsetVector((1,)))

    def test_tolerance_failure_reported(self):
        order = FractionalOrder(alpha=0.3)
        spec = QuadratureSpec(points=16, abs_tol=1e-30)
        with pytest.raises(ToleranceError):
            element_infinite_nd_bz(order, 2, OffsetVector((7, 3)), spec)

    def test_axis_decay_slope(self):
        # far field decay p^-(dim + alpha) along a lattice axis
        order = FractionalOrder(alpha=0.5)
        f20 = element_infinite_nd_bz(order, 2, OffsetVector((20, 0)))
        f40 = element_infinite_nd_bz(order, 2, OffsetVector((40, 0)))
        slope = math.log(abs(f40) / abs(f20)) / math.log(2.0)
        assert abs(slope + 2.5) < 0.05
        predicted = -asymptotic_constant_nd(2, 0.5) * 40.0**-2.5
        assert abs(f40 / predicted - 1.0) < 0.05


class TestBesselRoute:
    def test_matches_closed_form_1d(self):
        order = FractionalOrder(alpha=0.5)
        value = bessel_element_extrapolated(order, 1, OffsetVector((1,)), epsilon=3e-4)
        np.testing.assert_allclose(value, element_infinite_closed(order, 1), rtol=0.0, atol=1e-6)

    def test_matches_zone_integral_2d(self):
        order = FractionalOrder(alpha=1.0)
        value = bessel_element_extrapolated(order, 2, OffsetVector((0, 0)))
        reference = element_infinite_nd_bz(order, 2, OffsetVector((0, 0)))
        np.testing.assert_allclose(value, reference, rtol=0.0, atol=1e-6)

    def test_integer_half_rejected(self):
        order = FractionalOrder(alpha=2.0)
        with pytest.raises(ValueError):
            element_infinite_nd_bessel(order, 1, OffsetVector((0,)), 0.1, 200.0)

    def test_parameter_validation(self):
        order = FractionalOrder(alpha=0.5)
        with pytest.raises(ValueError):
            element_infinite_nd_bessel(order, 1, OffsetVector((0,)), -0.1, 200.0)
        with pytest.raises(ValueError):
            # damped envelope at this cutoff is far above 1e-14
            element_infinite_nd_bessel(order, 1, OffsetVector((0,)), 0.1, 5.0)

    def test_extrapolation_failure_carries_ladder(self):
        order = FractionalOrder(alpha=0.5)
        with pytest.raises(ExtrapolationError) as info:
            bessel_element_extrapolated(
                order, 1, OffsetVector((1,)), epsilon=0.0125, check_tol=1e-9
            )
        assert info.value.epsilons == (0.0125, 0.00625, 0.003125)
        assert info.value.estimate > 1e-9

    def test_component_symmetry(self):
        order = FractionalOrder(alpha=1.5)
        base = element_infinite_nd_bessel(order, 2, OffsetVector((2, 1)), 0.0125, 36.0 / 0.05)
        for comps in ((1, 2), (-2, 1), (2, -1)):
            got = element_infinite_nd_bessel(order, 2, OffsetVector(comps), 0.0125, 36.0 / 0.05)
            np.testing.assert_allclose(got, base, rtol=1e-13)


class TestAsymptoticConstant:
    def test_matches_1d_coefficient(self):
        for alpha in (0.5, 1.0, 1.5, 2.5):
            expected = (
                math.exp(math.lgamma(alpha + 1.0)) * math.sin(0.5 * math.pi * alpha) / math.pi
            )
            np.testing.assert_allclose(asymptotic_constant_nd(1, alpha), expected, rtol=1e-12)

    def test_alpha_one(self):
        np.testing.assert_allclose(asymptotic_constant_nd(1, 1.0), 1.0 / math.pi, rtol=1e-13)

    def test_even_integer_orders_vanish(self):
        assert asymptotic_constant_nd(1, 2.0) == 0.0
        assert asymptotic_constant_nd(3, 4.0) == 0.0

    def test_sign_pattern(self):
        assert asymptotic_constant_nd(2, 0.5) > 0.0
        assert asymptotic_constant_nd(2, 2.5) < 0.0

    def test_domain(self):
        with pytest.raises(ValueError):
            asymptotic_constant_nd(0, 1.0)
        with pytest.raises(ValueError):
            asymptotic_constant_nd(2, -1.0)


class TestDispersionSurface:
    def test_band_edge_normalization(self):
        order = FractionalOrder(alpha=2.0)
        np.testing.assert_allclose(
            normalized_dispersion_2d(order, math.pi, math.pi), 1.0, rtol=1e-13
        )

    def test_alpha_independent_crossing(self):
        # wherever the eigenvalue equals one the normalized frequency is
        # 2^(-3/2) for every order
        for alpha in (1.0, 1.5, 2.0, 3.0):
            order = FractionalOrder(alpha=alpha)
            np.testing.assert_allclose(
                normalized_dispersion_2d(order, math.pi / 3.0, 0.0),
                2.0**-1.5,
                rtol=1e-13,
            )
            kappa = 2.0 * math.asin(math.sqrt(0.125))
            np.testing.assert_allclose(
                normalized_dispersion_2d(order, kappa, kappa), 2.0**-1.5, rtol=1e-13
            )

    def test_zone_centre(self):
        assert normalized_dispersion_2d(FractionalOrder(alpha=1.2), 0.0, 0.0) == 0.0

    def test_surface_layout(self):
        order = FractionalOrder(alpha=1.5)
        surface = dispersion_surface(order, 7)
        assert surface.shape == (49, 3)
        np.testing.assert_allclose(surface[-1], [math.pi, math.pi, 2.0 ** (3.0 * (1.5 - 2.0) / 4.0)])
        for k1, k2, value in surface:
            np.testing.assert_allclose(
                value, normalized_dispersion_2d(order, k1, k2), rtol=1e-14
            )
        # second column advances fastest
        assert surface[1, 0] == 0.0 and surface[1, 1] > 0.0

    def test_grid_validation(self):
        with pytest.raises(ValueError):
            dispersion_surface(FractionalOrder(alpha=1.0), 1)
