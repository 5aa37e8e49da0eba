"""Orbit kinematics: redshift, recoil factor, sideband frequencies."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rotodyne import (
    DEFAULT_DIPOLE,
    SPEED_OF_LIGHT,
    AtomParams,
    TrajectoryParams,
    derive_kinematics,
    zeta_of,
)


def atom(omega0=1.0e7, theta0=math.pi / 2):
    return AtomParams(omega0=omega0, dipole=DEFAULT_DIPOLE, theta0=theta0)


def kin_of(radius, omega, omega0=1.0e7):
    return derive_kinematics(TrajectoryParams(radius=radius, omega=omega), atom(omega0))


class TestRedshift:
    def test_redshifted_gap_inverts_through_gamma(self):
        kin = kin_of(1.0e-6, 5.0e9)
        assert kin.omega0_bar * kin.lorentz_gamma == pytest.approx(1.0e7, rel=1e-15)

    def test_gap_is_redshifted_not_blueshifted(self):
        kin = kin_of(1.0e-6, 5.0e9)
        assert kin.omega0_bar < 1.0e7
        assert kin.lorentz_gamma > 1.0

    def test_redshift_monotone_in_rim_speed(self):
        gaps = [kin_of(1.0e-3, om).omega0_bar for om in (1e5, 1e7, 1e9, 1e10)]
        assert gaps == sorted(gaps, reverse=True)

    def test_static_orbit_keeps_everything_inertial(self):
        kin = kin_of(1.0e-6, 0.0)
        assert kin.zeta == 0.0
        assert kin.lorentz_gamma == 1.0
        assert kin.omega0_bar == 1.0e7  # bit-exact: no boost at all
        assert kin.acceleration == 0.0


class TestRecoilFactor:
    @settings(max_examples=60, deadline=None, derandomize=True)
    @given(beta=st.floats(min_value=0.35, max_value=0.995))
    def test_roundtrip_against_lorentz_gamma(self, beta):
        # v = omega * R fixed by beta; zeta must equal beta^2 and 1 - 1/gamma^2
        radius = 0.5
        omega = beta * SPEED_OF_LIGHT / radius
        kin = kin_of(radius, omega)
        assert kin.zeta == pytest.approx(beta * beta, rel=1e-14)
        assert 1.0 - 1.0 / kin.lorentz_gamma**2 == pytest.approx(kin.zeta, rel=1e-14)

    def test_zeta_of_matches_orbit_zeta(self):
        kin = kin_of(1.0e-3, 1.0e5)
        assert zeta_of(1.0e5, 1.0e-3) == kin.zeta

    def test_zeta_of_scales_quadratically(self):
        assert zeta_of(2.0e5, 1.0e-3) == pytest.approx(4.0 * zeta_of(1.0e5, 1.0e-3), rel=1e-15)

    def test_known_values(self):
        assert kin_of(1.0e-6, 5.0e9).zeta == pytest.approx(2.781625140134046e-10, rel=1e-12)
        assert kin_of(1.0e-3, 1.0e5).zeta == pytest.approx(1.1126500560536184e-13, rel=1e-12)


class TestSidebands:
    def test_lab_sidebands_straddle_rotation_frequency(self):
        traj = TrajectoryParams(radius=1.0e-6, omega=5.0e9)
        kin = derive_kinematics(traj, atom())
        assert kin.omega_plus == traj.omega + kin.omega0_bar
        assert kin.omega_minus == traj.omega - kin.omega0_bar

    def test_comoving_sidebands_straddle_redshifted_gap(self):
        traj = TrajectoryParams(radius=1.0e-3, omega=1.0e5)
        kin = derive_kinematics(traj, atom())
        assert kin.obar_plus == kin.omega0_bar + traj.omega
        assert kin.obar_minus == kin.omega0_bar - traj.omega

    def test_slow_rotation_keeps_lower_sideband_positive(self):
        assert kin_of(1.0e-3, 1.0e5).obar_minus > 0.0

    def test_fast_rotation_pushes_lower_sideband_negative(self):
        assert kin_of(1.0e-6, 5.0e9).obar_minus < 0.0


class TestAcceleration:
    def test_centripetal_value_slow_orbit(self):
        # omega^2 R at these parameters lands on the float exactly
        assert kin_of(1.0e-3, 1.0e5).acceleration == 1.0e7

    def test_centripetal_value_fast_orbit(self):
        kin = kin_of(1.0e-6, 5.0e9)
        assert kin.acceleration == pytest.approx((5.0e9) ** 2 * 1.0e-6, rel=1e-15)


class TestValidation:
    def test_superluminal_rim_rejected(self):
        with pytest.raises(ValueError):
            derive_kinematics(TrajectoryParams(radius=1.0, omega=3.0e8), atom())

    def test_negative_radius_rejected(self):
        with pytest.raises(ValueError):
            TrajectoryParams(radius=-1.0, omega=1.0e5)

    def test_negative_rotation_rejected(self):
        with pytest.raises(ValueError):
            TrajectoryParams(radius=1.0, omega=-1.0e5)

    def test_atom_validation(self):
        with pytest.raises(ValueError):
            AtomParams(omega0=0.0, dipole=DEFAULT_DIPOLE, theta0=1.0)
        with pytest.raises(ValueError):
            AtomParams(omega0=1.0e7, dipole=0.0, theta0=1.0)
        with pytest.raises(ValueError):
            AtomParams(omega0=1.0e7, dipole=DEFAULT_DIPOLE, theta0=4.0)
