import json
import math

import pytest

import rotor_scatter as rs


def test_bessel():
    assert rs.bessel_j(0, 0.0) == 1.0
    batch = rs.bessel_j_batch(5, 3.7)
    assert len(batch) == 6
    assert batch[3] == rs.bessel_j(3, 3.7)
    assert rs.bessel_j(-3, 2.0) == -rs.bessel_j(3, 2.0)


def test_channels_and_kinematics():
    mol = rs.Molecule(1.0, 1.0)
    assert rs.outgoing_wavenumber(2.0, 0, 0, mol) == 2.0
    assert rs.outgoing_wavenumber(2.0, 0, 2, mol) is None
    channels = rs.open_channels(rs.IncidentBeam(2.5), mol)
    assert len(channels) == 5
    assert [c[1] for c in channels] == [-2, -1, 0, 1, 2]


def test_engines_agree():
    shape = rs.PeakShape("gaussian", 1.0, 1.0)
    spec = rs.PotentialSpec([(-2.0, shape), (2.0, shape)])
    sigma, channels = rs.cross_section_general(0.3, rs.Molecule(1.0, 1.0), rs.IncidentBeam(1.0), spec)
    closed = rs.cross_section_closed("closed_two_gaussian", 0.3, separation=2.0, half_separation=1.0, k=1.0)
    assert sigma == pytest.approx(closed, rel=1e-12)
    assert sum(channels.values()) == pytest.approx(sigma, rel=1e-12)
    assert rs.cross_section_structureless(0.0, 2.0, 1.0, rs.PotentialSpec([(-2.0, rs.PeakShape("gaussian", 2.0, 1.0)), (2.0, rs.PeakShape("gaussian", 2.0, 1.0))])) == pytest.approx(32 * math.pi)


def test_profile_and_analysis():
    shape = rs.PeakShape("gaussian", 1.0, 1.0)
    spec = rs.make_grating(2, 6.0, shape)
    thetas = [-1.5 + 3.0 * i / 1000 for i in range(1001)]
    with_internal = rs.compute_profile("closed_grating", thetas, rs.Molecule(1.0, 1.0), rs.IncidentBeam(1.0), spec, threads=2)
    without = rs.compute_profile("closed_structureless_grating", thetas, rs.Molecule(1.0, 1.0), rs.IncidentBeam(1.0), spec)
    assert with_internal["theta"] == thetas
    ratio = rs.suppression_ratio(thetas, with_internal["sigma"], without["sigma"], -1.5, 1.5)
    v_with = rs.visibility(thetas, with_internal["sigma"], -1.5, 1.5)
    v_without = rs.visibility(thetas, without["sigma"], -1.5, 1.5)
    assert v_without > 0.9
    assert ratio == v_with / v_without
    with pytest.raises(rs.AnalysisError):
        rs.visibility(thetas[:10], without["sigma"][:10], -1.5, 1.5)


def test_config_validation():
    text = json.dumps({"molecule": {"mass": 1, "alpha": 1}, "beam": {"k": 1}})
    canonical = json.loads(rs.validate_config(text))
    assert canonical["beam"]["k"] == 1
    with pytest.raises(rs.ConfigError, match="molecule.alpha"):
        rs.validate_config(json.dumps({"molecule": {"mass": 1, "alpha": -1}, "beam": {"k": 1}}))


def test_checks():
    results = rs.run_checks(["bessel", "parity-threshold"])
    assert [r["name"] for r in results] == ["bessel", "parity-threshold"]
    assert all(r["passed"] for r in results)
