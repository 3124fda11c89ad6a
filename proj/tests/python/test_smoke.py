"""End-to-end smoke of the python bindings: world -> scan -> features."""

import math
import os

import pytest

import csf

WORLDS = os.environ["CSF_WORLDS_DIR"]


def square_world():
    return csf.make_world(
        [(-2, -2, 2, -2), (2, -2, 2, 2), (2, 2, -2, 2), (-2, 2, -2, -2)]
    )


def test_world_construction_and_casting():
    world = square_world()
    assert len(world) == 4

    pose = csf.Pose(0.0, 0.0, math.pi / 4)
    scan = csf.cast_scan(world, pose, 360, csf.NoiseModel(1e-9, 1e-9), seed=1)
    assert len(scan) == 360
    rhos = [p.rho for p in scan.points]
    assert min(rhos) == pytest.approx(2.0, abs=1e-6)
    assert max(rhos) == pytest.approx(2.0 * math.sqrt(2.0), abs=1e-6)


def test_extract_finds_the_four_corners():
    world = square_world()
    pose = csf.Pose(0.0, 0.0, math.pi / 4)
    scan = csf.cast_scan(world, pose, 360, csf.NoiseModel(1e-9, 1e-9), seed=1)

    for method in ("wclm", "arras", "siadat"):
        fmap = csf.extract(scan, method=method)
        assert fmap.method == method
        assert fmap.n_scan_points == 360
        assert len(fmap.lines) == 4
        assert len(fmap.corners) == 4

        # Sensor frame = world frame rotated by -45 deg: corners on the axes.
        d = 2.0 * math.sqrt(2.0)
        expected = {(d, 0.0), (0.0, d), (-d, 0.0), (0.0, -d)}
        for corner in fmap.corners:
            nearest = min(
                expected,
                key=lambda e: math.hypot(corner["x"] - e[0], corner["y"] - e[1]),
            )
            assert math.hypot(corner["x"] - nearest[0], corner["y"] - nearest[1]) < 1e-6
            expected.discard(nearest)
        assert not expected

        for line in fmap.lines:
            assert line["r"] == pytest.approx(2.0, abs=1e-6)
            assert line["cov"].shape == ((3, 3) if method == "siadat" else (2, 2))


def test_fit_line_direct():
    # Points of the vertical line x = 2 handed in as raw (rho, theta) pairs.
    pts = [(2.0, 0.0), (math.sqrt(5.0), math.atan2(1, 2)), (math.sqrt(5.0), math.atan2(-1, 2))]
    fit = csf.fit_line(pts, method="wclm")
    assert fit["params"][0] == pytest.approx(0.5, abs=1e-12)  # inversion point Q
    assert fit["params"][1] == pytest.approx(0.0, abs=1e-12)
    assert fit["r"] == pytest.approx(2.0, abs=1e-12)
    assert fit["alpha"] == pytest.approx(0.0, abs=1e-12)

    arras = csf.fit_line(pts, method="arras")
    assert arras["params"][0] == pytest.approx(2.0, abs=1e-12)  # (r, alpha)
    assert arras["params"][1] == pytest.approx(0.0, abs=1e-12)

    siadat = csf.fit_line(pts, method="siadat")
    a, b, c = siadat["params"]
    assert (a, b, c) == pytest.approx((1.0, 0.0, -2.0), abs=1e-12)


def test_errors_surface_as_python_exceptions():
    world = square_world()
    with pytest.raises(csf.GeometryError):
        csf.cast_scan(world, csf.Pose(2.0, 0.0, 0.0), 100)  # pose on a wall
    with pytest.raises(csf.ValidationError):
        csf.extract(csf.PolarScan(), method="nope")


def test_render_svg():
    world = square_world()
    scan = csf.cast_scan(world, csf.Pose(0, 0, math.pi / 4), 360, csf.NoiseModel(1e-9, 1e-9))
    fmap = csf.extract(scan, method="wclm")
    svg = csf.render_svg(scan, fmap)
    assert svg.startswith("<svg")
    assert svg.count('class="corner"') == 4
