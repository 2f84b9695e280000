import math

import numpy as np

from chordlink.model import Cluster, Point
from chordlink.region import (
    MIN_REGION_RADIUS,
    displaced_distance,
    fit_region,
    is_circularly_separable,
    radial_displace,
)


def cluster_of(*ids):
    return Cluster("c", frozenset(ids))


def test_two_point_barycenter():
    pos = {"a": Point(0.0, 0.0), "b": Point(2.0, 0.0)}
    region = fit_region(pos, cluster_of("a", "b"))
    assert region.center.x == 1.0 and region.center.y == 0.0
    assert region.radius == 1.05


def test_equilateral_triangle():
    pos = {
        "a": Point(math.cos(0.0), math.sin(0.0)),
        "b": Point(math.cos(2 * math.pi / 3), math.sin(2 * math.pi / 3)),
        "c": Point(math.cos(4 * math.pi / 3), math.sin(4 * math.pi / 3)),
    }
    region = fit_region(pos, cluster_of("a", "b", "c"))
    assert abs(region.center.x) < 1e-12 and abs(region.center.y) < 1e-12
    assert abs(region.radius - 1.05) < 1e-12


def test_random_members_all_covered():
    rng = np.random.default_rng(11)
    for _ in range(25):
        pts = {f"n{i}": Point(*rng.uniform(-50, 50, 2)) for i in range(10)}
        region = fit_region(pts, cluster_of(*pts))
        for p in pts.values():
            assert math.hypot(p.x - region.center.x, p.y - region.center.y) <= region.radius + 1e-9


def test_singleton_gets_minimum_radius_and_perturbed_center():
    pos = {"a": Point(3.0, 4.0)}
    region = fit_region(pos, cluster_of("a"))
    assert region.radius == MIN_REGION_RADIUS
    d = math.hypot(pos["a"].x - region.center.x, pos["a"].y - region.center.y)
    assert d >= 1e-9  # member no longer sits on the center


def test_member_on_barycenter_perturbs_center():
    pos = {"a": Point(0.0, 0.0), "b": Point(1.0, 0.0), "c": Point(-1.0, 0.0)}
    region = fit_region(pos, cluster_of("a", "b", "c"))
    d = math.hypot(region.center.x, region.center.y)
    assert 0 < d < 1e-3
    for p in pos.values():
        assert math.hypot(p.x - region.center.x, p.y - region.center.y) <= region.radius


def test_displacement_map_values():
    r = 10.0
    assert displaced_distance(2 * r, r) == 2 * r  # cutoff identity
    assert displaced_distance(r, r) == 1.5 * r
    assert displaced_distance(25.0, r) == 25.0  # beyond cutoff


def test_displacement_map_monotone_and_outside():
    r = 7.0
    ds = np.linspace(1e-9, 2 * r, 500)
    f = [displaced_distance(d, r) for d in ds]
    assert all(v > r for v in f)
    assert all(f[i] < f[i + 1] for i in range(len(f) - 1))
    moves = [v - d for v, d in zip(f, ds)]
    assert all(moves[i] > moves[i + 1] for i in range(len(moves) - 1))


def _random_state(rng, n=40):
    pos = {f"n{i}": Point(*rng.uniform(-100, 100, 2)) for i in range(n)}
    members = list(pos)[:6]
    return pos, cluster_of(*members)


def test_radial_displace_properties():
    rng = np.random.default_rng(23)
    for _ in range(20):
        pos, cluster = _random_state(rng)
        region = fit_region({m: pos[m] for m in cluster.members}, cluster)
        out = radial_displace(pos, region, cluster)
        c = region.center
        before, after = {}, {}
        for node in pos:
            if node in cluster.members:
                assert out[node] == pos[node]
                continue
            before[node] = math.hypot(pos[node].x - c.x, pos[node].y - c.y)
            after[node] = math.hypot(out[node].x - c.x, out[node].y - c.y)
            # strictly outside the disk
            assert after[node] > region.radius
            # angle unchanged
            a0 = math.atan2(pos[node].y - c.y, pos[node].x - c.x)
            a1 = math.atan2(out[node].y - c.y, out[node].x - c.x)
            assert abs(a0 - a1) < 1e-12
        # radial order preserved
        order_before = sorted(before, key=lambda n: before[n])
        order_after = sorted(after, key=lambda n: after[n])
        assert order_before == order_after
        assert is_circularly_separable(out, region, cluster)


def test_same_ray_order_preserved():
    pos = {
        "m1": Point(-1.0, 0.0), "m2": Point(1.0, 0.0),
        "close": Point(0.5, 0.0), "far": Point(1.5, 0.0),
    }
    cluster = cluster_of("m1", "m2")
    region = fit_region({m: pos[m] for m in cluster.members}, cluster)
    out = radial_displace(pos, region, cluster)
    d_close = math.hypot(out["close"].x - region.center.x, out["close"].y - region.center.y)
    d_far = math.hypot(out["far"].x - region.center.x, out["far"].y - region.center.y)
    assert d_close < d_far


def test_node_exactly_on_center_escapes():
    pos = {"m1": Point(-1.0, 0.0), "m2": Point(1.0, 0.0), "x": Point(0.0, 0.0)}
    cluster = cluster_of("m1", "m2")
    region = fit_region({m: pos[m] for m in cluster.members}, cluster)
    assert (region.center.x, region.center.y) == (0.0, 0.0)
    out = radial_displace(pos, region, cluster)
    d = math.hypot(out["x"].x, out["x"].y)
    assert d > region.radius
