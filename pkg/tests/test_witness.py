"""Classical witness sets: compute, move, sample, membership, bidegrees."""

import numpy as np
import pytest

from witnesskit.errors import DimensionMismatch, Inconclusive
from witnesskit.polysys import PolySystem, variables
from witnesskit.seeding import subsystem_rng
from witnesskit.witness import (
    LinearSlice,
    WitnessSet,
    product_witness,
    random_slice,
    slice_through_point,
    witness_compute,
    witness_from_dict,
    witness_membership,
    witness_move,
    witness_sample,
    witness_to_dict,
)


def circle_system() -> PolySystem:
    x, y = variables(2)
    return PolySystem([x**2 + y**2 - 1])


def sphere_system() -> PolySystem:
    x, y, z = variables(3)
    return PolySystem([x**2 + y**2 + z**2 - 1])


def twisted_cubic_system() -> PolySystem:
    # the curve (t, t^2, t^3)
    x, y, z = variables(3)
    return PolySystem([y - x**2, z - x**3])


def on_variety_residual(ws: WitnessSet) -> float:
    worst = 0.0
    for p in ws.points:
        worst = max(worst, float(np.linalg.norm(ws.system.evaluate(p))))
        worst = max(worst, float(np.linalg.norm(ws.slice.evaluate(p))))
    return worst


def test_linear_slice_validation():
    with pytest.raises(DimensionMismatch):
        LinearSlice(np.array([[1.0, 1.0, 1.0], [2.0, 2.0, 2.0]]))
    with pytest.raises(DimensionMismatch):
        LinearSlice(np.zeros((3, 3)))
    slc = LinearSlice(np.array([[1.0, 2.0, 0.0]]))
    assert slc.codim == 1 and slc.num_vars == 2
    assert slc.evaluate([3.0, 5.0])[0] == pytest.approx(7.0)


def test_slice_polynomials_match_evaluate():
    rng = subsystem_rng(4, "test.slice")
    slc = random_slice(3, 2, rng)
    pt = np.array([0.3 + 0.1j, -0.7, 0.2 - 0.4j])
    direct = slc.evaluate(pt)
    via_polys = np.array([p.evaluate(pt) for p in slc.polynomials()])
    np.testing.assert_allclose(direct, via_polys, atol=1e-14)


def test_slice_through_point_vanishes_there():
    rng = subsystem_rng(8, "test.slice2")
    pt = np.array([1.5, -2.0 + 1j, 0.25])
    slc = slice_through_point(3, 2, pt, rng)
    np.testing.assert_allclose(slc.evaluate(pt), 0, atol=1e-12)


def test_circle_witness_degree_two():
    ws = witness_compute(circle_system(), dim=1, seed=2)
    assert ws.degree == 2
    assert on_variety_residual(ws) < 1e-8
    assert all(c.certified for c in ws.certificates)


def test_sphere_witness_degree_two():
    ws = witness_compute(sphere_system(), dim=2, seed=5)
    assert ws.degree == 2
    assert on_variety_residual(ws) < 1e-8


def test_twisted_cubic_witness_degree_three():
    ws = witness_compute(twisted_cubic_system(), dim=1, seed=3)
    assert ws.degree == 3
    assert on_variety_residual(ws) < 1e-8


def test_dim_zero_witness_is_plain_solve():
    x, y = variables(2)
    ws = witness_compute(PolySystem([x**2 + y**2 - 1, x - y]), dim=0, seed=6)
    assert ws.degree == 2
    assert ws.slice.codim == 0


def test_wrong_dimension_raises():
    x, y = variables(2)
    zero_dim = PolySystem([x**2 + y**2 - 1, x - y])
    with pytest.raises(DimensionMismatch):
        witness_compute(zero_dim, dim=1, seed=1)
    with pytest.raises(DimensionMismatch):
        witness_compute(circle_system(), dim=2, seed=1)


def test_move_preserves_cardinality_and_residual():
    ws = witness_compute(circle_system(), dim=1, seed=2)
    rng = subsystem_rng(10, "test.move")
    current = ws
    for _ in range(5):
        target = random_slice(2, 1, rng)
        current = witness_move(current, target, seed=int(rng.integers(1 << 30)))
        assert current.degree == 2
        assert on_variety_residual(current) < 1e-8


def test_move_round_trip_returns_same_set():
    ws = witness_compute(twisted_cubic_system(), dim=1, seed=3)
    rng = subsystem_rng(11, "test.roundtrip")
    away = witness_move(ws, random_slice(3, 1, rng), seed=21)
    back = witness_move(away, ws.slice, seed=22)
    assert back.degree == ws.degree
    for p in ws.points:
        nearest = min(float(np.linalg.norm(q - p)) for q in back.points)
        assert nearest < 1e-6


def test_move_rejects_mismatched_slice():
    ws = witness_compute(circle_system(), dim=1, seed=2)
    rng = subsystem_rng(12, "test.badslice")
    with pytest.raises(DimensionMismatch):
        witness_move(ws, random_slice(3, 1, rng), seed=1)


def test_sample_lies_on_variety():
    ws = witness_compute(sphere_system(), dim=2, seed=5)
    for seed in (1, 2, 3):
        p = witness_sample(ws, seed=seed)
        assert float(np.linalg.norm(ws.system.evaluate(p))) < 1e-8


def test_membership_true_false():
    ws = witness_compute(circle_system(), dim=1, seed=2)
    assert witness_membership(ws, [0.6, 0.8], seed=1) is True
    assert witness_membership(ws, [1.0j, 0.0], seed=2) is False
    assert witness_membership(ws, [3.0, 4.0], seed=3) is False
    on_curve = np.array([0.5 + 0.25j, (0.5 + 0.25j) ** 2, (0.5 + 0.25j) ** 3])
    ws3 = witness_compute(twisted_cubic_system(), dim=1, seed=3)
    assert witness_membership(ws3, on_curve, seed=4) is True


def test_membership_ambiguous_band_is_inconclusive():
    # a point a few microunits off the circle lands between match_tol and
    # 10 match_tol for this draw
    ws = witness_compute(circle_system(), dim=1, seed=2)
    off = np.array([0.6, 0.8]) * (1.0 + 3e-6)
    with pytest.raises(Inconclusive):
        witness_membership(ws, off, seed=0)


def test_membership_point_shape_checked():
    ws = witness_compute(circle_system(), dim=1, seed=2)
    with pytest.raises(DimensionMismatch):
        witness_membership(ws, [1.0, 2.0, 3.0], seed=1)


def test_product_bidegrees_diagonal():
    x, y = variables(2)
    diag = PolySystem([x - y])
    sets = product_witness(diag, (1, 1), dim=1, seed=4)
    assert set(sets) == {(1, 0), (0, 1)}
    assert sets[(1, 0)].degree == 1
    assert sets[(0, 1)].degree == 1


def test_product_bidegrees_parabola_graph():
    x, y = variables(2)
    graph = PolySystem([y - x**2])
    sets = product_witness(graph, (1, 1), dim=1, seed=4)
    assert sets[(1, 0)].degree == 1
    assert sets[(0, 1)].degree == 2


def test_product_block_validation():
    x, y = variables(2)
    with pytest.raises(DimensionMismatch):
        product_witness(PolySystem([x - y]), (1, 2), dim=1, seed=1)
    with pytest.raises(DimensionMismatch):
        product_witness(PolySystem([x - y]), (1, 1), dim=2, seed=1)


def test_witness_json_round_trip():
    ws = witness_compute(circle_system(), dim=1, seed=2)
    data = witness_to_dict(ws)
    assert sorted(data) == ["dim", "points", "slice", "system"]
    back = witness_from_dict(data)
    assert back.degree == ws.degree
    assert back.system == ws.system
    np.testing.assert_allclose(back.slice.forms, ws.slice.forms)
    for p, q in zip(ws.points, back.points):
        np.testing.assert_allclose(p, q)
    assert back.certificates is None


def test_witness_from_dict_rejects_malformed():
    ws = witness_compute(circle_system(), dim=1, seed=2)
    data = witness_to_dict(ws)
    broken = dict(data)
    del broken["points"]
    with pytest.raises(DimensionMismatch):
        witness_from_dict(broken)


def test_witness_set_shape_validation():
    system = circle_system()
    slc = LinearSlice(np.array([[1.0, 1.0, 1.0]]))
    with pytest.raises(DimensionMismatch):
        WitnessSet(system=system, dim=0, slice=slc, points=())
    with pytest.raises(DimensionMismatch):
        WitnessSet(
            system=system, dim=1, slice=slc, points=(np.array([1.0 + 0j]),)
        )


def test_moves_are_deterministic():
    ws = witness_compute(circle_system(), dim=1, seed=2)
    rng = subsystem_rng(13, "test.det")
    target = random_slice(2, 1, rng)
    a = witness_move(ws, target, seed=17)
    b = witness_move(ws, target, seed=17)
    for p, q in zip(a.points, b.points):
        assert np.array_equal(p, q)
