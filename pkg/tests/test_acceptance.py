"""Acceptance gate: ten end-to-end criteria, one verdict line each.

Every test prints "[acceptance] PASS/FAIL criterion N: ..." even under
pytest capture, then asserts.  Seeds are fixed, so a green run is stable.
"""

import json
import math
import time
from fractions import Fraction
from itertools import product as iproduct

import numpy as np

from witnesskit.cli import main
from witnesskit.cycles import (
    CycleClass,
    DegreeVector,
    builtin_basis,
    class_from_degrees,
    intersect_classes,
)
from witnesskit.grassmann import (
    Line,
    SchubertIndex,
    SchubertPoset,
    flag_to_dict,
    line_in_schubert,
    lines_on_quadric_witness,
    lines_on_two_quadrics,
    pluecker_distance,
    pluecker_relations_residual,
    quadric_to_dict,
    random_flag,
    random_quadric,
    schubert_dual,
    schubert_membership,
    schubert_pair_intersection_count,
    schubert_sample,
    schubert_witness_move,
)
from witnesskit.polysys import Polynomial, PolySystem, variables
from witnesskit.seeding import complex_gaussian, subsystem_rng
from witnesskit.solver import ALPHA_THRESHOLD, newton_update_norms, solve_total_degree
from witnesskit.witness import (
    product_witness,
    random_slice,
    witness_compute,
    witness_membership,
    witness_move,
    witness_sample,
)

MAX_RANK = 6


def _criterion(capsys, num: int, label: str, body) -> None:
    try:
        body()
    except BaseException as exc:
        with capsys.disabled():
            print(f"[acceptance] FAIL criterion {num}: {label} ({type(exc).__name__}: {exc})")
        raise
    with capsys.disabled():
        print(f"[acceptance] PASS criterion {num}: {label}")


def _point_residual(ws, point) -> float:
    vals = np.concatenate([ws.system.evaluate(point), ws.slice.evaluate(point)])
    return float(np.linalg.norm(vals))


def _match_point_sets(first, second, tol: float) -> None:
    assert len(first) == len(second)
    for p in first:
        assert min(np.linalg.norm(p - q) for q in second) < tol


def _match_line_sets(first, second, tol: float) -> None:
    assert len(first) == len(second)
    for a in first:
        assert min(pluecker_distance(a, b) for b in second) < tol


def test_criterion_01_four_witness_lines(capsys):
    def body():
        for k in range(10):
            rng = subsystem_rng(1000 + k, "acceptance.quadric")
            quadric = random_quadric(rng)
            flag = random_flag(rng)
            started = time.perf_counter()
            ws = lines_on_quadric_witness(quadric, flag, seed=1000 + k)
            assert time.perf_counter() - started < 5.0
            assert len(ws.w13) == 4
            assert len(ws.w04) == 0
            for line in ws.w13:
                assert quadric.line_residual(line) < 1e-8
                assert pluecker_relations_residual(line.pluecker) < 1e-8
                assert line_in_schubert(line, SchubertIndex(1, 3), flag, tol=1e-6)

    _criterion(capsys, 1, "four witness lines on 10 random smooth quadrics", body)


def test_criterion_02_sixteen_lines(capsys):
    def body():
        for k in range(5):
            rng = subsystem_rng(2000 + k, "acceptance.pair")
            q1 = random_quadric(rng)
            q2 = random_quadric(rng)
            started = time.perf_counter()
            lines = lines_on_two_quadrics(q1, q2, seed=2000 + k)
            assert time.perf_counter() - started < 30.0
            assert len(lines) == 16
            for i in range(16):
                for j in range(i + 1, 16):
                    assert pluecker_distance(lines[i], lines[j]) > 1e-6

            ws1 = lines_on_quadric_witness(q1, random_flag(rng), seed=2100 + k)
            ws2 = lines_on_quadric_witness(q2, random_flag(rng), seed=2200 + k)
            for i, line in enumerate(lines):
                assert schubert_membership(ws1, line, seed=2300 + 31 * k + i)
                assert schubert_membership(ws2, line, seed=2400 + 31 * k + i)

    _criterion(capsys, 2, "16 lines on 5 random quadric pairs, members of both", body)


def test_criterion_03_class_recovery(capsys):
    def body():
        _, blowup = builtin_basis("blowup-p2")
        cls = class_from_degrees(blowup[1], DegreeVector(grade=1, degrees=(0, -1)))
        assert cls.coeffs == (Fraction(0), Fraction(1))

        g14, mats = builtin_basis("g14")
        quad = class_from_degrees(mats[3], DegreeVector(grade=3, degrees=(4, 0)))
        assert quad.coeffs == (Fraction(4), Fraction(0))

        square = intersect_classes(g14, quad, quad)
        assert square.grade == 0
        assert square.coeffs == (Fraction(16),)

    _criterion(capsys, 3, "exact class recovery: (0,1), 4[X13], square 16[X01]", body)


def test_criterion_04_duality(capsys):
    def body():
        poset = SchubertPoset()
        assert len(poset.elements) == 10
        for idx in poset.elements:
            dual = schubert_dual(idx)
            assert schubert_dual(dual) == idx
            assert idx.rank + dual.rank == MAX_RANK

        x13 = SchubertIndex(1, 3)
        x04 = SchubertIndex(0, 4)
        for k in range(5):
            rng = subsystem_rng(4000 + k, "acceptance.duality")
            flag_g = random_flag(rng)
            flag_h = random_flag(rng)
            for alpha, beta in iproduct((x13, x04), repeat=2):
                count = schubert_pair_intersection_count(
                    alpha, flag_g, beta, flag_h, seed=4000 + k, tol=1e-6
                )
                expected = 1 if beta == schubert_dual(alpha) else 0
                assert count == expected

    _criterion(capsys, 4, "dual involution plus numerical grade-3 duality", body)


def test_criterion_05_move_invariance(capsys):
    def body():
        x, y = variables(2)
        circle = PolySystem([x**2 + y**2 - 1])
        u, v, w = variables(3)
        cubic = PolySystem([v - u**2, w - u**3])
        for tag, system, dim, degree in (
            ("circle", circle, 1, 2),
            ("cubic", cubic, 1, 3),
        ):
            ws = witness_compute(system, dim=dim, seed=50)
            assert ws.degree == degree, tag
            rng = subsystem_rng(51, "acceptance.move." + tag)
            current = ws
            for step in range(10):
                target = random_slice(system.num_vars, dim, rng)
                current = witness_move(current, target, seed=500 + step)
                assert current.degree == degree
                for p in current.points:
                    assert _point_residual(current, p) < 1e-8
            away = witness_move(ws, random_slice(system.num_vars, dim, rng), seed=77)
            back = witness_move(away, ws.slice, seed=78)
            _match_point_sets(back.points, ws.points, 1e-6)

        rng = subsystem_rng(52, "acceptance.move.lines")
        quadric = random_quadric(rng)
        ws = lines_on_quadric_witness(quadric, random_flag(rng), seed=52)
        current = ws
        for step in range(10):
            current = schubert_witness_move(current, random_flag(rng), seed=520 + step)
            assert len(current.w13) == 4 and len(current.w04) == 0
            for line in current.w13:
                assert quadric.line_residual(line) < 1e-8
        away = schubert_witness_move(ws, random_flag(rng), seed=530)
        back = schubert_witness_move(away, ws.flag, seed=531)
        _match_line_sets(back.w13, ws.w13, 1e-6)

    _criterion(capsys, 5, "10 moves preserve witness sets; round trips return", body)


def test_criterion_06_membership(capsys):
    def body():
        x, y = variables(2)
        ws_circle = witness_compute(PolySystem([x**2 + y**2 - 1]), dim=1, seed=60)
        u, v, w = variables(3)
        ws_cubic = witness_compute(PolySystem([v - u**2, w - u**3]), dim=1, seed=61)
        rng = subsystem_rng(62, "acceptance.membership")
        ws_lines = lines_on_quadric_witness(
            random_quadric(rng), random_flag(rng), seed=62
        )

        for k in range(20):
            p = witness_sample(ws_circle, seed=600 + k)
            assert witness_membership(ws_circle, p, seed=700 + k) is True
        for k in range(20):
            p = witness_sample(ws_cubic, seed=600 + k)
            assert witness_membership(ws_cubic, p, seed=700 + k) is True
        for k in range(10):
            line = schubert_sample(ws_lines, seed=600 + k)
            assert schubert_membership(ws_lines, line, seed=700 + k) is True

        off = 0
        while off < 20:
            p = complex_gaussian(rng, (2,))
            if abs(p[0] ** 2 + p[1] ** 2 - 1) < 1e-3:
                continue
            assert witness_membership(ws_circle, p, seed=800 + off) is False
            off += 1
        off = 0
        while off < 20:
            p = complex_gaussian(rng, (3,))
            if np.linalg.norm(ws_cubic.system.evaluate(p)) < 1e-3:
                continue
            assert witness_membership(ws_cubic, p, seed=830 + off) is False
            off += 1
        off = 0
        while off < 10:
            line = Line(complex_gaussian(rng, (2, 5)))
            if ws_lines.quadric.line_residual(line) < 1e-3:
                continue
            assert schubert_membership(ws_lines, line, seed=860 + off) is False
            off += 1

    _criterion(capsys, 6, "membership: 50 samples true, 50 off-variety false", body)


def _random_dense_system(num_vars: int, degrees, rng) -> PolySystem:
    polys = []
    for d in degrees:
        terms = []
        for expo in iproduct(range(d + 1), repeat=num_vars):
            if sum(expo) <= d:
                terms.append((expo, complex(complex_gaussian(rng, ()))))
        polys.append(Polynomial(num_vars, terms))
    return PolySystem(polys)


def test_criterion_07_bezout_certification(capsys):
    def body():
        rng = subsystem_rng(7000, "acceptance.dense")
        for k in range(10):
            num_vars = int(rng.integers(1, 4))
            degrees = [int(rng.integers(2, 4)) for _ in range(num_vars)]
            system = _random_dense_system(num_vars, degrees, rng)
            result = solve_total_degree(system, seed=7000 + k)
            assert len(result.solutions) == math.prod(degrees)
            for sol in result.solutions:
                assert sol.multiplicity == 1
                assert sol.certificate.certified
                assert sol.certificate.alpha < ALPHA_THRESHOLD
                scale = max(1.0, float(np.linalg.norm(sol.point)))
                norms = newton_update_norms(system, sol.point, 3)
                assert norms[0] < 1e-8 * scale
                for a, b in zip(norms, norms[1:]):
                    assert b <= max(a * (1.0 + 1e-6), 1e-11 * scale)

    _criterion(capsys, 7, "Bezout counts certified on 10 random dense systems", body)


def test_criterion_08_quadratic_convergence(capsys):
    def body():
        x, = variables(1)
        system = PolySystem([x**2 - 2])
        norms = newton_update_norms(system, [1.5], 4)
        assert norms[0] < 0.1
        checked = 0
        for a, b in zip(norms, norms[1:]):
            if a < 0.1:
                assert b <= a * a * (1.0 + 1e-6)
                checked += 1
        assert checked == 3

    _criterion(capsys, 8, "Newton updates square at each step on x^2-2", body)


def test_criterion_09_bidegrees(capsys):
    def body():
        x, y = variables(2)
        diagonal = product_witness(PolySystem([x - y]), (1, 1), dim=1, seed=90)
        assert {k: ws.degree for k, ws in diagonal.items()} == {(1, 0): 1, (0, 1): 1}
        parabola = product_witness(PolySystem([y - x**2]), (1, 1), dim=1, seed=91)
        assert {k: ws.degree for k, ws in parabola.items()} == {(1, 0): 1, (0, 1): 2}

    _criterion(capsys, 9, "bidegrees: diagonal (1,1), parabola graph (1,2)", body)


def test_criterion_10_determinism(capsys, tmp_path):
    def body():
        rng = subsystem_rng(10000, "acceptance.repeat")
        qpath = tmp_path / "q.json"
        qpath.write_text(json.dumps(quadric_to_dict(random_quadric(rng))))
        q2path = tmp_path / "q2.json"
        q2path.write_text(json.dumps(quadric_to_dict(random_quadric(rng))))
        fpath = tmp_path / "f.json"
        fpath.write_text(json.dumps(flag_to_dict(random_flag(rng))))

        runs = []
        for rep in range(2):
            out = tmp_path / f"witness_{rep}.json"
            code = main(
                ["grassmann", "witness", "--quadric", str(qpath),
                 "--flag", str(fpath), "--seed", "77", "--output", str(out)]
            )
            assert code == 0
            runs.append(out.read_bytes())
        assert runs[0] == runs[1]

        runs = []
        for rep in range(2):
            out = tmp_path / f"quartic_{rep}.json"
            code = main(
                ["grassmann", "quartic-lines", "--q1", str(qpath),
                 "--q2", str(q2path), "--seed", "78", "--output", str(out)]
            )
            assert code == 0
            runs.append(out.read_bytes())
        assert runs[0] == runs[1]

    _criterion(capsys, 10, "same-seed reruns give identical JSON payloads", body)
