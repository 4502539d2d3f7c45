import math

import pytest

import p3ptoroids as p3p

AXIS = [0.5, math.sqrt(3) / 6, 1.0]


def test_triangle():
    tri = p3p.Triangle(3, 4, 5)
    assert tri.angle_c == pytest.approx(math.pi / 2)
    with pytest.raises(p3p.P3PError) as info:
        p3p.Triangle(1, 1, 2)
    assert info.value.args[1] == "DegenerateTriangle"


def test_quartic_and_roots():
    tri = p3p.Triangle(1, 1, 1)
    ang = p3p.subtended_angles(AXIS, tri)
    assert ang.alpha == pytest.approx(math.acos(0.625))
    a4, a3, a2, a1, a0 = p3p.grunert_coefficients(tri, ang)
    assert a4 == pytest.approx(-0.5625)
    assert a0 == pytest.approx(-0.5625)
    roots = p3p.real_roots([24, -50, 35, -10, 1])
    assert [r[0] for r in roots] == pytest.approx([1, 2, 3, 4])


def test_solve():
    tri = p3p.Triangle(1, 1, 1)
    rep = p3p.solve(tri, p3p.subtended_angles(AXIS, tri))
    assert rep["n_solutions"] in (1, 2, 3, 4)
    depths = [(t["s1"], t["s2"], t["s3"]) for t in rep["triplets"] if t["class"] == "Solution"]
    assert any(all(abs(s - 2 / math.sqrt(3)) < 1e-9 for s in d) for d in depths)


def test_region_and_excess():
    tri = p3p.Triangle(1, 1, 1)
    assert p3p.classify_region(AXIS, tri)["outside_union"]
    cc = [0.5, math.sqrt(3) / 6, 0.0]
    assert p3p.toroid_signed_excess(cc, tri, "TA") == pytest.approx(math.pi / 3)


def test_oracle_matches():
    tri = p3p.Triangle(1.2, 0.9, 1.1)
    ang = p3p.subtended_angles([0.31, 0.52, 0.83], tri)
    rep = p3p.oracle(tri, ang, grid=256)
    assert rep["match"]
    assert rep["solver_count"] == rep["oracle_count"]


def test_sweep_and_verify():
    tri = p3p.Triangle(1, 1, 1)
    res = p3p.sweep(tri, [0.914, 1.067, 0.630], [0.909, 0.905, 0.513])
    assert [e["verdict"] for e in res["events"]] == ["ConsistentThm4"]
    rep = p3p.verify(tri, 1, trials=200)
    assert rep["violations"] == 0
    assert rep["trials"] == 200
    acute = p3p.make_triangle("acute", 2)
    assert p3p.verify(acute, "lemmas", 100, seed=3) == p3p.verify(acute, "lemmas", 100, seed=3)
