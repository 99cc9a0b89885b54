import itertools
import random
from fractions import Fraction

import numpy as np
import pytest

from eag import hyperfermat as hf
from eag.cx import DEFAULT_TOL, GaussianRational, Mobius, ProjPoint, cross_ratio
from eag.errors import PreconditionError
from eag.surfaces import Signature, riemann_hurwitz_genus


def _rand_fractions(rng, count, lo=-30, hi=30, maxden=9):
    out = []
    while len(out) < count:
        f = Fraction(rng.randint(lo, hi), rng.randint(1, maxden))
        if f not in out:
            out.append(f)
    return out


def test_gaussian_rational_arithmetic():
    a = GaussianRational(Fraction(1, 2), Fraction(3))
    b = GaussianRational(Fraction(2), Fraction(-1))
    assert (a + b) - b == a
    assert (a * b) / b == a
    assert a * a.conjugate() == GaussianRational(a.norm2())
    assert (a ** 3) == a * a * a
    assert complex(GaussianRational(Fraction(1), Fraction(2))) == 1 + 2j


def test_vandermonde_line_shapes():
    row = hf.vandermonde_line([0, 1, 7]).rows
    assert len(row) == 1 and all(x == GaussianRational.of(1) for x in row[0])
    rows = hf.vandermonde_line([0, 1, 2, 3]).rows
    assert [complex(x).real for x in rows[0]] == [1, 1, 1, 1]
    assert [complex(x).real for x in rows[1]] == [0, 1, 2, 3]
    with pytest.raises(PreconditionError):
        hf.vandermonde_line([0, 1, 1, 3])


def test_vandermonde_always_generic_with_det_oracle():
    rng = random.Random(13)
    for n in (2, 3, 4, 5, 6):
        w = _rand_fractions(rng, n + 1)
        line = hf.vandermonde_line(w)
        assert hf.is_generic_line(line)
        # oracle: every two-column deletion is a square Vandermonde matrix,
        # whose determinant is the product of the differences
        for drop in itertools.combinations(range(n + 1), 2):
            keep = [j for j in range(n + 1) if j not in drop]
            sub = [[line.rows[i][j] for j in keep] for i in range(n - 1)]
            det, _ = hf._det(sub, True, DEFAULT_TOL)
            want = GaussianRational.of(1)
            for a, b in itertools.combinations(keep, 2):
                want = want * GaussianRational.of(w[b] - w[a])
            assert det == want


def test_is_generic_line_examples():
    assert hf.is_generic_line(hf.LineMatrix.of([[1, 1, 1]]))
    assert not hf.is_generic_line(hf.LineMatrix.of([[1, 1, 0]]))
    assert not hf.is_generic_line(hf.LineMatrix.of([[1, 1, 1, 1], [0, 0, 1, 1]]))


def test_hyper_fermat_genus_values():
    assert hf.hyper_fermat_genus(3, 2) == 1
    assert hf.hyper_fermat_genus(5, 2) == 6 == Fraction((5 - 1) * (5 - 2), 2)
    assert hf.hyper_fermat_genus(2, 2) == 0


def test_hyper_fermat_genus_matches_riemann_hurwitz():
    for p in (2, 3, 5, 7, 11, 13):
        for n in range(2, 9):
            assert hf.hyper_fermat_genus(p, n) == \
                riemann_hurwitz_genus(p ** n, Signature(0, (p,) * (n + 1)))


def test_intersection_points_small_case():
    q = hf.intersection_points(hf.LineMatrix.of([[1, 1, 1]]))
    assert q[0] == [GaussianRational.of(0), GaussianRational.of(1),
                    GaussianRational.of(-1)]
    for i in range(3):
        assert q[i][i] == GaussianRational.of(0)


def test_intersection_points_properties():
    rng = random.Random(29)
    for n in (3, 4, 5):
        w = _rand_fractions(rng, n + 1)
        line = hf.vandermonde_line(w)
        q = hf.intersection_points(line)
        for i in range(n + 1):
            assert q[i][i].is_zero()
            for row in line.rows:
                total = GaussianRational.of(0)
                for c, x in zip(row, q[i]):
                    total = total + c * x
                assert total.is_zero()
            for j in range(n + 1):
                if j != i:
                    assert not q[i][j].is_zero()


def test_intersection_points_match_product_formula():
    # for power-row lines, Q_i(j) is proportional to
    # prod_{k != i, j} (w_j - w_k)^(-1)
    rng = random.Random(31)
    for n in (3, 4):
        w = _rand_fractions(rng, n + 1)
        line = hf.vandermonde_line(w)
        q = hf.intersection_points(line)
        for i in range(n + 1):
            ratios = set()
            for j in range(n + 1):
                if j == i:
                    continue
                formula = GaussianRational.of(1)
                for k in range(n + 1):
                    if k not in (i, j):
                        formula = formula / GaussianRational.of(w[j] - w[k])
                ratios.add(q[i][j] / formula)
            assert len(ratios) == 1   # proportional with one common scale


def test_branch_points_vandermonde_identity_exact():
    rng = random.Random(37)
    for n in (3, 4, 5):
        w = _rand_fractions(rng, n + 1)
        bs = hf.branch_points(hf.vandermonde_line(w), (w[0], w[1], w[2]))
        for pt, wi in zip(bs.points, w):
            assert pt.same_point(ProjPoint.finite(wi))


def test_branch_points_vandermonde_identity_float():
    rng = random.Random(41)
    for n in (3, 4, 5):
        w = [float(f) for f in _rand_fractions(rng, n + 1)]
        bs = hf.branch_points(hf.vandermonde_line(w), (w[0], w[1], w[2]))
        for pt, wi in zip(bs.points, w):
            assert abs(pt.value() - wi) <= 1e-9 * max(1.0, abs(wi))


def test_branch_points_infinite_pin_formula():
    # with pins (0, 1, inf) the parameters become -d_i c_2 / (c_i d_2 - d_i c_2)
    rng = random.Random(43)
    for n in (3, 4):
        w = _rand_fractions(rng, n + 1)
        line = hf.vandermonde_line(w)
        bs = hf.branch_points(line, (0, 1, "inf"))
        q = hf.intersection_points(line)
        c2, d2 = q[2][1] / q[0][1], q[2][0] / q[1][0]
        for i in range(3, n + 1):
            ci, di = q[i][1] / q[0][1], q[i][0] / q[1][0]
            version = (-1 * di * c2) / (ci * d2 - di * c2)
            assert bs.points[i].same_point(ProjPoint.finite(version))


def test_branch_points_u1_formula():
    # u1 = c2 (l0 - l2) / (d2 (l2 - l1)) for the reported c2, d2; with the
    # product-formula scaling of the intersection points it collapses to 1
    rng = random.Random(47)
    w = _rand_fractions(rng, 5)
    line = hf.vandermonde_line(w)
    bs = hf.branch_points(line, (w[0], w[1], w[2]))
    q = hf.intersection_points(line)
    c2, d2 = q[2][1] / q[0][1], q[2][0] / q[1][0]
    want = (c2 * GaussianRational.of(w[0] - w[2])) / \
           (d2 * GaussianRational.of(w[2] - w[1]))
    assert bs.u1.same_point(ProjPoint.finite(want))
    # the worked-example normalisation: c2 and d2 from the product formula
    c2p = GaussianRational.of((w[1] - w[2]) / (w[1] - w[0]))
    d2p = GaussianRational.of((w[0] - w[2]) / (w[0] - w[1]))
    u1p = (c2p * GaussianRational.of(w[0] - w[2])) / \
          (d2p * GaussianRational.of(w[2] - w[1]))
    assert u1p == GaussianRational.of(1)


def test_branch_points_pin_equivariance():
    rng = random.Random(53)
    for _ in range(10):
        w = _rand_fractions(rng, 5)
        line = hf.vandermonde_line(w)
        base = hf.branch_points(line, (w[0], w[1], w[2]))
        a, b, c, d = (Fraction(rng.randint(-5, 5)) for _ in range(4))
        if a * d - b * c == 0:
            continue
        mob = Mobius(GaussianRational.of(a), GaussianRational.of(b),
                     GaussianRational.of(c), GaussianRational.of(d))
        moved_pins = [mob.apply(pt) for pt in base.pins]
        if len({(str(p)) for p in moved_pins}) < 3:
            continue
        moved = hf.branch_points(line, tuple(moved_pins))
        for got, orig in zip(moved.points, base.points):
            assert got.same_point(mob.apply(orig))


def test_normalized_invariants_dimension():
    rng = random.Random(59)
    for n in (3, 4, 5, 6):
        w = _rand_fractions(rng, n + 1)
        bs = hf.branch_points(hf.vandermonde_line(w), (w[0], w[1], w[2]))
        assert len(bs.normalized_invariants()) == n - 2


def test_residue_identity_examples():
    assert hf.residue_identity_check([0, 1, 2], 0) == 0
    assert hf.residue_identity_check([Fraction(0), Fraction(1), Fraction(2),
                                      Fraction(3)], 1) == 0
    # negative control: s = n - 1 gives the residue at infinity, exactly 1
    assert hf.residue_identity_check([0, 1, 2, 3], 2) == 1


def test_residue_identity_random_exact():
    rng = random.Random(61)
    for _ in range(30):
        n = rng.randint(2, 8)
        w = _rand_fractions(rng, n + 1)
        for s in range(0, n - 1):
            assert hf.residue_identity_check(w, s) == 0
        assert hf.residue_identity_check(w, n - 1) != 0


def test_residue_identity_float():
    rng = random.Random(67)
    for _ in range(20):
        n = rng.randint(2, 6)
        w = [complex(rng.gauss(0, 2), rng.gauss(0, 2)) for _ in range(n + 1)]
        for s in range(0, n - 1):
            assert hf.residue_identity_check(w, s) <= 1e-10


def _quadruple(lam):
    pts = (ProjPoint.finite(Fraction(0)), ProjPoint.finite(Fraction(1)),
           ProjPoint.infinity(), ProjPoint.finite(Fraction(lam)))
    return hf.BranchSet(pts, pts[:3], (0, 1, 2), ProjPoint.finite(1), True,
                        DEFAULT_TOL)


def test_moduli_equivalent_cross_ratio_classes():
    # the six-element orbit of lambda = 2 is {2, 1/2, -1}
    assert hf.moduli_equivalent(_quadruple(2), _quadruple(Fraction(1, 2)))
    assert hf.moduli_equivalent(_quadruple(2), _quadruple(-1))
    assert not hf.moduli_equivalent(_quadruple(2), _quadruple(3))
    assert not hf.moduli_equivalent(_quadruple(2), _quadruple(Fraction(5, 7)))


def test_moduli_equivalent_triples_always():
    t1 = hf.branch_points(hf.vandermonde_line([0, 1, 5]), (0, 1, 5))
    t2 = hf.branch_points(hf.vandermonde_line([2, 3, 9]), (2, 3, 9))
    assert hf.moduli_equivalent(t1, t2)


def test_moduli_equivalent_properties():
    rng = random.Random(71)
    for _ in range(15):
        n = rng.choice((3, 4))
        w = _rand_fractions(rng, n + 1)
        b1 = hf.branch_points(hf.vandermonde_line(w), (w[0], w[1], w[2]))
        assert hf.moduli_equivalent(b1, b1)
        a, b, c, d = (Fraction(rng.randint(-6, 6)) for _ in range(4))
        if a * d - b * c == 0:
            continue
        mob = Mobius(*(GaussianRational.of(x) for x in (a, b, c, d)))
        moved_pts = tuple(mob.apply(pt) for pt in b1.points)
        b2 = hf.BranchSet(moved_pts, moved_pts[:3], (0, 1, 2),
                          ProjPoint.finite(1), True, DEFAULT_TOL)
        assert hf.moduli_equivalent(b1, b2)
        assert hf.moduli_equivalent(b2, b1)


def test_smoothness_sampling_fermat_quintic():
    spec = hf.HyperFermatSpec(5, 2, hf.LineMatrix.of([[1, 1, 1]]))
    report = hf.sample_and_check_smoothness(spec, count=100, seed=3)
    assert report.passed
    assert report.samples == 100
    assert report.min_jacobian_rank == 1
    assert report.max_equation_residual < 1e-9
    assert report.max_minor_identity_error < 1e-9


def test_smoothness_sampling_higher_rank():
    spec = hf.HyperFermatSpec(3, 3, hf.vandermonde_line([0, 1, 2, 3]))
    report = hf.sample_and_check_smoothness(spec, count=40, seed=11)
    assert report.passed
    assert report.min_jacobian_rank == 2


def test_jacobian_rank_drop_on_non_generic_line():
    bad = hf.LineMatrix.of([[1, 1, 0, 0], [0, 0, 1, 1]])
    assert not hf.is_generic_line(bad)
    # the line hits x0 = x1 = 0; lifting that point onto the power cover
    # gives two zero coordinates and a rank-deficient gradient matrix
    degenerate = [1, -1, 0, 0]
    g = np.array(hf.power_map_jacobian(bad, 3, degenerate))
    assert np.linalg.matrix_rank(g) < 2


def test_hyper_fermat_spec_validates():
    with pytest.raises(PreconditionError):
        hf.HyperFermatSpec(4, 2, hf.LineMatrix.of([[1, 1, 1]]))
    with pytest.raises(PreconditionError):
        hf.HyperFermatSpec(3, 2, hf.LineMatrix.of([[1, 1, 0]]))
    spec = hf.HyperFermatSpec(3, 3, hf.vandermonde_line([0, 1, 2, 3]))
    assert spec.genus == hf.hyper_fermat_genus(3, 3)


def test_cross_ratio_helper():
    pts = [ProjPoint.finite(Fraction(x)) for x in (0, 1, 3)] + [ProjPoint.infinity()]
    cr = cross_ratio(pts[0], pts[1], pts[2], pts[3])
    # (0,1;3,inf) = (0-3)/(1-3) = 3/2
    assert cr.same_point(ProjPoint.finite(Fraction(3, 2)))
