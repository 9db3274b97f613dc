import random
from fractions import Fraction

import pytest

from frobdet.cyclotomic import CycNum
from frobdet.errors import (DimensionCap, ExactDivisionError, MissingVariable,
                            NotUnitriangular, ParseError, SingularP)
from frobdet.linalg import (cyc_det, cyc_matrix_inverse, int_det,
                            unitriangular_inverse)
from frobdet.poly import (LinForm, Poly, det_poly_matrix, divide_exact,
                          mono_cmp, parse_poly, poly_identity_test,
                          substitute_linear)


def x(i):
    return Poly.variable(i)


def test_monomial_order():
    # graded lex: degree first, then lex with x0 largest
    m_x0 = ((0, 1),)
    m_x1 = ((1, 1),)
    m_x0sq = ((0, 2),)
    m_x0x1 = ((0, 1), (1, 1))
    m_x1sq = ((1, 2),)
    assert mono_cmp(m_x0sq, m_x0) > 0
    assert mono_cmp(m_x0, m_x1) > 0
    assert mono_cmp(m_x0sq, m_x0x1) > 0
    assert mono_cmp(m_x0x1, m_x1sq) > 0
    assert mono_cmp(m_x1, m_x1) == 0


def test_poly_arithmetic():
    p = (x(0) + x(1)) * (x(0) - x(1))
    assert p == x(0) * x(0) - x(1) * x(1)
    assert (x(0) + 1) ** 2 == x(0) ** 2 + 2 * x(0) + 1
    assert (p - p).is_zero()
    assert x(0) * Poly.zero() == Poly.zero()


def test_poly_str_canonical():
    p = x(0) ** 2 - x(1) ** 2
    assert p.to_str() == "x0^2-x1^2"
    q = x(1) * 3 - x(0) + Poly.const(Fraction(1, 2))
    assert q.to_str() == "-x0+3*x1+1/2"
    z3 = CycNum.root_of_unity(3)
    r = x(0) + x(1).scale(z3)
    assert r.to_str() == "x0+(z)*x1"
    assert Poly.zero().to_str() == "0"
    assert Poly.const(-1).to_str() == "-1"


def test_poly_parse_round_trip():
    rng = random.Random(3)
    for _ in range(25):
        order = rng.choice([1, 3, 4, 6])
        p = Poly.zero(order)
        for _ in range(rng.randrange(5)):
            mono = tuple(sorted({rng.randrange(4): rng.randint(1, 3)
                                 for _ in range(rng.randrange(3))}.items()))
            c = CycNum.root_of_unity(order, rng.randrange(order)) * \
                Fraction(rng.randint(-3, 3), rng.randint(1, 2))
            p = p + Poly(order, {mono: c}) if not c.is_zero() else p
        s = p.to_str()
        assert parse_poly(s, order) == p, s


def test_parse_examples():
    assert parse_poly("x0^2-x1^2") == x(0) ** 2 - x(1) ** 2
    assert parse_poly("-x0+3*x1+1/2") == -x(0) + 3 * x(1) + Fraction(1, 2)
    p = parse_poly("(z)*x1+x0", 3)
    assert p == x(0) + x(1).scale(CycNum.root_of_unity(3))
    with pytest.raises(ParseError):
        parse_poly("")
    with pytest.raises(ParseError):
        parse_poly("x0^")
    with pytest.raises(ParseError):
        parse_poly("(z*x0", 3)


def test_homogeneity_and_degree():
    p = x(0) * x(1) + x(2) ** 2
    assert p.is_homogeneous() and p.total_degree() == 2
    q = p + x(0)
    assert not q.is_homogeneous()
    assert Poly.zero().is_homogeneous()


def test_evaluate():
    p = x(0) ** 2 + x(1) * 2
    assert p.evaluate({0: 3, 1: -1}).as_fraction() == 7
    with pytest.raises(MissingVariable):
        p.evaluate({0: 1})
    z = CycNum.root_of_unity(4)
    q = x(0).scale(z)
    assert q.evaluate({0: 2}) == z * 2


def test_substitute_linear():
    p = x(0) ** 2 - x(1) ** 2
    sub = {0: LinForm.make({0: 1, 2: -1}), 1: LinForm.make({1: 1})}
    q = substitute_linear(p, sub)
    assert q == (x(0) - x(2)) ** 2 - x(1) ** 2
    with pytest.raises(MissingVariable):
        substitute_linear(p, {0: LinForm.make({0: 1})})


def test_divide_exact():
    p = (x(0) + x(1)) ** 3 * (x(0) - x(1))
    q = divide_exact(p, (x(0) + x(1)) ** 2)
    assert q == (x(0) + x(1)) * (x(0) - x(1))
    with pytest.raises(ExactDivisionError):
        divide_exact(x(0) ** 2 + x(1), x(0) + 1)


def test_det_examples():
    assert det_poly_matrix([[x(0)]]) == x(0)
    m = [[x(0), x(1)], [x(1), x(0)]]
    assert det_poly_matrix(m) == x(0) ** 2 - x(1) ** 2
    # equal rows kill the determinant
    m = [[x(0), x(1)], [x(0), x(1)]]
    assert det_poly_matrix(m).is_zero()
    assert det_poly_matrix([]) == Poly.const(1)


def test_det_bareiss_matches_cofactor():
    rng = random.Random(5)
    for trial in range(6):
        n = rng.choice([3, 4, 5])
        m = [[Poly.const(rng.randint(-3, 3)) + x(rng.randrange(3)) * rng.randint(-2, 2)
              for _ in range(n)] for _ in range(n)]
        from frobdet.poly import _det_bareiss, _det_cofactor
        a = _det_cofactor(m, list(range(n)), list(range(n)))
        b = _det_bareiss([row[:] for row in m])
        assert a == b, trial


def test_det_numeric_cross_check():
    # integer matrices: symbolic engine agrees with Bareiss over Z
    rng = random.Random(9)
    for _ in range(10):
        n = rng.choice([2, 3, 4, 7])
        rows = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
        m = [[Poly.const(v) for v in row] for row in rows]
        assert det_poly_matrix(m).evaluate({}).as_fraction() == int_det(rows)


def test_det_dimension_cap():
    n = 13
    m = [[x(i) if i == j else Poly.zero() for j in range(n)] for i in range(n)]
    with pytest.raises(DimensionCap):
        det_poly_matrix(m)
    # override allows it
    assert det_poly_matrix(m, cap=13) == x(0) * x(1) * x(2) * x(3) * x(4) * x(5) * \
        x(6) * x(7) * x(8) * x(9) * x(10) * x(11) * x(12)


def test_identity_test_modes():
    p = (x(0) + x(1)) ** 2
    q = x(0) ** 2 + 2 * x(0) * x(1) + x(1) ** 2
    r = poly_identity_test(p, q, "exact")
    assert r["equal"] and r["mode"] == "exact"
    r = poly_identity_test(p, q, "randomized", seed=0, rounds=4)
    assert r["equal"] and r["rounds"] == 4 and "error_bound" in r
    r = poly_identity_test(p, q + 1, "randomized", seed=0)
    assert not r["equal"] and "witness" in r
    # determinism
    r2 = poly_identity_test(p, q + 1, "randomized", seed=0)
    assert r2["witness"] == r["witness"]


def test_int_det():
    assert int_det([[2, 0], [0, 3]]) == 6
    assert int_det([[0, 1], [1, 0]]) == -1
    assert int_det([[1, 2], [2, 4]]) == 0
    rng = random.Random(1)
    # compare against cofactor expansion oracle
    def cof(m):
        if len(m) == 1:
            return m[0][0]
        return sum((-1) ** i * m[i][0] * cof([r[1:] for k, r in enumerate(m) if k != i])
                   for i in range(len(m)))
    for _ in range(20):
        n = rng.choice([2, 3, 4])
        m = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
        assert int_det(m) == cof(m)


def test_cyc_det_and_inverse():
    i = CycNum.root_of_unity(4)
    m = [[CycNum.one(4), i], [i, CycNum.one(4)]]
    assert cyc_det(m) == CycNum.from_rational(2, 4)
    inv = cyc_matrix_inverse(m)
    # m * inv == identity
    for r in range(2):
        for c in range(2):
            s = CycNum.zero(4)
            for k in range(2):
                s = s + m[r][k] * inv[k][c]
            assert s == (CycNum.one(4) if r == c else CycNum.zero(4))
    with pytest.raises(SingularP):
        cyc_matrix_inverse([[CycNum.one(), CycNum.one()],
                            [CycNum.one(), CycNum.one()]])


def test_unitriangular_inverse():
    # zeta of the 3-chain 0 < 1 < 2
    z = [[1, 1, 1], [0, 1, 1], [0, 0, 1]]
    mu = unitriangular_inverse(z, [0, 1, 2])
    assert mu == [[1, -1, 0], [0, 1, -1], [0, 0, 1]]
    # permuted indexing: chain 2 < 0, antichain elsewhere
    z2 = [[1, 0, 0], [0, 1, 0], [1, 0, 1]]
    mu2 = unitriangular_inverse(z2, [2, 0, 1])
    prod = [[sum(z2[i][k] * mu2[k][j] for k in range(3)) for j in range(3)]
            for i in range(3)]
    assert prod == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    with pytest.raises(NotUnitriangular):
        unitriangular_inverse([[1, 0], [1, 1]], [0, 1])
    with pytest.raises(NotUnitriangular):
        unitriangular_inverse([[2, 0], [0, 1]], [0, 1])
