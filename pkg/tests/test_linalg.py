from fractions import Fraction
from random import Random

import pytest
import sympy

from adequiver import linalg
from helpers import mat_from_sympy, rand_invertible, rand_matrix, sympy_nullspace


def test_frac_accepts_strings_ints_fractions():
    assert linalg.frac("3/4") == Fraction(3, 4)
    assert linalg.frac(2) == 2
    assert linalg.frac(Fraction(-1, 3)) == Fraction(-1, 3)


def test_matrix_rejects_ragged():
    with pytest.raises(ValueError):
        linalg.matrix([[1, 2], [3]])


def test_identity_and_zeros_shapes():
    assert linalg.shape(linalg.identity(3)) == (3, 3)
    assert linalg.shape(linalg.zeros(2, 5)) == (2, 5)
    assert linalg.is_zero_matrix(linalg.zeros(4))


def test_arithmetic_roundtrip():
    rng = Random(1)
    a = rand_matrix(rng, 3, 3)
    b = rand_matrix(rng, 3, 3)
    assert linalg.mat_sub(linalg.mat_add(a, b), b) == a
    assert linalg.mat_neg(linalg.mat_neg(a)) == a
    assert linalg.mat_scale(Fraction(1, 2), linalg.mat_scale(2, a)) == a


def test_mat_mul_against_sympy():
    rng = Random(2)
    a = rand_matrix(rng, 2, 3)
    b = rand_matrix(rng, 3, 4)
    sa = sympy.Matrix([[sympy.Rational(x) for x in r] for r in a])
    sb = sympy.Matrix([[sympy.Rational(x) for x in r] for r in b])
    assert linalg.mat_mul(a, b) == mat_from_sympy(sa * sb)


def test_rank_and_nullspace_small():
    m = [[1, 2], [2, 4]]
    assert linalg.rank(linalg.matrix(m)) == 1
    ns = linalg.nullspace(linalg.matrix(m))
    assert len(ns) == 1
    x, y = ns[0]
    assert x + 2 * y == 0


def test_nullspace_matches_sympy_spans():
    rng = Random(3)
    for _ in range(20):
        rows, cols = rng.randint(1, 4), rng.randint(1, 4)
        m = rand_matrix(rng, rows, cols)
        ours = linalg.nullspace(linalg.matrix(m))
        theirs = sympy_nullspace(m)
        assert len(ours) == len(theirs)
        for v in ours:
            assert all(
                sum(Fraction(m[i][j]) * v[j] for j in range(cols)) == 0
                for i in range(rows)
            )


def test_det_and_inverse():
    rng = Random(4)
    for n in (1, 2, 3, 4):
        g = rand_invertible(rng, n)
        d = linalg.det(linalg.matrix(g))
        assert d != 0
        inv = linalg.inverse(linalg.matrix(g))
        assert linalg.mat_mul(g, inv) == linalg.identity(n)
    assert linalg.det([[Fraction(1), Fraction(2)], [Fraction(3), Fraction(4)]]) == -2


def test_inverse_rejects_singular():
    with pytest.raises(ValueError):
        linalg.inverse(linalg.matrix([[1, 2], [2, 4]]))


def test_solve():
    a = linalg.matrix([[2, 0], [1, 1]])
    x = linalg.solve(a, [Fraction(4), Fraction(5)])
    assert x == [Fraction(2), Fraction(3)]


def test_span_basis_growth_and_membership():
    sb = linalg.SpanBasis(3)
    assert sb.add([Fraction(1), Fraction(0), Fraction(0)])
    assert not sb.add([Fraction(2), Fraction(0), Fraction(0)])
    assert sb.add([Fraction(0), Fraction(1), Fraction(1)])
    assert sb.contains([Fraction(3), Fraction(2), Fraction(2)])
    assert not sb.contains([Fraction(0), Fraction(1), Fraction(0)])
    assert sb.dim == 2


def test_char_poly_matches_sympy():
    rng = Random(5)
    for n in (1, 2, 3, 4):
        m = rand_matrix(rng, n, n)
        ours = linalg.char_poly_coeffs(linalg.matrix(m))
        t = sympy.symbols("t")
        sm = sympy.Matrix([[sympy.Rational(x) for x in r] for r in m])
        theirs = sympy.Poly(sm.charpoly(t).as_expr(), t).all_coeffs()[::-1]
        assert [Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1]))
                for c in theirs] == list(ours)


def test_rational_eigenvalues_with_multiplicity():
    m = linalg.matrix([[2, 1, 0], [0, 2, 0], [0, 0, 5]])
    assert linalg.rational_eigenvalues(m) == {Fraction(2): 2, Fraction(5): 1}


def test_rational_eigenvalues_zero_and_fractions():
    m = linalg.matrix([[0, 0], [0, Fraction(1, 3)]])
    assert linalg.rational_eigenvalues(m) == {Fraction(0): 1, Fraction(1, 3): 1}


def test_rational_eigenvalues_rejects_irrational():
    with pytest.raises(linalg.NonRationalSpectrum):
        linalg.rational_eigenvalues(linalg.matrix([[0, 2], [1, 0]]))   # +-sqrt(2)
    with pytest.raises(linalg.NonRationalSpectrum):
        linalg.rational_eigenvalues(linalg.matrix([[0, 1], [-1, 0]]))  # +-i


def test_minimal_poly_degree():
    assert linalg.minimal_poly_degree(linalg.identity(4)) == 1
    jordan = linalg.matrix([[3, 1, 0], [0, 3, 1], [0, 0, 3]])
    assert linalg.minimal_poly_degree(jordan) == 3
    diag = linalg.matrix([[1, 0], [0, 2]])
    assert linalg.minimal_poly_degree(diag) == 2
    twice = linalg.matrix([[2, 0], [0, 2]])
    assert linalg.minimal_poly_degree(twice) == 1


def _planted(rng: Random, blocks):
    """g^-1 J g for the given (eigenvalue, size) blocks and a random g."""
    n = sum(size for _, size in blocks)
    j = linalg.zeros(n)
    at = 0
    for lam, size in blocks:
        for i in range(size):
            j[at + i][at + i] = Fraction(lam)
            if i + 1 < size:
                j[at + i][at + i + 1] = Fraction(1)
        at += size
    g = rand_invertible(rng, n)
    ginv = linalg.inverse(linalg.matrix(g))
    return linalg.mat_mul(ginv, linalg.mat_mul(j, g))


def test_jordan_form_recovers_planted_blocks():
    rng = Random(6)
    cases = [
        [(0, 2)],
        [(1, 1), (2, 1)],
        [(Fraction(1, 2), 2), (Fraction(1, 2), 1)],
        [(3, 3)],
        [(0, 1), (0, 1), (5, 2)],
    ]
    for blocks in cases:
        m = _planted(rng, blocks)
        j, g = linalg.jordan_form(linalg.matrix(m))
        assert linalg.mat_mul(g, m) == linalg.mat_mul(j, g)
        # eigenvalue multiset on the diagonal is the planted one
        diag = sorted(j[i][i] for i in range(len(j)))
        planted = sorted(Fraction(lam) for lam, size in blocks for _ in range(size))
        assert diag == planted
        # block sizes per eigenvalue, largest first
        sizes = {}
        for lam, size in blocks:
            sizes.setdefault(Fraction(lam), []).append(size)
        for lam, ss in sizes.items():
            got = []
            run = 0
            for i in range(len(j)):
                if j[i][i] == lam:
                    run += 1
                    ends = i + 1 == len(j) or j[i][i + 1] == 0
                    if ends:
                        got.append(run)
                        run = 0
            assert sorted(got, reverse=True) == sorted(ss, reverse=True)


def test_jordan_form_rejects_irrational():
    with pytest.raises(linalg.NonRationalSpectrum):
        linalg.jordan_form(linalg.matrix([[0, 2], [1, 0]]))
