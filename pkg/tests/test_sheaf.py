import random
from fractions import Fraction

import numpy as np
import pytest

from adequiver import adhm, linalg, sheaf
from adequiver.deformation import Polynomial
from adequiver.dynkin import DynkinType
from adequiver.linalg import NonRationalSpectrum

from helpers import rand_invertible, worked_cycle_example

A2 = DynkinType.parse("A2")


class TestTorsionSheafData:
    def test_canonicalisation(self):
        d = sheaf.TorsionSheafData.of([(3, [1, 3, 2]), (Fraction(-1, 2), [1])])
        assert d.points == ((Fraction(-1, 2), (1,)), (Fraction(3), (3, 2, 1)))
        assert d.dimension == 7
        assert d.exact

    def test_duplicate_support_rejected(self):
        with pytest.raises(ValueError):
            sheaf.TorsionSheafData.of([(1, [1]), (Fraction(1), [2])])

    def test_bad_partitions_rejected(self):
        with pytest.raises(ValueError):
            sheaf.TorsionSheafData.of([(0, [])])
        with pytest.raises(ValueError):
            sheaf.TorsionSheafData.of([(0, [2, 0])])

    def test_complex_supports_sort_by_real_then_imag(self):
        d = sheaf.TorsionSheafData.of([(1 + 1j, [1]), (1 - 1j, [1]), (0.5 + 0j, [2])])
        assert [s for s, _ in d.points] == [0.5 + 0j, 1 - 1j, 1 + 1j]
        assert not d.exact


class TestSheafToEndo:
    def test_distinct_simple_points(self):
        n, m = sheaf.sheaf_to_endo(sheaf.TorsionSheafData.of([(1, [1]), (2, [1])]))
        assert n == 2
        assert m == [[1, 0], [0, 2]]

    def test_jordan_block_superdiagonal(self):
        n, m = sheaf.sheaf_to_endo(sheaf.TorsionSheafData.of([(0, [2])]))
        assert n == 2
        assert m == [[0, 1], [0, 0]]

    def test_block_layout_follows_canonical_order(self):
        d = sheaf.TorsionSheafData.of([(2, [1]), (0, [2, 1])])
        n, m = sheaf.sheaf_to_endo(d)
        assert n == 4
        want = [
            [0, 1, 0, 0],
            [0, 0, 0, 0],
            [0, 0, 0, 0],
            [0, 0, 0, 2],
        ]
        assert m == want

    def test_numeric_supports_build_numeric_matrix(self):
        d = sheaf.TorsionSheafData.of([(1j, [1])])
        n, m = sheaf.sheaf_to_endo(d)
        assert n == 1
        assert isinstance(m, np.ndarray)
        assert m[0, 0] == 1j

    def test_empty(self):
        n, m = sheaf.sheaf_to_endo(sheaf.TorsionSheafData.of([]))
        assert n == 0 and m == []


class TestEndoToSheaf:
    def test_exact_diagonal(self):
        got = sheaf.endo_to_sheaf([[1, 0], [0, 1]])
        assert got == sheaf.TorsionSheafData.of([(1, [1, 1])])

    def test_exact_jordan_structure(self):
        m = [[5, 1, 0], [0, 5, 0], [0, 0, 5]]
        assert sheaf.endo_to_sheaf(m) == sheaf.TorsionSheafData.of([(5, [2, 1])])

    def test_exact_requires_rational_spectrum(self):
        with pytest.raises(NonRationalSpectrum):
            sheaf.endo_to_sheaf([[0, 1], [-1, 0]])
        with pytest.raises(NonRationalSpectrum):
            sheaf.endo_to_sheaf([[0, 1], [2, 0]])

    def test_roundtrip_identity_planted(self):
        rng = random.Random(3)
        for _ in range(20):
            supports = rng.sample(range(-3, 4), rng.randint(1, 3))
            d = sheaf.TorsionSheafData.of(
                [(s, [rng.randint(1, 3) for _ in range(rng.randint(1, 2))]) for s in supports]
            )
            n, j = sheaf.sheaf_to_endo(d)
            assert sheaf.endo_to_sheaf(j) == d

    def test_invariant_under_similarity(self):
        rng = random.Random(4)
        d = sheaf.TorsionSheafData.of([(0, [2, 1]), (1, [1])])
        n, j = sheaf.sheaf_to_endo(d)
        for _ in range(5):
            g = rand_invertible(rng, n)
            m = linalg.mat_mul(linalg.inverse(g), linalg.mat_mul(j, g))
            assert sheaf.endo_to_sheaf(m) == d
            j2, h = linalg.jordan_form(m)
            assert linalg.mat_eq(j2, j)
            assert linalg.mat_eq(linalg.mat_mul(h, m), linalg.mat_mul(j2, h))

    def test_numeric_clustered_eigenvalues(self):
        m = np.array([[1 + 1e-12, 0], [0, 1.0]])
        got = sheaf.endo_to_sheaf(m)
        assert len(got.points) == 1
        (s, parts), = got.points
        assert abs(s - 1) < 1e-9
        assert parts == (1, 1)

    def test_numeric_complex_pair(self):
        m = np.array([[0, 1], [-1, 0]], dtype=float)
        got = sheaf.endo_to_sheaf(m)
        pts = [s for s, _ in got.points]
        # the +-i pair, in either order (tiny real parts scramble the sort)
        assert sorted(z.imag for z in pts) == pytest.approx([-1.0, 1.0])
        assert max(abs(z.real) for z in pts) < 1e-9

    def test_numeric_ill_conditioned_band(self):
        m = np.diag([0.0, 4e-8])
        with pytest.raises(sheaf.IllConditioned):
            sheaf.endo_to_sheaf(m, tol=1e-8)
        # widening the tolerance swallows the near-zero eigenvalue pair
        ok = sheaf.endo_to_sheaf(m, tol=1e-6)
        assert len(ok.points) == 1

    def test_float_list_dispatches_numeric(self):
        got = sheaf.endo_to_sheaf([[0.5]])
        assert not got.exact
        assert abs(got.points[0][0] - 0.5) < 1e-12


def test_char_poly():
    assert sheaf.char_poly([[1, 2], [0, 3]]) == Polynomial.of([3, -4, 1])
    assert sheaf.char_poly([]) == Polynomial.of([1])


class TestRegularity:
    def test_single_nilpotent_block_is_regular(self):
        assert sheaf.is_regular([[0, 1], [0, 0]])

    def test_split_eigenvalue_is_not(self):
        assert not sheaf.is_regular([[0, 0], [0, 0]])
        assert not sheaf.is_regular([[1, 0], [0, 1]])

    def test_distinct_eigenvalues_are_regular(self):
        assert sheaf.is_regular([[1, 0], [0, 2]])


def nilpotent_cycle_rep():
    """A2 cycle with a 2-dim node 0, nilpotent loop there, intertwining arrows."""
    return adhm.N1Representation(
        A2,
        {0: 2, 1: 1, 2: 0},
        B={(0, 1, 0): [[0, 1]], (1, 0, 0): [[1], [0]]},
        Psi={0: [[0, 1], [0, 0]]},
        framing_ranks={0: 1},
        I={0: [[1, 0]]},
    )


class TestQuiverSheafData:
    def test_post_init_checks_intertwining(self):
        sheaves = {
            0: sheaf.TorsionSheafData.of([(0, [1])]),
            1: sheaf.TorsionSheafData.of([(1, [1])]),
            2: sheaf.TorsionSheafData.of([(0, [1])]),
        }
        with pytest.raises(sheaf.EdgeRelationViolated):
            sheaf.QuiverSheafData(A2, sheaves, {(0, 1, 0): [[1]]})
        # a zero map always intertwines
        sheaf.QuiverSheafData(A2, dict(sheaves), {(0, 1, 0): [[0]]})

    def test_node_coverage_enforced(self):
        with pytest.raises(ValueError):
            sheaf.QuiverSheafData(A2, {0: sheaf.TorsionSheafData.of([])}, {})


class TestDictionary:
    def test_worked_example_scalar_case(self):
        rep, _ = worked_cycle_example()
        data, g = sheaf.quadruple_to_quintuple(rep)
        assert data.node_sheaves == {
            a: sheaf.TorsionSheafData.of([(0, [1])]) for a in (0, 1, 2)
        }
        back = sheaf.quintuple_to_quadruple(data)
        assert back == adhm.conjugate(rep, g)

    def test_nilpotent_loop_roundtrip(self):
        rep = nilpotent_cycle_rep()
        data, g = sheaf.quadruple_to_quintuple(rep)
        assert data.node_sheaves[0] == sheaf.TorsionSheafData.of([(0, [2])])
        assert data.node_sheaves[2] == sheaf.TorsionSheafData.of([])
        back = sheaf.quintuple_to_quadruple(data)
        assert back == adhm.conjugate(rep, g)

    def test_conjugated_input_lands_on_same_sheaves(self):
        rng = random.Random(9)
        rep = nilpotent_cycle_rep()
        data, _ = sheaf.quadruple_to_quintuple(rep)
        for _ in range(5):
            g = {a: rand_invertible(rng, rep.dims[a]) for a in rep.dims}
            data2, _ = sheaf.quadruple_to_quintuple(adhm.conjugate(rep, g))
            assert data2.node_sheaves == data.node_sheaves

    def test_edge_violation_refused(self):
        rep, _ = worked_cycle_example()
        broken = adhm.N1Representation(
            rep.type, dict(rep.dims), dict(rep.B),
            Psi={0: [[0]], 1: [[1]], 2: [[0]]},
            framing_ranks=dict(rep.framing_ranks), I={0: [[1]]},
        )
        with pytest.raises(sheaf.EdgeRelationViolated):
            sheaf.quadruple_to_quintuple(broken)

    def test_irrational_loop_spectrum_refused(self):
        rep = adhm.N1Representation(A2, {0: 2, 1: 0, 2: 0}, Psi={0: [[0, 1], [2, 0]]})
        with pytest.raises(NonRationalSpectrum):
            sheaf.quadruple_to_quintuple(rep)
