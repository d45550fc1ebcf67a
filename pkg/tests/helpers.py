"""Shared builders for the test suite.

Everything random is driven by an explicit random.Random instance so
tests stay reproducible.  The matrix oracles here (sympy nullspace,
hand-rolled block formulas) are deliberately independent of the package
internals they test against.
"""

from fractions import Fraction
from random import Random

import sympy

from adequiver.adhm import N1Representation
from adequiver.deformation import Polynomial, complete_affine_theta
from adequiver.dynkin import DynkinType


def rand_frac(rng: Random, span: int = 4, denominators=(1, 1, 2, 3)) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.choice(denominators))


def rand_matrix(rng: Random, rows: int, cols: int, span: int = 4) -> list:
    return [[rand_frac(rng, span) for _ in range(cols)] for _ in range(rows)]


def rand_invertible(rng: Random, n: int, span: int = 3) -> list:
    """Unit lower times unit upper triangular with a diagonal twist: always invertible."""
    lower = [[Fraction(1) if i == j else (rand_frac(rng, span) if i > j else Fraction(0))
              for j in range(n)] for i in range(n)]
    upper = [[rng.choice([Fraction(1), Fraction(2), Fraction(1, 2), Fraction(-1)]) if i == j
              else (rand_frac(rng, span) if i < j else Fraction(0))
              for j in range(n)] for i in range(n)]
    return [[sum(lower[i][k] * upper[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)]


def worked_cycle_example() -> tuple[N1Representation, "DeformationParam"]:
    """The dimension-one cyclic rank-2 fixture with framing at node 0.

    All node and edge defects vanish and the framing generates; node
    polynomials are (1 - 2t, t, t - 1).
    """
    t = DynkinType.parse("A2")
    theta = complete_affine_theta(
        t, {1: Polynomial.of([0, 1]), 2: Polynomial.of([-1, 1])}
    )
    rep = N1Representation(
        type=t,
        dims={0: 1, 1: 1, 2: 1},
        B={(0, 1, 0): [[1]], (2, 0, 0): [[1]], (0, 2, 0): [[1]]},
        framing_ranks={0: 1},
        I={0: [[1]]},
    )
    return rep, theta


def finite_pair_example() -> tuple[N1Representation, "DeformationParam"]:
    """Finite rank-2 fixture supported at the zero of the summed polynomial.

    Loops are 1/2 at both nodes; only theta_1 + theta_2 = 2t - 1
    vanishes there, so the support check must pick the composite root.
    """
    t = DynkinType.parse("A2")
    theta = complete_affine_theta(
        t, {1: Polynomial.of([0, 1]), 2: Polynomial.of([-1, 1])}
    )
    rep = N1Representation(
        type=t,
        dims={1: 1, 2: 1},
        B={(1, 2, 0): [[1]], (2, 1, 0): [[Fraction(-1, 2)]]},
        Psi={1: [[Fraction(1, 2)]], 2: [[Fraction(1, 2)]]},
        affine=False,
    )
    return rep, theta


def sympy_nullspace(rows: list) -> list:
    """Rational kernel basis via sympy, returned as lists of Fractions."""
    m = sympy.Matrix([[sympy.Rational(x) for x in row] for row in rows])
    return [
        [Fraction(int(sympy.fraction(v)[0]), int(sympy.fraction(v)[1])) for v in vec]
        for vec in m.nullspace()
    ]


def sympy_intertwiners(psi_tgt: list, psi_src: list) -> list:
    """Basis of matrices B with psi_tgt @ B = B @ psi_src, via the stacked kernel.

    Returns each basis element as a (rows x cols) list of Fractions,
    rows = size of psi_tgt, cols = size of psi_src.
    """
    rows, cols = len(psi_tgt), len(psi_src)
    tgt = sympy.Matrix([[sympy.Rational(x) for x in r] for r in psi_tgt])
    src = sympy.Matrix([[sympy.Rational(x) for x in r] for r in psi_src])
    op = sympy.kronecker_product(sympy.eye(cols), tgt) \
        - sympy.kronecker_product(src.T, sympy.eye(rows))
    basis = []
    for vec in op.nullspace():
        flat = [Fraction(int(sympy.fraction(v)[0]), int(sympy.fraction(v)[1])) for v in vec]
        # vec stacks B column by column
        basis.append([[flat[c * rows + r] for c in range(cols)] for r in range(rows)])
    return basis


def mat_from_sympy(m) -> list:
    return [
        [Fraction(int(sympy.fraction(m[i, j])[0]), int(sympy.fraction(m[i, j])[1]))
         for j in range(m.cols)]
        for i in range(m.rows)
    ]
