from fractions import Fraction

import pytest
import sympy as sp

import oracles
from uprightknot import catalog
from uprightknot.diagram import parse
from uprightknot.invariants import (
    AMatrix,
    SingularMatrix,
    alexander,
    build_matrix,
    compute_all,
    green,
    rho1,
    rho1_symbolic,
    specialize_theta,
    theta,
    theta_numerator,
    theta_symbolic,
)
from uprightknot.poly import (
    HalfIntegerExponentRemains,
    LaurentPoly1,
    LaurentPoly2,
    NotDivisible,
    RationalFunc1,
    exact_divide,
)

T = LaurentPoly1.T()
T1, T2 = LaurentPoly2.T1(), LaurentPoly2.T2()
KINK = parse("n 1\nc + 2 1\nphi 2 1\n")
UNKNOT = parse("n 0")


def _diag(name):
    return catalog.get(name).diagram


def _as_poly1(expr):
    return LaurentPoly1({e: Fraction(int(c.p), int(c.q)) for e, c in oracles.to_dict1(expr).items()})


def _as_poly2(expr):
    return LaurentPoly2({k: Fraction(int(c.p), int(c.q)) for k, c in oracles.to_dict2(expr).items()})


def _oracle_args(D):
    return [c.as_tuple() for c in D.crossings], D.rotation_map()


# matrix and inverse --------------------------------------------------------------

def test_unknot_matrix():
    A = build_matrix(UNKNOT)
    assert A.size == 1 and A.dense() == [[1]]


def test_kink_matrix():
    assert build_matrix(KINK).dense() == [[1, -1, 0], [0, T, -T], [0, 0, 1]]


@pytest.mark.parametrize("name", catalog.names())
def test_matrix_matches_oracle_and_row_structure(name):
    D = _diag(name)
    A = build_matrix(D)
    S = oracles.a_matrix(D.crossing_tuples())
    m = A.size
    for r in range(m):
        assert all(len(A[r + 1, c + 1]) <= 3 for c in range(m))
        for c in range(m):
            assert sp.simplify(S[r, c] - sp.sympify(str(A[r + 1, c + 1]).replace("^", "**"))) == 0
    # A (1, ..., 1)^T at T = 1 is the last standard basis vector
    sums = [sum(A[r, c].eval_at_one() for c in range(1, m + 1)) for r in range(1, m + 1)]
    assert sums == [0] * (m - 1) + [1]


def test_green_identity_matrix():
    gd = green(AMatrix.identity(3))
    assert gd.det == 1
    assert all(gd.adj(a, b) == (1 if a == b else 0) for a in range(1, 4) for b in range(1, 4))


def test_green_kink():
    gd = green(build_matrix(KINK))
    assert gd.det == T
    expected = [[1, T ** -1, 1], [0, T ** -1, 1], [0, 0, 1]]
    for a in range(3):
        for b in range(3):
            assert gd.g(a + 1, b + 1) == RationalFunc1(expected[a][b])


@pytest.mark.parametrize("name", ["trefoil-a", "figure-eight-c", "stevedore-a"])
def test_green_matches_sympy_inverse(name):
    D = _diag(name)
    gd = green(build_matrix(D))
    det, G = oracles.green(D.crossing_tuples())
    assert gd.det == _as_poly1(det)
    for a in range(1, gd.size + 1):
        for b in range(1, gd.size + 1):
            assert gd.adj(a, b) == _as_poly1(sp.expand(sp.cancel(G[a - 1, b - 1] * det)))


def test_green_singular():
    A = AMatrix.from_dense([[1, 1], [1, 1]])
    with pytest.raises(SingularMatrix):
        green(A)


def test_green_laurent_entries_dense_fallback():
    A = AMatrix.from_dense([[T, T ** -1], [2, T ** 2 - 3]])
    gd = green(A)
    assert gd.det == T ** 3 - 3 * T - 2 * T ** -1
    assert gd.adj(1, 2) == -T ** -1


# Alexander polynomial ------------------------------------------------------------

def test_alexander_small():
    assert alexander(UNKNOT) == 1
    assert alexander(KINK) == 1


def test_alexander_trefoil_matches_seifert_oracle():
    expected = _as_poly1(oracles.seifert_alexander([[-1, 1], [0, -1]]))
    assert expected == T - 1 + T ** -1
    assert alexander(_diag("trefoil-a")) == expected
    assert alexander(_diag("trefoil-b")) == expected


def test_alexander_figure_eight_matches_seifert_oracle():
    expected = _as_poly1(oracles.seifert_alexander([[-1, 1], [0, 1]]))
    for name in ("figure-eight-a", "figure-eight-b", "figure-eight-c"):
        assert alexander(_diag(name)) == expected


@pytest.mark.parametrize(
    "name, expected",
    [
        ("cinquefoil", T ** 2 - T + 1 - T ** -1 + T ** -2),
        ("three-twist-a", 2 * T - 3 + 2 * T ** -1),
        ("stevedore-a", -2 * T + 5 - 2 * T ** -1),
    ],
)
def test_alexander_known_values(name, expected):
    assert alexander(_diag(name)) == expected


@pytest.mark.parametrize("name", catalog.names())
def test_alexander_fast_matches_sympy_determinant(name):
    D = _diag(name)
    assert alexander(D) == _as_poly1(oracles.delta(*_oracle_args(D)))


def test_parity_violation_is_detected():
    from uprightknot.diagram import UprightDiagram

    D = UprightDiagram.make([(1, 2, 1)], {})
    with pytest.raises(HalfIntegerExponentRemains):
        compute_all(D)


# rho1 and theta ------------------------------------------------------------------

def test_small_cases_vanish():
    for D in (UNKNOT, KINK):
        r = compute_all(D)
        assert (r.delta, r.rho1, r.theta) == (1, 0, 0)
    r = compute_all(KINK)
    assert (r.writhe, r.total_rotation) == (1, 1)


@pytest.mark.parametrize("name", ["kink", "kink-neg-under", "trefoil-a", "figure-eight-a", "trefoil-b"])
def test_rho1_and_theta_match_sympy_oracle(name):
    D = _diag(name)
    args = _oracle_args(D)
    assert rho1(D) == _as_poly1(oracles.rho1(*args))
    assert theta(D) == _as_poly2(oracles.theta(*args))


@pytest.mark.parametrize("name", catalog.names())
def test_fast_and_term_by_term_routes_agree(name):
    D = _diag(name)
    gd = green(build_matrix(D))
    assert rho1(D, gd) == rho1_symbolic(D, gd)
    assert theta(D, gd) == theta_symbolic(D, gd)


@pytest.mark.parametrize("name", catalog.names())
def test_theorem_identity(name):
    r = compute_all(_diag(name))
    assert specialize_theta(r.theta) == -r.rho1


def test_theta_numerator_divisible_by_t2_minus_one():
    N = theta_numerator(_diag("stevedore-a"))
    exact_divide(N, T2 - 1)


@pytest.mark.parametrize("name", ["trefoil-a", "figure-eight-a", "stevedore-a"])
def test_excluding_diagonal_pairs_breaks_laurentness(name):
    D = _diag(name)
    with pytest.raises(NotDivisible):
        theta(D, include_diagonal=False)
    with pytest.raises(NotDivisible):
        theta_symbolic(D, include_diagonal=False)


def test_delta_is_one_at_one_and_integral():
    for f in catalog.CATALOG.values():
        d = compute_all(f.diagram).delta
        assert d.eval_at_one() == 1
        assert d.is_integral()


# regression snapshots, recorded after all identity and invariance checks passed

SNAPSHOTS = {
    "trefoil": (
        "T^2 - 2*T + 2 - 2*T^-1 + T^-2",
        "-T1^2*T2^2 + T1^2*T2 - T1^2 + T1*T2^2 + T1*T2^-1 - T2^2 - T2^-2 + T1^-1*T2"
        " + T1^-1*T2^-2 - T1^-2 + T1^-2*T2^-1 - T1^-2*T2^-2",
    ),
    "figure-eight": ("0", "0"),
    "cinquefoil": ("2*T^4 - 4*T^3 + 5*T^2 - 6*T + 6 - 6*T^-1 + 5*T^-2 - 4*T^-3 + 2*T^-4", None),
    "three-twist": ("5*T^2 - 14*T + 18 - 14*T^-1 + 5*T^-2", None),
    "stevedore": ("T^2 - 6*T + 10 - 6*T^-1 + T^-2", None),
}


@pytest.mark.parametrize("knot", sorted(SNAPSHOTS))
def test_snapshots(knot):
    rho, th = SNAPSHOTS[knot]
    for f in catalog.groups()[knot]:
        r = compute_all(f.diagram)
        assert str(r.rho1) == rho
        if th is not None:
            assert str(r.theta) == th


# random braid closures -----------------------------------------------------------

@pytest.mark.parametrize("seed", range(6))
def test_random_knots_both_routes_and_theorem(seed):
    D = catalog.random_braid_knot(8, 3, seed=seed)
    gd = green(build_matrix(D))
    th = theta(D, gd)
    assert th == theta_symbolic(D, gd)
    assert rho1(D, gd) == rho1_symbolic(D, gd) == -specialize_theta(th)
    assert alexander(D, gd) == alexander(D)  # determinant-only path


def test_adjugate_decodes_exactly_at_an_independent_point():
    # evaluation at T = 3 is unrelated to the packing base 2**K
    D = catalog.random_braid_knot(30, 5, seed=7)
    A = build_matrix(D)
    gd = green(A)
    m = A.size
    Av = [[A[r, c].evaluate(3) for c in range(1, m + 1)] for r in range(1, m + 1)]
    adj = [[gd.adj(r, c).evaluate(3) for c in range(1, m + 1)] for r in range(1, m + 1)]
    det = gd.det.evaluate(3)
    for r in range(m):
        for c in range(m):
            assert sum(Av[r][k] * adj[k][c] for k in range(m)) == (det if r == c else 0)
