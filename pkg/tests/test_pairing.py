import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from horolift.errors import DimensionMismatch, InvalidLengths, NotIrreducible
from horolift.iet import Connection, Iet
from horolift.numbers import Golden
from horolift.pairing import (
    PositivityConfig,
    cone_contains,
    connection_sums,
    empirical_invariant_measures,
    heights,
    is_positive_pair,
    null_space,
    q_eval,
    q_matrix,
    q_row,
    universal_direction,
)
from horolift.perm import Permutation, singularity_data

from . import oracles
from .conftest import irreducible_perms, random_irreducible

PHI = Golden(0, 1)
FAST = PositivityConfig(seeds=4, orbit_len=20000, m_max=200)


def test_q_matrix_examples():
    assert q_matrix(Permutation((2, 1))).matrix == ((0, -1), (1, 0))
    assert q_matrix(Permutation((3, 1, 2))).matrix == ((0, -1, -1), (1, 0, 0), (1, 0, 0))
    m = q_matrix(Permutation((4, 3, 2, 1))).matrix
    assert m == tuple(tuple((i > j) - (i < j) for j in range(4)) for i in range(4))


def test_q_eval_examples():
    assert q_eval(q_matrix(Permutation((2, 1))), (1, 1), (1, -1)) == 2
    assert q_eval(q_matrix(Permutation((4, 3, 2, 1))), (1, 1, 1, 1), (3, 1, -1, -3)) == 20
    Q = q_matrix(Permutation((3, 1, 2)))
    with pytest.raises(DimensionMismatch):
        q_eval(Q, (1, 2), (1, 2, 3))


@given(irreducible_perms(2, 7), st.lists(st.integers(-20, 20), min_size=7, max_size=7))
def test_q_eval_alternating(p, u):
    assert q_eval(q_matrix(p), u[: p.d], u[: p.d]) == 0


def test_heights_examples():
    hd = heights(Permutation((4, 3, 2, 1)), (3, 1, -1, -3))
    assert hd.y[1:] == (3, 4, 3, 0)
    assert hd.yp[1:] == (-3, -4, -3, 0)
    assert hd.L == (3, 7, 7, 3)
    hd = heights(Permutation((2, 1)), (1, -1))
    assert (hd.y[1:], hd.yp[1:], hd.L) == ((1, 0), (-1, 0), (1, 1))
    assert heights(Permutation((3, 1, 2)), (0, 0, 0)).L == (0, 0, 0)


def test_step_function_is_q_row(rng):
    for _ in range(100):
        p = random_irreducible(rng, rng.randint(2, 8))
        b = [Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for _ in range(p.d)]
        hd = heights(p, b)
        assert hd.L == q_row(q_matrix(p), b)
        assert hd.y[-1] == hd.yp[-1]


def test_universal_direction_examples():
    assert universal_direction(Permutation((4, 3, 2, 1))) == (3, 1, -1, -3)
    assert universal_direction(Permutation((2, 1))) == (1, -1)
    assert universal_direction(Permutation((3, 1, 2))) == (2, -1, -1)
    with pytest.raises(NotIrreducible):
        universal_direction(Permutation((1, 2)))


@pytest.mark.parametrize("d", range(2, 7))
def test_universal_direction_in_cone(d):
    from horolift.perm import irreducible_permutations

    for p in irreducible_permutations(d):
        assert cone_contains(p, universal_direction(p))


def test_cone_examples():
    assert cone_contains(Permutation((4, 3, 2, 1)), (3, 1, -1, -3))
    assert not cone_contains(Permutation((2, 1)), (1, 1))
    assert cone_contains(Permutation((2, 1)), (1, -1))


@given(irreducible_perms(2, 7), st.data())
def test_cone_is_convex(p, data):
    b0 = universal_direction(p)
    pert = st.lists(st.integers(-3, 3), min_size=p.d, max_size=p.d)
    b1 = [4 * u + v for u, v in zip(b0, data.draw(pert))]
    b2 = [4 * u + v for u, v in zip(b0, data.draw(pert))]
    if not (cone_contains(p, b1) and cone_contains(p, b2)):
        return
    al = data.draw(st.fractions(min_value=Fraction(1, 10), max_value=10, max_denominator=10))
    be = data.draw(st.fractions(min_value=Fraction(1, 10), max_value=10, max_denominator=10))
    assert cone_contains(p, [al * u + be * v for u, v in zip(b1, b2)])


def test_null_space_examples():
    assert null_space(Permutation((3, 1, 2))) in ([(0, 1, -1)], [(0, -1, 1)])
    assert null_space(Permutation((4, 3, 2, 1))) == []
    assert len(null_space(Permutation((5, 4, 3, 2, 1)))) == 1


def test_null_space_properties(rng):
    for _ in range(50):
        p = random_irreducible(rng, rng.randint(2, 8))
        Q = q_matrix(p)
        st_data = singularity_data(p)
        basis = null_space(p)
        assert len(basis) == st_data.k - 1 == Q.nullity()
        assert Q.rank() == 2 * st_data.genus
        for b in basis:
            for i in range(p.d):
                e = [0] * p.d
                e[i] = 1
                assert q_eval(Q, e, b) == 0
            assert not cone_contains(p, b)
            assert not cone_contains(p, [-v for v in b])


def test_empirical_measures_golden():
    T = Iet((2, 1), (1, PHI))
    for f in empirical_invariant_measures(T, seeds=3, orbit_len=10**6, rng_seed=7):
        assert abs(f[0] - 0.381966) + abs(f[1] - 0.618034) <= 1e-3


def test_empirical_measures_periodic_alternation():
    T = Iet((2, 1), (1, 1))
    assert empirical_invariant_measures(T, orbit_len=1000, points=[0.25]) == [(0.5, 0.5)]


def test_empirical_measures_generic_reversal():
    rng = random.Random(2)
    a = [rng.uniform(0.5, 1.5) for _ in range(4)]
    T = Iet((4, 3, 2, 1), a)
    total = sum(a)
    for f in empirical_invariant_measures(T, seeds=4, orbit_len=10**6, rng_seed=1):
        assert all(abs(fi - ai / total) < 5e-3 for fi, ai in zip(f, a))


def test_empirical_measures_reproducible():
    T = Iet((4, 3, 2, 1), (0.3, 0.7, 1.1, 0.9))
    one = empirical_invariant_measures(T, seeds=6, orbit_len=5000, rng_seed=3)
    assert one == empirical_invariant_measures(T, seeds=6, orbit_len=5000, rng_seed=3)


def test_golden_pair_positive():
    v = is_positive_pair(Permutation((2, 1)), (1, PHI), (1, -1))
    assert v.status == "Positive"
    assert v.route == "cone"
    assert v.witness is None


def test_zero_direction_not_positive(rng):
    for _ in range(10):
        p = random_irreducible(rng, rng.randint(2, 6))
        a = [Fraction(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(p.d)]
        v = is_positive_pair(p, a, [0] * p.d, FAST)
        assert v.status == "NotPositive"
        assert v.witness is not None


def test_periodic_rotation_origin_connection_sum():
    # the triple (1, 0, 1) lands on x_0 with sum of L equal to y_1 - y_0
    p = Permutation((2, 1))
    T = Iet(p, (1, 1))
    hd = heights(p, (1, -1))
    c = Connection(1, 1, 0)
    assert c in T.detect_connections(3, include_origin=True)
    assert connection_sums(T, hd, [c])[c] == 1 == hd.y[1] - hd.y[0]


def test_invalid_lengths_rejected():
    with pytest.raises(InvalidLengths):
        is_positive_pair(Permutation((2, 1)), (1, 0), (1, -1))
    with pytest.raises(DimensionMismatch):
        is_positive_pair(Permutation((2, 1)), (1, 1), (1, -1, 0))


def test_rotation_verdicts_match_periodic_oracle():
    rng = random.Random(11)
    checked = 0
    for _ in range(150):
        pl, ql = rng.randint(1, 6), rng.randint(1, 6)
        b = (rng.randint(-5, 5), rng.randint(-5, 5))
        if q_eval(q_matrix(Permutation((2, 1))), (pl, ql), b) <= 0:
            continue
        v = is_positive_pair(Permutation((2, 1)), (pl, ql), b, FAST)
        bad = [c for c in oracles.rotation_connections(pl, ql, b, FAST.m_max) if not c[3]]
        assert (v.route == "connection") == bool(bad)
        if bad:
            w = v.witness.connection
            assert (w.i, w.j, w.m) == min(bad, key=lambda c: (c[2], c[0]))[:3]
        checked += 1
    assert checked > 40


def test_exact_cone_route_is_rigorous():
    v = is_positive_pair(Permutation((4, 3, 2, 1)), (1, 2, 3, 5), (3, 1, -1, -3), FAST)
    assert v.status == "Positive"
    assert v.parameters["rigorous"] is True
