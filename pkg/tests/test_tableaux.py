from __future__ import annotations

import random
from collections import Counter

import pytest

from tropclust.data import load_reference
from tropclust.errors import HasFrozenFactor, NotAFactor, NotSemistandard
from tropclust.grassmannian import GrContext
from tropclust.tableaux import (
    DominantMonomial,
    Tableau,
    bender_knuth,
    degree,
    enumerate_ssyt,
    evacuation,
    gvector_to_tableau,
    has_frozen_factor,
    initial_cluster_monomials,
    monomial_to_tableau,
    promotion,
    quotient,
    reduce,
    small_gap_form,
    tableau_to_gvector,
    tableau_to_monomial,
    union,
)

GR36 = GrContext(3, 6)
GR48 = GrContext(4, 8)


def cols(c, k, n):
    return Tableau.from_columns(c, k, n)


def rand_tableau(rng, k, n, width):
    return Tableau.from_columns([sorted(rng.sample(range(1, n + 1), k)) for _ in range(width)], k, n)


def mono(*pairs):
    return DominantMonomial.from_dict(dict(Counter(pairs)))


def test_semistandard_validation():
    with pytest.raises(NotSemistandard):
        Tableau(3, 6, ((1, 1, 2),))
    with pytest.raises(NotSemistandard):
        Tableau(3, 6, ((2, 3, 4), (1, 3, 5)))
    with pytest.raises(NotSemistandard):
        Tableau(3, 6, ((1, 2, 7),))
    with pytest.raises(NotSemistandard):
        Tableau.from_rows([[1, 2], [3]], 6)


def test_rows_and_json_roundtrip():
    t = cols([[1, 3, 5], [2, 4, 6]], 3, 6)
    assert t.rows() == [[1, 2], [3, 4], [5, 6]]
    assert Tableau.from_rows(t.rows(), 6) == t
    assert Tableau.from_json(t.to_json()) == t
    assert str(t) == "[[1, 3, 5], [2, 4, 6]]"


def test_union_and_quotient():
    one = Tableau.empty(3, 6)
    a, b = cols([[1, 3, 5]], 3, 6), cols([[2, 4, 6]], 3, 6)
    ab = union(a, b)
    assert ab.rows() == [[1, 2], [3, 4], [5, 6]]
    assert union(ab, one) == ab
    assert [Counter(r) for r in union(ab, ab).rows()] == [Counter(r * 2) for r in ab.rows()]
    assert quotient(ab, a) == b
    assert quotient(ab, one) == ab
    assert quotient(ab, ab) == one
    with pytest.raises(NotAFactor):
        quotient(a, b)


def test_union_monoid_laws():
    rng = random.Random(1)
    for _ in range(100):
        s, t, u = (rand_tableau(rng, 3, 7, rng.randint(0, 3)) for _ in range(3))
        assert union(union(s, t), u) == union(s, union(t, u))
        assert union(s, t) == union(t, s)
        assert quotient(union(s, t), t) == s


def test_reduce():
    assert reduce(cols([[1, 2, 3]], 3, 6)).is_empty()
    assert reduce(cols([[1, 2, 3], [4, 5, 6]], 3, 6)).is_empty()
    assert reduce(Tableau.from_rows([[1, 2], [2, 3], [3, 6]], 6)) == cols([[2, 3, 6]], 3, 6)


def test_monomials():
    assert tableau_to_monomial(Tableau.from_rows([[1, 2], [3, 4], [5, 6]], 6)) == mono((1, -5), (1, -3), (2, -2), (2, 0))
    assert tableau_to_monomial(Tableau.empty(3, 6)).exps == ()
    assert tableau_to_monomial(cols([[1, 2, 3, 5]], 4, 8)) == mono((1, -1))
    with pytest.raises(ValueError):
        DominantMonomial.from_dict({(1, 0): 1})


def test_initial_monomials_of_gr48():
    ms = initial_cluster_monomials(GR48, include_frozen=True)
    assert ms[GR48.index((1, 1))] == mono((1, -1))
    assert ms[GR48.index((3, 3))] == mono((3, 1), (3, -1), (3, -3))
    assert mono((2, 0), (2, -2), (2, -4), (2, -6)) in ms[GR48.m:]
    # each initial monomial is the monomial of its Plücker column
    for node, m in zip(GR48.active_nodes(), ms):
        assert tableau_to_monomial(cols([GR48.plucker_set(node)], 4, 8)) == m


def test_small_gap_form():
    t = cols([[1, 3, 5]], 3, 6)
    s = small_gap_form(t)
    assert s.width == 2 and tableau_to_monomial(s) == tableau_to_monomial(t)
    assert small_gap_form(cols([[1, 2, 4]], 3, 6)) == cols([[1, 2, 4]], 3, 6)
    rng = random.Random(3)
    for _ in range(500):
        t = rand_tableau(rng, 3, 8, rng.randint(1, 3))
        s = small_gap_form(t)
        assert small_gap_form(s) == s
        assert tableau_to_monomial(s) == tableau_to_monomial(t)
        assert monomial_to_tableau(tableau_to_monomial(t), 3, 8) == s


def test_gvector_examples():
    assert gvector_to_tableau([-1, 0, 0, -1, 0, 1, 1, 0, 0], GR48) == cols([[1, 3, 4, 7], [2, 4, 5, 8]], 4, 8)
    assert gvector_to_tableau([-1, 0, 0, 1], GR36) == Tableau.from_rows([[1, 2], [3, 4], [5, 6]], 6)
    assert tableau_to_gvector(cols([[1, 3, 5]], 3, 6), GR36) == [-1, 1, 1, 0]
    g1 = tableau_to_gvector(Tableau.from_rows([[1, 3], [2, 5], [4, 7], [6, 8]], 8), GR48)
    assert g1 == [-1, 1, 0, 1, 0, -1, 0, -1, 1]
    with pytest.raises(HasFrozenFactor):
        tableau_to_gvector(cols([[1, 2, 3], [1, 3, 5]], 3, 6), GR36)


@pytest.mark.parametrize("kn", [(3, 6), (4, 8), (3, 9), (5, 10)])
def test_unit_vectors_give_initial_pluckers(kn):
    ctx = GrContext(*kn)
    for node in ctx.active_nodes():
        e = [0] * ctx.m
        e[ctx.index(node)] = 1
        assert gvector_to_tableau(e, ctx) == cols([ctx.plucker_set(node)], *kn)
        assert degree(e, ctx) == 1


def test_table7_gvectors():
    for row in load_reference("gr36_gvectors"):
        t = cols(row["tableau"], 3, 6)
        assert tableau_to_gvector(t, GR36) == row["g"], row["name"]
        assert gvector_to_tableau(row["g"], GR36) == t


def test_degree_on_the_gr48_cone():
    vec = load_reference("relations")["gr48"]["vectors"]
    g3, g4 = vec["g3"], vec["g4"]
    assert degree([a + b for a, b in zip(g3, g4)], GR48) == 2
    assert degree([2 * a + b for a, b in zip(g3, g4)], GR48) == 6


def _brute_gvector(t: Tableau, ctx: GrContext):
    """g-vector from exponents of Y_{b, b-2j}, built column by column from gaps."""
    e = Counter()
    for c in t.cols:
        present = set(c)
        p = 0
        for r in range(c[0], c[-1] + 1):
            if r in present:
                p += 1
            else:
                i, s = ctx.k - p, ctx.k - 2 * r + p
                e[(i, (i - s) // 2)] += 1
    return [e[(b, a)] - e[(b, a + 1)] for a, b in ctx.active_nodes()]


@pytest.mark.parametrize("kn", [(3, 6), (4, 8), (3, 9), (5, 10)])
def test_gvector_roundtrip(kn):
    ctx = GrContext(*kn)
    rng = random.Random(sum(kn))
    for _ in range(250):
        g = [rng.randint(-4, 4) for _ in range(ctx.m)]
        t = gvector_to_tableau(g, ctx)
        assert not has_frozen_factor(t)
        assert tableau_to_gvector(t, ctx) == g
        assert _brute_gvector(t, ctx) == g


def test_bender_knuth_and_friends():
    t = cols([[1, 2, 6]], 3, 6)
    assert bender_knuth(t, 3) == t
    assert promotion(cols([[1, 2, 4]], 3, 6)) == cols([[2, 3, 5]], 3, 6)
    assert promotion(Tableau.empty(3, 6)).is_empty()
    assert evacuation(cols([[1, 2, 5]], 3, 6)) == cols([[2, 5, 6]], 3, 6)
    t = Tableau.from_rows([[1, 2, 3], [4, 4, 5], [6, 7, 8]], 8)
    assert evacuation(t) == Tableau.from_rows([[1, 2, 3], [4, 5, 5], [6, 7, 8]], 8)


def test_involutions_and_promotion_order():
    rng = random.Random(7)
    for _ in range(500):
        t = rand_tableau(rng, 3, 7, rng.randint(1, 4))
        i = rng.randint(1, 6)
        assert bender_knuth(bender_knuth(t, i), i) == t
        assert evacuation(evacuation(t)) == t
    for _ in range(300):
        t = rand_tableau(rng, 3, 6, rng.randint(1, 4))
        u = t
        for _ in range(6):
            u = promotion(u)
        assert u == t


def test_single_columns_complement_under_evacuation():
    for t in enumerate_ssyt(3, 6, 1, frozen_free=False):
        assert evacuation(t) == cols([sorted(7 - x for x in t.cols[0])], 3, 6)


def test_enumeration_counts():
    assert sum(1 for _ in enumerate_ssyt(3, 6, 1, frozen_free=False)) == 20
    assert sum(1 for _ in enumerate_ssyt(3, 6, 1)) == 14
    # two-column SSYT(2,[4]): 20 by the hook-content formula
    assert sum(1 for _ in enumerate_ssyt(2, 4, 2, frozen_free=False)) == 20
