from __future__ import annotations

import itertools
import random

import numpy as np
import pytest

from tropclust.cluster_core import (
    ExchangeMatrix,
    Seed,
    alternating_table,
    check_tropical_duality,
    family_matrix,
    mutate_seed,
    mutate_word,
    skew_symmetrizer,
    transport_g_matrix,
    trop_compose,
    trop_step,
)
from tropclust.data import load_reference
from tropclust.errors import NodeOutOfRange

FAMILIES = ["C2", "C2-op", "B2", "B2-op", "A2", "A2-op"]


def words(n: int, max_len: int):
    for L in range(max_len + 1):
        yield from itertools.product(range(1, n + 1), repeat=L)


def test_first_mutation_of_c2():
    b0 = family_matrix("C2")
    s = mutate_seed(Seed.initial(b0), 1, b0)
    assert s.b.tolist() == [[0, -2], [1, 0]]
    assert s.c.tolist() == [[-1, 2], [0, 1]]
    assert s.g.tolist() == [[-1, 0], [1, 1]]
    assert mutate_seed(s, 2, b0).g.tolist() == [[-1, -2], [1, 1]]


@pytest.mark.parametrize("name", FAMILIES)
def test_alternating_tables(name):
    rows = load_reference("rank2_tables")[name]
    assert alternating_table(family_matrix(name), len(rows) - 1) == rows


@pytest.mark.parametrize("name", FAMILIES)
def test_mutation_is_an_involution(name):
    b0 = family_matrix(name)
    for w in words(2, 5):
        s = mutate_word(Seed.initial(b0), w, b0)
        for k in (1, 2):
            assert mutate_seed(mutate_seed(s, k, b0), k, b0) == s


def test_two_forms_of_the_g_rule_agree():
    rng = random.Random(1)
    for name in FAMILIES:
        b0 = family_matrix(name)
        for w in words(2, 6):
            s = mutate_word(Seed.initial(b0), w, b0)
            k = rng.choice([1, 2])
            assert mutate_seed(s, k, b0, form=1) == mutate_seed(s, k, b0, form=-1)


def test_trop_step_example_on_dual_data():
    b = family_matrix("B2").dual()
    assert trop_step([2, 5], b, 1) == [-2, 5]
    for v1, v2 in itertools.product(range(-4, 5), repeat=2):
        assert trop_step([v1, v2], b, 1) == [-v1, v1 + v2 - max(0, v1)]
    assert trop_step([0, 0], b, 2) == [0, 0]


def test_trop_step_errors():
    with pytest.raises(NodeOutOfRange):
        trop_step([1, 2], family_matrix("A2"), 3)
    with pytest.raises(ValueError):
        trop_step([1, 2], family_matrix("A2"), 1, "avg")


def test_empty_word_is_identity():
    assert trop_compose([3, -7], family_matrix("C2"), []) == [3, -7]


@pytest.mark.parametrize("name", FAMILIES)
def test_word_then_reverse_is_identity(name):
    rng = random.Random(7)
    b0 = family_matrix(name)
    for _ in range(100):
        w = [rng.choice([1, 2]) for _ in range(rng.randint(0, 8))]
        v = [rng.randint(-30, 30) for _ in range(2)]
        bt = mutate_word(Seed.initial(b0), w, b0).b
        for conv in ("max", "min"):
            there = trop_compose(v, b0, w, conv)
            assert trop_compose(there, bt, list(reversed(w)), conv) == v


@pytest.mark.parametrize("name", FAMILIES)
def test_min_over_b_is_max_over_opposite(name):
    rng = random.Random(3)
    b0 = family_matrix(name)
    for _ in range(200):
        w = [rng.choice([1, 2]) for _ in range(rng.randint(1, 6))]
        v = [rng.randint(-20, 20) for _ in range(2)]
        assert trop_compose(v, b0, w, "min") == trop_compose(v, b0.op(), w, "max")


@pytest.mark.parametrize("name", ["C2", "B2", "A2"])
def test_transport_reproduces_g_matrices(name):
    """Moving the reference vertex along u carries G_{t,t0} to G_{t,u(t0)}."""
    b0 = family_matrix(name)
    for w in words(2, 6):
        for cut in range(len(w) + 1):
            u, rest = list(w[:cut]), list(w[cut:])
            s = mutate_word(Seed.initial(b0), w, b0)
            bt = mutate_word(Seed.initial(b0), u, b0).b
            ref = mutate_word(Seed.initial(bt), rest, bt).g
            assert np.array_equal(transport_g_matrix(s.g, b0, u, "max"), ref)
            assert np.array_equal(transport_g_matrix(s.g, b0.op(), u, "min"), ref)


def test_duality_at_reference_vertex():
    b = family_matrix("C2")
    s = Seed.initial(b)
    rep = check_tropical_duality(s, Seed.initial(b.dual()), Seed.initial(b.op()), Seed.initial(b.op().dual()))
    assert all(e["ok"] for e in rep.values())


@pytest.mark.parametrize("name", ["C2", "B2", "A2"])
def test_dualities_along_words(name):
    b = family_matrix(name)
    seeds = {x: Seed.initial(m) for x, m in (("s", b), ("d", b.dual()), ("o", b.op()), ("od", b.op().dual()))}
    for w in words(2, 6):
        m = {x: mutate_word(s, w, s.b) for x, s in seeds.items()}
        rep = check_tropical_duality(m["s"], m["d"], m["o"], m["od"])
        assert all(e["ok"] for e in rep.values()), (w, rep)


def test_duality_a2_inverse_oracle():
    """C_{t3,t0} is the exact inverse of C^op_{t0,t3} recomputed from t3."""
    b = family_matrix("A2")
    s = mutate_word(Seed.initial(b), [1, 2, 1], b)
    bop_t3 = mutate_word(Seed.initial(b.op()), [1, 2, 1], b.op()).b
    back = mutate_word(Seed.initial(bop_t3), [1, 2, 1], bop_t3)
    assert np.array_equal(s.c @ back.c, np.eye(2, dtype=int))


def test_skew_symmetrizer():
    assert skew_symmetrizer(np.array([[0, 2], [-1, 0]])) is not None
    with pytest.raises(ValueError):
        ExchangeMatrix([[0, 1], [1, 0]])
    with pytest.raises(ValueError):
        ExchangeMatrix([[0, 1, 0]])
