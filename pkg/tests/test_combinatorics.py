from itertools import permutations
from math import comb

import pytest
from hypothesis import given, strategies as st

from blobalg.combinatorics import (
    AlgebraConfig,
    Bipartition,
    Tableau,
    all_fillings,
    apply_word,
    enumerate_bipartitions,
    enumerate_std,
    garnir_nodes,
    garnir_tableaux,
    initial_tableau,
    inversions,
    reduced_word,
    residue,
    residue_sequence,
    tableau_degree,
    tableau_from_steps,
    tableau_permutation,
    zigzag_lead,
)

CONFIGS = [AlgebraConfig(1, e, (0, r)) for e in (2, 3, 4, 5) for r in range(1, e)]


def brute_std(shape):
    return [T for T in all_fillings(shape) if T.is_standard()]


def addable_removable_degree(T, config):
    """Degree as addable minus removable same-residue nodes of smaller content, written from scratch."""
    e = config.e
    total = 0
    sizes = {1: 0, 2: 0}
    for s in T.steps:
        sizes[s] += 1
        row = sizes[s]
        content = config.kappa[s - 1] + 1 - row

        def earlier(comp, r):
            c = config.kappa[comp - 1] + 1 - r
            same = (c - content) % e == 0
            return same and (c < content or (c == content and comp > s))

        for comp in (1, 2):
            if (sizes[comp] + 1, comp) != (row, s) and earlier(comp, sizes[comp] + 1):
                total += 1
            if sizes[comp] and (sizes[comp], comp) != (row, s) and earlier(comp, sizes[comp]):
                total -= 1
    return total


def test_example_tableau_residues_and_degree(cfg9):
    T = Tableau((4, 7), (1, 2, 3, 5, 6, 8, 9))
    assert residue_sequence(T, cfg9) == (2, 1, 0, 0, 3, 2, 3, 1, 0)
    assert tableau_degree(T, cfg9) == -1


@pytest.mark.parametrize("d", range(0, 9))
def test_standard_tableaux_match_brute_force(d):
    for a in range(d + 1):
        shape = Bipartition(a, d - a)
        fast = enumerate_std(shape)
        assert len(fast) == comb(d, a)
        assert {T.steps for T in fast} == {T.steps for T in brute_std(shape)}


@pytest.mark.parametrize("base", CONFIGS, ids=str)
def test_degree_matches_addable_removable_count(base):
    for d in range(1, 8):
        cfg = base.with_d(d)
        for shape in enumerate_bipartitions(cfg):
            for T in enumerate_std(shape):
                assert tableau_degree(T, cfg) == addable_removable_degree(T, cfg)


def test_residue_is_content_mod_e():
    cfg = AlgebraConfig(4, 3, (0, 2))
    assert [residue((r, 1), cfg) for r in (1, 2, 3)] == [0, 2, 1]
    assert [residue((r, 2), cfg) for r in (1, 2, 3)] == [2, 1, 0]


def test_zigzag_lead():
    assert zigzag_lead(AlgebraConfig(4, 4, (0, 2))) == 2
    assert zigzag_lead(AlgebraConfig(4, 4, (0, 1))) == 1
    assert zigzag_lead(AlgebraConfig(4, 2, (0, 1))) == 2
    assert initial_tableau(Bipartition(2, 7)).steps == (2, 1, 2, 1, 2, 2, 2, 2, 2)


@pytest.mark.parametrize("base", CONFIGS, ids=str)
def test_reduced_words(base):
    for d in range(1, 8):
        cfg = base.with_d(d)
        for shape in enumerate_bipartitions(cfg):
            init = initial_tableau(shape, cfg)
            for T in enumerate_std(shape):
                w = tableau_permutation(T, cfg)
                word = reduced_word(T, cfg)
                assert len(word) == inversions(w)
                assert apply_word(word, init) == T


def test_permutations_are_fully_commutative():
    # fully commutative is equivalent to avoiding the pattern 321
    for base in CONFIGS:
        for d in range(1, 9):
            cfg = base.with_d(d)
            for shape in enumerate_bipartitions(cfg):
                for T in enumerate_std(shape):
                    w = tableau_permutation(T, cfg)
                    n = len(w)
                    assert not any(
                        w[i] > w[j] > w[k] for i in range(n) for j in range(i + 1, n) for k in range(j + 1, n)
                    )


def test_garnir_tableaux():
    shape = Bipartition(3, 3)
    assert garnir_nodes(shape)
    for node in garnir_nodes(shape):
        for G in garnir_tableaux(node, shape):
            assert not G.is_standard()
    with pytest.raises(ValueError):
        garnir_tableaux((3, 1), Bipartition(3, 0))


def test_inadmissible_bicharge():
    with pytest.raises(ValueError):
        AlgebraConfig(3, 3, (0, 3))
    with pytest.raises(ValueError):
        AlgebraConfig(3, 3, (2, 1))


@given(st.lists(st.sampled_from([1, 2]), min_size=1, max_size=10))
def test_steps_round_trip(steps):
    T = tableau_from_steps(steps)
    assert T.steps == tuple(steps) and T.is_standard()


def test_inversions_small():
    for w in permutations(range(1, 5)):
        assert inversions(w) == sum(1 for i in range(4) for j in range(i + 1, 4) if w[i] > w[j])
