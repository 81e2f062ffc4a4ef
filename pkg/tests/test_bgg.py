import pytest

from blobalg.bgg import (
    BGGComplex,
    ComplexError,
    build_complex,
    build_wall_ses,
    complex_defects,
    degree_defects,
    diamond_value,
    diamonds,
    euler_characteristic,
    expected_diamond_sign,
    graded_euler_characteristic,
    graded_homology,
    homology,
    mixed_chain_path,
    resolution_shapes,
    restriction_check,
    sign_repair,
)
from blobalg.cellmod import simple_basis_paths, simple_graded_dim
from blobalg.combinatorics import AlgebraConfig, Bipartition, enumerate_bipartitions
from blobalg.geometry import length, linkage_class, on_wall

BASES = [AlgebraConfig(1, e, (0, r)) for e in (3, 4, 5) for r in range(1, e)]

# Complexes whose displayed block signs do not square to zero, d <= 9, e in {3,4,5}.
# Found by exact matrix products and frozen as the witness set.
SIGN_DEFECTS = {
    (3, 1, "3,3"), (3, 1, "4,3"), (3, 1, "3,5"), (3, 1, "4,4"), (3, 1, "3,6"), (3, 1, "5,4"),
    (3, 2, "3,3"), (3, 2, "3,4"), (3, 2, "4,4"), (3, 2, "5,3"), (3, 2, "4,5"), (3, 2, "6,3"),
    (4, 1, "4,3"), (4, 1, "4,4"), (4, 2, "4,5"), (4, 2, "5,4"), (4, 3, "3,4"), (4, 3, "4,4"),
    (5, 1, "5,3"), (5, 2, "5,4"), (5, 3, "4,5"), (5, 4, "3,5"),
}


def _alcove_shapes(base, d_max):
    for d in range(1, d_max + 1):
        cfg = base.with_d(d)
        for lam in enumerate_bipartitions(cfg):
            if not on_wall(lam, cfg):
                yield cfg, lam


def test_complex_layout():
    cfg = AlgebraConfig(9, 4, (0, 1))
    lam = Bipartition(5, 4)
    shapes = resolution_shapes(lam, cfg)
    assert [[str(s) for s in level] for level in shapes] == [["5,4"], ["3,6", "7,2"], ["1,8", "9,0"]]
    cx = build_complex(lam, cfg)
    assert [[t.shift for t in term] for term in cx.terms] == [[0], [1, 1], [2, 2]]
    assert homology(cx) == [16, 0, 0]
    assert graded_homology(cx)[0] == simple_graded_dim(lam, cfg)


def test_positive_base_lists_its_own_side_first(cfg9):
    shapes = resolution_shapes(Bipartition(6, 3), cfg9)
    assert [[str(s) for s in level] for level in shapes] == [["6,3"], ["9,0", "1,8"]]
    assert homology(build_complex(Bipartition(6, 3), cfg9)) == [74, 0]


def test_least_dominant_shape_resolves_itself(cfg9):
    cx = build_complex(Bipartition(1, 8), cfg9)
    assert homology(cx) == [9]


def test_singleton_class():
    cfg = AlgebraConfig(2, 5, (0, 2))
    lam = Bipartition(1, 1)
    assert linkage_class(lam, cfg) == [lam]
    assert homology(build_complex(lam, cfg)) == [2]


def test_zero_complex_has_no_homology(cfg9):
    assert homology(BGGComplex(Bipartition(1, 8), cfg9, [])) == []


def test_wall_shapes_are_rejected():
    cfg = AlgebraConfig(8, 4, (0, 2))
    wall = Bipartition(5, 3)
    assert on_wall(wall, cfg)
    with pytest.raises(ComplexError):
        build_complex(wall, cfg)
    with pytest.raises(ComplexError):
        build_wall_ses(Bipartition(4, 4), cfg)
    with pytest.raises(ComplexError):
        restriction_check(wall, cfg)


@pytest.mark.parametrize("base", BASES, ids=str)
def test_displayed_signs(base):
    for cfg, lam in _alcove_shapes(base, 9):
        cx = build_complex(lam, cfg)
        defective = (cfg.e, cfg.rho, str(lam)) in SIGN_DEFECTS
        assert bool(complex_defects(cx)) == defective
        assert not degree_defects(cx)
        simple = len(simple_basis_paths(lam, cfg))
        assert euler_characteristic(cx) == simple
        assert graded_euler_characteristic(cx) == simple_graded_dim(lam, cfg)
        if not defective:
            h = homology(cx)
            assert h[0] == simple and not any(h[1:])
            assert graded_homology(cx)[0] == simple_graded_dim(lam, cfg)


@pytest.mark.xfail(strict=True, reason="displayed block signs disagree with the computed diamond units")
def test_displayed_signs_square_to_zero_everywhere():
    for base in BASES:
        for cfg, lam in _alcove_shapes(base, 9):
            assert not complex_defects(build_complex(lam, cfg))


@pytest.mark.parametrize("e,rho,label", sorted(SIGN_DEFECTS))
def test_repaired_signs_give_a_resolution(e, rho, label):
    lam = Bipartition.parse(label)
    cfg = AlgebraConfig(lam.d, e, (0, rho))
    signs = sign_repair(lam, cfg)
    assert signs is not None
    cx = build_complex(lam, cfg, signs=signs)
    h = homology(cx)
    assert h[0] == len(simple_basis_paths(lam, cfg)) and not any(h[1:])


def test_corrupted_sign_is_reported():
    cfg = AlgebraConfig(9, 4, (0, 1))
    lam = Bipartition(5, 4)
    assert not complex_defects(build_complex(lam, cfg))
    bad = build_complex(lam, cfg, signs={(1, Bipartition(3, 6), Bipartition(1, 8)): -1})
    assert complex_defects(bad) == [0]
    with pytest.raises(ComplexError):
        homology(bad)


@pytest.mark.parametrize("d", (10, 11))
def test_spot_checks_beyond_nine(d):
    cfg = AlgebraConfig(d, 4, (0, 2))
    for lam in enumerate_bipartitions(cfg):
        if on_wall(lam, cfg):
            continue
        cx = build_complex(lam, cfg)
        if complex_defects(cx):
            cx = build_complex(lam, cfg, signs=sign_repair(lam, cfg))
        h = homology(cx)
        assert h[0] == len(simple_basis_paths(lam, cfg)) and not any(h[1:])


@pytest.mark.parametrize("base", BASES, ids=str)
def test_wall_sequences(base):
    for d in range(1, 10):
        cfg = base.with_d(d)
        for lam in enumerate_bipartitions(cfg):
            if not on_wall(lam, cfg):
                continue
            ses = build_wall_ses(lam, cfg)
            assert ses.injective
            assert ses.cokernel_dim == len(simple_basis_paths(lam, cfg))
            if ses.source is None:
                assert ses.cokernel_dim == ses.dim


@pytest.mark.parametrize("base", BASES, ids=str)
def test_refined_branching(base):
    for cfg, lam in _alcove_shapes(base, 10):
        rep = restriction_check(lam, cfg)
        assert rep.refined_ok and rep.refined_graded_ok
        if lam.lambda1 == 0 or lam.lambda2 == 0:
            assert len(rep.removed) == 1 and rep.ok


def test_branching_counterexample():
    cfg = AlgebraConfig(2, 3, (0, 1))
    rep = restriction_check(Bipartition(1, 1), cfg)
    assert rep.dim == 1 and rep.restricted_dims == (1, 1)
    assert not rep.ok and rep.refined_ok
    assert rep.outer == (True, False)


@pytest.mark.parametrize("base", BASES, ids=str)
def test_diamonds(base):
    for d in range(2, 10):
        cfg = base.with_d(d)
        for D in diamonds(cfg):
            v = diamond_value(D, cfg)
            assert v.single_paths and v.same_support
            assert v.mixed == {mixed_chain_path(D, cfg): 1}
            assert v.ratio in (1, -1)
            assert abs(length(D.alpha, cfg)) == abs(length(D.gamma, cfg)) + 2
            assert expected_diamond_sign(D, cfg) in (1, -1)
