from math import comb

import pytest

from blobalg.cellmod import (
    CellModule,
    NoHomomorphism,
    build_hom,
    cell_graded_dim,
    decomposition_row,
    find_source,
    generator_image,
    gram_matrix,
    graded_decomposition_number,
    hom_sources,
    image_paths,
    intertwining_failures,
    linked_paths,
    radical_dim,
    shape_report,
    simple_basis_paths,
    simple_dim_by_quotient,
    simple_graded_dim,
)
from blobalg.combinatorics import AlgebraConfig, Bipartition, enumerate_bipartitions
from blobalg.exactla import LaurentPoly, RationalMatrix, colspace_equal, rank
from blobalg.geometry import (
    classify_path,
    intersections,
    length,
    linkage_class,
    path_degree,
    path_shape,
    reflect_at,
    shape_dominated,
)
from blobalg.rewrite import engine_for

BASES = [AlgebraConfig(1, e, (0, r)) for e in (3, 4, 5) for r in range(1, e)]

# Simple heads for d=9, e=4, kappa=(0,2); frozen from the path count, cross-checked by Gram rank
# and by the quotient by hom images.
SIMPLE_D9 = {
    "0,9": (1, {"0": 1}),
    "1,8": (9, {"-1": 2, "0": 5, "1": 2}),
    "2,7": (26, {"-2": 1, "-1": 5, "0": 14, "1": 5, "2": 1}),
    "3,6": (74, {"-3": 1, "-2": 5, "-1": 16, "0": 30, "1": 16, "2": 5, "3": 1}),
    "4,5": (16, {"0": 16}),
    "5,4": (16, {"0": 16}),
    "6,3": (74, {"-3": 1, "-2": 5, "-1": 16, "0": 30, "1": 16, "2": 5, "3": 1}),
    "7,2": (26, {"-2": 1, "-1": 5, "0": 14, "1": 5, "2": 1}),
    "8,1": (9, {"-1": 2, "0": 5, "1": 2}),
    "9,0": (1, {"0": 1}),
}


def _all(base, d_max, d_min=1):
    for d in range(d_min, d_max + 1):
        cfg = base.with_d(d)
        for lam in enumerate_bipartitions(cfg):
            yield cfg, lam


def test_frozen_simple_dimensions(cfg9):
    for lam in enumerate_bipartitions(cfg9):
        dim, graded = SIMPLE_D9[str(lam)]
        assert len(simple_basis_paths(lam, cfg9)) == dim
        assert simple_graded_dim(lam, cfg9).to_json() == graded
        assert rank(gram_matrix(lam, cfg9)) == dim
        assert simple_dim_by_quotient(lam, cfg9) == dim


def test_frozen_size_ten():
    cfg = AlgebraConfig(10, 4, (0, 2))
    assert len(simple_basis_paths(Bipartition(3, 7), cfg)) == 100
    assert len(simple_basis_paths(Bipartition(2, 8), cfg)) == 44
    assert simple_graded_dim(Bipartition(2, 8), cfg).to_json() == {"-2": 3, "-1": 10, "0": 18, "1": 10, "2": 3}


def test_decomposition_example(cfg9):
    lam = Bipartition(1, 8)
    row = dict(decomposition_row(lam, cfg9))
    t = LaurentPoly.monomial
    assert row[lam] == t(0)
    assert row[Bipartition(2, 7)] == t(1)
    assert row[Bipartition(5, 4)] == t(2)
    assert row[Bipartition(6, 3)] == t(1)
    assert row[Bipartition(9, 0)] == LaurentPoly()
    paths = linked_paths(lam, cfg9)
    assert len(paths) == 4
    assert {path_shape(p) for p in paths} == {lam, Bipartition(2, 7), Bipartition(5, 4), Bipartition(6, 3)}


def test_cell_module_dimensions(cfg9):
    for lam in enumerate_bipartitions(cfg9):
        M = CellModule(cfg9, lam)
        assert M.dim == comb(9, lam.lambda1)
        assert M.dim_t == cell_graded_dim(lam, cfg9)


@pytest.mark.parametrize("base", BASES, ids=str)
def test_triple_oracle_and_graded_identity(base):
    for cfg, mu in _all(base, 8):
        paths = len(simple_basis_paths(mu, cfg))
        assert paths == rank(gram_matrix(mu, cfg)) == simple_dim_by_quotient(mu, cfg)
        assert simple_graded_dim(mu, cfg).is_bar_invariant()
        total = LaurentPoly()
        radical = 0
        for lam in linkage_class(mu, cfg):
            if shape_dominated(lam, mu, cfg):
                d_ml = graded_decomposition_number(mu, lam, cfg)
                total = total + d_ml * simple_graded_dim(lam, cfg)
                if lam != mu:
                    radical += len(simple_basis_paths(lam, cfg))
        assert total == cell_graded_dim(mu, cfg)
        assert radical_dim(mu, cfg) == radical


@pytest.mark.parametrize("base", BASES, ids=str)
def test_homomorphisms(base):
    for cfg, mu in _all(base, 9):
        for src in hom_sources(mu, cfg).values():
            hom = build_hom(src.source, mu, cfg)
            assert rank(hom.matrix) == hom.matrix.ncols
            assert not hom.degree_violations(cfg)
            paths = image_paths(src.source, mu, cfg)
            assert len(paths) == comb(cfg.d, src.source.lambda1)
            tgt = engine_for(cfg, mu)
            span = RationalMatrix.from_columns(len(tgt.basis), [{tgt.index[p]: 1} for p in sorted(paths)])
            if cfg.d <= 8:
                assert colspace_equal(hom.matrix, span)
            image = generator_image(src.source, mu, cfg)
            assert path_degree(image, cfg) == path_degree(engine_for(cfg, src.source).z, cfg) + 1


@pytest.mark.parametrize("base", BASES, ids=str)
def test_length_increasing_paths_map_to_one_reflected_path(base):
    for cfg, mu in _all(base, 9):
        for src in hom_sources(mu, cfg).values():
            hom = build_hom(src.source, mu, cfg)
            sources = engine_for(cfg, src.source).basis
            targets = engine_for(cfg, mu).basis
            for j, col in enumerate(hom.matrix.columns()):
                p = sources[j].steps
                if not classify_path(p, cfg).length_increasing:
                    continue
                (i, c), = col.items()
                assert c in (1, -1)
                hits = intersections(p, src.wall, cfg)
                assert len(hits) == 1 and targets[i].steps == reflect_at(p, hits[0])


@pytest.mark.parametrize("base", BASES, ids=str)
def test_homomorphisms_intertwine(base):
    for cfg, mu in _all(base, 7, 2):
        for src in hom_sources(mu, cfg).values():
            assert intertwining_failures(build_hom(src.source, mu, cfg), cfg) == []


def test_missing_homomorphism(cfg9):
    with pytest.raises(NoHomomorphism):
        find_source(Bipartition(9, 0), Bipartition(1, 8), cfg9)


def test_generator_meets_wall_twice_when_e_is_2():
    cfg = AlgebraConfig(4, 2, (0, 1))
    mu = Bipartition(2, 2)
    src = hom_sources(mu, cfg)["near"]
    with pytest.raises(NoHomomorphism, match="2 times"):
        generator_image(src.source, mu, cfg)


def test_fundamental_singleton_is_its_own_head():
    cfg = AlgebraConfig(2, 5, (0, 2))
    for lam in enumerate_bipartitions(cfg):
        if len(linkage_class(lam, cfg)) == 1:
            assert len(simple_basis_paths(lam, cfg)) == comb(2, lam.lambda1)
            assert radical_dim(lam, cfg) == 0


def test_shape_report_fields(cfg9):
    rep = shape_report(Bipartition(1, 8), cfg9)
    assert rep["length"] == "-2" and rep["simple_dim"] == 9
    assert rep["decomposition_row"]["5,4"] == {"2": 1}
    assert length(Bipartition(1, 8), cfg9) == -2
