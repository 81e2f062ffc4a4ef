"""Cell modules, the one-column homomorphisms between them and simple heads.

A homomorphism into ``Delta(mu)`` is fixed by the image of the generator of
its source: the source's initial path reflected through one wall.  The image
of every other basis vector ``psi_T`` is the generator image acted on by the
crossing word of T, computed by the straightening engine of the target.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .combinatorics import (
    AlgebraConfig,
    Bipartition,
    Tableau,
    enumerate_bipartitions,
    enumerate_std,
    initial_tableau,
    reduced_word,
    residue_sequence,
    steps_residues,
    tableau_degree,
)
from .exactla import LaurentPoly, RationalMatrix, rank, subspace_sum_rank
from .geometry import (
    Path,
    classify_path,
    in_simple_basis,
    intersections,
    length,
    linkage_class,
    meets_after,
    on_wall,
    path_degree,
    path_shape,
    reflect_at,
    reflect_label,
    shape_dominated,
    side_of,
)
from .rewrite import engine_for


class NoHomomorphism(ValueError):
    """Raised when two shapes are not in a one-column homomorphism configuration."""


def _config_for(shape: Bipartition, config: AlgebraConfig) -> AlgebraConfig:
    return config if config.d == shape.d else config.with_d(shape.d)


@dataclass(frozen=True)
class CellModule:
    """``Delta(shape)`` with its standard basis in the engine's order (dominant first)."""

    config: AlgebraConfig
    shape: Bipartition

    @property
    def basis(self) -> list[Tableau]:
        return engine_for(_config_for(self.shape, self.config), self.shape).basis

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def dim_t(self) -> LaurentPoly:
        cfg = _config_for(self.shape, self.config)
        return LaurentPoly.from_degrees(tableau_degree(T, cfg) for T in self.basis)


def cell_graded_dim(shape: Bipartition, config: AlgebraConfig) -> LaurentPoly:
    cfg = _config_for(shape, config)
    return LaurentPoly.from_degrees(path_degree(T.steps, cfg) for T in enumerate_std(shape))


# -- homomorphisms -----------------------------------------------------------


@dataclass(frozen=True)
class HomSource:
    """A source of a one-column map into ``target``.

    ``kind`` is ``"near"`` for the source on the target's own side, reached
    through its outer wall, and ``"far"`` for the source reached through the
    wall on the other side of the origin.
    """

    kind: str
    source: Bipartition
    wall: int


def hom_sources(target: Bipartition, config: AlgebraConfig) -> dict[str, HomSource]:
    """The sources that exist for ``target``; missing ones are absent, not zero maps."""
    cfg = _config_for(target, config)
    side = side_of(target, cfg)
    d = target.d
    out: dict[str, HomSource] = {}
    candidates = [("far", side.far)]
    if not on_wall(target, cfg):
        candidates.insert(0, ("near", side.outer))
    for kind, wall in candidates:
        v = reflect_label(target.label, wall, cfg)
        if abs(v) <= d:
            out[kind] = HomSource(kind, Bipartition.from_label(d, v), wall)
    return out


def find_source(source: Bipartition, target: Bipartition, config: AlgebraConfig) -> HomSource:
    for src in hom_sources(target, config).values():
        if src.source == source:
            return src
    raise NoHomomorphism(f"no one-column homomorphism defined from {source} to {target}")


def generator_image(source: Bipartition, target: Bipartition, config: AlgebraConfig) -> Path:
    """The initial path of ``source`` reflected through its unique point on the wall."""
    src = find_source(source, target, config)
    cfg = _config_for(source, config)
    init = initial_tableau(source, cfg).steps
    hits = intersections(init, src.wall, cfg)
    if len(hits) != 1:
        raise NoHomomorphism(
            f"initial path of {source} meets wall {src.wall} {len(hits)} times, expected once"
        )
    image = reflect_at(init, hits[0])
    if path_shape(image) != target:
        raise NoHomomorphism(f"reflected generator of {source} ends at {path_shape(image)}")
    return image


@dataclass(frozen=True)
class HomMatrix:
    """Matrix of a homomorphism: rows index the target basis, columns the source basis."""

    source: Bipartition
    target: Bipartition
    kind: str
    matrix: RationalMatrix
    degree: int = 1

    def degree_violations(self, config: AlgebraConfig) -> list[tuple[int, int]]:
        """Nonzero entries whose row degree is not column degree plus ``degree``."""
        cfg = _config_for(self.target, config)
        src = engine_for(cfg, self.source).basis
        tgt = engine_for(cfg, self.target).basis
        return [
            (i, j)
            for i, j, _ in self.matrix.nonzero_entries()
            if tableau_degree(tgt[i], cfg) != tableau_degree(src[j], cfg) + self.degree
        ]


@lru_cache(maxsize=None)
def _build_hom(source: Bipartition, target: Bipartition, config: AlgebraConfig) -> HomMatrix:
    cfg = _config_for(target, config)
    src = find_source(source, target, cfg)
    image = generator_image(source, target, cfg)
    src_eng = engine_for(cfg, source)
    tgt_eng = engine_for(cfg, target)
    gen = {image: Fraction(1)}
    columns = []
    for T in src_eng.basis:
        vec = tgt_eng.apply_crossings(reduced_word(T, cfg), gen)
        columns.append({tgt_eng.index[st]: c for st, c in vec.items()})
    matrix = RationalMatrix.from_columns(len(tgt_eng.basis), columns)
    return HomMatrix(source, target, src.kind, matrix)


def clear_hom_cache() -> None:
    _build_hom.cache_clear()


def build_hom(source: Bipartition, target: Bipartition, config: AlgebraConfig) -> HomMatrix:
    return _build_hom(source, target, _config_for(target, config))


def image_paths(source: Bipartition, target: Bipartition, config: AlgebraConfig) -> set[Path]:
    """Target paths indexing a spanning set of the image of the map from ``source``."""
    src = find_source(source, target, config)
    cfg = _config_for(target, config)
    side = side_of(target, cfg)
    out = set()
    for T in enumerate_std(target):
        p = T.steps
        flags = classify_path(p, cfg)
        if src.kind == "far":
            keep = side.far in flags.touched
        else:
            keep = flags.last_wall == side.outer or meets_after(p, side.near, side.far, cfg)
        if keep:
            out.add(p)
    return out


# -- simple modules ------------------------------------------------------------


def simple_basis_paths(shape: Bipartition, config: AlgebraConfig) -> list[Path]:
    cfg = _config_for(shape, config)
    return [T.steps for T in enumerate_std(shape) if in_simple_basis(T.steps, cfg)]


def simple_graded_dim(shape: Bipartition, config: AlgebraConfig) -> LaurentPoly:
    cfg = _config_for(shape, config)
    return LaurentPoly.from_degrees(path_degree(p, cfg) for p in simple_basis_paths(shape, cfg))


def simple_dim_by_quotient(shape: Bipartition, config: AlgebraConfig) -> int:
    """``dim Delta(shape)`` minus the dimension of the sum of all hom images."""
    mats = [build_hom(s.source, shape, config).matrix for s in hom_sources(shape, config).values()]
    dim = len(enumerate_std(shape))
    if not mats:
        return dim
    if len(mats) == 1:
        return dim - rank(mats[0])
    return dim - subspace_sum_rank(mats[0], mats[1])


def gram_matrix(shape: Bipartition, config: AlgebraConfig) -> RationalMatrix:
    """Matrix of the cellular form on the standard basis."""
    cfg = _config_for(shape, config)
    eng = engine_for(cfg, shape)
    rows = []
    for S in eng.basis:
        word = tuple(reversed(reduced_word(S, cfg)))
        row = {}
        for j, T in enumerate(eng.basis):
            c = eng.apply_crossings(word, {T.steps: Fraction(1)}).get(eng.z, Fraction(0))
            if c:
                row[j] = c
        rows.append(row)
    return RationalMatrix(len(rows), len(rows), rows)


def radical_dim(shape: Bipartition, config: AlgebraConfig) -> int:
    g = gram_matrix(shape, config)
    return g.nrows - rank(g)


def graded_decomposition_number(mu: Bipartition, lam: Bipartition, config: AlgebraConfig) -> LaurentPoly:
    """``[Delta(mu) : L(lam)]_t``."""
    cfg = _config_for(mu, config)
    if lam == mu:
        return LaurentPoly.monomial(0)
    if not shape_dominated(lam, mu, cfg):
        return LaurentPoly()
    diff = abs(length(lam, cfg)) - abs(length(mu, cfg))
    return LaurentPoly.monomial(int(diff))


def decomposition_row(lam: Bipartition, config: AlgebraConfig) -> list[tuple[Bipartition, LaurentPoly]]:
    """``[Delta(mu) : L(lam)]_t`` for every ``mu`` of the linkage class, in class order."""
    cfg = _config_for(lam, config)
    return [(mu, graded_decomposition_number(mu, lam, cfg)) for mu in linkage_class(lam, cfg)]


def linked_paths(shape: Bipartition, config: AlgebraConfig) -> list[Path]:
    """Paths with the residues of the initial path of ``shape`` ending at a shape dominating it."""
    cfg = _config_for(shape, config)
    target = residue_sequence(initial_tableau(shape, cfg), cfg)
    out = []
    for mu in enumerate_bipartitions(cfg):
        if not shape_dominated(shape, mu, cfg):
            continue
        out.extend(T.steps for T in enumerate_std(mu) if steps_residues(T.steps, cfg) == target)
    return out


def shape_report(shape: Bipartition, config: AlgebraConfig) -> dict:
    """JSON summary of one cell module and its simple head."""
    cfg = _config_for(shape, config)
    ell = length(shape, cfg)
    return {
        "shape": str(shape),
        "length": str(ell),
        "dim": len(enumerate_std(shape)),
        "dim_t": cell_graded_dim(shape, cfg).to_json(),
        "simple_dim": len(simple_basis_paths(shape, cfg)),
        "simple_dim_t": simple_graded_dim(shape, cfg).to_json(),
        "decomposition_row": {str(mu): p.to_json() for mu, p in decomposition_row(shape, cfg)},
    }


def generator_matrix(shape: Bipartition, letter: tuple, config: AlgebraConfig) -> RationalMatrix:
    """Matrix of one generator on the standard basis of ``Delta(shape)``."""
    cfg = _config_for(shape, config)
    eng = engine_for(cfg, shape)
    columns = []
    for T in eng.basis:
        vec = eng.apply_letter(letter, {T.steps: Fraction(1)})
        columns.append({eng.index[st]: c for st, c in vec.items()})
    return RationalMatrix.from_columns(len(eng.basis), columns)


def intertwining_failures(hom: HomMatrix, config: AlgebraConfig) -> list[tuple]:
    """Generators ``g`` with ``M g_source != g_target M``."""
    cfg = _config_for(hom.target, config)
    d = hom.target.d
    residues = {steps_residues(T.steps, cfg) for T in engine_for(cfg, hom.source).basis}
    letters: list[tuple] = [("e", i) for i in sorted(residues)]
    letters += [("y", r) for r in range(1, d + 1)]
    letters += [("psi", r) for r in range(1, d)]
    bad = []
    for letter in letters:
        left = hom.matrix @ generator_matrix(hom.source, letter, cfg)
        right = generator_matrix(hom.target, letter, cfg) @ hom.matrix
        if left != right:
            bad.append(letter)
    return bad
