"""BGG complexes of cell modules, their homology, the wall sequence and branching.

For a shape in an alcove the complex has ``C_0 = Delta(lam)`` and, in
homological degree i, the (at most two) linked shapes with
``|l| = |l(lam)| + i``, one on each side of the origin.  The shape on the
same side as ``lam`` is listed first (``lam`` in the fundamental alcove
counts as the negative side).  Differentials are signed block matrices of
one-column homomorphisms; every basis vector of a term shifted by ``<i>``
carries degree ``deg(T) + i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .cellmod import (
    _config_for,
    build_hom,
    cell_graded_dim,
    find_source,
    generator_image,
    hom_sources,
    simple_basis_paths,
    simple_graded_dim,
)
from .combinatorics import AlgebraConfig, Bipartition, enumerate_std, tableau_degree
from .exactla import LaurentPoly, RationalMatrix, block_matrix, rank
from .geometry import length, linkage_class, on_wall
from .rewrite import engine_for


class ComplexError(ValueError):
    """Raised when a complex is requested for the wrong kind of shape or fails to be a complex."""


@dataclass(frozen=True)
class Term:
    shape: Bipartition
    shift: int
    dim: int

    def to_json(self) -> dict:
        return {"shape": str(self.shape), "shift": self.shift, "dim": self.dim}


@dataclass
class BGGComplex:
    """Terms ``C_i`` as lists of summands and differentials ``delta_i: C_{i+1} -> C_i``."""

    base: Bipartition
    config: AlgebraConfig
    terms: list[list[Term]]
    differentials: list[RationalMatrix] = field(default_factory=list)

    def dims(self) -> list[int]:
        return [sum(t.dim for t in term) for term in self.terms]

    def basis_degrees(self, i: int) -> list[int]:
        """Shifted degree of every basis vector of ``C_i`` in block order."""
        out = []
        for t in self.terms[i]:
            basis = engine_for(self.config, t.shape).basis
            out.extend(tableau_degree(T, self.config) + t.shift for T in basis)
        return out

    def to_json(self) -> dict:
        return {
            "lambda": str(self.base),
            "terms": [[t.to_json() for t in term] for term in self.terms],
        }


def _sides(lam: Bipartition, config: AlgebraConfig) -> int:
    """+1 when the base shape counts as positive, -1 otherwise."""
    return 1 if length(lam, config) > 0 else -1


def resolution_shapes(lam: Bipartition, config: AlgebraConfig) -> list[list[Bipartition]]:
    """Shapes of each homological degree: same side first, then the other side."""
    cfg = _config_for(lam, config)
    ell0 = abs(length(lam, cfg))
    sign = _sides(lam, cfg)
    by_len: dict[tuple, Bipartition] = {}
    for nu in linkage_class(lam, cfg):
        ell = length(nu, cfg)
        side = 1 if ell > 0 else -1
        by_len[(abs(ell), side)] = nu
    out = [[lam]]
    i = 1
    while True:
        level = [by_len.get((ell0 + i, sign)), by_len.get((ell0 + i, -sign))]
        level = [nu for nu in level if nu is not None]
        if not level:
            return out
        out.append(level)
        i += 1


def build_complex(lam: Bipartition, config: AlgebraConfig, signs: Optional[dict] = None) -> BGGComplex:
    """The signed complex of a shape lying in an alcove.

    ``signs`` overrides block signs, keyed by ``(i, row_shape, col_shape)``;
    only negative-control fixtures use it.
    """
    cfg = _config_for(lam, config)
    if on_wall(lam, cfg):
        raise ComplexError(f"{lam} lies on a wall; use build_wall_ses")
    ell0 = int(abs(length(lam, cfg)))
    shapes = resolution_shapes(lam, cfg)
    terms = [
        [Term(nu, i, len(enumerate_std(nu))) for nu in level] for i, level in enumerate(shapes)
    ]
    cx = BGGComplex(lam, cfg, terms)
    for i in range(len(shapes) - 1):
        rows, cols = shapes[i], shapes[i + 1]
        blocks: list[list[Optional[RationalMatrix]]] = []
        for r_shape in rows:
            brow: list[Optional[RationalMatrix]] = []
            sources = {h.source for h in hom_sources(r_shape, cfg).values()}
            for c_shape in cols:
                if c_shape not in sources:
                    brow.append(None)
                    continue
                hom = build_hom(c_shape, r_shape, cfg).matrix
                sign = _block_sign(i, ell0, rows, cols, r_shape, c_shape, cfg)
                if signs is not None:
                    sign = signs.get((i, r_shape, c_shape), sign)
                brow.append(hom if sign == 1 else -hom)
            blocks.append(brow)
        cx.differentials.append(
            block_matrix(blocks, [t.dim for t in terms[i]], [t.dim for t in terms[i + 1]])
        )
    return cx


def _block_sign(
    i: int,
    ell0: int,
    rows: list[Bipartition],
    cols: list[Bipartition],
    r_shape: Bipartition,
    c_shape: Bipartition,
    config: AlgebraConfig,
) -> int:
    """Sign of the block from ``c_shape`` to ``r_shape`` in ``delta_i``.

    ``delta_0`` and the one-column truncated differential carry no signs.
    Otherwise maps between shapes on the same side get ``-1`` when
    ``|l(lam)| + i`` is even and maps across the origin get ``-1`` when odd.
    """
    if i == 0 or len(cols) == 1:
        return 1
    same = (length(r_shape, config) > 0) == (length(c_shape, config) > 0)
    even = (ell0 + i) % 2 == 0
    return -1 if same == even else 1


def sign_repair(lam: Bipartition, config: AlgebraConfig) -> Optional[dict]:
    """Block signs that make the complex of ``lam`` square to zero, found level by level.

    A diagnostic for comparing the computed hom normalisation with the
    displayed sign matrices; ``None`` when no choice works.
    """
    from itertools import product

    cfg = _config_for(lam, config)
    shapes = resolution_shapes(lam, cfg)
    chosen: dict = {}
    for i in range(1, len(shapes) - 1):
        keys = [(i, r, c) for r in shapes[i] for c in shapes[i + 1]]
        for trial in product((1, -1), repeat=len(keys)):
            signs = {**chosen, **dict(zip(keys, trial))}
            cx = build_complex(lam, cfg, signs=signs)
            if not (cx.differentials[i - 1] @ cx.differentials[i]).is_zero():
                continue
            chosen = signs
            break
        else:
            return None
    return chosen


def complex_defects(cx: BGGComplex) -> list[int]:
    """Indices i with ``delta_i delta_{i+1} != 0``."""
    return [
        i
        for i in range(len(cx.differentials) - 1)
        if not (cx.differentials[i] @ cx.differentials[i + 1]).is_zero()
    ]


def homology(cx: BGGComplex) -> list[int]:
    """``dim H_i = dim C_i - rank delta_{i-1} - rank delta_i``; refuses non-complexes."""
    bad = complex_defects(cx)
    if bad:
        raise ComplexError(f"delta_{bad[0]} delta_{bad[0] + 1} is not zero for {cx.base}")
    dims = cx.dims()
    ranks = [rank(m) for m in cx.differentials]
    out = []
    for i, dim in enumerate(dims):
        r_in = ranks[i - 1] if i >= 1 else 0
        r_out = ranks[i] if i < len(ranks) else 0
        out.append(dim - r_in - r_out)
    return out


def _degree_block(m: RationalMatrix, row_deg: list[int], col_deg: list[int], k: int) -> RationalMatrix:
    rows = [i for i, x in enumerate(row_deg) if x == k]
    cols = [j for j, x in enumerate(col_deg) if x == k]
    cidx = {j: n for n, j in enumerate(cols)}
    data = [{cidx[j]: v for j, v in m.rows[i].items() if j in cidx} for i in rows]
    return RationalMatrix(len(rows), len(cols), data)


def graded_homology(cx: BGGComplex) -> list[LaurentPoly]:
    """Graded dimensions of the homology, degree by degree using the shifts."""
    homology(cx)  # refuse non-complexes
    degs = [cx.basis_degrees(i) for i in range(len(cx.terms))]
    out = []
    for i in range(len(cx.terms)):
        coeffs: dict[int, int] = {}
        for k in sorted(set(degs[i])):
            dim = degs[i].count(k)
            r_in = r_out = 0
            if i >= 1:
                r_in = rank(_degree_block(cx.differentials[i - 1], degs[i - 1], degs[i], k))
            if i < len(cx.differentials):
                r_out = rank(_degree_block(cx.differentials[i], degs[i], degs[i + 1], k))
            if dim - r_in - r_out:
                coeffs[k] = dim - r_in - r_out
        out.append(LaurentPoly(coeffs))
    return out


def degree_defects(cx: BGGComplex) -> list[int]:
    """Differentials that are not homogeneous of degree 0 after the shifts."""
    bad = []
    for i, m in enumerate(cx.differentials):
        rdeg, cdeg = cx.basis_degrees(i), cx.basis_degrees(i + 1)
        if any(rdeg[r] != cdeg[c] for r, c, _ in m.nonzero_entries()):
            bad.append(i)
    return bad


def euler_characteristic(cx: BGGComplex) -> int:
    return sum((-1) ** i * d for i, d in enumerate(cx.dims()))


def graded_euler_characteristic(cx: BGGComplex) -> LaurentPoly:
    """``sum_i (-1)^i t^i dim_t Delta(nu)`` over the summands of every term."""
    total = LaurentPoly()
    for i, term in enumerate(cx.terms):
        for t in term:
            part = cell_graded_dim(t.shape, cx.config).shift(t.shift)
            total = total + (part if i % 2 == 0 else -part)
    return total


def complex_report(lam: Bipartition, config: AlgebraConfig) -> dict:
    cx = build_complex(lam, config)
    ranks = [rank(m) for m in cx.differentials]
    hom = homology(cx)
    graded = graded_homology(cx)
    return {
        **cx.to_json(),
        "ranks": ranks,
        "homology": hom,
        "graded_H0": graded[0].to_json(),
        "simple_dim": len(simple_basis_paths(lam, cx.config)),
    }


# -- wall shapes -----------------------------------------------------------------


@dataclass
class WallSequence:
    """``0 -> Delta(mu)<1> -> Delta(lam)`` for a shape on a wall, or ``Delta(lam)`` alone."""

    base: Bipartition
    source: Optional[Bipartition]
    differential: Optional[RationalMatrix]
    dim: int

    @property
    def rank(self) -> int:
        return rank(self.differential) if self.differential is not None else 0

    @property
    def injective(self) -> bool:
        return self.differential is None or self.rank == self.differential.ncols

    @property
    def cokernel_dim(self) -> int:
        return self.dim - self.rank


def build_wall_ses(lam: Bipartition, config: AlgebraConfig) -> WallSequence:
    cfg = _config_for(lam, config)
    if not on_wall(lam, cfg):
        raise ComplexError(f"{lam} lies in an alcove; use build_complex")
    dim = len(enumerate_std(lam))
    far = hom_sources(lam, cfg).get("far")
    if far is None:
        return WallSequence(lam, None, None, dim)
    return WallSequence(lam, far.source, build_hom(far.source, lam, cfg).matrix, dim)


# -- restriction -------------------------------------------------------------------


@dataclass(frozen=True)
class RestrictionReport:
    """Branching data for one alcove shape.

    ``ok`` tests the sum over every removable node.  ``refined_ok`` drops the
    removals landing on the wall farther from the origin than ``shape``,
    which restriction does not reach as a simple summand.
    """

    shape: Bipartition
    removed: tuple[Bipartition, ...]
    dim: int
    restricted_dims: tuple[int, ...]
    outer: tuple[bool, ...]
    graded_dim: LaurentPoly
    restricted_graded: tuple[LaurentPoly, ...]

    @property
    def ok(self) -> bool:
        return self.dim == sum(self.restricted_dims)

    @property
    def graded_ok(self) -> bool:
        return self.graded_dim == _poly_sum(self.restricted_graded)

    @property
    def refined_ok(self) -> bool:
        return self.dim == sum(x for x, o in zip(self.restricted_dims, self.outer) if not o)

    @property
    def refined_graded_ok(self) -> bool:
        kept = [p for p, o in zip(self.restricted_graded, self.outer) if not o]
        return self.graded_dim == _poly_sum(kept)

    def to_json(self) -> dict:
        return {
            "shape": str(self.shape),
            "removed": [str(s) for s in self.removed],
            "outer_wall": list(self.outer),
            "dim": self.dim,
            "restricted_dims": list(self.restricted_dims),
            "ok": self.ok,
            "graded_ok": self.graded_ok,
            "refined_ok": self.refined_ok,
            "refined_graded_ok": self.refined_graded_ok,
        }


def _poly_sum(polys) -> LaurentPoly:
    total = LaurentPoly()
    for p in polys:
        total = total + p
    return total


def removable_shapes(lam: Bipartition) -> list[Bipartition]:
    out = []
    if lam.lambda1:
        out.append(Bipartition(lam.lambda1 - 1, lam.lambda2))
    if lam.lambda2:
        out.append(Bipartition(lam.lambda1, lam.lambda2 - 1))
    return out


def restriction_check(lam: Bipartition, config: AlgebraConfig) -> RestrictionReport:
    """Compare ``dim L_d(lam)`` with the simple heads of the shapes one node smaller."""
    cfg = _config_for(lam, config)
    if on_wall(lam, cfg):
        raise ComplexError(f"{lam} lies on a wall; branching is stated for alcove shapes")
    removed = removable_shapes(lam)
    small = cfg.with_d(lam.d - 1)
    ell = abs(length(lam, cfg))
    return RestrictionReport(
        lam,
        tuple(removed),
        len(simple_basis_paths(lam, cfg)),
        tuple(len(simple_basis_paths(nu, small)) for nu in removed),
        tuple(abs(length(nu, small)) > ell for nu in removed),
        simple_graded_dim(lam, cfg),
        tuple(simple_graded_dim(nu, small) for nu in removed),
    )


# -- diamonds ------------------------------------------------------------------------


@dataclass(frozen=True)
class Diamond:
    """Two chains ``alpha -> beta -> gamma`` and ``alpha -> beta' -> gamma``.

    ``beta`` lies on the same side as ``alpha``; ``beta'`` on the other side.
    """

    alpha: Bipartition
    beta: Bipartition
    beta_prime: Bipartition
    gamma: Bipartition


def diamonds(config: AlgebraConfig) -> list[Diamond]:
    """Every diamond of one-column maps among bipartitions of ``config.d``."""
    from .combinatorics import enumerate_bipartitions

    out = []
    for gamma in enumerate_bipartitions(config):
        mids = hom_sources(gamma, config)
        for mid in mids.values():
            for src in hom_sources(mid.source, config).values():
                alpha = src.source
                if abs(length(alpha, config)) != abs(length(gamma, config)) + 2:
                    continue
                others = [
                    m.source
                    for m in mids.values()
                    if m.source != mid.source
                    and any(s.source == alpha for s in hom_sources(m.source, config).values())
                ]
                if not others:
                    continue
                a_pos = length(alpha, config) > 0
                if (length(mid.source, config) > 0) == a_pos:
                    out.append(Diamond(alpha, mid.source, others[0], gamma))
    return sorted(set(out), key=lambda x: (x.gamma.label, x.alpha.label))


@dataclass(frozen=True)
class DiamondValue:
    diamond: Diamond
    same_side: dict[tuple[int, ...], Fraction]
    mixed: dict[tuple[int, ...], Fraction]

    @property
    def single_paths(self) -> bool:
        return len(self.same_side) == 1 and len(self.mixed) == 1

    @property
    def same_support(self) -> bool:
        return set(self.same_side) == set(self.mixed)

    @property
    def ratio(self) -> Optional[Fraction]:
        """``same_side / mixed`` when both are multiples of one basis path."""
        if not (self.single_paths and self.same_support):
            return None
        (p, a), = self.same_side.items()
        return a / self.mixed[p]


def _compose_on_generator(chain: list[Bipartition], config: AlgebraConfig) -> dict:
    alpha = chain[0]
    vec = {engine_for(config, alpha).z: Fraction(1)}
    for src, tgt in zip(chain, chain[1:]):
        hom = build_hom(src, tgt, config)
        src_basis = engine_for(config, src).basis
        tgt_basis = engine_for(config, tgt).basis
        col_of = {T.steps: j for j, T in enumerate(src_basis)}
        out: dict = {}
        for st, c in vec.items():
            j = col_of[st]
            for i, row in enumerate(hom.matrix.rows):
                x = row.get(j)
                if x:
                    key = tgt_basis[i].steps
                    out[key] = out.get(key, 0) + c * x
        vec = {k: v for k, v in out.items() if v}
    return vec


def diamond_value(diamond: Diamond, config: AlgebraConfig) -> DiamondValue:
    cfg = _config_for(diamond.gamma, config)
    same = _compose_on_generator([diamond.alpha, diamond.beta, diamond.gamma], cfg)
    mixed = _compose_on_generator([diamond.alpha, diamond.beta_prime, diamond.gamma], cfg)
    return DiamondValue(diamond, same, mixed)


def expected_diamond_sign(diamond: Diamond, config: AlgebraConfig) -> int:
    """``(-1)^{|l(gamma)|}``: the same-side chain against the mixed chain."""
    return -1 if int(abs(length(diamond.gamma, config))) % 2 else 1


def mixed_chain_path(diamond: Diamond, config: AlgebraConfig) -> tuple[int, ...]:
    """The path the mixed chain is expected to produce: two successive generator reflections."""
    first = generator_image(diamond.alpha, diamond.beta_prime, config)
    src = find_source(diamond.beta_prime, diamond.gamma, config)
    from .geometry import intersections, reflect_at

    hits = intersections(first, src.wall, config)
    return reflect_at(first, hits[-1]) if hits else first
