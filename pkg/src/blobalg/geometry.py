"""Type A~1 alcove geometry on one-column bipartitions and lattice paths.

A point with ``c1`` nodes in component 1 and ``c2`` in component 2 has integer
pairing ``p = (c1 - c2) + rho``.  The wall ``H_{w-1/2}`` is the set ``p = w*e``;
walls are indexed here by the integer ``w``, so ``H_{1/2}`` is wall 1 and
``H_{-1/2}`` is wall 0.  Lengths are exact halves stored as ``Fraction``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .combinatorics import AlgebraConfig, Bipartition, Tableau, tableau_from_steps

Path = tuple[int, ...]
"""A path is its step sequence: entry k is the component that receives k."""


def pairing_of_label(v: int, config: AlgebraConfig) -> int:
    return v + config.rho


def pairings(path: Sequence[int], config: AlgebraConfig) -> list[int]:
    """Pairing at every point ``0..d`` of the path."""
    p = config.rho
    out = [p]
    for s in path:
        p += 1 if s == 1 else -1
        out.append(p)
    return out


def wall_of_pairing(p: int, e: int) -> Optional[int]:
    return p // e if p % e == 0 else None


def length_of_pairing(p: int, e: int) -> Fraction:
    if p % e == 0:
        return Fraction(2 * (p // e) - 1, 2)
    return Fraction(p // e)


def length(shape: Bipartition, config: AlgebraConfig) -> Fraction:
    return length_of_pairing(pairing_of_label(shape.label, config), config.e)


def on_wall(shape: Bipartition, config: AlgebraConfig) -> bool:
    return length(shape, config).denominator == 2


def tableau_to_path(T: Tableau) -> Path:
    return T.steps


def path_to_tableau(path: Sequence[int]) -> Tableau:
    return tableau_from_steps(path)


def path_shape(path: Sequence[int]) -> Bipartition:
    a = sum(1 for s in path if s == 1)
    return Bipartition(a, len(path) - a)


def _origin_side(p: int, wall: int, e: int) -> bool:
    """``p`` lies strictly on the same side of the wall as the origin."""
    return p < wall * e if wall >= 1 else p > wall * e


def pair_degree(p_u: int, p_v: int, e: int) -> int:
    """Degree of the step from a point of pairing ``p_u`` to the next, ``p_v``.

    +1 when leaving a wall towards the origin, -1 when arriving on a wall from
    the far side, 0 otherwise.  Sides are taken relative to the origin, which
    matters for the wall through pairing 0.
    """
    if p_u % e == 0 and _origin_side(p_v, p_u // e, e):
        return 1
    if p_v % e == 0 and not _origin_side(p_u, p_v // e, e):
        return -1
    return 0


def path_degree(path: Sequence[int], config: AlgebraConfig) -> int:
    ps = pairings(path, config)
    return sum(pair_degree(ps[k], ps[k + 1], config.e) for k in range(len(path)))


def intersections(path: Sequence[int], wall: int, config: AlgebraConfig) -> list[int]:
    """Indices ``k`` (``0..d``) with the k-th point on the given wall, ascending."""
    target = wall * config.e
    return [k for k, p in enumerate(pairings(path, config)) if p == target]


def last_intersection(path: Sequence[int], wall: int, config: AlgebraConfig) -> Optional[int]:
    hits = intersections(path, wall, config)
    return hits[-1] if hits else None


def wall_touches(path: Sequence[int], config: AlgebraConfig) -> list[tuple[int, int]]:
    """All ``(k, wall)`` with point k on a wall, in path order."""
    e = config.e
    return [(k, p // e) for k, p in enumerate(pairings(path, config)) if p % e == 0]


def reflect_at(path: Sequence[int], k: int) -> Path:
    """Reflect the part of the path after point ``k``; only valid when point k is on a wall."""
    return tuple(path[:k]) + tuple(3 - s for s in path[k:])


def reflect(path: Sequence[int], wall: int, occurrence: int, config: AlgebraConfig) -> Path:
    """Reflect through the ``occurrence``-th (1-based) intersection with the wall."""
    hits = intersections(path, wall, config)
    if not 1 <= occurrence <= len(hits):
        raise ValueError(f"path meets wall {wall} only {len(hits)} times")
    return reflect_at(path, hits[occurrence - 1])


def reflect_last(path: Sequence[int], wall: int, config: AlgebraConfig) -> Path:
    k = last_intersection(path, wall, config)
    if k is None:
        raise ValueError(f"path does not meet wall {wall}")
    return reflect_at(path, k)


def reflect_label(v: int, wall: int, config: AlgebraConfig) -> int:
    """Image of the label ``v`` under the reflection in the given wall."""
    return 2 * (wall * config.e - config.rho) - v


def linkage_class(shape: Bipartition, config: AlgebraConfig) -> list[Bipartition]:
    """The orbit of ``shape`` among bipartitions of the same size.

    Sorted by ``|l|`` ascending, negative length first on ties.
    """
    d = shape.d
    e, rho = config.e, config.rho
    seen = {shape.label}
    frontier = [shape.label]
    while frontier:
        v = frontier.pop()
        for w in range((-d - rho) // e - 1, (d + rho) // e + 2):
            u = reflect_label(v, w, config)
            if abs(u) <= d and u not in seen and u != v:
                seen.add(u)
                frontier.append(u)
    members = [Bipartition.from_label(d, v) for v in seen]
    return sorted(members, key=lambda b: (abs(length(b, config)), length(b, config)))


def linked(a: Bipartition, b: Bipartition, config: AlgebraConfig) -> bool:
    return a.d == b.d and b in linkage_class(a, config)


def shape_dominated(lam: Bipartition, mu: Bipartition, config: AlgebraConfig) -> bool:
    """``lam`` is less dominant than ``mu`` in the block order.

    Either equal, or linked with ``|l(lam)| > |l(mu)|``.  Two distinct linked
    shapes of equal ``|l|`` sit on opposite sides and are incomparable.
    """
    if lam == mu:
        return True
    return linked(lam, mu, config) and abs(length(lam, config)) > abs(length(mu, config))


@dataclass(frozen=True)
class Side:
    """Wall indices seen from a bipartition, normalised so the maths reads one way.

    For a bipartition of non-positive length, ``far`` is H_{1/2}, ``near`` is
    H_{-1/2} and ``outer`` is the wall bounding its alcove away from the
    origin.  For positive length everything is mirrored by ``w -> 1 - w``.
    """

    far: int
    near: int
    outer: int


def side_of(shape: Bipartition, config: AlgebraConfig) -> Side:
    ell = length(shape, config)
    if ell.denominator == 2:
        w = int(ell + Fraction(1, 2))
        outer = w
        positive = w >= 1
    else:
        m = int(ell)
        positive = m > 0
        outer = m + 1 if positive else m
    if positive:
        return Side(far=0, near=1, outer=outer)
    return Side(far=1, near=0, outer=outer)


@dataclass(frozen=True)
class PathFlags:
    """Wall-contact summary of a path."""

    touched: frozenset[int]
    last_wall: Optional[int]
    length_increasing: bool


def classify_path(path: Sequence[int], config: AlgebraConfig) -> PathFlags:
    touches = wall_touches(path, config)
    e = config.e
    ps = pairings(path, config)
    lengths = [abs(length_of_pairing(p, e)) for p in ps]
    increasing = all(lengths[k] <= lengths[k + 1] for k in range(len(path)))
    return PathFlags(
        touched=frozenset(w for _, w in touches),
        last_wall=touches[-1][1] if touches else None,
        length_increasing=increasing,
    )


def meets_after(path: Sequence[int], first: int, then: int, config: AlgebraConfig) -> bool:
    """The path meets wall ``then`` at some point after meeting wall ``first``."""
    a = intersections(path, first, config)
    b = intersections(path, then, config)
    return bool(a) and bool(b) and a[0] < b[-1]


def in_simple_basis(path: Sequence[int], config: AlgebraConfig) -> bool:
    """Membership of a path in the basis set of the simple head of its endpoint."""
    shape = path_shape(path)
    side = side_of(shape, config)
    flags = classify_path(path, config)
    if side.far in flags.touched:
        return False
    if on_wall(shape, config):
        return True
    return flags.last_wall != side.outer


def bar_path(path: Sequence[int], config: AlgebraConfig) -> Path:
    """The degree-negating partner of a simple-basis path.

    Between two consecutive wall touches on the same wall the segment is
    reflected in that wall; every other segment is copied.
    """
    if not in_simple_basis(path, config):
        raise ValueError("bar path is only defined on the simple-basis paths")
    touches = wall_touches(path, config)
    out = list(path)
    for (k, w), (k2, w2) in zip(touches, touches[1:]):
        if w == w2:
            for j in range(k, k2):
                out[j] = 3 - path[j]
    return tuple(out)


def render_points(path: Sequence[int]) -> list[tuple[int, int]]:
    """Pascal-triangle coordinates ``(label, level)`` of every point of the path."""
    v = 0
    pts = [(0, 0)]
    for k, s in enumerate(path, 1):
        v += 1 if s == 1 else -1
        pts.append((v, k))
    return pts
