"""Straightening engine for cell modules of the blob algebra.

The cell module of shape ``lam`` is the cyclic module on ``z = psi_{T^lam}``
with basis ``psi_T = psi_{i_1} ... psi_{i_k} z`` for the canonical reduced
word of w_T.  Generators act on a basis vector by prepending a letter and
rewriting with the KLR relations until only standard words remain.

Three facts keep the rewriting short:

* w_T is fully commutative for every standard one-column tableau, so psi_T
  does not depend on the chosen reduced word;
* a left descent ``s_r`` of w_T always swaps entries in different columns,
  so ``s_r T`` is standard again;
* if r and r+1 sit in the same column of T, sliding ``psi_r`` through w_T by
  commutations and braid moves ends on a Garnir word acting on z.  That
  word is zero when it starts inside the belt; at the far end its value is
  the unique vector of matching residues and degree that the quadratic
  relation allows, and the braid corrections carry the rest.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional, Protocol, Sequence

from .combinatorics import (
    AlgebraConfig,
    Bipartition,
    Tableau,
    enumerate_std,
    initial_tableau,
    reduced_word,
    steps_residues,
    tableau_degree,
    tableau_from_steps,
)

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

Steps = tuple[int, ...]
Vec = dict[Steps, Fraction]


class StraighteningError(RuntimeError):
    """Raised when the rewriting reaches a word it cannot certify."""


class MemoStore(Protocol):
    def get(self, key: tuple) -> Optional[Vec]: ...

    def put(self, key: tuple, value: Vec) -> None: ...


class DictStore:
    """Default in-process memo store."""

    def __init__(self) -> None:
        self._data: dict[tuple, Vec] = {}

    def get(self, key: tuple) -> Optional[Vec]:
        return self._data.get(key)

    def put(self, key: tuple, value: Vec) -> None:
        self._data[key] = value


# Letters of generator words: ("e", residues), ("y", r) or ("psi", r).
Letter = tuple[str, object]


def idem(i: Sequence[int]) -> Letter:
    return ("e", tuple(i))


def dot(r: int) -> Letter:
    return ("y", r)


def crossing(r: int) -> Letter:
    return ("psi", r)


def psi_word(word: Iterable[int]) -> list[Letter]:
    return [crossing(r) for r in word]


def _add(acc: Vec, vec: Mapping[Steps, Fraction], c: Fraction | int = 1) -> None:
    for k, x in vec.items():
        v = acc.get(k, 0) + c * x
        if v:
            acc[k] = v
        else:
            acc.pop(k, None)


def _swap(st: Steps, r: int) -> Steps:
    lst = list(st)
    lst[r - 1], lst[r] = lst[r], lst[r - 1]
    return tuple(lst)


def adjacent(a: int, b: int, e: int) -> bool:
    return (a - b) % e in (1, e - 1)


def quadratic_terms(r: int, i: Sequence[int], e: int) -> list[tuple[int, tuple[int, ...]]]:
    """``psi_r^2 e(i)`` as a list of ``(coeff, dot word)``; the dot word is applied right to left."""
    a, b = i[r - 1], i[r]
    if a == b:
        return []
    if not adjacent(a, b, e):
        return [(1, ())]
    if e == 2:
        # (y_{r+1} - y_r)(y_r - y_{r+1}) = -y_r^2 + 2 y_r y_{r+1} - y_{r+1}^2
        return [(-1, (r, r)), (2, (r, r + 1)), (-1, (r + 1, r + 1))]
    if (a - b) % e == 1:
        return [(1, (r + 1,)), (-1, (r,))]
    return [(1, (r,)), (-1, (r + 1,))]


def braid_terms(r: int, i: Sequence[int], e: int) -> list[tuple[int, tuple[int, ...]]]:
    """``(psi_r psi_{r+1} psi_r - psi_{r+1} psi_r psi_{r+1}) e(i)``.

    The sign is the one forced by the quadratic and dot-slide relations in
    the faithful polynomial representation: -1 when
    ``i_{r+2} = i_r = i_{r+1} - 1``, +1 when ``i_{r+2} = i_r = i_{r+1} + 1``,
    and ``y_r - 2 y_{r+1} + y_{r+2}`` for e = 2.
    """
    if i[r - 1] != i[r + 1] or not adjacent(i[r - 1], i[r], e):
        return []
    if e == 2:
        return [(-2, (r + 1,)), (1, (r,)), (1, (r + 2,))]
    if (i[r] - i[r - 1]) % e == 1:
        return [(-1, ())]
    return [(1, ())]


def crossing_degree(r: int, i: Sequence[int], e: int) -> int:
    """Degree of ``psi_r e(i)``: -2 on equal residues, +1 on adjacent ones, else 0.

    Adjacent residues must give +1 for the quadratic relation
    ``psi_r^2 e(i) = (y_{r+1} - y_r) e(i)`` to be homogeneous; for e = 2 the
    residues are adjacent from both sides and the degree is +2.
    """
    a, b = i[r - 1], i[r]
    if a == b:
        return -2
    if not adjacent(a, b, e):
        return 0
    return 2 if e == 2 else 1


def _left_descent(inv: Sequence[int]) -> Optional[int]:
    """Smallest left descent of a permutation given by its inverse (1-based values)."""
    for a in range(1, len(inv)):
        if inv[a - 1] > inv[a]:
            return a
    return None


def _reduced_word_of(perm: Sequence[int]) -> list[int]:
    inv = [0] * len(perm)
    for j, k in enumerate(perm):
        inv[k - 1] = j
    word = []
    while True:
        a = _left_descent(inv)
        if a is None:
            return word
        word.append(a)
        inv[a - 1], inv[a] = inv[a], inv[a - 1]


def _left_mult(perm: list[int], a: int) -> list[int]:
    """``s_a * perm`` in one-line notation."""
    return [a + 1 if x == a else a if x == a + 1 else x for x in perm]


@dataclass
class CellVector:
    """A rational combination of standard basis vectors of one cell module."""

    shape: Bipartition
    terms: dict[Tableau, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.terms = {T: Fraction(c) for T, c in self.terms.items() if c != 0}
        for T in self.terms:
            if T.shape != self.shape or not T.is_standard():
                raise ValueError(f"{T} is not a standard tableau of {self.shape}")

    @classmethod
    def basis(cls, T: Tableau) -> "CellVector":
        return cls(T.shape, {T: Fraction(1)})

    def __add__(self, other: "CellVector") -> "CellVector":
        acc = dict(self.terms)
        for T, c in other.terms.items():
            acc[T] = acc.get(T, 0) + c
        return CellVector(self.shape, acc)

    def scale(self, c: object) -> "CellVector":
        return CellVector(self.shape, {T: Fraction(c) * x for T, x in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def _raw(self) -> Vec:
        return {T.steps: c for T, c in self.terms.items()}

    @classmethod
    def _from_raw(cls, shape: Bipartition, vec: Mapping[Steps, Fraction]) -> "CellVector":
        return cls(shape, {tableau_from_steps(st): c for st, c in vec.items()})


class StraighteningEngine:
    """Generator actions on the cell module of one shape."""

    def __init__(self, config: AlgebraConfig, shape: Bipartition, store: Optional[MemoStore] = None):
        if shape.d != config.d:
            config = config.with_d(shape.d)
        self.config = config
        self.shape = shape
        self.e = config.e
        self.d = shape.d
        self.store: MemoStore = store if store is not None else DictStore()
        self._key = (config.e, config.kappa, shape.lambda1, shape.lambda2)
        self.init = initial_tableau(shape, config)
        self.z: Steps = self.init.steps
        self.m = min(shape.lambda1, shape.lambda2)
        # T^lam entry of each node
        self._init_entry: dict[tuple[int, int], int] = {}
        for comp, col in ((1, self.init.col1), (2, self.init.col2)):
            for r, k in enumerate(col, 1):
                self._init_entry[(r, comp)] = k
        self._init_res = steps_residues(self.z, config)
        tabs = enumerate_std(shape)

        def dominance_key(T: Tableau) -> tuple:
            v, tot = 0, 0
            for s in T.steps:
                v += 1 if s == 1 else -1
                tot += abs(v)
            return (tot, T.steps)

        self.basis: list[Tableau] = sorted(tabs, key=dominance_key)
        self.index: dict[Steps, int] = {T.steps: n for n, T in enumerate(self.basis)}
        self._residues: dict[Steps, tuple[int, ...]] = {}
        self._degrees: dict[Steps, int] = {}
        self._active: set[tuple] = set()

    # -- bookkeeping -------------------------------------------------------

    def residues(self, st: Steps) -> tuple[int, ...]:
        res = self._residues.get(st)
        if res is None:
            res = steps_residues(st, self.config)
            self._residues[st] = res
        return res

    def degree(self, st: Steps) -> int:
        deg = self._degrees.get(st)
        if deg is None:
            deg = tableau_degree(tableau_from_steps(st), self.config)
            self._degrees[st] = deg
        return deg

    def _nodes(self, st: Steps) -> list[tuple[int, int]]:
        counts = [0, 0]
        out = []
        for s in st:
            counts[s - 1] += 1
            out.append((counts[s - 1], s))
        return out

    def _memo(self, kind: str, n: int, st: Steps, compute: Callable[[], Vec]) -> Vec:
        key = self._key + (kind, n, st)
        hit = self.store.get(key)
        if hit is not None:
            return hit
        if key in self._active:
            raise StraighteningError(f"rewriting loops on {kind}_{n} applied to {st}")
        self._active.add(key)
        try:
            val = compute()
        finally:
            self._active.discard(key)
        self.store.put(key, val)
        return val

    # -- generators on basis vectors --------------------------------------

    def crossing_on_basis(self, r: int, st: Steps) -> Vec:
        if not 1 <= r < self.d:
            raise ValueError(f"crossing index {r} out of range for d={self.d}")
        return self._memo("psi", r, st, lambda: self._crossing(r, st))

    def dot_on_basis(self, s: int, st: Steps) -> Vec:
        if not 1 <= s <= self.d:
            raise ValueError(f"dot index {s} out of range for d={self.d}")
        return self._memo("y", s, st, lambda: self._dot(s, st))

    def _crossing(self, r: int, st: Steps) -> Vec:
        nodes = self._nodes(st)
        na, nb = nodes[r - 1], nodes[r]
        if na[1] != nb[1]:
            if self._init_entry[na] < self._init_entry[nb]:
                return {_swap(st, r): Fraction(1)}
            lower = _swap(st, r)
            out: Vec = {}
            for c, dots in quadratic_terms(r, self.residues(lower), self.e):
                _add(out, self.apply_dots(dots, {lower: Fraction(1)}), c)
            return out
        return self._straighten_column(r, st, na, nb)

    def _straighten_column(self, r: int, st: Steps, na: tuple[int, int], nb: tuple[int, int]) -> Vec:
        """``psi_r psi_T`` when r and r+1 are stacked in one column of T."""
        u, v = self._init_entry[na], self._init_entry[nb]
        T = tableau_from_steps(st)
        w = [0] * self.d
        for node, k in self._init_entry.items():
            w[k - 1] = T.entry(node)
        if v == u + 1:
            base, x, j, garnir = self.z, w, u, (u,)
        else:
            assert v == u + 2, "column entries of T^lam differ by one or two"
            c = w[u]  # entry of T at the node holding u+1 in T^lam
            if c < r:
                x = _left_mult_right(w, u)
                base, j, garnir = _swap(self.z, u), u + 1, (u + 1, u)
            else:
                x = _left_mult_right(w, u + 1)
                base, j, garnir = _swap(self.z, u + 1), u, (u, u + 1)
        return self._slide(r, x, j, base, self._garnir_value(garnir))

    def _garnir_value(self, word: tuple[int, ...]) -> Vec:
        """``psi_word z`` for a one- or two-letter Garnir word.

        Words with both letters inside the Garnir belt vanish.  At the far end
        of the belt (the longer column continuing past the zig-zag) the word
        vanishes when no standard tableau shares its residues and degree.
        Otherwise ``X = psi_a psi_b z`` is the unique vector of that weight
        space with ``psi_a X = psi_a^2 psi_b z``, the right side being
        resolved by the quadratic relation.
        """
        if len(word) == 1:
            return {}
        t = min(word)
        if 1 <= t <= 2 * self.m - 2:
            return {}
        return self._memo("garnir", t, word, lambda: self._solve_garnir(word))

    def _solve_garnir(self, word: tuple[int, ...]) -> Vec:
        a, b = word
        res = list(self._init_res)
        deg = self.degree(self.z)
        for r in (b, a):
            deg += crossing_degree(r, res, self.e)
            res[r - 1], res[r] = res[r], res[r - 1]
        target_res = tuple(res)
        cands = [
            T.steps
            for T in self.basis
            if self.residues(T.steps) == target_res and self.degree(T.steps) == deg
        ]
        if not cands:
            return {}
        lower = _swap(self.z, b)
        rhs: Vec = {}
        for c, dots in quadratic_terms(a, self.residues(lower), self.e):
            _add(rhs, self.apply_dots(dots, {lower: Fraction(1)}), c)
        images = [self.crossing_on_basis(a, st) for st in cands]
        rows = sorted({st for im in images for st in im} | set(rhs))
        solution = _solve_exact(
            [[im.get(st, Fraction(0)) for im in images] for st in rows],
            [rhs.get(st, Fraction(0)) for st in rows],
            len(cands),
        )
        if solution is None:
            raise StraighteningError(f"psi_{word} z has no unique consistent value for {self.shape}")
        return {st: c for st, c in zip(cands, solution) if c}

    def _slide(self, k: int, x: list[int], j: int, base: Steps, garnir: Vec) -> Vec:
        """``psi_k psi_x B = psi_x psi_j B + corrections``.

        Invariant: ``x(j) = k`` and ``x(j+1) = k+1``.  ``garnir`` is the value
        of ``psi_j B``; the main term is only evaluated when it is nonzero.
        """
        base_res = self.residues(base)
        inv = [0] * self.d
        for p, val in enumerate(x):
            inv[val - 1] = p
        x = list(x)
        prefix: list[int] = []
        out: Vec = {}
        while True:
            a = _left_descent(inv)
            if a is None:
                break
            if abs(a - k) > 1:
                prefix.append(a)
                x = _left_mult(x, a)
                inv[a - 1], inv[a] = inv[a], inv[a - 1]
                continue
            if a == k:
                raise StraighteningError("slide invariant broken")
            if a == k + 1:
                first, second, braid_at, sign = k + 1, k, k, 1
            else:
                first, second, braid_at, sign = k - 1, k, k - 1, -1
            x = _left_mult(_left_mult(x, first), second)
            inv[first - 1], inv[first] = inv[first], inv[first - 1]
            if not inv[second - 1] > inv[second]:
                raise StraighteningError("expected a second descent during slide")
            inv[second - 1], inv[second] = inv[second], inv[second - 1]
            # residues of psi_x B: entry p carries the residue of base entry x^{-1}(p)
            res = tuple(base_res[inv[p]] for p in range(self.d))
            terms = braid_terms(braid_at, res, self.e)
            if terms:
                vec = self.apply_crossings(_reduced_word_of(x), {base: Fraction(1)})
                for c, dots in terms:
                    part = self.apply_dots(dots, vec)
                    part = self.apply_crossings(prefix, part)
                    _add(out, part, sign * c)
            prefix.extend([first, second])
            k = first
        if k != j:
            raise StraighteningError("slide ended away from the Garnir position")
        if garnir:
            _add(out, self.apply_crossings(prefix, garnir))
        return out

    def _dot(self, s: int, st: Steps) -> Vec:
        if st == self.z:
            return {}
        word = reduced_word(tableau_from_steps(st), self.config)
        a = word[0]
        lower = _swap(st, a)
        j = self.residues(lower)
        delta = j[a - 1] == j[a]
        one = {lower: Fraction(1)}
        out: Vec = {}
        if s == a + 1:
            _add(out, self.apply_crossing(a, self.apply_dot(a, one)))
            if delta:
                _add(out, one)
        elif s == a:
            _add(out, self.apply_crossing(a, self.apply_dot(a + 1, one)))
            if delta:
                _add(out, one, -1)
        else:
            _add(out, self.apply_crossing(a, self.apply_dot(s, one)))
        return out

    # -- linear extension --------------------------------------------------

    def apply_crossing(self, r: int, vec: Mapping[Steps, Fraction]) -> Vec:
        out: Vec = {}
        for st, c in vec.items():
            _add(out, self.crossing_on_basis(r, st), c)
        return out

    def apply_dot(self, s: int, vec: Mapping[Steps, Fraction]) -> Vec:
        out: Vec = {}
        for st, c in vec.items():
            _add(out, self.dot_on_basis(s, st), c)
        return out

    def apply_crossings(self, word: Sequence[int], vec: Mapping[Steps, Fraction]) -> Vec:
        """``psi_{word[0]} ... psi_{word[-1]} vec``."""
        out = dict(vec)
        for r in reversed(word):
            out = self.apply_crossing(r, out)
        return out

    def apply_dots(self, word: Sequence[int], vec: Mapping[Steps, Fraction]) -> Vec:
        out = dict(vec)
        for s in reversed(word):
            out = self.apply_dot(s, out)
        return out

    def apply_idem(self, i: Sequence[int], vec: Mapping[Steps, Fraction]) -> Vec:
        i = tuple(x % self.e for x in i)
        return {st: c for st, c in vec.items() if self.residues(st) == i}

    def apply_letter(self, letter: Letter, vec: Mapping[Steps, Fraction]) -> Vec:
        kind, arg = letter
        if kind == "psi":
            return self.apply_crossing(int(arg), vec)  # type: ignore[arg-type]
        if kind == "y":
            return self.apply_dot(int(arg), vec)  # type: ignore[arg-type]
        if kind == "e":
            return self.apply_idem(arg, vec)  # type: ignore[arg-type]
        raise ValueError(f"unknown generator {kind!r}")

    def apply_word(self, word: Sequence[Letter], vec: Mapping[Steps, Fraction]) -> Vec:
        out = dict(vec)
        for letter in reversed(word):
            out = self.apply_letter(letter, out)
        return out

    def generator(self) -> Vec:
        return {self.z: Fraction(1)}


def _left_mult_right(w: Sequence[int], u: int) -> list[int]:
    """``w * s_u`` in one-line notation."""
    x = list(w)
    x[u - 1], x[u] = x[u], x[u - 1]
    return x


def _solve_exact(
    matrix: list[list[Fraction]], rhs: list[Fraction], n: int
) -> Optional[list[Fraction]]:
    """The unique solution in ``n`` unknowns of a small linear system, or None."""
    rows = [list(r) + [b] for r, b in zip(matrix, rhs)]
    pivots: list[int] = []
    rank = 0
    for col in range(n):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            return None
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = 1 / rows[rank][col]
        rows[rank] = [x * inv for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        pivots.append(col)
        rank += 1
    if any(r[-1] for r in rows[rank:]):
        return None
    return [rows[i][-1] for i in range(n)]


_ENGINES: dict[tuple, StraighteningEngine] = {}
_DEFAULT_STORE: Optional[MemoStore] = None


def set_default_store(store: Optional[MemoStore]) -> None:
    """Back every shared engine by ``store`` from now on; ``None`` restores in-process memos."""
    global _DEFAULT_STORE
    _DEFAULT_STORE = store
    _ENGINES.clear()


def engine_for(config: AlgebraConfig, shape: Bipartition, store: Optional[MemoStore] = None) -> StraighteningEngine:
    """Shared engine per ``(e, kappa, shape)``; a caller-supplied store gets a fresh engine."""
    if store is not None:
        return StraighteningEngine(config, shape, store)
    key = (config.e, config.kappa, shape)
    eng = _ENGINES.get(key)
    if eng is None:
        eng = _ENGINES[key] = StraighteningEngine(config, shape, _DEFAULT_STORE)
    return eng


def _check_vector(v: CellVector, config: AlgebraConfig) -> StraighteningEngine:
    return engine_for(config, v.shape)


def act_idem(i: Sequence[int], v: CellVector, config: AlgebraConfig) -> CellVector:
    if len(i) != v.shape.d:
        raise ValueError(f"residue sequence of length {len(i)} on a module for d={v.shape.d}")
    eng = _check_vector(v, config)
    return CellVector._from_raw(v.shape, eng.apply_idem(i, v._raw()))


def act_dot(r: int, T: Tableau, config: AlgebraConfig) -> CellVector:
    eng = engine_for(config, T.shape)
    return CellVector._from_raw(T.shape, eng.dot_on_basis(r, T.steps))


def act_crossing(r: int, T: Tableau, config: AlgebraConfig) -> CellVector:
    eng = engine_for(config, T.shape)
    return CellVector._from_raw(T.shape, eng.crossing_on_basis(r, T.steps))


def act_word(word: Sequence[Letter], v: CellVector, config: AlgebraConfig) -> CellVector:
    """Apply a generator word, rightmost letter first."""
    eng = _check_vector(v, config)
    return CellVector._from_raw(v.shape, eng.apply_word(word, v._raw()))


def generator_vector(shape: Bipartition, config: AlgebraConfig) -> CellVector:
    eng = engine_for(config, shape)
    return CellVector._from_raw(shape, eng.generator())


def basis_vector(T: Tableau, config: AlgebraConfig) -> CellVector:
    """``psi_T`` computed from its reduced word; equals the basis element ``T``."""
    return act_word(psi_word(reduced_word(T, config)), generator_vector(T.shape, config), config)


def gram_entry(S: Tableau, T: Tableau, config: AlgebraConfig) -> Fraction:
    """Cellular form: coefficient of ``psi_{T^lam}`` in ``psi_{w_S}^* psi_T``."""
    if S.shape != T.shape:
        raise ValueError(f"shape mismatch: {S.shape} and {T.shape}")
    eng = engine_for(config, T.shape)
    word = tuple(reversed(reduced_word(S, config)))
    return eng.apply_crossings(word, {T.steps: Fraction(1)}).get(eng.z, Fraction(0))


def generator_degree(letter: Letter, i: Sequence[int], e: int) -> int:
    kind, arg = letter
    if kind == "e":
        return 0
    if kind == "y":
        return 2
    return crossing_degree(int(arg), i, e)  # type: ignore[arg-type]


# -- relation suite --------------------------------------------------------


@dataclass(frozen=True)
class RelationFailure:
    relation: str
    shape: str
    witness: Steps
    detail: str

    def to_json(self) -> dict:
        return {
            "relation": self.relation,
            "shape": self.shape,
            "witness": list(self.witness),
            "detail": self.detail,
        }


@dataclass
class RelationReport:
    """Outcome of checking the defining relations as operator identities on one module."""

    e: int
    kappa: tuple[int, int]
    shape: str
    checked: dict[str, int] = field(default_factory=dict)
    failures: list[RelationFailure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def failed_relations(self) -> set[str]:
        return {f.relation for f in self.failures}

    def to_json(self) -> dict:
        return {
            "e": self.e,
            "kappa": list(self.kappa),
            "shape": self.shape,
            "ok": self.ok,
            "checked": dict(self.checked),
            "failures": [f.to_json() for f in self.failures],
        }


RELATIONS = (
    "start_residue",
    "first_dot",
    "idempotents",
    "dot_commutation",
    "crossing_dot_commutation",
    "crossing_commutation",
    "dot_slide_left",
    "dot_slide_right",
    "quadratic",
    "braid",
    "blob_idempotent",
    "straightening",
    "generator_idempotent",
    "generator_crossing",
    "generator_dot",
    "garnir_pair",
    "basis_words",
    "degree",
)


def relation_suite(
    config: AlgebraConfig, shape: Bipartition, sample: Optional[Iterable[Tableau]] = None
) -> RelationReport:
    """Check every defining relation as an operator identity on the cell module.

    ``sample`` restricts the witnesses; by default the full basis is used.
    Each relation is evaluated by applying both sides to each witness.
    """
    if shape.d != config.d:
        config = config.with_d(shape.d)
    report = RelationReport(config.e, config.kappa, str(shape))
    try:
        _run_relations(config, shape, sample, report)
    except StraighteningError as exc:
        report.failures.append(RelationFailure("straightening", str(shape), (), str(exc)))
    return report


def _run_relations(
    config: AlgebraConfig,
    shape: Bipartition,
    sample: Optional[Iterable[Tableau]],
    report: RelationReport,
) -> None:
    eng = engine_for(config, shape)
    e, d = config.e, shape.d
    k1, k2 = (k % e for k in config.kappa)
    witnesses = [T.steps for T in (sample if sample is not None else eng.basis)]

    def one(st: Steps) -> Vec:
        return {st: Fraction(1)}

    def check(name: str, st: Steps, lhs: Mapping[Steps, Fraction], rhs: Mapping[Steps, Fraction]) -> None:
        report.checked[name] = report.checked.get(name, 0) + 1
        diff = dict(lhs)
        _add(diff, rhs, -1)
        if diff:
            report.failures.append(
                RelationFailure(name, str(shape), st, f"difference {_fmt(diff)}")
            )

    def Y(s: int, v: Vec) -> Vec:
        return eng.apply_dot(s, v)

    def P(r: int, v: Vec) -> Vec:
        return eng.apply_crossing(r, v)

    for st in witnesses:
        i = eng.residues(st)
        v = one(st)
        check("start_residue", st, one(st) if i[0] in (k1, k2) else {}, one(st))
        check("first_dot", st, Y(1, v), {})
        check("idempotents", st, eng.apply_idem(i, eng.apply_idem(i, v)), v)
        if d >= 2:
            blob = (i[1] - i[0]) % e == 1
            check("blob_idempotent", st, {} if blob else v, v)
        for r in range(1, d + 1):
            yr = Y(r, v)
            check("degree", st, {t: c for t, c in yr.items() if eng.residues(t) == i and eng.degree(t) == eng.degree(st) + 2}, yr)
            for s in range(r + 1, d + 1):
                check("dot_commutation", st, Y(r, Y(s, v)), Y(s, Y(r, v)))
        for r in range(1, d):
            j = list(i)
            j[r - 1], j[r] = j[r], j[r - 1]
            pr = P(r, v)
            deg = eng.degree(st) + crossing_degree(r, i, e)
            check("degree", st, {t: c for t, c in pr.items() if eng.residues(t) == tuple(j) and eng.degree(t) == deg}, pr)
            for s in range(1, d + 1):
                if s not in (r, r + 1):
                    check("crossing_dot_commutation", st, P(r, Y(s, v)), Y(s, P(r, v)))
            for s in range(r + 2, d):
                check("crossing_commutation", st, P(r, P(s, v)), P(s, P(r, v)))
            delta = v if i[r - 1] == i[r] else {}
            lhs = P(r, Y(r + 1, v))
            rhs = Y(r, P(r, v))
            _add(rhs, delta)
            check("dot_slide_left", st, lhs, rhs)
            lhs = Y(r + 1, P(r, v))
            rhs = P(r, Y(r, v))
            _add(rhs, delta)
            check("dot_slide_right", st, lhs, rhs)
            quad: Vec = {}
            for c, dots in quadratic_terms(r, i, e):
                _add(quad, eng.apply_dots(dots, v), c)
            check("quadratic", st, P(r, P(r, v)), quad)
            if r + 1 < d:
                lhs = P(r, P(r + 1, P(r, v)))
                rhs = P(r + 1, P(r, P(r + 1, v)))
                for c, dots in braid_terms(r, i, e):
                    _add(rhs, eng.apply_dots(dots, v), c)
                check("braid", st, lhs, rhs)

    z = eng.z
    gz = one(z)
    check("generator_idempotent", z, eng.apply_idem(eng._init_res, gz), gz)
    for s in range(1, d + 1):
        check("generator_dot", z, Y(s, gz), {})
    for r in range(1, d):
        na, nb = eng._nodes(z)[r - 1], eng._nodes(z)[r]
        expected = {} if na[1] == nb[1] else one(_swap(z, r))
        check("generator_crossing", z, P(r, gz), expected)
    for t in range(1, 2 * eng.m - 1):
        check("garnir_pair", z, P(t + 1, P(t, gz)), {})
        check("garnir_pair", z, P(t, P(t + 1, gz)), {})
    for T in eng.basis if sample is None else sample:
        got = eng.apply_crossings(reduced_word(T, config), gz)
        check("basis_words", T.steps, got, one(T.steps))


def _fmt(vec: Mapping[Steps, Fraction]) -> str:
    return ", ".join(f"{c}*{''.join(map(str, st))}" for st, c in sorted(vec.items()))
