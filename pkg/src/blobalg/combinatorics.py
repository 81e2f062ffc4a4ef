"""One-column bipartitions, their tableaux, residues, degrees and reduced words.

A standard tableau of a one-column bipartition is determined by the sequence
of components that receive the entries ``1, 2, ..., d``.  That sequence (the
*steps*) is the canonical key used throughout the package; general fillings,
which may be non-standard, are kept as a pair of columns.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product
from typing import Iterator, Sequence


@dataclass(frozen=True)
class AlgebraConfig:
    """Parameters ``(d, e, kappa)`` of the algebra and of its alcove geometry."""

    d: int
    e: int
    kappa: tuple[int, int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "kappa", tuple(int(k) for k in self.kappa))
        if self.d < 0:
            raise ValueError(f"d must be non-negative, got {self.d}")
        if self.e < 2:
            raise ValueError(f"e must be at least 2, got {self.e}")
        k1, k2 = self.kappa
        if not 0 < abs(k1 - k2) < self.e:
            raise ValueError(f"bicharge {self.kappa} is not admissible for e={self.e}")
        if not k1 < k2:
            raise ValueError(f"bicharge must satisfy kappa1 < kappa2, got {self.kappa}")

    @property
    def rho(self) -> int:
        return self.kappa[1] - self.kappa[0]

    def with_d(self, d: int) -> "AlgebraConfig":
        return AlgebraConfig(d, self.e, self.kappa)


@dataclass(frozen=True, order=True)
class Bipartition:
    """The one-column bipartition ``((1^lambda1), (1^lambda2))``."""

    lambda1: int
    lambda2: int

    def __post_init__(self) -> None:
        if self.lambda1 < 0 or self.lambda2 < 0:
            raise ValueError(f"negative part in {self.lambda1},{self.lambda2}")

    @property
    def d(self) -> int:
        return self.lambda1 + self.lambda2

    @property
    def label(self) -> int:
        """The integer ``lambda1 - lambda2`` identifying the bipartition."""
        return self.lambda1 - self.lambda2

    def part(self, comp: int) -> int:
        return self.lambda1 if comp == 1 else self.lambda2

    @classmethod
    def from_label(cls, d: int, v: int) -> "Bipartition":
        if abs(v) > d or (d - v) % 2:
            raise ValueError(f"label {v} is not a bipartition of {d}")
        return cls((d + v) // 2, (d - v) // 2)

    @classmethod
    def parse(cls, text: str) -> "Bipartition":
        a, b = (int(x) for x in text.split(","))
        return cls(a, b)

    def __str__(self) -> str:
        return f"{self.lambda1},{self.lambda2}"


Node = tuple[int, int]
"""A node ``(row, component)``; the column index is always 1."""


def content(node: Node, config: AlgebraConfig) -> int:
    row, comp = node
    return config.kappa[comp - 1] + 1 - row


def residue(node: Node, config: AlgebraConfig) -> int:
    return content(node, config) % config.e


@dataclass(frozen=True)
class Tableau:
    """A filling of a one-column bipartition, stored as its two columns top-down."""

    col1: tuple[int, ...]
    col2: tuple[int, ...]

    @property
    def shape(self) -> Bipartition:
        return Bipartition(len(self.col1), len(self.col2))

    @property
    def d(self) -> int:
        return len(self.col1) + len(self.col2)

    def column(self, comp: int) -> tuple[int, ...]:
        return self.col1 if comp == 1 else self.col2

    @cached_property
    def positions(self) -> dict[int, Node]:
        """Map entry -> node."""
        pos = {k: (r + 1, 1) for r, k in enumerate(self.col1)}
        pos.update({k: (r + 1, 2) for r, k in enumerate(self.col2)})
        return pos

    def node_of(self, k: int) -> Node:
        return self.positions[k]

    def entry(self, node: Node) -> int:
        row, comp = node
        return self.column(comp)[row - 1]

    def is_standard(self) -> bool:
        return all(list(c) == sorted(c) for c in (self.col1, self.col2)) and sorted(
            self.col1 + self.col2
        ) == list(range(1, self.d + 1))

    @cached_property
    def steps(self) -> tuple[int, ...]:
        """Component receiving each entry; only meaningful for standard tableaux."""
        return tuple(self.positions[k][1] for k in range(1, self.d + 1))

    def swap(self, r: int) -> "Tableau":
        """The tableau ``s_r T`` obtained by interchanging the entries r and r+1."""

        def f(k: int) -> int:
            return r + 1 if k == r else r if k == r + 1 else k

        return Tableau(tuple(map(f, self.col1)), tuple(map(f, self.col2)))

    def permute(self, w: Sequence[int]) -> "Tableau":
        """Apply a permutation given in one-line notation (``w[k-1]`` is w(k))."""
        return Tableau(tuple(w[k - 1] for k in self.col1), tuple(w[k - 1] for k in self.col2))

    def to_json(self) -> list[list[int]]:
        return [list(self.col1), list(self.col2)]

    def __str__(self) -> str:
        return f"({' '.join(map(str, self.col1))} | {' '.join(map(str, self.col2))})"


def tableau_from_steps(steps: Sequence[int]) -> Tableau:
    col1 = tuple(k + 1 for k, s in enumerate(steps) if s == 1)
    col2 = tuple(k + 1 for k, s in enumerate(steps) if s == 2)
    return Tableau(col1, col2)


def enumerate_bipartitions(config: AlgebraConfig) -> list[Bipartition]:
    """All bipartitions of ``d``, ordered by label ascending."""
    d = config.d
    return [Bipartition(a, d - a) for a in range(d + 1)]


@lru_cache(maxsize=None)
def _std_steps(a: int, b: int) -> tuple[tuple[int, ...], ...]:
    if a == 0 and b == 0:
        return ((),)
    out: list[tuple[int, ...]] = []
    # lexicographic on steps, component 1 first: choose the first step, recurse
    if a > 0:
        out.extend((1,) + rest for rest in _std_steps(a - 1, b))
    if b > 0:
        out.extend((2,) + rest for rest in _std_steps(a, b - 1))
    return tuple(out)


def enumerate_std(shape: Bipartition) -> list[Tableau]:
    """Standard tableaux of ``shape`` in lexicographic order of their steps."""
    return [tableau_from_steps(s) for s in _std_steps(shape.lambda1, shape.lambda2)]


def residue_sequence(T: Tableau, config: AlgebraConfig) -> tuple[int, ...]:
    return tuple(residue(T.node_of(k), config) for k in range(1, T.d + 1))


def steps_residues(steps: Sequence[int], config: AlgebraConfig) -> tuple[int, ...]:
    """Residue sequence read directly from a step sequence."""
    counts = [0, 0]
    out = []
    for s in steps:
        out.append((config.kappa[s - 1] - counts[s - 1]) % config.e)
        counts[s - 1] += 1
    return tuple(out)


def zigzag_lead(config: AlgebraConfig | None) -> int:
    """Component that receives 1 in the zig-zag of T^lambda.

    Component 2 leads, except when ``kappa2 = kappa1 + 1`` with e >= 3: there
    the first step into component 2 lands on a wall, the zig-zag is not length
    increasing and its ψ-word degrees disagree with the tableau degree.  The
    mirrored zig-zag stays in the fundamental alcove and is used instead.
    """
    if config is not None and config.rho == 1 and config.e >= 3:
        return 1
    return 2


def initial_tableau(shape: Bipartition, config: AlgebraConfig | None = None) -> Tableau:
    """The tableau T^lambda: a zig-zag of length 2m, then the longer column."""
    a, b = shape.lambda1, shape.lambda2
    m = min(a, b)
    lead = zigzag_lead(config)
    steps = [lead if k % 2 else 3 - lead for k in range(1, 2 * m + 1)]
    steps += [1 if a > b else 2] * (a + b - 2 * m)
    return tableau_from_steps(steps)


def restricted_shape(T: Tableau, k: int) -> Bipartition:
    """Shape of the subtableau holding the entries ``1..k``."""
    return Bipartition(sum(1 for x in T.col1 if x <= k), sum(1 for x in T.col2 if x <= k))


def _precedes_node(a: Node, b: Node, config: AlgebraConfig) -> bool:
    """Strict version of the lexicographic order on nodes."""
    ca, cb = content(a, config), content(b, config)
    return ca < cb or (ca == cb and a[1] > b[1])


def node_degree(T: Tableau, k: int, config: AlgebraConfig) -> int:
    """Addable minus removable nodes of matching residue strictly below the node of k."""
    shape = restricted_shape(T, k)
    node = T.node_of(k)
    i = residue(node, config)
    addable = [(shape.part(m) + 1, m) for m in (1, 2)]
    removable = [(shape.part(m), m) for m in (1, 2) if shape.part(m) > 0]

    def count(nodes: list[Node]) -> int:
        return sum(
            1
            for A in nodes
            if A != node and residue(A, config) == i and _precedes_node(A, node, config)
        )

    return count(addable) - count(removable)


def tableau_degree(T: Tableau, config: AlgebraConfig) -> int:
    return sum(node_degree(T, k, config) for k in range(1, T.d + 1))


def shape_precedes(lam: Bipartition, mu: Bipartition) -> bool:
    """``lam`` is at most as dominant as ``mu``: ``|label(lam)| >= |label(mu)|``."""
    return abs(lam.label) >= abs(mu.label)


def dominance_tableaux(T: Tableau, S: Tableau, config: AlgebraConfig) -> str:
    """Compare two standard tableaux: 'equal', 'less', 'greater' or 'incomparable'."""
    if T == S:
        return "equal"
    if residue_sequence(T, config) != residue_sequence(S, config):
        return "incomparable"
    d = T.d
    t_le = all(shape_precedes(restricted_shape(T, k), restricted_shape(S, k)) for k in range(1, d + 1))
    s_le = all(shape_precedes(restricted_shape(S, k), restricted_shape(T, k)) for k in range(1, d + 1))
    if t_le and not s_le:
        return "less"
    if s_le and not t_le:
        return "greater"
    return "incomparable"


def precede_lex(T: Tableau, S: Tableau) -> bool:
    """``T`` precedes ``S``: shape order holds at every restriction."""
    return all(
        shape_precedes(restricted_shape(T, k), restricted_shape(S, k)) for k in range(1, T.d + 1)
    )


def tableau_permutation(T: Tableau, config: AlgebraConfig | None = None) -> tuple[int, ...]:
    """One-line notation of w_T, the permutation with ``w_T T^lambda = T``."""
    init = initial_tableau(T.shape, config)
    w = [0] * T.d
    for c_init, c_T in ((init.col1, T.col1), (init.col2, T.col2)):
        for j, k in zip(c_init, c_T):
            w[j - 1] = k
    return tuple(w)


def inversions(w: Sequence[int]) -> int:
    n = len(w)
    return sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])


def reduced_word(T: Tableau, config: AlgebraConfig | None = None) -> tuple[int, ...]:
    """Canonical reduced word ``(i_1, ..., i_k)`` with ``w_T = s_{i_1} ... s_{i_k}``.

    Repeatedly peel off the smallest left descent ``r`` of w_T, i.e. the first
    position where ``r`` sits later than ``r+1`` in T^lambda.
    """
    w = list(tableau_permutation(T, config))
    inv = [0] * len(w)
    for j, k in enumerate(w):
        inv[k - 1] = j
    word = []
    r = 1
    while r < len(w):
        if inv[r - 1] > inv[r]:
            word.append(r)
            inv[r - 1], inv[r] = inv[r], inv[r - 1]
            r = max(r - 1, 1)
        else:
            r += 1
    return tuple(word)


def apply_word(word: Sequence[int], T: Tableau) -> Tableau:
    """``s_{i_1} ... s_{i_k} T``, rightmost letter first."""
    for r in reversed(word):
        T = T.swap(r)
    return T


def garnir_nodes(shape: Bipartition) -> list[Node]:
    """Nodes that are not removable, i.e. have a node below them."""
    return [(r, m) for m in (1, 2) for r in range(1, shape.part(m))]


def garnir_tableaux(
    node: Node, shape: Bipartition, config: AlgebraConfig | None = None
) -> list[Tableau]:
    row, comp = node
    if not 1 <= row < shape.part(comp):
        raise ValueError("not a Garnir node")
    init = initial_tableau(shape, config)
    u = init.entry((row, comp))
    v = init.entry((row + 1, comp))
    if v == u + 1:
        return [init.swap(u)]
    assert v == u + 2
    return [apply_word((u, u + 1), init), apply_word((u + 1, u), init)]


def skew_and_compose(nu: Bipartition, lam: Bipartition, T: Tableau, S: dict[Node, int]) -> Tableau:
    """Glue a tableau of ``nu`` with a filling ``S`` of the skew shape ``lam / nu``.

    ``S`` maps the nodes of ``lam / nu`` to ``1..|lam|-|nu|``; its entries are
    shifted by ``|nu|``.
    """
    if nu.lambda1 > lam.lambda1 or nu.lambda2 > lam.lambda2:
        raise ValueError(f"{nu} is not contained in {lam}")
    if T.shape != nu:
        raise ValueError("T does not have shape nu")
    skew = {(r, m) for m in (1, 2) for r in range(nu.part(m) + 1, lam.part(m) + 1)}
    if set(S) != skew:
        raise ValueError("S does not fill the skew shape")
    shift = nu.d
    cols = []
    for m in (1, 2):
        col = list(T.column(m)) + [S[(r, m)] + shift for r in range(nu.part(m) + 1, lam.part(m) + 1)]
        cols.append(tuple(col))
    return Tableau(cols[0], cols[1])


def all_fillings(shape: Bipartition) -> Iterator[Tableau]:
    """Every filling of ``shape`` (standard or not); for small brute-force checks."""
    from itertools import permutations

    d = shape.d
    for perm in permutations(range(1, d + 1)):
        yield Tableau(tuple(perm[: shape.lambda1]), tuple(perm[shape.lambda1 :]))


def step_sequences(d: int) -> Iterator[tuple[int, ...]]:
    """All paths of length d (every standard tableau of every shape)."""
    return product((1, 2), repeat=d)
