"""Exact linear algebra over the rationals and Laurent polynomials in ``t``.

Matrices are sparse: a list of rows, each a dict ``col -> Fraction``.  Rank
uses fraction-free elimination on integer rows (denominators are cleared
first and each new row is divided by the gcd of its entries), so no rational
normalisation happens inside the inner loop.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence


class DimensionError(ValueError):
    pass


@dataclass
class RationalMatrix:
    nrows: int
    ncols: int
    rows: list[dict[int, Fraction]] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.rows:
            self.rows = [{} for _ in range(self.nrows)]
        if len(self.rows) != self.nrows:
            raise DimensionError("row count does not match nrows")
        for row in self.rows:
            for c, x in list(row.items()):
                if not 0 <= c < self.ncols:
                    raise DimensionError(f"column {c} out of range")
                if x == 0:
                    del row[c]

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "RationalMatrix":
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, [{i: Fraction(1)} for i in range(n)])

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[object]]) -> "RationalMatrix":
        nrows = len(data)
        ncols = len(data[0]) if nrows else 0
        rows = [{j: Fraction(x) for j, x in enumerate(r) if x != 0} for r in data]
        return cls(nrows, ncols, rows)

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[Mapping[int, object]]) -> "RationalMatrix":
        rows: list[dict[int, Fraction]] = [{} for _ in range(nrows)]
        for j, col in enumerate(columns):
            for i, x in col.items():
                if x != 0:
                    rows[i][j] = Fraction(x)
        return cls(nrows, len(columns), rows)

    def to_dense(self) -> list[list[Fraction]]:
        return [[row.get(j, Fraction(0)) for j in range(self.ncols)] for row in self.rows]

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.rows[i].get(j, Fraction(0))

    def columns(self) -> list[dict[int, Fraction]]:
        cols: list[dict[int, Fraction]] = [{} for _ in range(self.ncols)]
        for i, row in enumerate(self.rows):
            for j, x in row.items():
                cols[j][i] = x
        return cols

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self.ncols, self.nrows, self.columns())

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        for row in self.rows:
            acc: dict[int, Fraction] = {}
            for k, x in row.items():
                for j, y in other.rows[k].items():
                    acc[j] = acc.get(j, 0) + x * y
            out.append({j: v for j, v in acc.items() if v != 0})
        return RationalMatrix(self.nrows, other.ncols, out)

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.shape != other.shape:
            raise DimensionError("shape mismatch in addition")
        out = []
        for a, b in zip(self.rows, other.rows):
            acc = dict(a)
            for j, y in b.items():
                acc[j] = acc.get(j, 0) + y
            out.append({j: v for j, v in acc.items() if v != 0})
        return RationalMatrix(self.nrows, self.ncols, out)

    def scale(self, c: object) -> "RationalMatrix":
        c = Fraction(c)
        return RationalMatrix(
            self.nrows, self.ncols, [{j: c * x for j, x in r.items() if c * x != 0} for r in self.rows]
        )

    def __neg__(self) -> "RationalMatrix":
        return self.scale(-1)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def is_zero(self) -> bool:
        return all(not r for r in self.rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def nonzero_entries(self) -> Iterable[tuple[int, int, Fraction]]:
        for i, row in enumerate(self.rows):
            for j, x in row.items():
                yield i, j, x


def block_matrix(blocks: Sequence[Sequence[RationalMatrix | None]], row_sizes: Sequence[int], col_sizes: Sequence[int]) -> RationalMatrix:
    """Assemble a block matrix; ``None`` stands for a zero block."""
    nrows, ncols = sum(row_sizes), sum(col_sizes)
    rows: list[dict[int, Fraction]] = [{} for _ in range(nrows)]
    r0 = 0
    for bi, brow in enumerate(blocks):
        c0 = 0
        for bj, blk in enumerate(brow):
            if blk is not None:
                if blk.shape != (row_sizes[bi], col_sizes[bj]):
                    raise DimensionError(f"block ({bi},{bj}) has shape {blk.shape}")
                for i, j, x in blk.nonzero_entries():
                    rows[r0 + i][c0 + j] = x
            c0 += col_sizes[bj]
        r0 += row_sizes[bi]
    return RationalMatrix(nrows, ncols, rows)


def _integer_rows(rows: Iterable[Mapping[int, Fraction]]) -> list[dict[int, int]]:
    out = []
    for row in rows:
        if not row:
            continue
        den = lcm(*(Fraction(x).denominator for x in row.values()))
        irow = {j: int(Fraction(x) * den) for j, x in row.items()}
        g = 0
        for v in irow.values():
            g = gcd(g, v)
        out.append({j: v // g for j, v in irow.items()})
    return out


def _rank_of_rows(rows: list[dict[int, int]]) -> int:
    """Rank of integer sparse rows by fraction-free elimination."""
    pivots: dict[int, dict[int, int]] = {}
    for row in rows:
        row = dict(row)
        while row:
            col = min(row)
            piv = pivots.get(col)
            if piv is None:
                pivots[col] = row
                break
            a, b = piv[col], row[col]
            g = gcd(a, b)
            fa, fb = a // g, b // g
            new: dict[int, int] = {}
            for j, x in row.items():
                new[j] = fa * x
            for j, x in piv.items():
                v = new.get(j, 0) - fb * x
                if v:
                    new[j] = v
                else:
                    new.pop(j, None)
            g = 0
            for v in new.values():
                g = gcd(g, v)
            row = {j: v // g for j, v in new.items()} if g > 1 else new
    return len(pivots)


def rank(M: RationalMatrix) -> int:
    if M.nrows <= M.ncols:
        return _rank_of_rows(_integer_rows(M.rows))
    return _rank_of_rows(_integer_rows(M.columns()))


def rank_of_vectors(vectors: Iterable[Mapping[int, object]]) -> int:
    return _rank_of_rows(_integer_rows({j: Fraction(x) for j, x in v.items() if x != 0} for v in vectors))


def rref(M: RationalMatrix) -> tuple[list[dict[int, Fraction]], list[int]]:
    """Reduced row echelon form (nonzero rows only) and pivot columns."""
    rows = [dict(r) for r in M.rows if r]
    pivots: list[int] = []
    reduced: list[dict[int, Fraction]] = []
    for row in rows:
        for p, prow in zip(pivots, reduced):
            x = row.get(p)
            if x:
                for j, y in prow.items():
                    v = row.get(j, 0) - x * y
                    if v:
                        row[j] = v
                    else:
                        row.pop(j, None)
        if not row:
            continue
        col = min(row)
        inv = 1 / row[col]
        row = {j: v * inv for j, v in row.items()}
        for k, prow in enumerate(reduced):
            x = prow.get(col)
            if x:
                for j, y in row.items():
                    v = prow.get(j, 0) - x * y
                    if v:
                        prow[j] = v
                    else:
                        prow.pop(j, None)
        pivots.append(col)
        reduced.append(row)
    order = sorted(range(len(pivots)), key=pivots.__getitem__)
    return [reduced[k] for k in order], [pivots[k] for k in order]


def kernel_basis(M: RationalMatrix) -> list[dict[int, Fraction]]:
    """Basis of ``{x : M x = 0}`` as sparse vectors indexed by column."""
    reduced, pivots = rref(M)
    pivset = set(pivots)
    basis = []
    for free in range(M.ncols):
        if free in pivset:
            continue
        vec = {free: Fraction(1)}
        for p, row in zip(pivots, reduced):
            x = row.get(free)
            if x:
                vec[p] = -x
        basis.append(vec)
    return basis


def subspace_sum_rank(M: RationalMatrix, N: RationalMatrix) -> int:
    """Dimension of the sum of the column spaces of ``M`` and ``N``."""
    if M.nrows != N.nrows:
        raise DimensionError("column spaces live in different dimensions")
    return rank_of_vectors(M.columns() + N.columns())


def colspace_equal(M: RationalMatrix, N: RationalMatrix) -> bool:
    if M.nrows != N.nrows:
        raise DimensionError("column spaces live in different dimensions")
    r = rank(M)
    return r == rank(N) and subspace_sum_rank(M, N) == r


class LaurentPoly:
    """Finitely supported integer Laurent polynomial in ``t``."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | None = None) -> None:
        self._c = {int(k): int(v) for k, v in (coeffs or {}).items() if v}

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        return cls({exp: coeff})

    @classmethod
    def from_degrees(cls, degrees: Iterable[int]) -> "LaurentPoly":
        acc: dict[int, int] = {}
        for k in degrees:
            acc[k] = acc.get(k, 0) + 1
        return cls(acc)

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        acc = dict(self._c)
        for k, v in other._c.items():
            acc[k] = acc.get(k, 0) + v
        return LaurentPoly(acc)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({k: -v for k, v in self._c.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly({k: v * other for k, v in self._c.items()})
        acc: dict[int, int] = {}
        for a, x in self._c.items():
            for b, y in other._c.items():
                acc[a + b] = acc.get(a + b, 0) + x * y
        return LaurentPoly(acc)

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly({e + k: v for e, v in self._c.items()})

    def bar(self) -> "LaurentPoly":
        return LaurentPoly({-k: v for k, v in self._c.items()})

    def eval_at_1(self) -> int:
        return sum(self._c.values())

    def is_bar_invariant(self) -> bool:
        return self == self.bar()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    def to_json(self) -> dict[str, int]:
        return {str(k): self._c[k] for k in sorted(self._c)}

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> "LaurentPoly":
        return cls({int(k): v for k, v in data.items()})

    def __repr__(self) -> str:
        if not self._c:
            return "0"
        terms = []
        for k in sorted(self._c):
            v = self._c[k]
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if mono and v == 1:
                terms.append(mono)
            elif mono and v == -1:
                terms.append(f"-{mono}")
            else:
                terms.append(f"{v}{'*' + mono if mono else ''}")
        return " + ".join(terms).replace("+ -", "- ")
