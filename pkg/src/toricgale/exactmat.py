"""Exact integer linear algebra.

Everything here works on Python ints (arbitrary precision) and
``fractions.Fraction``; there is no floating point anywhere.  Matrix
methods use 0-based positions like any Python container, while the
index-set functions (``submatrix`` and friends) take 1-based column
indices, which is also what the rest of the package uses for cones.

The fan/weight matrix checks are operational: a ``FanMatrix`` is an
integer matrix of full row rank whose columns are primitive, pairwise
distinct and positively span the ambient space; a ``WeightMatrix`` is a
full rank matrix whose row lattice is exactly the integer kernel of its
fan matrix.  These stand in for the reduced F-matrix / W-matrix
axiomatics used in the literature.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Vector = tuple[int, ...]


class DimensionError(ValueError):
    pass


class InvalidFanMatrix(ValueError):
    """Raised when a matrix fails one of the fan matrix invariants.

    ``invariant`` names the failed check.
    """

    def __init__(self, invariant: str, message: str):
        super().__init__(f"{invariant}: {message}")
        self.invariant = invariant


class InvalidWeightMatrix(ValueError):
    def __init__(self, invariant: str, message: str):
        super().__init__(f"{invariant}: {message}")
        self.invariant = invariant


@dataclass(frozen=True)
class IntMatrix:
    """Immutable row-major integer matrix; 0 x m and r x 0 shapes are legal."""

    nrows: int
    ncols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.nrows < 0 or self.ncols < 0:
            raise DimensionError("negative matrix shape")
        if len(self.entries) != self.nrows:
            raise DimensionError(f"expected {self.nrows} rows, got {len(self.entries)}")
        for i, row in enumerate(self.entries):
            if len(row) != self.ncols:
                raise DimensionError(f"row {i + 1} has {len(row)} entries, expected {self.ncols}")
            for x in row:
                if not isinstance(x, int) or isinstance(x, bool):
                    raise TypeError(f"matrix entries must be int, got {type(x).__name__}")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], ncols: int | None = None) -> IntMatrix:
        data = tuple(tuple(int(x) for x in row) for row in rows)
        if ncols is None:
            if not data:
                raise DimensionError("cannot infer column count of an empty row list")
            ncols = len(data[0])
        return cls(len(data), ncols, data)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[int]], nrows: int) -> IntMatrix:
        return cls.from_rows(zip(*cols), len(cols)) if cols else cls(nrows, 0, ((),) * nrows)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> IntMatrix:
        return cls(nrows, ncols, tuple((0,) * ncols for _ in range(nrows)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def rows(self) -> tuple[Vector, ...]:
        return self.entries

    @property
    def columns(self) -> tuple[Vector, ...]:
        return tuple(self.col(j) for j in range(self.ncols))

    def col(self, j: int) -> Vector:
        return tuple(row[j] for row in self.entries)

    @property
    def T(self) -> IntMatrix:
        return IntMatrix(self.ncols, self.nrows, self.columns)

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.columns
        return IntMatrix(
            self.nrows,
            other.ncols,
            tuple(tuple(dot(row, c) for c in cols) for row in self.entries),
        )

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def tolist(self) -> list[list[int]]:
        return [list(row) for row in self.entries]

    def __str__(self) -> str:
        if not self.nrows or not self.ncols:
            return f"<empty {self.nrows}x{self.ncols} matrix>"
        width = max(len(str(x)) for row in self.entries for x in row)
        return "\n".join(" ".join(str(x).rjust(width) for x in row) for row in self.entries)


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def primitive(v: Sequence[int]) -> Vector:
    """Divide out the gcd of the entries; the zero vector is returned as is."""
    g = 0
    for x in v:
        g = gcd(g, x)
    if g <= 1:
        return tuple(v)
    return tuple(x // g for x in v)


def is_primitive(v: Sequence[int]) -> bool:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g == 1


def integer_vector(v: Sequence[Fraction | int]) -> Vector:
    """Smallest positive multiple of a rational vector that is integral and primitive."""
    den = 1
    for x in v:
        d = Fraction(x).denominator
        den = den * d // gcd(den, d)
    return primitive([int(Fraction(x) * den) for x in v])


def hnf_rows(m: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns ``(h, u)`` with ``u`` unimodular and ``u @ m == h``.  Pivots of
    ``h`` are positive and the entries above each pivot lie in
    ``[0, pivot)``; zero rows are collected at the bottom.
    """
    a = [list(row) for row in m.entries]
    u = [[int(i == j) for j in range(m.nrows)] for i in range(m.nrows)]
    nr = m.nrows

    def sub(i: int, k: int, q: int) -> None:
        # row_i -= q * row_k
        ai, ak, ui, uk = a[i], a[k], u[i], u[k]
        for c in range(len(ai)):
            ai[c] -= q * ak[c]
        for c in range(nr):
            ui[c] -= q * uk[c]

    pr = 0
    for c in range(m.ncols):
        if pr == nr:
            break
        while True:
            nz = [i for i in range(pr, nr) if a[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(a[i][c]))
            a[pr], a[piv] = a[piv], a[pr]
            u[pr], u[piv] = u[piv], u[pr]
            clean = True
            for i in range(pr + 1, nr):
                if a[i][c]:
                    sub(i, pr, a[i][c] // a[pr][c])
                    clean = clean and a[i][c] == 0
            if clean:
                break
        if a[pr][c] == 0:
            continue
        if a[pr][c] < 0:
            a[pr] = [-x for x in a[pr]]
            u[pr] = [-x for x in u[pr]]
        for i in range(pr):
            q = a[i][c] // a[pr][c]
            if q:
                sub(i, pr, q)
        pr += 1
    h = IntMatrix(m.nrows, m.ncols, tuple(map(tuple, a)))
    return h, IntMatrix(nr, nr, tuple(map(tuple, u)))


def nonzero_rows(m: IntMatrix) -> IntMatrix:
    rows = tuple(r for r in m.entries if any(r))
    return IntMatrix(len(rows), m.ncols, rows)


def hnf_basis(m: IntMatrix) -> IntMatrix:
    """HNF of the row lattice with zero rows dropped: a canonical lattice basis."""
    return nonzero_rows(hnf_rows(m)[0])


def rank(m: IntMatrix | Sequence[Sequence[int]]) -> int:
    """Rank over Q (fraction-free elimination)."""
    rows = [list(r) for r in (m.entries if isinstance(m, IntMatrix) else m)]
    rk = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rk, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        p = rows[rk]
        for i in range(rk + 1, len(rows)):
            f = rows[i][c]
            if f:
                rows[i] = list(primitive([p[c] * x - f * y for x, y in zip(rows[i], p)]))
        rk += 1
    return rk


def det(m: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant."""
    a = [list(r) for r in m]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if a[i][k]), None)
            if sw is None:
                return 0
            a[k], a[sw] = a[sw], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def adjugate(m: Sequence[Sequence[int]]) -> list[list[int]]:
    """Integer adjugate: ``adj @ m == m @ adj == det(m) * I``."""
    n = len(m)
    if n == 1:
        return [[1]]
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(map(list, m)) if k != i]
            adj[j][i] = (-1) ** (i + j) * det(minor)
    return adj


def solve_rational(a: Sequence[Sequence[int]], b: Sequence[int]) -> list[Fraction] | None:
    """Solve a square system over Q; ``None`` when singular."""
    d = det(a)
    if d == 0:
        return None
    adj = adjugate(a)
    return [Fraction(dot(row, b), d) for row in adj]


def solve_integer_row(m: IntMatrix, target: Sequence[int]) -> Vector | None:
    """Find an integer row vector ``y`` with ``y @ m == target``, or ``None``."""
    h, u = hnf_rows(m)
    t = list(target)
    y = [0] * m.nrows
    for i, row in enumerate(h.entries):
        piv = next((c for c, x in enumerate(row) if x), None)
        if piv is None:
            break
        if t[piv] % row[piv]:
            return None
        q = t[piv] // row[piv]
        y[i] = q
        t = [a - q * b for a, b in zip(t, row)]
    if any(t):
        return None
    # y @ h == target and h == u @ m
    return tuple(sum(y[i] * u.entries[i][j] for i in range(m.nrows)) for j in range(m.nrows))


def kernel_lattice_basis(m: IntMatrix) -> IntMatrix:
    """HNF basis of the saturated lattice ``{x in Z^cols : m @ x == 0}``."""
    h, u = hnf_rows(m.T)
    rk = sum(1 for row in h.entries if any(row))
    ker = IntMatrix(m.ncols - rk, m.ncols, u.entries[rk:])
    return hnf_basis(ker) if ker.nrows else ker


def lattice_equal(a: IntMatrix, b: IntMatrix) -> bool:
    """True iff the row lattices of ``a`` and ``b`` coincide in Z^cols."""
    if a.ncols != b.ncols:
        raise DimensionError(f"column counts differ: {a.ncols} vs {b.ncols}")
    return hnf_basis(a) == hnf_basis(b)


def check_indices(idx: Iterable[int], ncols: int) -> tuple[int, ...]:
    out = tuple(sorted(set(idx)))
    for i in out:
        if not 1 <= i <= ncols:
            raise IndexError(f"column index {i} outside 1..{ncols}")
    return out


def submatrix(m: IntMatrix, idx: Iterable[int], mode: str = "keep") -> IntMatrix:
    """Columns at 1-based ``idx`` (``keep``) or the complementary ones (``drop``)."""
    chosen = check_indices(idx, m.ncols)
    if mode == "drop":
        chosen = tuple(j for j in range(1, m.ncols + 1) if j not in chosen)
    elif mode != "keep":
        raise ValueError(f"mode must be 'keep' or 'drop', not {mode!r}")
    return IntMatrix(
        m.nrows, len(chosen), tuple(tuple(row[j - 1] for j in chosen) for row in m.entries)
    )


def as_matrix(x: IntMatrix | FanMatrix | WeightMatrix | Sequence[Sequence[int]]) -> IntMatrix:
    if isinstance(x, IntMatrix):
        return x
    if isinstance(x, (FanMatrix, WeightMatrix)):
        return x.base
    return IntMatrix.from_rows(x)


@dataclass(frozen=True)
class FanMatrix:
    """An n x (n+r) integer matrix whose columns are the rays of a fan."""

    base: IntMatrix

    def __post_init__(self):
        v = self.base
        if rank(v) != v.nrows:
            raise InvalidFanMatrix("rank", f"rank over Q is {rank(v)}, expected n = {v.nrows}")
        cols = v.columns
        for j, c in enumerate(cols, 1):
            if not any(c):
                raise InvalidFanMatrix("nonzero", f"column {j} is zero")
            if not is_primitive(c):
                raise InvalidFanMatrix("primitive", f"column {j} = {c} is not primitive")
        seen: dict[Vector, int] = {}
        for j, c in enumerate(cols, 1):
            if c in seen:
                raise InvalidFanMatrix(
                    "distinct", f"columns {seen[c]} and {j} span the same ray"
                )
            seen[c] = j
        from .cone import positively_spans

        if not positively_spans(v.nrows, cols):
            raise InvalidFanMatrix("positive-span", "columns do not positively span R^n")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> FanMatrix:
        return cls(IntMatrix.from_rows(rows))

    @property
    def n(self) -> int:
        return self.base.nrows

    @property
    def r(self) -> int:
        return self.base.ncols - self.base.nrows

    @property
    def ncols(self) -> int:
        return self.base.ncols

    def column(self, j: int) -> Vector:
        """1-based column access."""
        return self.base.col(j - 1)


@dataclass(frozen=True)
class WeightMatrix:
    """An r x (n+r) Gale dual of a fan matrix (row lattice = integer kernel of V)."""

    base: IntMatrix
    fan_matrix: FanMatrix | None = None

    def __post_init__(self):
        q = self.base
        if rank(q) != q.nrows:
            raise InvalidWeightMatrix("rank", f"rank over Q is {rank(q)}, expected r = {q.nrows}")
        v = self.fan_matrix
        if v is None:
            return
        if q.ncols != v.ncols or q.nrows != v.r:
            raise InvalidWeightMatrix(
                "shape", f"shape {q.shape} does not match fan matrix {v.base.shape}"
            )
        if not (q @ v.base.T).is_zero():
            raise InvalidWeightMatrix("orthogonal", "Q @ V^T is not zero")
        if not lattice_equal(q, kernel_lattice_basis(v.base)):
            raise InvalidWeightMatrix("saturated", "row lattice of Q is not the integer kernel of V")

    @property
    def r(self) -> int:
        return self.base.nrows

    @property
    def ncols(self) -> int:
        return self.base.ncols

    def column(self, j: int) -> Vector:
        return self.base.col(j - 1)


def gale_dual(v: FanMatrix) -> WeightMatrix:
    """Canonical Gale dual: HNF basis of the saturated integer kernel of V."""
    if not isinstance(v, FanMatrix):
        v = FanMatrix(as_matrix(v))
    return WeightMatrix(kernel_lattice_basis(v.base), v)


def fan_matrix_of(q: IntMatrix) -> IntMatrix:
    """The dual direction: HNF basis of the integer kernel of a weight matrix."""
    return kernel_lattice_basis(q)
