"""Bunches of cones and the facet-swap combinatorics on the Gale dual side.

For a maximal cone <V_J> of a fan, the complementary index set I gives the
cone <Q_I> in the class group.  Two maximal cones sharing a facet translate
into a swap I -> (I - {k}) + {j}, and the relation among the n+1 rays
around that facet yields a vector of the row lattice of Q: a linear
functional that vanishes on q_i for i in I - {k} and is positive on both
q_j and q_k.  ``same_side_certificate`` builds that functional explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .exactmat import (
    IntMatrix,
    Vector,
    WeightMatrix,
    dot,
    kernel_lattice_basis,
    rank,
    solve_integer_row,
    submatrix,
)
from .fan import Fan, FanError, IndexSet, complement, facet_neighbor, format_index_set, index_set


class GaleError(ValueError):
    pass


@dataclass(frozen=True)
class Bunch:
    weight_matrix: WeightMatrix
    index_sets: tuple[IndexSet, ...]

    def __post_init__(self):
        q = self.weight_matrix
        for i_set in self.index_sets:
            if len(i_set) != q.r:
                raise GaleError(f"index set {format_index_set(i_set)} does not have r = {q.r} elements")
            if rank(submatrix(q.base, i_set)) != q.r:
                raise GaleError(f"<Q_I> for I = {format_index_set(i_set)} is not full-dimensional")

    def __len__(self) -> int:
        return len(self.index_sets)

    def cone_generators(self, i_set: IndexSet) -> list[Vector]:
        return [self.weight_matrix.column(i) for i in i_set]

    def __repr__(self) -> str:
        return "Bunch{" + ", ".join(map(format_index_set, self.index_sets)) + "}"


def _check_pair(f: Fan, q: WeightMatrix) -> None:
    v = f.fan_matrix.base
    if q.ncols != v.ncols or q.r != v.ncols - v.nrows:
        raise GaleError(f"weight matrix shape {q.base.shape} does not match fan matrix {v.shape}")
    if not (q.base @ v.T).is_zero():
        raise GaleError("weight matrix is not Gale dual to the fan matrix (Q @ V^T != 0)")


def bunch_of(f: Fan, q: WeightMatrix) -> Bunch:
    _check_pair(f, q)
    m = f.fan_matrix.ncols
    return Bunch(q, tuple(sorted(complement(j, m) for j in f.max_cones)))


def adjacent_swap(f: Fan, i_set: Iterable[int], j: int) -> tuple[int, IndexSet]:
    """Return ``(k, I')`` with ``I' = (I - {k}) + {j}`` the unique neighbouring index set."""
    m = f.fan_matrix.ncols
    i_set = index_set(i_set, m)
    if complement(i_set, m) not in f:
        raise FanError(f"complement of {format_index_set(i_set)} is not a maximal cone")
    if j in i_set or not 1 <= j <= m:
        raise FanError(f"column {j} must lie outside {format_index_set(i_set)}")
    hits = []
    for k in i_set:
        cand = index_set((set(i_set) - {k}) | {j})
        if complement(cand, m) in f:
            hits.append((k, cand))
    if len(hits) != 1:
        raise RuntimeError(
            f"corrupted fan: {len(hits)} swaps of {format_index_set(i_set)} bring in column {j}"
        )
    k, i_prime = hits[0]
    # the dual statement: the cone opposite v_j across its facet brings in v_k
    j_set = complement(i_set, m)
    neighbour = facet_neighbor(f, j_set, j)
    assert set(neighbour) - set(j_set) == {k}
    return k, i_prime


@dataclass(frozen=True)
class SameSideCertificate:
    """A functional zero on q_i (i in I - {k}) and positive on both q_j and q_k.

    ``relation`` holds integer coefficients ``lam`` over ``{j, k}`` and the
    facet columns ``t`` with ``lam_j v_j + lam_k v_k == sum_t lam_t v_t``.
    """

    i_set: IndexSet
    j: int
    k: int
    normal: Vector
    relation: dict[int, int] = field(hash=False)
    degenerate: bool = False

    def violations(self, v: IntMatrix, q: WeightMatrix) -> list[str]:
        out = []
        for i in self.i_set:
            if i != self.k and dot(self.normal, q.column(i)):
                out.append(f"<n, q_{i}> != 0")
        for s in (self.j, self.k):
            if dot(self.normal, q.column(s)) <= 0:
                out.append(f"<n, q_{s}> <= 0")
            if self.relation[s] <= 0:
                out.append(f"lambda_{s} <= 0")
        lhs = [0] * v.nrows
        for s, lam in self.relation.items():
            sign = 1 if s in (self.j, self.k) else -1
            col = v.col(s - 1)
            lhs = [a + sign * lam * c for a, c in zip(lhs, col)]
        if any(lhs):
            out.append("relation does not hold")
        return out


def same_side_certificate(f: Fan, q: WeightMatrix, i_set: Iterable[int], j: int) -> SameSideCertificate:
    """Build the functional for the swap ``I -> I'`` bringing in column ``j``.

    Solves the relation among v_j, v_k and the shared facet columns, then
    reads off the row-lattice vector of Q carrying those coefficients.
    """
    _check_pair(f, q)
    if q.r < 2:
        raise GaleError("same-side certificates need r >= 2")
    v = f.fan_matrix
    m = v.ncols
    i_set = index_set(i_set, m)
    k, _ = adjacent_swap(f, i_set, j)
    facet = [t for t in complement(i_set, m) if t != j]
    support = sorted([j, k, *facet])
    # 1-dim kernel of the n x (n+1) matrix on the support
    ker = kernel_lattice_basis(submatrix(v.base, support))
    if ker.nrows != 1:
        raise RuntimeError(f"expected a unique relation around facet {facet}, got {ker.nrows}")
    coeffs = dict(zip(support, ker.entries[0]))
    if coeffs[j] < 0:
        coeffs = {s: -c for s, c in coeffs.items()}
    relation = {s: (c if s in (j, k) else -c) for s, c in coeffs.items()}
    full = tuple(coeffs.get(s, 0) for s in range(1, m + 1))
    y = solve_integer_row(q.base, full)
    if y is None:
        raise GaleError("relation is not in the row lattice of Q; is Q saturated?")
    rest = [i for i in i_set if i != k]
    degenerate = rank(submatrix(q.base, rest)) < q.r - 1
    return SameSideCertificate(i_set, j, k, y, relation, degenerate)
