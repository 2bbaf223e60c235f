"""Nef cones, projectivity and the chambers of the secondary fan.

The Nef cone of X(Sigma) is the intersection of the cones <Q_I> of its
bunch; X is projective exactly when that intersection is full-dimensional.
In rank two the minimal cone of the bunch can be found by walking: while
some column of Q sits in the relative interior of the current cone, swap to
the unique bunch cone that keeps that column.  The cone where the walk stops
is the Nef cone, which is therefore 2-dimensional.

Divisor conventions: -K is the sum of all torus-invariant prime divisors,
so its class is the column sum of Q; sum(a_i D_i) is Cartier iff on every
maximal cone J there is an integer m with <m, v_j> = -a_j for j in J.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .cone import (
    Cone,
    cone_from_generators,
    contains,
    intersect_all,
    is_subcone,
)
from .exactmat import (
    FanMatrix,
    IntMatrix,
    InvalidFanMatrix,
    Vector,
    WeightMatrix,
    as_matrix,
    gale_dual,
    primitive,
    solve_rational,
    submatrix,
)
from .fan import Fan, IndexSet, enumerate_fans, format_index_set, index_set
from .gale import Bunch, bunch_of


class ClassificationError(RuntimeError):
    pass


def bunch_cone(b: Bunch, i_set: IndexSet) -> Cone:
    return cone_from_generators(b.weight_matrix.r, b.cone_generators(i_set))


def nef_cone(b: Bunch) -> Cone:
    """Intersection of all cones of the bunch."""
    return intersect_all(bunch_cone(b, i) for i in b.index_sets)


def nef_rank2_walk(b: Bunch) -> tuple[Cone, list[IndexSet]]:
    """Find the Nef cone of a rank-2 bunch by shrinking to its minimal cone.

    Returns the final cone and the sequence of index sets visited.
    """
    q = b.weight_matrix
    if q.r != 2:
        raise ValueError(f"the rank-2 walk needs r = 2, got r = {q.r}")
    members = set(b.index_sets)
    current = b.index_sets[0]
    trace = [current]
    while True:
        cone = bunch_cone(b, current)
        inside = [
            m
            for m in range(1, q.ncols + 1)
            if m not in current and contains(cone, q.column(m), "relative_interior")
        ]
        if not inside:
            return cone, trace
        m = inside[0]
        options = [index_set((p, m)) for p in current]
        hits = [o for o in options if o in members]
        if len(hits) != 1:
            raise ClassificationError(
                f"{len(hits)} of {[format_index_set(o) for o in options]} lie in the bunch"
            )
        current = hits[0]
        trace.append(current)
        if len(trace) > q.ncols:
            raise ClassificationError("rank-2 walk did not terminate")


def effective_cone(q: WeightMatrix) -> Cone:
    return cone_from_generators(q.r, q.base.columns)


def moving_cone(q: WeightMatrix) -> Cone:
    """Intersection over i of the cones spanned by all columns but the i-th."""
    m = q.ncols
    return intersect_all(
        cone_from_generators(q.r, submatrix(q.base, [i], "drop").columns) for i in range(1, m + 1)
    )


def anticanonical_class(q: WeightMatrix | IntMatrix) -> Vector:
    base = as_matrix(q)
    return tuple(sum(row) for row in base.entries)


def is_cartier(f: Fan, coeffs: Sequence[int]) -> bool:
    v = f.fan_matrix
    if len(coeffs) != v.ncols:
        raise ValueError(f"expected {v.ncols} coefficients, got {len(coeffs)}")
    for j_set in f.max_cones:
        vt = [list(v.column(j)) for j in j_set]
        m = solve_rational(vt, [-coeffs[j - 1] for j in j_set])
        if m is None:
            raise ValueError(f"maximal cone {format_index_set(j_set)} is singular")
        if any(x.denominator != 1 for x in m):
            return False
    return True


def parse_permutation(text: str, m: int) -> dict[int, int]:
    """Parse cycle notation such as ``(2 5)(3 6)`` on ``{1..m}``."""
    perm = {i: i for i in range(1, m + 1)}
    body = text.strip()
    if body in ("", "()", "id"):
        return perm
    if not re.fullmatch(r"(\(\s*\d+(?:[\s,]+\d+)*\s*\))+", body):
        raise ValueError(f"cannot parse permutation {text!r}")
    seen: set[int] = set()
    for cyc in re.findall(r"\(([^)]*)\)", body):
        elems = [int(x) for x in re.split(r"[\s,]+", cyc.strip())]
        for x in elems:
            if not 1 <= x <= m or x in seen:
                raise ValueError(f"invalid permutation {text!r} on 1..{m}")
            seen.add(x)
        for a, b in zip(elems, elems[1:] + elems[:1]):
            perm[a] = b
    return perm


def _as_permutation(perm: Mapping[int, int] | Sequence[int] | str, m: int) -> dict[int, int]:
    if isinstance(perm, str):
        return parse_permutation(perm, m)
    if isinstance(perm, Mapping):
        out = {i: i for i in range(1, m + 1)}
        out.update(perm)
    else:
        if len(perm) != m:
            raise ValueError(f"permutation has {len(perm)} images, expected {m}")
        out = {i: p for i, p in enumerate(perm, 1)}
    if sorted(out) != list(range(1, m + 1)) or sorted(out.values()) != list(range(1, m + 1)):
        raise ValueError("not a permutation of the column indices")
    return out


def bunch_permute(b: Bunch, perm: Mapping[int, int] | Sequence[int] | str) -> Bunch:
    """Relabel every index set of the bunch by a column permutation."""
    p = _as_permutation(perm, b.weight_matrix.ncols)
    sets = tuple(sorted(index_set(p[i] for i in i_set) for i_set in b.index_sets))
    return Bunch(b.weight_matrix, sets)


@dataclass(frozen=True)
class Classification:
    fan: Fan
    bunch: Bunch
    nef: Cone
    projective: bool
    weak_fano: bool
    fano: bool
    gorenstein: bool
    anticanonical_class: Vector

    def check(self, moving: Cone, effective: Cone) -> None:
        r = self.bunch.weight_matrix.r
        if self.projective != (self.nef.dim == r):
            raise ClassificationError("projective flag disagrees with dim(Nef)")
        if self.weak_fano != contains(self.nef, self.anticanonical_class):
            raise ClassificationError("weak Fano flag disagrees with Nef membership")
        for i_set in self.bunch.index_sets:
            if not is_subcone(self.nef, bunch_cone(self.bunch, i_set)):
                raise ClassificationError(f"Nef not inside <Q_{format_index_set(i_set)}>")
        if not is_subcone(self.nef, moving) or not is_subcone(moving, effective):
            raise ClassificationError("Nef ⊆ Mov ⊆ Eff fails")


def is_projective(c: Classification) -> bool:
    return c.nef.dim == c.bunch.weight_matrix.r


def classify(f: Fan, q: WeightMatrix) -> Classification:
    b = bunch_of(f, q)
    nef = nef_cone(b)
    ac = anticanonical_class(q)
    return Classification(
        fan=f,
        bunch=b,
        nef=nef,
        projective=nef.dim == q.r,
        weak_fano=contains(nef, ac),
        fano=nef.dim == q.r and contains(nef, ac, "relative_interior"),
        gorenstein=is_cartier(f, [1] * q.ncols),
        anticanonical_class=ac,
    )


def weight_matrix_for(v: FanMatrix, q: IntMatrix | WeightMatrix | None = None) -> WeightMatrix:
    """Use ``q`` as the Gale dual coordinates if given (validated), else the canonical one."""
    if q is None:
        return gale_dual(v)
    return WeightMatrix(as_matrix(q), v)


def classify_all(
    v: FanMatrix,
    q: IntMatrix | WeightMatrix | None = None,
    fans: Iterable[Fan] | None = None,
    ceiling: int | None = None,
) -> list[Classification]:
    """Classify every fan of SF(v), in enumeration order."""
    w = weight_matrix_for(v, q)
    fans = enumerate_fans(v, ceiling) if fans is None else list(fans)
    mov, eff = moving_cone(w), effective_cone(w)
    out = []
    for f in fans:
        c = classify(f, w)
        c.check(mov, eff)
        out.append(c)
    return out


@dataclass(frozen=True)
class Chamber:
    cone: Cone
    fan_index_sets: tuple[IndexSet, ...]


def secondary_chambers(q: WeightMatrix, fans: Iterable[Fan]) -> list[Chamber]:
    """Distinct full-dimensional Nef cones among the given fans, with their bunches."""
    out: list[Chamber] = []
    seen: set[Cone] = set()
    for f in fans:
        b = bunch_of(f, q)
        nef = nef_cone(b)
        if nef.dim != q.r or nef in seen:
            continue
        seen.add(nef)
        out.append(Chamber(nef, b.index_sets))
    return out


def random_rank2_fan_matrix(rng, max_tries: int = 10_000) -> tuple[FanMatrix, int]:
    """Draw a random valid fan matrix with r = 2 that supports at least one fan.

    n is drawn from {2, 3, 4} and the n + 2 columns have entries in [-5, 5],
    reduced to primitive vectors.  Returns the matrix and the number of
    rejected draws.
    """
    rejected = 0
    for _ in range(max_tries):
        n = rng.choice((2, 3, 4))
        cols = [primitive([rng.randint(-5, 5) for _ in range(n)]) for _ in range(n + 2)]
        try:
            v = FanMatrix(IntMatrix.from_columns(cols, n))
        except InvalidFanMatrix:
            rejected += 1
            continue
        if not enumerate_fans(v):
            rejected += 1
            continue
        return v, rejected
    raise RuntimeError(f"no valid rank-2 fan matrix in {max_tries} draws")


@dataclass
class Rank2Report:
    seed: int
    count: int
    rejected: int = 0
    fans: int = 0
    non_projective: int = 0
    walk_disagreements: int = 0
    long_traces: int = 0
    max_trace: int = 0
    failures: list[str] | None = None

    @property
    def failure_count(self) -> int:
        return self.non_projective + self.walk_disagreements + self.long_traces


def verify_rank2(count: int, seed: int) -> Rank2Report:
    """Try to falsify rank-2 projectivity on ``count`` random fan matrices.

    For every fan of every drawn matrix: Nef must be 2-dimensional and the
    rank-2 walk must land on the intersection of the whole bunch.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    rng = random.Random(seed)
    rep = Rank2Report(seed=seed, count=count, failures=[])
    for idx in range(count):
        v, rejected = random_rank2_fan_matrix(rng)
        rep.rejected += rejected
        q = gale_dual(v)
        for f in enumerate_fans(v):
            rep.fans += 1
            b = bunch_of(f, q)
            nef = nef_cone(b)
            walked, trace = nef_rank2_walk(b)
            rep.max_trace = max(rep.max_trace, len(trace))
            tag = f"matrix {idx + 1} {v.base.tolist()} fan {f}"
            if nef.dim != 2:
                rep.non_projective += 1
                rep.failures.append(f"{tag}: dim Nef = {nef.dim}")
            if walked != nef:
                rep.walk_disagreements += 1
                rep.failures.append(f"{tag}: walk gives {walked}, intersection {nef}")
            if len(trace) > v.ncols:
                rep.long_traces += 1
                rep.failures.append(f"{tag}: walk visited {len(trace)} cones")
    return rep
