"""Simplicial complete fans over a fan matrix and their enumeration.

Maximal cones are stored as index sets: sorted tuples of 1-based column
indices of the fan matrix.

Completeness is decided exactly, without volumes: a nonempty family of
full-dimensional simplicial cones that meet pairwise in common faces, in
which every facet lies in exactly two cones and whose facet-adjacency graph
is connected, has support that is open and closed in R^n, hence all of it.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .cone import _double_description, simplicial_facets
from .exactmat import FanMatrix, Vector, det, dot, primitive, rank

IndexSet = tuple[int, ...]

DEFAULT_CEILING = 10**5


class EnumerationCeilingError(RuntimeError):
    def __init__(self, count: int, ceiling: int):
        super().__init__(
            f"{count} candidate maximal cones exceed the enumeration ceiling {ceiling}"
        )
        self.count = count
        self.ceiling = ceiling


class FanError(ValueError):
    pass


def index_set(members: Iterable[int], ncols: int | None = None) -> IndexSet:
    out = tuple(sorted(members))
    if len(set(out)) != len(out):
        raise ValueError(f"duplicate indices in {out}")
    if ncols is not None and out and not (out[0] >= 1 and out[-1] <= ncols):
        raise IndexError(f"index set {out} not within 1..{ncols}")
    return out


def complement(idx: Iterable[int], ncols: int) -> IndexSet:
    s = set(idx)
    return tuple(i for i in range(1, ncols + 1) if i not in s)


def format_index_set(idx: IndexSet) -> str:
    return "<" + ",".join(map(str, idx)) + ">"


def default_ceiling() -> int:
    env = os.environ.get("TORICGALE_CEILING")
    return int(env) if env else DEFAULT_CEILING


class FanGeometry:
    """Cached simplicial-cone data for one fan matrix."""

    def __init__(self, v: FanMatrix):
        self.v = v
        self.n = v.n
        self.ncols = v.ncols
        self.cols: dict[int, Vector] = {j: v.column(j) for j in range(1, v.ncols + 1)}
        self._facets: dict[IndexSet, dict[int, Vector]] = {}
        self._compat: dict[tuple[IndexSet, IndexSet], bool] = {}

    def gens(self, j_set: IndexSet) -> list[Vector]:
        return [self.cols[j] for j in j_set]

    def is_simplicial(self, j_set: IndexSet) -> bool:
        return len(j_set) == self.n and det([list(c) for c in zip(*self.gens(j_set))]) != 0

    @cached_property
    def candidates(self) -> list[IndexSet]:
        """All nonsingular n-subsets of columns, in lexicographic order."""
        return [
            j for j in combinations(range(1, self.ncols + 1), self.n) if self.is_simplicial(j)
        ]

    def facet_normals(self, j_set: IndexSet) -> dict[int, Vector]:
        """Inward normal of the facet opposite each generator index."""
        normals = self._facets.get(j_set)
        if normals is None:
            normals = dict(zip(j_set, simplicial_facets(self.gens(j_set))))
            self._facets[j_set] = normals
        return normals

    def compatible(self, a: IndexSet, b: IndexSet) -> bool:
        """True iff <V_a> and <V_b> intersect in their common face <V_{a∩b}>."""
        if a == b:
            return True
        key = (a, b) if a < b else (b, a)
        hit = self._compat.get(key)
        if hit is None:
            hit = self._intersection_is_shared_face(a, b)
            self._compat[key] = hit
        return hit

    def _intersection_is_shared_face(self, a: IndexSet, b: IndexSet) -> bool:
        shared = set(a) & set(b)
        # cheap separation test: a facet hyperplane of a that has all of b outside
        # except the shared face is enough
        for k, u in self.facet_normals(a).items():
            if k in shared:
                continue
            if all(dot(u, self.cols[j]) <= 0 for j in b):
                if all(dot(u, self.cols[j]) < 0 for j in b if j not in shared):
                    return True
        cons = [*self.facet_normals(a).values(), *self.facet_normals(b).values()]
        lin, rays = _double_description(self.n, cons)
        if lin:
            return False
        return set(rays) == {self.cols[j] for j in shared}

    def opposite_sides(self, j_set: IndexSet, dropped: int, new: int) -> bool:
        u = self.facet_normals(j_set)[dropped]
        return dot(u, self.cols[new]) < 0

    def strictly_inside(self, j_set: IndexSet, x: Sequence[int]) -> bool:
        return all(dot(u, x) > 0 for u in self.facet_normals(j_set).values())


@dataclass(frozen=True)
class FanCheck:
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def is_complete_fan(v: FanMatrix, cones: Iterable[Iterable[int]], geometry: FanGeometry | None = None) -> FanCheck:
    """Decide whether the index sets form a simplicial complete fan using every column."""
    geo = geometry or FanGeometry(v)
    try:
        js = sorted({index_set(c, v.ncols) for c in cones})
    except (ValueError, IndexError) as exc:
        return FanCheck(False, f"bad index set: {exc}")
    if not js:
        return FanCheck(False, "empty fan")
    for j in js:
        if not geo.is_simplicial(j):
            return FanCheck(False, f"cone {format_index_set(j)} is not simplicial and full-dimensional")
    for a, b in combinations(js, 2):
        if not geo.compatible(a, b):
            return FanCheck(
                False,
                f"cones {format_index_set(a)} and {format_index_set(b)} do not meet in a common face",
            )
    owners: dict[IndexSet, list[IndexSet]] = {}
    for j in js:
        for k in j:
            owners.setdefault(tuple(x for x in j if x != k), []).append(j)
    for facet, cs in sorted(owners.items()):
        if len(cs) != 2:
            where = ", ".join(map(format_index_set, cs))
            return FanCheck(
                False,
                f"facet {format_index_set(facet)} lies in {len(cs)} maximal cone(s) ({where}), expected 2",
            )
    seen = {js[0]}
    stack = [js[0]]
    while stack:
        j = stack.pop()
        for k in j:
            for other in owners[tuple(x for x in j if x != k)]:
                if other not in seen:
                    seen.add(other)
                    stack.append(other)
    if len(seen) != len(js):
        return FanCheck(False, "facet adjacency graph is disconnected")
    used = set().union(*js)
    missing = [j for j in range(1, v.ncols + 1) if j not in used]
    if missing:
        return FanCheck(False, f"columns {missing} are not rays of the fan")
    return FanCheck(True)


@dataclass(frozen=True)
class Fan:
    fan_matrix: FanMatrix
    max_cones: tuple[IndexSet, ...]

    @classmethod
    def build(cls, v: FanMatrix, cones: Iterable[Iterable[int]], check: bool = True) -> Fan:
        js = tuple(sorted({index_set(c, v.ncols) for c in cones}))
        if check:
            verdict = is_complete_fan(v, js)
            if not verdict:
                raise FanError(verdict.reason)
        return cls(v, js)

    def __len__(self) -> int:
        return len(self.max_cones)

    def __iter__(self):
        return iter(self.max_cones)

    def __contains__(self, j_set) -> bool:
        return tuple(sorted(j_set)) in self._cone_set

    @cached_property
    def _cone_set(self) -> frozenset[IndexSet]:
        return frozenset(self.max_cones)

    def __repr__(self) -> str:
        return "Fan{" + ", ".join(map(format_index_set, self.max_cones)) + "}"


def facet_neighbor(f: Fan, j_set: Iterable[int], dropped: int) -> IndexSet:
    """The other maximal cone sharing the facet of ``j_set`` opposite ``dropped``."""
    j_set = index_set(j_set)
    if j_set not in f:
        raise FanError(f"{format_index_set(j_set)} is not a maximal cone of the fan")
    if dropped not in j_set:
        raise FanError(f"column {dropped} is not a generator of {format_index_set(j_set)}")
    facet = set(j_set) - {dropped}
    hits = [j for j in f.max_cones if j != j_set and facet <= set(j)]
    if len(hits) != 1:
        raise RuntimeError(
            f"fan invariant violated: facet {format_index_set(tuple(sorted(facet)))} "
            f"has {len(hits)} neighbours"
        )
    return hits[0]


def generic_point(geo: FanGeometry, max_attempts: int = 64) -> Vector:
    """A deterministic point off every hyperplane spanned by n-1 columns.

    Starts from the sum of the generators of the first candidate cone and
    perturbs it by (1, 1/2, 1/4, ...) scaled to integers, shrinking the
    perturbation on each retry.
    """
    n = geo.n
    if not geo.candidates:
        raise FanError("no nonsingular n-subset of columns")
    base = [sum(c) for c in zip(*geo.gens(geo.candidates[0]))]
    walls = []
    for sub in combinations(range(1, geo.ncols + 1), n - 1):
        g = geo.gens(sub)
        if n == 1 or rank(g) == n - 1:
            # normal vector by cofactor expansion against e_i
            normal = []
            for i in range(n):
                e = [int(i == k) for k in range(n)]
                normal.append(det([list(r) for r in zip(*g, e)]))
            walls.append(primitive(normal))
    for attempt in range(1, max_attempts + 1):
        scale = 1 << ((n - 1) * attempt)
        pert = [1 << ((n - 1 - i) * attempt) for i in range(n)]
        p = primitive([4 * scale * b + w for b, w in zip(base, pert)])
        if all(dot(w, p) != 0 for w in walls):
            return p
    raise RuntimeError("could not find a generic point")


def enumerate_fans(v: FanMatrix, ceiling: int | None = None) -> list[Fan]:
    """All simplicial complete fans whose rays are exactly the columns of ``v``.

    Seeds with every candidate cone containing a fixed generic point (each
    complete fan has exactly one), then closes open facets one at a time,
    always the lexicographically smallest, backtracking over the candidate
    cones on the far side of that facet.
    """
    ceiling = default_ceiling() if ceiling is None else ceiling
    geo = FanGeometry(v)
    cands = geo.candidates
    if len(cands) > ceiling:
        raise EnumerationCeilingError(len(cands), ceiling)
    by_facet: dict[IndexSet, list[tuple[IndexSet, int]]] = {}
    for j in cands:
        for k in j:
            by_facet.setdefault(tuple(x for x in j if x != k), []).append((j, k))

    p = generic_point(geo)
    found: set[tuple[IndexSet, ...]] = set()

    def grow(chosen: list[IndexSet], open_facets: dict[IndexSet, tuple[IndexSet, int]]) -> None:
        if not open_facets:
            found.add(tuple(sorted(chosen)))
            return
        facet = min(open_facets)
        owner, dropped = open_facets[facet]
        for j, new in by_facet[facet]:
            if j == owner or not geo.opposite_sides(owner, dropped, new):
                continue
            if not all(geo.compatible(j, c) for c in chosen):
                continue
            nxt = dict(open_facets)
            for k in j:
                f = tuple(x for x in j if x != k)
                if f in nxt:
                    del nxt[f]
                else:
                    nxt[f] = (j, k)
            chosen.append(j)
            grow(chosen, nxt)
            chosen.pop()

    for seed in cands:
        if not geo.strictly_inside(seed, p):
            continue
        grow([seed], {tuple(x for x in seed if x != k): (seed, k) for k in seed})

    everything = set(range(1, v.ncols + 1))
    fans = [Fan(v, js) for js in sorted(found) if set().union(*js) == everything]
    return fans
