"""Rational polyhedral cones with exact V- and H-representations.

Conversion runs the double description method on integer vectors, with
every intermediate ray reduced to a primitive vector.  Two extreme rays are
combined only when they are adjacent, tested algebraically by the rank of
the constraints tight on both.

A ``Cone`` is always canonical, so ``==`` is geometric equality:

* ``equations``  HNF basis of the integer vectors vanishing on the cone
* ``lineality``  HNF basis of the largest linear subspace inside the cone
* ``rays``       primitive extreme rays of the cone cut by the orthogonal
                 complement of the lineality space, sorted
* ``inequalities`` primitive facet normals projected into the linear span
                 of the cone, sorted

so ``{x : <u, x> >= 0 for u in inequalities, <e, x> = 0 for e in equations}``
is the cone.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .exactmat import (
    DimensionError,
    IntMatrix,
    Vector,
    adjugate,
    det,
    dot,
    hnf_basis,
    integer_vector,
    primitive,
    rank,
)


def _neg(v: Sequence[int]) -> Vector:
    return tuple(-x for x in v)


def _double_description(dim: int, constraints: Iterable[Sequence[int]]):
    """Generators of ``{x in R^dim : <a, x> >= 0 for a in constraints}``.

    Returns ``(lineality, rays)``: a basis of the lineality space and the
    extreme rays of the pointed part (not yet projected).
    """
    lin: list[Vector] = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    rays: list[Vector] = []
    done: list[Vector] = []
    for a in constraints:
        a = tuple(a)
        if len(a) != dim:
            raise DimensionError(f"constraint of length {len(a)} in dimension {dim}")
        if not any(a):
            continue
        k = next((i for i, l in enumerate(lin) if dot(a, l)), None)
        if k is not None:
            # a cuts the lineality space: shrink it along l0 and keep l0 as a new ray
            l0 = lin.pop(k)
            s = dot(a, l0)
            if s < 0:
                l0, s = _neg(l0), -s
            lin = [primitive([s * x - dot(a, l) * y for x, y in zip(l, l0)]) for l in lin]
            rays = [primitive([s * x - dot(a, r) * y for x, y in zip(r, l0)]) for r in rays]
            rays.append(l0)
            done.append(a)
            continue
        vals = [dot(a, r) for r in rays]
        pos = [r for r, v in zip(rays, vals) if v > 0]
        neg = [(r, v) for r, v in zip(rays, vals) if v < 0]
        new = [r for r, v in zip(rays, vals) if v >= 0]
        if neg and pos:
            need = dim - len(lin) - 2
            tight = {r: frozenset(i for i, b in enumerate(done) if dot(b, r) == 0) for r in rays}
            pvals = {r: v for r, v in zip(rays, vals) if v > 0}
            for p in pos:
                for n, nv in neg:
                    common = tight[p] & tight[n]
                    if len(common) < need:
                        continue
                    if need > 0 and rank([done[i] for i in common]) != need:
                        continue
                    pv = pvals[p]
                    new.append(primitive([pv * y - nv * x for x, y in zip(p, n)]))
        rays = new
        done.append(a)
    return lin, rays


def _project_out(vectors: list[Vector], basis: Sequence[Sequence[int]]) -> list[Vector]:
    """Orthogonal projection onto the complement of span(basis), rescaled to primitive."""
    if not basis:
        return list(vectors)
    b = [list(x) for x in basis]
    gram = [[dot(x, y) for y in b] for x in b]
    d = det(gram)
    adj = adjugate(gram)
    out = []
    for v in vectors:
        coeffs = [Fraction(dot(row, [dot(x, v) for x in b]), d) for row in adj]
        w = [Fraction(v[i]) - sum(c * x[i] for c, x in zip(coeffs, b)) for i in range(len(v))]
        out.append(integer_vector(w))
    return out


def _basis(dim: int, vectors: Sequence[Sequence[int]]) -> tuple[Vector, ...]:
    if not vectors:
        return ()
    return hnf_basis(IntMatrix.from_rows(vectors, dim)).entries


@dataclass(frozen=True)
class Cone:
    ambient_dim: int
    rays: tuple[Vector, ...]
    lineality: tuple[Vector, ...]
    inequalities: tuple[Vector, ...]
    equations: tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return self.ambient_dim - len(self.equations)

    @property
    def is_pointed(self) -> bool:
        return not self.lineality

    @property
    def is_zero(self) -> bool:
        return self.dim == 0

    @property
    def is_full_dimensional(self) -> bool:
        return not self.equations

    def generators(self) -> list[Vector]:
        """Rays plus both signs of each lineality vector."""
        return [*self.rays, *self.lineality, *(_neg(l) for l in self.lineality)]

    def __repr__(self) -> str:
        parts = [f"dim={self.dim}", f"rays={list(self.rays)}"]
        if self.lineality:
            parts.append(f"lineality={list(self.lineality)}")
        return f"Cone({', '.join(parts)})"


def _from_generators(dim: int, lin: Sequence[Vector], rays: Sequence[Vector]) -> Cone:
    """Canonical cone from generators already known to be irredundant."""
    gens = [*rays, *lin, *(_neg(l) for l in lin)]
    eqs, facets = _double_description(dim, gens)
    lin_basis = _basis(dim, lin)
    eq_basis = _basis(dim, eqs)
    rays_c = sorted(set(_project_out(list(rays), lin_basis)))
    facets_c = sorted(set(_project_out(facets, eq_basis)))
    return Cone(dim, tuple(rays_c), lin_basis, tuple(facets_c), eq_basis)


def cone_from_inequalities(
    ambient_dim: int,
    inequalities: Iterable[Sequence[int]],
    equations: Iterable[Sequence[int]] = (),
) -> Cone:
    """Canonical cone ``{x : <u, x> >= 0, <e, x> = 0}``."""
    eqs = [tuple(e) for e in equations]
    cons = [tuple(u) for u in inequalities] + eqs + [_neg(e) for e in eqs]
    for c in cons:
        if len(c) != ambient_dim:
            raise DimensionError(f"normal of length {len(c)} in dimension {ambient_dim}")
    lin, rays = _double_description(ambient_dim, cons)
    return _from_generators(ambient_dim, lin, rays)


def cone_from_generators(ambient_dim: int, gens: Iterable[Sequence[int]]) -> Cone:
    """Canonical cone generated by ``gens`` (the empty list gives the zero cone)."""
    gens = [tuple(g) for g in gens]
    for g in gens:
        if len(g) != ambient_dim:
            raise DimensionError(f"generator of length {len(g)} in dimension {ambient_dim}")
    eqs, facets = _double_description(ambient_dim, gens)
    return cone_from_inequalities(ambient_dim, facets, eqs)


def zero_cone(ambient_dim: int) -> Cone:
    return cone_from_generators(ambient_dim, [])


def full_space(ambient_dim: int) -> Cone:
    return cone_from_inequalities(ambient_dim, [])


def _same_dim(a: Cone, b: Cone) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionError(f"ambient dimensions differ: {a.ambient_dim} vs {b.ambient_dim}")


def intersect(a: Cone, b: Cone) -> Cone:
    _same_dim(a, b)
    return cone_from_inequalities(
        a.ambient_dim, a.inequalities + b.inequalities, a.equations + b.equations
    )


def intersect_all(cones: Iterable[Cone]) -> Cone:
    cones = list(cones)
    if not cones:
        raise ValueError("empty intersection")
    d = cones[0].ambient_dim
    ineqs: list[Vector] = []
    eqs: list[Vector] = []
    for c in cones:
        if c.ambient_dim != d:
            raise DimensionError("ambient dimensions differ")
        ineqs.extend(c.inequalities)
        eqs.extend(c.equations)
    return cone_from_inequalities(d, ineqs, eqs)


def contains(c: Cone, x: Sequence[int], strictness: str = "closure") -> bool:
    """Membership in the closed cone or in its relative interior."""
    if len(x) != c.ambient_dim:
        raise DimensionError(f"point of length {len(x)} in dimension {c.ambient_dim}")
    if any(dot(e, x) for e in c.equations):
        return False
    if strictness == "closure":
        return all(dot(u, x) >= 0 for u in c.inequalities)
    if strictness == "relative_interior":
        return all(dot(u, x) > 0 for u in c.inequalities)
    raise ValueError(f"strictness must be 'closure' or 'relative_interior', not {strictness!r}")


def is_subcone(a: Cone, b: Cone) -> bool:
    """a ⊆ b."""
    _same_dim(a, b)
    return all(contains(b, g) for g in a.generators())


def is_face(sub: Cone, sup: Cone) -> bool:
    _same_dim(sub, sup)
    if sub == sup:
        return True
    if not is_subcone(sub, sup):
        return False
    gens = sub.generators()
    tight = [u for u in sup.inequalities if all(dot(u, g) == 0 for g in gens)]
    smallest = cone_from_inequalities(
        sup.ambient_dim, sup.inequalities, sup.equations + tuple(tight)
    )
    return smallest == sub


def positively_spans(dim: int, vectors: Sequence[Sequence[int]]) -> bool:
    """True iff the vectors generate R^dim as a cone."""
    lin, rays = _double_description(dim, vectors)
    return not lin and not rays


def simplicial_facets(gens: Sequence[Sequence[int]]) -> list[Vector]:
    """Inward facet normals of a full-dimensional simplicial cone.

    Row i is orthogonal to every generator except generator i, on which it
    is positive.
    """
    m = [list(col) for col in zip(*gens)]
    d = det(m)
    if d == 0:
        raise ValueError("generators are linearly dependent")
    adj = adjugate(m)
    s = 1 if d > 0 else -1
    return [primitive([s * x for x in row]) for row in adj]


def simplicial_coefficients(gens: Sequence[Sequence[int]], x: Sequence[int]) -> list[Fraction]:
    """The unique ``lam`` with ``sum(lam_i * gens_i) == x`` (Cramer's rule)."""
    m = [list(col) for col in zip(*gens)]
    d = det(m)
    if d == 0:
        raise ValueError("generators are linearly dependent")
    out = []
    for i in range(len(gens)):
        mi = [row[:i] + [x[k]] + row[i + 1:] for k, row in enumerate(m)]
        out.append(Fraction(det(mi), d))
    return out


def simplicial_contains(gens: Sequence[Sequence[int]], x: Sequence[int], strict: bool = False) -> bool:
    """Sign-of-determinant membership for a full-dimensional simplicial cone."""
    m = [list(col) for col in zip(*gens)]
    d = det(m)
    if d == 0:
        raise ValueError("generators are linearly dependent")
    for i in range(len(gens)):
        s = det([row[:i] + [x[k]] + row[i + 1:] for k, row in enumerate(m)]) * d
        if s < 0 or (strict and s == 0):
            return False
    return True
