"""Report documents for the ``classify`` command.

A report is a JSON tree.  Every integer, including counts and indices, is
written as a decimal string so values of any size survive any JSON reader;
booleans stay JSON booleans.  See ``docs/report_schema.md``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from . import __version__
from .cone import Cone, cone_from_inequalities
from .exactmat import FanMatrix, IntMatrix, WeightMatrix, dot
from .nefsec import Classification, effective_cone, moving_cone, secondary_chambers


def _ints(v) -> list[str]:
    return [str(x) for x in v]


def _rows(rows) -> list[list[str]]:
    return [_ints(r) for r in rows]


def cone_document(c: Cone) -> dict[str, Any]:
    return {
        "ambient_dim": str(c.ambient_dim),
        "dim": str(c.dim),
        "rays": _rows(c.rays),
        "lineality": _rows(c.lineality),
        "inequalities": _rows(c.inequalities),
        "equations": _rows(c.equations),
    }


def cone_from_document(doc: dict[str, Any]) -> Cone:
    d = int(doc["ambient_dim"])
    ineqs = [[int(x) for x in r] for r in doc["inequalities"]]
    eqs = [[int(x) for x in r] for r in doc["equations"]]
    return cone_from_inequalities(d, ineqs, eqs)


def matrix_document(m: IntMatrix) -> list[list[str]]:
    return _rows(m.entries)


def matrix_from_document(rows: list[list[str]], ncols: int) -> IntMatrix:
    return IntMatrix.from_rows([[int(x) for x in r] for r in rows], ncols)


def build_report(
    v: FanMatrix,
    q: WeightMatrix,
    classes: list[Classification],
    name: str | None = None,
    q_source: str = "gale_dual",
) -> dict[str, Any]:
    chambers = secondary_chambers(q, [c.fan for c in classes])
    chamber_of = {ch.cone: i for i, ch in enumerate(chambers, 1)}
    fans = []
    for i, c in enumerate(classes, 1):
        fans.append(
            {
                "index": str(i),
                "max_cones": _rows(c.fan.max_cones),
                "bunch": _rows(c.bunch.index_sets),
                "nef": cone_document(c.nef),
                "projective": c.projective,
                "weak_fano": c.weak_fano,
                "fano": c.fano,
                "gorenstein": c.gorenstein,
                "chamber": str(chamber_of[c.nef]) if c.projective else None,
            }
        )
    return {
        "tool": "toricgale",
        "version": __version__,
        "input": {
            "name": name,
            "V": matrix_document(v.base),
            "Q": matrix_document(q.base),
            "Q_source": q_source,
        },
        "n": str(v.n),
        "r": str(v.r),
        "anticanonical_class": _ints(classes[0].anticanonical_class) if classes else None,
        "effective_cone": cone_document(effective_cone(q)),
        "moving_cone": cone_document(moving_cone(q)),
        "fans": fans,
        "chambers": [
            {
                "index": str(i),
                "cone": cone_document(ch.cone),
                "bunch": _rows(ch.fan_index_sets),
            }
            for i, ch in enumerate(chambers, 1)
        ],
        "summary": {
            "fans": str(len(classes)),
            "projective": str(sum(c.projective for c in classes)),
            "non_projective": str(sum(not c.projective for c in classes)),
            "nef_zero": str(sum(c.nef.dim == 0 for c in classes)),
            "weak_fano": str(sum(c.weak_fano for c in classes)),
            "gorenstein": str(sum(c.gorenstein for c in classes)),
            "chambers": str(len(chambers)),
        },
    }


def dumps(doc: dict[str, Any]) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def render_table(doc: dict[str, Any]) -> str:
    lines = []
    name = doc["input"]["name"]
    if name:
        lines.append(f"# {name}")
    lines.append(f"n = {doc['n']}, r = {doc['r']}, fans = {doc['summary']['fans']}")
    lines.append("Q =")
    lines.extend("  " + " ".join(row) for row in doc["input"]["Q"])
    lines.append("-K = (" + ", ".join(doc["anticanonical_class"] or []) + ")")
    lines.append("")
    header = f"{'fan':>4} {'proj':>5} {'wFano':>5} {'Gor':>4} {'dimNef':>6}  Nef rays"
    lines.append(header)
    for f in doc["fans"]:
        rays = " ".join("(" + ",".join(r) + ")" for r in f["nef"]["rays"]) or "0"
        lines.append(
            f"{f['index']:>4} {_yn(f['projective']):>5} {_yn(f['weak_fano']):>5} "
            f"{_yn(f['gorenstein']):>4} {f['nef']['dim']:>6}  {rays}"
        )
    lines.append("")
    for f in doc["fans"]:
        cones = " ".join("<" + ",".join(j) + ">" for j in f["max_cones"])
        lines.append(f"fan {f['index']}: {cones}")
    s = doc["summary"]
    lines.append("")
    lines.append(
        f"projective {s['projective']}, non-projective {s['non_projective']}, "
        f"Nef = 0: {s['nef_zero']}, chambers {s['chambers']}"
    )
    return "\n".join(lines) + "\n"


def _yn(b: bool) -> str:
    return "yes" if b else "no"


def _frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _cyclic_order(c: Cone) -> list[tuple[int, ...]]:
    """Order the rays of a 3-dimensional pointed cone around its boundary."""
    rays = list(c.rays)
    if c.ambient_dim != 3 or c.dim != 3 or len(rays) < 3:
        return rays
    tight = {r: {u for u in c.inequalities if dot(u, r) == 0} for r in rays}
    order = [rays[0]]
    while len(order) < len(rays):
        last = order[-1]
        nxt = next(
            (r for r in rays if r not in order and tight[r] & tight[last]), None
        )
        if nxt is None:
            return rays
        order.append(nxt)
    return order


def section(c: Cone) -> dict[str, Any]:
    """The slice of a cone with the hyperplane x_1 + ... + x_r = 1."""
    rays = _cyclic_order(c)
    if c.lineality or any(sum(r) <= 0 for r in rays):
        return {"bounded": False, "vertices": []}
    verts = [[_frac(Fraction(x, sum(r))) for x in r] for r in rays]
    return {"bounded": True, "vertices": verts}


def plot_data(classes: list[Classification], q: WeightMatrix) -> dict[str, Any]:
    chambers = secondary_chambers(q, [c.fan for c in classes])
    cols = []
    for j in range(1, q.ncols + 1):
        col = q.column(j)
        s = sum(col)
        cols.append(
            {
                "index": str(j),
                "point": [_frac(Fraction(x, s)) for x in col] if s > 0 else None,
            }
        )
    ac = classes[0].anticanonical_class if classes else None
    return {
        "plane": "x_1 + ... + x_r = 1",
        "columns": cols,
        "anticanonical": [_frac(Fraction(x, sum(ac))) for x in ac] if ac and sum(ac) > 0 else None,
        "effective_cone": section(effective_cone(q)),
        "moving_cone": section(moving_cone(q)),
        "chambers": [
            {"index": str(i), **section(ch.cone)} for i, ch in enumerate(chambers, 1)
        ],
        "non_projective_nef": [
            {"fan": str(i), **section(c.nef)}
            for i, c in enumerate(classes, 1)
            if not c.projective and c.nef.dim > 0
        ],
    }

