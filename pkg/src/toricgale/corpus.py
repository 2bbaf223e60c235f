"""Reference fan matrices and weight matrices shipped with the package.

``nef_zero`` is a rank-3 threefold with a fan whose Nef cone is zero;
``berchtold_hausen`` is the Berchtold-Hausen threefold.  Both are members
``t = 2`` and ``t = 1`` of the weight family ``Q_t``.
"""

from __future__ import annotations

from importlib import resources

from .exactmat import FanMatrix, IntMatrix, fan_matrix_of
from .matrixfile import parse_matrix

NAMES = ("p1xp1", "f1", "nef_zero", "berchtold_hausen")


def _read(filename: str) -> IntMatrix:
    text = resources.files("toricgale").joinpath("data", filename).read_text(encoding="utf-8")
    return parse_matrix(text).matrix


def fan_matrix(name: str) -> FanMatrix:
    if name not in NAMES:
        raise KeyError(f"unknown corpus entry {name!r}; known: {', '.join(NAMES)}")
    return FanMatrix(_read(f"{name}_V.txt"))


def weight_matrix(name: str) -> IntMatrix:
    """The weight matrix as displayed in the literature (not HNF-normalised)."""
    if name not in NAMES:
        raise KeyError(f"unknown corpus entry {name!r}; known: {', '.join(NAMES)}")
    return _read(f"{name}_Q.txt")


def weight_family(t: int) -> IntMatrix:
    if t < 1:
        raise ValueError(f"t must be a positive integer, got {t}")
    return IntMatrix.from_rows([[1, 1, 0, 0, 1, 0], [0, 1, 1, 1, 0, 0], [0, 0, 0, t, 1, 1]])


def displayed_fan_family(t: int) -> IntMatrix:
    if t < 1:
        raise ValueError(f"t must be a positive integer, got {t}")
    return IntMatrix.from_rows([[1, 0, 0, 0, -1, 1], [0, 1, 0, -1, -1, 1 + t], [0, 0, 1, -1, 0, t]])


def fan_family(t: int) -> FanMatrix:
    """A fan matrix Gale dual to ``Q_t``: HNF basis of its integer kernel."""
    return FanMatrix(fan_matrix_of(weight_family(t)))
