import random
from fractions import Fraction

import pytest

from toricgale import corpus
from toricgale.exactmat import FanMatrix, IntMatrix, WeightMatrix

# Fans of the rank-3 Nef = 0 example, as listed with their generator index sets.
NEF_ZERO_FANS = {
    1: ["345", "245", "235", "134", "124", "236", "136", "126"],
    2: ["245", "145", "135", "356", "256", "124", "136", "126"],
    3: ["245", "145", "135", "356", "256", "246", "146", "136"],
    4: ["245", "235", "145", "135", "124", "236", "136", "126"],
    5: ["345", "245", "356", "256", "134", "246", "146", "136"],
    6: ["345", "245", "235", "134", "246", "236", "146", "136"],
    7: ["345", "245", "356", "256", "134", "124", "136", "126"],
    8: ["245", "235", "145", "135", "246", "236", "146", "136"],
}
NEF_ZERO_BUNCH_8 = ["136", "146", "236", "246", "135", "145", "235", "245"]

BH_SIGMA = ["245", "235", "145", "135", "246", "236", "146", "136"]
BH_SIGMA_PRIME = ["345", "245", "356", "256", "134", "124", "136", "126"]
BH_BUNCH = ["136", "146", "236", "246", "135", "145", "235", "245"]
BH_BUNCH_PRIME = ["126", "136", "124", "134", "256", "356", "245", "345"]
BH_SYMMETRIES = ["(2 5)(3 6)", "(1 3)(4 5)", "(1 6)(2 4)"]


def sets(items):
    """'245' -> (2, 4, 5), sorted and deduplicated family."""
    return tuple(sorted(tuple(sorted(int(c) for c in s)) for s in items))


def load(name):
    v = corpus.fan_matrix(name)
    return v, WeightMatrix(corpus.weight_matrix(name), v)


# name -> (V, Q in displayed coordinates)
def corpus_pairs():
    out = {name: load(name) for name in corpus.NAMES}
    for t in range(1, 5):
        v = corpus.fan_family(t)
        out[f"family_t{t}"] = (v, WeightMatrix(corpus.weight_family(t), v))
    return out


@pytest.fixture(scope="session")
def pairs():
    return corpus_pairs()


@pytest.fixture
def rng():
    return random.Random(20260501)


def rational_coordinates(basis_rows, x):
    """Coordinates of x in the span of independent integer rows, or None if outside.

    Plain Gaussian elimination on Fractions; independent of the HNF code.
    """
    k = len(basis_rows)
    n = len(x)
    # solve sum y_i b_i = x: n equations, k unknowns
    aug = [[Fraction(basis_rows[i][c]) for i in range(k)] + [Fraction(x[c])] for c in range(n)]
    row = 0
    pivots = []
    for col in range(k):
        piv = next((r for r in range(row, n) if aug[r][col] != 0), None)
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        p = aug[row][col]
        aug[row] = [a / p for a in aug[row]]
        for r in range(n):
            if r != row and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[row])]
        pivots.append(col)
        row += 1
    if any(aug[r][k] != 0 for r in range(row, n)):
        return None
    y = [Fraction(0)] * k
    for r, col in enumerate(pivots):
        y[col] = aug[r][k]
    return y


def in_row_lattice(m: IntMatrix, x) -> bool:
    y = rational_coordinates(m.entries, x)
    return y is not None and all(t.denominator == 1 for t in y)


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL line per acceptance criterion."""
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            if rep.when == "call" and "test_acceptance.py::test_criterion[" in rep.nodeid:
                label = rep.nodeid.split("[", 1)[1].rstrip("]")
                lines.append((label, "PASS" if outcome == "passed" else "FAIL"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for label, verdict in sorted(lines):
            terminalreporter.write_line(f"{label}: {verdict}")
