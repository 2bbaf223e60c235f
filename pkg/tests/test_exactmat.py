import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import in_row_lattice
from toricgale.exactmat import (
    DimensionError,
    FanMatrix,
    IntMatrix,
    InvalidFanMatrix,
    InvalidWeightMatrix,
    WeightMatrix,
    det,
    gale_dual,
    hnf_rows,
    kernel_lattice_basis,
    lattice_equal,
    rank,
    solve_integer_row,
    submatrix,
)

P1P1_V = IntMatrix.from_rows([[1, -1, 0, 0], [0, 0, 1, -1]])
NEF_ZERO_V = IntMatrix.from_rows([[1, 0, 0, 0, -1, 1], [0, 1, 0, -1, -1, 3], [0, 0, 1, -1, 0, 2]])
NEF_ZERO_Q = IntMatrix.from_rows([[1, 1, 0, 0, 1, 0], [0, 1, 1, 1, 0, 0], [0, 0, 0, 2, 1, 1]])
BH_V = IntMatrix.from_rows([[1, 0, 0, 0, -1, 1], [0, 1, 0, -1, -1, 2], [0, 0, 1, -1, 0, 1]])
BH_Q = IntMatrix.from_rows([[1, 1, 0, 0, 1, 0], [0, 1, 1, 1, 0, 0], [0, 0, 0, 1, 1, 1]])

matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r
        ).map(lambda rows: IntMatrix.from_rows(rows, c))
    )
)


def is_hnf(h: IntMatrix) -> bool:
    last = -1
    zero_seen = False
    for i, row in enumerate(h.entries):
        piv = next((c for c, x in enumerate(row) if x), None)
        if piv is None:
            zero_seen = True
            continue
        if zero_seen or piv <= last or row[piv] <= 0:
            return False
        if any(not 0 <= h.entries[k][piv] < row[piv] for k in range(i)):
            return False
        if any(h.entries[k][piv] for k in range(i + 1, h.nrows)):
            return False
        last = piv
    return True


def test_hnf_identity():
    i2 = IntMatrix.identity(2)
    assert hnf_rows(i2) == (i2, i2)


def test_hnf_small_example():
    m = IntMatrix.from_rows([[2, 4], [1, 3]])
    h, u = hnf_rows(m)
    # reduced above the pivot 2: 3 -> 3 - 2 = 1
    assert h.entries == ((1, 1), (0, 2))
    assert u @ m == h
    assert abs(det(u.entries)) == 1
    # same lattice as the unreduced echelon form [[1, 3], [0, 2]]
    assert lattice_equal(h, IntMatrix.from_rows([[1, 3], [0, 2]]))


def test_hnf_empty():
    m = IntMatrix(0, 3, ())
    h, u = hnf_rows(m)
    assert h == m
    assert u.shape == (0, 0)


@given(matrices)
@settings(max_examples=200, deadline=None)
def test_hnf_properties(m):
    h, u = hnf_rows(m)
    assert u @ m == h
    assert abs(det(u.entries)) == 1
    assert is_hnf(h)
    assert hnf_rows(h)[0] == h


def test_kernel_examples():
    k = kernel_lattice_basis(IntMatrix.from_rows([[1, 1]]))
    assert lattice_equal(k, IntMatrix.from_rows([[1, -1]]))
    k = kernel_lattice_basis(P1P1_V)
    assert lattice_equal(k, IntMatrix.from_rows([[1, 1, 0, 0], [0, 0, 1, 1]]))
    k = kernel_lattice_basis(IntMatrix.from_rows([[2, 1], [1, 1]]))
    assert k.shape == (0, 2)


@given(matrices)
@settings(max_examples=150, deadline=None)
def test_kernel_is_exact_and_saturated(m):
    k = kernel_lattice_basis(m)
    assert k.nrows == m.ncols - rank(m)
    assert (m @ k.T).is_zero() if k.nrows else True
    # brute force: every kernel vector in a small box lies in the lattice
    for x in itertools.product(range(-2, 3), repeat=m.ncols):
        if all(sum(a * b for a, b in zip(row, x)) == 0 for row in m.entries):
            assert in_row_lattice(k, x) if k.nrows else not any(x)


@given(matrices, st.lists(st.integers(-3, 3), min_size=4, max_size=4), st.sampled_from([2, 3, 5, 7, 11, 13]))
@settings(max_examples=150, deadline=None)
def test_kernel_saturation_by_prime(m, coeffs, p):
    k = kernel_lattice_basis(m)
    if not k.nrows:
        return
    # x = (integer combination) / p is in the kernel over Q; saturation says
    # it is integral only if it already lies in the lattice
    y = [coeffs[i % 4] for i in range(k.nrows)]
    px = [sum(y[i] * k.entries[i][c] for i in range(k.nrows)) for c in range(k.ncols)]
    if all(v % p == 0 for v in px):
        x = [v // p for v in px]
        assert in_row_lattice(k, x)


def test_gale_dual_examples():
    assert lattice_equal(gale_dual(FanMatrix(P1P1_V)).base, IntMatrix.from_rows([[1, 1, 0, 0], [0, 0, 1, 1]]))
    assert lattice_equal(gale_dual(FanMatrix(NEF_ZERO_V)).base, NEF_ZERO_Q)
    assert lattice_equal(gale_dual(FanMatrix(BH_V)).base, BH_Q)


@pytest.mark.parametrize("v", [P1P1_V, NEF_ZERO_V, BH_V])
def test_gale_duality_is_an_involution(v):
    q = gale_dual(FanMatrix(v))
    assert lattice_equal(kernel_lattice_basis(q.base), v)
    assert hnf_rows(q.base)[0] == q.base


def test_fan_matrix_rejections():
    with pytest.raises(InvalidFanMatrix) as e:
        FanMatrix.from_rows([[1, 0, 2], [0, 1, 0]])
    assert e.value.invariant == "primitive"
    with pytest.raises(InvalidFanMatrix) as e:
        FanMatrix.from_rows([[1, 1, -1], [0, 0, 0]])
    assert e.value.invariant == "rank"
    with pytest.raises(InvalidFanMatrix) as e:
        FanMatrix.from_rows([[1, 0, 1, -1], [0, 1, 0, -1]])
    assert e.value.invariant == "distinct"
    with pytest.raises(InvalidFanMatrix) as e:
        FanMatrix.from_rows([[1, 0, 1], [0, 1, 1]])
    assert e.value.invariant == "positive-span"
    with pytest.raises(InvalidFanMatrix) as e:
        FanMatrix.from_rows([[1, 0, 0, -1], [0, 1, 0, -1]])
    assert e.value.invariant == "nonzero"


def test_weight_matrix_rejections():
    v = FanMatrix(P1P1_V)
    with pytest.raises(InvalidWeightMatrix) as e:
        WeightMatrix(IntMatrix.from_rows([[2, 2, 0, 0], [0, 0, 1, 1]]), v)
    assert e.value.invariant == "saturated"
    with pytest.raises(InvalidWeightMatrix) as e:
        WeightMatrix(IntMatrix.from_rows([[1, 0, 0, 0], [0, 0, 1, 1]]), v)
    assert e.value.invariant == "orthogonal"


def test_lattice_equal():
    m = IntMatrix.from_rows([[1, 2, 3]])
    assert lattice_equal(m, m)
    assert not lattice_equal(IntMatrix.from_rows([[1, 0]]), IntMatrix.from_rows([[2, 0]]))
    with pytest.raises(DimensionError):
        lattice_equal(IntMatrix.from_rows([[1, 0]]), IntMatrix.from_rows([[1, 0, 0]]))


def test_submatrix():
    s = submatrix(NEF_ZERO_V, {2, 4, 5}, "drop")
    assert s.columns == (NEF_ZERO_V.col(0), NEF_ZERO_V.col(2), NEF_ZERO_V.col(5))
    assert submatrix(NEF_ZERO_V, set(), "drop") == NEF_ZERO_V
    assert submatrix(NEF_ZERO_V, range(1, 7), "keep") == NEF_ZERO_V
    with pytest.raises(IndexError):
        submatrix(NEF_ZERO_V, {7})


@given(st.sets(st.integers(1, 6)))
def test_submatrix_partition(idx):
    kept = submatrix(NEF_ZERO_V, idx, "keep").columns
    dropped = submatrix(NEF_ZERO_V, idx, "drop").columns
    assert sorted(kept + dropped) == sorted(NEF_ZERO_V.columns)
    assert len(kept) == len(idx)


def test_big_integers_survive():
    big = 10**40
    m = IntMatrix.from_rows([[big, big + 1, 1]])
    k = kernel_lattice_basis(m)
    assert (m @ k.T).is_zero()
    assert k.nrows == 2


def test_solve_integer_row():
    q = IntMatrix.from_rows([[1, 1, 0, 0], [0, 0, 1, 1]])
    assert solve_integer_row(q, (2, 2, -1, -1)) == (2, -1)
    assert solve_integer_row(q, (1, 0, 0, 0)) is None
