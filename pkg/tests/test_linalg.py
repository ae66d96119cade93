import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from deriva.errors import DimensionError
from deriva.linalg import LinearSystemFp, in_span_fp, rank_fp, solve_linear_fp


def test_unique_solution():
    sol = solve_linear_fp(LinearSystemFp([[1, 1], [2, 1]], [1, 0], 3))
    # substitution: 2+2 = 4 = 1 and 4+2 = 6 = 0 mod 3
    assert sol.particular.tolist() == [2, 2]
    assert sol.nullity == 0 and sol.rank == 2


def test_one_dimensional_nullspace():
    sol = solve_linear_fp(LinearSystemFp.homogeneous([[1, 2]], 3))
    assert sol.nullity == 1 and sol.rank == 1
    (v,) = sol.basis
    assert (v[0] + 2 * v[1]) % 3 == 0 and v.any()


def test_inconsistent():
    sol = solve_linear_fp(LinearSystemFp([[1], [1]], [0, 1], 5))
    assert not sol.consistent and sol.particular is None


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        LinearSystemFp([[1, 0]], [1, 2], 3)
    with pytest.raises(DimensionError):
        LinearSystemFp([[1]], [1], 4)


def test_entries_reduced():
    s = LinearSystemFp([[-1, 7]], [9], 5)
    assert s.matrix.tolist() == [[4, 2]] and s.rhs.tolist() == [4]


def test_span_helpers():
    basis = [np.array([1, 0, 1]), np.array([0, 1, 1])]
    assert rank_fp(basis, 2) == 2
    assert in_span_fp(np.array([1, 1, 0]), basis, 2)
    assert not in_span_fp(np.array([0, 0, 1]), basis, 2)
    assert in_span_fp(np.zeros(3), [], 2)


@settings(max_examples=150, deadline=None)
@given(
    p=st.sampled_from([2, 3, 5, 7]),
    m=st.integers(1, 6),
    n=st.integers(1, 6),
    data=st.data(),
)
def test_solution_space_property(p, m, n, data):
    A = np.array(data.draw(st.lists(st.lists(st.integers(0, p - 1), min_size=n, max_size=n), min_size=m, max_size=m)))
    x0 = np.array(data.draw(st.lists(st.integers(0, p - 1), min_size=n, max_size=n)))
    b = A @ x0 % p
    sol = solve_linear_fp(LinearSystemFp(A, b, p))
    assert sol.consistent
    assert sol.rank + sol.nullity == n
    for coeffs in np.ndindex(*([p] * min(sol.nullity, 3))):
        x = sol.particular.copy()
        for c, v in zip(coeffs, sol.basis):
            x = (x + c * v) % p
        assert np.array_equal(A @ x % p, b)
    # the planted solution lies in the solution space
    assert in_span_fp((x0 - sol.particular) % p, sol.basis, p)
