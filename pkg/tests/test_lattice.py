import numpy as np
from hypothesis import given, settings, strategies as st

from otlab.lattice import lll, row_hnf

int_matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-30, 30), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@settings(max_examples=150, deadline=None)
@given(int_matrices)
def test_hnf_transform_is_unimodular(m):
    h, u = row_hnf(m)
    assert (np.array(u, dtype=object).dot(np.array(m, dtype=object)) == np.array(h, dtype=object)).all()
    assert abs(round(np.linalg.det(np.array(u, dtype=float)))) == 1


@settings(max_examples=150, deadline=None)
@given(int_matrices)
def test_hnf_shape(m):
    h, _ = row_hnf(m)
    last_pivot = -1
    for row in h:
        nz = [j for j, v in enumerate(row) if v]
        if not nz:
            continue
        j = nz[0]
        assert j > last_pivot and row[j] > 0
        last_pivot = j


def test_hnf_of_rational_relation():
    # rows d*e_i plus the scaled dependency; the lattice they span is Z * (1/2)
    h, u = row_hnf([[2], [1]])
    assert h == [[1], [0]]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-20, 20), min_size=3, max_size=3), min_size=3, max_size=3))
def test_lll_preserves_lattice_and_sizes(rows):
    b = np.array(rows, dtype=float)
    if abs(np.linalg.det(b)) < 1e-6:
        return
    reduced, t = lll(b)
    assert np.allclose(t @ b, reduced)
    assert abs(round(np.linalg.det(t.astype(float)))) == 1
    assert np.linalg.norm(reduced[0]) <= 2 * min(np.linalg.norm(b, axis=1)) + 1e-9


def test_lll_finds_short_vector():
    b = np.array([[1.0, 0.0], [1000.0, 1.0]])
    reduced, t = lll(b)
    assert sorted(np.abs(reduced).sum(axis=1)) == [1.0, 1.0]
