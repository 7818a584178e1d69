import random

import numpy as np
import pytest

from realcech import exact


def random_matrix(rng, m, n, lo=-6, hi=6):
    return exact.as_int_matrix(
        [[rng.randint(lo, hi) for _ in range(n)] for _ in range(m)])


@pytest.mark.parametrize("mat,expected", [
    ([[2, 0], [0, 3]], [1, 6]),
    ([[0, 0], [0, 0]], [0, 0]),
    ([[1, 0], [0, 1]], [1, 1]),
])
def test_snf_examples(mat, expected):
    U, D, V = exact.smith_normal_form(mat)
    assert exact.diagonal_of(D) == expected
    assert (U @ exact.as_int_matrix(mat) @ V == D).all()


def test_snf_random_properties():
    rng = random.Random(20240817)
    for _ in range(40):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        M = random_matrix(rng, m, n)
        U, D, V, Ui, Vi = exact.smith_normal_form(M, need_inverses=True)
        assert (U @ M @ V == D).all()
        # unimodularity re-verified through the tracked inverses
        assert (U @ Ui == exact.eye(m)).all()
        assert (V @ Vi == exact.eye(n)).all()
        diag = [d for d in exact.diagonal_of(D) if d != 0]
        for a, b in zip(diag, diag[1:]):
            assert b % a == 0
        for i in range(m):
            for j in range(n):
                if i != j:
                    assert D[i, j] == 0


def test_solve_examples():
    assert list(exact.solve_int([[2]], [4])) == [2]
    assert exact.solve_int([[2]], [3]) is None
    x = exact.frac_solve([[2]], [3])
    assert x is not None and x[0] * 2 == 3


def test_solve_always_recovers_images():
    rng = random.Random(7)
    for _ in range(30):
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        M = random_matrix(rng, m, n)
        x = np.array([rng.randint(-5, 5) for _ in range(n)], dtype=object)
        b = M @ x
        x2 = exact.solve_int(M, b)
        assert x2 is not None
        assert (M @ x2 == b).all()


def test_kernel():
    K = exact.int_kernel([[1, 1, 0]])
    assert K.shape == (3, 2)
    M = exact.as_int_matrix([[1, 1, 0]])
    assert all(v == 0 for v in (M @ K).flat)
    assert exact.int_kernel([[1, 0], [0, 1]]).shape[1] == 0


@pytest.mark.parametrize("ker,img,key", [
    ([[1, 0], [0, 1]], [[2], [0]], (1, (2,))),   # Z^2 / 2Z+0 = Z/2 + Z
    ([[1, 0], [0, 1]], [[1, 0], [0, 1]], (0, ())),
    ([[1, 0], [0, 1]], [[0], [0]], (2, ())),
])
def test_quotient_examples(ker, img, key):
    q = exact.quotient(ker, img)
    assert q.group_key() == key


def test_quotient_rejects_outside_image():
    with pytest.raises(ValueError, match="image not contained"):
        exact.quotient([[2], [0]], [[1], [0]])


def test_quotient_basis_permutation_invariance():
    rng = random.Random(99)
    for _ in range(20):
        n = rng.randint(1, 4)
        B = exact.eye(n)
        g = rng.randint(0, n)
        G = random_matrix(rng, n, g, -4, 4)
        key = exact.quotient(B, G).group_key()
        perm = list(range(n))
        rng.shuffle(perm)
        P = exact.zeros(n, n)
        for i, j in enumerate(perm):
            P[i, j] = 1
        key2 = exact.quotient(P, P @ G if g else exact.zeros(n, 0)).group_key()
        assert key == key2


def test_class_coords_and_lift():
    q = exact.quotient(exact.eye(2), [[2], [0]])
    for coords in [(0, 0), (1, 0), (0, 5), (1, -3)]:
        v = q.lift(coords)
        back = q.class_coords(v)
        norm = (coords[0] % 2, coords[1]) if q.invariant_factors == [2] else coords
        # coordinate order: torsion generators come first in this presentation
        assert back is not None
    gen_orders = sorted(o for _, o in q.generators())
    assert gen_orders == [0, 2]


def test_rational_rank_and_kernel():
    assert exact.frac_rank([[1, 2], [2, 4]]) == 1
    K = exact.frac_kernel([[1, 2], [2, 4]])
    assert K.shape[1] == 1
    M = exact.as_frac_matrix([[1, 2], [2, 4]])
    assert all(v == 0 for v in (M @ K).flat)


def test_lattice_basis():
    B = exact.lattice_basis([[2, 4], [0, 0]])
    assert B.shape == (2, 1)
    assert abs(B[0, 0]) == 2 and B[1, 0] == 0
