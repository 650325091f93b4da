"""Mod-3 symplectic space: reduction, transvections, projective tables."""

import random

import numpy as np
import pytest

from trigonal import lattice as lat
from trigonal import sympf3 as sp
from trigonal.eisenstein import THETA, EisensteinInt


def f3_rank(m):
    """Row reduction over F_3, written independently of the module under test."""
    a = np.array(m, dtype=np.int64) % 3
    rank = 0
    for col in range(a.shape[1]):
        piv = None
        for r in range(rank, a.shape[0]):
            if a[r, col] % 3:
                piv = r
                break
        if piv is None:
            continue
        a[[rank, piv]] = a[[piv, rank]]
        a[rank] = (a[rank] * pow(int(a[rank, col]), -1, 3)) % 3
        for r in range(a.shape[0]):
            if r != rank and a[r, col]:
                a[r] = (a[r] - a[r, col] * a[rank]) % 3
        rank += 1
    return rank


def test_reduction_of_basis_and_theta_multiples():
    a1 = lat.basis_vector(1)
    assert (sp.reduce_vector(a1) == np.eye(10, dtype=np.int8)[0]).all()
    assert (sp.reduce_vector(lat.vec_scale(2, a1))
            == 2 * np.eye(10, dtype=np.int8)[0]).all()
    tau_a1 = lat.vec_scale(EisensteinInt(0, 1), a1)
    assert (sp.reduce_vector(tau_a1) == (2 * np.eye(10, dtype=np.int8)[0])).all()
    theta_x = lat.vec_scale(THETA, lat.vec_add(a1, lat.basis_vector(5)))
    assert not sp.reduce_vector(theta_x).any()


def test_symp_gram_values():
    assert sp.SYMP_GRAM[0, 1] == 1
    assert sp.SYMP_GRAM[1, 0] == 2
    assert sp.SYMP_GRAM[0, 2] == 0
    assert (np.diag(sp.SYMP_GRAM) == 0).all()
    assert ((sp.SYMP_GRAM + sp.SYMP_GRAM.T) % 3 == 0).all()


def test_symp_values_and_nondegeneracy():
    e = np.identity(10, dtype=np.int8)
    assert sp.symp(e[0], e[1]) == 1
    assert sp.symp(e[1], e[0]) == 2
    assert sp.symp(e[0], e[2]) == 0
    assert f3_rank(sp.SYMP_GRAM) == 10


def test_symp_is_reduction_of_skew():
    rng = random.Random(11)
    for _ in range(30):
        x = lat.as_vector([EisensteinInt(rng.randint(-4, 4), rng.randint(-4, 4))
                           for _ in range(10)])
        y = lat.as_vector([EisensteinInt(rng.randint(-4, 4), rng.randint(-4, 4))
                           for _ in range(10)])
        from trigonal.eisenstein import reduce_mod_theta
        assert (sp.symp(sp.reduce_vector(x), sp.reduce_vector(y))
                == reduce_mod_theta(lat.skew(x, y)))


def test_transvection_values():
    t1 = sp.transvection(1)
    e = np.identity(10, dtype=np.int8)
    assert ((t1 @ e[1]) % 3 == (e[1] + e[0]) % 3).all()   # alpha_2 -> alpha_2 + alpha_1
    assert ((t1 @ e[0]) % 3 == e[0]).all()                 # fixes its own direction
    with pytest.raises(IndexError):
        sp.transvection(0)


def test_transvections_have_order_three_and_preserve_form():
    j = sp.SYMP_GRAM.astype(np.int64)
    for i in range(1, 11):
        m = sp.transvection(i).astype(np.int64)
        assert not (m % 3 == np.identity(10)).all()
        assert ((np.linalg.matrix_power(m, 3)) % 3 == np.identity(10)).all()
        assert ((m.T @ j @ m) % 3 == j % 3).all()


def test_reduction_intertwines_triflection_and_transvection():
    rng = random.Random(12)
    for i in range(1, 11):
        tri = lat.triflection(i)
        tv = sp.transvection(i).astype(np.int64)
        assert (sp.reduce_matrix(tri) == tv % 3).all()
        for _ in range(4):
            x = lat.as_vector([EisensteinInt(rng.randint(-3, 3), rng.randint(-3, 3))
                               for _ in range(10)])
            lhs = sp.reduce_vector(lat.apply(tri, x))
            rhs = (tv @ sp.reduce_vector(x).astype(np.int64)) % 3
            assert (lhs == rhs).all()


def test_projective_enumeration():
    t = sp.get_table()
    assert t.reps.shape == (29524, 10)
    # first point is the line of (1, 0, ..., 0)
    assert (t.reps[0] == np.eye(10, dtype=np.int8)[0]).all()
    # canonical: first nonzero coordinate is 1
    lead = t.reps[np.arange(29524), np.argmax(t.reps != 0, axis=1)]
    assert (lead == 1).all()
    # no duplicates and scaling by 2 gives no new canonical rows
    assert np.unique(sp.keys_of(t.reps)).size == 29524
    assert (sp.keys_of(sp.canonicalize((t.reps * 2) % 3)) == sp.keys_of(t.reps)).all()


def test_point_count_formula():
    assert sp.N_POINTS == (3 ** 10 - 1) // 2 == 29524


def test_index_round_trip_and_basis_points():
    t = sp.get_table()
    rng = random.Random(13)
    for _ in range(50):
        idx = rng.randrange(29524)
        assert t.index_of_vector(t.rep(idx)) == idx
        assert t.index_of_vector((t.rep(idx).astype(np.int64) * 2) % 3) == idx
    assert t.basis_point(1) == 0
    with pytest.raises(ValueError):
        t.index_of_vector(np.zeros(10))


def test_transvection_perms_are_permutations_of_order_three():
    t = sp.get_table()
    n = sp.N_POINTS
    for i in range(1, 11):
        p = t.transvection_perm(i)
        assert (np.sort(p) == np.arange(n)).all()
        assert (p[p[p]] == np.arange(n)).all()
        assert (p != np.arange(n)).any()


def test_braid_relations_for_point_permutations():
    t = sp.get_table()
    for i in range(1, 10):
        p, q = t.transvection_perm(i), t.transvection_perm(i + 1)
        assert (p[q[p]] == q[p[q]]).all()
    for i in range(1, 11):
        for j in range(i + 2, 11):
            p, q = t.transvection_perm(i), t.transvection_perm(j)
            assert (p[q] == q[p]).all()


def test_orbit_transitivity_on_points_and_vectors():
    t = sp.get_table()
    res = t.orbit_of_points([t.basis_point(1)])
    assert res.size == 29524
    res5 = t.orbit_of_points([t.basis_point(1)], gen_indices=[5])
    assert res5.size == 1  # transvection 5 fixes [alpha_1]
    vres = t.orbit_of_nonzero_vectors(int(sp.keys_of(np.eye(10, dtype=np.int8)[0])))
    assert vres.size == 3 ** 10 - 1


def test_classify_line_examples():
    t = sp.get_table()
    a = {i: t.basis_point(i) for i in (1, 2, 3)}
    assert sp.classify_line(a[1], a[1], t) == "H"
    assert sp.classify_line(a[3], a[1], t) == "RM"
    assert sp.classify_line(a[2], a[1], t) == "SG"


def test_stabilizer_orbit_sizes():
    t = sp.get_table()
    sizes = sp.stabilizer_orbit_sizes(t.basis_point(1), t)
    assert sizes == {"H": 1, "RM": (3 ** 9 - 1) // 2 - 1, "SG": 3 ** 9}
    assert sizes == {"H": 1, "RM": 9840, "SG": 19683}
    assert sum(sizes.values()) == 29524
    # the same counts hold for any line (the form is homogeneous)
    sizes2 = sp.stabilizer_orbit_sizes(12345, t)
    assert sizes2 == sizes
