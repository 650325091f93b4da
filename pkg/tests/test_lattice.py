"""Lattice, triflections, realification and norm -6 certificates.

Expected values are frozen from independent hand computation with the
defining relations tau^2 = tau - 1, theta = -1 + 2*tau:
    tau*theta = tau - 2, 1 + tau*theta = tau^2, tau^2*theta = -tau - 1.
"""

import random

import numpy as np
import pytest

from trigonal.eisenstein import ZERO, ONE, TAU, TAU2, THETA, EisensteinInt, divides
from trigonal import lattice as lat


A = [None] + [lat.basis_vector(i) for i in range(1, 11)]  # 1-based


def rand_vector(rng, bound=4):
    return lat.as_vector([EisensteinInt(rng.randint(-bound, bound),
                                        rng.randint(-bound, bound))
                          for _ in range(10)])


def rand_scalar(rng, bound=4):
    return EisensteinInt(rng.randint(-bound, bound), rng.randint(-bound, bound))


# -- Gram and form ------------------------------------------------------------

def test_gram_chain_values():
    assert lat.GRAM[0][0] == EisensteinInt(-3)
    assert lat.GRAM[0][1] == THETA
    assert lat.GRAM[1][0] == -THETA
    assert lat.GRAM[0][2] == ZERO
    for i in range(10):
        for j in range(10):
            assert lat.GRAM[j][i] == lat.GRAM[i][j].conj()


def test_herm_on_basis_matches_gram():
    for i in range(1, 11):
        for j in range(1, 11):
            assert lat.herm(A[i], A[j]) == lat.GRAM[i - 1][j - 1]


def test_herm_of_minus6_vector():
    eps = lat.vec_add(A[1], A[2])
    assert lat.herm(eps, eps) == EisensteinInt(-6)


def test_herm_is_sesquilinear_and_theta_valued():
    rng = random.Random(1)
    for _ in range(40):
        x, y = rand_vector(rng), rand_vector(rng)
        lam = rand_scalar(rng)
        assert lat.herm(lat.vec_scale(lam, x), y) == lam * lat.herm(x, y)
        assert lat.herm(x, lat.vec_scale(lam, y)) == lam.conj() * lat.herm(x, y)
        assert lat.herm(y, x) == lat.herm(x, y).conj()
        assert divides(THETA, lat.herm(x, y))
        d = lat.herm(x, x)
        assert d.b == 0 and d.a % 3 == 0  # diagonal values are integers in 3Z


def test_skew_values():
    assert lat.skew(A[1], A[2]) == ONE
    assert lat.skew(A[2], A[1]) == -ONE
    assert lat.skew(A[1], A[1]) == THETA
    assert lat.skew(A[1], A[3]) == ZERO


def test_skew_twisted_antisymmetry():
    rng = random.Random(2)
    for _ in range(40):
        x, y = rand_vector(rng), rand_vector(rng)
        assert lat.skew(y, x) == -(lat.skew(x, y).conj())


# -- triflections ---------------------------------------------------------------

def test_triflection_on_its_own_mirror_vector():
    s1 = lat.triflection(1)
    assert lat.apply(s1, A[1]) == lat.vec_scale(TAU2, A[1])


def test_triflection_on_neighbour_and_far_vector():
    s1 = lat.triflection(1)
    assert lat.apply(s1, A[2]) == lat.vec_sub(A[2], lat.vec_scale(TAU, A[1]))
    assert lat.apply(s1, A[3]) == A[3]
    assert lat.apply(lat.triflection(5), A[1]) == A[1]


def test_triflection_matches_defining_formula():
    rng = random.Random(3)
    for i in range(1, 11):
        s = lat.triflection(i)
        for _ in range(6):
            x = rand_vector(rng)
            expected = lat.vec_add(
                x, lat.vec_scale(TAU * lat.skew(x, A[i]), A[i]))
            assert lat.apply(s, x) == expected


def test_triflection_order_three():
    ident = lat.identity_matrix()
    for i in range(1, 11):
        s = lat.triflection(i)
        assert s != ident
        s2 = lat.compose(s, s)
        assert s2 != ident
        assert lat.compose(s, s2) == ident
        assert s2 == lat.triflection_inverse(i)


def test_triflections_preserve_the_form():
    for i in range(1, 11):
        assert lat.preserves_form(lat.triflection(i))


def test_braid_relations():
    for i in range(1, 10):
        s, t = lat.triflection(i), lat.triflection(i + 1)
        assert lat.compose(s, lat.compose(t, s)) == lat.compose(t, lat.compose(s, t))
    for i in range(1, 11):
        for j in range(i + 2, 11):
            s, t = lat.triflection(i), lat.triflection(j)
            assert lat.compose(s, t) == lat.compose(t, s)


def test_generator_index_range():
    for bad in (0, 11, -1):
        with pytest.raises(IndexError):
            lat.triflection(bad)
    with pytest.raises(IndexError):
        lat.basis_vector(11)


def test_word_matrix_and_packed_moves_agree():
    rng = random.Random(4)
    for _ in range(10):
        word = [(rng.randint(1, 10), rng.choice((1, -1))) for _ in range(6)]
        m = lat.word_matrix(word)
        assert lat.preserves_form(m)
        x = rand_vector(rng, bound=2)
        packed = lat._apply_word_packed(lat._pack(x), [(i - 1, e) for i, e in word])
        assert lat._unpack(packed) == lat.apply(m, x)


# -- realification -----------------------------------------------------------------

def test_realified_gram_entries():
    b = lat.realified_gram()
    assert b[0][0] == 2          # b(a_1, a_1)
    assert b[1][1] == 2          # b(tau*a_1, tau*a_1)
    assert b[0][1] == 1          # b(a_1, tau*a_1)
    assert b[0][2] == 0          # b(a_1, a_2)
    assert b[0][3] == -1         # b(a_1, tau*a_2)
    assert b[1][2] == 1          # b(tau*a_1, a_2)
    assert b[1][3] == 0          # b(tau*a_1, tau*a_2)
    arr = np.array(b)
    assert arr.shape == (20, 20)
    assert (arr == arr.T).all()


def test_realify_certificate():
    cert = lat.realify_and_certify()
    assert cert["is_even"] is True
    assert cert["abs_det"] == 1
    assert cert["signature"] == (18, 2)


def test_realify_certificate_against_float_oracle():
    eig = np.linalg.eigvalsh(np.array(lat.realified_gram(), dtype=float))
    assert np.all(np.abs(eig) > 1e-9)
    assert (int((eig > 0).sum()), int((eig < 0).sum())) == (18, 2)


def test_realified_certificate_is_basis_change_invariant():
    rng = random.Random(5)
    word = [(rng.randint(1, 10), rng.choice((1, -1))) for _ in range(5)]
    t = np.array(lat.realify_matrix(lat.word_matrix(word)), dtype=object)
    assert abs(round(float(np.linalg.det(t.astype(float))))) == 1
    b = np.array(lat.realified_gram(), dtype=object)
    b2 = t.T @ b @ t
    assert (b2 == b).all()  # triflections are isometries, so the Gram is literally fixed
    # and an arbitrary unimodular change of basis preserves the certificate
    u = np.identity(20, dtype=object)
    u[0, 7] = 3
    u[4, 2] = -2
    b3 = u.T @ b @ u
    assert lat._det_exact(b3.tolist()) in (1, -1)
    assert lat._signature_exact(b3.tolist()) == (18, 2)
    assert all(b3[i][i] % 2 == 0 for i in range(20))


# -- norm -6 vectors ------------------------------------------------------------

def test_decompose_identity_instance():
    eps = lat.vec_add(A[1], A[2])
    pair = lat.decompose_minus6(eps)
    assert pair == (A[1], A[2])


def test_decompose_rejects_wrong_norm():
    with pytest.raises(ValueError):
        lat.decompose_minus6(lat.zero_vector())
    with pytest.raises(ValueError):
        lat.decompose_minus6(A[1])


def test_decompose_transported_instances():
    rng = random.Random(6)
    eps0 = lat.vec_add(A[1], A[2])
    for _ in range(5):
        word = [(rng.randint(1, 10), rng.choice((1, -1)))
                for _ in range(rng.randint(0, 6))]
        eps = lat.apply(lat.word_matrix(word), eps0)
        pair = lat.decompose_minus6(eps)
        assert pair is not None
        x, y = pair
        assert lat.vec_add(x, y) == eps
        assert lat.herm(x, x) == EisensteinInt(-3)
        assert lat.herm(y, y) == EisensteinInt(-3)
        assert lat.herm(x, y) == THETA


def test_minus6_witness_identity_instance():
    eps = lat.vec_add(A[1], A[2])
    w = lat.minus6_witness(eps)
    assert w is not None
    assert w.index == 3 and w.vector == A[3]
    assert w.value == THETA
    assert not divides(EisensteinInt(3), w.value)
    assert w.hexaflection_nonintegral


def test_minus6_witness_shifted_instance():
    eps = lat.vec_add(A[2], A[3])
    w = lat.minus6_witness(eps)
    assert w.index == 1
    assert w.value == -THETA
    assert w.hexaflection_nonintegral


def test_minus6_witness_requires_norm_minus6():
    with pytest.raises(ValueError):
        lat.minus6_witness(A[1])


# -- serialization ----------------------------------------------------------------

def test_vector_round_trip():
    rng = random.Random(7)
    x = rand_vector(rng, bound=50)
    assert lat.vector_from_json(lat.vector_to_json(x)) == x


def test_matrix_round_trip():
    m = lat.triflection(4)
    data = lat.matrix_to_json(m)
    assert lat.matrix_from_json(data) == m
    assert data[3][3] == [-1, 1]  # tau^2 at the mirror slot


def test_gram_json_shape():
    data = lat.matrix_to_json(lat.GRAM)
    assert data[0][0] == [-3, 0]
    assert data[0][1] == [-1, 2]
    assert data[1][0] == [1, -2]
