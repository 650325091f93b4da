"""The 10-dimensional symplectic F_3-space obtained from the lattice mod theta.

Reduction mod theta sends the lattice onto F_3^10; the rescaled form skew
descends to a nondegenerate alternating form with symp(alpha_i, alpha_{i+1}) = 1
on the images alpha_i of the basis vectors.  Triflections descend to the
symplectic transvections x -> x - symp(x, alpha_i) * alpha_i.

Projective points are the (3^10 - 1)/2 = 29524 lines of F_3^10.  A line is
represented by its canonical vector (first nonzero coordinate equal to 1) and
indexed by the rank of that vector in ascending base-3 key order, where
coordinate 0 is the least significant digit; the first point is the line of
(1, 0, ..., 0).

Lines are classified relative to a fixed line ell as
    H  : the line is ell itself,
    RM : orthogonal to ell but different from it,
    SG : not orthogonal to ell,
giving counts {H: 1, RM: (3^9-1)/2 - 1 = 9840, SG: 3^9 = 19683}.
"""

from __future__ import annotations

import numpy as np

from . import lattice
from .eisenstein import reduce_mod_theta
from .schreier import orbit_bfs

DIM = 10
N_VECTORS = 3 ** DIM            # 59049, including zero
N_POINTS = (3 ** DIM - 1) // 2  # 29524

POW3 = (3 ** np.arange(DIM, dtype=np.int64))  # coordinate 0 least significant

LINE_CLASSES = ("H", "RM", "SG")


def _symp_gram() -> np.ndarray:
    j = np.zeros((DIM, DIM), dtype=np.int8)
    for i in range(DIM - 1):
        j[i, i + 1] = 1
        j[i + 1, i] = 2  # -1 mod 3
    return j


SYMP_GRAM = _symp_gram()


def reduce_vector(x) -> np.ndarray:
    """Reduce a lattice vector mod theta to a vector over F_3."""
    return np.array([reduce_mod_theta(c) for c in x], dtype=np.int8)


def reduce_matrix(m) -> np.ndarray:
    return np.array([[reduce_mod_theta(c) for c in row] for row in m],
                    dtype=np.int8)


def symp(x, y) -> int:
    """The alternating form, from the reduction of skew."""
    return int(np.asarray(x, dtype=np.int64) @ SYMP_GRAM.astype(np.int64)
               @ np.asarray(y, dtype=np.int64)) % 3


def transvection(i: int) -> np.ndarray:
    """Matrix of x -> x - symp(x, alpha_i) * alpha_i (column convention)."""
    lattice._check_index(i)
    g = i - 1
    m = np.identity(DIM, dtype=np.int8)
    m[g, :] = (m[g, :] - SYMP_GRAM[:, g]) % 3
    return m


def canonicalize(vectors: np.ndarray) -> np.ndarray:
    """Scale each nonzero row so its first nonzero coordinate is 1."""
    v = np.atleast_2d(np.asarray(vectors, dtype=np.int8))
    lead_pos = np.argmax(v != 0, axis=1)
    lead = v[np.arange(v.shape[0]), lead_pos]
    out = v.copy()
    doubled = lead == 2
    out[doubled] = (out[doubled] * 2) % 3
    return out


def keys_of(vectors: np.ndarray) -> np.ndarray:
    return np.asarray(vectors, dtype=np.int64) @ POW3


class ProjectiveTable:
    """Canonical line representatives, index lookups and generator actions."""

    def __init__(self):
        keys = np.arange(N_VECTORS, dtype=np.int64)
        digits = np.stack([(keys // (3 ** i)) % 3 for i in range(DIM)], axis=1)
        self.vectors = digits.astype(np.int8)      # all of F_3^10, row = key

        canon = canonicalize(self.vectors[1:])
        canon_keys = np.unique(keys_of(canon))
        assert canon_keys.size == N_POINTS
        self.reps = self.vectors[canon_keys]        # (29524, 10) canonical rows
        self.point_index = np.full(N_VECTORS, -1, dtype=np.int64)
        self.point_index[canon_keys] = np.arange(N_POINTS, dtype=np.int64)

        self._perms: dict[int, np.ndarray] = {}
        self._vec_perms: dict[int, np.ndarray] = {}

    # -- lookups -------------------------------------------------------------

    def index_of_vector(self, v) -> int:
        """Projective point index of a nonzero vector."""
        v = np.asarray(v, dtype=np.int8) % 3
        if not v.any():
            raise ValueError("the zero vector spans no line")
        idx = int(self.point_index[int(keys_of(canonicalize(v))[0])])
        assert idx >= 0
        return idx

    def rep(self, idx: int) -> np.ndarray:
        return self.reps[idx]

    def basis_point(self, i: int) -> int:
        """The point [alpha_i], 1 <= i <= 10."""
        return self.index_of_vector(np.identity(DIM, dtype=np.int8)[i - 1])

    # -- actions -------------------------------------------------------------

    def transvection_perm(self, i: int) -> np.ndarray:
        """The permutation of point indices induced by transvection i."""
        if i not in self._perms:
            m = transvection(i)
            imgs = canonicalize((self.reps @ m.T.astype(np.int64)) % 3)
            perm = self.point_index[keys_of(imgs)]
            assert (perm >= 0).all()
            self._perms[i] = perm
        return self._perms[i]

    def vector_perm(self, i: int) -> np.ndarray:
        """The permutation of all 3^10 vector keys (0 is fixed)."""
        if i not in self._vec_perms:
            m = transvection(i)
            imgs = (self.vectors @ m.T.astype(np.int64)) % 3
            self._vec_perms[i] = keys_of(imgs)
        return self._vec_perms[i]

    def all_transvection_perms(self):
        return [self.transvection_perm(i) for i in range(1, DIM + 1)]

    def orbit_of_points(self, seeds, gen_indices=None):
        gens = [self.transvection_perm(i)
                for i in (gen_indices or range(1, DIM + 1))]
        return orbit_bfs(N_POINTS, gens, seeds)

    def orbit_of_nonzero_vectors(self, seed_key: int):
        gens = [self.vector_perm(i) for i in range(1, DIM + 1)]
        return orbit_bfs(N_VECTORS, gens, [seed_key])


_TABLE: ProjectiveTable | None = None


def get_table() -> ProjectiveTable:
    global _TABLE
    if _TABLE is None:
        _TABLE = ProjectiveTable()
    return _TABLE


def enumerate_proj() -> np.ndarray:
    """All canonical line representatives in index order."""
    return get_table().reps


def orbit(seeds, gen_indices=None):
    """BFS orbit (with Schreier tree) of point indices under transvections."""
    return get_table().orbit_of_points(seeds, gen_indices)


# -- classification ------------------------------------------------------------

def classify_line(m_idx: int, ell_idx: int, table: ProjectiveTable | None = None) -> str:
    """Class of the line m relative to the fixed line ell: H, RM or SG."""
    table = table or get_table()
    if m_idx == ell_idx:
        return "H"
    if symp(table.rep(m_idx), table.rep(ell_idx)) == 0:
        return "RM"
    return "SG"


def line_class_vector(ell_idx: int, table: ProjectiveTable | None = None) -> np.ndarray:
    """Classes of every point relative to ell, coded 0=H, 1=RM, 2=SG."""
    table = table or get_table()
    s = (table.reps @ (SYMP_GRAM.astype(np.int64) @ table.rep(ell_idx).astype(np.int64))) % 3
    out = np.where(s == 0, 1, 2).astype(np.int8)
    out[ell_idx] = 0
    return out


def stabilizer_orbit_sizes(ell_idx: int, table: ProjectiveTable | None = None) -> dict:
    """Counts of the three classes relative to ell; sums to 29524."""
    codes = line_class_vector(ell_idx, table)
    counts = np.bincount(codes, minlength=3)
    return {"H": int(counts[0]), "RM": int(counts[1]), "SG": int(counts[2])}
