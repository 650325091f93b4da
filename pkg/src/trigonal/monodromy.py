"""Degree-3 cover monodromy data on twelve marked points, up to conjugation.

A datum is a 12-tuple (t_0, ..., t_11) of transpositions in S_3 whose ordered
product t_11 * t_10 * ... * t_0 is the identity and which uses at least two
distinct transpositions.  Transpositions are coded

    0 = (12),  1 = (23),  2 = (13).

Free choice of t_1..t_11 forces t_0, giving 3^11 - 3 = 177144 tuples; the
simultaneous S_3-conjugation action relabels codes by any of the six
permutations of {0, 1, 2} and acts freely, so there are exactly
177144 / 6 = 29524 classes.  Each class is stored by its lexicographically
least relabeling and indexed in lexicographic order of that 12-character
code string (position 0 most significant).

The ten half-twist moves act at adjacent slots (i, i+1), i = 1..10:

    (u, v) -> (v, v*u*v),

trivial when u = v and of order 3 otherwise; they satisfy the braid
relations.

Collapsing the two branch points at slots (i, i+1) of a datum is classified
combinatorially:

    RM : t_i != t_{i+1}      (the local product is a 3-cycle: the cover
                              acquires a point of total ramification),
    H  : t_i = t_{i+1} and the remaining ten entries generate a group of
         order 2 (the degenerate cover disconnects),
    SG : t_i = t_{i+1} and the remaining entries generate S_3.
"""

from __future__ import annotations

import numpy as np

TUPLE_LEN = 12
N_RAW = 3 ** 11 - 3        # 177144
N_CLASSES = N_RAW // 6     # 29524

CONFLUENCE_CLASSES = ("H", "RM", "SG")

# S_3 as permutations of {0, 1, 2}; element index = lex rank of the tuple.
_S3 = [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)]
_S3_INDEX = {p: i for i, p in enumerate(_S3)}

# composition: MUL[a, b] = a after b
MUL = np.array([[_S3_INDEX[tuple(_S3[a][_S3[b][x]] for x in range(3))]
                 for b in range(6)] for a in range(6)], dtype=np.int8)
INV = np.array([_S3_INDEX[tuple(sorted(range(3), key=lambda x: _S3[a][x]))]
                for a in range(6)], dtype=np.int8)
IDENTITY = 0

# transposition codes 0=(12), 1=(23), 2=(13) as S_3 element indices
TRANSPOSITIONS = np.array([_S3_INDEX[(1, 0, 2)],
                           _S3_INDEX[(0, 2, 1)],
                           _S3_INDEX[(2, 1, 0)]], dtype=np.int8)
_CODE_OF_ELEM = np.full(6, -1, dtype=np.int8)
for _c, _e in enumerate(TRANSPOSITIONS):
    _CODE_OF_ELEM[_e] = _c

# CONJ[v, u] = code of t_v t_u t_v; for u != v this is the third code.
CONJ = np.array([[u if u == v else 3 - u - v for u in range(3)]
                 for v in range(3)], dtype=np.int8)

# The six relabelings of codes induced by simultaneous conjugation.
def _alphabet_perms() -> np.ndarray:
    perms = []
    for g in range(6):
        row = []
        for c in range(3):
            e = int(TRANSPOSITIONS[c])
            img = int(MUL[MUL[g, e], INV[g]])
            row.append(int(_CODE_OF_ELEM[img]))
        perms.append(row)
    out = np.array(sorted(set(map(tuple, perms)))).astype(np.int8)
    assert out.shape == (6, 3)
    return out


ALPHABET_PERMS = _alphabet_perms()

_W12 = (3 ** np.arange(TUPLE_LEN - 1, -1, -1, dtype=np.int64))  # MSB first


def codes_to_keys(codes: np.ndarray) -> np.ndarray:
    return np.asarray(codes, dtype=np.int64) @ _W12


def keys_to_codes(keys: np.ndarray) -> np.ndarray:
    keys = np.asarray(keys, dtype=np.int64)
    return np.stack([(keys // w) % 3 for w in _W12], axis=-1).astype(np.int8)


def canonical_keys(codes: np.ndarray) -> np.ndarray:
    """Least base-3 key over the six simultaneous relabelings of each row."""
    codes = np.atleast_2d(codes)
    best = None
    for perm in ALPHABET_PERMS:
        k = codes_to_keys(perm[codes])
        best = k if best is None else np.minimum(best, k)
    return best


def product_of_codes(codes: np.ndarray) -> np.ndarray:
    """S_3 element indices of t_11 * ... * t_0 for each row."""
    codes = np.atleast_2d(codes)
    acc = TRANSPOSITIONS[codes[:, 0]]
    for pos in range(1, TUPLE_LEN):
        acc = MUL[TRANSPOSITIONS[codes[:, pos]], acc]
    return acc


class ClassTable:
    """All 29524 classes, canonical codes, and the half-twist permutations."""

    def __init__(self):
        free = np.arange(3 ** 11, dtype=np.int64)
        cols = [((free // (3 ** (10 - k))) % 3).astype(np.int8) for k in range(11)]
        tail = np.stack(cols, axis=1)            # rows = (t_1, ..., t_11)
        nonconstant = ~np.all(tail == tail[:, :1], axis=1)
        tail = tail[nonconstant]
        self.raw_count = int(tail.shape[0])
        assert self.raw_count == N_RAW

        # t_0 = (t_11 ... t_1)^(-1), always a transposition here
        acc = TRANSPOSITIONS[tail[:, 0]]
        for k in range(1, 11):
            acc = MUL[TRANSPOSITIONS[tail[:, k]], acc]
        t0 = _CODE_OF_ELEM[INV[acc]]
        assert (t0 >= 0).all()

        codes = np.concatenate([t0[:, None], tail], axis=1)
        keys = canonical_keys(codes)
        uniq, counts = np.unique(keys, return_counts=True)
        assert uniq.size == N_CLASSES
        assert (counts == 6).all()               # the conjugation action is free

        self.keys = uniq
        self.codes = keys_to_codes(uniq)         # (29524, 12) canonical rows
        self.class_index = np.full(3 ** 12, -1, dtype=np.int64)
        self.class_index[uniq] = np.arange(N_CLASSES, dtype=np.int64)
        self._perms: dict[int, np.ndarray] = {}

        assert (product_of_codes(self.codes) == IDENTITY).all()

    # -- lookups ----------------------------------------------------------------

    def index_of_codes(self, codes) -> int:
        codes = np.asarray(codes, dtype=np.int8)
        idx = int(self.class_index[int(canonical_keys(codes)[0])])
        if idx < 0:
            raise ValueError("not a valid monodromy tuple")
        return idx

    def class_string(self, idx: int) -> str:
        return "".join(str(c) for c in self.codes[idx])

    def index_of_string(self, s: str) -> int:
        return self.index_of_codes(parse_tuple_string(s))

    # -- the half-twist action ----------------------------------------------------

    def hurwitz_perm(self, i: int) -> np.ndarray:
        """Permutation of class indices from the move at slots (i, i+1)."""
        if not 1 <= i <= 10:
            raise IndexError(f"generator index must be in 1..10, got {i!r}")
        if i not in self._perms:
            new = self.codes.copy()
            u = self.codes[:, i]
            v = self.codes[:, i + 1]
            new[:, i] = v
            new[:, i + 1] = CONJ[v, u]
            perm = self.class_index[canonical_keys(new)]
            assert (perm >= 0).all()
            self._perms[i] = perm
        return self._perms[i]

    def all_hurwitz_perms(self):
        return [self.hurwitz_perm(i) for i in range(1, 11)]

    def base_class(self) -> int:
        """The class of (t_0, t_1) = ((12), (12)), t_2..t_11 = (23)."""
        return self.index_of_codes([0, 0] + [1] * 10)


_TABLE: ClassTable | None = None


def get_table() -> ClassTable:
    global _TABLE
    if _TABLE is None:
        _TABLE = ClassTable()
    return _TABLE


# -- tuple-level utilities ------------------------------------------------------

def hurwitz_move_codes(codes, i: int) -> np.ndarray:
    """The move at (i, i+1) on explicit 12-tuples, 0 <= i <= 10."""
    codes = np.atleast_2d(np.asarray(codes, dtype=np.int8)).copy()
    u = codes[:, i].copy()
    v = codes[:, i + 1].copy()
    codes[:, i] = v
    codes[:, i + 1] = CONJ[v, u]
    return codes


def parse_tuple_string(s: str) -> np.ndarray:
    """Validate and decode a 12-character code string over {0, 1, 2}."""
    if len(s) != TUPLE_LEN or any(ch not in "012" for ch in s):
        raise ValueError("a monodromy tuple is 12 characters over {0,1,2}")
    codes = np.array([int(ch) for ch in s], dtype=np.int8)
    if (codes == codes[0]).all():
        raise ValueError("monodromy not surjective: a constant tuple "
                         "generates a group of order 2")
    if int(product_of_codes(codes)[0]) != IDENTITY:
        raise ValueError("the ordered product of the twelve transpositions "
                         "is not the identity")
    return codes


def classify_confluence_codes(codes, pos: int) -> str:
    """Collapse classification at slot pair (pos, pos+1 mod 12): H, RM or SG."""
    codes = np.asarray(codes, dtype=np.int8).reshape(TUPLE_LEN)
    if not 0 <= pos < TUPLE_LEN:
        raise IndexError(f"position must be in 0..11, got {pos!r}")
    u = int(codes[pos])
    v = int(codes[(pos + 1) % TUPLE_LEN])
    if u != v:
        return "RM"
    rest = np.delete(codes, [pos, (pos + 1) % TUPLE_LEN])
    return "H" if (rest == rest[0]).all() else "SG"


def classify_confluence(idx_or_string, pos: int, table: ClassTable | None = None) -> str:
    """Class-level confluence classification (on the canonical representative)."""
    if isinstance(idx_or_string, str):
        codes = parse_tuple_string(idx_or_string)
    else:
        table = table or get_table()
        codes = table.codes[int(idx_or_string)]
    return classify_confluence_codes(codes, pos)


def enumerate_classes() -> np.ndarray:
    """Canonical code rows of all 29524 classes, in index order."""
    return get_table().codes


def hurwitz_act(i: int, cls_idx: int) -> int:
    """Index of the class obtained by the move at (i, i+1), 1 <= i <= 10."""
    return int(get_table().hurwitz_perm(i)[int(cls_idx)])


def orbit_R(seed_idx: int):
    """BFS orbit (with Schreier tree) of a class under the ten moves."""
    from .schreier import orbit_bfs
    t = get_table()
    return orbit_bfs(N_CLASSES, t.all_hurwitz_perms(), [int(seed_idx)])


def classify_all(table: ClassTable, pos: int) -> np.ndarray:
    """Confluence classes of every class at one slot, coded 0=H, 1=RM, 2=SG."""
    codes = table.codes
    u = codes[:, pos]
    v = codes[:, (pos + 1) % TUPLE_LEN]
    rest = np.delete(codes, [pos, (pos + 1) % TUPLE_LEN], axis=1)
    same_rest = np.all(rest == rest[:, :1], axis=1)
    out = np.full(N_CLASSES, 2, dtype=np.int8)
    out[u != v] = 1
    out[(u == v) & same_rest] = 0
    return out
