"""The equivariant bijection between projective points and monodromy classes.

`forward` maps a point index of P^9(F_3) to a monodromy class index so that

    forward[sigma_i(p)] = B_i(forward[p])        for i = 1..10,

where sigma_i is the projective transvection permutation and B_i the
half-twist permutation.  The bijection is anchored at a base pair: the class
rho_0 = base_class() and a point ell_0 found by search.  Candidate base
points are pruned by stabilizer matching — every Schreier generator of the
stabilizer of rho_0 on the class side must fix ell_0 on the point side —
then each survivor is transported along the point-side Schreier tree and
checked on all 10 x 29524 generator-point pairs.  No equivariance edge is
sampled; every one is verified.

Cross-validation compares, for every class rho and every slot i = 1..10,
the combinatorial confluence label of rho at i with the line label of
[alpha_i] relative to the point forward^{-1}(rho).  Slots 0 and 11 carry no
generator and no pinned basis line, so they are classified combinatorially
but excluded from the comparison.  The raw agreement count is reported
together with the count after exchanging the RM and SG labels on one side,
which makes the label pairing between the two trichotomies explicit.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import monodromy as mo
from . import sympf3 as sp
from .schreier import (OrbitResult, inverse_permutation, orbit_bfs,
                       schreier_generator_words, word_permutation)

N = sp.N_POINTS
assert N == mo.N_CLASSES

DEFAULT_WORD_BUDGET = 64


@dataclass
class Correspondence:
    """A fully verified equivariant bijection (point index -> class index)."""
    forward: np.ndarray
    backward: np.ndarray
    base_point: int
    base_class: int
    candidates_pruned: int
    candidates_passing: int
    edges_verified: int
    words_used: int
    point_tree: OrbitResult = field(repr=False)

    def to_json(self) -> dict:
        t = sp.get_table()
        return {
            "forward": [int(x) for x in self.forward],
            "generators_checked": 10,
            "edges_verified": int(self.edges_verified),
            "base_pair": {
                "point_index": int(self.base_point),
                "point": [int(c) for c in t.rep(self.base_point)],
                "class_index": int(self.base_class),
                "class": mo.get_table().class_string(self.base_class),
            },
        }

    def summary(self) -> str:
        return (f"equivariant bijection verified: {self.edges_verified} edges "
                f"over 10 generators and {N} points; base pair "
                f"(point {self.base_point}, class {self.base_class}); "
                f"{self.candidates_passing} of {self.candidates_pruned} pruned "
                f"candidates passed full verification")


def base_class() -> int:
    return mo.get_table().base_class()


def stabilizer_words(seed_index: int, side: str = "monodromy",
                     budget: int = DEFAULT_WORD_BUDGET):
    """Schreier generators of the stabilizer of a seed, as words over the ten
    generators with letters (generator-index 1..10, exponent +-1)."""
    words, _gens = _stabilizer_words_internal(seed_index, side, budget)
    return [[(g + 1, e) for g, e in w] for w in words]


def _stabilizer_words_internal(seed_index: int, side: str, budget: int):
    if side == "monodromy":
        gens = mo.get_table().all_hurwitz_perms()
        n = mo.N_CLASSES
    elif side == "lattice":
        gens = sp.get_table().all_transvection_perms()
        n = sp.N_POINTS
    else:
        raise ValueError(f"side must be 'lattice' or 'monodromy', got {side!r}")
    res = orbit_bfs(n, gens, [int(seed_index)])
    return schreier_generator_words(res, gens, budget), gens


def _transport(ell0: int, rho0: int, s_gens, h_stack: np.ndarray):
    """forward with forward[ell0] = rho0, extended along the point BFS tree."""
    tree = orbit_bfs(N, s_gens, [ell0])
    if tree.size != N:
        raise RuntimeError("the transvections do not act transitively "
                           "on the projective points")
    forward = np.full(N, -1, dtype=np.int64)
    forward[ell0] = rho0
    depths = tree.depth[tree.order]          # non-decreasing along BFS order
    for d in range(1, int(depths[-1]) + 1):
        pts = tree.order[np.searchsorted(depths, d):
                         np.searchsorted(depths, d + 1)]
        forward[pts] = h_stack[tree.parent_gen[pts], forward[tree.parent[pts]]]
    return forward, tree


def _verify(forward: np.ndarray, s_gens, h_gens):
    """(ok, first_failure); checks all 10 x 29524 edges plus bijectivity."""
    for gi in range(10):
        lhs = forward[s_gens[gi]]
        rhs = h_gens[gi][forward]
        bad = np.flatnonzero(lhs != rhs)
        if bad.size:
            p = int(bad[0])
            return False, {"generator": gi + 1, "point": p,
                           "forward_of_image": int(lhs[p]),
                           "image_of_forward": int(rhs[p])}
    if np.unique(forward).size != N:
        return False, {"generator": None, "point": None,
                       "reason": "forward is not injective"}
    return True, None


def build_bijection(budget: int = DEFAULT_WORD_BUDGET) -> Correspondence:
    """Search, transport and exhaustively verify the equivariant bijection."""
    spt = sp.get_table()
    mot = mo.get_table()
    s_gens = spt.all_transvection_perms()
    h_gens = mot.all_hurwitz_perms()
    s_inv = [inverse_permutation(g) for g in s_gens]
    h_stack = np.stack(h_gens)

    rho0 = mot.base_class()
    class_orbit = orbit_bfs(mo.N_CLASSES, h_gens, [rho0])
    if class_orbit.size != mo.N_CLASSES:
        raise RuntimeError("the half-twist moves do not act transitively "
                           "on the classes")
    words = schreier_generator_words(class_orbit, h_gens, budget)

    # a point can be the image of rho_0 only if every word fixing rho_0
    # also fixes it
    identity = np.arange(N, dtype=np.int64)
    mask = np.ones(N, dtype=bool)
    for w in words:
        mask &= word_permutation(w, s_gens, s_inv, N) == identity
    candidates = np.flatnonzero(mask)

    winner = None
    passing = 0
    first_failure = None
    for ell0 in candidates:
        forward, tree = _transport(int(ell0), rho0, s_gens, h_stack)
        ok, failure = _verify(forward, s_gens, h_gens)
        if ok:
            passing += 1
            if winner is None:
                winner = (int(ell0), forward, tree)
        elif first_failure is None:
            first_failure = {"candidate_point": int(ell0), **failure}

    if winner is None:
        raise RuntimeError(
            "no equivariant bijection found: "
            f"{candidates.size} pruned candidates all failed full "
            f"verification; first failing edge: {first_failure}")

    ell0, forward, tree = winner
    return Correspondence(
        forward=forward,
        backward=inverse_permutation(forward),
        base_point=ell0,
        base_class=int(rho0),
        candidates_pruned=int(candidates.size),
        candidates_passing=passing,
        edges_verified=10 * N,
        words_used=len(words),
        point_tree=tree,
    )


_LABEL_SWAP = np.array([0, 2, 1], dtype=np.int8)  # exchange RM and SG codes


def cross_validate_classification(corr: Correspondence) -> dict:
    """Compare the confluence labels with the line labels over slots 1..10.

    For slot i the line side classifies [alpha_i] relative to the point
    forward^{-1}(rho).  Returns per-slot tallies, total raw agreements,
    total agreements after exchanging RM and SG on the line side, and the
    first raw disagreement (if any) as a concrete counterexample.
    """
    spt = sp.get_table()
    mot = mo.get_table()
    per_position = []
    agreements = 0
    agreements_swapped = 0
    first_disagreement = None

    for i in range(1, 11):
        comb = mo.classify_all(mot, i)
        line = sp.line_class_vector(spt.basis_point(i), spt)[corr.backward]
        agree = comb == line
        agree_swapped = comb == _LABEL_SWAP[line]
        if first_disagreement is None and not agree.all():
            c = int(np.flatnonzero(~agree)[0])
            first_disagreement = {
                "position": i,
                "class_index": c,
                "class": mot.class_string(c),
                "confluence": mo.CONFLUENCE_CLASSES[int(comb[c])],
                "line_class": sp.LINE_CLASSES[int(line[c])],
            }
        comb_counts = np.bincount(comb, minlength=3)
        line_counts = np.bincount(line, minlength=3)
        per_position.append({
            "position": i,
            "agreements": int(agree.sum()),
            "agreements_rm_sg_swapped": int(agree_swapped.sum()),
            "confluence_counts": {"H": int(comb_counts[0]),
                                  "RM": int(comb_counts[1]),
                                  "SG": int(comb_counts[2])},
            "line_counts": {"H": int(line_counts[0]),
                            "RM": int(line_counts[1]),
                            "SG": int(line_counts[2])},
        })
        agreements += int(agree.sum())
        agreements_swapped += int(agree_swapped.sum())

    report = {
        "total_checks": 10 * N,
        "agreements": agreements,
        "agreements_rm_sg_swapped": agreements_swapped,
        "per_position": per_position,
        "first_disagreement": first_disagreement,
        "excluded_positions": [0, 11],
        "excluded_reason": "slots 0 and 11 carry no generator and no pinned "
                           "basis line; they are classified combinatorially "
                           "but not compared",
    }
    if agreements != report["total_checks"] \
            and agreements_swapped == report["total_checks"]:
        report["note"] = (
            "the two trichotomies agree exactly up to exchanging the RM and "
            "SG labels on the line side: per slot, the 19683 classes with "
            "distinct adjacent letters correspond to the 19683 lines not "
            "perpendicular to the basis line, and the 9840 non-degenerate "
            "equal-letter classes to the 9840 other perpendicular lines")
    return report
