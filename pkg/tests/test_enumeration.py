import random
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import posets
from ordalg import all_posets, are_isomorphic, canonical_key, random_poset
from ordalg.poset import Poset, bits

KNOWN_COUNTS = {1: 1, 2: 2, 3: 3 + 2, 4: 16, 5: 63, 6: 318}


def test_counts_small():
    for n in range(1, 7):
        assert len(all_posets(n)) == KNOWN_COUNTS[n]


@pytest.mark.slow
def test_count_n7():
    assert len(all_posets(7)) == 2045


def _all_labelled_posets_bruteforce(n):
    """Oracle: filter every reflexive relation on n points for PO axioms."""
    out = []
    cells = [(i, j) for i in range(n) for j in range(n) if i != j]
    for mask in range(1 << len(cells)):
        down = [1 << i for i in range(n)]
        for b, (i, j) in enumerate(cells):
            if (mask >> b) & 1:
                down[j] |= 1 << i  # i <= j
        ok = True
        for x in range(n):
            if down[x] & ~((1 << n) - 1):
                ok = False
                break
            for y in bits(down[x]):
                if y != x and (down[y] >> x) & 1:
                    ok = False
                    break
                if down[y] & ~down[x]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(Poset([chr(97 + i) for i in range(n)], down))
    return out


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_enumeration_matches_bruteforce(n):
    keys = {canonical_key(P) for P in _all_labelled_posets_bruteforce(n)}
    assert len(keys) == len(all_posets(n))
    assert keys == {canonical_key(P) for P in all_posets(n)}


@given(posets(max_n=5), st.randoms(use_true_random=False))
@settings(max_examples=60)
def test_canonical_key_invariant_under_relabelling(P, rng):
    perm = list(range(P.n))
    rng.shuffle(perm)
    down = [0] * P.n
    for x in range(P.n):
        for y in bits(P.down[x]):
            down[perm[x]] |= 1 << perm[y]
    Q = Poset(P.labels, down)
    assert canonical_key(P) == canonical_key(Q)
    assert are_isomorphic(P, Q)


def test_distinct_posets_distinct_keys():
    chain = all_posets(2)
    assert canonical_key(chain[0]) != canonical_key(chain[1])


def test_random_poset_is_poset():
    rng = random.Random(7)
    for _ in range(50):
        P = random_poset(rng, rng.randint(1, 7))
        assert isinstance(P, Poset)  # constructor validated the axioms
