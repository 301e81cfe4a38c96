"""Counterexample / example search over small posets.

Predicates are conjunctions of possibly negated classification atoms
(``spc1 and not sspc``).  Exhaustive mode walks the nonisomorphic posets in
a size range (guarded at n <= 7, where there are 2045 of them); random mode
samples transitive closures of seeded random DAGs.  Every hit is re-validated
through a serialize → parse → re-classify round trip before it is yielded, so
the search fast path cannot emit a false positive.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterator

from . import pc
from .dsl import parse, serialize_poset
from .enumeration import all_posets, random_poset
from .errors import OrdalgError
from .poset import Poset, directedness, extremes, is_distributive, is_lattice

EXHAUSTIVE_GUARD = 7

_ATOMS: dict[str, Callable[[Poset], bool]] = {
    "pseudocomplemented": lambda P: pc.classify(P, "pseudocomplemented").holds,
    "stone": lambda P: pc.classify(P, "stone").holds,
    "relatively_pc": lambda P: pc.classify(P, "relatively_pc").holds,
    "sectionally_pc": lambda P: pc.classify(P, "sectionally_pc").holds,
    "sectionally_pc_with_1": lambda P: pc.classify(P, "sectionally_pc_with_1").holds,
    "strongly_sectionally_pc": lambda P: pc.classify(P, "strongly_sectionally_pc").holds,
    "distributive": lambda P: is_distributive(P).holds,
    "lattice": is_lattice,
    "bounded": lambda P: None not in extremes(P),
    "bottom": lambda P: extremes(P)[0] is not None,
    "top": lambda P: extremes(P)[1] is not None,
    "directed": lambda P: directedness(P).kind == "both",
}

_ATOM_ALIASES = {
    "pc": "pseudocomplemented",
    "rpc": "relatively_pc",
    "spc": "sectionally_pc",
    "spc1": "sectionally_pc_with_1",
    "sspc": "strongly_sectionally_pc",
}

Predicate = tuple[tuple[bool, str], ...]  # conjunction of (negated, atom)


def parse_predicate(text: str) -> Predicate:
    """Parse ``atom [and [not] atom]*`` into a conjunction."""
    tokens = text.replace("(", " ").replace(")", " ").split()
    if not tokens:
        raise OrdalgError("empty predicate")
    conjuncts: list[tuple[bool, str]] = []
    i = 0
    expect_atom = True
    negated = False
    while i < len(tokens):
        tok = tokens[i].lower()
        if tok == "and":
            if expect_atom:
                raise OrdalgError("misplaced 'and' in predicate")
            expect_atom = True
            negated = False
        elif tok == "not":
            if not expect_atom:
                raise OrdalgError("misplaced 'not' in predicate")
            negated = not negated
        else:
            if not expect_atom:
                raise OrdalgError(f"expected 'and' before {tok!r}")
            atom = _ATOM_ALIASES.get(tok, tok)
            if atom not in _ATOMS:
                raise OrdalgError(
                    f"unknown predicate atom {tok!r}; known: "
                    + ", ".join(sorted(set(_ATOMS) | set(_ATOM_ALIASES)))
                )
            conjuncts.append((negated, atom))
            expect_atom = False
            negated = False
        i += 1
    if expect_atom:
        raise OrdalgError("predicate ends with a dangling operator")
    return tuple(conjuncts)


def evaluate_predicate(pred: Predicate, P: Poset) -> bool:
    return all(_ATOMS[atom](P) != negated for negated, atom in pred)


@dataclass(frozen=True)
class SearchSpec:
    n_min: int
    n_max: int
    predicate: Predicate
    mode: str = "exhaustive"  # or "random"
    seed: int = 0
    count: int = 1000

    def __post_init__(self):
        if self.n_min < 1 or self.n_min > self.n_max:
            raise OrdalgError("invalid size range")
        if self.mode not in ("exhaustive", "random"):
            raise OrdalgError("mode must be 'exhaustive' or 'random'")
        if self.mode == "exhaustive" and self.n_max > EXHAUSTIVE_GUARD:
            raise OrdalgError(
                f"exhaustive search guarded at n <= {EXHAUSTIVE_GUARD}"
            )


def _revalidate(P: Poset, pred: Predicate) -> None:
    doc = parse(serialize_poset("hit", P))
    Q = doc.posets["hit"]
    if Q != P or not evaluate_predicate(pred, Q):
        raise AssertionError("search hit failed re-validation after round trip")


def search(spec: SearchSpec) -> Iterator[Poset]:
    """Stream posets satisfying the predicate; every hit is re-validated."""
    if spec.mode == "exhaustive":
        for n in range(spec.n_min, spec.n_max + 1):
            for P in all_posets(n):
                if evaluate_predicate(spec.predicate, P):
                    _revalidate(P, spec.predicate)
                    yield P
    else:
        rng = random.Random(spec.seed)
        for _ in range(spec.count):
            n = rng.randint(spec.n_min, spec.n_max)
            P = random_poset(rng, n)
            if evaluate_predicate(spec.predicate, P):
                _revalidate(P, spec.predicate)
                yield P
