"""Pseudocomplementation structures computed directly from the order.

Each operation is defined through a "greatest element of a candidate set"
construction.  :func:`greatest_in` deliberately distinguishes "the set has a
maximum" from "the set only has maximal elements" — exactly the point where
posets differ from lattices — and classification reports the antichain of
maximal candidates as the witness when the maximum is missing.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import NoBottom
from .poset import Poset, bits, extremes, is_distributive
from .terms import Report

KINDS = (
    "pseudocomplemented",
    "stone",
    "relatively_pc",
    "sectionally_pc",
    "sectionally_pc_with_1",
    "strongly_sectionally_pc",
)

_ALIASES = {
    "pc": "pseudocomplemented",
    "rpc": "relatively_pc",
    "spc": "sectionally_pc",
    "spc1": "sectionally_pc_with_1",
    "sspc": "strongly_sectionally_pc",
}


def canonical_kind(kind: str) -> str:
    kind = _ALIASES.get(kind, kind)
    if kind not in KINDS:
        raise ValueError(f"unknown classification kind {kind!r}")
    return kind


@dataclass(frozen=True)
class Greatest:
    """Maximum of a candidate set when it exists, plus its maximal antichain."""

    value: int | None
    maximal: tuple[int, ...]


@dataclass(frozen=True)
class PcClassification:
    kind: str
    holds: bool
    applicable: bool = True
    table: tuple | None = None
    witness: dict | None = None
    note: str = ""


def greatest_in(P: Poset, candidates: int) -> Greatest:
    """Greatest member of a bitset of candidates.

    The unique maximal element is returned only when it dominates every
    candidate (always true in a finite poset, but checked anyway so a bug
    cannot silently promote a mere maximal element).
    """
    if candidates == 0:
        return Greatest(None, ())
    maximal = P.maximal_of(candidates)
    if len(maximal) == 1 and candidates & ~P.down[maximal[0]] == 0:
        return Greatest(maximal[0], maximal)
    return Greatest(None, maximal)


# -- pseudocomplements --------------------------------------------------------


def _pc_detail(P: Poset, x: int, bottom: int) -> Greatest:
    zero = 1 << bottom
    cand = 0
    for y in range(P.n):
        if P.down[x] & P.down[y] == zero:
            cand |= 1 << y
    return greatest_in(P, cand)


def pseudocomplement(P: Poset, x: int) -> int | None:
    """Greatest y with L(x,y) = {0}; absent when only maximal candidates exist."""
    bottom, _ = extremes(P)
    if bottom is None:
        raise NoBottom("pseudocomplements need a bottom element")
    return _pc_detail(P, x, bottom).value


def star_table(P: Poset, best_effort: bool = False) -> tuple[int, ...] | None:
    """Full unary pseudocomplement table; None when some entry is absent.

    With ``best_effort`` the lexicographically first maximal candidate fills
    absent entries (used to exercise the failing direction of characterization
    audits); the result is then always total.
    """
    bottom, _ = extremes(P)
    if bottom is None:
        if best_effort:
            return tuple(0 for _ in range(P.n))
        return None
    out = []
    for x in range(P.n):
        g = _pc_detail(P, x, bottom)
        if g.value is not None:
            out.append(g.value)
        elif best_effort:
            out.append(g.maximal[0])
        else:
            return None
    return tuple(out)


# -- relative pseudocomplements -----------------------------------------------


def _rpc_detail(P: Poset, x: int, y: int) -> Greatest:
    cand = 0
    for z in range(P.n):
        if P.down[x] & P.down[z] & ~P.down[y] == 0:
            cand |= 1 << z
    return greatest_in(P, cand)


def relative_pseudocomplement(P: Poset, x: int, y: int) -> int | None:
    """Greatest z with L(x,z) ⊆ L(y)."""
    return _rpc_detail(P, x, y).value


def rpc_table(P: Poset, best_effort: bool = False) -> tuple[tuple[int, ...], ...] | None:
    out = []
    for x in range(P.n):
        row = []
        for y in range(P.n):
            g = _rpc_detail(P, x, y)
            if g.value is not None:
                row.append(g.value)
            elif best_effort:
                row.append(g.maximal[0])
            else:
                return None
        out.append(tuple(row))
    return tuple(out)


# -- sectional pseudocomplements ------------------------------------------------


def _spc_detail(P: Poset, x: int, y: int) -> Greatest:
    lu = P.lower_mask(P.up[x] & P.up[y])
    cand = 0
    for z in range(P.n):
        if lu & P.down[z] == P.down[y]:
            cand |= 1 << z
    return greatest_in(P, cand)


def sectional_pseudocomplement(
    P: Poset, x: int, y: int, diagonal_fallback: bool = True
) -> int | None:
    """Greatest z with L(U(x,y),z) = L(y).

    On diagonal pairs of a poset without enough upper structure the candidate
    set {z : z >= x} can lack a maximum; with ``diagonal_fallback`` (the
    default, matching the bundled topless example fixture) the entry falls
    back to x itself, the least candidate.  The fallback provably never fires
    on a directed poset.
    """
    g = _spc_detail(P, x, y)
    if g.value is not None:
        return g.value
    if diagonal_fallback and x == y:
        return x
    return None


def spc_table(
    P: Poset, best_effort: bool = False, diagonal_fallback: bool = True
) -> tuple[tuple[int, ...], ...] | None:
    out = []
    for x in range(P.n):
        row = []
        for y in range(P.n):
            g = _spc_detail(P, x, y)
            if g.value is not None:
                row.append(g.value)
            elif diagonal_fallback and x == y:
                row.append(x)
            elif best_effort:
                row.append(g.maximal[0] if g.maximal else y)
            else:
                return None
        out.append(tuple(row))
    return tuple(out)


def _spc_fallback_entries(P: Poset) -> tuple[int, ...]:
    return tuple(x for x in range(P.n) if _spc_detail(P, x, x).value is None)


# -- classification -------------------------------------------------------------


def classify(P: Poset, kind: str) -> PcClassification:
    """Classify a poset against one pseudocomplementation class.

    Structural absence is data, not an exception: a missing bottom / top or a
    candidate set without maximum turns into ``holds=False`` plus a witness
    (or ``applicable=False`` where the class's own statement needs a top).
    """
    kind = canonical_kind(kind)
    bottom, top = extremes(P)

    if kind in ("pseudocomplemented", "stone"):
        if bottom is None:
            return PcClassification(kind, False, witness={"reason": "no bottom element"})
        for x in range(P.n):
            g = _pc_detail(P, x, bottom)
            if g.value is None:
                return PcClassification(
                    kind, False, witness={"x": x, "maximal": g.maximal}
                )
        table = star_table(P)
        assert table is not None
        if kind == "pseudocomplemented":
            return PcClassification(kind, True, table=table)
        unit = table[bottom]  # 0* is the top element
        for x in range(P.n):
            cone = P.up[table[x]] & P.up[table[table[x]]]
            if cone != 1 << unit:
                return PcClassification(
                    kind,
                    False,
                    table=table,
                    witness={"x": x, "U(x*,x**)": tuple(bits(cone)), "expected": (unit,)},
                )
        return PcClassification(kind, True, table=table)

    if kind == "relatively_pc":
        for x, y in product(range(P.n), repeat=2):
            g = _rpc_detail(P, x, y)
            if g.value is None:
                return PcClassification(
                    kind, False, witness={"x": x, "y": y, "maximal": g.maximal}
                )
        return PcClassification(kind, True, table=rpc_table(P))

    # sectional family
    fallback = _spc_fallback_entries(P)
    for x, y in product(range(P.n), repeat=2):
        if x == y and x in fallback:
            continue
        g = _spc_detail(P, x, y)
        if g.value is None:
            return PcClassification(
                kind, False, witness={"x": x, "y": y, "maximal": g.maximal}
            )
    table = spc_table(P)
    assert table is not None
    note = ""
    if fallback:
        note = "diagonal fallback (least candidate) at: " + ", ".join(
            P.labels[x] for x in fallback
        )
    if kind == "sectionally_pc":
        return PcClassification(kind, True, table=table, note=note)
    if top is None:
        return PcClassification(
            kind, False, applicable=False, table=table, note="no top element"
        )
    if kind == "sectionally_pc_with_1":
        return PcClassification(kind, True, table=table, note=note)
    # strongly: x <= (x∘y)∘y everywhere
    for x, y in product(range(P.n), repeat=2):
        v = table[table[x][y]][y]
        if not P.leq(x, v):
            return PcClassification(
                kind, False, table=table, witness={"x": x, "y": y, "(x∘y)∘y": v}
            )
    return PcClassification(kind, True, table=table, note=note)


def classify_pseudocomplemented(P: Poset) -> PcClassification:
    return classify(P, "pseudocomplemented")


def classify_relative(P: Poset) -> PcClassification:
    return classify(P, "relatively_pc")


def classify_sectional(P: Poset, kind: str = "sectionally_pc") -> PcClassification:
    kind = canonical_kind(kind)
    if kind not in ("sectionally_pc", "sectionally_pc_with_1", "strongly_sectionally_pc"):
        raise ValueError(f"{kind!r} is not a sectional kind")
    return classify(P, kind)


# -- the equality characterization for distributive posets ---------------------


def check_distributive_pc_equalities(P: Poset, star) -> dict[str, Report]:
    """Check L(x,x*) = {0} and U(x*,L(x,y)) = U(x*,y) plus the side hypotheses.

    The caller asserts boundedness, U(x,x*) = {1} and distributivity; all
    three are re-checked and reported as side verdicts next to the two
    equalities.
    """
    bottom, top = extremes(P)
    if bottom is None or top is None:
        raise NoBottom("the equality characterization needs a bounded poset")
    star = tuple(star)
    if len(star) != P.n:
        raise ValueError("star table does not cover the carrier")
    out: dict[str, Report] = {}

    dist = is_distributive(P)
    out["side: distributive"] = (
        Report(True, None, P.n**3)
        if dist.holds
        else Report(False, dict(zip("xyz", dist.witness)), P.n**3)
    )

    w = next((x for x in range(P.n) if P.up[x] & P.up[star[x]] != 1 << top), None)
    out["side: U(x,x*)={1}"] = (
        Report(True, None, P.n)
        if w is None
        else Report(False, {"x": w, "U(x,x*)": tuple(bits(P.up[w] & P.up[star[w]]))}, P.n)
    )

    w = next((x for x in range(P.n) if P.down[x] & P.down[star[x]] != 1 << bottom), None)
    out["(i) L(x,x*)={0}"] = (
        Report(True, None, P.n)
        if w is None
        else Report(False, {"x": w, "L(x,x*)": tuple(bits(P.down[w] & P.down[star[w]]))}, P.n)
    )

    witness = None
    checked = 0
    for x, y in product(range(P.n), repeat=2):
        checked += 1
        lhs = P.upper_mask((1 << star[x]) | (P.down[x] & P.down[y]))
        rhs = P.up[star[x]] & P.up[y]
        if lhs != rhs:
            witness = {"x": x, "y": y, "lhs": tuple(bits(lhs)), "rhs": tuple(bits(rhs))}
            break
    out["(ii) U(x*,L(x,y))=U(x*,y)"] = (
        Report(True, None, checked) if witness is None else Report(False, witness, checked)
    )
    return out
