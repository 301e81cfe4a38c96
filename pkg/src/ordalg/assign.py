"""Directoid and λ-lattice assignments for a poset, and their verification.

An assignment fixes ``x⊓y = min(x,y)`` on comparable pairs and an arbitrary
element of the lower cone on incomparable ones (dually for ``⊔``), so the
choice space is the product of the incomparable pairs' cones.  Each profile
bundles the induced operation (pseudocomplement, relative or sectional
pseudocomplement) and constants into one algebra and knows the quantified
conditions that characterize the underlying poset class, plus the derived
identities that must then follow.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Iterator

from . import pc
from .algebra import CIRC, JOIN, MEET, ONE, STAR, ZERO, Algebra, Signature
from .errors import (
    InvalidChoice,
    MissingChoice,
    MissingStructure,
    MissingSymbol,
    NotDirected,
)
from .poset import Poset, bits, extremes
from .terms import (
    App,
    Const,
    Eq,
    Forall,
    Formula,
    Iff,
    Implies,
    Report,
    Var,
    all_hold,
    check_formula,
    render_formula,
)

Choice = dict[tuple[int, int], int]


@dataclass(frozen=True)
class Profile:
    """One assigned-algebra shape: signature, required choices, derived op."""

    name: str
    signature: Signature
    needs_join: bool
    class_kind: str
    op_symbol: str | None
    op_arity: int
    constants: tuple[tuple[str, str], ...]  # (symbol, "bottom"|"top")


PROFILES: dict[str, Profile] = {
    "pc": Profile(
        "pc",
        Signature(((MEET, 2), (STAR, 1), (ZERO, 0))),
        False,
        "pseudocomplemented",
        STAR,
        1,
        ((ZERO, "bottom"),),
    ),
    "stone": Profile(
        "stone",
        Signature(((JOIN, 2), (MEET, 2), (STAR, 1), (ZERO, 0))),
        True,
        "stone",
        STAR,
        1,
        ((ZERO, "bottom"),),
    ),
    "rpc": Profile(
        "rpc",
        Signature(((MEET, 2), (STAR, 2), (ONE, 0))),
        False,
        "relatively_pc",
        STAR,
        2,
        ((ONE, "top"),),
    ),
    "spc": Profile(
        "spc",
        Signature(((JOIN, 2), (MEET, 2), (CIRC, 2))),
        True,
        "sectionally_pc",
        CIRC,
        2,
        (),
    ),
    "spc1": Profile(
        "spc1",
        Signature(((JOIN, 2), (MEET, 2), (CIRC, 2), (ONE, 0))),
        True,
        "sectionally_pc_with_1",
        CIRC,
        2,
        ((ONE, "top"),),
    ),
    "sspc": Profile(
        "sspc",
        Signature(((JOIN, 2), (MEET, 2), (CIRC, 2), (ONE, 0))),
        True,
        "strongly_sectionally_pc",
        CIRC,
        2,
        ((ONE, "top"),),
    ),
}


def _profile(profile: str | Profile) -> Profile:
    if isinstance(profile, Profile):
        return profile
    try:
        return PROFILES[profile]
    except KeyError:
        raise ValueError(f"unknown profile {profile!r}") from None


# -- choices -------------------------------------------------------------------


def incomparable_pairs(P: Poset) -> list[tuple[int, int]]:
    return [
        (x, y)
        for x in range(P.n)
        for y in range(x + 1, P.n)
        if not P.comparable(x, y)
    ]


class ChoiceSpace:
    """Lexicographic stream of cone choices for the incomparable pairs.

    ``kind`` is ``meet``, ``join`` or ``lambda``; the λ space is the product
    of the meet and join spaces (meet varying slowest) and yields pairs of
    dicts.  Construction raises :class:`NotDirected` with the first failing
    pair when some required cone is empty.
    """

    def __init__(self, P: Poset, kind: str):
        if kind not in ("meet", "join", "lambda"):
            raise ValueError("kind must be 'meet', 'join' or 'lambda'")
        self.P = P
        self.kind = kind
        self.pairs = incomparable_pairs(P)
        self.meet_options: list[tuple[int, ...]] = []
        self.join_options: list[tuple[int, ...]] = []
        for x, y in self.pairs:
            if kind in ("meet", "lambda"):
                cone = P.down[x] & P.down[y]
                if cone == 0:
                    raise NotDirected(
                        f"not down-directed: L({P.labels[x]},{P.labels[y]}) is empty",
                        (P.labels[x], P.labels[y]),
                    )
                self.meet_options.append(tuple(bits(cone)))
            if kind in ("join", "lambda"):
                cone = P.up[x] & P.up[y]
                if cone == 0:
                    raise NotDirected(
                        f"not up-directed: U({P.labels[x]},{P.labels[y]}) is empty",
                        (P.labels[x], P.labels[y]),
                    )
                self.join_options.append(tuple(bits(cone)))

    @property
    def count(self) -> int:
        total = 1
        for opts in self.meet_options:
            total *= len(opts)
        for opts in self.join_options:
            total *= len(opts)
        return total

    def _iter_one(self, options: list[tuple[int, ...]]) -> Iterator[Choice]:
        for values in product(*options):
            yield dict(zip(self.pairs, values))

    def __iter__(self):
        if self.kind == "meet":
            return self._iter_one(self.meet_options)
        if self.kind == "join":
            return self._iter_one(self.join_options)
        return (
            (m, j)
            for m in self._iter_one(self.meet_options)
            for j in self._iter_one(self.join_options)
        )


def enumerate_choices(P: Poset, kind: str) -> ChoiceSpace:
    return ChoiceSpace(P, kind)


def canonical_choice(P: Poset, kind: str) -> Choice:
    """Smallest-index cone element for every incomparable pair."""
    space = ChoiceSpace(P, kind)
    options = space.meet_options if kind == "meet" else space.join_options
    return {pair: opts[0] for pair, opts in zip(space.pairs, options)}


def _normalize_choice(P: Poset, kind: str, choice: Choice | None) -> Choice:
    if choice is None:
        return canonical_choice(P, kind)
    out: Choice = {}
    for (x, y), v in choice.items():
        if P.comparable(x, y):
            raise InvalidChoice(
                f"{P.labels[x]},{P.labels[y]} are comparable; their {kind} is forced"
            )
        key = (x, y) if x < y else (y, x)
        cone = P.down[x] & P.down[y] if kind == "meet" else P.up[x] & P.up[y]
        if not (cone >> v) & 1:
            raise InvalidChoice(
                f"{P.labels[v]} is outside the {kind} cone of "
                f"{{{P.labels[x]},{P.labels[y]}}}"
            )
        out[key] = v
    for x, y in incomparable_pairs(P):
        if (x, y) not in out:
            raise MissingChoice(
                f"no {kind} choice for incomparable pair {{{P.labels[x]},{P.labels[y]}}}"
            )
    return out


def meet_table_from_choice(P: Poset, choice: Choice) -> tuple[tuple[int, ...], ...]:
    return _table_from_choice(P, choice, "meet")


def join_table_from_choice(P: Poset, choice: Choice) -> tuple[tuple[int, ...], ...]:
    return _table_from_choice(P, choice, "join")


def _table_from_choice(P: Poset, choice: Choice, kind: str):
    n = P.n
    rows = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(x, n):
            if P.leq(x, y):
                v = x if kind == "meet" else y
            elif P.leq(y, x):
                v = y if kind == "meet" else x
            else:
                v = choice[(x, y)]
            rows[x][y] = rows[y][x] = v
    return tuple(tuple(r) for r in rows)


# -- assigned algebras -----------------------------------------------------------


def _constant_values(P: Poset, prof: Profile, best_effort: bool) -> dict[str, int]:
    bottom, top = extremes(P)
    values: dict[str, int] = {}
    for sym, role in prof.constants:
        v = bottom if role == "bottom" else top
        if v is None:
            if not best_effort:
                raise MissingStructure(f"poset has no {role} element for constant {sym}")
            if role == "top":
                v = min(x for x in range(P.n) if P.up[x] == 1 << x)
            else:
                v = min(x for x in range(P.n) if P.down[x] == 1 << x)
        values[sym] = v
    return values


def _build(
    P: Poset,
    prof: Profile,
    meet: Choice | None,
    join: Choice | None,
    op_table,
    constants: dict[str, int],
) -> Algebra:
    ops = []
    for sym, arity in prof.signature.symbols:
        if sym == MEET:
            ops.append((MEET, 2, meet_table_from_choice(P, _normalize_choice(P, "meet", meet))))
        elif sym == JOIN:
            ops.append((JOIN, 2, join_table_from_choice(P, _normalize_choice(P, "join", join))))
        elif sym == prof.op_symbol and arity == prof.op_arity:
            ops.append((sym, arity, op_table))
        else:
            ops.append((sym, 0, constants[sym]))
    return Algebra(P.labels, ops)


def assign_algebra(
    P: Poset,
    profile: str | Profile,
    meet: Choice | None = None,
    join: Choice | None = None,
) -> Algebra:
    """Assigned algebra for the profile; canonical choices when none given.

    Raises :class:`MissingStructure` when the poset is not in the profile's
    class (the derived operation would be partial) and :class:`NotDirected`
    when the required directoid does not exist.
    """
    prof = _profile(profile)
    cls = pc.classify(P, prof.class_kind)
    if not cls.holds:
        raise MissingStructure(
            f"poset is not {prof.class_kind}: witness {cls.witness!r}"
        )
    return _build(P, prof, meet, join, cls.table, _constant_values(P, prof, False))


def _assign_best_effort(
    P: Poset, prof: Profile, meet: Choice | None, join: Choice | None
) -> Algebra:
    """Assignment that always produces a total algebra, greatest-or-maximal."""
    if prof.class_kind in ("pseudocomplemented", "stone"):
        table = pc.star_table(P, best_effort=True)
    elif prof.class_kind == "relatively_pc":
        table = pc.rpc_table(P, best_effort=True)
    else:
        table = pc.spc_table(P, best_effort=True)
    return _build(P, prof, meet, join, table, _constant_values(P, prof, True))


def cone_via_directoid(A: Algebra, a: int, b: int, kind: str = "meet") -> frozenset[int]:
    """Cone of {a,b} recovered from the directoid: {(a op x) op (b op x) | x}."""
    sym = MEET if kind == "meet" else JOIN
    t = A.table(sym)
    return frozenset(t[t[a][x]][t[b][x]] for x in range(A.n))


# -- characterizing conditions ---------------------------------------------------


def _m(a, b):
    return App(MEET, (a, b))


def _j(a, b):
    return App(JOIN, (a, b))


def conditions_for(profile: str | Profile) -> tuple[tuple[str, Formula], ...]:
    """The quantified conditions equivalent to membership in the profile's class."""
    prof = _profile(profile)
    x, y, z, s, t = Var("x"), Var("y"), Var("z"), Var("s"), Var("t")

    if prof.name in ("pc", "stone"):
        zero = Const(ZERO)
        star = lambda a: App(STAR, (a,))
        conds = [
            ("i", Forall(("x",), Eq(_m(zero, x), zero))),
            ("ii", Forall(("x", "y"), Eq(_m(_m(x, y), _m(star(x), y)), zero))),
            (
                "iii",
                Forall(
                    ("x", "y"),
                    Implies(
                        Forall(("z",), Eq(_m(_m(x, z), _m(y, z)), zero)),
                        Eq(_m(y, star(x)), y),
                    ),
                ),
            ),
        ]
        if prof.name == "stone":
            conds.append(
                (
                    "iv",
                    Forall(
                        ("x", "y"),
                        Eq(_j(_j(star(x), y), _j(star(star(x)), y)), star(zero)),
                    ),
                )
            )
        return tuple(conds)

    if prof.name == "rpc":
        one = Const(ONE)
        r = lambda a, b: App(STAR, (a, b))
        inner = _m(_m(x, z), _m(r(x, y), z))
        return (
            ("i", Forall(("x",), Eq(_m(x, one), x))),
            ("ii", Forall(("x", "y", "z"), Eq(_m(inner, y), inner))),
            (
                "iii",
                Forall(
                    ("x", "y", "z"),
                    Implies(
                        Forall(
                            ("t",),
                            Eq(_m(_m(_m(x, t), _m(z, t)), y), _m(_m(x, t), _m(z, t))),
                        ),
                        Eq(_m(z, r(x, y)), z),
                    ),
                ),
            ),
        )

    # sectional profiles
    c = lambda a, b: App(CIRC, (a, b))
    join_block = lambda v: _j(_j(x, v), _j(y, v))  # ranges over U(x,y) as v runs
    conds = [
        ("i", Forall(("x", "y"), Eq(_m(y, c(x, y)), y))),
        (
            "ii",
            Forall(
                ("x", "y", "z"),
                Implies(
                    Forall(
                        ("t",),
                        Eq(_m(_m(join_block(t), z), _m(c(x, y), z)), z),
                    ),
                    Eq(_m(z, y), z),
                ),
            ),
        ),
        (
            "iii",
            Forall(
                ("x", "y", "z"),
                Implies(
                    Forall(
                        ("s",),
                        Iff(
                            Forall(
                                ("t",),
                                Eq(_m(_m(join_block(t), s), _m(z, s)), s),
                            ),
                            Eq(_m(s, y), s),
                        ),
                    ),
                    Eq(_m(z, c(x, y)), z),
                ),
            ),
        ),
    ]
    if prof.name in ("spc1", "sspc"):
        one = Const(ONE)
        conds.append(("iv", Forall(("x",), Eq(_m(x, one), x))))
    if prof.name == "sspc":
        conds.append(("v", Forall(("x", "y"), Eq(_m(x, c(c(x, y), y)), x))))
    return tuple(conds)


def verify_assigned_conditions(
    A: Algebra,
    profile: str | Profile,
    short_circuit: bool = False,
    budget: int | None = None,
) -> dict[str, Report]:
    """Run every characterizing condition of the profile against the algebra."""
    prof = _profile(profile)
    for sym, arity in prof.signature.symbols:
        if not A.signature.has(sym, arity):
            raise MissingSymbol(f"algebra lacks {sym!r}/{arity} required by {prof.name}")
    out: dict[str, Report] = {}
    failed = False
    for name, formula in conditions_for(prof):
        if short_circuit and failed:
            break
        report = check_formula(A, formula, budget=budget)
        out[name] = report
        failed = failed or not report.holds
    return out


def derived_identities_for(profile: str | Profile) -> tuple[tuple[str, Formula], ...]:
    prof = _profile(profile)
    x, y = Var("x"), Var("y")
    one = Const(ONE)
    if prof.name == "rpc":
        r = lambda a, b: App(STAR, (a, b))
        return (
            ("a", Forall(("x",), Eq(r(x, x), one))),
            ("b", Forall(("x",), Eq(r(one, x), x))),
            ("c", Forall(("x", "y"), Eq(_m(x, r(r(x, y), y)), x))),
        )
    if prof.name in ("spc1", "sspc"):
        c = lambda a, b: App(CIRC, (a, b))
        return (
            ("a", Forall(("x",), Eq(c(x, x), one))),
            ("b", Forall(("x",), Eq(c(one, x), x))),
        )
    raise MissingSymbol(f"profile {prof.name!r} has no derived identity set")


def verify_derived_identities(A: Algebra, profile: str | Profile) -> dict[str, Report]:
    return {name: check_formula(A, f) for name, f in derived_identities_for(profile)}


# -- theorem equivalence audit ------------------------------------------------------


@dataclass(frozen=True)
class AuditReport:
    """Comparison of the order-level classification against the algebra-level
    condition verdict across enumerated assignments."""

    profile: str
    poset_holds: bool
    assignments_total: int
    assignments_checked: int
    sampled: bool
    divergences: tuple
    note: str = ""

    @property
    def holds(self) -> bool:
        return not self.divergences


def theorem_equivalence_audit(
    P: Poset,
    profile: str | Profile,
    budget: int = 10_000,
    seed: int = 20210,
) -> AuditReport:
    """Audit the iff between poset classification and the assigned conditions.

    When the class holds, the derived operation is the computed one and every
    assignment must satisfy all conditions; when it fails, a best-effort table
    (greatest-or-first-maximal entries, same for constants) must violate some
    condition on every assignment.  Non-directed posets admit no assignment
    and pass vacuously.  Above ``budget`` assignments a seeded Bernoulli
    sample is taken instead of the full product.
    """
    prof = _profile(profile)
    cls = pc.classify(P, prof.class_kind)
    kind = "lambda" if prof.needs_join else "meet"
    try:
        space = enumerate_choices(P, kind)
    except NotDirected as e:
        return AuditReport(
            prof.name, cls.holds, 0, 0, False, (), f"no assignments exist: {e}"
        )

    total = space.count
    sampled = total > budget
    rng = random.Random(seed)
    keep = budget / total if sampled else 1.0
    checked = 0
    divergences = []
    for choice in space:
        if sampled and rng.random() > keep:
            continue
        meet, join = choice if kind == "lambda" else (choice, None)
        if cls.holds:
            A = _build(P, prof, meet, join, cls.table, _constant_values(P, prof, False))
        else:
            A = _assign_best_effort(P, prof, meet, join)
        verdict = all_hold(
            verify_assigned_conditions(A, prof, short_circuit=not cls.holds)
        )
        checked += 1
        if verdict != cls.holds:
            divergences.append({"choice": choice, "algebra_verdict": verdict})
    return AuditReport(
        prof.name,
        cls.holds,
        total,
        checked,
        sampled,
        tuple(divergences),
        "" if not sampled else f"sampled ~{budget} of {total} assignments",
    )
