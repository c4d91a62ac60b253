"""Arrow relation deciders.

check_arrow decides C -> (B)^A_{k,t}: every k-coloring of hom(A, C) admits a
w in hom(B, C) whose composite copy of hom(A, B) receives at most t colors.
Subobject mode colors the quotient hom(A, C)/~_A instead, where f ~_A f.alpha
for automorphisms alpha of A.  The negation (a coloring defeating every w) is
what the kernel searches for; an exhausted search certifies the relation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import CategoryError, FiniteCategory
from .kernel import DEFAULT_BUDGET, build_problem, solve


@dataclass(frozen=True)
class ArrowQuery:
    A: int
    B: int
    C: int
    k: int
    t: int
    mode: str = "morphism"  # morphism | subobject

    def __post_init__(self):
        if self.k < 2:
            raise CategoryError("k must be >= 2")
        if self.t < 1:
            raise CategoryError("t must be >= 1")
        if self.mode not in ("morphism", "subobject"):
            raise CategoryError(f"unknown mode {self.mode!r}")


@dataclass
class ArrowVerdict:
    holds: bool | None  # None = inconclusive (budget exhausted)
    witness: list[int] | None  # colors indexed like `domain` when holds is False
    domain: list[int]  # morphism ids (morphism mode) or class representatives
    nodes: int
    note: str = ""

    @property
    def inconclusive(self) -> bool:
        return self.holds is None

    def as_dict(self) -> dict:
        out = {
            "holds": self.holds,
            "nodes": self.nodes,
            "note": self.note,
        }
        if self.witness is not None:
            out["witness"] = {str(m): c for m, c in zip(self.domain, self.witness)}
        return out


def _domain_bundles_perms(cat: FiniteCategory, q: ArrowQuery):
    """Colorable items, per-w bundles (as item index sets) and the Aut(C)
    action on items."""
    hom_ab = cat.hom(q.A, q.B)
    hom_bc = cat.hom(q.B, q.C)
    if q.mode == "morphism":
        items = list(cat.hom(q.A, q.C))
        idx = {m: i for i, m in enumerate(items)}
        bundles = [
            frozenset(idx[cat.compose(w, f)] for f in hom_ab) for w in hom_bc
        ]
        perms = [
            tuple(idx[cat.compose(alpha, m)] for m in items)
            for alpha in cat.automorphisms(q.C)
        ]
    else:
        classes = cat.subobject_classes(q.A, q.C)
        class_of = {m: i for i, cl in enumerate(classes) for m in cl.members}
        items = [cl.representative for cl in classes]
        bundles = [
            frozenset(class_of[cat.compose(w, f)] for f in hom_ab) for w in hom_bc
        ]
        perms = [
            tuple(class_of[cat.compose(alpha, rep)] for rep in items)
            for alpha in cat.automorphisms(q.C)
        ]
    return items, bundles, perms


def _replay_witness(cat: FiniteCategory, q: ArrowQuery, items: list[int], colors: list[int]) -> bool:
    """Independent check that every w sees more than t colors under `colors`."""
    hom_ab = cat.hom(q.A, q.B)
    hom_bc = cat.hom(q.B, q.C)
    if q.mode == "morphism":
        color_of = dict(zip(items, colors))
    else:
        classes = cat.subobject_classes(q.A, q.C)
        color_of = {}
        for cl, c in zip(classes, colors):
            for m in cl.members:
                color_of[m] = c
    if max(colors, default=-1) >= q.k:
        return False
    for w in hom_bc:
        seen = {color_of[cat.compose(w, f)] for f in hom_ab}
        if len(seen) <= q.t:
            return False
    return True


def check_arrow(
    cat: FiniteCategory,
    q: ArrowQuery,
    budget: int = DEFAULT_BUDGET,
    threads: int = 1,
) -> ArrowVerdict:
    cat.check_object(q.A)
    cat.check_object(q.B)
    cat.check_object(q.C)
    if q.mode == "subobject" and not cat.all_mono:
        raise CategoryError("subobject mode requires an all-mono category")

    items, bundles, perms = _domain_bundles_perms(cat, q)
    n = len(items)

    if not cat.hom(q.B, q.C):
        # no w exists; the relation degenerates to whether the domain can be
        # colored with more than t colors at all
        if min(q.k, n) <= q.t:
            return ArrowVerdict(True, None, items, 0, note="vacuous: no B->C morphisms, domain not >t-colorable")
        witness = [i % q.k for i in range(n)]
        return ArrowVerdict(False, witness, items, 0, note="vacuous: no B->C morphisms, >t-coloring exists")

    if min(q.k, n) <= q.t:
        return ArrowVerdict(True, None, items, 0, note="trivial: at most t colors can occur")
    for b in bundles:
        if len(b) <= q.t:
            return ArrowVerdict(True, None, items, 0, note="trivial: some w has a bundle of size <= t")

    problem = build_problem(n, bundles, q.k, q.t, perms)
    outcome = solve(problem, budget=budget, threads=threads)
    if outcome.witness is not None:
        if not _replay_witness(cat, q, items, outcome.witness):
            raise RuntimeError("internal error: witness failed replay verification")
        return ArrowVerdict(False, outcome.witness, items, outcome.nodes)
    if not outcome.exhausted:
        return ArrowVerdict(None, None, items, outcome.nodes, note="node budget exceeded")
    return ArrowVerdict(True, None, items, outcome.nodes)


def check_arrow_dual(
    cat: FiniteCategory,
    q: ArrowQuery,
    budget: int = DEFAULT_BUDGET,
    threads: int = 1,
) -> ArrowVerdict:
    """Arrow relation in the opposite category, by constructing the opposite."""
    return check_arrow(cat.opposite(), q, budget=budget, threads=threads)


def check_arrow_native_dual(
    cat: FiniteCategory,
    q: ArrowQuery,
    budget: int = DEFAULT_BUDGET,
    threads: int = 1,
) -> ArrowVerdict:
    """Arrow relation in the opposite category, evaluated in place.

    The domain is hom(C, A) and the bundle of w in hom(C, B) is
    {h.w : h in hom(B, A)}.  This never builds the opposite category, giving
    an independent route for the duality cross-checks.
    """
    cat.check_object(q.A)
    cat.check_object(q.B)
    cat.check_object(q.C)
    if q.mode != "morphism":
        raise CategoryError("native dual route supports morphism mode only")

    items = list(cat.hom(q.C, q.A))
    idx = {m: i for i, m in enumerate(items)}
    hom_ba = cat.hom(q.B, q.A)
    hom_cb = cat.hom(q.C, q.B)
    bundles = [frozenset(idx[cat.compose(h, w)] for h in hom_ba) for w in hom_cb]
    perms = [
        tuple(idx[cat.compose(m, alpha)] for m in items)
        for alpha in cat.automorphisms(q.C)
    ]
    n = len(items)

    if not hom_cb:
        if min(q.k, n) <= q.t:
            return ArrowVerdict(True, None, items, 0, note="vacuous: no B->C morphisms, domain not >t-colorable")
        witness = [i % q.k for i in range(n)]
        return ArrowVerdict(False, witness, items, 0, note="vacuous: no B->C morphisms, >t-coloring exists")
    if min(q.k, n) <= q.t:
        return ArrowVerdict(True, None, items, 0, note="trivial: at most t colors can occur")
    for b in bundles:
        if len(b) <= q.t:
            return ArrowVerdict(True, None, items, 0, note="trivial: some w has a bundle of size <= t")

    problem = build_problem(n, bundles, q.k, q.t, perms)
    outcome = solve(problem, budget=budget, threads=threads)
    if outcome.witness is not None:
        colors = outcome.witness
        # replay in place: every w must see more than t colors
        for w in hom_cb:
            seen = {colors[idx[cat.compose(h, w)]] for h in hom_ba}
            if len(seen) <= q.t:
                raise RuntimeError("internal error: witness failed replay verification")
        return ArrowVerdict(False, colors, items, outcome.nodes)
    if not outcome.exhausted:
        return ArrowVerdict(None, None, items, outcome.nodes, note="node budget exceeded")
    return ArrowVerdict(True, None, items, outcome.nodes)


@dataclass
class RamseyPropertyReport:
    cells: list[dict] = field(default_factory=list)

    @property
    def inconclusive(self) -> bool:
        return any(c["witness_C"] is None and c["inconclusive"] for c in self.cells)

    def as_dict(self) -> dict:
        return {"cells": self.cells, "inconclusive": self.inconclusive}


def ramsey_property_check(
    cat: FiniteCategory,
    pairs: list[tuple[int, int]],
    k_max: int,
    universe: list[int],
    t: int = 1,
    mode: str = "morphism",
    budget: int = DEFAULT_BUDGET,
    threads: int = 1,
) -> RamseyPropertyReport:
    """For each (A, B, k <= k_max), find the first C in the universe with the
    (k, t) arrow."""
    report = RamseyPropertyReport()
    for a, b in pairs:
        for k in range(2, k_max + 1):
            found = None
            saw_inconclusive = False
            for c in universe:
                v = check_arrow(cat, ArrowQuery(a, b, c, k, t, mode), budget=budget, threads=threads)
                if v.holds:
                    found = c
                    break
                if v.holds is None:
                    saw_inconclusive = True
            report.cells.append(
                {"A": a, "B": b, "k": k, "t": t, "witness_C": found, "inconclusive": saw_inconclusive and found is None}
            )
    return report
