"""Explicit finite categories.

A category is stored as flat tables: object labels, morphism (dom, cod, label)
records and a total composition mapping.  Everything downstream (arrow search,
degree computation, expansion checks) reads these tables; after construction a
category is treated as immutable and is safe to share between worker threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

# Above this morphism count the composition table is kept as a hash map
# instead of a dense m*m array.
DENSE_COMPOSE_CAP = 2000


class CategoryError(ValueError):
    """Malformed category data or an unknown object/morphism id."""


class FiniteCategory:
    def __init__(
        self,
        object_labels: Sequence[str],
        morphisms: Sequence[tuple[int, int, str]],
        compose: Mapping[tuple[int, int], int],
        identities: Sequence[int] | None = None,
    ):
        self.object_labels: tuple[str, ...] = tuple(str(s) for s in object_labels)
        self.n_objects = len(self.object_labels)
        self.mor_dom: tuple[int, ...] = tuple(m[0] for m in morphisms)
        self.mor_cod: tuple[int, ...] = tuple(m[1] for m in morphisms)
        self.mor_labels: tuple[str, ...] = tuple(str(m[2]) for m in morphisms)
        self.n_morphisms = len(self.mor_dom)
        for i in range(self.n_morphisms):
            if not (0 <= self.mor_dom[i] < self.n_objects and 0 <= self.mor_cod[i] < self.n_objects):
                raise CategoryError(f"morphism {i} has dangling dom/cod")

        m = self.n_morphisms
        if m <= DENSE_COMPOSE_CAP:
            table = np.full((m, m), -1, dtype=np.int32)
            for (g, f), gf in compose.items():
                table[g, f] = gf
            self._compose_dense: np.ndarray | None = table
            self._compose_map: dict[tuple[int, int], int] | None = None
        else:
            self._compose_dense = None
            self._compose_map = dict(compose)

        if identities is not None:
            self.identities: tuple[int, ...] = tuple(identities)
            if len(self.identities) != self.n_objects:
                raise CategoryError("one identity morphism required per object")
        else:
            self.identities = self._infer_identities()

        self._hom_cache: dict[tuple[int, int], tuple[int, ...]] = {}
        self._aut_cache: dict[int, tuple[int, ...]] = {}
        self._all_mono: bool | None = None

    # -- basic structure ---------------------------------------------------

    def check_object(self, a: int) -> None:
        if not (0 <= a < self.n_objects):
            raise CategoryError(f"unknown object id {a}")

    def compose(self, g: int, f: int) -> int:
        """Composite g*f (first f, then g); raises if not composable."""
        if self._compose_dense is not None:
            gf = int(self._compose_dense[g, f])
        else:
            gf = self._compose_map.get((g, f), -1)  # type: ignore[union-attr]
        if gf < 0:
            raise CategoryError(f"morphisms {g} and {f} are not composable")
        return gf

    def composable(self, g: int, f: int) -> bool:
        return self.mor_cod[f] == self.mor_dom[g]

    def compose_entries(self) -> Iterable[tuple[int, int, int]]:
        """All defined (g, f, g*f) entries."""
        if self._compose_dense is not None:
            gs, fs = np.nonzero(self._compose_dense >= 0)
            for g, f in zip(gs.tolist(), fs.tolist()):
                yield g, f, int(self._compose_dense[g, f])
        else:
            for (g, f), gf in self._compose_map.items():  # type: ignore[union-attr]
                yield g, f, gf

    def hom(self, a: int, b: int) -> tuple[int, ...]:
        """All morphisms a -> b in a deterministic (id) order."""
        self.check_object(a)
        self.check_object(b)
        key = (a, b)
        cached = self._hom_cache.get(key)
        if cached is None:
            cached = tuple(
                i for i in range(self.n_morphisms) if self.mor_dom[i] == a and self.mor_cod[i] == b
            )
            self._hom_cache[key] = cached
        return cached

    def identity(self, a: int) -> int:
        self.check_object(a)
        return self.identities[a]

    def _infer_identities(self) -> tuple[int, ...]:
        ids = []
        for x in range(self.n_objects):
            found = -1
            for e in range(self.n_morphisms):
                if self.mor_dom[e] != x or self.mor_cod[e] != x:
                    continue
                if self._acts_as_identity(e):
                    found = e
                    break
            if found < 0:
                raise CategoryError(f"no identity morphism found for object {x}")
            ids.append(found)
        return tuple(ids)

    def _acts_as_identity(self, e: int) -> bool:
        x = self.mor_dom[e]
        for f in range(self.n_morphisms):
            if self.mor_cod[f] == x:
                if not self.composable(e, f) or self.compose(e, f) != f:
                    return False
            if self.mor_dom[f] == x:
                if not self.composable(f, e) or self.compose(f, e) != f:
                    return False
        return True

    # -- derived structure -------------------------------------------------

    def iso(self, a: int, b: int) -> tuple[int, ...]:
        """Invertible morphisms a -> b."""
        out = []
        for f in self.hom(a, b):
            for g in self.hom(b, a):
                if (
                    self.compose(g, f) == self.identity(a)
                    and self.compose(f, g) == self.identity(b)
                ):
                    out.append(f)
                    break
        return tuple(out)

    def automorphisms(self, a: int) -> tuple[int, ...]:
        self.check_object(a)
        cached = self._aut_cache.get(a)
        if cached is None:
            cached = self.iso(a, a)
            self._aut_cache[a] = cached
        return cached

    def is_mono(self, f: int) -> bool:
        """f is mono iff f*u = f*v forces u = v for all parallel u, v into dom(f)."""
        d = self.mor_dom[f]
        for x in range(self.n_objects):
            arrows = self.hom(x, d)
            for i, u in enumerate(arrows):
                fu = self.compose(f, u)
                for v in arrows[i + 1 :]:
                    if self.compose(f, v) == fu:
                        return False
        return True

    def is_epi(self, f: int) -> bool:
        c = self.mor_cod[f]
        for x in range(self.n_objects):
            arrows = self.hom(c, x)
            for i, u in enumerate(arrows):
                uf = self.compose(u, f)
                for v in arrows[i + 1 :]:
                    if self.compose(v, f) == uf:
                        return False
        return True

    @property
    def all_mono(self) -> bool:
        if self._all_mono is None:
            self._all_mono = all(self.is_mono(f) for f in range(self.n_morphisms))
        return self._all_mono

    def subobject_classes(self, a: int, b: int) -> tuple["SubobjectClass", ...]:
        """Partition of hom(a, b) into orbits under precomposition with Aut(a).

        Requires an all-mono category; class sizes then all equal |Aut(a)|.
        """
        if not self.all_mono:
            raise CategoryError("subobject classes require an all-mono category")
        auts = self.automorphisms(a)
        seen: set[int] = set()
        classes = []
        for f in self.hom(a, b):
            if f in seen:
                continue
            members = frozenset(self.compose(f, alpha) for alpha in auts)
            seen.update(members)
            classes.append(SubobjectClass(representative=f, members=members))
        return tuple(classes)

    # -- constructions -----------------------------------------------------

    def opposite(self) -> "FiniteCategory":
        """Same objects and morphism ids with dom/cod swapped and composition reversed."""
        morphisms = [
            (self.mor_cod[i], self.mor_dom[i], self.mor_labels[i]) for i in range(self.n_morphisms)
        ]
        compose = {(f, g): gf for g, f, gf in self.compose_entries()}
        return FiniteCategory(self.object_labels, morphisms, compose, self.identities)

    # -- canonical form ----------------------------------------------------

    def canonical_key(self):
        """Structure after canonical renumbering: objects sorted by label,
        morphisms by (dom, cod, label).  Two categories are structurally equal
        iff their keys are equal."""
        obj_order = sorted(range(self.n_objects), key=lambda o: (self.object_labels[o], o))
        obj_new = {o: i for i, o in enumerate(obj_order)}
        mor_order = sorted(
            range(self.n_morphisms),
            key=lambda m: (obj_new[self.mor_dom[m]], obj_new[self.mor_cod[m]], self.mor_labels[m], m),
        )
        mor_new = {m: i for i, m in enumerate(mor_order)}
        objects = tuple(self.object_labels[o] for o in obj_order)
        morphisms = tuple(
            (obj_new[self.mor_dom[m]], obj_new[self.mor_cod[m]], self.mor_labels[m])
            for m in mor_order
        )
        compose = frozenset(
            (mor_new[g], mor_new[f], mor_new[gf]) for g, f, gf in self.compose_entries()
        )
        identities = tuple(mor_new[self.identities[o]] for o in obj_order)
        return (objects, morphisms, compose, identities)

    def structurally_equal(self, other: "FiniteCategory") -> bool:
        return self.canonical_key() == other.canonical_key()

    def __repr__(self) -> str:
        return f"FiniteCategory({self.n_objects} objects, {self.n_morphisms} morphisms)"


@dataclass(frozen=True)
class SubobjectClass:
    representative: int
    members: frozenset[int]


@dataclass
class ValidationReport:
    associativity_violations: list[tuple[int, int, int]] = field(default_factory=list)
    identity_violations: list[int] = field(default_factory=list)
    closure_violations: list[tuple[int, int]] = field(default_factory=list)
    missing_compositions: list[tuple[int, int]] = field(default_factory=list)
    non_mono: list[int] = field(default_factory=list)

    @property
    def all_mono(self) -> bool:
        return not self.non_mono

    @property
    def ok(self) -> bool:
        return not (
            self.associativity_violations
            or self.identity_violations
            or self.closure_violations
            or self.missing_compositions
        )

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "all_mono": self.all_mono,
            "associativity_violations": [list(v) for v in self.associativity_violations],
            "identity_violations": list(self.identity_violations),
            "closure_violations": [list(v) for v in self.closure_violations],
            "missing_compositions": [list(v) for v in self.missing_compositions],
            "non_mono": list(self.non_mono),
        }


def validate(cat: FiniteCategory) -> ValidationReport:
    """Check the category axioms exhaustively.

    Violations are collected in the report rather than raised: associativity
    on every composable triple, both identity laws, dom/cod closure of the
    composition table, totality on composable pairs, and the mono property of
    each morphism.
    """
    report = ValidationReport()

    defined = set()
    for g, f, gf in cat.compose_entries():
        defined.add((g, f))
        if not cat.composable(g, f):
            report.closure_violations.append((g, f))
            continue
        if cat.mor_dom[gf] != cat.mor_dom[f] or cat.mor_cod[gf] != cat.mor_cod[g]:
            report.closure_violations.append((g, f))
    for g in range(cat.n_morphisms):
        for f in range(cat.n_morphisms):
            if cat.composable(g, f) and (g, f) not in defined:
                report.missing_compositions.append((g, f))
    if report.closure_violations or report.missing_compositions:
        return report

    for f in range(cat.n_morphisms):
        e_cod = cat.identity(cat.mor_cod[f])
        e_dom = cat.identity(cat.mor_dom[f])
        if cat.compose(e_cod, f) != f or cat.compose(f, e_dom) != f:
            report.identity_violations.append(f)

    for f in range(cat.n_morphisms):
        for g in range(cat.n_morphisms):
            if not cat.composable(g, f):
                continue
            gf = cat.compose(g, f)
            for h in range(cat.n_morphisms):
                if not cat.composable(h, g):
                    continue
                if cat.compose(h, gf) != cat.compose(cat.compose(h, g), f):
                    report.associativity_violations.append((h, g, f))

    for f in range(cat.n_morphisms):
        if not cat.is_mono(f):
            report.non_mono.append(f)

    return report


def product(cat1: FiniteCategory, cat2: FiniteCategory) -> FiniteCategory:
    """Product category: pair objects, pair morphisms, componentwise composition."""
    n2 = cat2.n_objects
    m2 = cat2.n_morphisms

    def obj(o1: int, o2: int) -> int:
        return o1 * n2 + o2

    def mor(f1: int, f2: int) -> int:
        return f1 * m2 + f2

    objects = [
        f"({cat1.object_labels[o1]}*{cat2.object_labels[o2]})"
        for o1 in range(cat1.n_objects)
        for o2 in range(n2)
    ]
    morphisms = []
    for f1 in range(cat1.n_morphisms):
        for f2 in range(m2):
            morphisms.append(
                (
                    obj(cat1.mor_dom[f1], cat2.mor_dom[f2]),
                    obj(cat1.mor_cod[f1], cat2.mor_cod[f2]),
                    f"({cat1.mor_labels[f1]}*{cat2.mor_labels[f2]})",
                )
            )
    compose = {}
    for g1, f1, gf1 in cat1.compose_entries():
        for g2, f2, gf2 in cat2.compose_entries():
            compose[(mor(g1, g2), mor(f1, f2))] = mor(gf1, gf2)
    identities = [
        mor(cat1.identities[o1], cat2.identities[o2])
        for o1 in range(cat1.n_objects)
        for o2 in range(n2)
    ]
    return FiniteCategory(objects, morphisms, compose, identities)


def one_object_category() -> FiniteCategory:
    """The terminal-style category with one object and only its identity."""
    return FiniteCategory(["pt"], [(0, 0, "id")], {(0, 0): 0}, [0])
