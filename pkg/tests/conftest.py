"""Shared fixtures and independent brute-force oracles.

The oracles re-derive everything from the category tables with plain loops
and exhaustive enumeration, deliberately sharing no code with the search
engine they check.
"""

from __future__ import annotations

import itertools

import pytest

from catramsey.core import FiniteCategory
from catramsey.generators import UniverseSpec, generate, object_of_size


def oracle_arrow(cat: FiniteCategory, A: int, B: int, C: int, k: int, t: int, mode: str = "morphism"):
    """Exhaustively test every coloring; returns (holds, witness_or_None)."""
    hom_ac = [m for m in range(cat.n_morphisms) if cat.mor_dom[m] == A and cat.mor_cod[m] == C]
    hom_ab = [m for m in range(cat.n_morphisms) if cat.mor_dom[m] == A and cat.mor_cod[m] == B]
    hom_bc = [m for m in range(cat.n_morphisms) if cat.mor_dom[m] == B and cat.mor_cod[m] == C]
    if mode == "morphism":
        items = hom_ac
        item_of = {m: i for i, m in enumerate(items)}
    else:
        auts = cat.automorphisms(A)
        item_of = {}
        items = []
        for f in hom_ac:
            if f in item_of:
                continue
            cls = {cat.compose(f, a) for a in auts}
            for g in cls:
                item_of[g] = len(items)
            items.append(f)
    bundles = [{item_of[cat.compose(w, f)] for f in hom_ab} for w in hom_bc]

    if not hom_bc:
        if min(k, len(items)) <= t:
            return True, None
        return False, [i % k for i in range(len(items))]
    for coloring in itertools.product(range(k), repeat=len(items)):
        if all(len({coloring[i] for i in b}) > t for b in bundles):
            return False, list(coloring)
    return True, None


def oracle_degree_upper(cat, A, mode, k_max, B_pool, C_universe):
    """Least t such that every (B, k) has a witnessing C, by raw enumeration."""
    for t in range(1, k_max + 1):
        if all(
            any(oracle_arrow(cat, A, B, C, k, t, mode)[0] for C in C_universe)
            for B in B_pool
            for k in range(2, k_max + 1)
        ):
            return t
    return None


@pytest.fixture(scope="session")
def lo6():
    return generate(UniverseSpec("LO", 6))


@pytest.fixture(scope="session")
def lo4():
    return generate(UniverseSpec("LO", 4))


@pytest.fixture(scope="session")
def inj3():
    return generate(UniverseSpec("Inj", 3))


@pytest.fixture(scope="session")
def inj4():
    return generate(UniverseSpec("Inj", 4))


@pytest.fixture(scope="session")
def surj3():
    return generate(UniverseSpec("Surj", 3))


def obj(cat, family, size):
    return object_of_size(cat, family, size)
