import itertools

import pytest
from hypothesis import given, settings, strategies as st

from catramsey.arrows import (
    ArrowQuery,
    check_arrow,
    check_arrow_dual,
    check_arrow_native_dual,
    ramsey_property_check,
)
from catramsey.core import CategoryError
from catramsey.generators import UniverseSpec, generate
from conftest import obj, oracle_arrow


def test_classical_lo_instances(lo6):
    A, B = obj(lo6, "LO", 2), obj(lo6, "LO", 3)
    holds = check_arrow(lo6, ArrowQuery(A, B, obj(lo6, "LO", 6), 2, 1))
    assert holds.holds is True
    fails = check_arrow(lo6, ArrowQuery(A, B, obj(lo6, "LO", 5), 2, 1))
    assert fails.holds is False
    assert fails.witness is not None
    # replay independently: no w may see a single color
    color = dict(zip(fails.domain, fails.witness))
    for w in lo6.hom(B, obj(lo6, "LO", 5)):
        seen = {color[lo6.compose(w, f)] for f in lo6.hom(A, B)}
        assert len(seen) > 1


def test_pigeonhole_inj(inj3):
    v = check_arrow(inj3, ArrowQuery(obj(inj3, "Inj", 1), obj(inj3, "Inj", 2), obj(inj3, "Inj", 3), 2, 1))
    assert v.holds is True


def test_t_at_least_k_always_holds(lo4):
    A, B = obj(lo4, "LO", 1), obj(lo4, "LO", 2)
    v = check_arrow(lo4, ArrowQuery(A, B, obj(lo4, "LO", 3), 2, 2))
    assert v.holds is True


def test_oracle_agreement_lo(lo4):
    for a, b, c in itertools.product(range(lo4.n_objects), repeat=3):
        for k, t in ((2, 1), (2, 2), (3, 2)):
            got = check_arrow(lo4, ArrowQuery(a, b, c, k, t))
            want, _ = oracle_arrow(lo4, a, b, c, k, t)
            assert got.holds == want, (a, b, c, k, t)


def test_oracle_agreement_inj(inj3):
    for a, b, c in itertools.product(range(inj3.n_objects), repeat=3):
        for k, t in ((2, 1), (2, 2)):
            for mode in ("morphism", "subobject"):
                got = check_arrow(inj3, ArrowQuery(a, b, c, k, t, mode))
                want, _ = oracle_arrow(inj3, a, b, c, k, t, mode)
                assert got.holds == want, (a, b, c, k, t, mode)


def test_oracle_agreement_surj(surj3):
    for a, b, c in itertools.product(range(surj3.n_objects), repeat=3):
        for k, t in ((2, 1), (2, 2)):
            got = check_arrow(surj3, ArrowQuery(a, b, c, k, t))
            want, _ = oracle_arrow(surj3, a, b, c, k, t)
            assert got.holds == want, (a, b, c, k, t)


def test_monotonicity_in_t_and_k(inj4):
    queries = [
        (a, b, c)
        for a, b, c in itertools.product(range(3), range(3), range(inj4.n_objects))
    ]
    for a, b, c in queries:
        previous = None
        for t in (1, 2, 3):
            v = check_arrow(inj4, ArrowQuery(a, b, c, 3, t))
            if previous is True:
                assert v.holds is True  # holds(k, t) implies holds(k, t+1)
            previous = v.holds
        fails_at_2 = check_arrow(inj4, ArrowQuery(a, b, c, 2, 1)).holds is False
        if fails_at_2:
            assert check_arrow(inj4, ArrowQuery(a, b, c, 3, 1)).holds is False


def test_vacuous_edges(inj3):
    a2, b3, c1 = obj(inj3, "Inj", 2), obj(inj3, "Inj", 3), obj(inj3, "Inj", 1)
    # hom(B, C) empty and the domain is >t-colorable: fails
    v = check_arrow(inj3, ArrowQuery(a2, b3, a2, 2, 1))
    assert v.holds is False
    # hom(B, C) and the domain both empty: holds
    v = check_arrow(inj3, ArrowQuery(a2, b3, c1, 2, 1))
    assert v.holds is True


def test_subobject_mode_needs_mono(surj3):
    with pytest.raises(CategoryError):
        check_arrow(surj3, ArrowQuery(1, 1, 2, 2, 1, "subobject"))


def test_query_validation(lo4):
    with pytest.raises(CategoryError):
        ArrowQuery(0, 1, 2, 1, 1)
    with pytest.raises(CategoryError):
        ArrowQuery(0, 1, 2, 2, 0)
    with pytest.raises(CategoryError):
        ArrowQuery(0, 1, 2, 2, 1, "weird")


def test_dual_route_equals_opposite_route(surj3):
    for a, b, c in itertools.product(range(surj3.n_objects), repeat=3):
        for t in (1, 2):
            q = ArrowQuery(a, b, c, 2, t)
            via_opposite = check_arrow_dual(surj3, q)
            native = check_arrow_native_dual(surj3, q)
            assert via_opposite.holds == native.holds
            assert via_opposite.witness == native.witness


def test_lo_failure_same_via_both_dual_routes(lo6):
    # the opposite of LO reverses the failing instance; both routes agree
    A, B, C = obj(lo6, "LO", 2), obj(lo6, "LO", 3), obj(lo6, "LO", 5)
    q = ArrowQuery(A, B, C, 2, 1)
    assert check_arrow_dual(lo6, q).holds == check_arrow_native_dual(lo6, q).holds


def test_mode_bridge_implication(inj3):
    # subobject verdict at t with k lifted implies morphism verdict at
    # t * |Aut(A)| with the same k
    a2 = obj(inj3, "Inj", 2)
    n_aut = len(inj3.automorphisms(a2))
    for b in range(inj3.n_objects):
        for c in range(inj3.n_objects):
            for k, t in ((2, 1), (2, 2)):
                sub = check_arrow(inj3, ArrowQuery(a2, b, c, k, t, "subobject"))
                if sub.holds is True:
                    mor = check_arrow(inj3, ArrowQuery(a2, b, c, k, t * n_aut))
                    assert mor.holds is True


def test_determinism_across_threads(lo6):
    A, B, C = obj(lo6, "LO", 2), obj(lo6, "LO", 3), obj(lo6, "LO", 5)
    verdicts = [check_arrow(lo6, ArrowQuery(A, B, C, 2, 1), threads=th) for th in (1, 4, 8)]
    assert len({(v.holds, tuple(v.witness), v.nodes) for v in verdicts}) == 1


def test_budget_cap_gives_inconclusive(lo6):
    # a holding instance cannot be certified without exhausting the tree, so
    # a starved budget must come back inconclusive, never as a guess
    A, B, C = obj(lo6, "LO", 2), obj(lo6, "LO", 3), obj(lo6, "LO", 6)
    v = check_arrow(lo6, ArrowQuery(A, B, C, 2, 1), budget=0)
    assert v.holds is None
    assert "budget" in v.note


def test_ramsey_property_check(lo6, inj4):
    # universes restricted to objects receiving B, so holds cannot be vacuous
    A, B = obj(lo6, "LO", 2), obj(lo6, "LO", 3)
    universe = [c for c in range(lo6.n_objects) if lo6.hom(B, c)]
    rep = ramsey_property_check(lo6, [(A, B)], 2, universe)
    assert rep.cells[0]["witness_C"] == obj(lo6, "LO", 6)
    a1, b2 = obj(inj4, "Inj", 1), obj(inj4, "Inj", 2)
    universe = [c for c in range(inj4.n_objects) if inj4.hom(b2, c)]
    rep = ramsey_property_check(inj4, [(a1, b2)], 2, universe)
    assert rep.cells[0]["witness_C"] == obj(inj4, "Inj", 3)
    # a pair with a single endomorphism is its own witness
    l1 = obj(lo6, "LO", 1)
    rep = ramsey_property_check(lo6, [(l1, l1)], 2, [l1])
    assert rep.cells[0]["witness_C"] == l1
