import pytest

from catramsey.core import (
    CategoryError,
    FiniteCategory,
    one_object_category,
    product,
    validate,
)
from catramsey.generators import UniverseSpec, generate
from conftest import obj


def test_one_object_category_valid():
    cat = one_object_category()
    report = validate(cat)
    assert report.ok
    assert report.all_mono


def test_lo3_valid_and_mono():
    cat = generate(UniverseSpec("LO", 3))
    report = validate(cat)
    assert report.ok
    assert report.all_mono


def test_identity_law_violation_flagged():
    # compose(id, e) = id instead of e breaks the left identity law
    cat = FiniteCategory(
        ["x"],
        [(0, 0, "id"), (0, 0, "e")],
        {(0, 0): 0, (0, 1): 0, (1, 0): 1, (1, 1): 1},
        identities=[0],
    )
    report = validate(cat)
    assert not report.ok
    assert 1 in report.identity_violations


def test_missing_composition_detected():
    cat = FiniteCategory(["x"], [(0, 0, "id"), (0, 0, "e")], {(0, 0): 0, (0, 1): 1, (1, 0): 1}, identities=[0])
    report = validate(cat)
    assert report.missing_compositions == [(1, 1)]


def test_hom_counts(lo6, inj3):
    assert len(lo6.hom(obj(lo6, "LO", 2), obj(lo6, "LO", 3))) == 3
    assert len(inj3.hom(obj(inj3, "Inj", 2), obj(inj3, "Inj", 3))) == 6
    for cat in (lo6, inj3):
        for a in range(cat.n_objects):
            assert cat.identity(a) in cat.hom(a, a)


def test_automorphism_groups(lo6, inj3):
    for s in range(1, 7):
        assert lo6.automorphisms(obj(lo6, "LO", s)) == (lo6.identity(obj(lo6, "LO", s)),)
    assert len(inj3.automorphisms(obj(inj3, "Inj", 2))) == 2
    assert len(inj3.automorphisms(obj(inj3, "Inj", 3))) == 6
    # group axioms: closure and inverses under composition
    a3 = obj(inj3, "Inj", 3)
    auts = set(inj3.automorphisms(a3))
    for g in auts:
        assert any(inj3.compose(g, h) == inj3.identity(a3) for h in auts)
        for h in auts:
            assert inj3.compose(g, h) in auts


def test_subobject_classes(inj3, lo6):
    a2, b3 = obj(inj3, "Inj", 2), obj(inj3, "Inj", 3)
    classes = inj3.subobject_classes(a2, b3)
    assert len(classes) == 3
    assert all(len(c.members) == 2 for c in classes)
    covered = set().union(*(c.members for c in classes))
    assert covered == set(inj3.hom(a2, b3))
    # rigid objects give singleton classes
    la, lb = obj(lo6, "LO", 2), obj(lo6, "LO", 4)
    classes = lo6.subobject_classes(la, lb)
    assert len(classes) == len(lo6.hom(la, lb))
    # empty hom-set gives no classes
    assert inj3.subobject_classes(b3, a2) == ()


def test_subobject_classes_requires_mono(surj3):
    with pytest.raises(CategoryError):
        surj3.subobject_classes(1, 0)


def test_opposite_involution(surj3, lo4):
    for cat in (surj3, lo4):
        assert cat.opposite().opposite().structurally_equal(cat)


def test_opposite_hom_counts(lo4):
    op = lo4.opposite()
    for a in range(lo4.n_objects):
        for b in range(lo4.n_objects):
            assert len(op.hom(a, b)) == len(lo4.hom(b, a))


def test_opposite_of_one_object_is_itself():
    cat = one_object_category()
    assert cat.opposite().structurally_equal(cat)


def test_product_hom_counts():
    lo3 = generate(UniverseSpec("LO", 3))
    prod = product(lo3, lo3)
    assert validate(prod).ok
    n = lo3.n_objects
    for a1 in range(n):
        for a2 in range(n):
            for b1 in range(n):
                for b2 in range(n):
                    got = len(prod.hom(a1 * n + a2, b1 * n + b2))
                    assert got == len(lo3.hom(a1, b1)) * len(lo3.hom(a2, b2))


def test_product_with_unit():
    lo3 = generate(UniverseSpec("LO", 3))
    unit = one_object_category()
    prod = product(lo3, unit)
    assert prod.n_objects == lo3.n_objects
    assert prod.n_morphisms == lo3.n_morphisms
    assert validate(prod).ok


def test_product_aut_multiplies():
    inj2 = generate(UniverseSpec("Inj", 2))
    lo2 = generate(UniverseSpec("LO", 2))
    prod = product(inj2, lo2)
    for a1 in range(inj2.n_objects):
        for a2 in range(lo2.n_objects):
            pair = a1 * lo2.n_objects + a2
            assert len(prod.automorphisms(pair)) == len(inj2.automorphisms(a1)) * len(lo2.automorphisms(a2))


def test_surj_morphisms_epi_not_all_mono(surj3):
    assert all(surj3.is_epi(m) for m in range(surj3.n_morphisms))
    assert not surj3.all_mono
    op = surj3.opposite()
    assert all(op.is_mono(m) for m in range(op.n_morphisms))


def test_unknown_object_rejected(lo4):
    with pytest.raises(CategoryError):
        lo4.hom(0, 99)
