import json

import pytest

from catramsey.cli import main
from catramsey.generators import UniverseSpec, generate
from catramsey import io as catio
from conftest import obj


@pytest.fixture(scope="module")
def lo6_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("cats") / "lo6.txt"
    catio.dump_category_file(generate(UniverseSpec("LO", 6)), str(path))
    return str(path)


@pytest.fixture(scope="module")
def inj3_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("cats") / "inj3.txt"
    catio.dump_category_file(generate(UniverseSpec("Inj", 3)), str(path))
    return str(path)


@pytest.fixture(scope="module")
def surj3_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("cats") / "surj3.txt"
    catio.dump_category_file(generate(UniverseSpec("Surj", 3)), str(path))
    return str(path)


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out.strip()
    return code, json.loads(out) if out else None


def test_gen_and_validate(tmp_path, capsys):
    out = str(tmp_path / "lo3.txt")
    code, doc = _run(capsys, "gen", "--family", "lo", "--max", "3", "--out", out)
    assert code == 0
    assert doc["objects"] == 3
    code, doc = _run(capsys, "validate", "--cat", out)
    assert code == 0
    assert doc["ok"] is True


def test_hom_and_aut(inj3_file, capsys, inj3):
    a1, a2 = obj(inj3, "Inj", 1), obj(inj3, "Inj", 2)
    code, doc = _run(capsys, "hom", "--cat", inj3_file, "--A", str(a1), "--B", str(a2))
    assert code == 0 and doc["count"] == 2
    code, doc = _run(capsys, "aut", "--cat", inj3_file, "--A", str(a2))
    assert code == 0 and doc["count"] == 2


def test_arrow_holds_and_fails(lo6_file, capsys, lo6):
    A, B = obj(lo6, "LO", 2), obj(lo6, "LO", 3)
    code, doc = _run(
        capsys, "arrow", "--cat", lo6_file, "--A", str(A), "--B", str(B), "--C", str(obj(lo6, "LO", 6)), "--k", "2", "--t", "1"
    )
    assert code == 0 and doc["holds"] is True
    assert "elapsed_ms" in doc
    code, doc = _run(
        capsys, "arrow", "--cat", lo6_file, "--A", str(A), "--B", str(B), "--C", str(obj(lo6, "LO", 5)), "--k", "2", "--t", "1"
    )
    assert code == 0 and doc["holds"] is False
    assert doc["witness"] is not None


def test_arrow_budget_inconclusive(lo6_file, capsys, lo6):
    A, B, C = obj(lo6, "LO", 2), obj(lo6, "LO", 3), obj(lo6, "LO", 6)
    code, doc = _run(
        capsys, "--budget", "0", "arrow", "--cat", lo6_file, "--A", str(A), "--B", str(B), "--C", str(C)
    )
    assert code == 2
    assert doc["holds"] is None


def test_arrow_dual_routes(surj3_file, capsys):
    for flag in ("--dual", "--native-dual"):
        code, doc = _run(capsys, "arrow", "--cat", surj3_file, "--A", "2", "--B", "1", "--C", "0", "--k", "2", "--t", "1", flag)
        assert code == 0
        assert doc["holds"] in (True, False)


def test_seed_is_echoed(lo6_file, capsys, lo6):
    A = obj(lo6, "LO", 1)
    code, doc = _run(capsys, "--seed", "7", "aut", "--cat", lo6_file, "--A", str(A))
    assert code == 0
    assert doc["seed"] == 7


def test_degree(inj3_file, capsys, inj3):
    a2 = obj(inj3, "Inj", 2)
    code, doc = _run(capsys, "degree", "--cat", inj3_file, "--A", str(a2), "--mode", "m")
    assert code == 0
    assert (doc["lower"], doc["upper"]) == (2, 2)
    assert doc["scope"] == "universe-relative"
    code, doc = _run(capsys, "degree", "--cat", inj3_file, "--A", str(a2), "--mode", "s")
    assert code == 0 and doc["upper"] == 1


def test_essential_with_crosscheck(inj3_file, capsys, inj3):
    a1, a2, a3 = obj(inj3, "Inj", 1), obj(inj3, "Inj", 2), obj(inj3, "Inj", 3)
    code, doc = _run(
        capsys, "essential", "--cat", inj3_file, "--A", str(a1), "--B", str(a2), "--ambient", str(a3), "--t", "2", "--crosscheck"
    )
    assert code == 0
    assert doc["crosscheck"]["status"] == "ok"
    assert doc["exists"] == doc["crosscheck"]["essential_exists"]


def test_expansion_check_and_additivity(tmp_path, capsys):
    from catramsey.generators import forgetful_LO_to_Inj

    U = forgetful_LO_to_Inj(3)
    path = str(tmp_path / "forgetful.txt")
    catio.dump_functor_file(U, path)
    code, doc = _run(capsys, "expansion", "check", "--functor", path)
    assert code == 0
    assert doc["status"] == "ok"
    down = U.downstairs
    a2, a3 = obj(down, "Inj", 2), obj(down, "Inj", 3)
    code, doc = _run(
        capsys,
        "expansion", "verify-additivity", "--functor", path,
        "--A", str(a2), "--bpool", str(a2), "--universe", f"{a2},{a3}",
    )
    assert code == 0
    assert doc["downstairs_degree"] == doc["sum"] == 2


def test_expansion_build_coloring(tmp_path, capsys):
    base_path = str(tmp_path / "inj2.txt")
    base = generate(UniverseSpec("Inj", 2))
    catio.dump_category_file(base, base_path)
    a1 = obj(base, "Inj", 1)
    out = str(tmp_path / "coloring.txt")
    code, doc = _run(
        capsys, "expansion", "build-coloring", "--base", base_path, "--degrees", f"{a1}=2", "--out", out
    )
    assert code == 0
    assert doc["written"] == out
    U = catio.load_functor_file(out)
    assert U.validate_functor()["status"] == "ok"


def test_verify_aut_bridge_and_dual(inj3_file, surj3_file, capsys, inj3):
    a2 = obj(inj3, "Inj", 2)
    code, doc = _run(capsys, "verify", "aut-bridge", "--cat", inj3_file, "--A", str(a2))
    assert code == 0
    assert doc["morphism_degree"] == doc["aut"] * doc["subobject_degree"]
    code, doc = _run(capsys, "verify", "dual", "--cat", surj3_file, "--A", "0")
    assert code == 0
    assert doc["status"] == "ok"


def test_verify_product(inj3_file, tmp_path, capsys, inj3):
    lo2_path = str(tmp_path / "lo2.txt")
    lo2 = generate(UniverseSpec("LO", 2))
    catio.dump_category_file(lo2, lo2_path)
    code, doc = _run(
        capsys, "verify", "product", "--cat1", inj3_file, "--cat2", lo2_path,
        "--A1", str(obj(inj3, "Inj", 2)), "--A2", str(obj(lo2, "LO", 1)),
    )
    assert code == 0
    assert doc["product_degree_upper"] <= doc["bound"]


def test_matrix_default(capsys, monkeypatch):
    monkeypatch.delenv("CATRAMSEY_CACHE_DIR", raising=False)
    code, doc = _run(capsys, "matrix")
    assert code == 0
    assert doc["status"] == "ok"


def test_usage_errors(capsys, tmp_path):
    assert main([]) == 3
    assert main(["arrow", "--cat", "/nonexistent", "--A", "0", "--B", "0", "--C", "0"]) == 3
    bad = tmp_path / "bad.txt"
    bad.write_text("objects: x\n")
    assert main(["validate", "--cat", str(bad)]) == 3
    capsys.readouterr()
