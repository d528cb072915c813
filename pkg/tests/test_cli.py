import io as stdio
import json
import os
import subprocess
import sys

import pytest

import samples
from excycles.cli import RunConfig, main

A_JSON = samples.data_path("A.json")


def run(*argv):
    out = stdio.StringIO()
    code = main([str(a) for a in argv], out=out)
    return code, out.getvalue()


def write(path, doc):
    path.write_text(json.dumps(doc))
    return str(path)


def projective(tmp_path, algebra, vertex, name=None):
    doc = {"algebra": algebra, "kind": "projective", "vertex": vertex}
    if name:
        doc["name"] = name
    return write(tmp_path / f"P{vertex}.json", doc)


def test_run_config_bounds():
    with pytest.raises(ValueError):
        RunConfig(cutoff=0)
    with pytest.raises(ValueError):
        RunConfig(trials=0)


@pytest.mark.parametrize("name, dim, gor", [
    ("A.json", 12, "gorenstein (left 0, right 0)"),
    ("Q3.json", 39, "gorenstein (left 1, right 1)"),
    ("local_square_zero.json", 3, "not-gorenstein (left inf, right inf)"),
])
def test_algebra_check(name, dim, gor):
    code, text = run("algebra-check", samples.data_path(name))
    assert code == 0
    assert f"dim: {dim}" in text and f"gorenstein: {gor}" in text


def test_non_associative_structure_exits_2(tmp_path):
    # x*y = x, x*x = y and everything else zero: (x x) x = 0 but x (x x) = x
    doc = {"structure": {"dim": 3, "labels": ["1", "x", "y"], "unit": {"1": 1}, "constants": [
        ["1", "1", "1", 1], ["1", "x", "x", 1], ["x", "1", "x", 1], ["1", "y", "y", 1],
        ["y", "1", "y", 1], ["x", "y", "x", 1], ["x", "x", "y", 1]]}}
    code, text = run("algebra-check", write(tmp_path / "bad.json", doc))
    assert code == 2
    assert "associativity: FAIL at (x, x, x)" in text


@pytest.mark.parametrize("doc, where", [
    ({"structure": {"labels": ["1"], "unit": {"1": 1}, "constants": []}}, "structure"),
    ({"structure": {"dim": 1, "labels": ["1"], "unit": {"1": 1}, "constants": [["1", "1", "z", 1]]}},
     "structure.constants[0]"),
    ({"structure": {"dim": 1, "labels": ["1"], "unit": {"1": "1/0"}, "constants": []}}, "structure.unit"),
    ({"quiver": {"vertices": ["1"], "arrows": [["1", "2", "a"]]}}, "quiver"),
    ({"name": "nothing"}, "needs a 'quiver' or 'structure'"),
])
def test_schema_errors_name_the_field(tmp_path, capsys, doc, where):
    code, _ = run("algebra-check", write(tmp_path / "alg.json", doc))
    assert code == 1
    assert where in capsys.readouterr().err


def test_unreadable_and_invalid_json(tmp_path, capsys):
    assert run("algebra-check", tmp_path / "missing.json")[0] == 1
    (tmp_path / "broken.json").write_text("{ not json")
    assert run("algebra-check", tmp_path / "broken.json")[0] == 1
    assert "invalid JSON" in capsys.readouterr().err


def test_usage_errors_exit_1():
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 1
    assert run("verify-cycle", samples.data_path("A.cycle.json"), "--field", "fp:4")[0] == 1


def test_module_file_violating_axioms(tmp_path, capsys):
    doc = {"algebra": A_JSON, "dim": 1, "action": {lab: [[0]] for lab in
                                                    ["e1", "e2", "e3", "e4", "a1", "a2", "a3", "a4"]}}
    m = write(tmp_path / "m.json", doc)
    assert run("ext", m, m)[0] == 1
    assert "unit does not act as the identity" in capsys.readouterr().err


def test_ext_tables(tmp_path):
    p4, p2 = projective(tmp_path, A_JSON, "4"), projective(tmp_path, A_JSON, "2")
    for m, n in ((p4, p4), (p4, p2)):
        code, text = run("ext", m, n, "--tmax", "3")
        assert code == 0
        assert text.splitlines()[1:] == ["0\t1", "1\t0", "2\t0", "3\t0"]


def test_ext_over_ground_field(tmp_path):
    k = samples.data_path("k.json")
    s = write(tmp_path / "s.json", {"algebra": k, "kind": "simple", "vertex": "k"})
    code, text = run("ext", s, s, "--tmax", "2")
    assert code == 0 and text.splitlines()[1:] == ["0\t1", "1\t0", "2\t0"]


def test_ext_marks_cutoff(tmp_path):
    s = write(tmp_path / "s.json", {"algebra": A_JSON, "kind": "simple", "vertex": "1"})
    code, text = run("ext", s, s, "--tmax", "4", "--cutoff", "2")
    assert code == 0
    assert text.splitlines()[-1] == "4\t∞?"


def test_ext_algebra_mismatch(tmp_path):
    p = projective(tmp_path, A_JSON, "4")
    q = projective(tmp_path, samples.data_path("B.json"), "1'")
    assert run("ext", p, q)[0] == 1


def test_verify_cycle_certificate(tmp_path):
    code, text = run("verify-cycle", samples.data_path("A.cycle.json"), "--out", tmp_path)
    assert code == 0
    assert "PASS degrees (0, 0)" in text
    cert = json.loads((tmp_path / "certificate.json").read_text())
    assert cert["verdict"] == "PASS" and cert["degrees"] == [0, 0]
    assert cert["config"] == {"field": "rational", "cutoff": 32, "seed": 0, "trials": 8, "fast": False}
    assert [name for name, _ in cert["inputs"]] == ["A.cycle.json", "A.json"]
    assert len(cert["serre_witnesses"]) == 2


def test_reordered_cycle_exit_2():
    code, text = run("verify-cycle", samples.data_path("B_reordered.cycle.json"))
    assert code == 2
    cert = json.loads(text[:text.rindex("}") + 1])
    assert cert["failure"]["kind"] == "wrong-isomorphism-class"
    assert "FAIL wrong-isomorphism-class" in text


def test_inconclusive_is_exit_2(tmp_path, capsys):
    s = write(tmp_path / "s.json", {"algebra": A_JSON, "kind": "simple", "vertex": "1"})
    assert run("serre", s, "--cutoff", "3")[0] == 2
    assert "INCONCLUSIVE" in capsys.readouterr().err


def test_serre_and_resolve(tmp_path):
    p4 = projective(tmp_path, A_JSON, "4")
    code, text = run("serre", p4)
    assert code == 0 and "degree 0, dim 3" in text
    s = write(tmp_path / "s.json", {"algebra": A_JSON, "kind": "simple", "vertex": "1"})
    code, text = run("resolve", s, "--cutoff", "3")
    assert code == 0
    assert text.splitlines() == ["P_0 = P(1)", "P_1 = P(2)", "P_2 = P(4)", "P_3 = P(1)",
                                 "length: exceeded-cutoff"]


def test_product_artifacts(tmp_path):
    code, text = run("product", samples.data_path("A.cycle.json"), samples.data_path("B.cycle.json"),
                     "--out", tmp_path, "--field", "fp:101")
    assert code == 0
    assert "exceptional 4-cycle: PASS degrees (0, 0, 0, 1) expected (0, 0, 0, 1)" in text
    assert "triangular algebra: dim 39 (A 12, N 9, B 18)" in text
    for rel in ("lambda.json", "bimodule.json", "product.cycle.json", "certificate.json",
                "sequence/m1.json", "sequence/m4.json"):
        assert (tmp_path / rel).exists()
    cert = json.loads((tmp_path / "certificate.json").read_text())
    assert cert["glued_is_projective"] is True
    assert cert["gorenstein_criterion"] == ["0", "0"]
    # the written product cycle reloads and verifies on its own
    code, text = run("verify-cycle", tmp_path / "product.cycle.json", "--field", "fp:101")
    assert code == 0 and "PASS degrees (0, 0, 0, 1)" in text


@pytest.mark.parametrize("flag, dims", [("--extend", "A 12, N 3, B 1"), ("--coextend", "A 1, N 3, B 12")])
def test_extend_flags(flag, dims):
    code, text = run("product", samples.data_path("A.cycle.json"), flag)
    assert code == 0
    assert f"dim 16 ({dims})" in text
    assert "exceptional 3-cycle: PASS degrees (0, 0, 1)" in text


def test_kk_product():
    kk = samples.data_path("kk.cycle.json")
    code, text = run("product", kk, kk)
    assert code == 0 and "exceptional 3-cycle: PASS degrees (0, 0, 1)" in text


def test_entry_point_runs_as_module():
    r = subprocess.run([sys.executable, "-m", "excycles", "algebra-check", A_JSON],
                       capture_output=True, text=True, check=False)
    assert r.returncode == 0 and "dim: 12" in r.stdout


def test_certificates_are_byte_identical(tmp_path):
    outs = []
    for k in range(2):
        d = tmp_path / f"run{k}"
        r = subprocess.run([sys.executable, "-m", "excycles", "verify-cycle",
                            samples.data_path("B.cycle.json"), "--out", str(d)],
                           capture_output=True, check=False, cwd=os.path.dirname(A_JSON))
        assert r.returncode == 0
        outs.append((d / "certificate.json").read_bytes())
    assert outs[0] == outs[1]
