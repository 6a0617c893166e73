import csv
import io
import json
import subprocess
import sys

import pytest

from liecohom.cli import RunConfig, build_parser, main, run
from liecohom.driver import betti_numbers
from liecohom.errors import ParseError, ValidationError
from liecohom.fields import GF, QQ
from liecohom.io import (CSV_COLUMNS, algebra_to_document, dumps_report, loads_report,
                         parse_algebra_file, write_algebra_file)
from liecohom.lie import builtin_algebra, make_module


def run_cli(*args):
    out, err = io.StringIO(), io.StringIO()
    ns = build_parser().parse_args(list(args))
    cfg = RunConfig(**{k: v for k, v in vars(ns).items() if k in RunConfig.__dataclass_fields__})
    code = run(cfg, out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("name,param,field", [("borel_sl", 2, QQ), ("sl", 3, QQ), ("heisenberg", 2, GF(7))])
def test_file_roundtrip(tmp_path, name, param, field):
    alg, tag = builtin_algebra(name, param, field)
    path = tmp_path / "alg.json"
    write_algebra_file(path, alg, "adjoint", tag)
    alg2, mod2, tag2 = parse_algebra_file(path)
    assert alg2.brackets == alg.brackets and alg2.basis_names == alg.basis_names
    assert alg2.field == field and tag2 == tag and mod2.kind == "adjoint"


def test_explicit_module_roundtrip(tmp_path):
    alg, tag = builtin_algebra("sl", 2, QQ)
    mod = make_module("explicit", alg, make_module("adjoint", alg).action)
    path = tmp_path / "m.json"
    write_algebra_file(path, alg, mod, tag)
    _, mod2, _ = parse_algebra_file(path)
    assert mod2.action == mod.action


def test_lower_triangular_rejected(tmp_path):
    doc = {"field": "Q", "dim": 2, "brackets": [{"i": 1, "j": 0, "terms": [[1, "1"]]}]}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    with pytest.raises(ParseError, match="upper-triangular bracket list required"):
        parse_algebra_file(path)


def test_json_syntax_error_has_position(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"field": "Q",\n "dim": 2,,}')
    with pytest.raises(ParseError, match="line 2"):
        parse_algebra_file(path)


def test_scalar_must_be_string(tmp_path):
    doc = {"field": "Q", "dim": 2, "brackets": [{"i": 0, "j": 1, "terms": [[1, 1]]}]}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    with pytest.raises(ParseError, match=r"brackets\[0\]\.terms\[0\]"):
        parse_algebra_file(path)


def test_perturbed_adjoint_names_pair(tmp_path):
    alg, tag = builtin_algebra("borel_sl", 2, QQ)
    doc = algebra_to_document(alg, make_module("adjoint", alg), tag)
    doc["module"] = {"dim": 2, "action": [[[QQ.format(x) for x in row] for row in A]
                                          for A in make_module("adjoint", alg).action]}
    doc["module"]["action"][1][1][1] = "1"
    path = tmp_path / "pert.json"
    path.write_text(json.dumps(doc))
    with pytest.raises(ValidationError, match=r"\(0, 1\)"):
        parse_algebra_file(path)
    code, _, err = run_cli("betti", "--file", str(path))
    assert code == 3 and "(0, 1)" in err


def test_jacobi_failure_exit_code(tmp_path):
    doc = {"field": "Q", "dim": 3, "brackets": [{"i": 0, "j": 1, "terms": [[2, "1"]]},
                                                {"i": 0, "j": 2, "terms": [[0, "1"]]}]}
    path = tmp_path / "j.json"
    path.write_text(json.dumps(doc))
    code, _, err = run_cli("betti", "--file", str(path))
    assert code == 3 and "Jacobi" in err


def test_exit_codes():
    assert run_cli("betti", "--algebra", "nope:3")[0] == 2
    assert run_cli("betti", "--algebra", "sl:2", "--field", "Fp:4")[0] == 2
    assert run_cli("betti", "--algebra", "nilpotent-sl:3", "--reduce", "cartan")[0] == 2
    assert run_cli("betti", "--algebra", "sl:2", "--reduce", "sigma:0,1,0")[0] == 3
    assert run_cli("betti", "--algebra", "sl:2")[0] == 0
    assert run_cli("verify", "--suite", "borel", "--N", "3", "--field", "Fp:2")[0] == 0
    with pytest.raises(SystemExit) as exc:
        main(["betti"])
    assert exc.value.code == 2


def test_cli_examples():
    code, out, _ = run_cli("betti", "--algebra", "borel-sl:3", "--field", "Q", "--reduce", "cartan",
                           "--format", "json")
    assert code == 0
    assert [r["betti"] for r in json.loads(out)["per_n"]] == [1, 2, 1, 0, 0, 0]
    code, out, _ = run_cli("verify", "--suite", "borel", "--N", "4", "--field", "Fp:5")
    assert code == 0 and "[PASS] borel" in out
    code, out, _ = run_cli("verify", "--suite", "d2", "--algebra", "heisenberg", "--field", "Q")
    assert code == 0 and "[PASS] d2" in out


def test_verify_all_suites():
    code, out, _ = run_cli("verify", "--suite", "all", "--algebra", "borel-sl:3", "--N", "3")
    assert code == 0
    assert out.count("[PASS]") == 7


def test_gradedbetti_cli():
    code, out, _ = run_cli("gradedbetti", "--algebra", "borel-sl:3", "--n", "2", "--format", "json")
    assert code == 0
    assert json.loads(out)["graded_betti"] == [{"n": 2, "degree": ["0", "0"], "betti": 1}]


def test_json_report_roundtrip_and_determinism(tmp_path):
    alg, tag = builtin_algebra("heisenberg", 1, QQ)
    rep = betti_numbers(alg, make_module("trivial", alg), witness=True)
    back = loads_report(dumps_report(rep))
    assert back.same_content(rep)
    paths = [tmp_path / f"r{i}.json" for i in range(2)]
    for p in paths:
        assert run_cli("betti", "--algebra", "borel-sl:3", "--reduce", "cartan", "--witness",
                       "--json", str(p))[0] == 0
    docs = [json.loads(p.read_text()) for p in paths]
    for d in docs:
        d.pop("timings_ms")
    assert json.dumps(docs[0]) == json.dumps(docs[1])
    assert set(docs[0]) >= {"config", "basis_order", "per_n", "representatives"}


def test_csv_columns(tmp_path):
    path = tmp_path / "r.csv"
    assert run_cli("betti", "--algebra", "sl:2", "--csv", str(path))[0] == 0
    rows = list(csv.reader(path.open()))
    assert tuple(rows[0]) == CSV_COLUMNS
    assert [int(r[-1]) for r in rows[1:]] == [1, 0, 0, 1]


def test_bench_cli():
    code, out, _ = run_cli("bench", "--algebra", "borel-sl:3", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["betti_agree"]
    assert [r["dimC_reduced"] for r in doc["rows"]] == [1, 2, 1, 0, 0, 0]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "liecohom", "betti", "--algebra", "abelian:2"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "betti: 1 2 1" in res.stdout
