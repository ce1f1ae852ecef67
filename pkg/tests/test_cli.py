from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from positroid_tilings import fixtures
from positroid_tilings.cli import main
from positroid_tilings.subdivision import kermit_family


def run(*argv: str) -> tuple[int, list[dict]]:
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, [json.loads(line) for line in out.getvalue().splitlines()]


def test_enumerate_subdivisions():
    code, lines = run("enumerate", "subdivisions", "--k", "1", "--n", "4")
    assert code == 0 and len(lines) == 5
    assert lines[-1]["summary"]["count"] == 4


def test_enumerate_tricolored():
    code, lines = run("enumerate", "subdivisions", "--n", "4", "--tricolored")
    assert code == 0 and lines[-1]["summary"]["count"] == len(lines) - 1 > 6


def test_enumerate_wsimplices():
    code, lines = run("enumerate", "wsimplices", "--k", "1", "--n", "4")
    assert code == 0
    assert sorted(l["w"] for l in lines[:-1]) == sorted(fixtures.load("d_2_4")["words"])


def test_enumerate_extensions_from_chains(tmp_path):
    f = tmp_path / "order.json"
    data = fixtures.load("tricolored_3_2_8")
    f.write_text(json.dumps({"ground": list(range(1, 9)), "chains": data["chains"]}))
    code, lines = run("enumerate", "extensions", "--order-file", str(f))
    assert code == 0 and len(lines) == 379 and lines[-1]["summary"]["count"] == 378


def test_enumerate_extensions_from_subdivision(tmp_path):
    f = tmp_path / "sigma.json"
    f.write_text(json.dumps(fixtures.load("bicolored_2_6")["subdivision"]))
    code, lines = run("enumerate", "extensions", "--order-file", str(f))
    assert code == 0 and lines[-1]["summary"]["count"] == 16


def test_verify_tiling_fixture():
    code, lines = run("verify", "tiling", "--file", fixtures.path("tiling_3_7"), "--check", "all")
    assert code == 0
    rep = lines[-1]
    assert rep["pass"] and rep["size"] == 10 and rep["volume"] == 302
    assert set(rep["checks"]) >= {"cover", "facet-pairing", "arc-balance", "covering", "weights"}


def test_verify_tiling_negative_control(tmp_path):
    f = tmp_path / "broken.json"
    f.write_text(json.dumps({"k": 2, "n": 6, "tiles": [s.to_json() for s in kermit_family(6, 2, 1)[1:]]}))
    code, lines = run("verify", "tiling", "--file", str(f))
    assert code == 1
    assert lines[-1]["failure"] == "uncovered" and "witness" in lines[-1]


def test_verify_identities():
    code, lines = run("verify", "identities", "--family", "u1", "--n", "6", "--trials", "5", "--seed", "7")
    assert code == 0 and lines[-1]["pass"] and len(lines[-1]["trials"]) == 5
    code, lines = run("verify", "identities", "--family", "shuffle", "--n", "5", "--u", "3,1", "--v", "2,4")
    assert code == 0 and lines[-1]["pass"]
    code, lines = run("verify", "identities", "--family", "grey_vanishing",
                      "--file", fixtures.path("tricolored_3_2_8"), "--trials", "2")
    assert code == 0 and lines[-1]["pass"]


def test_verify_identities_from_subdivision_file(tmp_path):
    f = tmp_path / "tau.json"
    f.write_text(json.dumps(fixtures.load("tricolored_3_2_8")["subdivision"]))
    code, lines = run("verify", "identities", "--family", "grey_vanishing", "--file", str(f), "--trials", "2")
    assert code == 0 and lines[-1]["pass"]


def test_verify_chambers(tmp_path):
    code, lines = run("verify", "chambers", "--n", "5")
    assert code == 0 and lines[-1]["failed"] == 0 and lines[-1]["checked"] == 24
    code, lines = run("verify", "chambers", "--file", fixtures.path("chamber_2564137"), "--w", "2,5,6,4,1,3,7")
    assert code == 0 and lines[-1]["verdict"] == "inside"
    code, lines = run("verify", "chambers", "--file", fixtures.path("chamber_2564137"), "--w", "1,2,3,4,5,6,7")
    assert code == 1 and lines[-1]["verdict"] == "outside"
    f = tmp_path / "m.json"
    f.write_text(json.dumps([["1", "1", "2"], ["0", "0", "1"]]))
    code, lines = run("verify", "chambers", "--file", str(f), "--w", "1,2,3")
    assert code == 1 and lines[-1]["verdict"] == "indeterminate"


def test_search_examples():
    code, lines = run("search", "--k", "1", "--n", "4")
    assert code == 0 and all(l["size"] == 2 for l in lines[:-1]) and lines[-1]["summary"]["count"] == 2
    code, lines = run("search", "--k", "2", "--n", "6", "--limit", "1", "--check", "all")
    assert code == 0 and lines[0]["size"] == 6 and lines[0]["volume"] == 66 and lines[0]["checks"]["pass"]
    code, lines = run("search", "--k", "0", "--n", "5")
    assert code == 0 and len(lines) == 2
    assert lines[0]["tiles"] == [{"n": 5, "polygons": [{"color": "white", "vertices": [1, 2, 3, 4, 5]}]}]


def test_search_partial_output_on_node_budget():
    code, lines = run("search", "--k", "2", "--n", "6", "--max-nodes", "3")
    assert code == 3 and lines[-1]["summary"]["partial"] is True


@pytest.mark.parametrize("argv", [
    ["search", "--k", "5", "--n", "5"],
    ["search", "--n", "5"],
    ["enumerate", "wsimplices", "--k", "1"],
    ["verify", "tiling", "--file", "/nonexistent.json"],
    ["verify", "tiling", "--check", "bogus", "--file", "x"],
    ["bogus"],
])
def test_bad_parameters_exit_2(argv, capsys):
    assert main(argv, out=io.StringIO()) == 2


def test_resource_bound_exit_3(monkeypatch):
    monkeypatch.setenv("TILER_MAX_N", "6")
    code, lines = run("search", "--k", "1", "--n", "7")
    assert code == 3 and lines[-1]["kind"] == "resource"
    code, _ = run("enumerate", "subdivisions", "--k", "1", "--n", "7")
    assert code == 3


def test_output_is_byte_identical():
    a, b = io.StringIO(), io.StringIO()
    main(["search", "--k", "2", "--n", "6", "--check", "cover,weights", "--seed", "3"], out=a)
    main(["search", "--k", "2", "--n", "6", "--check", "cover,weights", "--seed", "3"], out=b)
    assert a.getvalue() == b.getvalue()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "positroid_tilings", "enumerate", "wsimplices", "--k", "1", "--n", "4"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert len(proc.stdout.splitlines()) == 5
