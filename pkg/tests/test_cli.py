import io
import json

import pytest

from coverhecke.cli import (EXIT_CONFIG, EXIT_FAILED, EXIT_HYPOTHESIS, EXIT_RESOURCE,
                            build_parser, run)


def call(*argv):
    buf = io.StringIO()
    rc = run(list(argv), stdout=buf)
    return rc, buf.getvalue()


def test_classify_b3():
    rc, out = call("classify", "--type", "B", "--rank", "3", "--n", "3")
    assert rc == 0
    data = json.loads(out)
    assert data["very_saturated"] is True and data["oasitic"] is True


def test_orbits_sl2_two_singletons():
    rc, out = call("orbits", "--type", "A", "--rank", "1", "--Q", "-1", "--n", "4")
    assert rc == 0
    rows = json.loads(out)["rows"]
    assert [r["size"] for r in rows] == [1, 1]
    assert [r["splitting"] for r in rows] == [True, False]


def test_strict_turns_flags_into_failure():
    rc, _ = call("orbits", "--type", "A", "--rank", "1", "--Q", "-1", "--n", "4", "--strict")
    assert rc == EXIT_HYPOTHESIS == 2


def test_verify_hecke():
    rc, out = call("verify", "hecke", "--type", "A", "--rank", "2", "--n", "2", "--q", "5", "--radius", "4")
    assert rc == 0
    data = json.loads(out)
    assert data["status"] == "pass"
    assert min(r["vectors_checked"] for r in data["reports"] if r["relation"] == "quadratic") == 81


@pytest.mark.parametrize("argv", [
    ["verify", "sl2", "--type", "A", "--rank", "1", "--n", "4", "--Q", "-1", "--q", "5"],
    ["verify", "unikey", "--type", "A", "--rank", "2", "--n", "2"],
    ["verify", "twist", "--type", "A", "--rank", "2", "--n", "2"],
    ["verify", "whequi", "--type", "B", "--rank", "2", "--n", "3"],
    ["verify", "scatter", "--type", "A", "--rank", "1", "--n", "4", "--Q", "-1", "--q", "5", "--samples", "3"],
    ["verify", "propp", "--type", "A", "--rank", "1", "--n", "2", "--Q", "-1", "--q", "3"],
])
def test_verify_targets_pass(argv):
    rc, out = call(*argv)
    assert rc == 0, out
    assert json.loads(out)["status"] == "pass"


def test_sl2_precondition_exit_code():
    rc, _ = call("verify", "sl2", "--type", "A", "--rank", "1", "--n", "2", "--Q", "-1", "--q", "5")
    assert rc == EXIT_HYPOTHESIS


@pytest.mark.parametrize("argv", [
    ["classify", "--type", "Z", "--rank", "1", "--n", "2"],
    ["classify", "--type", "A", "--rank", "1"],
    ["verify", "hecke", "--type", "A", "--rank", "1", "--n", "4", "--q", "7"],
    ["nonsense"],
    ["scattering", "--type", "A", "--rank", "1", "--n", "1", "--q", "5", "--word", "0", "--chi", "oops"],
])
def test_config_errors(argv):
    rc, _ = call(*argv)
    assert rc == EXIT_CONFIG == 1


def test_resource_bound(monkeypatch):
    monkeypatch.setenv("COVERHECKE_MAX_ELEMENTS", "10")
    rc, _ = call("orbits", "--type", "B", "--rank", "3", "--n", "3")
    assert rc == EXIT_RESOURCE == 3


def test_exit_code_constants():
    assert EXIT_FAILED == 4


def test_tables_markdown_layout():
    rc, out = call("tables", "--format", "md", "--n-max", "3")
    assert rc == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("| |") and "E8" in lines[0]
    assert [ln.split("|")[1].strip() for ln in lines[2:]] == ["saturated", "very saturated", "oasitic"]


def test_whittaker_commands():
    rc, out = call("whittaker-reg", "--type", "A", "--rank", "1", "--n", "6", "--Q", "-1")
    assert rc == 0
    rc, out = call("whittaker-uni", "--type", "B", "--rank", "2", "--n", "3")
    assert rc == 0
    rc, out = call("zeta", "--type", "A", "--rank", "3", "--n", "5", "--rgroup", "1")
    assert rc == 0
    rows = json.loads(out)["rows"]
    assert {r["zeta"] for r in rows} <= {"1", "-1", 1, -1}


def test_scattering_csv():
    rc, out = call("scattering", "--type", "A", "--rank", "1", "--n", "1", "--q", "5",
                   "--word", "0", "--chi", "0.3:0.4", "--format", "csv")
    assert rc == 0
    assert out.splitlines()[0] == "row,col,re,im"


def test_scattering_exact_json():
    rc, out = call("scattering", "--type", "A", "--rank", "1", "--n", "1", "--q", "5",
                   "--word", "0", "--chi", "7/2")
    assert rc == 0
    entry = json.loads(out)["matrix"]["entries"][0][0]
    assert entry["N"] == 7


def test_output_is_byte_stable(tmp_path):
    a = call("orbits", "--type", "B", "--rank", "2", "--n", "4")[1]
    b = call("orbits", "--type", "B", "--rank", "2", "--n", "4")[1]
    assert a == b
    path = tmp_path / "out.json"
    rc, _ = call("orbits", "--type", "B", "--rank", "2", "--n", "4", "--output", str(path))
    assert rc == 0 and path.read_text() == a


def test_config_jobs(tmp_path):
    cfg = tmp_path / "jobs.json"
    cfg.write_text(json.dumps({"jobs": [
        {"command": "classify", "type": "B", "rank": 3, "n": 3},
        {"command": "verify", "target": "sl2", "type": "A", "rank": 1, "n": 4, "Q": -1, "q": 5},
    ]}))
    rc, out = call("--config", str(cfg))
    assert rc == 0
    cfg.write_text(json.dumps({"jobs": [{"command": "classify", "type": "B", "rank": 3, "n": 3, "bogus": 1}]}))
    rc, _ = call("--config", str(cfg))
    assert rc == EXIT_CONFIG


def test_cover_json_flag():
    spec = json.dumps({"type": "A", "rank": 2, "n": 3, "gl_pq": [0, 1]})
    rc, out = call("classify", "--cover", spec)
    assert rc == 0


def test_parser_lists_all_commands():
    text = build_parser().format_help()
    for cmd in ("classify", "tables", "orbits", "whittaker-reg", "whittaker-uni", "zeta", "verify", "scattering"):
        assert cmd in text
