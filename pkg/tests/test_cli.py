import json
import os
import subprocess
import sys

import pytest

from vermalink import cache as cache_mod
from vermalink.cache import FORMAT_VERSION, ResultCache
from vermalink.braids import parse_braid
from vermalink.cli import main
from vermalink.hecke import alexander_oracle


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_homfly_unknot_text(capsys):
    code, out, _ = run(capsys, "homfly", "n=1")
    assert code == 0 and out == "(l - l^-1)/(q - q^-1)\n"


def test_homfly_trefoil_json(capsys):
    code, out, _ = run(capsys, "homfly", "n=2 s1 s1 s1", "--out", "json")
    data = json.loads(out)
    assert code == 0 and data["braid"] == "n=2 s1 s1 s1"
    assert data["config"]["command"] == "homfly"


def test_homfly_specializations(capsys):
    assert run(capsys, "homfly", "n=1", "--specialize", "glN=2")[1] == "q + q^-1\n"
    out = run(capsys, "homfly", "n=2 s1 s1 s1", "--reduced", "--specialize", "alexander")[1]
    assert out == alexander_oracle(parse_braid("n=2 s1 s1 s1")).to_text() + "\n"


def test_malformed_braid_is_usage_error(capsys):
    code, out, _ = run(capsys, "homfly", "n=2 s5")
    assert code == 2 and json.loads(out)["error"] == "BraidParseError"


def test_unknown_flag_is_usage_error(capsys):
    code, _, err = run(capsys, "homfly", "n=1", "--bogus")
    assert code == 2 and "unrecognized" in err


def test_missing_command(capsys):
    assert run(capsys)[0] == 2


def test_bad_specialization(capsys):
    code, out, _ = run(capsys, "homfly", "n=1", "--specialize", "glN=x")
    assert code == 2


def test_qmax_limit(capsys):
    assert run(capsys, "homology", "n=1", "--qmax", "99")[0] == 2


def test_computation_error_exit_1(capsys):
    code, out, _ = run(capsys, "homology", "n=1", "--reduced", "--qmax", "2")
    assert code == 1 and "error" in json.loads(out)


def test_homology_schema(capsys):
    code, out, _ = run(capsys, "homology", "n=1", "--qmax", "4", "--glN", "2", "--page2-check")
    data = json.loads(out)
    assert code == 0
    assert set(data) >= {"braid", "variant", "window", "poincare", "euler", "checks"}
    assert set(data["checks"]) == {"euler_ok", "d2_ok", "page2_ok"}
    assert all(data["checks"].values())
    assert set(data["poincare"][0]) == {"q", "l", "h", "rank"}


def test_homology_csv(capsys):
    code, out, _ = run(capsys, "homology", "n=2 s1 s1", "--reduced", "--qmax", "4", "--out", "csv")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "q,l,h,rank" and len(lines) > 1


def test_page2_needs_glN(capsys):
    assert run(capsys, "homology", "n=1", "--page2-check")[0] == 2


def test_basis_dim_csv(capsys):
    code, out, _ = run(capsys, "basis-dim", "--nu", "0:1", "--flavor", "pbeta", "--qmax", "4")
    assert code == 0
    assert out.splitlines() == ["q_deg,l_deg,parity,count", "0,0,0,1", "0,2,1,1", "2,0,0,1",
                                "2,2,1,1", "4,0,0,1", "4,2,1,1"]


def test_basis_dim_bad_nu(capsys):
    assert run(capsys, "basis-dim", "--nu", "zero")[0] == 2
    assert run(capsys, "basis-dim", "--nu", "0:1", "--flavor", "q")[0] == 2


def test_algebra_homology_csv(capsys):
    code, out, _ = run(capsys, "algebra-homology", "--nu", "0:1", "--flavor", "pbeta",
                       "--diff", "dN:2", "--qmax", "6")
    assert code == 0
    assert out.splitlines() == ["q,l,hdeg,rank", "0,0,0,1", "2,0,0,1"]
    assert run(capsys, "algebra-homology", "--nu", "0:1", "--diff", "dX")[0] == 2


def test_oracle_check(capsys):
    code, out, _ = run(capsys, "oracle-check", "--qmax", "2", "--strands", "2")
    assert code == 0 and json.loads(out)["ok"]


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest", "--level", "quick")
    assert code == 0
    names = [line.split()[0] for line in out.splitlines()]
    assert {"skein", "markov", "relations", "cache"} <= set(names)
    assert all(" PASS " in line for line in out.splitlines())


def test_braid_from_file(capsys, tmp_path):
    path = tmp_path / "b.txt"
    path.write_text("n=2 s1 s1 s1\n")
    assert run(capsys, "homfly", f"@{path}")[1] == run(capsys, "homfly", "n=2 s1 s1 s1")[1]
    assert run(capsys, "homfly", f"@{tmp_path / 'missing'}")[0] == 2


def test_byte_identical_and_cache_transparent(capsys, tmp_path):
    argv = ["homology", "n=2 s1 s1", "--reduced", "--qmax", "4", "--cache-dir", str(tmp_path)]
    first = run(capsys, *argv)[1]
    assert os.listdir(tmp_path)
    second = run(capsys, *argv)[1]
    assert first == second
    fresh = json.loads(run(capsys, *argv[:-2], "--no-cache")[1])
    cached = json.loads(second)
    for k in ("poincare", "euler", "checks"):
        assert fresh[k] == cached[k]


def test_env_var_sets_cache_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("VERMA_LINK_CACHE", str(tmp_path / "c"))
    c = ResultCache()
    c.put({"k": 1}, [1, 2])
    assert c.get({"k": 1}) == [1, 2]
    assert (tmp_path / "c").is_dir()


def test_cache_rejects_other_format_or_build(tmp_path, monkeypatch):
    c = ResultCache(tmp_path)
    c.put({"k": 1}, "v")
    path = next(tmp_path.iterdir())
    data = json.loads(path.read_text())
    assert data["format"] == FORMAT_VERSION
    data["format"] = FORMAT_VERSION + 1
    path.write_text(json.dumps(data))
    assert c.get({"k": 1}) is None
    c.put({"k": 1}, "v")
    monkeypatch.setattr(cache_mod, "build_id", lambda: "other")
    assert c.get({"k": 1}) is None


def test_disabled_cache(tmp_path):
    c = ResultCache(tmp_path, enabled=False)
    c.put({"k": 1}, "v")
    assert c.get({"k": 1}) is None and not list(tmp_path.iterdir())


@pytest.mark.parametrize("argv,code", [(["homfly", "n=1"], 0), (["homfly", "n=x"], 2)])
def test_module_entry_point(argv, code):
    proc = subprocess.run([sys.executable, "-m", "vermalink.cli"] + argv, capture_output=True)
    assert proc.returncode == code
    assert b"\r\n" not in proc.stdout
