import json

import pytest

from icosa.cache import CertificateCache
from icosa.cli import main
from icosa.suites import VerificationReport, replay_report, run_suite
from icosa.symbolic import alpha


@pytest.fixture(autouse=True)
def cache_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("ICOSA_CACHE_DIR", str(tmp_path / "cache"))
    return tmp_path / "cache"


def test_verify_group(capsys):
    assert main(["verify", "group"]) == 0
    out = capsys.readouterr().out
    assert "group: PASS" in out


def test_verify_picard_json(tmp_path):
    path = tmp_path / "r.json"
    assert main(["verify", "picard", "--json", str(path)]) == 0
    data = json.loads(path.read_text())
    assert set(data) >= {"suite", "claims", "timing_ms"}
    assert all(set(c) >= {"id", "anchor", "status", "details"} for c in data["claims"])
    ids = {c["id"]: c for c in data["claims"]}
    assert ids["picard.A2"]["details"] == "A^2 = -75"


def test_unknown_suite():
    assert main(["verify", "nonsense"]) == 2


def test_usage_errors():
    assert main([]) == 2
    assert main(["alpha", "--orbit", "nowhere", "--m", "2"]) == 2
    assert main(["alpha", "--orbit", "all", "--m", "0"]) == 2
    assert main(["chi", "42H-5E5-5E5"]) == 2


def test_intersect_and_chi(capsys):
    assert main(["intersect", "40H-5E5-7E3-8E2", "15H-5E5-3E3-2E2"]) == 0
    assert capsys.readouterr().out.strip() == "0"
    assert main(["chi", "42H-5E5-7E3-8E2"]) == 0
    assert capsys.readouterr().out.strip() == "36"


def test_bounds(capsys):
    assert main(["bounds", "--orbit", "quintuple"]) == 0
    out = capsys.readouterr().out
    assert "lower bound: 12/5" in out and "upper bound: 12/5" in out and "verdict: 12/5" in out
    assert main(["bounds", "--orbit", "all", "--k-max", "5"]) == 0
    out = capsys.readouterr().out
    assert "11/2" in out and "57/10" in out


def test_alpha_and_cache(capsys, cache_dir, tmp_path):
    out_json = tmp_path / "a.json"
    assert main(["alpha", "--orbit", "double", "--m", "2", "--json", str(out_json)]) == 0
    out = capsys.readouterr().out
    assert "= 6" in out and "ratio alpha/m = 3" in out and "computed" in out
    assert json.loads(out_json.read_text())["certificate"]["alpha"] == 6
    assert (cache_dir / "index.json").exists()
    assert main(["alpha", "--orbit", "double", "--m", "2"]) == 0
    assert "cache (re-validated)" in capsys.readouterr().out


def test_alpha_inconclusive(capsys):
    assert main(["alpha", "--orbit", "all", "--m", "2", "--max-degree", "11"]) == 1
    assert "inconclusive" in capsys.readouterr().out


def test_cache_rejects_corruption(cache_dir):
    cache = CertificateCache()
    cert = alpha("triple", 2)
    digest = cache.put(cert)
    assert cache.get("triple", 2).alpha == 6
    obj = cache_dir / "objects" / f"{digest}.json"
    obj.write_text(obj.read_text().replace('"alpha":6', '"alpha":5'))
    assert cache.get("triple", 2) is None
    assert cache.get("triple", 3) is None


def test_cache_content_addressed(cache_dir):
    cache = CertificateCache()
    cert = alpha("double", 2)
    assert cache.put(cert) == cache.put(alpha("double", 2))
    assert len(list((cache_dir / "objects").iterdir())) == 1


def test_render(tmp_path, capsys):
    svg = tmp_path / "a.svg"
    inc = tmp_path / "inc.json"
    assert main(["render", "--out", str(svg), "--incidence", str(inc)]) == 0
    assert "<svg" in svg.read_text()
    assert len(json.loads(inc.read_text())["points"]) == 31
    assert json.loads(capsys.readouterr().out)["lines_drawn"] == 15
    assert main(["render", "--patch", "x^2", "--out", str(svg)]) == 2


def test_report_round_trip(tmp_path):
    report = run_suite("psi30")
    data = json.loads(json.dumps(report.to_json()))
    back = VerificationReport.from_json(data)
    replay = replay_report(back)
    assert replay.ok and len(replay.claims) == 3


def test_replay_cli(tmp_path, capsys):
    path = tmp_path / "r.json"
    report = run_suite("descent")
    path.write_text(json.dumps(report.to_json()))
    assert main(["verify", "--replay", str(path)]) == 0
    data = report.to_json()
    data["claims"][0]["witness"]["exactly"] = 3
    path.write_text(json.dumps(data))
    assert main(["verify", "--replay", str(path)]) == 1
