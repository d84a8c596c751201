import json

from ddouble import autdg as ad
from ddouble import bruhat, groups
from ddouble.cli import run


def _json(capsys):
    return json.loads(capsys.readouterr().out)


def test_group_info(capsys):
    assert run(["group", "info", "--group", "C2 x S3"]) == 0
    out = _json(capsys)
    assert out["order"] == 12 and out["center_order"] == 2


def test_hopf_verify(capsys):
    assert run(["hopf", "verify", "--group", "S3", "--which", "DG"]) == 0
    assert _json(capsys)["reports"]["DG"]["all_pass"]


def test_text_format(capsys):
    assert run(["group", "info", "--group", "S3", "--format", "text"]) == 0
    assert "order: 6" in capsys.readouterr().out


def test_usage_errors(capsys):
    assert run(["lazy", "bogus", "--group", "S3"]) == 2
    assert "usage error" in capsys.readouterr().err
    assert run(["hopf", "verify", "--group", "S3", "--which", "nope"]) == 2
    assert run(["nope", "verb"]) == 2
    assert run(["group", "info", "--group", "A9"]) == 2


def test_module_error_gives_diagnosis(capsys):
    assert run(["lazy", "census", "--group", "D4"]) == 1
    out = _json(capsys)
    assert "SizeLimit" in json.dumps(out)


def test_enumerate_and_output_file(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert run(["autdg", "enumerate", "--group", "S3", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["count"] == 12


def test_bruhat_round_trip_through_files(tmp_path, capsys):
    G = groups.construct("S3")
    M = ad.enumerate_all(G)[5]
    phi = tmp_path / "phi.json"
    phi.write_text(json.dumps(M.to_json()))
    assert run(["bruhat", "decompose", "--group", "S3", "--input", str(phi)]) == 0
    cert = _json(capsys)["certificate"]
    cpath = tmp_path / "cert.json"
    cpath.write_text(json.dumps(cert))
    assert run(["bruhat", "verify", "--group", "S3", "--input", str(cpath)]) == 0
    assert bruhat.verify_certificate(bruhat.DecompositionCert.from_json(cert), G, M)


def test_bruhat_census(capsys):
    assert run(["bruhat", "census", "--group", "C2"]) == 0
    out = _json(capsys)
    assert sorted(out["classes"].values()) == sorted(out["expected_sizes"])


def test_lazy_commands(capsys):
    assert run(["lazy", "embed", "--group", "S3", "--which", "beta", "--index", "3"]) == 0
    assert _json(capsys)["verified"]
    assert run(["lazy", "trivialize", "--group", "C2xC2", "--seed", "1"]) == 0
    assert _json(capsys)["ok"]
    assert run(["lazy", "census", "--group", "C2"]) == 0
    assert _json(capsys)["status"] == "experimental"


def test_galois_and_cohom(capsys):
    assert run(["galois", "verify", "--group", "C2xC2"]) == 0
    assert _json(capsys)["R_galois"]
    assert run(["galois", "classify", "--group", "D4"]) == 0
    assert _json(capsys)["count"] == 0
    assert run(["cohom", "h2", "--group", "C4"]) == 0
    assert _json(capsys)["h2"]["order"] == 4
