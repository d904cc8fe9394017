import json
import os
import subprocess

import pytest

import kmn


def builtin(name):
    return next(s for s in kmn.builtin_examples() if s.name == name)


def test_builtin_axioms():
    a = kmn.verify(builtin("example-A"))
    assert not a["passed"]
    dist = a["axioms"]["distributivity"]
    assert dist["status"] == "fail"
    assert dist["replays"]
    k = kmn.verify(builtin("example-Z2xK"))
    assert k["passed"]
    assert k["scalar_identities"] == []
    assert kmn.verify_hypergroup(builtin("example-Z2xK"))["passed"]


def test_round_trip():
    for s in kmn.builtin_examples():
        assert kmn.parse(s.export()) == s


def test_parse_errors_raise():
    with pytest.raises(kmn.KmnError):
        kmn.parse('{"m": 2}')


def test_enumerate_and_ideals():
    rings = kmn.enumerate(2, 2, 2)
    assert len(rings) == 4
    for s in rings:
        assert kmn.verify(s)["passed"]
        assert ["0"] in [sorted(q) for q in kmn.ideals(s)]


def test_classify_field():
    z3 = next(s for s in kmn.enumerate(2, 2, 3) if kmn.verify(s)["scalar_identities"] and len(kmn.ideals(s)) == 2)
    verdicts = kmn.classify(z3, [z3.zero])
    assert verdicts["prime"] == "true"
    assert verdicts["maximal"] == "true"
    with pytest.raises(ValueError):
        kmn.classify(z3, [z3.labels[1]])


def test_search():
    rings = kmn.enumerate(2, 2, 2) + kmn.enumerate(2, 2, 3)
    assert kmn.search("J => jacobson-subset", rings) is None
    with pytest.raises(kmn.KmnError):
        kmn.search("J =>", rings)


def test_audit_is_deterministic():
    rings = kmn.enumerate(2, 2, 2)
    first = kmn.audit(rings, ["T01", "T16"])
    assert first == kmn.audit(rings, ["T01", "T16"])
    records = [json.loads(line) for line in first.splitlines()]
    assert records[0]["record"] == "header"
    assert records[-1]["record"] == "summary"
    assert len(kmn.theorems()) == 27


@pytest.mark.skipif("KMN_CLI" not in os.environ, reason="CLI path not provided")
def test_cli(tmp_path):
    cli = os.environ["KMN_CLI"]
    path = tmp_path / "A.kmn"
    path.write_text(builtin("example-A").export())
    r = subprocess.run([cli, "verify", str(path)], capture_output=True, text=True)
    assert r.returncode == 1
    assert "distributivity: fail" in r.stdout
    r = subprocess.run([cli, "verify"], capture_output=True, text=True)
    assert r.returncode == 2
