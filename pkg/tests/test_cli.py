import json

import pytest

from steinerpc.cli import main
from steinerpc.construct import build_construction
from steinerpc.formats import (
    FormatError,
    format_structured,
    format_system,
    load_system,
    parse_structured,
    parse_system,
)
from steinerpc.verify import certify_no_parallel_class


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("v", [27, 87, 147, 627])
def test_text_roundtrip_is_byte_identical(v):
    text = format_system(build_construction(v).system)
    sf = parse_system(text)
    assert format_system(sf.system, sf.comments) == text
    assert sf.spec.v == v


def test_structured_roundtrip_replays_certificate():
    c = build_construction(87)
    text = format_structured(c.system, c.colors)
    sf = parse_structured(text)
    assert sf.system.triples == c.system.triples and sf.system.roles == c.system.roles
    assert sf.colors == c.colors
    assert format_structured(sf.system, sf.colors) == text
    assert certify_no_parallel_class(sf.system, sf.spec, sf.colors).valid


@pytest.mark.parametrize(
    "text",
    [
        "",
        "nonsense\n",
        "sts v=3 b=1 source=x\n0 1\n",
        "sts v=3 b=2 source=x\n0 1 2\n",
        "sts v=3 b=1 source=x\n0 1 5\n",
        "sts v=3 b=1 source=x\n2 1 0\n",
        "sts v=3 b=1 source=x\n0 1 2 WEIRD\n",
        "sts v=3 b=1 source=x\n0 a 2\n",
    ],
)
def test_malformed_text(text):
    with pytest.raises(FormatError):
        parse_system(text)


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", 100)
    assert code == 0 and [l.split("\t")[0] for l in out.splitlines()] == ["27", "87"]
    code, out, _ = run(capsys, "enumerate", 26)
    assert code == 0 and out == ""
    code, out, _ = run(capsys, "enumerate", 700)
    assert "627\tn=125\t5^3" in out.splitlines()
    lines = run(capsys, "enumerate", 300)[1].splitlines()
    assert len(lines) == 5 and lines[-1].startswith("267")


def test_enumerate_unparsable(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["enumerate", "lots"])
    assert exc.value.code == 2


def test_construct_and_verify(tmp_path, capsys):
    p = tmp_path / "s27.txt"
    assert run(capsys, "construct", 27, "-o", p)[0] == 0
    text = p.read_text()
    assert text.startswith("sts v=27 b=117 source=construct\n")
    p2 = tmp_path / "again.txt"
    run(capsys, "construct", 27, "-o", p2)
    assert p2.read_bytes() == p.read_bytes()
    code, out, _ = run(capsys, "verify", p, "--weights", "--gamma")
    assert code == 0 and out.startswith("ok:") and "FAIL" not in out


def test_construct_inadmissible(capsys):
    code, _, err = run(capsys, "construct", 57)
    assert code == 2 and "ord_11(-2) = 5" in err


def test_verify_deleted_and_duplicated_lines(tmp_path, capsys):
    lines = format_system(build_construction(27).system).splitlines()
    body = lines[4:]
    deleted = tmp_path / "del.txt"
    deleted.write_text("\n".join(["sts v=27 b=116 source=construct"] + lines[1:4] + body[1:]) + "\n")
    code, out, _ = run(capsys, "verify", deleted)
    assert code == 1 and out.count("uncovered pair") == 3
    dup = tmp_path / "dup.txt"
    dup.write_text("\n".join(["sts v=27 b=118 source=construct"] + lines[1:4] + body + body[:1]) + "\n")
    code, out, _ = run(capsys, "verify", dup)
    assert code == 1 and out.count("covered 2 times") == 3


def test_verify_malformed_and_missing(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("hello\n")
    assert run(capsys, "verify", bad)[0] == 2
    assert run(capsys, "verify", tmp_path / "missing.txt")[0] == 2


def test_verify_weights_need_roles(sts9_path, capsys):
    code, out, err = run(capsys, "verify", sts9_path, "--weights")
    assert code == 2 and "role tags" in err
    assert run(capsys, "verify", sts9_path)[0] == 0


def test_verify_structured(tmp_path, capsys):
    p = tmp_path / "s.json"
    run(capsys, "construct", 27, "--format", "structured", "-o", p)
    code, out, _ = run(capsys, "verify", p, "--gamma")
    assert code == 0 and "P8" in out and "P9" in out
    assert load_system(p).colors is not None


def test_certify(tmp_path, capsys):
    p = tmp_path / "c.json"
    code, out, _ = run(capsys, "certify", 27, "-o", p)
    assert code == 0 and "verdict: valid" in out
    doc = json.loads(p.read_text())
    assert doc["verdict"] == "valid" and doc["v"] == 27
    assert [x["id"] for x in doc["premises"]] == [f"P{k}" for k in range(1, 11)]
    assert all(x["status"] == "pass" for x in doc["premises"])
    assert doc["premises"][0]["checked"] == 351
    assert run(capsys, "certify", 33)[0] == 2


def test_search_pc(tmp_path, sts9_path, capsys):
    code, out, _ = run(capsys, "search-pc", sts9_path, "--mode", "find")
    assert code == 0 and out.startswith("found") and len(out.splitlines()) == 4
    code, out, _ = run(capsys, "search-pc", sts9_path, "--mode", "count")
    assert code == 0 and out.strip() == "count 4 (exhausted)"
    p = tmp_path / "s27.txt"
    run(capsys, "construct", 27, "-o", p)
    code, out, _ = run(capsys, "search-pc", p, "--mode", "prove-none")
    assert code == 0 and out.strip() == "none (exhausted)"


def test_search_pc_timeout(tmp_path, capsys):
    p = tmp_path / "s87.txt"
    run(capsys, "construct", 87, "-o", p)
    code, out, _ = run(capsys, "search-pc", p, "--mode", "prove-none", "--timeout-secs", 1)
    assert code == 3 and out.startswith("timeout")


def test_search_pc_prove_none_failure_and_bad_order(tmp_path, sts9_path, capsys):
    assert run(capsys, "search-pc", sts9_path, "--mode", "prove-none")[0] == 1
    p = tmp_path / "sts7.txt"
    p.write_text("sts v=7 b=7 source=x\n0 1 3\n0 2 6\n0 4 5\n1 2 4\n1 5 6\n2 3 5\n3 4 6\n")
    assert run(capsys, "search-pc", p)[0] == 2
    assert run(capsys, "search-pc", sts9_path, "--timeout-secs", 0)[0] == 2
