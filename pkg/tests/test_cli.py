"""Command-line behavior: outputs, exit codes, determinism."""

import json

import pytest

from hptcanon import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_normalize(capsys):
    code, out, err = run(capsys, "normalize", "HPPHT")
    assert (code, out) == (0, "T|HPHPPPH\n")
    code, out, _ = run(capsys, "normalize", "TT")
    assert (code, out) == (0, "|P\n")
    code, out, _ = run(capsys, "normalize", "")
    assert (code, out) == (0, "|I\n")


def test_normalize_parse_error(capsys):
    code, out, err = run(capsys, "normalize", "HXT")
    assert code == 1
    assert out == ""
    assert "parse error at position 1" in err


def test_equiv(capsys):
    assert run(capsys, "equiv", "HHP", "PHH")[:2] == (0, "equivalent\n")
    assert run(capsys, "equiv", "T", "P")[:2] == (0, "inequivalent\n")
    assert run(capsys, "equiv", "HPPHT", "THPHPPPH")[:2] == \
        (0, "equivalent\n")


def test_tcount(capsys):
    assert run(capsys, "tcount", "TT")[:2] == (0, "0\n")
    assert run(capsys, "tcount", "THTHT")[:2] == (0, "3\n")


def test_matrix(capsys):
    code, out, _ = run(capsys, "matrix", "T")
    assert code == 0
    assert json.loads(out) == {
        "den_exp": 0,
        "entries": [[[1, 0, 0, 0], [0, 0, 0, 0]],
                    [[0, 0, 0, 0], [0, 1, 0, 0]]],
    }


def test_stab_trace(capsys):
    code, out, _ = run(capsys, "stab", "T")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "ℓ=0 x=(0,0) y=(0,0) z=(1,0) class=OTHER"
    assert lines[1] == "ℓ=1 x=(0,0) y=(0,0) z=(0,1) class=OTHER"

    code, out, _ = run(capsys, "stab", "HPH")
    assert code == 0
    assert len(out.splitlines()) == 1  # no blocks, initial line only

    code, out, _ = run(capsys, "stab", "THTHTH")
    lines = out.splitlines()
    assert len(lines) == 4
    assert lines[-1].endswith(f"class={lines[-1].split('=')[-1]}")
    assert all(ln.startswith("ℓ=") for ln in lines)


def test_count(capsys):
    assert run(capsys, "count", "2")[:2] == (0, "1920\n")
    assert run(capsys, "count", "3")[:2] == (0, "4224\n")
    assert run(capsys, "count", "3", "--exact")[:2] == (0, "2304\n")
    assert run(capsys, "count", "2", "--oracle")[:2] == (0, "1920\n")


def test_count_oracle_cap(capsys):
    code, out, err = run(capsys, "count", "9", "--oracle")
    assert code == 1
    assert out == ""
    assert "capped" in err


def test_count_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["count", "-3"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        cli.main(["count", "2", "--exact", "--oracle"])
    assert exc.value.code == 1


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "1")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 768
    first = json.loads(lines[0])
    assert first == {
        "blocks": [], "clifford": "I", "tcount": 0,
        "matrix": {"den_exp": 0,
                   "entries": [[[1, 0, 0, 0], [0, 0, 0, 0]],
                               [[0, 0, 0, 0], [1, 0, 0, 0]]]},
    }
    tallies = {}
    for ln in lines:
        obj = json.loads(ln)
        assert set(obj) == {"blocks", "clifford", "tcount", "matrix"}
        assert obj["tcount"] == len(obj["blocks"])
        tallies[obj["tcount"]] = tallies.get(obj["tcount"], 0) + 1
    assert tallies == {0: 192, 1: 576}


def test_tables_dump_group(capsys):
    code, out, _ = run(capsys, "tables", "--dump-group")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 192
    fields = lines[0].split("\t")
    assert fields[:3] == ["0", "I", "S_I"]
    assert json.loads(fields[3])["den_exp"] == 0
    tags = {ln.split("\t")[2] for ln in lines}
    assert tags == {"S_I", "S_H", "S_PH"}


def test_tables_emit_rules(capsys):
    code, out, _ = run(capsys, "tables", "--emit-rules")
    assert code == 0
    lines = out.splitlines()
    assert lines.count("# section S = I") == 1
    assert len([ln for ln in lines if not ln.startswith("#")]) == 192
    assert "IT = TI" in lines


def test_tables_check_appendix_bundled(capsys):
    code, out, _ = run(capsys, "tables", "--check-appendix")
    assert code == 0
    assert out == "appendix check: 192 rows, 0 mismatches\n"


def test_tables_check_appendix_path(capsys, tmp_path):
    good = tmp_path / "rules.txt"
    cli.main(["tables", "--emit-rules"])
    good.write_text(capsys.readouterr().out)
    code, out, _ = run(capsys, "tables", "--check-appendix", str(good))
    assert code == 0 and "0 mismatches" in out

    bad = tmp_path / "bad.txt"
    bad.write_text(good.read_text().replace("IT = TI", "IT = TP", 1))
    code, out, err = run(capsys, "tables", "--check-appendix", str(bad))
    assert code == 2
    assert out == ""
    assert "mismatches" in err

    code, _, err = run(capsys, "tables", "--check-appendix",
                       str(tmp_path / "missing.txt"))
    assert code == 1
    assert "error" in err


def test_tables_requires_a_mode(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["tables"])
    assert exc.value.code == 1


def test_unknown_subcommand(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["bogus"])
    assert exc.value.code == 1


def test_repeated_runs_are_byte_identical(capsys):
    outs = []
    for _ in range(2):
        code, out, _ = run(capsys, "enumerate", "2")
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1]

    outs = []
    for _ in range(2):
        code, out, _ = run(capsys, "stab", "THTHTHT")
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1]


def test_verify_reports_all_checks(capsys):
    code, out, err = run(capsys, "verify", "--tmax", "3", "--oracle-max", "3")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 13
    assert all(ln.startswith("PASS ") for ln in lines)
    assert any("group-order" in ln for ln in lines)
    # timings go to standard error, keeping standard output reproducible
    assert "s" in err and "group-order" in err
