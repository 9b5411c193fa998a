import json

import pytest

from halfdesign import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip().startswith("{") else None)


def test_generate_e8(tmp_path, capsys):
    out = tmp_path / "e8.pts"
    code, rep = run(capsys, "generate", "E", "8", "--out", str(out))
    assert code == 0 and rep["count"] == 240 and rep["norm2"] == "2"
    assert out.read_text().splitlines()[4] == "count 240"


def test_generate_tight7_and_golay(capsys):
    assert run(capsys, "generate", "tight7")[1]["norm2"] == "24"
    code, rep = run(capsys, "generate", "golay")
    assert rep["weight_distribution"]["8"] == 759


def test_invalid_target(capsys):
    assert run(capsys, "generate", "F", "4")[0] == cli.EXIT_ERROR


def test_half_construct_then_verify(tmp_path, capsys):
    sel = tmp_path / "e8.sel"
    code, rep = run(capsys, "half", "E", "8", "--method", "construct", "--out", str(sel))
    assert code == 0 and rep["zero_sum"] and rep["seed"] == 1
    code, ver = run(capsys, "verify", str(sel), "--indices", "1,2,3,4,6")
    assert ver["verdicts"] == {"1": True, "2": True, "3": False, "4": True, "6": True}
    assert ver["sum_vector"] == rep["sum_vector"] == ["0"] * 8
    assert ver["moments"]["3"] == "7200"


def test_half_obstruction_status(capsys):
    code, rep = run(capsys, "half", "E", "7", "--method", "construct")
    assert code == cli.EXIT_OBSTRUCTION
    assert rep["certificate"]["odd_terms"] == 35 and rep["certificate"]["residue"] == "1/2"


def test_half_bruteforce_exhausted_and_infeasible(capsys):
    assert run(capsys, "half", "A", "3", "--method", "brute-force")[0] == cli.EXIT_EXHAUSTED
    assert run(capsys, "half", "E", "6", "--method", "brute-force")[0] == cli.EXIT_INFEASIBLE
    code, rep = run(capsys, "half", "D", "4", "--method", "brute-force")
    assert code == 0 and rep["zero_sum"]


def test_half_from_pointset_file(tmp_path, capsys):
    pts = tmp_path / "d5.pts"
    run(capsys, "generate", "D5", "--out", str(pts))
    sel = tmp_path / "d5.sel"
    code, rep = run(capsys, "half", str(pts), "--method", "local-search", "--seed", "2", "--out", str(sel))
    assert code == 0
    code, ver = run(capsys, "verify", str(sel))
    assert ver["verdicts"] == {"1": True}


def test_verify_full_pointset(tmp_path, capsys):
    pts = tmp_path / "e8.pts"
    run(capsys, "generate", "E8", "--out", str(pts))
    code, ver = run(capsys, "verify", str(pts), "--indices", "1..7")
    assert ver["is_design"]


def test_search_index_and_checkpoint(tmp_path, capsys):
    sel = tmp_path / "e8.sel"
    run(capsys, "half", "E8", "--out", str(sel))
    ck = tmp_path / "ck"
    code, rep = run(capsys, "search-index", str(sel), "--index", "3", "--checkpoint-dir", str(ck))
    assert code == cli.EXIT_EXHAUSTED
    assert (rep["status"], rep["rank"], rep["kernel_dim"], rep["enumerated"]) == ("none", 112, 8, 128)
    code, rep2 = run(capsys, "search-index", str(sel), "--index", "3", "--checkpoint-dir", str(ck))
    assert rep2["checkpoint"] == "hit" and rep2["kernel_dim"] == 8


def test_search_index_finds_other_half(tmp_path, capsys):
    sel = tmp_path / "d4.sel"
    run(capsys, "half", "D4", "--out", str(sel))
    other = tmp_path / "other.sel"
    code, rep = run(capsys, "search-index", str(sel), "--index", "1", "--out", str(other))
    assert code == 0 and rep["witness_sum_zero"]
    assert run(capsys, "verify", str(other))[1]["verdicts"]["1"]


def test_search_index_infeasible(tmp_path, capsys):
    sel = tmp_path / "d9.sel"
    run(capsys, "half", "D9", "--out", str(sel))
    code, rep = run(capsys, "search-index", str(sel), "--index", "1", "--kmax", "10")
    assert code == cli.EXIT_INFEASIBLE and rep["kernel_dim"] == 63


def test_scheme_commands(tmp_path, capsys):
    csv_path = tmp_path / "e8.csv"
    code, rep = run(capsys, "scheme", "E", "8", "--csv", str(csv_path))
    assert code == cli.EXIT_OBSTRUCTION
    assert {"i": 1, "j": 3, "k": 1, "value": 1, "well_defined": True} in rep["witnesses"]
    assert csv_path.read_text().startswith("i,j,k,p,well_defined")
    code, rep = run(capsys, "scheme", "cross", "4")
    assert code == 0 and rep["witnesses"] == []
    assert run(capsys, "scheme", "E8", "--spec", "1,0")[0] == cli.EXIT_ERROR


def test_matrix_export(tmp_path, capsys):
    sel = tmp_path / "e8.sel"
    run(capsys, "half", "E8", "--out", str(sel))
    m = tmp_path / "h3.txt"
    code, rep = run(capsys, "matrix", str(sel), "--index", "3", "--out", str(m))
    lines = m.read_text().splitlines()
    assert lines[1:3] == ["rows 120", "cols 112"] and len(lines) == 5 + 120


def test_threads_env_default(monkeypatch):
    monkeypatch.setenv(cli.THREADS_ENV, "3")
    assert cli.build_parser().parse_args(["verify", "x"]).threads == 3
    monkeypatch.setenv(cli.THREADS_ENV, "bogus")
    assert cli.default_threads() == 1


def test_parse_indices():
    assert cli.parse_indices("1..3,6") == [1, 2, 3, 6]
    with pytest.raises(cli.UsageError):
        cli.parse_indices(" , ")


@pytest.mark.slow
def test_table1(tmp_path, capsys):
    code, rep = run(capsys, "table1", "--report", str(tmp_path / "t1.json"))
    assert code == 0
    rows = {r["design"]: r for r in rep["rows"]}
    assert (rows["E8"]["existence"], rows["E8"]["nonexistence"]) == ([1], [3, 5])
    assert (rows["tight7"]["existence"], rows["tight7"]["nonexistence"]) == ([1], [3, 5])
    assert (rows["leech"]["existence"], rows["leech"]["infeasible"]) == ([1], [3, 5, 7, 9])
    leech3 = rows["leech"]["searches"][0]
    assert leech3["rank"] == 2576 and leech3["kernel_dim"] == 98280 - 2576
    assert (tmp_path / "t1.json").exists()
