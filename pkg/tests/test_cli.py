import json
from pathlib import Path

import pytest

from blobalg import cli
from blobalg.combinatorics import AlgebraConfig, Bipartition, initial_tableau

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--json")
    return code, json.loads(out)


SHAPE = ("--d", "9", "--e", "4", "--kappa", "0,2", "--lambda", "1,8")


def test_simple_json(capsys):
    code, rep = run_json(capsys, "simple", *SHAPE)
    assert code == 0
    assert rep["schema"] == 1 and rep["dim"] == 9
    assert rep["dim_t"] == {"-1": 2, "0": 5, "1": 2}
    assert len(rep["basis"]) == 9


def test_decomp_row(capsys):
    code, rep = run_json(capsys, "decomp", *SHAPE)
    assert code == 0
    assert rep["row"] == {"5,4": {"2": 1}, "2,7": {"1": 1}, "6,3": {"1": 1}, "1,8": {"0": 1}, "9,0": {}}


def test_bgg_and_branch(capsys):
    code, rep = run_json(capsys, "bgg", "--d", "9", "--e", "4", "--kappa", "0,1", "--lambda", "5,4")
    assert code == 0 and rep["homology"] == [16, 0, 0] and rep["ranks"][0] == rep["terms"][0][0]["dim"] - 16
    code, rep = run_json(capsys, "bgg", "--d", "8", "--e", "4", "--kappa", "0,2", "--lambda", "5,3")
    assert code == 0 and rep["injective"]
    code, rep = run_json(capsys, "branch", "--d", "9", "--e", "4", "--kappa", "0,2", "--lambda", "1,8")
    assert code == 0 and rep["ok"]


def test_invariant_failure_exit_code(capsys):
    code, out = run(capsys, "branch", "--d", "2", "--e", "3", "--kappa", "0,1", "--lambda", "1,1")
    assert code == 1
    assert json.loads(out)["failure"]["check"] == "branching"
    code, out = run(capsys, "bgg", "--d", "9", "--e", "4", "--kappa", "0,2", "--lambda", "5,4")
    assert code == 1
    assert json.loads(out)["failure"]["check"] == "delta_squared"


def test_std_gram_and_text(capsys):
    code, out = run(capsys, "std", "--d", "3", "--e", "4", "--kappa", "0,2", "--lambda", "1,2")
    assert code == 0 and len(out.strip().splitlines()) == 3
    code, rep = run_json(capsys, "gram", "--d", "4", "--e", "4", "--kappa", "0,2", "--lambda", "2,2")
    assert code == 0 and rep["rank"] + rep["radical_dim"] == 6


@pytest.mark.parametrize(
    "argv",
    [
        ["simple", "--d", "3", "--e", "3", "--kappa", "0,3", "--lambda", "1,2"],
        ["simple", "--d", "3", "--e", "3", "--kappa", "0,1", "--lambda", "1,1"],
        ["simple", "--d", "3", "--e", "3", "--kappa", "x", "--lambda", "1,2"],
        ["render", "--e", "3", "--kappa", "0,1", "--path", "1,3"],
        ["nonsense"],
    ],
)
def test_usage_errors_exit_2(argv):
    with pytest.raises(SystemExit) as exc:
        cli.main(argv)
    assert exc.value.code == 2


def test_verify_empty_bounds_pass(capsys):
    code, rep = run_json(capsys, "verify", "--e")
    assert code == 0 and rep["checked"] == 0 and rep["ok"]


def test_verify_reproducible(capsys):
    args = ("verify", "--d-max", "6", "--e", "4", "5")
    first = run(capsys, *args)
    second = run(capsys, *args)
    assert first == second


def test_verify_reports_failures(capsys):
    code, rep = run_json(capsys, "verify", "--d-max", "4", "--e", "2")
    assert code == 1 and rep["failed"] > 0 and "first_witness" in rep


def test_negative_control_sign():
    cfg = AlgebraConfig(9, 4, (0, 1))
    lam = Bipartition(5, 4)
    assert cli.verify_shape(lam, cfg) == []
    fails = cli.verify_shape(lam, cfg, signs={(1, Bipartition(3, 6), Bipartition(1, 8)): -1})
    assert [f["check"] for f in fails] == ["delta_squared"]


def test_cache_equivalence(capsys, tmp_path):
    args = ("bgg", "--d", "8", "--e", "3", "--kappa", "0,1", "--lambda", "4,4", "--json")
    plain = run(capsys, *args)
    db = str(tmp_path / "memo.sqlite")
    cold = run(capsys, *args, "--cache", db)
    warm = run(capsys, *args, "--cache", db)
    assert plain == cold == warm
    store = cli.SqliteStore(db)
    assert store.conn.execute("SELECT count(*) FROM memo").fetchone()[0] > 0
    store.close()


def test_svg_goldens(tmp_path):
    cases = {
        "initial_1_8.svg": ["--lambda", "1,8"],
        "example_path.svg": ["--path", "2,2,2,1,2,2,1,2,2"],
    }
    for name, extra in cases.items():
        out = tmp_path / name
        assert cli.main(["render", "--e", "4", "--kappa", "0,2", *extra, "--format", "svg", "--out", str(out)]) == 0
        assert out.read_bytes() == (GOLDEN / name).read_bytes()


def test_initial_path_zigzag_then_straight():
    cfg = AlgebraConfig(9, 4, (0, 2))
    assert initial_tableau(Bipartition(1, 8), cfg).steps == (2, 1) + (2,) * 7


def test_ascii_small_triangle(capsys):
    code, out = run(capsys, "render", "--e", "3", "--kappa", "0,1", "--path", "1,2")
    assert code == 0
    assert out.splitlines() == [" |* |", " o *|", ".|* o"]


def test_json_round_trip(capsys):
    code, rep = run_json(capsys, "simple", *SHAPE)
    again = json.loads(json.dumps(rep))
    assert again == rep
    from blobalg.exactla import LaurentPoly

    assert LaurentPoly.from_json(rep["dim_t"]).eval_at_1() == rep["dim"]
