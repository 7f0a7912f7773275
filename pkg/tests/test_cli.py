import io
import sys
from pathlib import Path

# Ensure src/ is on sys.path for local test runs
ROOT = Path(__file__).resolve().parents[1]
SRC = ROOT / "src"
if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))

import pandas as pd
import pytest

from fairclust.cli import main
from fairclust.fairness import is_fair
from fairclust.instances import read_clustering

UNFAIR = "point,color,cluster\n0,0,0\n1,0,0\n2,1,0\n3,1,1\n"
FAIR = "point,color,cluster\n0,0,0\n1,0,1\n2,1,0\n3,1,1\n"


@pytest.fixture
def unfair_file(tmp_path):
    path = tmp_path / "unfair.csv"
    path.write_text(UNFAIR, encoding="utf-8")
    return path


@pytest.fixture
def fair_file(tmp_path):
    path = tmp_path / "fair.csv"
    path.write_text(FAIR, encoding="utf-8")
    return path


def last_line(capsys) -> str:
    return capsys.readouterr().out.strip().splitlines()[-1]


def test_check_fair(fair_file, capsys):
    assert main(["check", "--fair", str(fair_file)]) == 0
    assert last_line(capsys) == "fair"


def test_check_unfair_lists_clusters(unfair_file, capsys):
    assert main(["check", "--fair", str(unfair_file)]) == 1
    assert last_line(capsys) == "unfair: clusters 0 1"


def test_check_pdc(unfair_file, capsys):
    assert main(["check", "--pdc", str(unfair_file)]) == 0
    assert last_line(capsys) == "p-divisible"


def test_dist(fair_file, unfair_file, capsys):
    assert main(["dist", str(fair_file), str(unfair_file)]) == 0
    assert last_line(capsys) == "3"


def test_fairify_writes_fair_clustering(unfair_file, tmp_path, capsys):
    output = tmp_path / "out.csv"
    assert main(["fairify", str(unfair_file), str(output)]) == 0
    assert last_line(capsys) == "distance 3"
    result, colors = read_clustering(output)
    assert is_fair(result, colors)


def test_fairify_general_mode(unfair_file, tmp_path, capsys):
    output = tmp_path / "out.csv"
    assert main(["fairify", "--mode", "general", str(unfair_file), str(output)]) == 0
    result, colors = read_clustering(output)
    assert is_fair(result, colors)


def test_oracle_closest_fair(unfair_file, tmp_path, capsys):
    output = tmp_path / "best.csv"
    assert main(["oracle", "closest-fair", str(unfair_file), "-o", str(output)]) == 0
    assert last_line(capsys) == "3"
    assert output.exists()


def test_oracle_respects_limit(tmp_path, monkeypatch, capsys):
    path = tmp_path / "big.csv"
    assert main(["gen", "random", str(path), "--n", "8", "--k", "2", "--seed", "1"]) == 0
    monkeypatch.setenv("FAIRCLUST_ORACLE_LIMIT", "6")
    assert main(["oracle", "closest-fair", str(path)]) == 1
    assert "FAIRCLUST_ORACLE_LIMIT" in capsys.readouterr().err


def test_malformed_file_exit_code(tmp_path, capsys):
    path = tmp_path / "bad.csv"
    path.write_text("point,color,cluster\n0,0,zero\n", encoding="utf-8")
    assert main(["check", "--fair", str(path)]) == 2
    assert "malformed row" in capsys.readouterr().err


def test_value_beyond_int64_exit_code(tmp_path, capsys):
    path = tmp_path / "big.csv"
    path.write_text("point,color,cluster\n0,0,99999999999999999999999\n", encoding="utf-8")
    assert main(["check", "--fair", str(path)]) == 2
    assert "big.csv:2: malformed row" in capsys.readouterr().err


def test_missing_file_exit_code(tmp_path):
    assert main(["dist", str(tmp_path / "a.csv"), str(tmp_path / "b.csv")]) == 2


def test_invalid_input_exit_code(tmp_path, capsys):
    path = tmp_path / "skewed.csv"
    path.write_text("point,color,cluster\n0,0,0\n1,1,0\n2,1,1\n", encoding="utf-8")
    assert main(["fairify", "--mode", "equi", str(path), str(tmp_path / "out.csv")]) == 1


def test_gen_hardness_reports_tau(tmp_path, capsys):
    output = tmp_path / "hard.csv"
    certificate = tmp_path / "cert.csv"
    code = main(["gen", "hardness", str(output), "--values", "5,6,7,5,6,7", "--k", "3",
                 "--certificate", str(certificate)])
    assert code == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[-3:] == ["values 5,6,7,5,6,7", "T 18 tau 1296", "certificate distance 1296"]
    assert main(["check", "--fair", str(certificate)]) == 0


def test_gen_hardness_random_yes(tmp_path, capsys):
    output = tmp_path / "hard.csv"
    assert main(["gen", "hardness", str(output), "--random-yes", "6", "--k", "4", "--seed", "2"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    tau = lines[-2].split()[-1]
    assert lines[-1] == f"certificate distance {tau}"


def test_gen_hardness_needs_values(tmp_path):
    assert main(["gen", "hardness", str(tmp_path / "hard.csv")]) == 1


def test_cc_round_trip(tmp_path, capsys):
    graph = tmp_path / "graph.csv"
    colors = tmp_path / "colors.csv"
    output = tmp_path / "fair.csv"
    assert main(["gen", "correlation", str(graph), str(colors), "--n", "12", "--k", "2", "--seed", "5"]) == 0
    assert main(["cc", "fairify", str(graph), str(colors), str(output)]) == 0
    reported = last_line(capsys)
    assert reported.startswith("cost ")
    assert main(["cc", "cost", str(graph), str(output)]) == 0
    assert reported == f"cost {last_line(capsys)}"
    result, assignment = read_clustering(output)
    assert is_fair(result, assignment)


def test_consensus_command(tmp_path, capsys):
    path = tmp_path / "consensus.csv"
    output = tmp_path / "out.csv"
    path.write_text("point,color,c1,c2,c3\n0,0,0,0,0\n1,1,0,1,0\n2,0,1,0,1\n3,1,1,1,1\n", encoding="utf-8")
    for strategy in ("best-input", "fairify-all"):
        assert main(["consensus", str(path), str(output), "--strategy", strategy, "--norm", "2"]) == 0
        assert last_line(capsys).startswith("objective ")
        result, colors = read_clustering(output)
        assert is_fair(result, colors)


def test_bench_hardness_emits_csv(capsys):
    assert main(["bench", "hardness", "--instances", "2", "--ks", "3,4"]) == 0
    frame = pd.read_csv(io.StringIO(capsys.readouterr().out))
    assert len(frame) == 4
    assert frame["matches_tau"].all()


def test_bench_ratio_emits_csv(capsys):
    assert main(["bench", "ratio", "--instances", "2", "--n", "6", "--k", "2"]) == 0
    frame = pd.read_csv(io.StringIO(capsys.readouterr().out))
    assert set(frame["algorithm"]) == {"create_pdc", "fair_general", "fair_equi", "fair_power_of_two"}
    assert frame["within_bound"].all()


def test_config_command(capsys):
    assert main(["config"]) == 0
    assert "oracle_limit" in capsys.readouterr().out
