import json
from pathlib import Path

import pytest

from tournament_eh.application import EXIT_FAIL, EXIT_PASS, EXIT_USAGE, main
from tournament_eh.core import Tournament
from tournament_eh.report import parse_text


def run_json(capsys: pytest.CaptureFixture[str], *argv: str) -> object:
    assert main(["--format", "json", *argv]) == EXIT_PASS
    return json.loads(capsys.readouterr().out)


def test_catalog_text(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["catalog", "TT_3"]) == EXIT_PASS
    assert capsys.readouterr().out == "tournament 3\n7\n"


def test_catalog_listing(capsys: pytest.CaptureFixture[str]) -> None:
    listing = run_json(capsys, "catalog")
    assert isinstance(listing, dict) and "P_7" in listing["names"]


def test_optimal_numbering(capsys: pytest.CaptureFixture[str]) -> None:
    result = run_json(capsys, "optimal-numbering", "D_5")
    assert isinstance(result, dict)
    assert result["backedges"] == 3
    assert result["violations"] == []


def test_forest_numbering_of_paley(
    capsys: pytest.CaptureFixture[str],
) -> None:
    assert run_json(capsys, "forest-numbering", "P_7") == {"numbering": None}


def test_backedges_with_a_numbering(
    capsys: pytest.CaptureFixture[str],
) -> None:
    result = run_json(capsys, "backedges", "TT_3", "--numbering", "3,2,1")
    assert result == {
        "type": "ordered",
        "n": 3,
        "edges": [[1, 2], [1, 3], [2, 3]],
    }


def test_census_size(capsys: pytest.CaptureFixture[str]) -> None:
    result = run_json(capsys, "backedges", "D_5")
    assert isinstance(result, dict) and result["size"] == 24


def test_enumerate_prints_one_tournament_per_class(
    capsys: pytest.CaptureFixture[str],
) -> None:
    assert main(["enumerate", "--vertices", "3"]) == EXIT_PASS
    lines = capsys.readouterr().out.splitlines()
    assert lines[::2] == ["tournament 3", "tournament 3"]
    classes = [parse_text("\n".join(lines[i : i + 2])) for i in (0, 2)]
    assert all(isinstance(t, Tournament) for t in classes)
    assert classes[0] != classes[1]


def test_enumerate_counts_classes(capsys: pytest.CaptureFixture[str]) -> None:
    result = run_json(capsys, "enumerate", "--vertices", "5")
    assert isinstance(result, dict)
    assert result["count"] == 12 and len(result["classes"]) == 12


def test_contains(capsys: pytest.CaptureFixture[str]) -> None:
    result = run_json(capsys, "contains", "P_7", "TT_4")
    assert result == {"copy": None}


def test_purepair_translation(capsys: pytest.CaptureFixture[str]) -> None:
    result = run_json(capsys, "purepair", "TT_4", "--numbering", "1,2,3,4")
    assert isinstance(result, dict)
    assert result["pure"]["order"] == 2
    assert result["backedge"]["kind"] == "anticomplete"


@pytest.mark.parametrize(
    "flag, exact", [("--exact", True), ("--greedy", False)]
)
def test_purepair_exactness(
    capsys: pytest.CaptureFixture[str], flag: str, exact: bool
) -> None:
    result = run_json(capsys, "purepair", "D_5", flag)
    assert isinstance(result, dict)
    assert result["pure"]["exact"] is exact
    if exact:
        assert result["pure"]["order"] == 1


def test_blockade_from_a_file(
    tmp_path: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    blocks = tmp_path / "blocks.txt"
    blocks.write_text("blockade 2\n1 2\n3 4\n")
    result = run_json(capsys, "blockade", "OBS_1", str(blocks))
    assert isinstance(result, dict)
    assert result["blockade"]["blocks"] == [[1, 2], [3, 4]]


def test_blockade_trace(capsys: pytest.CaptureFixture[str]) -> None:
    result = run_json(
        capsys, "blockade", "OBS_1", "1;2;3;4", "--trace", "OBS_1"
    )
    assert isinstance(result, dict)
    assert result["trace"] == [[1, 2, 3, 4]]
    assert result["blockade"]["blocks"] == [[1], [2], [3], [4]]


LARGE_CONSTRUCTION = ["construct", "--k", "2", "--c", "1/2", "--width", "13"]


def test_construct(capsys: pytest.CaptureFixture[str]) -> None:
    result = run_json(capsys, *LARGE_CONSTRUCTION, "--seed", "3")
    assert isinstance(result, dict)
    assert result["params"]["n"] == 26
    assert result["params"]["seed"] == 3
    assert result["G"]["type"] == "tournament"
    assert result["blockade"]["blocks"][0] == list(range(1, 14))
    assert result["failed"] == []


def test_construct_reports_a_failed_bullet(
    capsys: pytest.CaptureFixture[str],
) -> None:
    argv = ["construct", "--k", "2", "--c", "1/2", "--width", "1"]
    assert main([*argv, "--emit", "json"]) == EXIT_FAIL
    result = json.loads(capsys.readouterr().out)
    assert result["failed"] == ["d"]
    assert result["J"]["type"] == "ordered"


def test_strict_construct_fails() -> None:
    assert main([*LARGE_CONSTRUCTION, "--strict"]) == EXIT_FAIL


def test_construct_as_dot(capsys: pytest.CaptureFixture[str]) -> None:
    assert main([*LARGE_CONSTRUCTION, "--emit", "dot"]) == EXIT_PASS
    dot = capsys.readouterr().out
    assert "graph blocked {" in dot and "subgraph cluster_2 {" in dot
    assert "digraph tournament {" in dot


def test_verify_writes_a_report(
    tmp_path: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    output = tmp_path / "report.json"
    assert main(["verify", "census", "--output", str(output)]) == EXIT_PASS
    assert "census: pass" in capsys.readouterr().out
    (report,) = json.loads(output.read_text())
    assert report["suite"] == "census"
    assert report["status"] == "pass"


@pytest.mark.parametrize(
    "argv",
    [
        ["catalog", "Q_9"],
        ["contains", "D_5", "OBS_1"],
        ["backedges", "D_5", "--numbering", "1,2"],
        ["construct", "--k", "2", "--c", "2", "--width", "4"],
        ["verify", "unknown"],
        ["--format", "dot", "blockade", "OBS_1", "1;2;3;4"],
    ],
)
def test_usage_errors(argv: list[str]) -> None:
    assert main(argv) == EXIT_USAGE


def test_malformed_numbering_is_rejected_by_argparse() -> None:
    with pytest.raises(SystemExit) as info:
        main(["backedges", "D_5", "--numbering", "a,b"])
    assert info.value.code == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["enumerate", "3"],
        ["purepair", "D_5", "--exact", "--greedy"],
    ],
)
def test_argparse_rejects(argv: list[str]) -> None:
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2
