import json

import pytest

import nspg.invariants as inv
from nspg.cli import main
from nspg.power_graphs import SimpleGraph


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_build_json_exact_output(capsys):
    code, out, _ = run_cli(capsys, "build", "Z4", "--subgroup", "2", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj == {"vertices": ["0", "1", "3"], "edges": [[0, 1], [0, 2], [1, 2]]}


def test_build_dot_output(capsys):
    code, out, _ = run_cli(capsys, "build", "Z4", "--subgroup", "2", "--format", "dot")
    assert code == 0
    assert out.startswith('graph "Z4 mod <2>" {')
    assert "1 -- 2;" in out


def test_build_default_format_is_json(capsys):
    code, out, _ = run_cli(capsys, "build", "Z4", "--subgroup", "2")
    assert code == 0
    assert json.loads(out)["vertices"] == ["0", "1", "3"]


def test_cli_output_is_deterministic(capsys):
    _, first, _ = run_cli(capsys, "analyze", "Z6", "--subgroup", "3")
    _, second, _ = run_cli(capsys, "analyze", "Z6", "--subgroup", "3")
    assert first == second


def test_power_graph_command(capsys):
    code, out, _ = run_cli(capsys, "power-graph", "Z5", "--format", "json")
    assert code == 0
    assert len(json.loads(out)["edges"]) == 10


def test_list_groups(capsys):
    code, out, _ = run_cli(capsys, "list-groups")
    assert code == 0
    lines = out.splitlines()
    assert "Z24" in lines and "S4" in lines and "Q8" in lines and "E(2,4)" in lines


def test_list_normal_subgroups(capsys):
    code, out, _ = run_cli(capsys, "list-normal-subgroups", "Z4")
    assert code == 0
    assert out.splitlines() == [
        "[0] order=1 subgroup={e}",
        "[1] order=2 subgroup=<2>",
        "[2] order=4 subgroup=<1>",
    ]


def test_subgroup_index_selector(capsys):
    _, by_gens, _ = run_cli(capsys, "build", "Z4", "--subgroup", "2")
    _, by_index, _ = run_cli(capsys, "build", "Z4", "--subgroup-index", "1")
    assert by_gens == by_index


def test_unparseable_spec_exits_2(capsys):
    code, _, err = run_cli(capsys, "build", "Zx9", "--subgroup", "2")
    assert code == 2
    assert "error:" in err


def test_non_normal_selector_exits_2(capsys):
    code, _, err = run_cli(capsys, "build", "S3", "--subgroup", "1")
    assert code == 2
    assert "not normal" in err


def test_whole_group_selector_exits_2(capsys):
    code, _, err = run_cli(capsys, "build", "Z4", "--subgroup", "1")
    assert code == 2
    assert "error:" in err


def test_analyze_json_anchor_values(capsys):
    code, out, _ = run_cli(capsys, "analyze", "Z6", "--subgroup", "3")
    assert code == 0
    obj = json.loads(out)
    assert obj["is_complete"] is True
    assert obj["edge_count"] == 10
    assert obj["clique_number"] == 5
    assert obj["chromatic_number"] == 5
    assert obj["is_planar"] is False


def test_analyze_table_format(capsys):
    code, out, _ = run_cli(capsys, "analyze", "Z6", "--subgroup", "3", "--format", "table")
    assert code == 0
    lines = out.splitlines()
    assert any(line.startswith("edge_count") and line.endswith("10") for line in lines)
    assert any(line.startswith("witness.clique") for line in lines)


def test_analyze_budget_exceeded_gives_nulls_and_exit_3(capsys, monkeypatch):
    monkeypatch.setenv("NSPG_BUDGET", "4")
    code, out, _ = run_cli(capsys, "analyze", "Z6", "--subgroup", "3")
    assert code == 3
    obj = json.loads(out)
    assert obj["clique_number"] is None
    assert obj["is_planar"] is None
    assert "clique_number" in obj["skipped"]
    assert obj["edge_count"] == 10  # partial output still present


def test_invalid_budget_env_exits_2(capsys, monkeypatch):
    monkeypatch.setenv("NSPG_BUDGET", "zero")
    code, _, err = run_cli(capsys, "analyze", "Z6", "--subgroup", "3")
    assert code == 2
    assert "NSPG_BUDGET" in err


def test_verify_selected_theorem_csv(capsys):
    code, out, _ = run_cli(capsys, "verify", "--theorems", "EULERIAN_4_2", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "theorem,group,subgroup,hypothesis_met,predicted,actual,verdict"
    assert len(lines) > 50
    assert all(line.endswith(",PASS") for line in lines[1:])


def test_verify_unknown_theorem_exits_2(capsys):
    code, _, err = run_cli(capsys, "verify", "--theorems", "NO_SUCH_THEOREM")
    assert code == 2
    assert "valid ids" in err


def test_verify_json_summary(capsys):
    code, out, _ = run_cli(capsys, "verify", "--theorems", "GIRTH_5_3,EDGES_6_1")
    assert code == 0
    obj = json.loads(out)
    assert obj["summary"]["GIRTH_5_3"]["fail"] == 0
    assert obj["summary"]["EDGES_6_1"]["pass"] > 0


def test_verify_with_catalog_file(capsys, tmp_path):
    catalog = {
        "instances": [{"group": "Z4", "subgroups": ["2"]}],
        "theorems": ["EDGES_6_1", "KAPPA_6_7"],
    }
    path = tmp_path / "catalog.json"
    path.write_text(json.dumps(catalog), encoding="utf-8")
    code, out, _ = run_cli(capsys, "verify", "--catalog", str(path), "--format", "csv")
    assert code == 0  # FLAGGED entries do not fail the run
    lines = out.splitlines()
    assert lines[1] == "EDGES_6_1,Z4,<2>,true,3,3,PASS"
    assert lines[2] == "KAPPA_6_7,Z4,<2>,true,1,2,FLAGGED"


def test_verify_with_missing_catalog_exits_2(capsys, tmp_path):
    code, _, err = run_cli(capsys, "verify", "--catalog", str(tmp_path / "nope.json"))
    assert code == 2
    assert "cannot load catalog" in err


def test_verify_exits_1_when_a_check_fails(capsys, monkeypatch):
    import nspg.cli
    from nspg.harness import InstanceResult, Report

    failing = Report(
        results=(
            InstanceResult(
                theorem="EDGES_6_1",
                group="Z4",
                subgroup="<2>",
                hypothesis_met=True,
                predicted=3,
                actual=4,
                verdict="FAIL",
            ),
        ),
        instance_count=1,
    )
    monkeypatch.setattr(nspg.cli, "run_catalog", lambda catalog: failing)
    code, out, _ = run_cli(capsys, "verify", "--format", "csv")
    assert code == 1
    assert out.splitlines()[1].endswith(",FAIL")


def test_build_json_round_trips_into_analyze(capsys):
    code, out, _ = run_cli(capsys, "build", "Z6", "--subgroup", "3", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    rebuilt = SimpleGraph(obj["vertices"], [tuple(e) for e in obj["edges"]])
    code, analyzed, _ = run_cli(capsys, "analyze", "Z6", "--subgroup", "3")
    expected = json.loads(analyzed)
    assert rebuilt.edge_count == expected["edge_count"]
    assert inv.clique_number(rebuilt)[0] == expected["clique_number"]
    assert inv.chromatic_number(rebuilt)[0] == expected["chromatic_number"]
    assert inv.vertex_connectivity(rebuilt)[0] == expected["vertex_connectivity"]
    assert inv.is_planar(rebuilt) == expected["is_planar"]


def test_help_exits_zero(capsys):
    code, out, _ = run_cli(capsys, "--help")
    assert code == 0
    assert "verify" in out
