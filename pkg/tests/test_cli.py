import io
import json

from schurkit import cli
from schurkit.presentation import RelationCheck, RelationReport


def run_cli(argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def run_json(argv):
    code, out, err = run_cli(argv)
    return code, json.loads(out), err


def test_compare_b2_r2_json():
    code, doc, _ = run_json(["compare", "B", "2", "2"])
    assert code == 0
    assert doc["equal"] is False
    assert doc["pi_minus_pi0"] == [[1, 0]]
    assert doc["header"]["tool_version"]
    assert doc["header"]["reduced_word"] == [1, 2, 1, 2]


def test_verify_serre_exit_zero():
    code, doc, err = run_json(["verify", "C", "2", "2", "--presentation", "serre"])
    assert code == 0 and err == ""
    assert all(rel["status"] == "holds" for rel in doc["relations"])


def test_verify_idempotent_exit_zero():
    code, doc, _ = run_json(["verify", "D", "2", "2", "--presentation", "idempotent"])
    assert code == 0
    assert [rel["label"] for rel in doc["relations"]] == [f"R{k}" for k in range(1, 9)]


def test_zero_locus_reports_growth_without_h_equations():
    code, doc, _ = run_json(["zero-locus", "B", "2", "2", "--drop-p1hi"])
    assert code == 0
    assert doc["equals_pi"] is False
    assert doc["locus_size"] > doc["pi_size"]
    assert doc["extra_points"]


def test_zero_locus_full_equations_pass():
    code, doc, _ = run_json(["zero-locus", "B", "2", "2"])
    assert code == 0
    assert doc["equals_pi"] is True


def test_weights_and_pi0_outputs():
    code, doc, _ = run_json(["weights", "C", "2", "2"])
    assert code == 0
    assert doc["pi"]["elements"] == [[2, 0], [1, 1], [0, 0]]
    code2, doc2, _ = run_json(["pi0", "B", "2", "2"])
    assert code2 == 0
    assert doc2["pi0"]["elements"] == [[2, 0], [1, 1], [0, 0]]


def test_dims_csv_columns():
    code, out, _ = run_cli(["dims", "C", "2", "2", "--format", "csv"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("# ")
    assert lines[1] == "family,n,r,equal,|pi|,|pi0|,dim_S_pi,dim_Schur"
    assert lines[2] == "C,2,2,True,3,3,126,126"


def test_classify_b_csv():
    code, out, _ = run_cli(["classify-b", "1", "3", "--format", "csv"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[1] == "family,n,r,equal,|pi|,|pi0|,dim_S_pi,dim_Schur"
    assert lines[2].startswith("B,1,1,False")
    assert lines[3].startswith("B,1,2,True")


def test_closure_command():
    code, doc, _ = run_json(["closure", "C", "1", "2"])
    assert code == 0
    assert doc["dim_single_power"] == 10 and doc["dim_tower"] == 10
    assert doc["matches_expected"] is True


def test_census_command():
    code, doc, _ = run_json(["census", "C", "1", "2"])
    assert code == 0
    assert doc["total"] == 10 == doc["expected_total"]


def test_idempotents_command():
    code, doc, _ = run_json(["idempotents", "C", "1", "2"])
    assert code == 0
    assert doc["ladders_ok"] is True and doc["ranks_match_multiplicities"] is True


def test_crystal_command():
    code, doc, _ = run_json(["crystal", "B", "2", "--lambda", "1,0"])
    assert code == 0
    assert doc["size"] == 5 == doc["weyl_dimension"]
    assert doc["size_matches_dimension"] is True


def test_crystal_rejects_non_dominant():
    code, out, err = run_cli(["crystal", "B", "2", "--lambda", "0,1"])
    assert code == 2
    assert "not dominant" in err


def test_invalid_arguments_exit_two():
    assert run_cli(["weights", "E", "2", "2"])[0] == 2
    assert run_cli(["crystal", "B", "2", "--lambda", "1,x"])[0] == 2
    assert run_cli(["crystal", "B", "2", "--lambda", "1"])[0] == 2
    assert run_cli(["nonsense"])[0] == 2


def test_cap_exceeded_exits_two():
    code, out, err = run_cli(["verify", "C", "2", "2", "--presentation", "serre", "--max-dim", "10"])
    assert code == 2
    assert "cap" in err


def test_cap_env_variable(monkeypatch):
    monkeypatch.setenv("SCHURKIT_MAX_DIM", "10")
    code, _, err = run_cli(["verify", "C", "2", "2", "--presentation", "serre"])
    assert code == 2 and "cap" in err


def test_byte_identical_reruns():
    for argv in (
        ["compare", "B", "2", "2"],
        ["census", "C", "2", "2", "--format", "text"],
        ["zero-locus", "D", "2", "2", "--format", "csv"],
    ):
        first = run_cli(argv)
        second = run_cli(argv)
        assert first == second


def test_failing_verification_exits_one_and_names_label(monkeypatch):
    def fake_verify(lt, r, rep):
        return RelationReport(
            presentation="serre",
            family=lt.family,
            rank=lt.rank,
            r=r,
            carrier="tower",
            reduced_word=(1,),
            generator_convention="",
            relations=[RelationCheck(label="C2", holds=False, witness={"case": "i=2,j=2"})],
        )

    monkeypatch.setattr(cli, "verify_serre_presentation", fake_verify)
    code, out, err = run_cli(["verify", "C", "2", "2", "--presentation", "serre"])
    assert code == 1
    assert "C2" in err


def test_text_format_has_header_and_table():
    code, out, _ = run_cli(["weights", "C", "1", "1", "--format", "text"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("# {")
    assert lines[1].split() == ["set", "weight"]
    assert lines[-1] == "passed: True"
