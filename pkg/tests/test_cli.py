import csv
import json

import pytest

from cli import build_parser, run
from cli.errors import EXIT_NOT_CONVERGED, EXIT_OK, EXIT_PARSE, EXIT_VERIFICATION
from cli.formats import read_dataset, read_model
from cli.parser import parse_seeds
from cli.reports import read_json_report
from models import MulticlassWeights, ProblemKind


def read_csv(path) -> dict[tuple[str, str], dict]:
    with open(path, encoding="utf-8") as f:
        return {(row["metric"], row["space"]): row for row in csv.DictReader(f)}


@pytest.fixture
def mcl_dataset(tmp_path):
    path = tmp_path / "mcl.jsonl"
    assert run(["gen", "--kind", "mcl", "--n", "30", "--d", "3", "--k", "3", "--seed", "7",
                "--output", str(path)]) == EXIT_OK
    return path


def test_parse_seeds():
    assert parse_seeds("1..4") == [1, 2, 3, 4]
    assert parse_seeds("3,1,9") == [3, 1, 9]


def test_parser_errors_use_parse_exit_code():
    with pytest.raises(SystemExit) as e:
        build_parser().parse_args(["gen", "--n", "many"])
    assert e.value.code == EXIT_PARSE


# gen


def test_gen_writes_one_record_per_line(tmp_path):
    path = tmp_path / "data.jsonl"
    assert run(["gen", "--kind", "mcl", "--n", "100", "--d", "5", "--k", "4", "--seed", "7",
                "--output", str(path)]) == EXIT_OK
    lines = path.read_text(encoding="utf-8").splitlines()
    assert len(lines) == 100
    assert set(json.loads(lines[0])) == {"features", "label", "k"}


def test_gen_is_byte_for_byte_reproducible(tmp_path):
    first, second = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    for path in (first, second):
        run(["gen", "--kind", "trl", "--n", "20", "--seed", "3", "--output", str(path)])
    assert first.read_bytes() == second.read_bytes()


def test_gen_lcl_theta_fraction(tmp_path):
    path = tmp_path / "lcl.jsonl"
    run(["gen", "--kind", "lcl", "--n", "2000", "--theta", "0.3", "--seed", "1", "--output", str(path)])
    examples, truth = read_dataset(path, ProblemKind.LCL)
    assert truth is None
    fraction = sum(ex.gamma for ex in examples) / len(examples)
    assert abs(fraction - 0.3) < 0.05


def test_gen_lcl_with_truth(tmp_path):
    path = tmp_path / "lcl.jsonl"
    run(["gen", "--kind", "lcl", "--n", "50", "--theta", "0.0", "--with-truth", "--output", str(path)])
    examples, truth = read_dataset(path, ProblemKind.LCL)
    assert len(truth) == 50
    assert all(ex.y != t for ex, t in zip(examples, truth))


def test_gen_spec_file_with_flag_override(tmp_path):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"kind": "mcl", "gen": {"n": 5, "d": 2, "k": 3, "seed": 4}}), encoding="utf-8")
    path = tmp_path / "data.jsonl"
    assert run(["gen", "--spec", str(spec), "--n", "8", "--output", str(path)]) == EXIT_OK
    examples, _ = read_dataset(path, ProblemKind.MCL)
    assert len(examples) == 8
    assert {ex.k for ex in examples} == {3}


def test_gen_invalid_parameters(tmp_path):
    assert run(["gen", "--kind", "lcl", "--theta", "1.5", "--output", str(tmp_path / "x.jsonl")]) == EXIT_PARSE


# reduce / train / eval / bound


def test_reduce_reports_skipped_singletons(tmp_path, capsys):
    source = tmp_path / "trl.jsonl"
    source.write_text(
        '{"items": [[1, 0], [0, 1]], "target_index": 0}\n'
        '{"items": [[5, 5]], "target_index": 0}\n',
        encoding="utf-8",
    )
    out = tmp_path / "trl.reduced.jsonl"
    assert run(["reduce", "--kind", "trl", "--input", str(source), "--output", str(out)]) == EXIT_OK
    assert "skipped 1" in capsys.readouterr().out
    bags, _ = read_dataset(out, ProblemKind.MIL)
    assert len(bags) == 1
    assert bags[0].label == -1


def test_reduce_malformed_dataset(tmp_path):
    source = tmp_path / "bad.jsonl"
    source.write_text('{"features": [1, 0], "label": 1, "k": 2}\n{"features": [1, 0]}\n', encoding="utf-8")
    assert run(["reduce", "--kind", "mcl", "--input", str(source), "--output", str(tmp_path / "o.jsonl")]) == EXIT_PARSE


def test_reduce_train_eval_pipeline(tmp_path, mcl_dataset):
    reduced = tmp_path / "reduced.jsonl"
    model = tmp_path / "model.json"
    report = tmp_path / "eval.csv"
    assert run(["reduce", "--kind", "mcl", "--input", str(mcl_dataset), "--output", str(reduced)]) == EXIT_OK
    assert run(["train", "--input", str(reduced), "--c-reg", "10", "--output", str(model)]) == EXIT_OK
    assert (tmp_path / "model.trace.csv").exists()

    assert run(["eval", "--kind", "mcl", "--input", str(mcl_dataset), "--model", str(model),
                "--output", str(report)]) == EXIT_OK
    rows = read_csv(report)
    assert rows[("loss_count", "original")]["value"] == rows[("loss_count", "reduced")]["value"]
    assert rows[("loss_count", "reduced")]["pass"] == "true"
    assert float(rows[("risk", "original")]["value"]) == float(rows[("risk", "reduced")]["value"])


def test_train_direct(tmp_path, mcl_dataset):
    model = tmp_path / "direct.json"
    assert run(["train", "--direct", "--input", str(mcl_dataset), "--output", str(model)]) == EXIT_OK
    weights = read_model(model)
    assert isinstance(weights, MulticlassWeights)
    assert weights.k == 3
    assert run(["eval", "--kind", "mcl", "--input", str(mcl_dataset), "--model", str(model),
                "--output", str(tmp_path / "eval.csv")]) == EXIT_OK


def test_train_reports_non_convergence(tmp_path):
    bags = tmp_path / "bags.jsonl"
    bags.write_text('{"bag": [[1, 0], [-1, 0]], "label": 1}\n{"bag": [[0, 1]], "label": -1}\n', encoding="utf-8")
    code = run(["train", "--input", str(bags), "--no-polish", "--max-iters", "1", "--max-outer-iters", "1",
                "--dc-epsilon", "1e-300", "--tol", "1e-300", "--output", str(tmp_path / "m.json")])
    assert code in (EXIT_OK, EXIT_NOT_CONVERGED)
    assert (tmp_path / "m.trace.csv").exists()


def test_bound_requires_eta(tmp_path, mcl_dataset):
    model = tmp_path / "model.json"
    run(["train", "--direct", "--input", str(mcl_dataset), "--output", str(model)])
    assert run(["bound", "--kind", "mcl", "--input", str(mcl_dataset), "--model", str(model),
                "--output", str(tmp_path / "b.csv")]) == EXIT_PARSE


def test_bound_for_lcl(tmp_path):
    data = tmp_path / "lcl.jsonl"
    model = tmp_path / "model.json"
    report = tmp_path / "bound.csv"
    run(["gen", "--kind", "lcl", "--n", "40", "--theta", "0.0", "--k", "5", "--output", str(data)])
    model.write_text(json.dumps({"kind": "multiclass", "dim": 2, "classes": 5, "weights": [0.0] * 10,
                                 "lambda_cap": 1.0}), encoding="utf-8")
    assert run(["bound", "--kind", "lcl", "--input", str(data), "--model", str(model), "--eta", "2",
                "--theta", "0.0", "--output", str(report)]) == EXIT_OK
    rows = read_csv(report)
    assert float(rows[("scale", "original")]["value"]) == pytest.approx(4.0)
    assert float(rows[("empirical_hinge_risk", "reduced")]["value"]) == pytest.approx(1.0)


# verify


def test_verify_passes_and_writes_report(tmp_path):
    report = tmp_path / "verify.json"
    assert run(["verify", "--kind", "mcl", "--checks", "loss-equality", "erm-equality", "norm-transport",
                "--seeds", "1..2", "--output", str(report)]) == EXIT_OK
    reports = read_json_report(report)
    assert len(reports) == 6
    assert all(r.passed for r in reports)


def test_verify_all_kinds_by_default(tmp_path):
    report = tmp_path / "verify.json"
    assert run(["verify", "--checks", "rademacher-equality", "--output", str(report)]) == EXIT_OK
    names = {r.name for r in read_json_report(report)}
    assert names == {"rademacher-equality-trl", "rademacher-equality-mcl", "rademacher-equality-lcl"}


def test_verify_risk_rescaling_only_for_lcl(tmp_path):
    report = tmp_path / "verify.json"
    assert run(["verify", "--checks", "risk-rescaling", "solver-optimality", "--output", str(report)]) == EXIT_OK
    names = [r.name for r in read_json_report(report)]
    assert names.count("risk-rescaling") == 1


def test_verify_unknown_check(tmp_path):
    assert run(["verify", "--checks", "nonsense", "--output", str(tmp_path / "v.json")]) == EXIT_PARSE


def test_verify_rejects_mil(tmp_path):
    assert run(["verify", "--kind", "mil", "--output", str(tmp_path / "v.json")]) == EXIT_PARSE


def test_exit_code_constants_are_distinct():
    assert len({EXIT_OK, EXIT_VERIFICATION, EXIT_PARSE, EXIT_NOT_CONVERGED}) == 4
