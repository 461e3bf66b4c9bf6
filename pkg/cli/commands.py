import argparse
import logging
import math
import sys
from pathlib import Path
from typing import Callable, Optional, Sequence

import numpy as np
from pydantic import ValidationError

from analysis.bounds import bound_params_for_sample, generalization_bound
from config import settings
from core.errors import ReductionError
from core.losses import loss_matrix, mcl_losses_batch, mil_loss_matrix
from core.risks import empirical_risk_lcl, empirical_risk_mcl, empirical_risk_mil, empirical_risk_trl
from datagen.generators import generate
from models import (
    ExperimentSpec,
    GenConfig,
    LinearWeights,
    LossKind,
    MulticlassWeights,
    ProblemKind,
    VerificationReport,
)
from oracle.grid import random_grid
from oracle.verifiers import (
    verify_erm_equality,
    verify_erm_inequality,
    verify_loss_equality_random,
    verify_norm_transport,
    verify_rademacher_equality,
    verify_risk_rescaling,
    verify_solver_optimality,
)
from reductions.mcl import flatten, mcl_restore
from reductions.sample import reduce_sample
from solvers.misvm import train_oneclass_misvm, train_reduced
from solvers.multiclass import objective_multiclass_svm, train_multiclass_svm_direct
from .errors import (
    EXIT_FAILURE,
    EXIT_NOT_CONVERGED,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_VERIFICATION,
    CommandError,
)
from .formats import DatasetParseError, read_dataset, read_model, write_dataset, write_model
from .parser import build_parser, parse_seeds
from .reports import MetricRow, format_rows, write_json_report, write_metrics_csv, write_trace_csv

logger = logging.getLogger(__name__)

# Флаги, переопределяющие поля ExperimentSpec, по командам
_GEN_FLAGS = ("seed", "n", "d", "k", "set_size", "bag_size", "theta", "r_norm", "margin")
_SOLVER_FLAGS = ("seed", "c_reg", "tol", "max_iters", "max_outer_iters", "dc_epsilon", "restarts",
                 "lambda_cap", "polish")
_BOUND_FLAGS = ("eta", "lambda_cap", "lipschitz", "delta", "r_norm", "theta")
OVERRIDES: dict[str, dict[str, tuple[str, ...]]] = {
    "gen": {"gen": _GEN_FLAGS},
    "train": {"solver": _SOLVER_FLAGS},
    "bound": {"bound": _BOUND_FLAGS},
    "verify": {"gen": ("seed",)},
}


def build_spec(args: argparse.Namespace) -> ExperimentSpec:
    """ExperimentSpec из файла --spec (если задан) с переопределением явными флагами"""
    try:
        if args.spec:
            data = ExperimentSpec.model_validate_json(Path(args.spec).read_text(encoding="utf-8")).model_dump()
        else:
            data = {"kind": ProblemKind.MIL}
        if getattr(args, "kind", None):
            data["kind"] = args.kind
        for section, flags in OVERRIDES.get(args.command, {}).items():
            section_data = dict(data.get(section, {}))
            for flag in flags:
                value = getattr(args, flag, None)
                if value is not None:
                    section_data[flag] = value
            data[section] = section_data
        return ExperimentSpec.model_validate(data)
    except ValidationError as e:
        raise CommandError(EXIT_PARSE, f"invalid experiment parameters: {e}")
    except OSError as e:
        raise CommandError(EXIT_FAILURE, f"cannot read spec file {args.spec}: {str(e)}")


def _output_path(flag: Optional[str], configured: Optional[str], default_name: str) -> Path:
    if flag:
        return Path(flag)
    if configured:
        return Path(configured)
    return Path(settings.OUTPUT_DIR) / default_name


def _read(path: str, kind: ProblemKind):
    try:
        return read_dataset(Path(path), kind)
    except DatasetParseError as e:
        raise CommandError(EXIT_PARSE, str(e))
    except OSError as e:
        raise CommandError(EXIT_FAILURE, f"cannot read dataset {path}: {str(e)}")


def _model(path: str):
    try:
        return read_model(Path(path))
    except DatasetParseError as e:
        raise CommandError(EXIT_PARSE, str(e))
    except OSError as e:
        raise CommandError(EXIT_FAILURE, f"cannot read model {path}: {str(e)}")


def cmd_gen(spec: ExperimentSpec, args: argparse.Namespace) -> int:
    out = _output_path(args.output, spec.outputs.dataset, f"{spec.kind.value}.jsonl")
    try:
        sample = generate(spec.kind, spec.gen)
        truth = sample.true_labels if getattr(args, "with_truth", False) else None
        write_dataset(out, sample.examples, spec.kind, truth)
    except ReductionError as e:
        logger.error(f"Generation failed: {str(e)}")
        raise CommandError(EXIT_FAILURE, str(e))
    except OSError as e:
        logger.error(f"Cannot write dataset: {str(e)}")
        raise CommandError(EXIT_FAILURE, f"cannot write dataset to {out}: {str(e)}")
    print(f"{out}\t{len(sample.examples)} records")
    return EXIT_OK


def cmd_reduce(spec: ExperimentSpec, args: argparse.Namespace) -> int:
    examples, _ = _read(args.input, spec.kind)
    out = _output_path(args.output, spec.outputs.reduced, f"{spec.kind.value}.reduced.jsonl")
    try:
        reduced = reduce_sample(examples, spec.kind)
        write_dataset(out, reduced.examples, ProblemKind.MIL)
    except ReductionError as e:
        logger.error(f"Reduction failed: {str(e)}")
        raise CommandError(EXIT_FAILURE, str(e))
    except OSError as e:
        raise CommandError(EXIT_FAILURE, f"cannot write reduced dataset to {out}: {str(e)}")
    print(f"{out}\t{reduced.n} bags\tskipped {reduced.skipped_count}")
    return EXIT_OK


def cmd_train(spec: ExperimentSpec, args: argparse.Namespace) -> int:
    out = _output_path(args.output, spec.outputs.model, "model.json")
    if args.direct:
        examples, _ = _read(args.input, ProblemKind.MCL)
        try:
            weights = train_multiclass_svm_direct(examples, spec.solver)
            objective = objective_multiclass_svm(examples, weights, spec.solver.c_reg)
            write_model(out, weights)
        except ReductionError as e:
            logger.error(f"Direct training failed: {str(e)}")
            raise CommandError(EXIT_FAILURE, str(e))
        print(f"{out}\tsolver=direct\tobjective={objective!r}")
        return EXIT_OK

    examples, _ = _read(args.input, ProblemKind.MIL)
    try:
        result = train_reduced(examples, spec.solver)
        write_model(out, result.weights)
        trace_path = write_trace_csv(out.with_name(out.stem + ".trace.csv"), result.objective_trace)
    except ReductionError as e:
        logger.error(f"Training failed: {str(e)}")
        raise CommandError(EXIT_FAILURE, str(e))
    except OSError as e:
        raise CommandError(EXIT_FAILURE, f"cannot write model to {out}: {str(e)}")
    print(f"{out}\tsolver={result.solver}\tobjective={result.objective!r}\tconverged={str(result.converged).lower()}")
    if not result.converged:
        raise CommandError(EXIT_NOT_CONVERGED, f"solver did not converge, objective trace at {trace_path}")
    return EXIT_OK


RISKS: dict[ProblemKind, Callable] = {
    ProblemKind.MIL: empirical_risk_mil,
    ProblemKind.TRL: empirical_risk_trl,
    ProblemKind.MCL: empirical_risk_mcl,
    ProblemKind.LCL: empirical_risk_lcl,
}


def _hypotheses(kind: ProblemKind, weights, examples: Sequence) -> tuple[object, LinearWeights]:
    """(гипотеза исходной задачи, веса сведенной) для модели из файла"""
    if kind in (ProblemKind.MCL, ProblemKind.LCL):
        if isinstance(weights, MulticlassWeights):
            return weights, flatten(weights)
        return mcl_restore(weights, examples[0].k), weights
    if not isinstance(weights, LinearWeights):
        raise CommandError(EXIT_PARSE, f"{kind.value} needs a linear model, got a multiclass one")
    return weights, weights


def cmd_eval(spec: ExperimentSpec, args: argparse.Namespace) -> int:
    kind = spec.kind
    examples, truth = _read(args.input, kind)
    weights = _model(args.model)
    if not examples:
        raise CommandError(EXIT_FAILURE, f"dataset {args.input} is empty")
    out = _output_path(args.output, spec.outputs.report, "eval.csv")
    try:
        original_h, reduced_h = _hypotheses(kind, weights, examples)
        reduced = reduce_sample(examples, kind)
        original_point = original_h.to_array().ravel()[None, :]
        original_count = int(loss_matrix(kind, original_point, examples).sum())
        reduced_count = int(mil_loss_matrix(reduced_h.to_array()[None, :], reduced.examples).sum()) if reduced.n else 0
        rows = [
            MetricRow(metric="risk", space="original", value=RISKS[kind](examples, original_h)),
            MetricRow(metric="loss_count", space="original", value=original_count),
            MetricRow(metric="loss_count", space="reduced", value=reduced_count, tolerance=0.0,
                      passed=original_count == reduced_count),
            MetricRow(metric="risk", space="reduced", value=reduced_count / len(examples)),
        ]
        if reduced.n:
            rows.append(MetricRow(metric="risk_over_bags", space="reduced",
                                  value=empirical_risk_mil(reduced.examples, reduced_h)))
            rows.append(MetricRow(metric="hinge_risk", space="reduced",
                                  value=empirical_risk_mil(reduced.examples, reduced_h, LossKind.HINGE)))
        if kind == ProblemKind.LCL and truth is not None:
            X = np.asarray([ex.x.coords for ex in examples], dtype=float)
            true_risk = float(mcl_losses_batch(original_h.to_array(), X, np.asarray(truth)).mean())
            rows.append(MetricRow(metric="multiclass_risk", space="true-labels", value=true_risk))
        write_metrics_csv(out, rows)
    except ReductionError as e:
        logger.error(f"Evaluation failed: {str(e)}")
        raise CommandError(EXIT_FAILURE, str(e))
    print(format_rows(rows))
    if original_count != reduced_count:
        raise CommandError(
            EXIT_VERIFICATION,
            f"loss counts differ between spaces: original {original_count}, reduced {reduced_count}",
        )
    return EXIT_OK


def cmd_bound(spec: ExperimentSpec, args: argparse.Namespace) -> int:
    kind = spec.kind
    examples, _ = _read(args.input, kind)
    weights = _model(args.model)
    if not examples:
        raise CommandError(EXIT_FAILURE, f"dataset {args.input} is empty")
    overrides = spec.bound
    if overrides.eta is None:
        raise CommandError(EXIT_PARSE, "eta has no default and must be supplied (--eta or the spec file)")
    out = _output_path(args.output, spec.outputs.report, "bound.csv")
    try:
        _, omega = _hypotheses(kind, weights, examples)
        lambda_cap = overrides.lambda_cap
        if lambda_cap is None:
            # Λ по умолчанию: ограничение модели, иначе норма ее весов
            lambda_cap = omega.lambda_cap if not math.isinf(omega.lambda_cap) else omega.norm
        reduced = reduce_sample(examples, kind)
        params = bound_params_for_sample(
            reduced,
            eta=overrides.eta,
            lambda_cap=lambda_cap,
            lipschitz=overrides.lipschitz,
            delta=overrides.delta,
            r_norm=overrides.r_norm,
        )
        report = generalization_bound(reduced, omega, params, theta=overrides.theta)
    except (ReductionError, ValidationError, ValueError) as e:
        logger.error(f"Bound computation failed: {str(e)}")
        raise CommandError(EXIT_FAILURE, str(e))

    rows = [
        MetricRow(metric="empirical_hinge_risk", space="reduced", value=report.empirical_risk),
        MetricRow(metric="expr1", space="reduced", value=report.complexity.expr1),
        MetricRow(metric="expr2", space="reduced", value=report.complexity.expr2),
        MetricRow(metric="complexity", space="reduced", value=report.complexity.value),
        MetricRow(metric="deviation_literal", space="reduced", value=report.deviation_literal),
        MetricRow(metric="deviation_log", space="reduced", value=report.deviation_log),
        MetricRow(metric="scale", space="original", value=report.scale),
        MetricRow(metric="bound_literal", space="original", value=report.bound_literal),
        MetricRow(metric="bound_log", space="original", value=report.bound_log),
    ]
    write_metrics_csv(out, rows)
    print(format_rows(rows))
    return EXIT_OK


# Проверки оракула для verify: (kind, seed, spec) -> отчеты


def _small_sample(kind: ProblemKind, seed: int, theta: float = 0.5):
    cfg = GenConfig(seed=seed, n=6, d=2, k=3, set_size=3, bag_size=3, theta=theta)
    sample = generate(kind, cfg)
    planted = sample.planted.to_array().ravel()
    return sample.examples, planted


def _check_loss_equality(kind: ProblemKind, seed: int, spec: ExperimentSpec) -> list[VerificationReport]:
    return [verify_loss_equality_random(kind, draws=1000, seed=seed)]


def _check_erm(kind: ProblemKind, seed: int, spec: ExperimentSpec) -> list[VerificationReport]:
    examples, planted = _small_sample(kind, seed)
    grid = random_grid(planted.shape[0], 2000, seed=seed, extra=[planted])
    return [verify_erm_equality(examples, kind, grid)]


def _check_erm_inequality(kind: ProblemKind, seed: int, spec: ExperimentSpec) -> list[VerificationReport]:
    examples, planted = _small_sample(kind, seed)
    grid = random_grid(planted.shape[0], 2000, seed=seed, extra=[planted])
    return [verify_erm_inequality(examples, kind, grid)]


def _check_rademacher(kind: ProblemKind, seed: int, spec: ExperimentSpec) -> list[VerificationReport]:
    examples, planted = _small_sample(kind, seed)
    grid = random_grid(planted.shape[0], 64, seed=seed)
    return [verify_rademacher_equality(examples, kind, grid, sigma_draws=200, seed=seed)]


def _check_risk_rescaling(kind: ProblemKind, seed: int, spec: ExperimentSpec) -> list[VerificationReport]:
    if kind != ProblemKind.LCL:
        return []
    cfg = spec.gen.model_copy(update={"seed": seed})
    W = np.random.default_rng(seed).standard_normal((cfg.k, cfg.d))
    return [verify_risk_rescaling(cfg, W, n_mc=10_000, seed=seed)]


def _check_solver(kind: ProblemKind, seed: int, spec: ExperimentSpec) -> list[VerificationReport]:
    # θ = 1 дает одноклассовую сведенную выборку и для LCL
    examples, _ = _small_sample(kind, seed, theta=1.0)
    reduced = reduce_sample(examples, kind)
    if reduced.n == 0 or any(label != -1 for label in reduced.labels):
        return []
    result = train_oneclass_misvm(reduced, spec.solver)
    w = result.weights.to_array()
    cap = 2 * max(1.0, float(np.linalg.norm(w)))
    grid = random_grid(w.shape[0], 2000, seed=seed, lambda_cap=cap, extra=[w])
    return [verify_solver_optimality(reduced.examples, result, grid, c_reg=spec.solver.c_reg, seed=seed)]


def _check_norm_transport(kind: ProblemKind, seed: int, spec: ExperimentSpec) -> list[VerificationReport]:
    return [verify_norm_transport(kind, 10_000, seed, r_norm=spec.gen.r_norm)]


CHECKS: dict[str, Callable[[ProblemKind, int, ExperimentSpec], list[VerificationReport]]] = {
    "loss-equality": _check_loss_equality,
    "erm-equality": _check_erm,
    "erm-inequality": _check_erm_inequality,
    "rademacher-equality": _check_rademacher,
    "risk-rescaling": _check_risk_rescaling,
    "solver-optimality": _check_solver,
    "norm-transport": _check_norm_transport,
}

REDUCIBLE = (ProblemKind.TRL, ProblemKind.MCL, ProblemKind.LCL)


def cmd_verify(spec: ExperimentSpec, args: argparse.Namespace) -> int:
    names = list(args.checks or spec.verify or CHECKS)
    unknown = [name for name in names if name not in CHECKS]
    if unknown:
        raise CommandError(EXIT_PARSE, f"unknown checks: {', '.join(unknown)}; known: {', '.join(CHECKS)}")
    try:
        seeds = parse_seeds(args.seeds) if args.seeds else [spec.gen.seed]
    except ValueError:
        raise CommandError(EXIT_PARSE, f"cannot parse seed list {args.seeds!r}")
    explicit_kind = args.kind or args.spec
    kinds = [spec.kind] if explicit_kind else list(REDUCIBLE)
    kinds = [kind for kind in kinds if kind in REDUCIBLE]
    if not kinds:
        raise CommandError(EXIT_PARSE, "verification checks apply to trl, mcl and lcl only")

    reports: list[VerificationReport] = []
    try:
        for seed in seeds:
            for kind in kinds:
                for name in names:
                    reports.extend(CHECKS[name](kind, seed, spec))
    except ReductionError as e:
        logger.error(f"Verification aborted: {str(e)}")
        raise CommandError(EXIT_FAILURE, str(e))

    out = _output_path(args.output, spec.outputs.report, "verify.json")
    write_json_report(out, reports)
    failed = [r for r in reports if not r.passed]
    for report in reports:
        print(f"{report.name}\t{'pass' if report.passed else 'FAIL'}\tlhs={report.lhs!r}\trhs={report.rhs!r}")
    print(f"{len(reports) - len(failed)}/{len(reports)} checks passed, report at {out}")
    if failed:
        raise CommandError(EXIT_VERIFICATION, f"{len(failed)} checks failed, see {out}")
    return EXIT_OK


COMMANDS: dict[str, Callable[[ExperimentSpec, argparse.Namespace], int]] = {
    "gen": cmd_gen,
    "reduce": cmd_reduce,
    "train": cmd_train,
    "eval": cmd_eval,
    "bound": cmd_bound,
    "verify": cmd_verify,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Разбор аргументов и запуск команды; возвращает код выхода"""
    args = build_parser().parse_args(argv)
    try:
        spec = build_spec(args)
        return COMMANDS[args.command](spec, args)
    except CommandError as e:
        logger.error(f"Command {args.command} failed: {e.detail}")
        print(f"error: {e.detail}", file=sys.stderr)
        return e.exit_code
    except Exception as e:
        logger.error(f"Unexpected error in {args.command}: {str(e)}", exc_info=True)
        print(f"error: {str(e)}", file=sys.stderr)
        return EXIT_FAILURE
