import argparse
import sys

from models import ProblemKind
from .errors import EXIT_PARSE

KINDS = [kind.value for kind in ProblemKind]


class CommandParser(argparse.ArgumentParser):
    """Ошибки разбора аргументов завершают процесс с кодом EXIT_PARSE, а не 2"""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _add_spec(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--spec", type=str, default=None, help="ExperimentSpec JSON file; flags override it")
    parser.add_argument("--seed", type=int, default=None)


def _add_solver(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--c-reg", dest="c_reg", type=float, default=None)
    parser.add_argument("--tol", type=float, default=None)
    parser.add_argument("--max-iters", dest="max_iters", type=int, default=None)
    parser.add_argument("--max-outer-iters", dest="max_outer_iters", type=int, default=None)
    parser.add_argument("--dc-epsilon", dest="dc_epsilon", type=float, default=None)
    parser.add_argument("--restarts", type=int, default=None)
    parser.add_argument("--lambda-cap", dest="lambda_cap", type=float, default=None)
    parser.add_argument("--no-polish", dest="polish", action="store_const", const=False, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = CommandParser(
        prog="misreduce",
        description="Reduce ranking, multiclass and complementary-label problems to MIL, "
                    "train MI-SVM and verify the reductions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a seeded synthetic dataset")
    _add_spec(gen)
    gen.add_argument("--kind", choices=KINDS, default=None)
    gen.add_argument("--n", type=int, default=None)
    gen.add_argument("--d", type=int, default=None)
    gen.add_argument("--k", type=int, default=None)
    gen.add_argument("--set-size", dest="set_size", type=int, default=None)
    gen.add_argument("--bag-size", dest="bag_size", type=int, default=None)
    gen.add_argument("--theta", type=float, default=None)
    gen.add_argument("--r-norm", dest="r_norm", type=float, default=None)
    gen.add_argument("--margin", type=float, default=None)
    gen.add_argument("--with-truth", dest="with_truth", action="store_true",
                     help="keep true labels in lcl records (verification files only)")
    gen.add_argument("--output", type=str, default=None)

    reduce = sub.add_parser("reduce", help="apply the example transform to a dataset")
    _add_spec(reduce)
    reduce.add_argument("--kind", choices=KINDS, default=None)
    reduce.add_argument("--input", type=str, required=True)
    reduce.add_argument("--output", type=str, default=None)

    train = sub.add_parser("train", help="train MI-SVM on a reduced dataset")
    _add_spec(train)
    _add_solver(train)
    train.add_argument("--input", type=str, required=True)
    train.add_argument("--output", type=str, default=None)
    train.add_argument("--direct", action="store_true",
                       help="train the direct multiclass SVM on an mcl dataset instead")

    evaluate = sub.add_parser("eval", help="empirical risks in the original and reduced spaces")
    _add_spec(evaluate)
    evaluate.add_argument("--kind", choices=KINDS, default=None)
    evaluate.add_argument("--input", type=str, required=True)
    evaluate.add_argument("--model", type=str, required=True)
    evaluate.add_argument("--output", type=str, default=None)

    bound = sub.add_parser("bound", help="generalization bound for a trained model")
    _add_spec(bound)
    bound.add_argument("--kind", choices=KINDS, default=None)
    bound.add_argument("--input", type=str, required=True)
    bound.add_argument("--model", type=str, required=True)
    bound.add_argument("--eta", type=float, default=None)
    bound.add_argument("--lambda-cap", dest="lambda_cap", type=float, default=None)
    bound.add_argument("--lipschitz", type=float, default=None)
    bound.add_argument("--delta", type=float, default=None)
    bound.add_argument("--r-norm", dest="r_norm", type=float, default=None)
    bound.add_argument("--theta", type=float, default=None)
    bound.add_argument("--output", type=str, default=None)

    verify = sub.add_parser("verify", help="run oracle checks and exit nonzero on any failure")
    _add_spec(verify)
    verify.add_argument("--kind", choices=KINDS, default=None)
    verify.add_argument("--checks", nargs="+", default=None, help="check names, all by default")
    verify.add_argument("--seeds", type=str, default=None, help="seed list: '1..10' or '1,2,5'")
    verify.add_argument("--output", type=str, default=None)

    return parser


def parse_seeds(text: str) -> list[int]:
    """'1..10' -> [1, ..., 10]; '1,4,7' -> [1, 4, 7]"""
    if ".." in text:
        low, high = text.split("..", 1)
        return list(range(int(low), int(high) + 1))
    return [int(part) for part in text.split(",") if part.strip()]
