"""Command-line front end.

Exit codes: 0 success, 1 input/parse error, 2 verification or certification
failure, 3 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import oracle
from .drazin import core_nilpotent, drazin_inverse
from .errors import BudgetExceeded, CertificationFailure, GInverseError, NotGDrazin, ParseError
from .field import parse_field
from .gdrazin import GDrazinFamily, count_gdrazin, format_params, parse_params, verify_gdrazin
from .spectral import ast_decompose, index_profile
from .textio import format_matrix, parse_matrix

EXIT_OK, EXIT_INPUT, EXIT_VERIFY, EXIT_BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _located(path: str, exc: ParseError) -> InputError:
    line = exc.line if exc.line is not None else 1
    col = exc.column if exc.column is not None else 1
    return InputError(f"{path}:{line}:{col}: {exc.message}")


def _load_matrix(path: str, field=None):
    try:
        return parse_matrix(_read_text(path), field)
    except ParseError as exc:
        raise _located(path, exc) from None


def _load_params(path: str, family: GDrazinFamily):
    try:
        return parse_params(_read_text(path), family.field, family.shape)
    except ParseError as exc:
        raise _located(path, exc) from None


def _seq(label: str, xs) -> str:
    return label + "".join(f" {x}" for x in xs)


# -- subcommands --------------------------------------------------------------


def cmd_info(args, A) -> tuple[int, str]:
    prof = index_profile(A)
    lines = [
        f"n {prof.n}",
        f"index {prof.r}",
        _seq("ranks", prof.ranks),
        _seq("nu", prof.nullities),
        _seq("delta", prof.segre),
    ]
    return EXIT_OK, "\n".join(lines) + "\n"


def cmd_ast(args, A):
    ast = ast_decompose(A)
    parts = [
        format_matrix(ast.P, "P"),
        format_matrix(ast.A_W, "A_W"),
        format_matrix(ast.J_U, "J_U"),
        format_matrix(ast.P_inv, "P_inv"),
    ]
    return EXIT_OK, "".join(parts)


def cmd_drazin(args, A):
    return EXIT_OK, format_matrix(drazin_inverse(A))


def cmd_core_nilpotent(args, A):
    cn = core_nilpotent(A)
    return EXIT_OK, format_matrix(cn.core, "core") + format_matrix(cn.nilpotent, "nilpotent")


def cmd_shape(args, A):
    fam = GDrazinFamily(A)
    shape = fam.shape
    lines = [
        _seq("chains", shape.lengths),
        f"alpha_slots {shape.n_alpha}",
        f"lambda_slots {shape.n_lambda}",
        f"lambda_diagonal {shape.n_lambda_diagonal}",
        f"lambda_offdiagonal {shape.n_lambda - shape.n_lambda_diagonal}",
    ]
    for l, m in shape.block_pairs:
        a = " ".join(f"{i + 1},{j + 1}" for i, j in shape.block_alpha_slots(l, m))
        lam = " ".join(f"{i + 1},{j + 1}" for i, j in shape.block_lambda_slots(l, m))
        lines.append(f"block {l + 1} {m + 1} : alpha {a} | lambda {lam}".rstrip())
    return EXIT_OK, "\n".join(lines) + "\n"


def cmd_gd_sample(args, A):
    params, X = GDrazinFamily(A).sample(args.seed)
    if args.params_out:
        Path(args.params_out).write_text(format_params(params), encoding="utf-8", newline="\n")
    return EXIT_OK, format_matrix(X)


def cmd_gd_build(args, A):
    fam = GDrazinFamily(A)
    return EXIT_OK, format_matrix(fam.build(_load_params(args.params, fam)))


def cmd_gd_extract(args, A):
    fam = GDrazinFamily(A)
    X = _load_matrix(args.x, A.field)
    try:
        params = fam.extract(X)
    except NotGDrazin as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY, ""
    return EXIT_OK, format_params(params)


def cmd_verify(args, A):
    X = _load_matrix(args.x, A.field)
    report = verify_gdrazin(A, X)
    return (EXIT_OK if report.all_ok else EXIT_VERIFY), "\n".join(report.lines()) + "\n"


def cmd_count(args, A):
    return EXIT_OK, f"{count_gdrazin(A, args.q)}\n"


def cmd_certify(args, A):
    if A is not None:
        entries = [oracle.CorpusEntry(Path(args.matrix).stem, A)]
    else:
        entries = oracle.select(oracle.default_corpus(), args.n, args.q)
    out, failures = [], 0
    for e in entries:
        try:
            rep = oracle.certify_parameterization(e.matrix, args.budget, e.id)
        except CertificationFailure as exc:
            failures += 1
            out.append(f"FAIL {e.id}: {exc}")
            if exc.witness is not None:
                out.append(format_matrix(exc.witness, "witness").rstrip("\n"))
            continue
        except BudgetExceeded as exc:
            out.append(f"BUDGET {e.id}: {exc}")
            out.append("SUMMARY BUDGET_EXCEEDED")
            return EXIT_BUDGET, "\n".join(out) + "\n"
        out.append(rep.line())
        failures += not rep.certified
    passed = len(entries) - failures
    out.append(f"SUMMARY {'PASS' if failures == 0 else 'FAIL'} {passed}/{len(entries)}")
    return (EXIT_OK if failures == 0 else EXIT_VERIFY), "\n".join(out) + "\n"


COMMANDS = {
    "info": (cmd_info, "index, ranks, nullities and Jordan block counts"),
    "ast": (cmd_ast, "emit P, A_W, J_U and P^-1"),
    "drazin": (cmd_drazin, "Drazin inverse"),
    "core-nilpotent": (cmd_core_nilpotent, "core and nilpotent parts"),
    "shape": (cmd_shape, "G-Drazin parameter slot listing"),
    "gd-sample": (cmd_gd_sample, "seeded random G-Drazin inverse"),
    "gd-build": (cmd_gd_build, "G-Drazin inverse from a parameter file"),
    "gd-extract": (cmd_gd_extract, "parameter file of a given G-Drazin inverse"),
    "verify": (cmd_verify, "check the G-Drazin equations for X"),
    "count": (cmd_count, "number of G-Drazin inverses over GF(q)"),
    "certify": (cmd_certify, "brute-force certification over small fields"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=parse_field, help="override the field of input files (Q, GF7, ...)")
    common.add_argument("-o", "--output", help="write to this file instead of standard output")

    parser = argparse.ArgumentParser(prog="gdinverse", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        if name == "certify":
            p.add_argument("--matrix", help="certify this matrix instead of the built-in corpus")
            p.add_argument("--n", type=int, help="restrict the corpus to this size")
            p.add_argument("--q", type=int, help="restrict the corpus to this field size")
            p.add_argument("--budget", type=int, default=oracle.DEFAULT_BUDGET, help="maximum q^(n^2) to scan")
            continue
        p.add_argument("matrix", help="input matrix file")
        if name == "gd-sample":
            p.add_argument("--seed", type=int, required=True)
            p.add_argument("--params-out", help="also write the sampled parameters here")
        elif name == "gd-build":
            p.add_argument("--params", required=True)
        elif name in ("gd-extract", "verify"):
            p.add_argument("--x", required=True, help="candidate inverse matrix file")
        elif name == "count":
            p.add_argument("--q", type=int, required=True)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = COMMANDS[args.command][0]
    try:
        A = _load_matrix(args.matrix, args.field) if args.matrix else None
        if A is not None and not A.is_square:
            raise InputError(f"{args.matrix}: matrix must be square, got {A.nrows}x{A.ncols}")
        code, text = handler(args, A)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (GInverseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
