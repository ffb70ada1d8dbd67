"""
命令行入口
用法: python -m arf_engine <subcommand> ...
stdout 只输出 `key value` 结果行; 日志和错误走 stderr.
退出码: 0 成功, 1 解析 / 配置错误, 2 前置条件 / 成员判定失败
"""

import argparse
import logging
import sys
from typing import Callable, Dict, List, Optional

from rich.console import Console
from rich.logging import RichHandler

from .config import Settings
from .errors import ArfEngineError, FormatError, PreconditionError, VerificationError
from .mcg import (
    MappingClass,
    Psi,
    embedding_realizable,
    equivalent_up_to_diffeomorphism,
    evaluate_word,
    genus1_catalog,
    genus1_surface,
    quadruple_point_invariant,
    regularly_homotopic,
)
from .oracle import GroupTable
from .orthogroup import OrthogonalMap, decompose, enumerate_group, psi, recompose
from .quadform import arf
from .textio import (
    format_decomposition,
    matrix_from_argument,
    read_decomposition,
    read_form,
    read_surface,
    read_word,
)

logger = logging.getLogger(__name__)

Emit = Callable[[str], None]


class _Parser(argparse.ArgumentParser):
    """参数错误按解析错误处理 (退出码 1), 不直接退出进程"""

    def error(self, message: str):
        raise FormatError(message)


def _bool(value: bool) -> str:
    return "true" if value else "false"


# ========== 子命令 ==========

def cmd_arf(args, settings: Settings, emit: Emit) -> None:
    emit(f"arf {arf(read_form(args.form))}")


def cmd_psi(args, settings: Settings, emit: Emit) -> None:
    f = read_form(args.form)
    emit(f"psi {psi(OrthogonalMap(f, matrix_from_argument(args.matrix)))}")


def cmd_q(args, settings: Settings, emit: Emit) -> None:
    s = read_surface(args.surface)
    if args.word:
        h = evaluate_word(s, read_word(args.word))
    elif args.matrix is not None and args.epsilon is not None:
        h = MappingClass(matrix_from_argument(args.matrix), args.epsilon)
    else:
        raise FormatError("q needs --word, or --matrix together with --epsilon")
    emit(f"Q {quadruple_point_invariant(s, h)}")


def cmd_decompose(args, settings: Settings, emit: Emit) -> None:
    f = read_form(args.form)
    T = OrthogonalMap(f, matrix_from_argument(args.matrix))
    d = decompose(T)
    logger.debug("decomposed into u=%d and %d transvections", d.u_flag, len(d))
    for line in format_decomposition(d).splitlines():
        emit(line)


def cmd_verify(args, settings: Settings, emit: Emit) -> None:
    f = read_form(args.form)
    M = matrix_from_argument(args.matrix)
    d = read_decomposition(args.decomposition, f.dim)
    if recompose(f, d) == M:
        emit("verify ok")
        return
    emit("verify mismatch")
    raise VerificationError("recomposed matrix differs from the input matrix")


def cmd_check_rh(args, settings: Settings, emit: Emit) -> None:
    if len(args.surface) != 2:
        raise FormatError("check-rh needs exactly two --surface arguments")
    s1, s2 = (read_surface(path) for path in args.surface)
    emit(f"regularly-homotopic {_bool(regularly_homotopic(s1, s2))}")
    emit(f"diffeo-equivalent {_bool(equivalent_up_to_diffeomorphism(s1, s2))}")
    emit(f"embedding-realizable {_bool(embedding_realizable(s1))}")


def cmd_enumerate(args, settings: Settings, emit: Emit) -> None:
    f = read_form(args.form)
    table = GroupTable.build(f, enumerate_group(f, settings))
    emit(f"order {table.order}")
    for k, (M, bit) in enumerate(zip(table.elements, table.psi_values)):
        emit(f"element {k} psi {bit}")
        for row in M.to_strings():
            emit(row)


def cmd_catalog(args, settings: Settings, emit: Emit) -> None:
    if args.genus != 1:
        raise PreconditionError(f"the generator catalog only covers genus 1, got {args.genus}")
    s = genus1_surface(args.arf)
    for entry in genus1_catalog(args.arf):
        (a, b), (c, d) = entry.integer_matrix
        reduction = ";".join(entry.mapping_class.action.to_strings())
        emit(f"{entry.name} matrix {a},{b};{c},{d} reduction {reduction} "
             f"epsilon {entry.mapping_class.epsilon} Psi {Psi(s, entry.mapping_class)}")


COMMANDS: Dict[str, Callable] = {
    "arf": cmd_arf,
    "psi": cmd_psi,
    "q": cmd_q,
    "decompose": cmd_decompose,
    "verify": cmd_verify,
    "check-rh": cmd_check_rh,
    "enumerate": cmd_enumerate,
    "catalog": cmd_catalog,
}


# ========== 参数解析 ==========

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="arf-engine", description="Quadratic forms over GF(2) and the quadruple-point invariant")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("arf", help="Arf invariant of a form")
    p.add_argument("--form", required=True)

    p = sub.add_parser("psi", help="rank parity of an orthogonal map")
    p.add_argument("--form", required=True)
    p.add_argument("--matrix", required=True, help="matrix file or inline rows like 01/10")

    p = sub.add_parser("q", help="quadruple point invariant Q(i, i∘h)")
    p.add_argument("--surface", required=True)
    p.add_argument("--word")
    p.add_argument("--matrix")
    p.add_argument("--epsilon", type=int, choices=(0, 1))

    p = sub.add_parser("decompose", help="write an orthogonal map as transvections")
    p.add_argument("--form", required=True)
    p.add_argument("--matrix", required=True)

    p = sub.add_parser("verify", help="recompose a decomposition and compare")
    p.add_argument("--form", required=True)
    p.add_argument("--matrix", required=True)
    p.add_argument("--decomposition", required=True)

    p = sub.add_parser("check-rh", help="regular homotopy / diffeomorphism / embedding checks")
    p.add_argument("--surface", action="append", required=True)

    p = sub.add_parser("enumerate", help="list the orthogonal group with psi values")
    p.add_argument("--form", required=True)

    p = sub.add_parser("catalog", help="genus-1 generators with epsilon and Psi")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--arf", type=int, required=True, choices=(0, 1))
    return parser


def setup_logging(level: str) -> None:
    logging.basicConfig(
        level=level,
        format="%(message)s",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )


def main(argv: Optional[List[str]] = None) -> int:
    def emit(line: str) -> None:
        sys.stdout.write(line + "\n")

    try:
        args = build_parser().parse_args(argv)
        settings = Settings.from_env()
        setup_logging("DEBUG" if args.verbose else settings.log_level)
        logger.debug("running %s with %s", args.command, settings)
        COMMANDS[args.command](args, settings, emit)
    except ArfEngineError as e:
        sys.stdout.flush()
        sys.stderr.write(e.one_line() + "\n")
        return e.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
