"""
文本格式 - 所有输入输出文件格式的解析与输出
矩阵:   第一行 `rows cols`, 之后每行 cols 个 0/1 字符; 行内写法 `01/10`
二次型: `form <dim>` / `g <bits>` / dim 行 Gram
曲面:   `genus <n>` / `g <2n bits>`
词:     每行一个 token: `twist <bits>` `square <bits>` `flip` `umap`
分解:   `u <0|1>`, 之后每行一个向量
解析失败一律抛 FormatError, 信息里带行号.
"""

import re
from pathlib import Path
from typing import List, Sequence, Union

from .errors import FormatError
from .gf2 import BitMatrix, BitVector
from .mcg import GeneratorWord, SurfacePinkallForm, Token, TokenKind
from .orthogroup import Decomposition
from .quadform import QuadraticForm

PathLike = Union[str, Path]

_INLINE_MATRIX = re.compile(r"^[01]+(/[01]+)*$")


def _lines(text: str) -> List[str]:
    """去掉首尾空白, 跳过空行和 # 注释"""
    out = []
    for raw in text.splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append(line)
    return out


def _read(path: PathLike) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise FormatError(f"cannot read {path}: {e.strerror or e}") from None


def _bits(text: str, expected: int, where: str) -> BitVector:
    if len(text) != expected or any(ch not in "01" for ch in text):
        raise FormatError(f"{where}: expected {expected} bits, got {text!r}")
    return BitVector.from_string(text) if expected else BitVector.zeros(0)


def _keyword(line: str, key: str, where: str) -> str:
    """`key value` -> value; 允许 value 为空 (dim 0)"""
    parts = line.split(maxsplit=1)
    if not parts or parts[0] != key:
        raise FormatError(f"{where}: expected '{key} ...', got {line!r}")
    return parts[1].strip() if len(parts) > 1 else ""


def _natural(text: str, where: str) -> int:
    if not text.isdigit():
        raise FormatError(f"{where}: expected a non-negative integer, got {text!r}")
    return int(text)


# ========== 矩阵 ==========

def parse_matrix(text: str) -> BitMatrix:
    lines = _lines(text)
    if not lines:
        raise FormatError("matrix: empty input")
    header = lines[0].split()
    if len(header) != 2:
        raise FormatError(f"matrix line 1: expected 'rows cols', got {lines[0]!r}")
    rows, cols = (_natural(h, "matrix line 1") for h in header)
    body = lines[1:]
    if len(body) != rows:
        raise FormatError(f"matrix: expected {rows} rows, got {len(body)}")
    vectors = [_bits(line, cols, f"matrix line {k + 2}") for k, line in enumerate(body)]
    return BitMatrix.from_rows(vectors, cols) if rows else BitMatrix.zeros(0, cols)


def parse_inline_matrix(text: str) -> BitMatrix:
    """`0110/1001` -> 每段一行"""
    text = text.strip()
    if not _INLINE_MATRIX.match(text):
        raise FormatError(f"not an inline matrix: {text!r}")
    rows = text.split("/")
    if len({len(r) for r in rows}) != 1:
        raise FormatError(f"inline matrix rows have unequal length: {text!r}")
    return BitMatrix.from_strings(rows)


def format_matrix(M: BitMatrix) -> str:
    return "\n".join([f"{M.rows} {M.cols}"] + M.to_strings()) + "\n"


def read_matrix(path: PathLike) -> BitMatrix:
    return parse_matrix(_read(path))


def matrix_from_argument(arg: str) -> BitMatrix:
    """命令行 --matrix: 存在的文件按文件读, 否则按行内写法"""
    if Path(arg).is_file():
        return read_matrix(arg)
    if _INLINE_MATRIX.match(arg.strip()):
        return parse_inline_matrix(arg)
    raise FormatError(f"--matrix: no such file and not an inline matrix: {arg!r}")


def parse_vector(text: str) -> BitVector:
    """向量就是 1×n 矩阵"""
    M = parse_matrix(text)
    if M.rows != 1:
        raise FormatError(f"vector: expected 1 row, got {M.rows}")
    return M.row(0)


def format_vector(v: BitVector) -> str:
    return f"1 {len(v)}\n{v.to_string()}\n"


# ========== 二次型 ==========

def parse_form(text: str) -> QuadraticForm:
    lines = _lines(text)
    if len(lines) < 2:
        raise FormatError("form: expected 'form <dim>' and 'g <bits>' lines")
    dim = _natural(_keyword(lines[0], "form", "form line 1"), "form line 1")
    g = _bits(_keyword(lines[1], "g", "form line 2"), dim, "form line 2")
    body = lines[2:]
    if len(body) != dim:
        raise FormatError(f"form: expected {dim} Gram rows, got {len(body)}")
    rows = [_bits(line, dim, f"form line {k + 3}") for k, line in enumerate(body)]
    gram = BitMatrix.from_rows(rows, dim) if dim else BitMatrix.zeros(0, 0)
    return QuadraticForm(gram, g)


def format_form(f: QuadraticForm) -> str:
    lines = [f"form {f.dim}", f"g {f.basis_g.to_string()}".rstrip()] + f.gram.to_strings()
    return "\n".join(lines) + "\n"


def read_form(path: PathLike) -> QuadraticForm:
    return parse_form(_read(path))


# ========== 曲面 ==========

def parse_surface(text: str) -> SurfacePinkallForm:
    lines = _lines(text)
    if len(lines) != 2:
        raise FormatError(f"surface: expected 2 lines, got {len(lines)}")
    genus = _natural(_keyword(lines[0], "genus", "surface line 1"), "surface line 1")
    g = _bits(_keyword(lines[1], "g", "surface line 2"), 2 * genus, "surface line 2")
    return SurfacePinkallForm.from_values(genus, g.to_array())


def format_surface(s: SurfacePinkallForm) -> str:
    return f"genus {s.genus}\n" + f"g {s.basis_g.to_string()}".rstrip() + "\n"


def read_surface(path: PathLike) -> SurfacePinkallForm:
    return parse_surface(_read(path))


# ========== 生成元词 ==========

def parse_word(text: str) -> GeneratorWord:
    tokens = []
    for k, line in enumerate(_lines(text), start=1):
        parts = line.split()
        try:
            kind = TokenKind(parts[0])
        except ValueError:
            raise FormatError(f"word token {k}: unknown generator {parts[0]!r}") from None
        if kind in (TokenKind.FLIP, TokenKind.UMAP):
            if len(parts) != 1:
                raise FormatError(f"word token {k}: '{kind.value}' takes no argument")
            tokens.append(Token(kind))
        else:
            if len(parts) != 2:
                raise FormatError(f"word token {k}: '{kind.value}' needs one bit string")
            tokens.append(Token(kind, _bits(parts[1], len(parts[1]), f"word token {k}")))
    return GeneratorWord.of(tokens)


def format_word(word: GeneratorWord) -> str:
    return "".join(f"{token}\n" for token in word)


def read_word(path: PathLike) -> GeneratorWord:
    return parse_word(_read(path))


# ========== 分解 ==========

def parse_decomposition(text: str, dim: int) -> Decomposition:
    lines = _lines(text)
    if not lines:
        raise FormatError("decomposition: empty input")
    flag = _keyword(lines[0], "u", "decomposition line 1")
    if flag not in ("0", "1"):
        raise FormatError(f"decomposition line 1: u must be 0 or 1, got {flag!r}")
    word = [_bits(line, dim, f"decomposition line {k + 2}") for k, line in enumerate(lines[1:])]
    return Decomposition(int(flag), tuple(word))


def format_decomposition(d: Decomposition) -> str:
    lines: Sequence[str] = [f"u {d.u_flag}"] + [v.to_string() for v in d.word]
    return "\n".join(lines) + "\n"


def read_decomposition(path: PathLike, dim: int) -> Decomposition:
    return parse_decomposition(_read(path), dim)
