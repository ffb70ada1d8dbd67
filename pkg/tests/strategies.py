"""hypothesis 策略和穷举辅助函数, 各测试模块共用"""

from hypothesis import strategies as st

from arf_engine.gf2 import BitMatrix, BitVector
from arf_engine.mcg import SurfacePinkallForm, Token
from arf_engine.quadform import QuadraticForm


def bit_vectors(length: int):
    return st.lists(st.integers(0, 1), min_size=length, max_size=length).map(BitVector.from_bits)


def bit_matrices(rows: int, cols: int):
    return st.lists(bit_vectors(cols), min_size=rows, max_size=rows).map(lambda rs: BitMatrix.from_rows(rs, cols))


def invertible_matrices(n: int):
    return bit_matrices(n, n).filter(lambda m: m.is_invertible())


@st.composite
def standard_forms(draw, min_genus: int = 1, max_genus: int = 3):
    genus = draw(st.integers(min_genus, max_genus))
    return QuadraticForm.standard(genus, draw(bit_vectors(2 * genus)).to_string())


@st.composite
def surfaces(draw, min_genus: int = 1, max_genus: int = 3):
    genus = draw(st.integers(min_genus, max_genus))
    return SurfacePinkallForm.from_values(genus, draw(bit_vectors(2 * genus)).to_array())


@st.composite
def good_tokens(draw, s: SurfacePinkallForm):
    """好映射 (以及 flip): T_c 且 g(c) = 1 或 c = 0, 任意 (T_c)²"""
    kind = draw(st.sampled_from(["twist", "square", "flip"]))
    if kind == "flip":
        return Token.flip()
    c = draw(bit_vectors(2 * s.genus))
    if kind == "square":
        return Token.square(c)
    if not c.is_zero() and not s.form.evaluate(c):
        # g(c) = 0 不是好映射, 退回 c = 0
        return Token.twist(BitVector.zeros(len(c)))
    return Token.twist(c)


def all_standard_forms(genus: int):
    """标准 Gram 上所有 2^{2n} 种 basis_g"""
    for value in range(1 << (2 * genus)):
        yield QuadraticForm.standard(genus, BitVector.from_int(value, 2 * genus).to_string())
