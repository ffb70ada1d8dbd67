import pytest

from arf_engine.errors import FormatError
from arf_engine.gf2 import BitMatrix, BitVector
from arf_engine.mcg import GeneratorWord, SurfacePinkallForm, Token, TokenKind
from arf_engine.orthogroup import Decomposition
from arf_engine.quadform import QuadraticForm
from arf_engine.textio import (
    format_decomposition,
    format_form,
    format_matrix,
    format_surface,
    format_vector,
    format_word,
    matrix_from_argument,
    parse_decomposition,
    parse_form,
    parse_inline_matrix,
    parse_matrix,
    parse_surface,
    parse_vector,
    parse_word,
    read_form,
)

V = BitVector.from_string


# ========== 矩阵与向量 ==========

class TestMatrix:
    def test_parse_with_comments(self):
        M = parse_matrix("# swap\n2 2\n\n01\n10\n")
        assert M.to_strings() == ["01", "10"]

    def test_format(self):
        assert format_matrix(BitMatrix.identity(2)) == "2 2\n10\n01\n"

    def test_zero_rows(self):
        M = parse_matrix("0 3\n")
        assert M.shape == (0, 3)

    @pytest.mark.parametrize("text,where", [
        ("", "empty"),
        ("2\n01\n10\n", "line 1"),
        ("2 2\n01\n", "expected 2 rows"),
        ("2 2\n01\n1x\n", "line 3"),
    ])
    def test_errors(self, text, where):
        with pytest.raises(FormatError, match=where):
            parse_matrix(text)

    def test_inline(self):
        assert parse_inline_matrix("011/101").to_strings() == ["011", "101"]
        with pytest.raises(FormatError):
            parse_inline_matrix("01/1")

    def test_argument_prefers_existing_file(self, tmp_path):
        (tmp_path / "m").write_text("1 2\n11\n")
        assert matrix_from_argument("m").to_strings() == ["11"]
        assert matrix_from_argument("10/01") == BitMatrix.identity(2)
        with pytest.raises(FormatError):
            matrix_from_argument("nothing-here")

    def test_vector(self):
        v = parse_vector("1 4\n0110\n")
        assert v == V("0110")
        assert format_vector(v) == "1 4\n0110\n"
        with pytest.raises(FormatError):
            parse_vector("2 1\n0\n1\n")


# ========== 二次型与曲面 ==========

class TestForm:
    def test_parse(self):
        f = parse_form("form 4\ng 1100\n0100\n1000\n0001\n0010\n")
        assert f == QuadraticForm.standard(2, "1100")

    def test_format(self):
        assert format_form(QuadraticForm.hyperbolic(1)) == "form 2\ng 11\n01\n10\n"

    def test_zero_dimensional(self):
        f = parse_form("form 0\ng\n")
        assert f.dim == 0
        assert format_form(f) == "form 0\ng\n"

    def test_wrong_keyword(self):
        with pytest.raises(FormatError, match="line 2"):
            parse_form("form 2\nq 00\n01\n10\n")

    def test_missing_file(self, tmp_path):
        with pytest.raises(FormatError, match="cannot read"):
            read_form(tmp_path / "absent.form")


class TestSurface:
    def test_parse_and_format(self):
        s = parse_surface("genus 2\ng 1011\n")
        assert s == SurfacePinkallForm.from_values(2, [1, 0, 1, 1])
        assert format_surface(s) == "genus 2\ng 1011\n"

    def test_genus_zero(self):
        assert parse_surface("genus 0\ng\n").genus == 0

    def test_wrong_length(self):
        with pytest.raises(FormatError):
            parse_surface("genus 1\ng 101\n")


# ========== 词与分解 ==========

class TestWord:
    def test_parse(self):
        word = parse_word("twist 11\n# 注释\nsquare 10\nflip\numap\n")
        assert [t.kind for t in word] == [TokenKind.TWIST, TokenKind.SQUARE, TokenKind.FLIP, TokenKind.UMAP]
        assert word.tokens[0].vector == V("11")

    def test_format(self):
        word = GeneratorWord.of([Token.twist(V("01")), Token.flip()])
        assert format_word(word) == "twist 01\nflip\n"
        assert format_word(GeneratorWord()) == ""

    @pytest.mark.parametrize("text", ["spin\n", "flip 01\n", "twist\n", "twist 0a\n"])
    def test_errors(self, text):
        with pytest.raises(FormatError, match="token 1"):
            parse_word(text)


class TestDecomposition:
    def test_parse(self):
        d = parse_decomposition("u 1\n1000\n0110\n", 4)
        assert d == Decomposition(1, (V("1000"), V("0110")))

    def test_format(self):
        assert format_decomposition(Decomposition(0, (V("11"),))) == "u 0\n11\n"
        assert format_decomposition(Decomposition(0, ())) == "u 0\n"

    @pytest.mark.parametrize("text", ["", "u 2\n", "x 0\n", "u 0\n101\n"])
    def test_errors(self, text):
        with pytest.raises(FormatError):
            parse_decomposition(text, 2)
