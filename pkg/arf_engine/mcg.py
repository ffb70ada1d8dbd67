"""
映射类群层 - Pinkall 二次型与四重点不变量
曲面只保留 H_1(F; Z/2) 上的数据: 映射类 h 记为 (h_*, ε(h)),
Ψ(h) = rank(h_* - Id) + (n + 1) ε(h) (mod 2) 就是 Q(i, i∘h).
功能:
1. SurfacePinkallForm / MappingClass / 生成元词 (twist, square, flip, umap)
2. 好映射分类, 词求值, 正交映射类群的成员判定
3. Ψ, Q, 正则同伦 / 微分同胚等价 / 嵌入可实现性判定
4. 亏格 1 的 A1..A4, B1, B2 生成元, 连通和
"""

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import DimensionMismatchError, MembershipError, PreconditionError
from .gf2 import BitMatrix, BitVector, block_diag, inverse, multiply
from .orthogroup import canonical_u0, is_orthogonal, rank_parity, transvection_matrix
from .quadform import QuadraticForm, arf, standard_gram


# ========== 曲面上的二次型 ==========

class SurfacePinkallForm:
    """亏格 n 曲面上的 g^i, 其双线性型是标准相交型"""

    __slots__ = ("_genus", "_form")

    def __init__(self, genus: int, form: QuadraticForm):
        if form.dim != 2 * genus:
            raise DimensionMismatchError(f"genus {genus} needs a form of dimension {2 * genus}, got {form.dim}")
        if form.gram != standard_gram(genus):
            raise PreconditionError("Gram matrix is not the standard intersection form")
        self._genus = genus
        self._form = form

    @classmethod
    def from_values(cls, genus: int, values) -> "SurfacePinkallForm":
        return cls(genus, QuadraticForm.standard(genus, values))

    @property
    def genus(self) -> int:
        return self._genus

    @property
    def form(self) -> QuadraticForm:
        return self._form

    @property
    def basis_g(self) -> BitVector:
        return self._form.basis_g

    def arf(self) -> int:
        return arf(self._form)

    def connected_sum(self, other: "SurfacePinkallForm") -> "SurfacePinkallForm":
        values = self.basis_g.concat(other.basis_g)
        return SurfacePinkallForm.from_values(self._genus + other._genus, values.to_array())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SurfacePinkallForm):
            return NotImplemented
        return self._genus == other._genus and self._form == other._form

    def __hash__(self) -> int:
        return hash(self._form)

    def __repr__(self) -> str:
        return f"SurfacePinkallForm(genus={self._genus}, g='{self.basis_g.to_string()}')"


# ========== 映射类 ==========

class MappingClass:
    """(h_*, ε): h_* 保持相交型, ε = 1 表示反向"""

    __slots__ = ("_action", "_epsilon")

    def __init__(self, action: BitMatrix, epsilon: int = 0):
        if not action.is_square() or action.rows % 2:
            raise DimensionMismatchError(f"action must be 2n x 2n, got {action.rows}x{action.cols}")
        if epsilon not in (0, 1):
            raise PreconditionError(f"epsilon must be 0 or 1, got {epsilon}")
        gram = standard_gram(action.rows // 2)
        if multiply(multiply(action.transpose(), gram), action) != gram:
            raise PreconditionError("action does not preserve the intersection form")
        self._action = action
        self._epsilon = epsilon

    @classmethod
    def identity(cls, genus: int) -> "MappingClass":
        return cls(BitMatrix.identity(2 * genus), 0)

    @classmethod
    def flip(cls, genus: int) -> "MappingClass":
        """在 H_1 上是恒等的反向映射"""
        return cls(BitMatrix.identity(2 * genus), 1)

    @property
    def action(self) -> BitMatrix:
        return self._action

    @property
    def epsilon(self) -> int:
        return self._epsilon

    @property
    def genus(self) -> int:
        return self._action.rows // 2

    def __matmul__(self, other: "MappingClass") -> "MappingClass":
        """self ∘ other"""
        if self.genus != other.genus:
            raise DimensionMismatchError(f"genus {self.genus} vs {other.genus}")
        return MappingClass(multiply(self._action, other._action), self._epsilon ^ other._epsilon)

    def inverse(self) -> "MappingClass":
        return MappingClass(inverse(self._action), self._epsilon)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MappingClass):
            return NotImplemented
        return self._action == other._action and self._epsilon == other._epsilon

    def __hash__(self) -> int:
        return hash((self._action, self._epsilon))

    def __repr__(self) -> str:
        return f"MappingClass({'/'.join(self._action.to_strings())!r}, epsilon={self._epsilon})"


# ========== 生成元词 ==========

class TokenKind(str, Enum):
    TWIST = "twist"
    SQUARE = "square"
    FLIP = "flip"
    UMAP = "umap"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    vector: Optional[BitVector] = None

    @classmethod
    def twist(cls, c: BitVector) -> "Token":
        return cls(TokenKind.TWIST, c)

    @classmethod
    def square(cls, c: BitVector) -> "Token":
        return cls(TokenKind.SQUARE, c)

    @classmethod
    def flip(cls) -> "Token":
        return cls(TokenKind.FLIP)

    @classmethod
    def umap(cls) -> "Token":
        return cls(TokenKind.UMAP)

    def __str__(self) -> str:
        if self.vector is None:
            return self.kind.value
        return f"{self.kind.value} {self.vector.to_string()}"


@dataclass(frozen=True)
class GeneratorWord:
    """按应用顺序排列: 第一个 token 最先作用"""

    tokens: Tuple[Token, ...] = ()

    @classmethod
    def of(cls, tokens: Iterable[Token]) -> "GeneratorWord":
        return cls(tuple(tokens))

    def __iter__(self):
        return iter(self.tokens)

    def __len__(self) -> int:
        return len(self.tokens)

    def __add__(self, other: "GeneratorWord") -> "GeneratorWord":
        return GeneratorWord(self.tokens + other.tokens)


def dehn_twist_action(s: SurfacePinkallForm, c: BitVector) -> MappingClass:
    """沿 c 的 Dehn 扭转在 H_1 上诱导 T_[c]; Z/2 系数下两个方向给出同一个矩阵"""
    if len(c) != 2 * s.genus:
        raise DimensionMismatchError(f"curve class has length {len(c)}, genus {s.genus} needs {2 * s.genus}")
    return MappingClass(transvection_matrix(s.form, c), 0)


def good_map_type(s: SurfacePinkallForm, token: Token) -> Optional[int]:
    """
    1: (T_c)²;  2: T_c 且 g(c) = 1;  3: T_c 且 [c] = 0;
    None: T_c 且 c ≠ 0, g(c) = 0 (不在 M_g 里)
    """
    if token.kind not in (TokenKind.TWIST, TokenKind.SQUARE):
        raise PreconditionError(f"good-map classification only applies to twists and squares, got {token.kind.value}")
    c = token.vector
    if len(c) != 2 * s.genus:
        raise DimensionMismatchError(f"curve class has length {len(c)}")
    if token.kind is TokenKind.SQUARE:
        return 1
    if c.is_zero():
        return 3
    if s.form.evaluate(c):
        return 2
    return None


def token_class(s: SurfacePinkallForm, token: Token) -> MappingClass:
    if token.kind is TokenKind.FLIP:
        return MappingClass.flip(s.genus)
    if token.kind is TokenKind.UMAP:
        if s.genus != 2 or s.arf() != 0:
            raise PreconditionError("umap is only defined for genus 2 with Arf 0")
        return MappingClass(canonical_u0(s.form).matrix, 0)
    if token.vector is None:
        raise PreconditionError(f"{token.kind.value} needs a curve class")
    twist = dehn_twist_action(s, token.vector)
    if token.kind is TokenKind.SQUARE:
        return twist @ twist
    return twist


def evaluate_word(s: SurfacePinkallForm, word: Iterable[Token]) -> MappingClass:
    """ε = flip 个数 mod 2"""
    result = MappingClass.identity(s.genus)
    for token in word:
        result = token_class(s, token) @ result
    return result


# ========== Ψ 与 Q ==========

def in_orthogonal_mcg(s: SurfacePinkallForm, h: MappingClass) -> bool:
    """h ∈ \\hat M_g 当且仅当 h_* ∈ O(H_1, g)"""
    if h.genus != s.genus:
        raise DimensionMismatchError(f"mapping class of genus {h.genus} on a surface of genus {s.genus}")
    return is_orthogonal(s.form, h.action)


def Psi(s: SurfacePinkallForm, h: MappingClass) -> int:
    """Ψ(h) = ψ(h_*) + (n + 1) ε(h)"""
    if not in_orthogonal_mcg(s, h):
        raise MembershipError("h_* does not preserve g, so i and i∘h are not regularly homotopic")
    return (rank_parity(h.action) + (s.genus + 1) * h.epsilon) & 1


def quadruple_point_invariant(s: SurfacePinkallForm, h: MappingClass) -> int:
    """Q(i, i∘h) mod 2, 对 i 到 i∘h 的任意一般正则同伦都相同"""
    return Psi(s, h)


def _check_same_genus(f1: SurfacePinkallForm, f2: SurfacePinkallForm) -> None:
    if f1.genus != f2.genus:
        raise DimensionMismatchError(f"genus {f1.genus} vs {f2.genus}")


def regularly_homotopic(f1: SurfacePinkallForm, f2: SurfacePinkallForm) -> bool:
    _check_same_genus(f1, f2)
    return f1.basis_g == f2.basis_g


def equivalent_up_to_diffeomorphism(f1: SurfacePinkallForm, f2: SurfacePinkallForm) -> bool:
    _check_same_genus(f1, f2)
    return f1.arf() == f2.arf()


def embedding_realizable(f: SurfacePinkallForm) -> bool:
    return f.arf() == 0


# ========== 亏格 1 生成元 ==========

GENUS1_MATRICES = {
    0: (
        ("A1", ((1, 2), (0, 1))),
        ("A2", ((1, 0), (2, 1))),
        ("A3", ((-1, 0), (0, 1))),
        ("A4", ((0, 1), (1, 0))),
    ),
    1: (
        ("B1", ((-1, 2), (0, 1))),
        ("B2", ((0, 1), (1, 0))),
    ),
}


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    integer_matrix: Tuple[Tuple[int, int], Tuple[int, int]]
    mapping_class: MappingClass


def reduce_integer_matrix(matrix: Sequence[Sequence[int]]) -> MappingClass:
    """GL_2(Z) 元素 -> (Z/2 约化, ε), ε = 0 当且仅当行列式为 +1"""
    (a, b), (c, d) = matrix
    det = a * d - b * c
    if det not in (1, -1):
        raise PreconditionError(f"matrix has determinant {det}, not in GL_2(Z)")
    return MappingClass(BitMatrix.from_array(np.array(matrix) % 2), 0 if det == 1 else 1)


def genus1_catalog(arf_value: int) -> List[CatalogEntry]:
    if arf_value not in GENUS1_MATRICES:
        raise PreconditionError(f"arf must be 0 or 1, got {arf_value}")
    return [CatalogEntry(name, m, reduce_integer_matrix(m)) for name, m in GENUS1_MATRICES[arf_value]]


def genus1_generators(arf_value: int) -> List[MappingClass]:
    return [entry.mapping_class for entry in genus1_catalog(arf_value)]


def genus1_surface(arf_value: int) -> SurfacePinkallForm:
    """Arf 0: g(m) = g(l) = 0; Arf 1: g(m) = g(l) = 1"""
    return SurfacePinkallForm.from_values(1, [arf_value, arf_value])


# ========== 连通和 ==========

def connected_sum(h1: MappingClass, h2: MappingClass) -> MappingClass:
    """作用是分块对角和, 两边 ε 必须一致"""
    if h1.epsilon != h2.epsilon:
        raise PreconditionError("both summands must have the same orientation character")
    return MappingClass(block_diag(h1.action, h2.action), h1.epsilon)
