"""
暴力验证引擎 (oracle)
不依赖分解算法, 直接穷举, 用来交叉检查 quadform / orthogroup 的结果:
1. filter_full_linear_group: 在 GL(V) 里逐列回溯, 筛出 O(V, g)
2. democratic_arf: 数 g(v) = 0 的向量, Gray 码逐位更新
3. homomorphism_table: 在整张乘法表上检查 ψ 是同态
4. 随机正交元素, 群阶公式, Sp(V) 上 rank parity 不是同态的反例
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .config import Settings, resolve
from .errors import PreconditionError, ResourceGuardError
from .gf2 import BitMatrix, BitVector, RowWords, identity_row_words, multiply_row_words
from .orthogroup import (
    OrthogonalMap,
    canonical_order,
    is_orthogonal,
    orthogonal_group_order,
    rank_parity_row_words,
    transvection_matrix,
    word_map,
)
from .quadform import QuadraticForm, require_nondegenerate, standard_gram

logger = logging.getLogger(__name__)


# ========== 群表 ==========

@dataclass
class GroupTable:
    """规范顺序的元素列表, 以及对应的 ψ 值"""

    form: QuadraticForm
    elements: List[BitMatrix]
    psi_values: List[int]
    _index: Dict[RowWords, int] = field(default=None, init=False, repr=False, compare=False)

    @classmethod
    def build(cls, form: QuadraticForm, matrices) -> "GroupTable":
        elements = canonical_order(matrices)
        return cls(form, elements, [rank_parity_row_words(m.row_words()) for m in elements])

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def index_of(self, words: RowWords) -> Optional[int]:
        if self._index is None:
            self._index = {m.row_words(): k for k, m in enumerate(self.elements)}
        return self._index.get(words)


def is_group(t: GroupTable) -> bool:
    """含单位元, 对乘法和逆封闭, 且每个元素都正交"""
    dim = t.form.dim
    if t.index_of(identity_row_words(dim)) is None:
        return False
    if not all(is_orthogonal(t.form, m) for m in t.elements):
        return False
    words = [m.row_words() for m in t.elements]
    ident = identity_row_words(dim)
    for s in words:
        has_inverse = False
        for u in words:
            product = multiply_row_words(s, u)
            if t.index_of(product) is None:
                return False
            if product == ident:
                has_inverse = True
        if not has_inverse:
            return False
    return True


# ========== 穷举筛选 ==========

def _value_tables(f: QuadraticForm) -> Tuple[List[int], List[int]]:
    """按整数编码: g(v) 以及 G·v 的整数形式"""
    g_vals, functionals = [], []
    for value in range(1 << f.dim):
        v = BitVector.from_int(value, f.dim)
        g_vals.append(f.evaluate(v))
        functionals.append(f.functional(v).to_int())
    return g_vals, functionals


def _parity(x: int) -> int:
    return bin(x).count("1") & 1


def _column_search(f: QuadraticForm, keep_values: bool) -> Iterator[Tuple[int, ...]]:
    """
    依次选 M(e_0), M(e_1), ...: 与前面各列的 B 值必须等于 Gram 矩阵,
    keep_values 时还要 g(M e_j) = g(e_j). 只要基向量上对了, 整个空间就对了.
    """
    dim = f.dim
    g_vals, functionals = _value_tables(f)
    target_g = [f.basis_g[j] for j in range(dim)]
    gram = [[f.gram[i, j] for j in range(dim)] for i in range(dim)]
    columns: List[int] = []

    def extend() -> Iterator[Tuple[int, ...]]:
        j = len(columns)
        if j == dim:
            yield tuple(columns)
            return
        for c in range(1, 1 << dim):
            if keep_values and g_vals[c] != target_g[j]:
                continue
            if any(_parity(columns[i] & functionals[c]) != gram[i][j] for i in range(j)):
                continue
            columns.append(c)
            yield from extend()
            columns.pop()

    yield from extend()


def _matrices_from_search(f: QuadraticForm, keep_values: bool) -> List[BitMatrix]:
    found = []
    for cols in _column_search(f, keep_values):
        M = BitMatrix.from_columns([BitVector.from_int(c, f.dim) for c in cols], f.dim)
        if M.is_invertible():
            found.append(M)
    return found


def _check_filter_dim(dim: int, settings: Optional[Settings]) -> None:
    cfg = resolve(settings)
    if dim > cfg.filter_max_dim:
        raise ResourceGuardError(f"brute-force filter limited to dim <= {cfg.filter_max_dim}, got {dim}")


def filter_full_linear_group(f: QuadraticForm, settings: Optional[Settings] = None) -> GroupTable:
    """GL(V) 中所有通过 is_orthogonal 的矩阵"""
    _check_filter_dim(f.dim, settings)
    matrices = [M for M in _matrices_from_search(f, True) if is_orthogonal(f, M)]
    logger.debug("filtered O(V, g) in dim %d: %d elements", f.dim, len(matrices))
    return GroupTable.build(f, matrices)


def filter_symplectic_group(dim: int, settings: Optional[Settings] = None) -> List[BitMatrix]:
    """标准 Gram 下的 Sp(V), 规范顺序"""
    if dim % 2:
        raise PreconditionError(f"symplectic dimension must be even, got {dim}")
    _check_filter_dim(dim, settings)
    f = QuadraticForm(standard_gram(dim // 2), BitVector.zeros(dim))
    return canonical_order(_matrices_from_search(f, False))


def find_rank_parity_witness(elements: Sequence[BitMatrix],
                             generators: Sequence[BitMatrix]) -> Optional[Tuple[BitMatrix, BitMatrix]]:
    """找 (S, T) 使 rank_parity(S·T) ≠ rank_parity(S) + rank_parity(T)"""
    words = [T.row_words() for T in elements]
    parities = [rank_parity_row_words(w) for w in words]
    for S in generators:
        s_words = S.row_words()
        ps = rank_parity_row_words(s_words)
        for T, t_words, pt in zip(elements, words, parities):
            if rank_parity_row_words(multiply_row_words(s_words, t_words)) != ps ^ pt:
                return S, T
    return None


def symplectic_transvections(dim: int) -> List[BitMatrix]:
    """标准 Gram 下所有 a ≠ 0 的 T_a, 它们生成 Sp(V)"""
    f = QuadraticForm(standard_gram(dim // 2), BitVector.zeros(dim))
    return [transvection_matrix(f, BitVector.from_int(v, dim)) for v in range(1, 1 << dim)]


# ========== 民主计数 ==========

def value_counts(f: QuadraticForm, settings: Optional[Settings] = None) -> Tuple[int, int]:
    """
    (#{g = 0}, #{g = 1}). Gray 码: 第 k 步翻转第 i 位 (k 的最低位),
    g(v + e_i) = g(v) + g(e_i) + B(v, e_i)
    """
    cfg = resolve(settings)
    if f.dim > cfg.democratic_max_dim:
        raise ResourceGuardError(f"democratic count limited to dim <= {cfg.democratic_max_dim}, got {f.dim}")
    gram_rows = [f.gram.row(i).to_int() for i in range(f.dim)]
    unit_values = [f.basis_g[i] for i in range(f.dim)]
    v, value, zeros = 0, 0, 1
    for k in range(1, 1 << f.dim):
        i = (k & -k).bit_length() - 1
        value ^= unit_values[i] ^ _parity(v & gram_rows[i])
        v ^= 1 << i
        zeros += value ^ 1
    total = 1 << f.dim
    return zeros, total - zeros


def democratic_arf(f: QuadraticForm, settings: Optional[Settings] = None) -> int:
    """g = 0 占严格多数时为 0, 否则为 1"""
    require_nondegenerate(f)
    zeros, ones = value_counts(f, settings)
    return 0 if zeros > ones else 1


# ========== 同态检查 ==========

def homomorphism_table(t: GroupTable) -> bool:
    """ψ(S·T) = ψ(S) + ψ(T) 对所有有序对成立, 且 ψ 不恒为 0"""
    if not any(t.psi_values):
        return False
    words = [m.row_words() for m in t.elements]
    for s, ps in zip(words, t.psi_values):
        for u, pu in zip(words, t.psi_values):
            k = t.index_of(multiply_row_words(s, u))
            if k is None or t.psi_values[k] != ps ^ pu:
                return False
    return True


# ========== 随机元素 ==========

def random_transvection_word(f: QuadraticForm, rng: np.random.Generator, length: int) -> List[BitVector]:
    """length 个 g(a) = 1 的均匀随机向量 (拒绝采样)"""
    require_nondegenerate(f)
    if length and f.dim == 0:
        raise PreconditionError("the zero-dimensional form has no transvections")
    word = []
    while len(word) < length:
        a = BitVector.from_bits(rng.integers(0, 2, size=f.dim))
        if f.evaluate(a):
            word.append(a)
    return word


def random_orthogonal(f: QuadraticForm, seed: int, length: int) -> OrthogonalMap:
    """同一个 seed 给出同一个元素; ψ = length mod 2"""
    rng = np.random.default_rng(seed)
    return word_map(f, random_transvection_word(f, rng, length))

