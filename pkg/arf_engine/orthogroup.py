"""
正交群 O(V, g)
功能:
1. 正交性判定, 平延 T_a(x) = x + B(x, a) a
2. ψ(T) = rank(T - Id) mod 2, 不动点空间 F(T) = ker(T - Id)
3. dim 4 / Arf 0 特例: V1, V2 划分, U-map, 规范 U-map U0
4. 分解成平延的乘积 (逐个还原辛基向量), 以及群的闭包枚举
"""

import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np

from .config import Settings, resolve
from .errors import DimensionMismatchError, NoPathError, NotOrthogonalError, PreconditionError, ResourceGuardError
from .gf2 import (
    BitMatrix,
    BitVector,
    RowWords,
    identity_row_words,
    inverse,
    kernel_basis,
    multiply,
    multiply_row_words,
    rank,
    rank_row_words,
    row_reduce,
)
from .quadform import (
    QuadraticForm,
    SymplecticBasis,
    arf,
    find_transvection_path,
    orthogonal_complement,
    require_nondegenerate,
    symplectic_basis,
    vectors_with_value,
)

logger = logging.getLogger(__name__)


# ========== 判定 ==========

def _check_square(f: QuadraticForm, M: BitMatrix) -> None:
    if not M.is_square() or M.rows != f.dim:
        raise DimensionMismatchError(f"expected a {f.dim}x{f.dim} matrix, got {M.rows}x{M.cols}")


def is_symplectic(f: QuadraticForm, M: BitMatrix) -> bool:
    """M 保持 B: Mᵀ·G·M = G"""
    _check_square(f, M)
    return multiply(multiply(M.transpose(), f.gram), M) == f.gram


def is_orthogonal(f: QuadraticForm, M: BitMatrix) -> bool:
    """M 可逆, g(M e_i) = g(e_i), 且保持 B (由极化, 等价于 g(T x) = g(x) 对所有 x)"""
    _check_square(f, M)
    if not M.is_invertible():
        return False
    for i, column in enumerate(M.columns()):
        if f.evaluate(column) != f.basis_g[i]:
            return False
    return is_symplectic(f, M)


class OrthogonalMap:
    """经过验证的 T ∈ O(V, g)"""

    __slots__ = ("_form", "_matrix")

    def __init__(self, form: QuadraticForm, matrix: BitMatrix, check: bool = True):
        if check and not is_orthogonal(form, matrix):
            raise NotOrthogonalError("matrix does not preserve the quadratic form")
        self._form = form
        self._matrix = matrix

    @classmethod
    def identity(cls, form: QuadraticForm) -> "OrthogonalMap":
        return cls(form, BitMatrix.identity(form.dim), check=False)

    @property
    def form(self) -> QuadraticForm:
        return self._form

    @property
    def matrix(self) -> BitMatrix:
        return self._matrix

    def apply(self, v: BitVector) -> BitVector:
        return self._matrix.apply(v)

    def __matmul__(self, other: "OrthogonalMap") -> "OrthogonalMap":
        """self ∘ other"""
        if self._form != other._form:
            raise DimensionMismatchError("maps belong to different forms")
        return OrthogonalMap(self._form, multiply(self._matrix, other._matrix), check=False)

    def inverse(self) -> "OrthogonalMap":
        return OrthogonalMap(self._form, inverse(self._matrix), check=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OrthogonalMap):
            return NotImplemented
        return self._form == other._form and self._matrix == other._matrix

    def __hash__(self) -> int:
        return hash(self._matrix)

    def __repr__(self) -> str:
        return f"OrthogonalMap({'/'.join(self._matrix.to_strings())!r})"


# ========== 平延 ==========

def transvection_matrix(f: QuadraticForm, a: BitVector) -> BitMatrix:
    """T_a 的矩阵, 不检查 g(a). 列为 T_a(e_i) = e_i + B(e_i, a) a"""
    a_bits = a.to_array().astype(np.uint8)
    ga_bits = f.functional(a).to_array().astype(np.uint8)
    return BitMatrix.from_array(np.eye(f.dim, dtype=np.uint8) ^ np.outer(a_bits, ga_bits))


def transvection(f: QuadraticForm, a: BitVector) -> OrthogonalMap:
    """T_a ∈ O(V, g) 当且仅当 g(a) = 1 或 a = 0"""
    f._check(a)
    if not a.is_zero() and not f.evaluate(a):
        raise NotOrthogonalError(f"T_a is not orthogonal: g({a.to_string()}) = 0")
    return OrthogonalMap(f, transvection_matrix(f, a), check=False)


# ========== ψ 与不动点 ==========

def rank_parity(M: BitMatrix) -> int:
    """rank(M - Id) mod 2, 对任意方阵都有意义"""
    if not M.is_square():
        raise DimensionMismatchError("rank parity needs a square matrix")
    return rank(M + BitMatrix.identity(M.rows)) & 1


def rank_parity_row_words(words: RowWords) -> int:
    """rank_parity 的行字版本, 枚举时不必转换回 BitMatrix"""
    return rank_row_words(w ^ (1 << i) for i, w in enumerate(words)) & 1


def psi(T: OrthogonalMap) -> int:
    return rank_parity(T.matrix)


def fixed_space(T: OrthogonalMap) -> List[BitVector]:
    """F(T) = ker(T - Id)"""
    return kernel_basis(T.matrix + BitMatrix.identity(T.form.dim))


def image_space(T: OrthogonalMap) -> List[BitVector]:
    """Im(T - Id) 的一组基"""
    diff = T.matrix + BitMatrix.identity(T.form.dim)
    reduced, pivots = row_reduce(diff.transpose())
    return [reduced.row(i) for i in range(len(pivots))]


def predicted_fixed_dim(T: OrthogonalMap, a: BitVector) -> int:
    """dim F(T∘T_a): F(T) ⊆ a^⊥ 时加一, 否则减一"""
    fixed = fixed_space(T)
    inside = all(not T.form.bilinear(v, a) for v in fixed)
    return len(fixed) + 1 if inside else len(fixed) - 1


# ========== U-map (dim 4, Arf 0) ==========

@dataclass(frozen=True)
class UMapPartition:
    """g = 1 的六个向量分成两组, 组内两两 B = 1, 组间 B = 0"""

    v1: Tuple[BitVector, ...]
    v2: Tuple[BitVector, ...]

    def side(self, v: BitVector) -> int:
        if v in self.v1:
            return 1
        if v in self.v2:
            return 2
        raise PreconditionError(f"{v.to_string()} has g = 0")


def _require_special_case(f: QuadraticForm) -> None:
    require_nondegenerate(f)
    if f.dim != 4 or arf(f) != 0:
        raise PreconditionError(f"U-maps need dim 4 and Arf 0, got dim {f.dim}")


def umap_partition(f: QuadraticForm) -> UMapPartition:
    """v1 含字典序最小的 g = 1 向量"""
    _require_special_case(f)
    ones = vectors_with_value(f, 1)
    first = ones[0]
    v1 = [first] + [v for v in ones[1:] if f.bilinear(first, v)]
    v2 = [v for v in ones if v not in v1]
    if len(v1) != 3 or len(v2) != 3 or any(f.bilinear(a, b) for a in v1 for b in v2):
        raise PreconditionError("g = 1 vectors do not split into two orthogonal triples")
    return UMapPartition(tuple(v1), tuple(v2))


def is_u_map(T: OrthogonalMap) -> bool:
    part = umap_partition(T.form)
    targets = set(part.v2)
    return all(T.apply(v) in targets for v in part.v1)


def _split_basis(f: QuadraticForm) -> BitMatrix:
    # 列为 p1, q1, p2, q2: span(V1) 与 span(V2) 中字典序最小的两个向量
    part = umap_partition(f)
    return BitMatrix.from_columns([part.v1[0], part.v1[1], part.v2[0], part.v2[1]], 4)


def canonical_u0(f: QuadraticForm) -> OrthogonalMap:
    """交换 span(V1) 与 span(V2): p1 <-> p2, q1 <-> q2. U0² = Id"""
    P = _split_basis(f)
    swap = BitMatrix.from_strings(["0010", "0001", "1000", "0100"])
    return OrthogonalMap(f, multiply(multiply(P, swap), inverse(P)))


def split_components(T: OrthogonalMap) -> Tuple[int, BitMatrix, BitMatrix]:
    """
    在 V = V' ⊕ V' 下写成 (T1, T2)_u:
    u = 0: (x, y) ↦ (T1 x, T2 y); u = 1: (x, y) ↦ (T1 y, T2 x)
    """
    P = _split_basis(T.form)
    local = multiply(multiply(inverse(P), T.matrix), P).to_array()
    top_left, top_right = local[:2, :2], local[:2, 2:]
    bottom_left, bottom_right = local[2:, :2], local[2:, 2:]
    if not top_right.any() and not bottom_left.any():
        return 0, BitMatrix.from_array(top_left), BitMatrix.from_array(bottom_right)
    return 1, BitMatrix.from_array(top_right), BitMatrix.from_array(bottom_left)


# ========== 分解 ==========

@dataclass(frozen=True)
class Decomposition:
    """先做 U0 (u_flag = 1 时), 再按顺序做 word 中的平延"""

    u_flag: int
    word: Tuple[BitVector, ...]

    def __len__(self) -> int:
        return len(self.word)


def recompose(f: QuadraticForm, decomposition: Decomposition) -> BitMatrix:
    current = canonical_u0(f).matrix if decomposition.u_flag else BitMatrix.identity(f.dim)
    for c in decomposition.word:
        if len(c) != f.dim:
            raise DimensionMismatchError(f"word vector {c.to_string()} has the wrong length")
        current = multiply(transvection_matrix(f, c), current)
    return current


def _restoration_basis(f: QuadraticForm) -> SymplecticBasis:
    # 每对里保证 g(a_i) = 1: 否则交换 a, b, 两者都为 0 时用 a + b
    a_list, b_list = [], []
    for a, b in symplectic_basis(f).pairs():
        if not f.evaluate(a):
            if f.evaluate(b):
                a, b = b, a
            else:
                a = a + b
        a_list.append(a)
        b_list.append(b)
    return SymplecticBasis(tuple(a_list), tuple(b_list))


def _restore_basis(f: QuadraticForm, M: BitMatrix) -> List[BitVector]:
    """
    返回 d_1..d_k 使 T_{d_k}···T_{d_1}·M = Id.
    先逐个把 M(a_i) 送回 a_i, 再处理 b_i; 每一步的平延向量
    都取在已还原向量的 B-补空间里, 所以不会破坏已还原的部分.
    """
    basis = _restoration_basis(f)
    current = M
    steps: List[BitVector] = []
    restored: List[BitVector] = []
    for v in list(basis.a_vectors) + list(basis.b_vectors):
        image = current.apply(v)
        if image != v:
            allowed = orthogonal_complement(f, restored)
            for c in find_transvection_path(f, image, v, within=allowed):
                current = multiply(transvection_matrix(f, c), current)
                steps.append(c)
        restored.append(v)
    if current != BitMatrix.identity(f.dim):
        raise NoPathError("basis restoration did not reach the identity")
    return steps


def _search_word(f: QuadraticForm, target: BitMatrix) -> List[BitVector]:
    """小维数兜底: 在平延乘积上做广度优先搜索"""
    generators = [(c, transvection_matrix(f, c).row_words()) for c in vectors_with_value(f, 1)]
    start = identity_row_words(f.dim)
    goal = target.row_words()
    parent: Dict[RowWords, Optional[Tuple[RowWords, BitVector]]] = {start: None}
    queue = deque([start])
    while queue and goal not in parent:
        node = queue.popleft()
        for c, words in generators:
            nxt = multiply_row_words(words, node)
            if nxt not in parent:
                parent[nxt] = (node, c)
                queue.append(nxt)
    if goal not in parent:
        raise NoPathError("target is not a product of transvections")
    word: List[BitVector] = []
    node = goal
    while parent[node] is not None:
        node, c = parent[node]
        word.append(c)
    word.reverse()
    return word


def decompose(T: OrthogonalMap) -> Decomposition:
    """
    T = T_{c_m} ∘ ... ∘ T_{c_1} ∘ U0^u, word = (c_1, ..., c_m), 每个 g(c_i) = 1.
    u = 1 只出现在 dim 4 / Arf 0 且 T 是 U-map 时; len(word) ≡ ψ(T) (mod 2).
    """
    f = T.form
    require_nondegenerate(f)
    u_flag = 0
    target = T.matrix
    if f.dim == 4 and arf(f) == 0 and is_u_map(T):
        u_flag = 1
        target = multiply(target, canonical_u0(f).matrix)

    try:
        restoring = _restore_basis(f, target)
    except NoPathError:
        if f.dim > 4:
            raise
        logger.debug("basis restoration failed in dim %d, falling back to breadth-first search", f.dim)
        return Decomposition(u_flag, tuple(_search_word(f, target)))
    return Decomposition(u_flag, tuple(reversed(restoring)))


# ========== 闭包枚举 ==========

def orthogonal_group_order(dim: int, arf_value: int) -> int:
    """|O(V, g)| = 2 q^{n(n-1)} (q^n ∓ 1) Π_{i<n} (q^{2i} - 1), q = 2; Arf 0 取减号"""
    if dim % 2 or dim < 0:
        raise PreconditionError(f"dimension must be even and non-negative, got {dim}")
    if arf_value not in (0, 1):
        raise PreconditionError(f"arf must be 0 or 1, got {arf_value}")
    n = dim // 2
    if n == 0:
        return 1
    order = 2 * 2 ** (n * (n - 1)) * (2 ** n - 1 if arf_value == 0 else 2 ** n + 1)
    for i in range(1, n):
        order *= 2 ** (2 * i) - 1
    return order


def expected_closure_order(f: QuadraticForm, include_umap: bool = True) -> int:
    """只用平延时 dim 4 / Arf 0 少一半, 其余情形闭包就是整个 O(V, g)"""
    form_arf = arf(f)
    order = orthogonal_group_order(f.dim, form_arf)
    if not include_umap and f.dim == 4 and form_arf == 0:
        return order // 2
    return order


def group_generators(f: QuadraticForm, include_umap: bool = True) -> List[RowWords]:
    """所有 g(a) = 1 的平延, 特例下再加 U0"""
    gens = [transvection_matrix(f, c).row_words() for c in vectors_with_value(f, 1)]
    if include_umap and f.dim == 4 and arf(f) == 0:
        gens.append(canonical_u0(f).matrix.row_words())
    return gens


def closure_row_words(f: QuadraticForm, include_umap: bool = True,
                      settings: Optional[Settings] = None) -> Set[RowWords]:
    cfg = resolve(settings)
    require_nondegenerate(f)
    if f.dim > cfg.enumerate_max_dim:
        raise ResourceGuardError(f"enumeration limited to dim <= {cfg.enumerate_max_dim}, got {f.dim}")
    expected = expected_closure_order(f, include_umap)
    if expected > cfg.enumerate_max_order:
        raise ResourceGuardError(f"group of order {expected} exceeds the limit of {cfg.enumerate_max_order} elements")
    generators = group_generators(f, include_umap)
    start = identity_row_words(f.dim)
    seen = {start}
    frontier = [start]
    while frontier:
        next_frontier = []
        for node in frontier:
            for g in generators:
                nxt = multiply_row_words(g, node)
                if nxt not in seen:
                    seen.add(nxt)
                    next_frontier.append(nxt)
        if len(seen) > cfg.enumerate_max_order:
            raise ResourceGuardError(f"closure exceeds {cfg.enumerate_max_order} elements")
        frontier = next_frontier
    logger.debug("closure of %d generators in dim %d has order %d", len(generators), f.dim, len(seen))
    return seen


def transvection_closure(f: QuadraticForm, settings: Optional[Settings] = None) -> Set[BitMatrix]:
    return {BitMatrix.from_row_words(w, f.dim) for w in closure_row_words(f, False, settings)}


def enumerate_group(f: QuadraticForm, settings: Optional[Settings] = None) -> Set[BitMatrix]:
    """平延 (以及特例下的 U0) 生成的群"""
    return {BitMatrix.from_row_words(w, f.dim) for w in closure_row_words(f, True, settings)}


def canonical_order(matrices: Iterable[BitMatrix]) -> List[BitMatrix]:
    return sorted(matrices, key=BitMatrix.sort_key)


def word_map(f: QuadraticForm, word: Sequence[BitVector]) -> OrthogonalMap:
    """按应用顺序复合平延"""
    return OrthogonalMap(f, recompose(f, Decomposition(0, tuple(word))), check=False)
