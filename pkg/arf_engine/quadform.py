"""
GF(2) 上的二次型
g 由基向量上的值 g(e_i) 和 Gram 矩阵 B(e_i, e_j) 完全决定,
求值用极化恒等式 g(x+y) = g(x) + g(y) + B(x, y) 展开.
功能:
1. 求值 / 双线性型 / 非退化判定
2. 辛基, 迷向向量组的补全, Arf 不变量, 正交直和
3. 连接向量 (connector) 和平延路径 (transvection path) 的构造
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import DegenerateFormError, DimensionMismatchError, NoPathError, PreconditionError
from .gf2 import (
    BitMatrix,
    BitVector,
    all_vectors,
    block_diag,
    in_span,
    kernel_basis,
    multiply,
    solve,
    span_rank,
)

logger = logging.getLogger(__name__)


def standard_gram(genus: int) -> BitMatrix:
    """标准相交型: 基按 a1, b1, ..., an, bn 排列, B(a_i, b_i) = 1"""
    arr = np.zeros((2 * genus, 2 * genus), dtype=np.uint8)
    for i in range(genus):
        arr[2 * i, 2 * i + 1] = 1
        arr[2 * i + 1, 2 * i] = 1
    return BitMatrix.from_array(arr)


# ========== QuadraticForm ==========

class QuadraticForm:
    """(V, g): Gram 矩阵 + 基向量上的 g 值"""

    __slots__ = ("_gram", "_basis_g", "_upper", "_nondegenerate")

    def __init__(self, gram: BitMatrix, basis_g: BitVector):
        if not gram.is_square():
            raise DimensionMismatchError(f"Gram matrix must be square, got {gram.rows}x{gram.cols}")
        if len(basis_g) != gram.rows:
            raise DimensionMismatchError(f"basis_g has length {len(basis_g)}, form has dimension {gram.rows}")
        bits = gram.to_array()
        if not np.array_equal(bits, bits.T):
            raise PreconditionError("Gram matrix must be symmetric")
        if np.any(np.diagonal(bits)):
            raise PreconditionError("Gram matrix must have zero diagonal")
        self._gram = gram
        self._basis_g = basis_g
        self._upper = BitMatrix.from_array(np.triu(bits, k=1))
        self._nondegenerate = gram.is_invertible()

    # ---------- 构造 ----------

    @classmethod
    def from_values(cls, gram: BitMatrix, values: Iterable[int]) -> "QuadraticForm":
        return cls(gram, BitVector.from_bits(values))

    @classmethod
    def standard(cls, genus: int, values: Optional[Iterable[int]] = None) -> "QuadraticForm":
        gram = standard_gram(genus)
        if values is None:
            return cls(gram, BitVector.zeros(2 * genus))
        if isinstance(values, str):
            return cls(gram, BitVector.from_string(values))
        return cls.from_values(gram, values)

    @classmethod
    def hyperbolic(cls, arf_value: int) -> "QuadraticForm":
        """二维非退化型, Arf 0 时 g = (0, 0), Arf 1 时 g = (1, 1)"""
        return cls.standard(1, [arf_value, arf_value])

    # ---------- 访问 ----------

    @property
    def dim(self) -> int:
        return self._gram.rows

    @property
    def gram(self) -> BitMatrix:
        return self._gram

    @property
    def basis_g(self) -> BitVector:
        return self._basis_g

    @property
    def nondegenerate(self) -> bool:
        return self._nondegenerate

    # ---------- 求值 ----------

    def _check(self, v: BitVector) -> None:
        if len(v) != self.dim:
            raise DimensionMismatchError(f"vector length {len(v)} does not match form dimension {self.dim}")

    def evaluate(self, v: BitVector) -> int:
        """g(v) = Σ v_i g(e_i) + Σ_{i<j} v_i v_j B(e_i, e_j)"""
        self._check(v)
        return v.dot(self._basis_g) ^ v.dot(self._upper.apply(v))

    def bilinear(self, x: BitVector, y: BitVector) -> int:
        self._check(x)
        self._check(y)
        return x.dot(self._gram.apply(y))

    def functional(self, v: BitVector) -> BitVector:
        """G·v, 即 x ↦ B(x, v) 的系数向量"""
        self._check(v)
        return self._gram.apply(v)

    def zero(self) -> BitVector:
        return BitVector.zeros(self.dim)

    def unit(self, i: int) -> BitVector:
        return BitVector.unit(self.dim, i)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QuadraticForm):
            return NotImplemented
        return self._gram == other._gram and self._basis_g == other._basis_g

    def __hash__(self) -> int:
        return hash((self._gram, self._basis_g))

    def __repr__(self) -> str:
        return f"QuadraticForm(dim={self.dim}, g='{self._basis_g.to_string()}')"


@dataclass(frozen=True)
class SymplecticBasis:
    a_vectors: Tuple[BitVector, ...]
    b_vectors: Tuple[BitVector, ...]

    @property
    def genus(self) -> int:
        return len(self.a_vectors)

    def pairs(self) -> List[Tuple[BitVector, BitVector]]:
        return list(zip(self.a_vectors, self.b_vectors))

    def as_matrix(self, dim: int) -> BitMatrix:
        """列依次为 a1, b1, ..., an, bn; 把标准 Gram 拉回成 f 的 Gram"""
        columns = [v for pair in self.pairs() for v in pair]
        return BitMatrix.from_columns(columns, dim)


# ========== 基本运算 ==========

def evaluate(f: QuadraticForm, v: BitVector) -> int:
    return f.evaluate(v)


def bilinear(f: QuadraticForm, x: BitVector, y: BitVector) -> int:
    return f.bilinear(x, y)


def is_nondegenerate(f: QuadraticForm) -> bool:
    return f.nondegenerate


def require_nondegenerate(f: QuadraticForm) -> None:
    if not f.nondegenerate:
        raise DegenerateFormError(f"form of dimension {f.dim} is degenerate")


def direct_sum(f1: QuadraticForm, f2: QuadraticForm) -> QuadraticForm:
    """(g1 ⊕ g2)(x1, x2) = g1(x1) + g2(x2)"""
    return QuadraticForm(block_diag(f1.gram, f2.gram), f1.basis_g.concat(f2.basis_g))


def pullback(f: QuadraticForm, P: BitMatrix) -> QuadraticForm:
    """x ↦ g(P·x)"""
    if not P.is_square() or P.rows != f.dim:
        raise DimensionMismatchError(f"change of basis must be {f.dim}x{f.dim}")
    gram = multiply(multiply(P.transpose(), f.gram), P)
    values = [f.evaluate(col) for col in P.columns()]
    return QuadraticForm.from_values(gram, values)


def orthogonal_complement(f: QuadraticForm, vectors: Sequence[BitVector]) -> List[BitVector]:
    """{x : B(x, v) = 0 对所有 v} 的一组基"""
    if not vectors:
        return [f.unit(i) for i in range(f.dim)]
    return kernel_basis(BitMatrix.from_rows([f.functional(v) for v in vectors], f.dim))


def vectors_with_value(f: QuadraticForm, value: int = 1) -> List[BitVector]:
    """所有 g(v) = value 的向量, 按字典序"""
    found = [v for v in all_vectors(f.dim) if f.evaluate(v) == value]
    return sorted(found, key=BitVector.sort_key)


def find_value_one(f: QuadraticForm, vectors: Sequence[BitVector]) -> Optional[BitVector]:
    """
    span(vectors) 中一个 g = 1 的向量, g 在其上恒为 0 时返回 None.
    先看单个向量, 再看 B = 1 的向量对 (它们的和必有 g = 1).
    """
    return _shifted_value_one(f, f.zero(), vectors)


def _shifted_value_one(f: QuadraticForm, shift: BitVector, vectors: Sequence[BitVector]) -> Optional[BitVector]:
    # q(k) = g(k) + B(shift, k) 与 g 有相同的极化
    def q(k: BitVector) -> int:
        return f.evaluate(k) ^ f.bilinear(shift, k)

    for v in vectors:
        if q(v):
            return v
    for u, v in combinations(vectors, 2):
        if f.bilinear(u, v):
            return u + v
    return None


def _affine_value_search(f: QuadraticForm, base: BitVector, directions: Sequence[BitVector],
                         target: int) -> Optional[BitVector]:
    """base + span(directions) 中一个 g = target 的向量"""
    if f.evaluate(base) == target:
        return base
    step = _shifted_value_one(f, base, directions)
    return None if step is None else base + step


# ========== 辛基 / Arf ==========

def _project(f: QuadraticForm, z: BitVector, x: BitVector, y: BitVector) -> BitVector:
    # 投影到 <x, y> 的 B-补空间, 要求 B(x, y) = 1
    out = z
    if f.bilinear(z, y):
        out = out + x
    if f.bilinear(z, x):
        out = out + y
    return out


def symplectic_basis(f: QuadraticForm) -> SymplecticBasis:
    """
    反复取剩余空间的第一个向量 x, 找第一个 B(x, y) = 1 的 y,
    再把剩余向量投影到 <x, y> 的补空间.
    """
    require_nondegenerate(f)
    remaining = [f.unit(i) for i in range(f.dim)]
    a_list: List[BitVector] = []
    b_list: List[BitVector] = []
    while remaining:
        x = remaining.pop(0)
        partner = next((k for k, y in enumerate(remaining) if f.bilinear(x, y)), None)
        if partner is None:
            raise DegenerateFormError(f"no partner for {x.to_string()}")
        y = remaining.pop(partner)
        remaining = [_project(f, z, x, y) for z in remaining]
        a_list.append(x)
        b_list.append(y)
    return SymplecticBasis(tuple(a_list), tuple(b_list))


def arf(f: QuadraticForm) -> int:
    """Arf(g) = Σ g(a_i) g(b_i) mod 2"""
    basis = symplectic_basis(f)
    total = 0
    for a, b in basis.pairs():
        total ^= f.evaluate(a) & f.evaluate(b)
    return total


def normal_form_basis(f: QuadraticForm) -> SymplecticBasis:
    """
    标准形辛基:
    Arf 0 -> 所有 g(a_i) = g(b_i) = 0
    Arf 1 -> g(a_1) = g(b_1) = 1, 其余为 0
    """
    plain: List[Tuple[BitVector, BitVector]] = []
    odd: List[Tuple[BitVector, BitVector]] = []
    for a, b in symplectic_basis(f).pairs():
        ga, gb = f.evaluate(a), f.evaluate(b)
        if ga and gb:
            odd.append((a, b))
            continue
        if ga:
            a = a + b
        elif gb:
            b = a + b
        plain.append((a, b))

    # 两个 (1,1) 对换成两个 (0,0) 对
    while len(odd) >= 2:
        (a1, b1), (a2, b2) = odd.pop(0), odd.pop(0)
        plain.append((a1 + a2, b1 + a2))
        plain.append((a1 + b1 + b2, a1 + b1 + a2 + b2))

    ordered = odd + plain
    return SymplecticBasis(tuple(a for a, _ in ordered), tuple(b for _, b in ordered))


def complete_isotropic(f: QuadraticForm, a_vectors: Sequence[BitVector]) -> List[BitVector]:
    """给定两两 B 正交的无关向量 a_1..a_k, 找 b_1..b_k 使 B(b_i,b_j)=0, B(a_i,b_j)=δ_ij"""
    require_nondegenerate(f)
    for a in a_vectors:
        f._check(a)
    k = len(a_vectors)
    if span_rank(a_vectors, f.dim) != k:
        raise PreconditionError("vectors a_1..a_k are not independent")
    for i, j in combinations(range(k), 2):
        if f.bilinear(a_vectors[i], a_vectors[j]):
            raise PreconditionError(f"B(a_{i + 1}, a_{j + 1}) = 1, vectors are not isotropic")

    a_rows = [f.functional(a) for a in a_vectors]
    b_vectors: List[BitVector] = []
    for i in range(k):
        rows = a_rows + [f.functional(b) for b in b_vectors]
        rhs = [1 if j == i else 0 for j in range(k)] + [0] * len(b_vectors)
        b = solve(BitMatrix.from_rows(rows, f.dim), BitVector.from_bits(rhs))
        if b is None:
            raise PreconditionError(f"no partner for a_{i + 1}")
        b_vectors.append(b)
    return b_vectors


# ========== 连接向量 ==========

def find_connector(f: QuadraticForm, w_vectors: Sequence[BitVector], a1: BitVector, a2: BitVector) -> BitVector:
    """
    找 c ∈ W^⊥, g(c) = 1, B(a1, c) = B(a2, c) = 1.
    W = <w_1..w_k>, w_i 两两正交且 g(w_i) = 1; a1, a2 ∈ W^⊥ - W.
    (dim, Arf) = (2, 0) 总是排除; (4, 0) 只在 k > 0 或 a1 = a2 时可用.
    """
    require_nondegenerate(f)
    for v in list(w_vectors) + [a1, a2]:
        f._check(v)
    k = len(w_vectors)
    for i, w in enumerate(w_vectors):
        if not f.evaluate(w):
            raise PreconditionError(f"g(w_{i + 1}) = 0")
    for i, j in combinations(range(k), 2):
        if f.bilinear(w_vectors[i], w_vectors[j]):
            raise PreconditionError(f"B(w_{i + 1}, w_{j + 1}) = 1")
    if span_rank(w_vectors, f.dim) != k:
        raise PreconditionError("w vectors are not independent")
    for name, a in (("a1", a1), ("a2", a2)):
        if not f.evaluate(a):
            raise PreconditionError(f"g({name}) = 0")
        if any(f.bilinear(a, w) for w in w_vectors):
            raise PreconditionError(f"{name} is not in the B-complement of W")
        if in_span(w_vectors, a):
            raise PreconditionError(f"{name} lies in W")
    if f.bilinear(a1, a2):
        raise PreconditionError("B(a1, a2) = 1")

    form_arf = arf(f)
    if (f.dim, form_arf) == (2, 0):
        raise PreconditionError("excluded case: dim 2, Arf 0")
    if (f.dim, form_arf) == (4, 0) and k == 0 and a1 != a2:
        raise PreconditionError("excluded case: dim 4, Arf 0 with k = 0 and a1 != a2")

    if k > 0:
        # 先找 b ∈ W^⊥ 且 B(a1, b) = B(a2, b) = 1, g(b) = 0 时再加 w_1
        rows = [f.functional(w) for w in w_vectors] + [f.functional(a1), f.functional(a2)]
        rhs = BitVector.from_bits([0] * k + [1, 1])
        b = solve(BitMatrix.from_rows(rows, f.dim), rhs)
        if b is None:
            raise NoPathError("no vector pairs with both a1 and a2 inside the complement of W")
        return b if f.evaluate(b) else b + w_vectors[0]

    if a1 == a2:
        b = solve(BitMatrix.from_rows([f.functional(a1)], f.dim), BitVector.from_bits([1]))
        base, span_u = b, [a1, b]
    else:
        b1, b2 = complete_isotropic(f, [a1, a2])
        base, span_u = b1 + b2, [a1, a2, b1, b2]
    if f.evaluate(base):
        return base

    d = find_value_one(f, orthogonal_complement(f, span_u))
    if d is None:
        raise NoPathError("g vanishes on the complement of U")
    logger.debug("connector corrected by d=%s", d.to_string())
    return base + d


def find_transvection_path(f: QuadraticForm, x: BitVector, y: BitVector,
                           within: Optional[Sequence[BitVector]] = None) -> List[BitVector]:
    """
    返回 [c1] 或 [c1, c2], g(c_i) = 1, 依次做 T_{c1}, T_{c2} 把 x 送到 y.
    B(x, y) = 1 时一步: c1 = x + y.
    否则找 s 使 B(x, s) = B(y, s) = 1, g(s) = 1, 两步: [s, x + y + s]
    (即经过 z = x + s, g(z) = g(x)).
    within 给出时所有 c_i 都取在 span(within) 里, 要求 x + y 也在其中.
    """
    f._check(x)
    f._check(y)
    if x.is_zero() or y.is_zero():
        raise PreconditionError("endpoints of a transvection path must be non-zero")
    if x == y:
        raise PreconditionError("endpoints of a transvection path must differ")
    if f.evaluate(x) != f.evaluate(y):
        raise PreconditionError("g(x) != g(y), no orthogonal map carries x to y")
    if within is not None and not in_span(within, x + y):
        raise PreconditionError("x + y is not in the allowed subspace")

    if f.bilinear(x, y):
        return [x + y]

    space = list(within) if within is not None else [f.unit(i) for i in range(f.dim)]
    if not space:
        raise NoPathError("allowed subspace is zero")
    span = BitMatrix.from_columns(space, f.dim)
    # 系数空间上的两个线性条件 B(x, s) = 1, B(y, s) = 1
    conditions = BitMatrix.from_rows([span.transpose().apply(f.functional(x)),
                                      span.transpose().apply(f.functional(y))])
    coefficients = solve(conditions, BitVector.from_bits([1, 1]))
    if coefficients is None:
        raise NoPathError(f"no s with B(x,s) = B(y,s) = 1 for x={x.to_string()}, y={y.to_string()}")
    base = span.apply(coefficients)
    directions = [span.apply(k) for k in kernel_basis(conditions)]
    s = _affine_value_search(f, base, directions, 1)
    if s is None:
        raise NoPathError(f"no intermediate vector from {x.to_string()} to {y.to_string()}")
    return [s, x + y + s]
