"""
GF(2) 稠密线性代数 - 位压缩实现
每一行按 64 位机器字打包 (行优先, 字内低位在前),
消元时的行异或就是逐字异或.
功能:
1. BitVector / BitMatrix 两个不可变值类型
2. rank / multiply / solve / kernel_basis
3. 行字 (row words) 形式的快速乘法和秩, 给群枚举用
"""

from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import DimensionMismatchError, FormatError, PreconditionError

WORD_BITS = 64
_ONE = np.uint64(1)


# ========== 打包 / 解包 ==========

def _nwords(n: int) -> int:
    return max(1, (n + WORD_BITS - 1) // WORD_BITS)


def _tail_mask(n: int) -> np.uint64:
    rem = n % WORD_BITS
    if n == 0:
        return np.uint64(0)
    if rem == 0:
        return np.uint64(0xFFFFFFFFFFFFFFFF)
    return np.uint64((1 << rem) - 1)


def _pack(bits: np.ndarray) -> np.ndarray:
    """(r, n) 的 0/1 数组 -> (r, nwords) 的 uint64 数组"""
    r, n = bits.shape
    nw = _nwords(n)
    padded = np.zeros((r, nw * WORD_BITS), dtype=np.uint8)
    padded[:, :n] = bits & 1
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view("<u8").astype(np.uint64)


def _unpack(words: np.ndarray, n: int) -> np.ndarray:
    as_bytes = np.ascontiguousarray(words.astype("<u8")).view(np.uint8)
    return np.unpackbits(as_bytes, axis=-1, bitorder="little")[..., :n]


def _parity(words: np.ndarray) -> np.ndarray:
    """最后一维上的 popcount 奇偶"""
    as_bytes = np.ascontiguousarray(words.astype("<u8")).view(np.uint8)
    return (np.unpackbits(as_bytes, axis=-1).sum(axis=-1) & 1).astype(np.uint8)


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


# ========== BitVector ==========

class BitVector:
    """GF(2) 上长度为 length 的向量, 超出 length 的填充位恒为 0"""

    __slots__ = ("_length", "_words")

    def __init__(self, length: int, words: Optional[Sequence[int]] = None):
        if length < 0:
            raise ValueError("length must be non-negative")
        nw = _nwords(length)
        if words is None:
            data = np.zeros(nw, dtype=np.uint64)
        else:
            data = np.array(words, dtype=np.uint64).reshape(-1)
            if data.size != nw:
                raise DimensionMismatchError(f"expected {nw} words for length {length}, got {data.size}")
            data[-1] &= _tail_mask(length)
        self._length = length
        self._words = _frozen(data)

    @classmethod
    def _wrap(cls, length: int, words: np.ndarray) -> "BitVector":
        # words 已经满足填充位约定
        obj = object.__new__(cls)
        obj._length = length
        obj._words = _frozen(words)
        return obj

    # ---------- 构造 ----------

    @classmethod
    def zeros(cls, length: int) -> "BitVector":
        return cls(length)

    @classmethod
    def unit(cls, length: int, index: int) -> "BitVector":
        if not 0 <= index < length:
            raise IndexError(f"unit index {index} out of range for length {length}")
        words = np.zeros(_nwords(length), dtype=np.uint64)
        words[index // WORD_BITS] = _ONE << np.uint64(index % WORD_BITS)
        return cls._wrap(length, words)

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BitVector":
        arr = np.asarray(list(bits), dtype=np.uint8).reshape(1, -1)
        if np.any(arr > 1):
            raise FormatError("bits must be 0 or 1")
        return cls._wrap(arr.shape[1], _pack(arr)[0])

    @classmethod
    def from_string(cls, text: str) -> "BitVector":
        """'0110' -> 第 0 位在最左边"""
        text = text.strip()
        if any(ch not in "01" for ch in text):
            raise FormatError(f"not a bit string: {text!r}")
        return cls.from_bits(int(ch) for ch in text)

    @classmethod
    def from_int(cls, value: int, length: int) -> "BitVector":
        """第 i 位 = (value >> i) & 1"""
        if value < 0 or value >> length:
            raise ValueError(f"value {value} does not fit in {length} bits")
        nw = _nwords(length)
        words = np.array([(value >> (WORD_BITS * k)) & 0xFFFFFFFFFFFFFFFF for k in range(nw)], dtype=np.uint64)
        return cls._wrap(length, words)

    # ---------- 访问 ----------

    @property
    def words(self) -> np.ndarray:
        return self._words

    def __len__(self) -> int:
        return self._length

    def __getitem__(self, index: int) -> int:
        if index < 0:
            index += self._length
        if not 0 <= index < self._length:
            raise IndexError(f"bit index {index} out of range")
        word = self._words[index // WORD_BITS]
        return int((word >> np.uint64(index % WORD_BITS)) & _ONE)

    def __iter__(self):
        return iter(self.to_array().tolist())

    def to_array(self) -> np.ndarray:
        return _unpack(self._words.reshape(1, -1), self._length)[0]

    def to_string(self) -> str:
        return "".join("1" if b else "0" for b in self.to_array())

    def to_int(self) -> int:
        return sum(int(w) << (WORD_BITS * k) for k, w in enumerate(self._words))

    def support(self) -> List[int]:
        return np.flatnonzero(self.to_array()).tolist()

    # ---------- 运算 ----------

    def _check(self, other: "BitVector") -> None:
        if self._length != other._length:
            raise DimensionMismatchError(f"vector lengths differ: {self._length} vs {other._length}")

    def __xor__(self, other: "BitVector") -> "BitVector":
        self._check(other)
        return BitVector._wrap(self._length, self._words ^ other._words)

    __add__ = __xor__

    def __and__(self, other: "BitVector") -> "BitVector":
        self._check(other)
        return BitVector._wrap(self._length, self._words & other._words)

    def dot(self, other: "BitVector") -> int:
        """标准内积 Σ x_i y_i (mod 2)"""
        self._check(other)
        return int(_parity((self._words & other._words).reshape(1, -1))[0])

    def weight(self) -> int:
        return int(self.to_array().sum())

    def is_zero(self) -> bool:
        return not self._words.any()

    def concat(self, other: "BitVector") -> "BitVector":
        return BitVector.from_bits(np.concatenate([self.to_array(), other.to_array()]))

    # ---------- 比较 ----------

    def sort_key(self) -> str:
        return self.to_string()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitVector):
            return NotImplemented
        return self._length == other._length and np.array_equal(self._words, other._words)

    def __lt__(self, other: "BitVector") -> bool:
        return self.sort_key() < other.sort_key()

    def __hash__(self) -> int:
        return hash((self._length, self._words.tobytes()))

    def __repr__(self) -> str:
        return f"BitVector('{self.to_string()}')"


# ========== BitMatrix ==========

class BitMatrix:
    """rows × cols 的 GF(2) 矩阵, 行优先打包. 作用在列向量上: M(e_j) = 第 j 列"""

    __slots__ = ("_rows", "_cols", "_data")

    def __init__(self, rows: int, cols: int, data: Optional[np.ndarray] = None):
        if rows < 0 or cols < 0:
            raise ValueError("shape must be non-negative")
        nw = _nwords(cols)
        if data is None:
            data = np.zeros((rows, nw), dtype=np.uint64)
        else:
            data = np.array(data, dtype=np.uint64).reshape(rows, nw)
            if rows:
                data[:, -1] &= _tail_mask(cols)
        self._rows = rows
        self._cols = cols
        self._data = _frozen(data)

    @classmethod
    def _wrap(cls, rows: int, cols: int, data: np.ndarray) -> "BitMatrix":
        obj = object.__new__(cls)
        obj._rows = rows
        obj._cols = cols
        obj._data = _frozen(data)
        return obj

    # ---------- 构造 ----------

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls.from_array(np.eye(n, dtype=np.uint8))

    @classmethod
    def from_array(cls, bits) -> "BitMatrix":
        arr = np.asarray(bits, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError("expected a 2-d array")
        arr = (arr & 1).astype(np.uint8)
        return cls._wrap(arr.shape[0], arr.shape[1], _pack(arr))

    @classmethod
    def from_rows(cls, rows: Sequence[BitVector], cols: Optional[int] = None) -> "BitMatrix":
        if not rows:
            return cls(0, cols or 0)
        width = len(rows[0])
        if cols is not None and cols != width:
            raise DimensionMismatchError(f"rows have length {width}, expected {cols}")
        if any(len(r) != width for r in rows):
            raise DimensionMismatchError("rows of unequal length")
        return cls._wrap(len(rows), width, np.stack([r.words for r in rows]).copy())

    @classmethod
    def from_columns(cls, columns: Sequence[BitVector], rows: Optional[int] = None) -> "BitMatrix":
        return cls.from_rows(columns, rows).transpose()

    @classmethod
    def from_strings(cls, lines: Sequence[str], cols: Optional[int] = None) -> "BitMatrix":
        return cls.from_rows([BitVector.from_string(s) for s in lines], cols)

    @classmethod
    def from_row_words(cls, words: Sequence[int], cols: int) -> "BitMatrix":
        if cols > WORD_BITS:
            raise ValueError("row words are only defined for cols <= 64")
        data = np.array(words, dtype=np.uint64).reshape(-1, 1)
        return cls._wrap(len(words), cols, data)

    # ---------- 访问 ----------

    @property
    def rows(self) -> int:
        return self._rows

    @property
    def cols(self) -> int:
        return self._cols

    @property
    def shape(self) -> Tuple[int, int]:
        return self._rows, self._cols

    @property
    def data(self) -> np.ndarray:
        return self._data

    def is_square(self) -> bool:
        return self._rows == self._cols

    def row(self, i: int) -> BitVector:
        return BitVector._wrap(self._cols, self._data[i].copy())

    def row_list(self) -> List[BitVector]:
        return [self.row(i) for i in range(self._rows)]

    def column(self, j: int) -> BitVector:
        if not 0 <= j < self._cols:
            raise IndexError(f"column {j} out of range")
        return BitVector.from_bits(self.to_array()[:, j])

    def columns(self) -> List[BitVector]:
        return self.transpose().row_list()

    def __getitem__(self, index: Tuple[int, int]) -> int:
        i, j = index
        return self.row(i)[j]

    def to_array(self) -> np.ndarray:
        return _unpack(self._data, self._cols)

    def to_strings(self) -> List[str]:
        return ["".join("1" if b else "0" for b in row) for row in self.to_array()]

    def row_words(self) -> Tuple[int, ...]:
        if self._cols > WORD_BITS:
            raise ValueError("row words are only defined for cols <= 64")
        return tuple(int(w) for w in self._data[:, 0])

    # ---------- 运算 ----------

    def transpose(self) -> "BitMatrix":
        return BitMatrix.from_array(self.to_array().T)

    @property
    def T(self) -> "BitMatrix":
        return self.transpose()

    def __xor__(self, other: "BitMatrix") -> "BitMatrix":
        if self.shape != other.shape:
            raise DimensionMismatchError(f"shapes differ: {self.shape} vs {other.shape}")
        return BitMatrix._wrap(self._rows, self._cols, self._data ^ other._data)

    __add__ = __xor__

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        return multiply(self, other)

    def apply(self, v: BitVector) -> BitVector:
        """M·v"""
        if len(v) != self._cols:
            raise DimensionMismatchError(f"vector length {len(v)} does not match {self._cols} columns")
        bits = _parity(self._data & v.words)
        return BitVector._wrap(self._rows, _pack(bits.reshape(1, -1))[0])

    def rank(self) -> int:
        return rank(self)

    def is_invertible(self) -> bool:
        return self.is_square() and rank(self) == self._rows

    def inverse(self) -> "BitMatrix":
        return inverse(self)

    # ---------- 比较 ----------

    def sort_key(self) -> str:
        """行优先的位串, 用于规范排序"""
        return "".join(self.to_strings())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self._data, other._data)

    def __hash__(self) -> int:
        return hash((self._rows, self._cols, self._data.tobytes()))

    def __repr__(self) -> str:
        return f"BitMatrix({self._rows}x{self._cols}, {'/'.join(self.to_strings())!r})"


# ========== 消元内核 ==========

def _echelon(data: np.ndarray, cols: int) -> Tuple[np.ndarray, List[int]]:
    """约化行阶梯形. 主元取每列第一个置位的行"""
    m = data.copy()
    nrows = m.shape[0]
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == nrows:
            break
        w, b = divmod(c, WORD_BITS)
        bit = _ONE << np.uint64(b)
        hits = np.flatnonzero((m[r:, w] & bit) != 0)
        if hits.size == 0:
            continue
        p = r + int(hits[0])
        if p != r:
            m[[r, p]] = m[[p, r]]
        mask = (m[:, w] & bit) != 0
        mask[r] = False
        m[mask] ^= m[r]
        pivots.append(c)
        r += 1
    return m, pivots


def row_reduce(M: BitMatrix) -> Tuple[BitMatrix, Tuple[int, ...]]:
    reduced, pivots = _echelon(M.data, M.cols)
    return BitMatrix._wrap(M.rows, M.cols, reduced), tuple(pivots)


def rank(M: BitMatrix) -> int:
    """GF(2) 上的行秩"""
    return len(_echelon(M.data, M.cols)[1])


def multiply(A: BitMatrix, B: BitMatrix) -> BitMatrix:
    """A·B: 结果第 i 行 = A 第 i 行选中的 B 各行的异或"""
    if A.cols != B.rows:
        raise DimensionMismatchError(f"cannot multiply {A.rows}x{A.cols} by {B.rows}x{B.cols}")
    selectors = A.to_array().astype(bool)
    out = np.zeros((A.rows, B.data.shape[1]), dtype=np.uint64)
    for i in range(A.rows):
        picked = B.data[selectors[i]]
        if picked.shape[0]:
            out[i] = np.bitwise_xor.reduce(picked, axis=0)
    return BitMatrix._wrap(A.rows, B.cols, out)


def block_diag(A: BitMatrix, B: BitMatrix) -> BitMatrix:
    out = np.zeros((A.rows + B.rows, A.cols + B.cols), dtype=np.uint8)
    out[:A.rows, :A.cols] = A.to_array()
    out[A.rows:, A.cols:] = B.to_array()
    return BitMatrix.from_array(out)


def solve(M: BitMatrix, v: BitVector) -> Optional[BitVector]:
    """
    求 M·x = v 的一个解, 无解返回 None.
    自由变量全取 0, 所以结果是确定的.
    """
    if M.rows != len(v):
        raise DimensionMismatchError(f"matrix has {M.rows} rows, vector has length {len(v)}")
    aug = np.hstack([M.to_array(), v.to_array().reshape(-1, 1)])
    reduced, pivots = _echelon(_pack(aug), M.cols + 1)
    if pivots and pivots[-1] == M.cols:
        return None
    bits = _unpack(reduced, M.cols + 1)
    x = np.zeros(M.cols, dtype=np.uint8)
    for r, c in enumerate(pivots):
        x[c] = bits[r, M.cols]
    return BitVector.from_bits(x)


def kernel_basis(M: BitMatrix) -> List[BitVector]:
    """零空间的基, 按自由列从小到大"""
    reduced, pivots = _echelon(M.data, M.cols)
    bits = _unpack(reduced, M.cols)
    pivot_set = set(pivots)
    basis = []
    for free in range(M.cols):
        if free in pivot_set:
            continue
        vec = np.zeros(M.cols, dtype=np.uint8)
        vec[free] = 1
        for r, c in enumerate(pivots):
            if bits[r, free]:
                vec[c] = 1
        basis.append(BitVector.from_bits(vec))
    return basis


def inverse(M: BitMatrix) -> BitMatrix:
    if not M.is_square():
        raise DimensionMismatchError(f"cannot invert a {M.rows}x{M.cols} matrix")
    n = M.rows
    aug = np.hstack([M.to_array(), np.eye(n, dtype=np.uint8)])
    reduced, pivots = _echelon(_pack(aug), 2 * n)
    if pivots[:n] != list(range(n)):
        raise PreconditionError("matrix is singular over GF(2)")
    return BitMatrix.from_array(_unpack(reduced, 2 * n)[:, n:])


# ========== 向量组工具 ==========

def span_rank(vectors: Sequence[BitVector], length: Optional[int] = None) -> int:
    if not vectors:
        return 0
    return rank(BitMatrix.from_rows(list(vectors), length))


def in_span(vectors: Sequence[BitVector], v: BitVector) -> bool:
    if v.is_zero():
        return True
    return span_rank(list(vectors) + [v]) == span_rank(vectors)


def all_vectors(length: int) -> Iterable[BitVector]:
    """按整数编码顺序枚举 GF(2)^length"""
    for value in range(1 << length):
        yield BitVector.from_int(value, length)


# ========== 行字 (row words) 内核 ==========
# 每行一个 Python int, 第 j 位 = 第 j 列. 只用于 cols <= 64 的枚举.

RowWords = Tuple[int, ...]


def identity_row_words(n: int) -> RowWords:
    return tuple(1 << i for i in range(n))


def multiply_row_words(a: RowWords, b: RowWords) -> RowWords:
    out = []
    for row in a:
        acc = 0
        while row:
            low = row & -row
            acc ^= b[low.bit_length() - 1]
            row ^= low
        out.append(acc)
    return tuple(out)


def rank_row_words(words: Iterable[int]) -> int:
    pivots = {}
    for w in words:
        while w:
            top = w.bit_length() - 1
            if top in pivots:
                w ^= pivots[top]
            else:
                pivots[top] = w
                break
    return len(pivots)


def row_words_key(words: RowWords, cols: int) -> str:
    """与 BitMatrix.sort_key 一致的规范键"""
    return "".join(format(w, f"0{cols}b")[::-1] if cols else "" for w in words)
