"""
Linear algebra over F_2.

GF2Matrix packs rows into 64-bit words (column j is bit j % 64 of word j // 64) and eliminates with
vectorised XORs. IncrementalSpan keeps an echelon basis in Python integers, one bit per column, and is
what the quotient computations feed generators into.
"""
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())

BASE = 64
WORD = np.dtype('<u8')
_ONE = np.uint64(1)


def _words(ncols: int) -> int:
    return (ncols + BASE - 1) // BASE


def _bit(col: int) -> Tuple[int, np.uint64]:
    word, bit = divmod(col, BASE)
    return word, _ONE << np.uint64(bit)


@dataclass(frozen=True)
class RowReduction:
    matrix: 'GF2Matrix'
    rank: int
    pivots: Tuple[int, ...]


class GF2Matrix:
    """
    A bit-packed matrix over F_2. Column semantics are owned by the caller.
    """

    def __init__(self, rows: np.ndarray, ncols: int):
        """
        Constructor

        :param rows: A 2-d array of 64-bit words, one row per matrix row.
        :param ncols: The number of logical columns.
        :raises: ValueError if the array does not hold ncols bits per row.
        """
        if ncols < 0:
            raise ValueError('Column count must be non-negative')
        rows = np.asarray(rows, dtype=WORD)
        if rows.ndim != 2 or rows.shape[1] != _words(ncols):
            raise ValueError(f"Expected rows of {_words(ncols)} words for {ncols} columns, found shape {rows.shape}")
        self._rows = rows
        self._ncols = ncols

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> 'GF2Matrix':
        return cls(np.zeros((nrows, _words(ncols)), dtype=WORD), ncols)

    @classmethod
    def identity(cls, n: int) -> 'GF2Matrix':
        matrix = cls.zeros(n, n)
        for i in range(n):
            word, mask = _bit(i)
            matrix._rows[i, word] |= mask
        return matrix

    @classmethod
    def from_dense(cls, dense) -> 'GF2Matrix':
        """
        Packs a dense 0/1 array.

        :param dense: an array-like of shape (m, n); entries are taken mod 2.
        :return: the packed matrix.
        """
        dense = np.asarray(dense, dtype=np.uint8) % 2
        if dense.ndim != 2:
            raise ValueError('A dense matrix must be 2-dimensional')
        nrows, ncols = dense.shape
        if nrows == 0 or ncols == 0:
            return cls.zeros(nrows, ncols)
        padded = np.zeros((nrows, _words(ncols) * BASE), dtype=np.uint8)
        padded[:, :ncols] = dense
        packed = np.packbits(padded, axis=1, bitorder='little')
        return cls(np.ascontiguousarray(packed).view(WORD), ncols)

    @classmethod
    def from_int_rows(cls, rows: Sequence[int], ncols: int) -> 'GF2Matrix':
        """
        Packs rows given as Python integers, bit j being column j.
        """
        nbytes = _words(ncols) * 8
        packed = np.zeros((len(rows), _words(ncols)), dtype=WORD)
        for i, row in enumerate(rows):
            if row < 0 or row.bit_length() > ncols:
                raise ValueError(f"Row {i} does not fit in {ncols} columns")
            if nbytes:
                packed[i] = np.frombuffer(row.to_bytes(nbytes, 'little'), dtype=WORD)
        return cls(packed, ncols)

    @property
    def nrows(self) -> int:
        return self._rows.shape[0]

    @property
    def ncols(self) -> int:
        return self._ncols

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self._ncols

    @property
    def words(self) -> np.ndarray:
        return self._rows

    def to_dense(self) -> np.ndarray:
        if self._ncols == 0 or self.nrows == 0:
            return np.zeros(self.shape, dtype=np.uint8)
        raw = np.ascontiguousarray(self._rows).view(np.uint8)
        return np.unpackbits(raw, axis=1, bitorder='little')[:, :self._ncols]

    def to_int_rows(self) -> List[int]:
        return [int.from_bytes(np.ascontiguousarray(row).tobytes(), 'little') for row in self._rows]

    def get(self, i: int, j: int) -> int:
        word, mask = _bit(j)
        return int((self._rows[i, word] & mask) != 0)

    def vstack(self, other: 'GF2Matrix') -> 'GF2Matrix':
        if other.ncols != self._ncols:
            raise ValueError(f"Column counts differ: {self._ncols} != {other.ncols}")
        return GF2Matrix(np.vstack([self._rows, other._rows]), self._ncols)

    def __add__(self, other: 'GF2Matrix') -> 'GF2Matrix':
        if other.shape != self.shape:
            raise ValueError(f"Shapes differ: {self.shape} != {other.shape}")
        return GF2Matrix(self._rows ^ other._rows, self._ncols)

    __sub__ = __add__

    def __eq__(self, other):
        return isinstance(other, GF2Matrix) and self.shape == other.shape and bool(np.all(self._rows == other._rows))

    def __hash__(self):
        return hash((self.shape, self._rows.tobytes()))

    def multiply_vector(self, v: int) -> int:
        """
        Returns M v, with v and the result encoded as integers (bit j = coordinate j).
        """
        if v < 0 or v.bit_length() > self._ncols:
            raise ValueError(f"Vector does not fit in {self._ncols} columns")
        result = 0
        for i, row in enumerate(self.to_int_rows()):
            if bin(row & v).count('1') & 1:
                result |= 1 << i
        return result

    def matmul(self, other: 'GF2Matrix') -> 'GF2Matrix':
        if self._ncols != other.nrows:
            raise ValueError(f"Cannot multiply {self.shape} by {other.shape}")
        product = (self.to_dense().astype(np.int64) @ other.to_dense().astype(np.int64)) % 2
        return GF2Matrix.from_dense(product.reshape(self.nrows, other.ncols))

    def transpose(self) -> 'GF2Matrix':
        return GF2Matrix.from_dense(self.to_dense().T.reshape(self._ncols, self.nrows))

    def reduce(self, block_size: Optional[int] = None) -> RowReduction:
        """
        Reduced row-echelon form with strictly increasing pivot columns.

        :param block_size: When given, eliminate with four-Russians tables over strips of this many columns.
        :return: the echelon matrix (nonzero rows only), its rank and pivot columns.
        """
        if block_size is None:
            rows, pivots = _reduce_plain(self._rows, self._ncols)
        else:
            if not 1 <= block_size <= 16:
                raise ValueError('Block size must be between 1 and 16')
            rows, pivots = _reduce_blocked(self._rows, self._ncols, block_size)
        return RowReduction(matrix=GF2Matrix(rows, self._ncols), rank=len(pivots), pivots=tuple(pivots))

    def rank(self) -> int:
        return self.reduce().rank

    def kernel(self) -> 'GF2Matrix':
        """
        Returns a basis of {v : M v = 0}, one basis vector per row.
        """
        reduced = self.reduce()
        echelon = reduced.matrix.to_int_rows()
        pivot_set = set(reduced.pivots)
        basis = []
        for free in range(self._ncols):
            if free in pivot_set:
                continue
            v = 1 << free
            for row, col in zip(echelon, reduced.pivots):
                if (row >> free) & 1:
                    v |= 1 << col
            basis.append(v)
        return GF2Matrix.from_int_rows(basis, self._ncols)

    def row_space_contains(self, v: int) -> bool:
        span = IncrementalSpan(self._ncols)
        for row in self.to_int_rows():
            span.insert(row)
        return span.member(v)[0]

    def __repr__(self):
        return f"hitcalc.gf2.GF2Matrix(nrows={self.nrows}, ncols={self._ncols})"

    def __str__(self):
        return '\n'.join(''.join(str(b) for b in row) for row in self.to_dense())


def _reduce_plain(rows: np.ndarray, ncols: int) -> Tuple[np.ndarray, List[int]]:
    mat = rows.copy()
    m = mat.shape[0]
    pivots = []
    r = 0
    for col in range(ncols):
        if r == m:
            break
        word, mask = _bit(col)
        column = (mat[:, word] & mask) != 0
        below = np.flatnonzero(column[r:])
        if below.size == 0:
            continue
        p = r + int(below[0])
        if p != r:
            mat[[r, p]] = mat[[p, r]]
            column[[r, p]] = column[[p, r]]
        column[r] = False
        targets = np.flatnonzero(column)
        if targets.size:
            mat[targets] ^= mat[r]
        pivots.append(col)
        r += 1
    return mat[:r], pivots


def _reduce_blocked(rows: np.ndarray, ncols: int, k: int) -> Tuple[np.ndarray, List[int]]:
    # Pivots of a strip of k columns are found on the strip word alone; every other row is then cleared
    # with one lookup into the table of all 2^j combinations of the j strip pivot rows.
    mat = rows.copy()
    m = mat.shape[0]
    pivots = []
    r = 0
    col = 0
    while col < ncols and r < m:
        word = col // BASE
        end = min(col + k, ncols, (word + 1) * BASE)
        strip = mat[:, word].copy()
        taken = np.zeros(m, dtype=bool)
        taken[:r] = True
        chosen = []
        for c in range(col, end):
            _, mask = _bit(c)
            candidates = np.flatnonzero(((strip & mask) != 0) & ~taken)
            if candidates.size == 0:
                continue
            p = int(candidates[0])
            for q, qc in chosen:
                qword, qmask = _bit(qc)
                if mat[p, qword] & qmask:
                    mat[p] ^= mat[q]
            for q, _ in chosen:
                if mat[q, word] & mask:
                    mat[q] ^= mat[p]
            strip[p] = mat[p, word]
            hits = np.flatnonzero((strip & mask) != 0)
            hits = hits[hits != p]
            strip[hits] ^= strip[p]
            taken[p] = True
            chosen.append((p, c))
        if chosen:
            pivot_rows = [q for q, _ in chosen]
            table = np.zeros((1 << len(chosen), mat.shape[1]), dtype=WORD)
            for i, q in enumerate(pivot_rows):
                table[1 << i:1 << (i + 1)] = table[:1 << i] ^ mat[q]
            index = np.zeros(m, dtype=np.int64)
            for i, (_, qc) in enumerate(chosen):
                _, qmask = _bit(qc)
                index |= ((mat[:, word] & qmask) != 0).astype(np.int64) << i
            index[pivot_rows] = 0
            mat ^= table[index]
            chosen_set = set(pivot_rows)
            order = list(range(r)) + pivot_rows + [i for i in range(r, m) if i not in chosen_set]
            mat = mat[order]
            pivots.extend(qc for _, qc in chosen)
            r += len(chosen)
        col = end
    return mat[:r], pivots


def intersect(a: GF2Matrix, b: GF2Matrix) -> GF2Matrix:
    """
    Returns a basis of the intersection of the row spaces of a and b (Zassenhaus).

    :param a: the first spanning set.
    :param b: the second spanning set.
    :return: basis rows of the intersection.
    :raises: ValueError if the column counts differ.
    """
    n = a.ncols
    if b.ncols != n:
        raise ValueError(f"Column counts differ: {n} != {b.ncols}")
    stacked = [row | (row << n) for row in a.to_int_rows()] + b.to_int_rows()
    reduced = GF2Matrix.from_int_rows(stacked, 2 * n).reduce()
    basis = [row >> n for row, col in zip(reduced.matrix.to_int_rows(), reduced.pivots) if col >= n]
    return GF2Matrix.from_int_rows(basis, n)


def sum_space(a: GF2Matrix, b: GF2Matrix) -> GF2Matrix:
    return a.vstack(b).reduce().matrix


def to_gf2(matrix) -> np.ndarray:
    return np.array(matrix, dtype=np.uint8) % 2


@dataclass(frozen=True)
class NaiveRowReduction:
    matrix: np.ndarray
    rank: int
    pivots: Tuple[int, ...]


def naive_row_reduce(matrix) -> NaiveRowReduction:
    """
    Unpacked reference elimination, one uint8 per entry.
    """
    mat = to_gf2(matrix).copy()
    m, n = mat.shape
    pivots = []
    row = 0
    for col in range(n):
        if row == m:
            break
        pivot = None
        for r in range(row, m):
            if mat[r, col] == 1:
                pivot = r
                break
        if pivot is None:
            continue
        if pivot != row:
            mat[[row, pivot]] = mat[[pivot, row]]
        for r in range(m):
            if r != row and mat[r, col] == 1:
                mat[r, :] ^= mat[row, :]
        pivots.append(col)
        row += 1
    return NaiveRowReduction(matrix=mat, rank=len(pivots), pivots=tuple(pivots))


def naive_rank(matrix) -> int:
    return naive_row_reduce(matrix).rank


def naive_nullspace(matrix) -> np.ndarray:
    reduced = naive_row_reduce(matrix)
    mat = reduced.matrix
    n = mat.shape[1]
    pivots = set(reduced.pivots)
    basis = []
    for free in (c for c in range(n) if c not in pivots):
        vec = np.zeros(n, dtype=np.uint8)
        vec[free] = 1
        for row, col in enumerate(reduced.pivots):
            if mat[row, free] == 1:
                vec[col] = 1
        basis.append(vec)
    if not basis:
        return np.zeros((0, n), dtype=np.uint8)
    return np.vstack(basis)


class IncrementalSpan:
    """
    A growing subspace of F_2^ncols kept as an echelon basis indexed by leading (highest) set bit.
    Vectors are Python integers. With tracking on, every basis row remembers which inserted generators
    it is the sum of, so reductions come with a certificate.
    """

    def __init__(self, ncols: int, track: bool = False):
        """
        Constructor

        :param ncols: The dimension of the ambient space.
        :param track: Whether to record generator combinations.
        """
        if ncols < 0:
            raise ValueError('Column count must be non-negative')
        self._ncols = ncols
        self._track = track
        self._rows: Dict[int, int] = {}
        self._expressions: Dict[int, int] = {}
        self._inserted = 0

    @property
    def ncols(self) -> int:
        return self._ncols

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def tracking(self) -> bool:
        return self._track

    @property
    def generator_count(self) -> int:
        return self._inserted

    @property
    def pivots(self) -> List[int]:
        return sorted(self._rows)

    def is_pivot(self, col: int) -> bool:
        return col in self._rows

    def _check(self, v: int) -> None:
        if v < 0 or v.bit_length() > self._ncols:
            raise ValueError(f"Vector does not fit in {self._ncols} columns")

    def insert(self, v: int) -> bool:
        """
        Inserts a generator.

        :param v: the vector.
        :return: True if the rank grew.
        :raises: ValueError if the vector does not fit.
        """
        self._check(v)
        expression = (1 << self._inserted) if self._track else 0
        self._inserted += 1
        rows = self._rows
        while v:
            top = v.bit_length() - 1
            row = rows.get(top)
            if row is None:
                rows[top] = v
                if self._track:
                    self._expressions[top] = expression
                return True
            v ^= row
            if self._track:
                expression ^= self._expressions[top]
        return False

    def reduce_vector(self, v: int) -> Tuple[int, int]:
        """
        Fully reduces v against the basis.

        :param v: the vector.
        :return: (residual, combination) with v = residual + sum of the generators in combination,
                 and residual free of pivot columns. The combination is 0 when tracking is off.
        """
        self._check(v)
        rows = self._rows
        residual = 0
        combination = 0
        while v:
            top = v.bit_length() - 1
            row = rows.get(top)
            if row is None:
                residual |= 1 << top
                v ^= 1 << top
            else:
                v ^= row
                if self._track:
                    combination ^= self._expressions[top]
        return residual, combination

    def member(self, v: int) -> Tuple[bool, Optional[int]]:
        """
        Tests membership.

        :param v: the vector.
        :return: (True, combination) if v is in the span, (False, None) otherwise.
        """
        self._check(v)
        rows = self._rows
        combination = 0
        while v:
            top = v.bit_length() - 1
            row = rows.get(top)
            if row is None:
                return False, None
            v ^= row
            if self._track:
                combination ^= self._expressions[top]
        return True, combination

    def contains(self, v: int) -> bool:
        return self.member(v)[0]

    def basis(self) -> List[int]:
        return [self._rows[p] for p in sorted(self._rows)]

    def __repr__(self):
        return f"hitcalc.gf2.IncrementalSpan(ncols={self._ncols}, rank={self.rank}, generators={self._inserted})"


def combination_indices(combination: int) -> List[int]:
    """
    Lists the generator indices set in a combination bitmask, in increasing order.
    """
    indices = []
    while combination:
        low = combination & -combination
        indices.append(low.bit_length() - 1)
        combination ^= low
    return indices


def span_of(rows: Iterable[int], ncols: int) -> IncrementalSpan:
    span = IncrementalSpan(ncols)
    for row in rows:
        span.insert(row)
    return span
