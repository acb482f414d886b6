"""
Monomials of P_s = F_2[x_1, ..., x_s], their weight vectors and the monomial order, spikes,
the mu function and degree bookkeeping shared by every other module.
"""
import itertools
import logging
import math
import re
import threading
from functools import lru_cache
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple

from hitcalc.exceptions import DegreeMismatchException, NoSpikeException, ResourceLimitException

logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())

MAX_VARIABLES = 6
MAX_EXPONENT = (1 << 32) - 1

_TERM_PATTERN = re.compile(r'x(\d+)(?:\^(\d+))?')


class Monomial(tuple):
    """
    A monomial x_1^{a_1} ... x_s^{a_s}, stored as its exponent tuple (a_1, ..., a_s).
    Equality and hashing are those of the exponent tuple.
    """

    __slots__ = ()

    def __new__(cls, exponents: Iterable[int]):
        if exponents is None:
            raise ValueError('Monomial cannot be none')
        values = tuple(int(a) for a in exponents)
        if not 1 <= len(values) <= MAX_VARIABLES:
            raise ValueError(f"A monomial needs between 1 and {MAX_VARIABLES} variables, found {len(values)}")
        for a in values:
            if a < 0 or a > MAX_EXPONENT:
                raise ValueError(f"Exponent out of range: {a}")
        return super().__new__(cls, values)

    @classmethod
    def _trusted(cls, exponents: tuple) -> 'Monomial':
        return tuple.__new__(cls, exponents)

    @classmethod
    def one(cls, s: int) -> 'Monomial':
        return cls((0,) * s)

    @classmethod
    def variable(cls, i: int, s: int, power: int = 1) -> 'Monomial':
        """
        Returns x_i^power in P_s.

        :param i: the 1-based variable index.
        :param s: the number of variables.
        :param power: the exponent.
        :return: the monomial.
        """
        if not 1 <= i <= s:
            raise ValueError(f"Variable index {i} out of range for s = {s}")
        exponents = [0] * s
        exponents[i - 1] = power
        return cls(exponents)

    @property
    def s(self) -> int:
        return len(self)

    @property
    def degree(self) -> int:
        return sum(self)

    @property
    def exponents(self) -> Tuple[int, ...]:
        return tuple(self)

    def weight_vector(self) -> 'WeightVector':
        return weight_vector(self)

    def __mul__(self, other):
        if not isinstance(other, tuple) or len(other) != len(self):
            raise ValueError('Monomials must have the same number of variables to be multiplied')
        return Monomial._trusted(tuple(a + b for a, b in zip(self, other)))

    def __pow__(self, n: int):
        return Monomial._trusted(tuple(a * n for a in self))

    def to_json(self) -> List[int]:
        return list(self)

    @classmethod
    def parse(cls, text: str, s: Optional[int] = None) -> 'Monomial':
        """
        Parses either an exponent array such as [7,3,3,0,0] or a product such as x1^7x2^3x3^3.

        :param text: the monomial text.
        :param s: the number of variables; required for the product form, checked for the array form.
        :return: the parsed monomial.
        :raises: ValueError if the text cannot be parsed.
        """
        if text is None or text.strip() == '':
            raise ValueError('Monomial text cannot be none or empty')
        text = text.strip().replace(' ', '').replace('*', '')
        if text.startswith('['):
            if not text.endswith(']'):
                raise ValueError(f"Unterminated exponent array: {text}")
            body = text[1:-1]
            try:
                exponents = [int(a) for a in body.split(',')] if body != '' else []
            except ValueError:
                raise ValueError(f"Invalid exponent array: {text}")
            if s is not None and len(exponents) != s:
                raise ValueError(f"Expected {s} exponents, found {len(exponents)}")
            return cls(exponents)
        if s is None:
            raise ValueError('The number of variables must be given for the product form')
        exponents = [0] * s
        if text != '1':
            position = 0
            for match in _TERM_PATTERN.finditer(text):
                if match.start() != position:
                    break
                index = int(match.group(1))
                if not 1 <= index <= s:
                    raise ValueError(f"Variable x{index} out of range for s = {s}")
                exponents[index - 1] += int(match.group(2)) if match.group(2) is not None else 1
                position = match.end()
            if position != len(text):
                raise ValueError(f"Invalid monomial at position {position}: {text}")
        return cls(exponents)

    def __str__(self):
        factors = []
        for i, a in enumerate(self, start=1):
            if a == 1:
                factors.append(f"x{i}")
            elif a > 1:
                factors.append(f"x{i}^{a}")
        return ''.join(factors) if factors else '1'

    def __repr__(self):
        return f"Monomial({tuple(self)})"


class WeightVector(tuple):
    """
    A finitely supported sequence (w_1, w_2, ...) with trailing zeros trimmed.
    Tuple comparison of trimmed vectors is the left-lexicographic order used by the weight filtration.
    """

    __slots__ = ()

    def __new__(cls, entries: Iterable[int] = ()):
        values = [int(w) for w in entries]
        if any(w < 0 for w in values):
            raise ValueError('Weight vector entries must be non-negative')
        while values and values[-1] == 0:
            values.pop()
        return super().__new__(cls, values)

    @property
    def degree(self) -> int:
        return sum(w << i for i, w in enumerate(self))

    def entry(self, i: int) -> int:
        """
        Returns the 1-based entry w_i, zero past the support.
        """
        if i < 1:
            raise ValueError('Weight vector entries are indexed from 1')
        return self[i - 1] if i <= len(self) else 0

    def is_weakly_decreasing(self) -> bool:
        return all(a >= b for a, b in zip(self, self[1:]))

    def to_json(self) -> List[int]:
        return list(self)

    @classmethod
    def parse(cls, text: str) -> 'WeightVector':
        """
        Parses a weight vector written as [3,3,1] or (3,3,1).
        """
        if text is None or text.strip() == '':
            raise ValueError('Weight vector text cannot be none or empty')
        body = text.strip().replace(' ', '').strip('[]()')
        try:
            return cls(int(w) for w in body.split(',') if w != '')
        except ValueError:
            raise ValueError(f"Invalid weight vector: {text}")

    def __str__(self):
        return '[' + ','.join(str(w) for w in self) + ']'

    def __repr__(self):
        return f"WeightVector({tuple(self)})"


class DegreeDecomposition(NamedTuple):
    """
    A degree written as d = r(2^t - 1) + 2^t * m with r = mu(d) and mu(m) < r.
    """
    r: int
    t: int
    m: int

    @property
    def degree(self) -> int:
        return self.r * ((1 << self.t) - 1) + (self.m << self.t)


def alpha(j: int, d: int) -> int:
    """
    Returns the j-th coefficient of the dyadic expansion of d.

    :param j: the bit index, starting at 0.
    :param d: a non-negative integer.
    :return: 0 or 1.
    :raises: ValueError if j or d is negative.
    """
    if j < 0 or d < 0:
        raise ValueError('Bit index and value must be non-negative')
    return (d >> j) & 1


@lru_cache(maxsize=1 << 20)
def weight_vector(m: Sequence[int]) -> WeightVector:
    """
    Returns the weight vector of a monomial: entry j counts the exponents whose (j-1)-th bit is set.

    :param m: the monomial or exponent tuple.
    :return: the trimmed weight vector.
    """
    entries = []
    top = max(m) if len(m) > 0 else 0
    j = 0
    while top >> j:
        entries.append(sum((a >> j) & 1 for a in m))
        j += 1
    return WeightVector(entries)


def sort_key(m: Sequence[int]) -> Tuple[WeightVector, Tuple[int, ...]]:
    """
    Returns a key whose natural ordering is the monomial order: weight vectors first, then exponent tuples.
    """
    return weight_vector(m), tuple(m)


def compare_monomials(x: Monomial, y: Monomial) -> int:
    """
    Compares two monomials of the same degree in P_s.

    :param x: the first monomial.
    :param y: the second monomial.
    :return: -1 if x < y, 0 if equal, 1 if x > y.
    :raises: DegreeMismatchException if the degrees differ, ValueError if the variable counts differ.
    """
    if len(x) != len(y):
        raise ValueError(f"Monomials must have the same number of variables: {len(x)} != {len(y)}")
    if sum(x) != sum(y):
        raise DegreeMismatchException(f"Cannot compare monomials of degree {sum(x)} and {sum(y)}")
    kx, ky = sort_key(x), sort_key(y)
    return (kx > ky) - (kx < ky)


_mu_lock = threading.Lock()
_mu_table = [0]


def mu(d: int) -> int:
    """
    Returns the smallest k such that d is a sum of k numbers of the form 2^u - 1 with u > 0.

    :param d: a non-negative degree.
    :return: mu(d), with mu(0) = 0.
    :raises: ValueError if d is negative.
    """
    if d < 0:
        raise ValueError('Degree must be non-negative')
    if d >= len(_mu_table):
        with _mu_lock:
            while len(_mu_table) <= d:
                n = len(_mu_table)
                best = n
                u = 1
                while (1 << u) - 1 <= n:
                    best = min(best, 1 + _mu_table[n - (1 << u) + 1])
                    u += 1
                _mu_table.append(best)
    return _mu_table[d]


def mu_by_popcount(d: int) -> int:
    """
    Returns mu(d) from the characterization mu(d) = min{k : alpha(d + k) <= k}.
    """
    if d < 0:
        raise ValueError('Degree must be non-negative')
    k = 0
    while bin(d + k).count('1') > k:
        k += 1
    return k


def spike_exponents(d: int) -> Tuple[int, ...]:
    """
    Returns the unique sequence u_1 > u_2 > ... > u_{r-1} >= u_r > 0 with d = sum(2^{u_i} - 1) and r = mu(d).

    :param d: a non-negative degree.
    :return: the exponent sequence, empty for d = 0.
    """
    remaining = d
    k = mu(d)
    sequence = []
    while k > 0:
        u = remaining.bit_length()
        while u > 0 and not ((1 << u) - 1 <= remaining and mu(remaining - (1 << u) + 1) == k - 1):
            u -= 1
        sequence.append(u)
        remaining -= (1 << u) - 1
        k -= 1
    return tuple(sequence)


def minimal_spike(d: int, s: int) -> Monomial:
    """
    Returns the minimal spike of degree d in P_s.

    :param d: the degree.
    :param s: the number of variables.
    :return: x_1^{2^{u_1}-1} ... x_r^{2^{u_r}-1}.
    :raises: NoSpikeException if mu(d) > s.
    """
    r = mu(d)
    if r > s:
        raise NoSpikeException(f"No spike of degree {d} in P_{s}: mu({d}) = {r}")
    exponents = [(1 << u) - 1 for u in spike_exponents(d)]
    return Monomial(exponents + [0] * (s - r))


def is_spike(m: Sequence[int]) -> bool:
    return all((a + 1) & a == 0 for a in m)


def spike_for_weight(omega: Sequence[int], s: int) -> Monomial:
    """
    Returns a spike of P_s whose weight vector is omega.

    :param omega: a weakly decreasing weight vector.
    :param s: the number of variables.
    :return: the spike x_1^{2^{c_1}-1} ... with c_i = #{j : omega_j >= i}.
    :raises: ValueError if omega is not weakly decreasing or omega_1 > s.
    """
    omega = WeightVector(omega)
    if not omega.is_weakly_decreasing():
        raise ValueError(f"Weight vector must be weakly decreasing: {omega}")
    if omega and omega[0] > s:
        raise ValueError(f"Weight vector {omega} does not fit in {s} variables")
    return Monomial((1 << sum(1 for w in omega if w >= i)) - 1 for i in range(1, s + 1))


def count_monomials(s: int, d: int) -> int:
    if s < 1 or d < 0:
        return 0
    return math.comb(d + s - 1, s - 1)


def count_monomials_of_weight(s: int, omega: Sequence[int]) -> int:
    return math.prod(math.comb(s, w) for w in omega)


def _guard(count: int, limit: Optional[int], what: str) -> None:
    if limit is not None and count > limit:
        raise ResourceLimitException(f"{what} needs {count} monomials, above the configured limit of {limit}")


def _compositions(d: int, s: int):
    if s == 1:
        yield (d,)
        return
    for a in range(d, -1, -1):
        for rest in _compositions(d - a, s - 1):
            yield (a,) + rest


def enumerate_monomials(s: int, d: int, limit: Optional[int] = None) -> List[Monomial]:
    """
    Lists every monomial of degree d in P_s in increasing monomial order.
    The whole degree is materialized and sorted before returning, so the count is checked against `limit` first.

    :param s: the number of variables.
    :param d: the degree.
    :param limit: optional resource guard on the number of monomials.
    :return: the ordered monomials.
    :raises: ResourceLimitException if the count exceeds the limit.
    """
    if not 1 <= s <= MAX_VARIABLES:
        raise ValueError(f"Number of variables must be between 1 and {MAX_VARIABLES}")
    if d < 0:
        return []
    _guard(count_monomials(s, d), limit, f"(P_{s})_{d}")
    return sorted((Monomial._trusted(c) for c in _compositions(d, s)), key=sort_key)


def enumerate_monomials_of_weight(s: int, omega: Sequence[int], limit: Optional[int] = None) -> List[Monomial]:
    """
    Lists every monomial of P_s whose weight vector is exactly omega, in increasing monomial order.
    """
    omega = WeightVector(omega)
    if any(w > s for w in omega):
        return []
    _guard(count_monomials_of_weight(s, omega), limit, f"P_{s}({omega})")
    choices = [itertools.combinations(range(s), w) for w in omega]
    result = []
    for selection in itertools.product(*choices):
        exponents = [0] * s
        for j, chosen in enumerate(selection):
            for i in chosen:
                exponents[i] += 1 << j
        result.append(Monomial._trusted(tuple(exponents)))
    return sorted(result, key=sort_key)


def decompose_degree(d: int, r: int) -> DegreeDecomposition:
    """
    Writes d = r(2^t - 1) + 2^t m with t = u_r, the last spike exponent of d.

    :param d: the degree.
    :param r: the expected value of mu(d).
    :return: the decomposition (r, t, m).
    :raises: ValueError if mu(d) != r or r < 1.
    """
    if r < 1 or mu(d) != r:
        raise ValueError(f"mu({d}) = {mu(d)}, expected {r}")
    u = spike_exponents(d)
    t = u[-1]
    m = sum((1 << (v - t)) - 1 for v in u[:-1])
    return DegreeDecomposition(r=r, t=t, m=m)


def family_degree(t: int) -> int:
    """
    The degree 3(2^t - 1) + 2^t of the five-variable family studied here.
    """
    if t < 1:
        raise ValueError('t must be positive')
    return 3 * ((1 << t) - 1) + (1 << t)


def kameko_target_degree(t: int) -> int:
    if t < 1:
        raise ValueError('t must be positive')
    return (1 << (t + 1)) - 4


def family_weight(t: int) -> WeightVector:
    if t < 1:
        raise ValueError('t must be positive')
    return WeightVector([3] * t + [1])


def family_weight_star(t: int) -> WeightVector:
    if t < 1:
        raise ValueError('t must be positive')
    return WeightVector([3] * t)


def support(m: Sequence[int]) -> Tuple[int, ...]:
    """
    Returns the 1-based indices of the variables occurring in m.
    """
    return tuple(i for i, a in enumerate(m, start=1) if a > 0)


def is_positive(m: Sequence[int]) -> bool:
    return all(a > 0 for a in m)


def compress(m: Sequence[int]) -> Monomial:
    """
    Drops the zero exponents of m, giving a positive monomial in |support(m)| variables.

    :raises: ValueError for the constant monomial, which has no positive form.
    """
    exponents = tuple(a for a in m if a > 0)
    if not exponents:
        raise ValueError('The constant monomial cannot be compressed')
    return Monomial._trusted(exponents)


def expand(m: Sequence[int], indices: Sequence[int], s: int) -> Monomial:
    """
    Places the exponents of m on the variables listed in indices (1-based) of P_s.
    Inverse of compress for indices = support.
    """
    if len(m) != len(indices):
        raise ValueError('Support size must match the number of exponents')
    exponents = [0] * s
    for a, i in zip(m, indices):
        exponents[i - 1] = a
    return Monomial._trusted(tuple(exponents))
