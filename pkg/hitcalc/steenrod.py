"""
The action of the Steenrod squares on P_s, the conjugate squares chi(Sq^k), Kameko's map and the
generators of the hit subspace.
"""
import logging
from functools import lru_cache
from typing import FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from hitcalc import core
from hitcalc.config import GeneratorMode
from hitcalc.core import Monomial
from hitcalc.exceptions import DegreeMismatchException, ResourceLimitException

logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())


class Polynomial:
    """
    A homogeneous polynomial over F_2, stored as the set of its monomials.
    Addition is the symmetric difference of term sets.
    """

    __slots__ = ('_terms', '_s')

    def __init__(self, terms: Iterable[Sequence[int]] = (), s: Optional[int] = None):
        """
        Constructor

        :param terms: The monomials of the polynomial. A monomial listed twice cancels.
        :param s: The number of variables; inferred from the terms when omitted.
        :raises: ValueError if terms have different numbers of variables,
                 DegreeMismatchException if the terms are not homogeneous.
        """
        collected = set()
        for term in terms:
            m = term if isinstance(term, Monomial) else Monomial(term)
            collected ^= {m}
        degrees = {m.degree for m in collected}
        sizes = {len(m) for m in collected}
        if s is not None:
            sizes.add(s)
        if len(sizes) > 1:
            raise ValueError(f"Terms have different numbers of variables: {sorted(sizes)}")
        if len(degrees) > 1:
            raise DegreeMismatchException(f"Polynomial is not homogeneous, degrees {sorted(degrees)}")
        self._terms = frozenset(collected)
        self._s = sizes.pop() if sizes else None

    @classmethod
    def _trusted(cls, terms: FrozenSet[tuple], s: Optional[int]) -> 'Polynomial':
        polynomial = cls.__new__(cls)
        polynomial._terms = terms
        polynomial._s = s
        return polynomial

    @classmethod
    def zero(cls, s: Optional[int] = None) -> 'Polynomial':
        return cls._trusted(frozenset(), s)

    @classmethod
    def of(cls, m: Sequence[int]) -> 'Polynomial':
        m = m if isinstance(m, Monomial) else Monomial(m)
        return cls._trusted(frozenset([m]), len(m))

    @property
    def terms(self) -> FrozenSet[Monomial]:
        return self._terms

    @property
    def s(self) -> Optional[int]:
        return self._s

    @property
    def degree(self) -> Optional[int]:
        """
        The common degree of the terms; None for the zero polynomial.
        """
        for m in self._terms:
            return sum(m)
        return None

    def is_zero(self) -> bool:
        return not self._terms

    def sorted_terms(self) -> List[Monomial]:
        return sorted((Monomial._trusted(tuple(m)) for m in self._terms), key=core.sort_key)

    def __add__(self, other: 'Polynomial') -> 'Polynomial':
        if not isinstance(other, Polynomial):
            return NotImplemented
        if self._s is not None and other._s is not None and self._s != other._s:
            raise ValueError(f"Cannot add polynomials in {self._s} and {other._s} variables")
        terms = self._terms ^ other._terms
        if terms and self.degree is not None and other.degree is not None and self.degree != other.degree:
            raise DegreeMismatchException(f"Cannot add polynomials of degree {self.degree} and {other.degree}")
        return Polynomial._trusted(terms, self._s if self._s is not None else other._s)

    __sub__ = __add__

    def __mul__(self, other: 'Polynomial') -> 'Polynomial':
        if not isinstance(other, Polynomial):
            return NotImplemented
        if self._s is not None and other._s is not None and self._s != other._s:
            raise ValueError(f"Cannot multiply polynomials in {self._s} and {other._s} variables")
        product = set()
        for x in self._terms:
            for y in other._terms:
                product ^= {Monomial._trusted(tuple(a + b for a, b in zip(x, y)))}
        return Polynomial._trusted(frozenset(product), self._s if self._s is not None else other._s)

    def __iter__(self) -> Iterator[Monomial]:
        return iter(self.sorted_terms())

    def __len__(self):
        return len(self._terms)

    def __contains__(self, m):
        return tuple(m) in self._terms

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self._terms == other._terms

    def __hash__(self):
        return hash(self._terms)

    def to_json(self) -> List[List[int]]:
        return [list(m) for m in self.sorted_terms()]

    @classmethod
    def parse(cls, text: str, s: Optional[int] = None) -> 'Polynomial':
        """
        Parses a '+'-separated sum of monomials, e.g. [2,2,1,1,7]+[1,2,2,1,7] or x1^2x2+x1x2^2. '0' is zero.

        :param text: the polynomial text.
        :param s: the number of variables, required for the product form.
        :return: the polynomial.
        :raises: ValueError if any summand cannot be parsed.
        """
        if text is None or text.strip() == '':
            raise ValueError('Polynomial text cannot be none or empty')
        if text.strip() == '0':
            return cls.zero(s)
        return cls((Monomial.parse(part, s) for part in text.split('+')), s=s)

    def __str__(self):
        if not self._terms:
            return '0'
        return ' + '.join(str(m) for m in self.sorted_terms())

    def __repr__(self):
        return f"Polynomial({[tuple(m) for m in self.sorted_terms()]})"


def _as_polynomial(f) -> Polynomial:
    if isinstance(f, Polynomial):
        return f
    return Polynomial.of(f)


def _submasks_up_to(a: int, limit: int) -> Iterator[int]:
    sub = a
    while True:
        if sub <= limit:
            yield sub
        if sub == 0:
            return
        sub = (sub - 1) & a


@lru_cache(maxsize=1 << 16)
def _sq_terms(k: int, exponents: Tuple[int, ...]) -> FrozenSet[Monomial]:
    # Sq^k of a monomial: distribute k over the variables; Sq^j(x^a) = x^{a+j} exactly when j is a bit-submask
    # of a. Distinct distributions give distinct monomials, so no term cancels.
    if k == 0:
        return frozenset([Monomial._trusted(exponents)])
    n = len(exponents)
    tail = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        tail[i] = tail[i + 1] + exponents[i]
    if k > tail[0]:
        return frozenset()
    results = []
    current = list(exponents)

    def distribute(i: int, remaining: int) -> None:
        if i == n - 1:
            a = exponents[i]
            if remaining <= a and remaining & a == remaining:
                current[i] = a + remaining
                results.append(Monomial._trusted(tuple(current)))
                current[i] = a
            return
        a = exponents[i]
        for sub in _submasks_up_to(a, remaining):
            if remaining - sub > tail[i + 1]:
                continue
            current[i] = a + sub
            distribute(i + 1, remaining - sub)
        current[i] = a

    distribute(0, k)
    return frozenset(results)


def sq_on_power(k: int, var: int, n: int, s: Optional[int] = None) -> Polynomial:
    """
    Returns Sq^k(x_var^n) = C(n, k) x_var^{n+k} in P_s.

    :param k: the square.
    :param var: the 1-based variable index.
    :param n: the exponent.
    :param s: the number of variables; defaults to var.
    :return: x_var^{n+k} when C(n, k) is odd, zero otherwise.
    """
    if k < 0 or n < 0:
        raise ValueError('Square and exponent must be non-negative')
    s = var if s is None else s
    if k <= n and k & n == k:
        return Polynomial.of(Monomial.variable(var, s, n + k))
    return Polynomial.zero(s)


def sq(k: int, f) -> Polynomial:
    """
    Applies Sq^k to a polynomial (or a single monomial) using the Cartan formula.

    :param k: the square, k >= 0.
    :param f: the polynomial.
    :return: Sq^k(f).
    """
    if k < 0:
        raise ValueError('Square must be non-negative')
    f = _as_polynomial(f)
    if k == 0:
        return f
    result = set()
    for m in f.terms:
        result ^= _sq_terms(k, tuple(m))
    return Polynomial._trusted(frozenset(result), f.s)


def sq_word(word: Sequence[int], f) -> Polynomial:
    """
    Applies a composite Sq^{k_1} Sq^{k_2} ... Sq^{k_n}; the rightmost square acts first.
    """
    result = _as_polynomial(f)
    for k in reversed(list(word)):
        result = sq(k, result)
    return result


class ChiOperator:
    """
    Applies chi(Sq^k) through the recursion sum_{i=0}^{k} Sq^i chi(Sq^{k-i}) = 0.

    The memo is keyed by (k, monomial) and holds chi(Sq^k)(m) for k up to the configured limit; no word
    expansion of chi(Sq^k) in the Steenrod algebra is stored. One pass over j = 1..k computes
    chi(Sq^j)(m) for every smaller j on the way; repeated arguments hit the memo directly.
    """

    def __init__(self, cache_limit: int = 64):
        """
        Constructor

        :param cache_limit: The largest k whose per-monomial results are memoized.
        """
        if cache_limit < 0:
            raise ValueError('Cache limit must be non-negative')
        self.cache_limit = cache_limit
        self._apply_cached = lru_cache(maxsize=1 << 14)(self._apply_monomial)

    def _apply_monomial(self, k: int, m: Tuple[int, ...]) -> FrozenSet[Monomial]:
        values = [frozenset([Monomial._trusted(m)])]
        for j in range(1, k + 1):
            acc = set()
            for i in range(1, j + 1):
                for term in values[j - i]:
                    acc ^= _sq_terms(i, tuple(term))
            values.append(frozenset(acc))
        return values[k]

    def apply(self, k: int, f) -> Polynomial:
        if k < 0:
            raise ValueError('Square must be non-negative')
        f = _as_polynomial(f)
        if k == 0:
            return f
        compute = self._apply_cached if k <= self.cache_limit else self._apply_monomial
        result = set()
        for m in f.terms:
            result ^= compute(k, tuple(m))
        return Polynomial._trusted(frozenset(result), f.s)


_default_chi = ChiOperator()


def chi_sq(k: int, f, operator: Optional[ChiOperator] = None) -> Polynomial:
    """
    Applies the conjugate square chi(Sq^k) to f.

    :param k: the square.
    :param f: the polynomial.
    :param operator: optional operator carrying a custom cache limit.
    :return: chi(Sq^k)(f).
    """
    return (operator or _default_chi).apply(k, f)


def generator_squares(d: int, mode: GeneratorMode = GeneratorMode.POWERS_OF_TWO, max_square: Optional[int] = None) -> List[int]:
    """
    Returns the squares k used to generate the hit subspace in degree d, in increasing order.

    :param d: the target degree.
    :param mode: powers of two only, or every square.
    :param max_square: optional upper bound on k.
    :return: the list of squares.
    """
    top = d if max_square is None else min(d, max_square)
    if mode == GeneratorMode.ALL:
        return list(range(1, top + 1))
    squares = []
    k = 1
    while k <= top:
        squares.append(k)
        k <<= 1
    return squares


def hit_generator_count(s: int, d: int, mode: GeneratorMode = GeneratorMode.POWERS_OF_TWO,
                        max_square: Optional[int] = None) -> int:
    return sum(core.count_monomials(s, d - k) for k in generator_squares(d, mode, max_square))


def hit_generators(s: int, d: int,
                   mode: GeneratorMode = GeneratorMode.POWERS_OF_TWO,
                   limit: Optional[int] = None,
                   max_square: Optional[int] = None,
                   positive_only: bool = False) -> Iterator[Tuple[Tuple[int, Monomial], Polynomial]]:
    """
    Yields the generators Sq^k(m) of the hit subspace of (P_s)_d, labelled by (k, m).
    Zero generators are yielded too so that the labels enumerate every pair.

    :param s: the number of variables.
    :param d: the degree, d >= 1.
    :param mode: powers of two only, or every square.
    :param limit: optional resource guard on the number of generators.
    :param max_square: optional upper bound on k.
    :param positive_only: only generators Sq^k(m) with m in P_s^+, which span the hit part of P_s^+.
    :return: an iterator of ((k, m), Sq^k(m)).
    :raises: ValueError if d < 1, ResourceLimitException if the count exceeds the limit.
    """
    if d < 1:
        raise ValueError('Hit generators need a positive degree')
    count = hit_generator_count(s, d, mode, max_square)
    if limit is not None and count > limit:
        raise ResourceLimitException(f"(P_{s})_{d} needs {count} hit generators, above the configured limit of {limit}")
    for k in generator_squares(d, mode, max_square):
        for m in core.enumerate_monomials(s, d - k):
            if positive_only and not core.is_positive(m):
                continue
            yield (k, m), Polynomial._trusted(_sq_terms(k, tuple(m)), s)


def kameko_psi(m: Sequence[int]) -> Optional[Monomial]:
    """
    Kameko's map on monomials: halves (a_i - 1) when every exponent is odd.

    :param m: the monomial.
    :return: the image monomial, or None when some exponent is even (the image is zero).
    """
    if all(a & 1 for a in m):
        return Monomial._trusted(tuple((a - 1) >> 1 for a in m))
    return None


def kameko_psi_polynomial(f) -> Polynomial:
    f = _as_polynomial(f)
    images = set()
    for m in f.terms:
        y = kameko_psi(m)
        if y is not None:
            images ^= {y}
    return Polynomial._trusted(frozenset(images), f.s)


def kameko_section(y: Sequence[int], s: Optional[int] = None) -> Monomial:
    """
    Returns x_1 x_2 ... x_s y^2, the section of Kameko's map.

    :param y: the monomial.
    :param s: the number of variables, checked against y when given.
    :return: the monomial with exponents 2 b_i + 1.
    """
    if s is not None and len(y) != s:
        raise ValueError(f"Expected a monomial in {s} variables, found {len(y)}")
    return Monomial(2 * b + 1 for b in y)
