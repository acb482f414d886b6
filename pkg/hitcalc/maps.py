"""
Homomorphisms between P_{s-1} and P_s: the variable insertions rho_i, the monomial maps phi_(i;I) and the
algebra maps p_(i;I), with the sets Phi^0(U) and Phi^+(U) built from them.
"""
import itertools
import logging
from typing import Iterable, List, NamedTuple, Optional, Sequence, Set, Tuple, Union

from hitcalc import core
from hitcalc.core import Monomial
from hitcalc.exceptions import InternalConsistencyError
from hitcalc.steenrod import Polynomial

logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())


class IndexPair(NamedTuple):
    """
    A pair (i; I) with I = (i_1, ..., i_r) and i < i_1 < ... < i_r <= s.
    """
    i: int
    I: Tuple[int, ...]
    s: int

    @classmethod
    def of(cls, i: int, I: Sequence[int], s: int) -> 'IndexPair':
        """
        Builds a validated pair.

        :raises: ValueError if the pair is not in N_s.
        """
        I = tuple(I)
        if not 1 <= i <= s:
            raise ValueError(f"Index {i} out of range for s = {s}")
        if any(a >= b for a, b in zip(I, I[1:])) or (I and (I[0] <= i or I[-1] > s)):
            raise ValueError(f"Invalid index set {I} for i = {i}, s = {s}")
        if len(I) >= s:
            raise ValueError('The index set must be shorter than s')
        return cls(i, I, s)

    @property
    def length(self) -> int:
        return len(self.I)

    def __str__(self):
        return f"({self.i}; {', '.join(str(k) for k in self.I) or '-'})"


def index_pairs(s: int, length: Optional[int] = None) -> List[IndexPair]:
    """
    Lists N_s in lexicographic order, optionally only the pairs with len(I) = length.
    There are 2^s - 1 pairs in all.
    """
    pairs = []
    for i in range(1, s + 1):
        rest = range(i + 1, s + 1)
        for r in range(0, s - i + 1):
            if length is not None and r != length:
                continue
            pairs.extend(IndexPair(i, I, s) for I in itertools.combinations(rest, r))
    return sorted(pairs)


def _rho_monomial(i: int, m: Sequence[int]) -> Monomial:
    exponents = tuple(m)
    return Monomial._trusted(exponents[:i - 1] + (0,) + exponents[i - 1:])


def rho(i: int, f: Union[Polynomial, Sequence[int]]) -> Union[Polynomial, Monomial]:
    """
    Inserts a new variable at position i: x_j -> x_j for j < i and x_j -> x_{j+1} for j >= i.

    :param i: the position, 1 <= i <= s where s is one more than the number of variables of f.
    :param f: a polynomial or monomial of P_{s-1}.
    :return: the image in P_s, of the same kind as f.
    :raises: ValueError if i is out of range.
    """
    if isinstance(f, Polynomial):
        if f.s is None:
            return Polynomial.zero()
        if not 1 <= i <= f.s + 1:
            raise ValueError(f"Index {i} out of range for s = {f.s + 1}")
        return Polynomial._trusted(frozenset(_rho_monomial(i, m) for m in f.terms), f.s + 1)
    if not 1 <= i <= len(f) + 1:
        raise ValueError(f"Index {i} out of range for s = {len(f) + 1}")
    return _rho_monomial(i, f)


def u_compatible(m: Sequence[int], pair: IndexPair) -> Optional[int]:
    """
    Returns the u for which m (in P_{s-1}) is u-compatible with (i; I), or None.
    Every monomial is 1-compatible with (i; ()).
    """
    r = pair.length
    if r == 0:
        return 1
    full = (1 << r) - 1
    a = [m[k - 2] for k in pair.I]
    for u in range(1, r + 1):
        if a[u - 1] <= full:
            continue
        if any(a[t - 1] != full for t in range(1, u)):
            continue
        if not all(core.alpha(r - t, a[u - 1]) for t in range(1, u + 1)):
            continue
        if not all(core.alpha(r - t, a[t - 1]) for t in range(u + 1, r + 1)):
            continue
        return u
    return None


def x_iu(pair: IndexPair, u: int, s: Optional[int] = None) -> Monomial:
    """
    Returns x_(I,u) = x_{i_u}^{2^{r-1} + ... + 2^{r-u}} * prod_{u < t <= r} x_{i_t}^{2^{r-t}} in P_s.
    """
    s = pair.s if s is None else s
    r = pair.length
    exponents = [0] * s
    if r == 0:
        return Monomial(exponents)
    if not 1 <= u <= r:
        raise ValueError(f"u must be between 1 and {r}")
    exponents[pair.I[u - 1] - 1] = sum(1 << (r - t) for t in range(1, u + 1))
    for t in range(u + 1, r + 1):
        exponents[pair.I[t - 1] - 1] = 1 << (r - t)
    return Monomial(exponents)


def phi(pair: IndexPair, m: Sequence[int]) -> Optional[Monomial]:
    """
    Returns phi_(i;I)(m) = x_i^{2^r - 1} rho_i(m) / x_(I,u) when m is u-compatible with (i; I), else None (zero).

    :param pair: the index pair in N_s.
    :param m: a monomial of P_{s-1}.
    :return: the image monomial or None.
    :raises: InternalConsistencyError if the division is not exact.
    """
    if len(m) != pair.s - 1:
        raise ValueError(f"Expected a monomial in {pair.s - 1} variables, found {len(m)}")
    u = u_compatible(m, pair)
    if u is None:
        return None
    image = list(_rho_monomial(pair.i, m))
    if pair.length == 0:
        return Monomial._trusted(tuple(image))
    image[pair.i - 1] += (1 << pair.length) - 1
    divisor = x_iu(pair, u)
    for k, b in enumerate(divisor):
        if image[k] < b:
            raise InternalConsistencyError(f"x_(I,u) = {divisor} does not divide x_i^(2^r-1) rho_i({Monomial(m)})")
        image[k] -= b
    return Monomial._trusted(tuple(image))


def _power_of_sum(variables: Sequence[int], n: int, size: int) -> List[Tuple[int, ...]]:
    # (y_1 + ... + y_k)^n over F_2: each set bit of n goes to exactly one variable.
    bits = [1 << b for b in range(n.bit_length()) if (n >> b) & 1]
    terms = []
    for assignment in itertools.product(variables, repeat=len(bits)):
        exponents = [0] * size
        for bit, k in zip(bits, assignment):
            exponents[k] += bit
        terms.append(tuple(exponents))
    return terms


def p_map(pair: IndexPair, f: Union[Polynomial, Sequence[int]]) -> Polynomial:
    """
    The algebra map P_s -> P_{s-1} with x_j -> x_j (j < i), x_i -> sum_{k in I} x_{k-1}, x_j -> x_{j-1} (j > i).

    :param pair: the index pair in N_s.
    :param f: a polynomial or monomial of P_s.
    :return: the image in P_{s-1}.
    """
    f = f if isinstance(f, Polynomial) else Polynomial.of(f)
    size = pair.s - 1
    if f.s is not None and f.s != pair.s:
        raise ValueError(f"Expected a polynomial in {pair.s} variables, found {f.s}")
    targets = [k - 2 for k in pair.I]
    result: Set[Monomial] = set()
    for m in f.terms:
        rest = tuple(m[:pair.i - 1]) + tuple(m[pair.i:])
        n = m[pair.i - 1]
        if n == 0:
            result ^= {Monomial._trusted(rest)}
            continue
        if not targets:
            continue
        for spread in _power_of_sum(targets, n, size):
            result ^= {Monomial._trusted(tuple(a + b for a, b in zip(rest, spread)))}
    return Polynomial._trusted(frozenset(result), size)


def phi0_set(monomials: Iterable[Sequence[int]], s: int) -> List[Monomial]:
    """
    Phi^0(U): the union of rho_i(U) over 1 <= i <= s, in increasing monomial order.
    """
    monomials = list(monomials)
    images = {_rho_monomial(i, m) for i in range(1, s + 1) for m in monomials}
    return sorted(images, key=core.sort_key)


def phi_plus_set(monomials: Iterable[Sequence[int]], s: int) -> List[Monomial]:
    """
    Phi^+(U): the positive images phi_(i;I)(U) over the pairs with 0 < len(I) < s, in increasing monomial order.
    """
    monomials = list(monomials)
    images = set()
    for pair in index_pairs(s):
        if pair.length == 0:
            continue
        for m in monomials:
            y = phi(pair, m)
            if y is not None and core.is_positive(y):
                images.add(y)
    logger.debug(f"Phi^+ of {len(monomials)} monomials in P_{s - 1}: {len(images)} images")
    return sorted(images, key=core.sort_key)
