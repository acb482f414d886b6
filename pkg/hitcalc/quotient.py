"""
Degree spaces, admissible monomial bases of QP_s = F_2 (x) P_s over the Steenrod algebra, the weight
filtration, strict inadmissibility and Kameko's homomorphism on quotients.
"""
import itertools
import json
import logging
import threading
from abc import ABC, abstractmethod
from concurrent.futures import ThreadPoolExecutor
from enum import Enum
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from hitcalc import core, export, file_utils, steenrod
from hitcalc.columns import (AllColumns, ColumnFilter, WeightAboveColumns, WeightAtLeastColumns,
                             singer_columns)
from hitcalc.config import RunConfig, Strategy
from hitcalc.core import Monomial, WeightVector
from hitcalc.exceptions import DegreeMismatchException, InternalConsistencyError
from hitcalc.gf2 import GF2Matrix, IncrementalSpan, combination_indices
from hitcalc.relations import HitRelation, LowerWeightRelation, Relation
from hitcalc.steenrod import Polynomial

logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())

ZERO = 'zero'
POSITIVE = 'positive'


class DegreeSpace:
    """
    The monomials of degree d in P_s kept by a column filter, indexed in increasing monomial order.
    Vectors over the space are integers whose bit i is the coefficient of the i-th monomial.
    """

    def __init__(self, s: int, d: int, column_filter: Optional[ColumnFilter] = None, limit: Optional[int] = None):
        """
        Constructor

        :param s: The number of variables.
        :param d: The degree.
        :param column_filter: Selects the monomials that become columns; all monomials when omitted.
        :param limit: Optional resource guard on the number of monomials of the degree.
        :raises: ResourceLimitException if the degree holds more monomials than the limit.
        """
        self._s = s
        self._d = d
        self._filter = column_filter if column_filter is not None else AllColumns()
        self._monomials = [m for m in core.enumerate_monomials(s, d, limit) if self._filter.keep(m)]
        self._index = {m: i for i, m in enumerate(self._monomials)}

    @property
    def s(self) -> int:
        return self._s

    @property
    def d(self) -> int:
        return self._d

    @property
    def column_filter(self) -> ColumnFilter:
        return self._filter

    @property
    def monomials(self) -> List[Monomial]:
        return self._monomials

    def __len__(self):
        return len(self._monomials)

    def __contains__(self, m):
        return tuple(m) in self._index

    def index(self, m: Sequence[int]) -> int:
        try:
            return self._index[tuple(m)]
        except KeyError:
            raise ValueError(f"{Monomial(m)} is not a column of (P_{self._s})_{self._d}")

    def vector(self, terms: Iterable[Sequence[int]], project: bool = False) -> int:
        """
        Encodes a set of monomials as a column bitmask.

        :param terms: the monomials.
        :param project: drop monomials that are not columns instead of raising.
        :return: the vector.
        :raises: ValueError if a monomial is not a column and project is False.
        """
        v = 0
        index = self._index
        for m in terms:
            i = index.get(tuple(m))
            if i is None:
                if project:
                    continue
                raise ValueError(f"{m} is not a column of (P_{self._s})_{self._d}")
            v ^= 1 << i
        return v

    def monomials_of(self, v: int) -> List[Monomial]:
        return [self._monomials[i] for i in combination_indices(v)]

    def polynomial(self, v: int) -> Polynomial:
        return Polynomial(self.monomials_of(v), s=self._s)

    def __repr__(self):
        return f"hitcalc.quotient.DegreeSpace(s={self._s}, d={self._d}, columns={len(self)}, filter={self._filter.name()})"


class QuotientBlock:
    """
    One eliminated degree space: the span of its relations and the admissible columns, the non-pivot columns.
    """

    def __init__(self, space: DegreeSpace, span: IncrementalSpan, labels: Optional[List[Any]] = None):
        self.space = space
        self.span = span
        self.labels = labels
        self.admissible = [m for i, m in enumerate(space.monomials) if not span.is_pivot(i)]

    def reduce_vector(self, v: int) -> Tuple[int, int]:
        return self.span.reduce_vector(v)

    def __repr__(self):
        return f"hitcalc.quotient.QuotientBlock(space={self.space!r}, rank={self.span.rank}, admissible={len(self.admissible)})"


class QuotientProblem:
    """
    A degree space together with the relations it is divided by.
    """

    def __init__(self, space: DegreeSpace, track: bool = False):
        """
        Constructor

        :param space: The degree space.
        :param track: Whether to record which relation rows make up each echelon row.
        """
        self._space = space
        self._track = track
        self._relations: List[Relation] = []

    @property
    def space(self) -> DegreeSpace:
        return self._space

    @property
    def relations(self) -> List[Relation]:
        return list(self._relations)

    def add_relation(self, relation: Relation) -> None:
        """
        Adds a relation after checking it against the relations already present.

        :param relation: The relation to add.
        :return: None
        :raises: ValueError if the relation is not valid
        """
        is_valid, message = relation.is_valid(self._relations)
        if is_valid:
            self._relations.append(relation)
        else:
            raise ValueError(f"Invalid relation: {message}")

    def solve(self) -> QuotientBlock:
        """
        Inserts every relation row into an incremental span.

        :return: the eliminated block.
        """
        span = IncrementalSpan(len(self._space), track=self._track)
        labels = [] if self._track else None
        for relation in self._relations:
            before = span.rank
            for label, v in relation.rows(self._space):
                span.insert(v)
                if labels is not None:
                    labels.append(label)
            logger.debug(f"{relation.name()} on (P_{self._space.s})_{self._space.d}: rank {before} -> {span.rank}")
        return QuotientBlock(self._space, span, labels)


class HitCertificate:
    """
    A list of generators Sq^k(n) whose sum is a given hit polynomial.
    """

    def __init__(self, terms: List[Tuple[int, Monomial]], s: int):
        self.terms = terms
        self.s = s

    @property
    def size(self) -> int:
        return len(self.terms)

    def polynomial(self) -> Polynomial:
        total = Polynomial.zero(self.s)
        for k, n in self.terms:
            total = total + steenrod.sq(k, n)
        return total

    def to_dict(self) -> Dict[str, Any]:
        return {'size': self.size, 'generators': [{'square': k, 'monomial': list(n)} for k, n in self.terms]}

    def __repr__(self):
        return f"hitcalc.quotient.HitCertificate(size={self.size})"


class QuotientBasis:
    """
    The admissible monomial basis of (QP_s)_d with the reduction map onto it.

    A direct basis holds a single block over all monomials of the degree. A split basis holds one block per
    support size k, over the positive monomials of P_k, and routes each monomial through its support.
    """

    def __init__(self, s: int, d: int, strategy: Strategy, blocks: Dict[int, QuotientBlock], split: bool):
        """
        Constructor

        :param s: The number of variables.
        :param d: The degree.
        :param strategy: The strategy that built the blocks.
        :param blocks: The eliminated blocks keyed by number of variables.
        :param split: Whether blocks are per support size (True) or a single full block (False).
        """
        self.s = s
        self.d = d
        self.strategy = strategy
        self._blocks = blocks
        self._split = split
        admissible = []
        if split:
            for k, block in blocks.items():
                for indices in _supports(s, k):
                    admissible.extend(core.expand(m, indices, s) for m in block.admissible)
        else:
            admissible = [Monomial._trusted(tuple(m)) for m in blocks[s].admissible]
        self.admissible = sorted(admissible, key=core.sort_key)
        self._position = {m: i for i, m in enumerate(self.admissible)}

    @property
    def dim(self) -> int:
        return len(self.admissible)

    @property
    def tracked(self) -> bool:
        return not self._split and self._blocks[self.s].labels is not None

    @property
    def blocks(self) -> Dict[int, QuotientBlock]:
        return self._blocks

    @property
    def admissible_zero(self) -> List[Monomial]:
        return [m for m in self.admissible if not core.is_positive(m)]

    @property
    def admissible_positive(self) -> List[Monomial]:
        return [m for m in self.admissible if core.is_positive(m)]

    def part(self, part: Optional[str]) -> List[Monomial]:
        if part is None:
            return self.admissible
        if part == ZERO:
            return self.admissible_zero
        if part == POSITIVE:
            return self.admissible_positive
        raise ValueError(f"Unknown part: {part}")

    def index_of(self, m: Sequence[int]) -> int:
        try:
            return self._position[tuple(m)]
        except KeyError:
            raise ValueError(f"{Monomial(m)} is not admissible in degree {self.d}")

    def is_admissible(self, m: Sequence[int]) -> bool:
        return tuple(m) in self._position

    def weights(self) -> List[WeightVector]:
        return sorted({core.weight_vector(m) for m in self.admissible})

    def of_weight(self, omega: Sequence[int], part: Optional[str] = None) -> List[Monomial]:
        omega = WeightVector(omega)
        return [m for m in self.part(part) if core.weight_vector(m) == omega]

    def by_weight(self) -> Dict[WeightVector, Tuple[int, int]]:
        """
        Counts admissible monomials per weight vector.

        :return: a dict mapping weight vector to (count in P_s^0, count in P_s^+).
        """
        counts = {}
        for m in self.admissible:
            zero, positive = counts.get(core.weight_vector(m), (0, 0))
            if core.is_positive(m):
                positive += 1
            else:
                zero += 1
            counts[core.weight_vector(m)] = (zero, positive)
        return dict(sorted(counts.items()))

    def _check(self, f: Polynomial) -> None:
        if f.s is not None and f.s != self.s:
            raise ValueError(f"Expected a polynomial in {self.s} variables, found {f.s}")
        if f.degree is not None and f.degree != self.d:
            raise DegreeMismatchException(f"Expected a polynomial of degree {self.d}, found {f.degree}")

    def _reduce_terms(self, f: Polynomial) -> Tuple[List[Monomial], int]:
        self._check(f)
        if not self._split:
            block = self._blocks[self.s]
            residual, combination = block.reduce_vector(block.space.vector(f.terms))
            return block.space.monomials_of(residual), combination
        by_support: Dict[Tuple[int, ...], List[Monomial]] = {}
        for m in f.terms:
            by_support.setdefault(core.support(m), []).append(m)
        result = []
        for indices, terms in by_support.items():
            block = self._blocks.get(len(indices))
            if block is None:
                continue
            local = block.space.vector((core.compress(m) for m in terms), project=True)
            residual, _ = block.reduce_vector(local)
            result.extend(core.expand(m, indices, self.s) for m in block.space.monomials_of(residual))
        return result, 0

    def reduce(self, f) -> Polynomial:
        """
        Returns the representative of [f] in the span of the admissible monomials.

        :param f: a homogeneous polynomial (or monomial) of degree d.
        :return: a sum of admissible monomials congruent to f modulo hit elements.
        :raises: DegreeMismatchException if f has the wrong degree.
        """
        f = f if isinstance(f, Polynomial) else Polynomial.of(f)
        terms, _ = self._reduce_terms(f)
        return Polynomial(terms, s=self.s)

    def coordinates(self, f) -> int:
        """
        Returns the coordinates of [f]; bit i is the coefficient of admissible monomial i.
        """
        f = f if isinstance(f, Polynomial) else Polynomial.of(f)
        terms, _ = self._reduce_terms(f)
        v = 0
        for m in terms:
            v ^= 1 << self._position[m]
        return v

    def is_hit(self, f) -> bool:
        return self.coordinates(f) == 0

    def certificate(self, f) -> Optional[HitCertificate]:
        """
        Returns generators whose sum is f, or None when f is not hit.

        :raises: ValueError if this basis was built without tracking.
        """
        if not self.tracked:
            raise ValueError('Certificates need a quotient built directly with tracking')
        f = f if isinstance(f, Polynomial) else Polynomial.of(f)
        terms, combination = self._reduce_terms(f)
        if terms:
            return None
        labels = self._blocks[self.s].labels
        return HitCertificate([labels[i] for i in combination_indices(combination)], self.s)

    def to_dict(self) -> Dict[str, Any]:
        return {
            's': self.s,
            'degree': self.d,
            'dim': self.dim,
            'admissible': [list(m) for m in self.admissible],
            'by_weight': {str(w): zero + positive for w, (zero, positive) in self.by_weight().items()}
        }

    def write_to_file(self, file_path: str) -> None:
        """
        Writes the admissible monomials to a CSV, JSON or text file.

        :param file_path: the path to the file which will be created or overwritten.
        :return: None
        :raises: ValueError if file_path is None or has an unsupported extension.
        """
        if file_path is None:
            raise ValueError('File path cannot be none')
        extension = file_utils.get_extension(file_path)
        if extension == 'json':
            with open(file_path, mode='w') as f:
                json.dump(self.to_dict(), f, sort_keys=True)
                f.write('\n')
        elif extension in ('csv', 'txt'):
            export.write_frame(export.basis_frame(self), file_path)
        else:
            raise ValueError(f"Only CSV, JSON and text output are supported, found: {extension}")

    def __repr__(self):
        return f"hitcalc.quotient.QuotientBasis(s={self.s}, d={self.d}, strategy={self.strategy.label()}, dim={self.dim})"

    def __str__(self):
        lines = [f"(QP_{self.s})_{self.d}: dim {self.dim}"]
        lines.extend(str(m) for m in self.admissible)
        return '\n'.join(lines)


def _supports(s: int, k: int) -> List[Tuple[int, ...]]:
    return list(itertools.combinations(range(1, s + 1), k))


class QuotientBuilder(ABC):
    """
    Computes the admissible basis of a degree.
    """

    def __init__(self, config: Optional[RunConfig] = None):
        """
        Constructor

        :param config: The run configuration; defaults apply when omitted.
        """
        self.config = config if config is not None else RunConfig()

    @abstractmethod
    def strategy(self) -> Strategy:
        raise NotImplementedError

    @abstractmethod
    def build(self, s: int, d: int) -> QuotientBasis:
        """
        Builds the admissible basis of (QP_s)_d.

        :param s: the number of variables.
        :param d: the degree.
        :return: the quotient basis.
        :raises: ResourceLimitException if the degree exceeds the configured guard.
        """
        raise NotImplementedError

    def _block(self, s: int, d: int, column_filter: ColumnFilter, track: bool = False) -> QuotientBlock:
        space = DegreeSpace(s, d, column_filter, limit=self.config.max_space)
        problem = QuotientProblem(space, track=track)
        problem.add_relation(HitRelation(mode=self.config.generator_mode, limit=self.config.max_space))
        block = problem.solve()
        logger.debug(f"Block (P_{s})_{d} [{column_filter.name()}]: {len(space)} columns, "
                     f"rank {block.span.rank}, {len(block.admissible)} admissible")
        return block


class DirectQuotientBuilder(QuotientBuilder):
    """
    Eliminates the whole degree at once. Optionally tracks generator combinations for hit certificates.
    """

    def __init__(self, config: Optional[RunConfig] = None, track: bool = False):
        super().__init__(config)
        self.track = track

    def strategy(self) -> Strategy:
        return Strategy.DIRECT

    def build(self, s: int, d: int) -> QuotientBasis:
        logger.info(f"Building (QP_{s})_{d} directly")
        block = self._block(s, d, AllColumns(), track=self.track)
        return QuotientBasis(s, d, Strategy.DIRECT, {s: block}, split=False)


class RecursiveQuotientBuilder(QuotientBuilder):
    """
    Builds (QP_s)_d from the positive parts (QP_k^+)_d, k <= s, shared by every support of size k.
    Blocks with mu(d) > k vanish, and monomials below the weight of the minimal spike are dropped before elimination.
    """

    def strategy(self) -> Strategy:
        return Strategy.RECURSIVE

    def build(self, s: int, d: int) -> QuotientBasis:
        if d == 0:
            return DirectQuotientBuilder(self.config).build(s, d)
        r = core.mu(d)
        sizes = [k for k in range(max(r, 1), s + 1) if k <= d]
        logger.info(f"Building (QP_{s})_{d} from positive blocks {sizes}")
        if self.config.threads > 1 and len(sizes) > 1:
            with ThreadPoolExecutor(max_workers=self.config.threads) as executor:
                blocks = dict(zip(sizes, executor.map(lambda k: self._block(k, d, singer_columns(d, k)), sizes)))
        else:
            blocks = {k: self._block(k, d, singer_columns(d, k)) for k in sizes}
        return QuotientBasis(s, d, Strategy.RECURSIVE, blocks, split=True)


def builder_factory(strategy: Strategy, config: Optional[RunConfig] = None, track: bool = False) -> QuotientBuilder:
    """
    Return a quotient builder for a strategy.

    :param strategy: the strategy.
    :param config: the run configuration.
    :param track: whether the direct builder records certificates.
    :return: a QuotientBuilder for the given strategy.
    """
    return {
        Strategy.DIRECT: DirectQuotientBuilder(config, track=track),
        Strategy.RECURSIVE: RecursiveQuotientBuilder(config)
    }.get(strategy, None)


_cache: Dict[Tuple[int, int, RunConfig, bool], QuotientBasis] = {}
_cache_lock = threading.RLock()


def build_quotient(s: int, d: int, config: Optional[RunConfig] = None, track: bool = False) -> QuotientBasis:
    """
    Builds (or returns the cached) admissible basis of (QP_s)_d.

    :param s: the number of variables.
    :param d: the degree.
    :param config: the run configuration; its strategy picks the builder.
    :param track: build directly with certificate tracking.
    :return: the quotient basis.
    :raises: ResourceLimitException if the degree exceeds the configured guard.
    """
    if not 1 <= s <= core.MAX_VARIABLES:
        raise ValueError(f"Number of variables must be between 1 and {core.MAX_VARIABLES}")
    if d < 0:
        raise ValueError('Degree must be non-negative')
    config = config if config is not None else RunConfig()
    key = (s, d, config, track)
    with _cache_lock:
        if key not in _cache:
            strategy = Strategy.DIRECT if track else config.strategy
            _cache[key] = builder_factory(strategy, config, track=track).build(s, d)
            logger.info(f"(QP_{s})_{d} has dimension {_cache[key].dim}")
        return _cache[key]


def clear_cache() -> None:
    with _cache_lock:
        _cache.clear()
        _strict_cache.clear()


def _as_polynomial(f) -> Polynomial:
    return f if isinstance(f, Polynomial) else Polynomial.of(f)


def is_hit(f, config: Optional[RunConfig] = None) -> bool:
    """
    Tests whether a homogeneous polynomial lies in the image of the positive Steenrod squares.

    :param f: the polynomial.
    :param config: the run configuration.
    :return: True if f is hit. The zero polynomial is hit.
    """
    f = _as_polynomial(f)
    if f.is_zero():
        return True
    return build_quotient(f.s, f.degree, config).is_hit(f)


def hit_certificate(f, config: Optional[RunConfig] = None) -> Optional[HitCertificate]:
    """
    Returns generators Sq^k(n) summing to f, or None when f is not hit.
    """
    f = _as_polynomial(f)
    if f.is_zero():
        return HitCertificate([], f.s)
    return build_quotient(f.s, f.degree, config, track=True).certificate(f)


class Verdict(Enum):
    """
    Outcome of a test that can only ever prove one side.
    """

    HIT = 0
    UNKNOWN = 1

    def label(self) -> str:
        return {
            0: 'hit',
            1: 'unknown',
        }.get(self.value, None)


def singer_prefilter(m: Sequence[int]) -> Verdict:
    """
    Singer's criterion: a monomial whose weight vector is below that of the minimal spike of its degree is hit.

    :param m: the monomial.
    :return: Verdict.HIT if the criterion applies, Verdict.UNKNOWN otherwise.
    :raises: NoSpikeException if mu(deg m) > s; the whole degree is hit then.
    """
    m = Monomial(m)
    spike = core.minimal_spike(m.degree, m.s)
    if core.weight_vector(m) < core.weight_vector(spike):
        return Verdict.HIT
    return Verdict.UNKNOWN


_strict_cache: Dict[Tuple[Any, ...], Tuple[DegreeSpace, IncrementalSpan]] = {}


def _strict_span(s: int, d: int, r: int, modulo_weight: Optional[WeightVector],
                 config: RunConfig) -> Tuple[DegreeSpace, IncrementalSpan]:
    key = (s, d, r, modulo_weight, config)
    with _cache_lock:
        if key not in _strict_cache:
            space = DegreeSpace(s, d, limit=config.max_space)
            problem = QuotientProblem(space)
            problem.add_relation(HitRelation(mode=config.generator_mode, max_square=(1 << r) - 1,
                                             limit=config.max_space))
            if modulo_weight is not None:
                problem.add_relation(LowerWeightRelation(modulo_weight))
            _strict_cache[key] = (space, problem.solve().span)
        return _strict_cache[key]


def is_strictly_inadmissible(m: Sequence[int], modulo_weight: Optional[Sequence[int]] = None,
                             config: Optional[RunConfig] = None) -> bool:
    """
    Tests whether m equals a sum of strictly smaller monomials plus sum_{1 <= j < 2^r} Sq^j(h_j),
    where r is the length of the weight vector of m.

    :param m: the monomial.
    :param modulo_weight: optionally also allow monomials of weight below this weight vector.
    :param config: the run configuration.
    :return: True if m is strictly inadmissible.
    """
    m = Monomial(m)
    r = len(core.weight_vector(m))
    if r == 0:
        return False
    config = config if config is not None else RunConfig()
    omega = WeightVector(modulo_weight) if modulo_weight is not None else None
    space, span = _strict_span(m.s, m.degree, r, omega, config)
    # m is a leading monomial of the span exactly when it is congruent to a sum of smaller monomials
    return span.is_pivot(space.index(m))


def is_inadmissible(m: Sequence[int], config: Optional[RunConfig] = None) -> bool:
    m = Monomial(m)
    return not build_quotient(m.s, m.degree, config).is_admissible(m)


def admissible_of_weight(s: int, omega: Sequence[int], part: Optional[str] = None,
                         config: Optional[RunConfig] = None) -> List[Monomial]:
    """
    Returns the admissible monomials of weight exactly omega, optionally restricted to P_s^0 or P_s^+.
    Their classes form a basis of QP_s(omega).
    """
    omega = WeightVector(omega)
    return build_quotient(s, omega.degree, config).of_weight(omega, part)


def weight_quotient_dim(s: int, omega: Sequence[int], part: Optional[str] = None,
                        config: Optional[RunConfig] = None) -> int:
    return len(admissible_of_weight(s, omega, part, config))


def weight_quotient_dim_direct(s: int, omega: Sequence[int], config: Optional[RunConfig] = None) -> int:
    """
    Computes dim QP_s(omega) from its definition: the weight-omega part of P_s modulo hit elements and
    monomials of smaller weight. Equals |columns of weight omega| - rank(H on columns >= omega) + rank(H on columns > omega).

    :param s: the number of variables.
    :param omega: the weight vector.
    :param config: the run configuration.
    :return: the dimension.
    """
    omega = WeightVector(omega)
    config = config if config is not None else RunConfig()
    d = omega.degree
    space = DegreeSpace(s, d, limit=config.max_space)
    at_least = WeightAtLeastColumns(omega)
    above = WeightAboveColumns(omega)
    mask_at_least = space.vector(m for m in space.monomials if at_least.keep(m))
    mask_above = space.vector(m for m in space.monomials if above.keep(m))
    exact = sum(1 for m in space.monomials if core.weight_vector(m) == omega)
    span_at_least = IncrementalSpan(len(space))
    span_above = IncrementalSpan(len(space))
    if d >= 1:
        for _, v in HitRelation(mode=config.generator_mode, limit=config.max_space).rows(space):
            span_at_least.insert(v & mask_at_least)
            span_above.insert(v & mask_above)
    return exact - span_at_least.rank + span_above.rank


class KamekoKernel:
    """
    The matrix of Kameko's map [m] -> [psi(m)] in admissible coordinates and its kernel.
    """

    def __init__(self, source: QuotientBasis, target: Optional[QuotientBasis], matrix: GF2Matrix):
        """
        Constructor

        :param source: The quotient in degree d.
        :param target: The quotient in degree (d - s) / 2; None when that degree is negative.
        :param matrix: The map, of shape (dim target, dim source).
        """
        self.source = source
        self.target = target
        self.matrix = matrix
        reduction = matrix.reduce()
        self.rank = reduction.rank
        self.kernel = matrix.kernel().to_int_rows()

    @property
    def dim(self) -> int:
        return len(self.kernel)

    @property
    def target_dim(self) -> int:
        return 0 if self.target is None else self.target.dim

    @property
    def surjective(self) -> bool:
        return self.rank == self.target_dim

    def kernel_polynomials(self) -> List[Polynomial]:
        return [Polynomial([self.source.admissible[i] for i in combination_indices(v)], s=self.source.s)
                for v in self.kernel]

    def to_dict(self) -> Dict[str, Any]:
        return {
            's': self.source.s,
            'degree': self.source.d,
            'source_dim': self.source.dim,
            'target_degree': None if self.target is None else self.target.d,
            'target_dim': self.target_dim,
            'rank': self.rank,
            'kernel_dim': self.dim,
            'surjective': self.surjective
        }

    def __repr__(self):
        return f"hitcalc.quotient.KamekoKernel(s={self.source.s}, d={self.source.d}, kernel_dim={self.dim})"

    def __str__(self):
        return (f"Kameko map (QP_{self.source.s})_{self.source.d} -> degree {self.to_dict()['target_degree']}: "
                f"source {self.source.dim}, target {self.target_dim}, rank {self.rank}, kernel {self.dim}")


def kameko_matrix(source: QuotientBasis, target: Optional[QuotientBasis]) -> GF2Matrix:
    columns = []
    for m in source.admissible:
        y = steenrod.kameko_psi(m)
        columns.append(0 if y is None or target is None else target.coordinates(Polynomial.of(y)))
    target_dim = 0 if target is None else target.dim
    return GF2Matrix.from_int_rows(columns, target_dim).transpose() if source.dim else GF2Matrix.zeros(target_dim, 0)


def kameko_kernel(s: int, d: int, config: Optional[RunConfig] = None) -> KamekoKernel:
    """
    Computes the kernel of Kameko's homomorphism (QP_s)_d -> (QP_s)_{(d-s)/2}.

    :param s: the number of variables.
    :param d: the degree, with d - s even.
    :param config: the run configuration.
    :return: the kernel together with the map's matrix.
    :raises: ValueError if d - s is odd.
    """
    if (d - s) % 2 != 0:
        raise ValueError(f"Kameko's map needs d - s even, found d = {d}, s = {s}")
    source = build_quotient(s, d, config)
    target = build_quotient(s, (d - s) // 2, config) if d >= s else None
    kernel = KamekoKernel(source, target, kameko_matrix(source, target))
    logger.info(f"Kameko kernel of (QP_{s})_{d}: dim {kernel.dim}, rank {kernel.rank}")
    if not kernel.surjective:
        raise InternalConsistencyError(f"Kameko's map on (QP_{s})_{d} has rank {kernel.rank} < {kernel.target_dim}")
    return kernel
