"""
Relations imposed on a degree space: the hit generators, and the lower-weight monomials of the weight filtration.
"""
import logging
from abc import ABC, abstractmethod
from typing import TYPE_CHECKING, Any, Iterator, List, Optional, Sequence, Tuple

from hitcalc import core, steenrod
from hitcalc.config import GeneratorMode
from hitcalc.core import WeightVector

logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())

if TYPE_CHECKING:
    from hitcalc.quotient import DegreeSpace


class Relation(ABC):
    """
    Abstract base class representing a family of vectors spanning part of the subspace a degree space is divided by.
    """

    @abstractmethod
    def name(self) -> str:
        raise NotImplementedError()

    @abstractmethod
    def rows(self, space: 'DegreeSpace') -> Iterator[Tuple[Any, int]]:
        """
        Yields the relation vectors over the columns of a degree space, each with a label.

        :param space: The degree space.
        :return: An iterator of (label, vector) pairs; vectors are column bitmasks.
        """
        raise NotImplementedError()

    @abstractmethod
    def is_valid(self, relations: List['Relation']) -> Tuple[bool, Optional[str]]:
        """
        Checks whether the relation can be added to a relation set.

        :param relations: The relations already present.
        :return: A bool indicating whether or not the relation is valid and an error message, if appropriate.
        """
        raise NotImplementedError()


class HitRelation(Relation):
    """
    The generators Sq^k(n) of the hit subspace, with k a power of two (or any k in exhaustive mode),
    optionally bounded by a largest square.
    Terms outside the space's columns are dropped; this is exact only when the dropped columns are themselves hit.
    """

    def __init__(self, mode: GeneratorMode = GeneratorMode.POWERS_OF_TWO,
                 max_square: Optional[int] = None,
                 limit: Optional[int] = None):
        """
        Constructor

        :param mode: The generator mode.
        :param max_square: Optional largest square k.
        :param limit: Optional resource guard on the number of generators.
        """
        super().__init__()
        if max_square is not None and max_square < 1:
            raise ValueError('The largest square must be positive')
        self.mode = mode
        self.max_square = max_square
        self.limit = limit

    def name(self) -> str:
        bound = '' if self.max_square is None else f"<={self.max_square}"
        return f"hit[{self.mode.label()}{bound}]"

    def squares(self, d: int) -> List[int]:
        return steenrod.generator_squares(d, self.mode, self.max_square)

    def count(self, s: int, d: int) -> int:
        return steenrod.hit_generator_count(s, d, self.mode, self.max_square)

    def rows(self, space) -> Iterator[Tuple[Tuple[int, core.Monomial], int]]:
        if space.d < 1 or len(space) == 0:
            return
        logger.debug(f"{self.name()} on (P_{space.s})_{space.d}: {self.count(space.s, space.d)} generators")
        generators = steenrod.hit_generators(space.s, space.d, self.mode, self.limit, self.max_square,
                                             space.column_filter.positive_only())
        for label, image in generators:
            yield label, space.vector(image.terms, project=True)

    def is_valid(self, relations: List['Relation']) -> Tuple[bool, Optional[str]]:
        """
        Returns False if any of the below conditions are met:
        1. A hit relation is already included.

        :param relations: the list of existing relations
        :return: a bool indicating whether the relation is valid and a message, if appropriate
        """
        for relation in relations:
            if type(relation) is HitRelation:
                return False, 'A hit relation is already included'
        return True, None


class LowerWeightRelation(Relation):
    """
    The monomials whose weight vector is strictly smaller than a given weight vector: P_s^-(omega).
    """

    def __init__(self, omega: Sequence[int]):
        """
        Constructor

        :param omega: the weight vector.
        """
        super().__init__()
        self.omega = WeightVector(omega)

    def name(self) -> str:
        return f"weight<{self.omega}"

    def rows(self, space) -> Iterator[Tuple[Tuple[str, core.Monomial], int]]:
        for i, m in enumerate(space.monomials):
            if core.weight_vector(m) < self.omega:
                yield ('lower', m), 1 << i

    def is_valid(self, relations: List['Relation']) -> Tuple[bool, Optional[str]]:
        for relation in relations:
            if type(relation) is LowerWeightRelation and relation.omega != self.omega:
                return False, f"A lower-weight relation for {relation.omega} is already included"
        return True, None
