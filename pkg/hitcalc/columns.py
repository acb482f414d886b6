"""
Column filters: which monomials of a degree take part in an elimination.
"""
import logging
from abc import ABC, abstractmethod
from typing import Sequence

from hitcalc import core
from hitcalc.core import Monomial, WeightVector

logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())


class ColumnFilter(ABC):
    """
    Abstract class used to select the monomials of a degree that become columns of a degree space.
    """

    @abstractmethod
    def name(self) -> str:
        """
        Returns the name of this column filter.

        :return: the filter name.
        """
        raise NotImplementedError()

    @abstractmethod
    def keep(self, m: Monomial) -> bool:
        """
        Returns a bool indicating whether a monomial is a column of the space.

        :param m: the monomial
        :return: True if the monomial is kept.
        """
        raise NotImplementedError()

    def positive_only(self) -> bool:
        """
        Whether every kept monomial is positive (involves all variables).
        Hit generators from non-positive monomials can then be skipped, as squares preserve the support.
        """
        return False


class AllColumns(ColumnFilter):
    """
    Keeps every monomial of the degree.
    """

    def name(self) -> str:
        return 'all'

    def keep(self, m: Monomial) -> bool:
        return True


class PositiveColumns(ColumnFilter):
    """
    Keeps the monomials of P_s^+, those divisible by x_1 x_2 ... x_s.
    """

    def name(self) -> str:
        return 'positive'

    def keep(self, m: Monomial) -> bool:
        return core.is_positive(m)

    def positive_only(self) -> bool:
        return True


class WeightAtLeastColumns(ColumnFilter):
    """
    Keeps the monomials whose weight vector is at least a given weight vector.
    With the weight of the minimal spike this drops exactly the monomials Singer's criterion proves hit.
    """

    def __init__(self, omega: Sequence[int]):
        """
        Constructor

        :param omega: the smallest weight vector kept.
        """
        self.omega = WeightVector(omega)

    def name(self) -> str:
        return f"weight>={self.omega}"

    def keep(self, m: Monomial) -> bool:
        return core.weight_vector(m) >= self.omega


class WeightAboveColumns(ColumnFilter):
    """
    Keeps the monomials whose weight vector is strictly greater than omega.
    """

    def __init__(self, omega: Sequence[int]):
        self.omega = WeightVector(omega)

    def name(self) -> str:
        return f"weight>{self.omega}"

    def keep(self, m: Monomial) -> bool:
        return core.weight_vector(m) > self.omega


class CompositeColumns(ColumnFilter):
    """
    Keeps the monomials accepted by every one of its filters.
    """

    def __init__(self, *filters: ColumnFilter):
        if len(filters) == 0:
            raise ValueError('A composite filter needs at least one filter')
        self.filters = filters

    def name(self) -> str:
        return '&'.join(f.name() for f in self.filters)

    def keep(self, m: Monomial) -> bool:
        return all(f.keep(m) for f in self.filters)

    def positive_only(self) -> bool:
        return any(f.positive_only() for f in self.filters)


def singer_columns(d: int, s: int) -> ColumnFilter:
    """
    Returns the filter keeping positive monomials of P_s in degree d whose weight is at least that of the minimal spike.

    :raises: NoSpikeException if mu(d) > s.
    """
    spike = core.minimal_spike(d, s)
    logger.debug(f"Singer filter for (P_{s})_{d}: minimal spike {spike}, weight {core.weight_vector(spike)}")
    return CompositeColumns(PositiveColumns(), WeightAtLeastColumns(core.weight_vector(spike)))
