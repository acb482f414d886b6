"""
The actions of the symmetric group and of GL_s(F_2) on admissible quotients and their fixed points.
"""
import logging
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple

from hitcalc import core
from hitcalc.config import Group
from hitcalc.core import Monomial, WeightVector
from hitcalc.exceptions import InternalConsistencyError
from hitcalc.gf2 import GF2Matrix, combination_indices
from hitcalc.quotient import QuotientBasis
from hitcalc.steenrod import Polynomial

logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())


class GeneratorKind(Enum):
    TRANSPOSITION = 0
    TRANSVECTION = 1

    def label(self) -> str:
        return {
            0: 'transposition',
            1: 'transvection',
        }.get(self.value, None)


class GroupGenerator:
    """
    One of the generators tau_1, ..., tau_s of GL_s: tau_i swaps x_i and x_{i+1} for i < s,
    and tau_s sends x_1 to x_1 + x_2 fixing the other variables.
    """

    def __init__(self, index: int, s: int):
        """
        Constructor

        :param index: The generator index i, 1 <= i <= s.
        :param s: The number of variables.
        :raises: ValueError if the index is out of range.
        """
        if not 1 <= index <= s:
            raise ValueError(f"Generator index {index} out of range for s = {s}")
        self.index = index
        self.s = s
        self.kind = GeneratorKind.TRANSPOSITION if index < s else GeneratorKind.TRANSVECTION

    def _apply_monomial(self, m: Monomial) -> List[Monomial]:
        if self.kind == GeneratorKind.TRANSPOSITION:
            e = list(m)
            i = self.index - 1
            e[i], e[i + 1] = e[i + 1], e[i]
            return [Monomial._trusted(tuple(e))]
        if self.s == 1:
            return [m]
        # (x_1 + x_2)^a x_2^b: the bits of a split between x_1 and x_2
        a, b = m[0], m[1]
        images = []
        sub = a
        while True:
            images.append(Monomial._trusted((sub, a - sub + b) + tuple(m[2:])))
            if sub == 0:
                break
            sub = (sub - 1) & a
        return images

    def apply(self, f) -> Polynomial:
        """
        Applies the substitution to a polynomial or monomial of P_s.

        :raises: ValueError if f has a different number of variables.
        """
        f = f if isinstance(f, Polynomial) else Polynomial.of(f)
        if f.s is not None and f.s != self.s:
            raise ValueError(f"Expected a polynomial in {self.s} variables, found {f.s}")
        result = set()
        for m in f.terms:
            for y in self._apply_monomial(m):
                result ^= {y}
        return Polynomial._trusted(frozenset(result), self.s)

    def __eq__(self, other):
        return isinstance(other, GroupGenerator) and (self.index, self.s) == (other.index, other.s)

    def __hash__(self):
        return hash((self.index, self.s))

    def __repr__(self):
        return f"hitcalc.invariants.GroupGenerator(index={self.index}, s={self.s}, kind={self.kind.label()})"

    def __str__(self):
        return f"tau_{self.index}"


def generators(s: int, group: Group) -> List[GroupGenerator]:
    """
    Returns tau_1, ..., tau_{s-1} for the symmetric group and tau_1, ..., tau_s for GL_s.
    GL_1 is trivial, so it has no generators.
    """
    if s == 1:
        return []
    count = s - 1 if group == Group.SIGMA else s
    return [GroupGenerator(i, s) for i in range(1, count + 1)]


def tau(i: int, f, s: Optional[int] = None) -> Polynomial:
    """
    Applies tau_i to f.

    :param i: the generator index.
    :param f: a polynomial or monomial.
    :param s: the number of variables; taken from f when omitted.
    :return: tau_i(f).
    """
    f = f if isinstance(f, Polynomial) else Polynomial.of(f)
    s = f.s if s is None else s
    if s is None:
        raise ValueError('Number of variables cannot be inferred from the zero polynomial')
    return GroupGenerator(i, s).apply(f)


def _weight_indices(quotient: QuotientBasis, weight: Optional[WeightVector]) -> List[int]:
    if weight is None:
        return list(range(quotient.dim))
    return [k for k, m in enumerate(quotient.admissible) if core.weight_vector(m) == weight]


def _restrict(quotient: QuotientBasis, v: int, weight: Optional[WeightVector], indices: List[int]) -> Optional[int]:
    # Returns None when v has a coordinate of weight above `weight`.
    if weight is None:
        return v
    restricted = 0
    for k in combination_indices(v):
        w = core.weight_vector(quotient.admissible[k])
        if w > weight:
            return None
    for j, k in enumerate(indices):
        if (v >> k) & 1:
            restricted |= 1 << j
    return restricted


def class_vector(quotient: QuotientBasis, f, weight: Optional[Sequence[int]] = None) -> int:
    """
    Returns the coordinates of [f], or of [f]_omega over the admissible monomials of weight omega.

    :param quotient: the admissible basis of the degree of f.
    :param f: a homogeneous polynomial.
    :param weight: optional weight vector omega.
    :return: the coordinate vector; bit j is the j-th admissible monomial (of weight omega).
    :raises: ValueError if f does not lie in P_s(omega).
    """
    omega = WeightVector(weight) if weight is not None else None
    v = _restrict(quotient, quotient.coordinates(f), omega, _weight_indices(quotient, omega))
    if v is None:
        raise ValueError(f"The polynomial has classes of weight above {omega}")
    return v


def action_matrix(generator: GroupGenerator, quotient: QuotientBasis,
                  weight: Optional[Sequence[int]] = None) -> GF2Matrix:
    """
    The matrix of a generator on (QP_s)_d, or on QP_s(omega) when a weight is given.
    Column k holds the coordinates of tau(b_k) for the k-th admissible monomial b_k.
    The weight-omega action reduces in the full quotient first and then drops the coordinates of smaller weight.

    :param generator: the group generator.
    :param quotient: the admissible basis.
    :param weight: optional weight vector.
    :return: a square matrix over the admissible monomials (of weight omega).
    :raises: InternalConsistencyError if an image has coordinates of weight above omega.
    """
    if generator.s != quotient.s:
        raise ValueError(f"Generator acts on P_{generator.s}, quotient is over P_{quotient.s}")
    omega = WeightVector(weight) if weight is not None else None
    indices = _weight_indices(quotient, omega)
    columns = []
    for k in indices:
        b = quotient.admissible[k]
        v = _restrict(quotient, quotient.coordinates(generator.apply(b)), omega, indices)
        if v is None:
            raise InternalConsistencyError(f"{generator}({b}) has classes of weight above {omega}")
        columns.append(v)
    n = len(indices)
    if n == 0:
        return GF2Matrix.zeros(0, 0)
    return GF2Matrix.from_int_rows(columns, n).transpose()


class InvariantSpace:
    """
    The subspace of a quotient fixed by a set of generators.
    """

    def __init__(self, quotient: QuotientBasis, group: Optional[Group], weight: Optional[WeightVector],
                 basis: List[int]):
        """
        Constructor

        :param quotient: The quotient acted on.
        :param group: The group, if the generators were a whole generating set.
        :param weight: The weight vector for a weight subquotient, or None.
        :param basis: The invariant vectors over the admissible monomials (of weight omega).
        """
        self.quotient = quotient
        self.group = group
        self.weight = weight
        self.basis = basis
        self.monomials = [quotient.admissible[k] for k in _weight_indices(quotient, weight)]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def polynomials(self) -> List[Polynomial]:
        return [Polynomial([self.monomials[j] for j in combination_indices(v)], s=self.quotient.s)
                for v in self.basis]

    def contains(self, v: int) -> bool:
        return GF2Matrix.from_int_rows(self.basis, len(self.monomials)).row_space_contains(v)

    def space_name(self) -> str:
        if self.weight is None:
            return f"(QP_{self.quotient.s})_{self.quotient.d}"
        return f"QP_{self.quotient.s}({self.weight})"

    def to_dict(self) -> Dict[str, Any]:
        n = len(self.monomials)
        return {
            'space': self.space_name(),
            'group': None if self.group is None else self.group.label(),
            'dim': self.dim,
            'monomials': [list(m) for m in self.monomials],
            'basis': [[(v >> j) & 1 for j in range(n)] for v in self.basis]
        }

    def __repr__(self):
        return f"hitcalc.invariants.InvariantSpace(space={self.space_name()}, dim={self.dim})"

    def __str__(self):
        group = '' if self.group is None else f"^{self.group.label()}"
        lines = [f"{self.space_name()}{group}: dim {self.dim}"]
        lines.extend(f"[{p}]" for p in self.polynomials())
        return '\n'.join(lines)


def fixed_points(quotient: QuotientBasis, gens: Sequence[GroupGenerator], weight: Optional[Sequence[int]] = None,
                 group: Optional[Group] = None) -> InvariantSpace:
    """
    Computes the common fixed points of the generators: the kernel of the stacked matrices M_tau - Id.

    :param quotient: the admissible basis.
    :param gens: the generators.
    :param weight: optional weight vector omega for the subquotient QP_s(omega).
    :param group: the group the generators span, for reporting.
    :return: the invariant subspace.
    """
    omega = WeightVector(weight) if weight is not None else None
    n = len(_weight_indices(quotient, omega))
    stacked = GF2Matrix.zeros(0, n)
    for generator in gens:
        stacked = stacked.vstack(action_matrix(generator, quotient, omega) + GF2Matrix.identity(n))
    basis = stacked.kernel().to_int_rows()
    space = InvariantSpace(quotient, group, omega, basis)
    logger.info(f"Fixed points of {len(gens)} generators on {space.space_name()}: dim {space.dim}")
    return space


def invariants(quotient: QuotientBasis, group: Group, weight: Optional[Sequence[int]] = None) -> InvariantSpace:
    """
    Computes (QP_s)_d^G, or QP_s(omega)^G, for G the symmetric group or GL_s.
    """
    return fixed_points(quotient, generators(quotient.s, group), weight, group)


def is_invariant(quotient: QuotientBasis, f, group: Group, weight: Optional[Sequence[int]] = None) -> bool:
    """
    Tests whether [f] (or [f]_omega) is fixed by every generator of the group.
    """
    v = class_vector(quotient, f, weight)
    for generator in generators(quotient.s, group):
        if action_matrix(generator, quotient, weight).multiply_vector(v) != v:
            return False
    return True


def weight_invariant_dims(quotient: QuotientBasis, group: Group) -> List[Tuple[WeightVector, int]]:
    """
    Returns dim QP_s(omega)^G for each weight vector omega of the degree. Their sum bounds dim (QP_s)_d^G.
    """
    return [(omega, invariants(quotient, group, omega).dim) for omega in quotient.weights()]
