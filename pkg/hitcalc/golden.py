"""
Catalogues of admissible monomials of degree 3(2^t - 1) + 2^t, written as families parameterized by t,
and their verification against computed admissible bases.

Each line of a catalogue file reads ``label; k; e1,...,es; t-range``. Exponents are sums and differences of
integers, ``2^t`` and ``2^{t+N}``; ranges are ``t=N`` or ``t>=N``.
"""
import logging
import re
from typing import Any, Dict, Iterable, List, NamedTuple, Optional, Sequence, Set, Tuple

from hitcalc import core, file_utils
from hitcalc.config import RunConfig
from hitcalc.core import Monomial, WeightVector
from hitcalc.exceptions import DegreeMismatchException, GoldenDataException
from hitcalc.quotient import POSITIVE, build_quotient

logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())

APPENDIX_FILE = 'appendix.txt'
LABELS = ('q', 'b', 'u', 'v')
CHECK_T_MAX = 6

_TOKEN = re.compile(r'\s*(?:(?P<power>2\^(?:t|\{t\+(?P<shift>\d+)\}))|(?P<int>\d+)|(?P<op>[+-]))')


class ExponentExpression:
    """
    A linear combination c + sum_j n_j 2^{t+j} of powers of two in the parameter t.
    """

    def __init__(self, text: str, constant: int, powers: Dict[int, int]):
        """
        Constructor

        :param text: The source text.
        :param constant: The constant term c.
        :param powers: Coefficients n_j keyed by shift j.
        """
        self.text = text
        self.constant = constant
        self.powers = {j: n for j, n in powers.items() if n != 0}

    @classmethod
    def parse(cls, text: str, line: Optional[int] = None, column: int = 1) -> 'ExponentExpression':
        """
        Parses an exponent expression.

        :param text: the expression text.
        :param line: the line number, for error messages.
        :param column: the column the text starts at, for error messages.
        :return: the parsed expression.
        :raises: GoldenDataException with the position of the first unexpected character.
        """
        constant = 0
        powers: Dict[int, int] = {}
        position = 0
        sign = 1
        expect_term = True
        stripped = text.rstrip()
        if stripped.strip() == '':
            raise GoldenDataException('Empty exponent expression', line, column)
        while position < len(stripped):
            match = _TOKEN.match(stripped, position)
            if match is None:
                offset = len(stripped) - len(stripped[position:].lstrip())
                raise GoldenDataException(f"Unexpected character {stripped[offset]!r}", line, column + offset)
            token_column = column + match.end() - len(match.group(0).lstrip())
            if match.group('op') is not None:
                if expect_term:
                    raise GoldenDataException(f"Expected a term, found {match.group('op')!r}", line, token_column)
                sign = 1 if match.group('op') == '+' else -1
                expect_term = True
            else:
                if not expect_term:
                    raise GoldenDataException('Expected + or - between terms', line, token_column)
                if match.group('power') is not None:
                    shift = int(match.group('shift') or 0)
                    powers[shift] = powers.get(shift, 0) + sign
                else:
                    constant += sign * int(match.group('int'))
                expect_term = False
            position = match.end()
        if expect_term:
            raise GoldenDataException('Expression ends with an operator', line, column + len(stripped))
        return cls(text.strip(), constant, powers)

    def evaluate(self, t: int) -> int:
        return self.constant + sum(n * (1 << (t + j)) for j, n in self.powers.items())

    def is_constant(self) -> bool:
        return len(self.powers) == 0

    def __eq__(self, other):
        return isinstance(other, ExponentExpression) and (self.constant, self.powers) == (other.constant, other.powers)

    def __hash__(self):
        return hash((self.constant, tuple(sorted(self.powers.items()))))

    def __repr__(self):
        return f"hitcalc.golden.ExponentExpression({self.text!r})"

    def __str__(self):
        return self.text


class ValidityRange(NamedTuple):
    """
    The values of t a family is stated for: exactly ``low`` when ``exact``, else every t >= low.
    """
    low: int
    exact: bool

    @classmethod
    def parse(cls, text: str, line: Optional[int] = None, column: int = 1) -> 'ValidityRange':
        match = re.fullmatch(r'\s*t\s*(>=|=)\s*(\d+)\s*', text)
        if match is None:
            raise GoldenDataException(f"Invalid range {text.strip()!r}, expected t=N or t>=N", line, column)
        low = int(match.group(2))
        if low < 1:
            raise GoldenDataException('Ranges start at t = 1 or later', line, column)
        return cls(low, match.group(1) == '=')

    def contains(self, t: int) -> bool:
        return t == self.low if self.exact else t >= self.low

    def __str__(self):
        return f"t={self.low}" if self.exact else f"t>={self.low}"


class ParamMonomialFamily:
    """
    One catalogue entry: a monomial whose exponents depend on t, valid on a range of t.
    """

    def __init__(self, label: str, k: int, expressions: Sequence[ExponentExpression], validity: ValidityRange,
                 line: Optional[int] = None):
        """
        Constructor

        :param label: The catalogue label (q, b, u or v).
        :param k: The index of the entry within its catalogue.
        :param expressions: One exponent expression per variable.
        :param validity: The values of t the entry is stated for.
        :param line: The source line, for error messages.
        """
        self.label = label
        self.k = k
        self.expressions = tuple(expressions)
        self.validity = validity
        self.line = line

    @property
    def s(self) -> int:
        return len(self.expressions)

    def instantiate(self, t: int) -> Monomial:
        """
        Evaluates the exponents at t.

        :param t: the parameter.
        :return: the monomial.
        :raises: ValueError if t is outside the validity range.
        :raises: GoldenDataException if an exponent is negative.
        :raises: DegreeMismatchException if the degree is not 3(2^t - 1) + 2^t.
        """
        if not self.validity.contains(t):
            raise ValueError(f"{self.name()} is stated for {self.validity}, not t = {t}")
        exponents = [e.evaluate(t) for e in self.expressions]
        if any(a < 0 for a in exponents):
            raise GoldenDataException(f"{self.name()} has a negative exponent at t = {t}: {exponents}", self.line)
        m = Monomial(exponents)
        if m.degree != core.family_degree(t):
            raise DegreeMismatchException(
                f"{self.name()} has degree {m.degree} at t = {t}, expected {core.family_degree(t)}")
        return m

    def name(self) -> str:
        return f"{self.label}_{self.k}"

    def __repr__(self):
        return (f"hitcalc.golden.ParamMonomialFamily(label={self.label!r}, k={self.k}, "
                f"expressions=({', '.join(str(e) for e in self.expressions)}), validity={self.validity})")

    def __str__(self):
        return f"{self.label}; {self.k}; {','.join(str(e) for e in self.expressions)}; {self.validity}"


def parse_family_line(text: str, line: Optional[int] = None) -> ParamMonomialFamily:
    """
    Parses one catalogue line.

    :param text: the line, without its trailing newline.
    :param line: the line number, for error messages.
    :return: the family.
    :raises: GoldenDataException on any syntax error.
    """
    fields = text.split(';')
    if len(fields) != 4:
        raise GoldenDataException(f"Expected 4 ';'-separated fields, found {len(fields)}", line, 1)
    columns = [1]
    for field in fields[:-1]:
        columns.append(columns[-1] + len(field) + 1)
    label = fields[0].strip()
    if label not in LABELS:
        raise GoldenDataException(f"Unknown label {label!r}", line, columns[0])
    try:
        k = int(fields[1])
    except ValueError:
        raise GoldenDataException(f"Invalid index {fields[1].strip()!r}", line, columns[1])
    if k < 1:
        raise GoldenDataException('Indices start at 1', line, columns[1])
    expressions = []
    column = columns[2]
    for part in fields[2].split(','):
        expressions.append(ExponentExpression.parse(part, line, column))
        column += len(part) + 1
    if not 1 <= len(expressions) <= core.MAX_VARIABLES:
        raise GoldenDataException(f"Expected between 1 and {core.MAX_VARIABLES} exponents", line, columns[2])
    validity = ValidityRange.parse(fields[3], line, columns[3])
    return ParamMonomialFamily(label, k, expressions, validity, line)


def parse_families(lines: Iterable[str]) -> List[ParamMonomialFamily]:
    families = []
    for number, text in enumerate(lines, start=1):
        text = text.rstrip('\n')
        if text.strip() == '' or text.lstrip().startswith('#'):
            continue
        families.append(parse_family_line(text, number))
    return families


def check_families(families: Sequence[ParamMonomialFamily], t_max: int = CHECK_T_MAX) -> None:
    """
    Instantiates every family at each t <= t_max it is stated for and checks that the members of each catalogue
    share one weight vector, which is that of the degree family for t >= 2.

    :raises: GoldenDataException, DegreeMismatchException on the first violation.
    """
    for t in range(1, t_max + 1):
        weights: Dict[str, Tuple[WeightVector, ParamMonomialFamily]] = {}
        for family in families:
            if not family.validity.contains(t):
                continue
            w = core.weight_vector(family.instantiate(t))
            if t >= 2 and w != core.family_weight(t):
                raise GoldenDataException(
                    f"{family.name()} has weight {w} at t = {t}, expected {core.family_weight(t)}", family.line)
            first = weights.setdefault(family.label, (w, family))
            if first[0] != w:
                raise GoldenDataException(f"{family.name()} has weight {w} at t = {t}, but "
                                          f"{first[1].name()} has weight {first[0]}", family.line)


def load_families(path: Optional[str] = None, check: bool = True) -> List[ParamMonomialFamily]:
    """
    Loads a catalogue file.

    :param path: the file; defaults to the catalogue shipped with the package.
    :param check: whether to run the degree and weight checks.
    :return: the families, in file order.
    :raises: ValueError if the file does not exist.
    :raises: GoldenDataException on a syntax error or a failed check.
    """
    path = file_utils.data_file(APPENDIX_FILE) if path is None else path
    if not file_utils.file_exists(path):
        raise ValueError(f"The file {path} does not exist")
    with open(path, mode='r', encoding='utf-8') as f:
        families = parse_families(f)
    if check:
        check_families(families)
    logger.info(f"Loaded {len(families)} monomial families from {path}")
    return families


def instantiate(families: Sequence[ParamMonomialFamily], t: int, label: str) -> List[Monomial]:
    """
    Instantiates every family of a catalogue that is stated for t.

    :return: the distinct monomials in increasing order.
    """
    if label not in LABELS:
        raise ValueError(f"Unknown label: {label}")
    monomials = {f.instantiate(t) for f in families if f.label == label and f.validity.contains(t)}
    return sorted(monomials, key=core.sort_key)


def family_counts(t: int) -> Tuple[int, int]:
    """
    Returns (u_t, v_t): the numbers of admissible monomials of degree 3(2^t - 1) + 2^t in P_5^0, and of weight
    vector (3, ..., 3, 1) in P_5^+.
    """
    if t < 1:
        raise ValueError('t must be positive')
    u = {1: 45, 2: 145}.get(t, 195)
    v = {1: 1, 2: 60, 3: 260}.get(t, 270)
    return u, v


class SetCheck:
    """
    Compares a catalogue set with a computed set.
    """

    def __init__(self, name: str, expected: Iterable[Sequence[int]], computed: Iterable[Sequence[int]]):
        """
        Constructor

        :param name: The check name.
        :param expected: The catalogue monomials.
        :param computed: The computed monomials.
        """
        self.name = name
        self.expected: Set[Monomial] = {Monomial(m) for m in expected}
        self.computed: Set[Monomial] = {Monomial(m) for m in computed}

    @property
    def missing(self) -> List[Monomial]:
        return sorted(self.expected - self.computed, key=core.sort_key)

    @property
    def extra(self) -> List[Monomial]:
        return sorted(self.computed - self.expected, key=core.sort_key)

    @property
    def passed(self) -> bool:
        return self.expected == self.computed

    def to_dict(self) -> Dict[str, Any]:
        return {
            'name': self.name,
            'passed': self.passed,
            'expected': len(self.expected),
            'computed': len(self.computed),
            'missing': [list(m) for m in self.missing],
            'extra': [list(m) for m in self.extra]
        }

    def __str__(self):
        status = 'ok' if self.passed else 'MISMATCH'
        text = f"{self.name}: {len(self.expected)} expected, {len(self.computed)} computed [{status}]"
        if self.missing:
            text += '\n  missing: ' + ' '.join(str(m) for m in self.missing)
        if self.extra:
            text += '\n  extra: ' + ' '.join(str(m) for m in self.extra)
        return text


class CountCheck:

    def __init__(self, name: str, expected: int, computed: int):
        self.name = name
        self.expected = expected
        self.computed = computed

    @property
    def passed(self) -> bool:
        return self.expected == self.computed

    def to_dict(self) -> Dict[str, Any]:
        return {'name': self.name, 'passed': self.passed, 'expected': self.expected, 'computed': self.computed}

    def __str__(self):
        return f"{self.name}: {self.expected} expected, {self.computed} computed [{'ok' if self.passed else 'MISMATCH'}]"


class VerificationReport:
    """
    The outcome of checking the catalogues at one t against computed admissible bases.
    """

    def __init__(self, s: int, t: int, checks: List[Any]):
        self.s = s
        self.t = t
        self.degree = core.family_degree(t)
        self.checks = checks

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> List[Any]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> Dict[str, Any]:
        return {
            's': self.s,
            't': self.t,
            'degree': self.degree,
            'passed': self.passed,
            'checks': [c.to_dict() for c in self.checks]
        }

    def __repr__(self):
        return f"hitcalc.golden.VerificationReport(s={self.s}, t={self.t}, passed={self.passed})"

    def __str__(self):
        lines = [f"Verification of degree {self.degree} (t = {self.t}): {'PASS' if self.passed else 'FAIL'}"]
        lines.extend(str(c) for c in self.checks)
        return '\n'.join(lines)


def support_checks(families: Sequence[ParamMonomialFamily], t: int) -> List[SetCheck]:
    """
    Compares the four-variable part of the q catalogue on each support with the u list (t = 2), the v list
    (t >= 4), or with the first support (t = 3).
    """
    if t < 2:
        return []
    by_support: Dict[Tuple[int, ...], List[Monomial]] = {}
    for m in instantiate(families, t, 'q'):
        indices = core.support(m)
        if len(indices) == 4:
            by_support.setdefault(indices, []).append(core.compress(m))
    reference: Optional[List[Monomial]] = None
    label = None
    if t == 2:
        reference, label = instantiate(families, t, 'u'), 'u'
    elif t >= 4:
        reference, label = instantiate(families, t, 'v'), 'v'
    checks = []
    for indices in sorted(by_support):
        if reference is None:
            reference, label = by_support[indices], f"support {indices}"
        checks.append(SetCheck(f"q on support {indices} vs {label}", reference, by_support[indices]))
    return checks


def verify_against_computed(s: int = 5, t: int = 2, config: Optional[RunConfig] = None,
                            families: Optional[Sequence[ParamMonomialFamily]] = None) -> VerificationReport:
    """
    Checks the catalogues at t against the admissible basis of (QP_5)_d, d = 3(2^t - 1) + 2^t.
    Mismatches are recorded in the report with both sides shown.

    :param s: the number of variables; the catalogues describe s = 5.
    :param t: the parameter.
    :param config: the run configuration.
    :param families: the catalogue; defaults to the shipped one.
    :return: the report.
    :raises: ValueError if s is not 5.
    :raises: ResourceLimitException if a quotient exceeds the configured guard.
    """
    if s != 5:
        raise ValueError('The catalogues describe five variables')
    families = load_families() if families is None else families
    d = core.family_degree(t)
    logger.info(f"Verifying the catalogues at t = {t} (degree {d})")
    quotient = build_quotient(s, d, config)
    golden_zero = instantiate(families, t, 'q')
    golden_positive = instantiate(families, t, 'b')
    u_t, v_t = family_counts(t)
    checks: List[Any] = [
        CountCheck('u_t', u_t, len(golden_zero)),
        CountCheck('v_t', v_t, len(golden_positive)),
        SetCheck('B_5^0', golden_zero, quotient.admissible_zero)
    ]
    weight = core.family_weight(t) if t >= 2 else WeightVector([s])
    checks.append(SetCheck(f"B_5^+({weight})", golden_positive, quotient.of_weight(weight, POSITIVE)))
    if t == 1:
        checks.append(CountCheck('dim (QP_5)_d', u_t + v_t, quotient.dim))
    else:
        target = build_quotient(s, core.kameko_target_degree(t), config)
        checks.append(CountCheck('dim (QP_5)_d = u_t + v_t + dim (QP_5)_{2^{t+1}-4}', u_t + v_t + target.dim,
                                 quotient.dim))
    if t == 2:
        four = build_quotient(4, d, config)
        checks.append(SetCheck(f"B_4^+({weight}) vs u", instantiate(families, t, 'u'),
                               four.of_weight(weight, POSITIVE)))
    checks.extend(support_checks(families, t))
    report = VerificationReport(s, t, checks)
    for failure in report.failures():
        logger.warning(f"Catalogue mismatch at t = {t}: {failure}")
    return report
