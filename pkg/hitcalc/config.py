import logging
import os
from enum import Enum
from typing import Any, Dict, Mapping, Optional

from hitcalc import file_utils
from hitcalc.exceptions import InvalidConfigException

logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())

ENV_PREFIX = 'HITCALC_'
DEFAULT_MAX_SPACE = 1 << 22
DEFAULT_CHI_CACHE = 64


class Strategy(Enum):
    """
    How a quotient basis is computed.
    """

    DIRECT = 0
    RECURSIVE = 1

    def label(self) -> str:
        """
        Returns the strategy's command-line label.

        :return: the strategy label.
        """
        return {
            0: 'direct',
            1: 'recursive',
        }.get(self.value, None)

    @staticmethod
    def from_name(name: str) -> 'Strategy':
        return _enum_from_name(Strategy, name)


class GeneratorMode(Enum):
    """
    Which Steenrod squares generate the hit subspace.
    """

    POWERS_OF_TWO = 0
    ALL = 1

    def label(self) -> str:
        return {
            0: 'powers-of-two',
            1: 'all',
        }.get(self.value, None)

    @staticmethod
    def from_name(name: str) -> 'GeneratorMode':
        return _enum_from_name(GeneratorMode, name)


class OutputFormat(Enum):
    """
    Output format enumeration.
    """

    TEXT = 0
    JSON = 1
    CSV = 2

    def label(self) -> str:
        return {
            0: 'text',
            1: 'json',
            2: 'csv',
        }.get(self.value, None)

    def extension(self) -> str:
        """
        Returns the file extension used when this format is written to a file.

        :return: the file extension, without the leading dot.
        """
        return {
            0: 'txt',
            1: 'json',
            2: 'csv',
        }.get(self.value, None)

    @staticmethod
    def from_name(name: str) -> 'OutputFormat':
        return _enum_from_name(OutputFormat, name)


class Group(Enum):
    """
    The groups acting on P_s: the symmetric group and the general linear group over F_2.
    """

    SIGMA = 0
    GL = 1

    def label(self) -> str:
        return {
            0: 'Sigma',
            1: 'GL',
        }.get(self.value, None)

    @staticmethod
    def from_name(name: str) -> 'Group':
        return _enum_from_name(Group, name)


def _enum_from_name(enum_type, name: str):
    if name is None or str(name).strip() == '':
        raise InvalidConfigException(f"A {enum_type.__name__} value must not be empty")
    key = str(name).strip().lower().replace('_', '-')
    for member in enum_type:
        if key in (member.label().lower(), member.name.lower().replace('_', '-')):
            return member
    choices = ', '.join(m.label() for m in enum_type)
    raise InvalidConfigException(f"Invalid {enum_type.__name__}: {name} (expected one of {choices})")


def _positive_int(key: str, value: Any) -> int:
    try:
        number = int(value)
    except (TypeError, ValueError):
        raise InvalidConfigException(f"{key} must be an integer, found: {value}")
    if number <= 0:
        raise InvalidConfigException(f"{key} must be positive, found: {number}")
    return number


class RunConfig:
    """
    The settings shared by every computation of a run: resource guard, strategy, generator mode,
    output format, thread budget and the chi-operator memo limit.
    """

    KEYS = ('max_space', 'strategy', 'generator_mode', 'format', 'threads', 'chi_cache')

    def __init__(self,
                 max_space: int = DEFAULT_MAX_SPACE,
                 strategy: Strategy = Strategy.DIRECT,
                 generator_mode: GeneratorMode = GeneratorMode.POWERS_OF_TWO,
                 output_format: OutputFormat = OutputFormat.TEXT,
                 threads: int = 1,
                 chi_cache: int = DEFAULT_CHI_CACHE):
        """
        Constructor

        :param max_space: The largest number of monomials a degree space or generator batch may hold.
        :param strategy: The quotient strategy.
        :param generator_mode: Squares used to generate the hit subspace.
        :param output_format: The output format used by the CLI.
        :param threads: Worker threads available to the recursive strategy.
        :param chi_cache: Largest k for which chi(Sq^k) results are memoized.
        :raises: InvalidConfigException if a value is invalid.
        """
        self.max_space = _positive_int('max_space', max_space)
        self.threads = _positive_int('threads', threads)
        self.chi_cache = _positive_int('chi_cache', chi_cache)
        if not isinstance(strategy, Strategy):
            strategy = Strategy.from_name(strategy)
        if not isinstance(generator_mode, GeneratorMode):
            generator_mode = GeneratorMode.from_name(generator_mode)
        if not isinstance(output_format, OutputFormat):
            output_format = OutputFormat.from_name(output_format)
        self.strategy = strategy
        self.generator_mode = generator_mode
        self.output_format = output_format

    @classmethod
    def from_sources(cls,
                     config_file: Optional[str] = None,
                     env: Optional[Mapping[str, str]] = None,
                     overrides: Optional[Dict[str, Any]] = None) -> 'RunConfig':
        """
        Builds a configuration from defaults, an optional key=value file, HITCALC_ environment variables
        and explicit overrides, in increasing order of precedence.

        :param config_file: Optional path of a key=value configuration file.
        :param env: The environment to read; defaults to os.environ.
        :param overrides: Explicit values (e.g. from command-line flags); None values are ignored.
        :return: The merged configuration.
        :raises: InvalidConfigException if a file, key or value is invalid.
        """
        values = {}
        if config_file is not None:
            try:
                from_file = file_utils.read_key_value_file(config_file)
            except ValueError as e:
                raise InvalidConfigException(str(e))
            for key, value in from_file.items():
                if key not in cls.KEYS:
                    raise InvalidConfigException(f"Unknown configuration key in {config_file}: {key}")
                values[key] = value
            logger.info(f"Loaded {len(from_file)} setting(s) from {config_file}")
        env = os.environ if env is None else env
        for key in cls.KEYS:
            value = env.get(ENV_PREFIX + key.upper())
            if value is not None and value != '':
                values[key] = value
        for key, value in (overrides or {}).items():
            if key not in cls.KEYS:
                raise InvalidConfigException(f"Unknown configuration key: {key}")
            if value is not None:
                values[key] = value
        if 'format' in values:
            values['output_format'] = values.pop('format')
        return cls(**values)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'max_space': self.max_space,
            'strategy': self.strategy.label(),
            'generator_mode': self.generator_mode.label(),
            'format': self.output_format.label(),
            'threads': self.threads,
            'chi_cache': self.chi_cache
        }

    def __eq__(self, other):
        return isinstance(other, RunConfig) and self.to_dict() == other.to_dict()

    def __hash__(self):
        return hash(tuple(sorted(self.to_dict().items())))

    def __repr__(self):
        return (f"hitcalc.config.RunConfig(max_space={self.max_space}, strategy={self.strategy.label()}, "
                f"generator_mode={self.generator_mode.label()}, format={self.output_format.label()}, "
                f"threads={self.threads}, chi_cache={self.chi_cache})")
