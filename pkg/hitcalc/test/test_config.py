import os
import tempfile
import unittest

from hitcalc.config import DEFAULT_MAX_SPACE, GeneratorMode, Group, OutputFormat, RunConfig, Strategy
from hitcalc.exceptions import InvalidConfigException


class TestEnums(unittest.TestCase):

    def test_from_name(self):
        self.assertEqual(Strategy.RECURSIVE, Strategy.from_name('recursive'))
        self.assertEqual(Strategy.DIRECT, Strategy.from_name(' DIRECT '))
        self.assertEqual(GeneratorMode.POWERS_OF_TWO, GeneratorMode.from_name('powers_of_two'))
        self.assertEqual(OutputFormat.CSV, OutputFormat.from_name('csv'))
        self.assertEqual(Group.GL, Group.from_name('gl'))
        self.assertEqual(Group.SIGMA, Group.from_name('Sigma'))

    def test_from_name_invalid(self):
        self.assertRaises(InvalidConfigException, lambda: Strategy.from_name('greedy'))
        self.assertRaises(InvalidConfigException, lambda: Group.from_name(''))
        self.assertRaises(InvalidConfigException, lambda: OutputFormat.from_name(None))

    def test_labels(self):
        self.assertEqual('powers-of-two', GeneratorMode.POWERS_OF_TWO.label())
        self.assertEqual('txt', OutputFormat.TEXT.extension())
        self.assertEqual('json', OutputFormat.JSON.extension())


class TestRunConfig(unittest.TestCase):

    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.config_file = os.path.join(self.directory.name, 'hitcalc.conf')
        with open(self.config_file, mode='w') as f:
            f.write('strategy = recursive\nthreads = 2\nmax_space = 5000\n')

    def tearDown(self):
        self.directory.cleanup()

    def test_defaults(self):
        config = RunConfig.from_sources(env={})
        self.assertEqual(RunConfig(), config)
        self.assertEqual(DEFAULT_MAX_SPACE, config.max_space)
        self.assertEqual(Strategy.DIRECT, config.strategy)
        self.assertEqual(OutputFormat.TEXT, config.output_format)

    def test_file(self):
        config = RunConfig.from_sources(self.config_file, env={})
        self.assertEqual(Strategy.RECURSIVE, config.strategy)
        self.assertEqual(2, config.threads)
        self.assertEqual(5000, config.max_space)

    def test_precedence(self):
        env = {'HITCALC_THREADS': '3', 'HITCALC_FORMAT': 'json'}
        config = RunConfig.from_sources(self.config_file, env=env, overrides={'threads': None, 'max_space': 700})
        self.assertEqual(Strategy.RECURSIVE, config.strategy)
        self.assertEqual(3, config.threads)
        self.assertEqual(OutputFormat.JSON, config.output_format)
        self.assertEqual(700, config.max_space)
        config = RunConfig.from_sources(self.config_file, env=env, overrides={'strategy': 'direct', 'format': 'csv'})
        self.assertEqual(Strategy.DIRECT, config.strategy)
        self.assertEqual(OutputFormat.CSV, config.output_format)

    def test_empty_environment_value_is_ignored(self):
        config = RunConfig.from_sources(self.config_file, env={'HITCALC_THREADS': ''})
        self.assertEqual(2, config.threads)

    def test_invalid_values(self):
        self.assertRaises(InvalidConfigException, lambda: RunConfig(threads=0))
        self.assertRaises(InvalidConfigException, lambda: RunConfig(max_space='many'))
        self.assertRaises(InvalidConfigException, lambda: RunConfig(strategy='fastest'))
        self.assertRaises(InvalidConfigException,
                          lambda: RunConfig.from_sources(env={'HITCALC_CHI_CACHE': '-1'}))

    def test_invalid_keys(self):
        self.assertRaises(InvalidConfigException, lambda: RunConfig.from_sources(env={}, overrides={'seed': 1}))
        with open(self.config_file, mode='a') as f:
            f.write('colour = blue\n')
        self.assertRaises(InvalidConfigException, lambda: RunConfig.from_sources(self.config_file, env={}))

    def test_missing_file(self):
        missing = os.path.join(self.directory.name, 'none.conf')
        self.assertRaises(InvalidConfigException, lambda: RunConfig.from_sources(missing, env={}))

    def test_to_dict(self):
        config = RunConfig(strategy=Strategy.RECURSIVE, generator_mode='all', threads=4)
        self.assertDictEqual({'max_space': DEFAULT_MAX_SPACE, 'strategy': 'recursive', 'generator_mode': 'all',
                              'format': 'text', 'threads': 4, 'chi_cache': 64}, config.to_dict())
        self.assertEqual(hash(config), hash(RunConfig(strategy='recursive', generator_mode=GeneratorMode.ALL,
                                                      threads=4)))
