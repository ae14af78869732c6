# coding: utf-8
import abc

import six

from projquant import scalar_poly
from projquant.logger import get_logger
from projquant.quantization import resonant_deltas
from projquant.tensor_fields import Weights
from projquant.verification.checks import CheckReport
from projquant.verification.sampler import InstanceSampler

logger = get_logger(__name__)

_SUITES_REGISTRY = {}


def register_suite(name):
    """A class decorator to register a verification suite.

    Example:

        @register_suite("invariance")
        class InvarianceSuite(Suite):
            ...
    """
    if name in _SUITES_REGISTRY:
        raise ValueError("A suite with name '%s' is already registered" % name)

    def _decorator(cls):
        cls.name = name
        _SUITES_REGISTRY[name] = cls
        return cls

    return _decorator


def get_suite_class(name):
    suite_cls = _SUITES_REGISTRY.get(name)
    if suite_cls is None:
        raise ValueError("Unknown suite '%s'" % name)
    return suite_cls


def registered_suites():
    return sorted(_SUITES_REGISTRY)


@six.add_metaclass(abc.ABCMeta)
class Suite(object):
    """Base class for verification suites.

    A suite is built from the validated options (n, lambda, mu, seed,
    samples, case, beta2, perturb) and returns a list of CheckReport.
    """

    name = None

    def __init__(self, options):
        self._n = options['n']
        self._weights = Weights(options['lambda'], options['mu'])
        self._seed = options['seed']
        self._samples = options['samples']
        self._case = options.get('case')
        self._beta2 = scalar_poly.to_rational(options.get('beta2', '0'))
        self._perturb = options.get('perturb')

    @property
    def n(self):
        return self._n

    @property
    def weights(self):
        return self._weights

    @property
    def seed(self):
        return self._seed

    def sampler(self, stream):
        """A generator private to this suite and stream."""
        return InstanceSampler(self._seed, '%s:%d:%s' % (self.name, self._n, stream))

    def has_second_order(self):
        """Whether the generic second-order map exists for the suite weights."""
        if self._n < 2:
            logger.info('%s: second-order checks need n >= 2, skipped for n=%d', self.name, self._n)
            return False
        if self._weights.delta in resonant_deltas(self._n):
            logger.info('%s: delta=%s is resonant, second-order checks skipped (see table1)',
                        self.name, scalar_poly.format_rational(self._weights.delta))
            return False
        return True

    def has_first_order(self):
        if self._weights.delta == 1:
            logger.info('%s: generic first-order checks skipped at delta=1', self.name)
            return False
        return True

    def run_negative_controls(self):
        return self._perturb is None

    def expect_zero(self, name, residuals, detail):
        """Passes iff every residual vanishes; reports the first one that does not."""
        count = 0
        for index, residual in enumerate(residuals):
            count += 1
            if not residual.is_zero():
                logger.warning('%s: %s failed on sample %d', self.name, name, index)
                return CheckReport(name, False, residual, '%s; sample %d' % (detail, index))
        return CheckReport(name, True, None, '%s; %d samples' % (detail, count))

    def expect_nonzero(self, name, residuals, required, detail):
        """Negative control: passes iff at least ``required`` residuals are nonzero.

        At least one nonzero residual is always required.
        """
        required = max(1, required)
        nonzero = 0
        count = 0
        for residual in residuals:
            count += 1
            if not residual.is_zero():
                nonzero += 1
        passed = nonzero >= required
        if not passed:
            logger.warning('%s: %s left only %d of %d nonzero residuals', self.name, name, nonzero, count)
        return CheckReport(name, passed, None, '%s; %d of %d residuals nonzero' % (detail, nonzero, count))

    @abc.abstractmethod
    def run(self):
        raise NotImplementedError()
