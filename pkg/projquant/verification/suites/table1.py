from projquant import quantization
from projquant.logger import get_logger
from projquant.scalar_poly import QQ
from projquant.tensor_fields import Weights
from projquant.verification import checks
from projquant.verification import suite

logger = get_logger(__name__)

_OFF_TABLE_SHIFT = QQ(1, 2)


@suite.register_suite("table1")
class TableISuite(suite.Suite):
    """Invariance at the resonant weights, and its failure once the weights move off the table."""

    def run(self):
        n = self.n
        if n < 2:
            logger.info('table1: resonant cases need n >= 2, skipped for n=%d', n)
            return []
        cases = quantization.ResonantCase.ALL if self._case is None else (self._case,)
        reports = []
        for case in cases:
            reports.append(checks.check_table1(case, n, self._samples, self._seed, beta2_free=self._beta2))
            if self.run_negative_controls():
                reports.append(self._off_table(case))
        return reports

    def _off_table(self, case):
        """Resonant-case constants at (lambda + 1/2, mu + 1/2) must leave a residual."""
        n = self.n
        w = quantization.table1_weights(case, n)
        shifted = Weights(w.lam + _OFF_TABLE_SHIFT, w.mu + _OFF_TABLE_SHIFT)
        report = checks.check_table1(case, n, self._samples, self._seed, weights=shifted,
                                     beta2_free=self._beta2)
        return checks.CheckReport('table1_case%d_off_table' % case, not report.passed, None,
                                  'expected a residual at %r: %s' % (shifted, report.detail))
