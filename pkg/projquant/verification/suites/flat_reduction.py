from projquant import quantization
from projquant.covariant_calculus import RicciConvention
from projquant.logger import get_logger
from projquant.verification import checks
from projquant.verification import suite

logger = get_logger(__name__)


def _opposite(convention):
    if convention == RicciConvention.CONTRACT_THIRD:
        return RicciConvention.CONTRACT_FOURTH
    return RicciConvention.CONTRACT_THIRD


@suite.register_suite("flat_reduction")
class FlatReductionSuite(suite.Suite):
    """Over a projectively flat connection, Q2 reduces to its flat coordinate formula."""

    def run(self):
        if not self.has_second_order():
            return []
        n = self.n
        w = self.weights
        coeffs = quantization.betas(n, w)
        if self._perturb is not None:
            coeffs = coeffs.perturbed(self._perturb)
        reports = [self.expect_zero(
            'flat_reduction',
            self._residuals(coeffs, quantization.RICCI_CONVENTION),
            'n=%d %r' % (n, w))]
        if self.run_negative_controls():
            if coeffs.beta3 == 0:
                logger.info('flat_reduction: beta3=0, the Ricci convention control is skipped')
            else:
                reports.append(self.expect_nonzero(
                    'flat_reduction_control_ricci',
                    self._residuals(coeffs, _opposite(quantization.RICCI_CONVENTION)),
                    self._samples - 1,
                    'n=%d %r with the opposite Ricci contraction' % (n, w)))
        return reports

    def _residuals(self, coeffs, convention):
        sampler = self.sampler('flat')
        n = self.n
        for _ in range(self._samples):
            theta = sampler.one_form(n)
            t = sampler.symbol(n, self.weights.delta, degrees=(2,))
            yield checks.check_flat_reduction(theta, t, self.weights, coeffs, convention).residual
