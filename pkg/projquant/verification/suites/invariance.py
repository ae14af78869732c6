from projquant import quantization
from projquant.logger import get_logger
from projquant.config import PERTURBABLE
from projquant.operators import op_difference
from projquant.tensor_fields import QuantCoeffs, Weights
from projquant.verification import checks
from projquant.verification import suite

logger = get_logger(__name__)


@suite.register_suite("invariance")
class InvarianceSuite(suite.Suite):
    """Q~(T) == Q(T) for projectively equivalent connections, with negative controls."""

    def run(self):
        reports = []
        n = self.n
        w = self.weights
        if self.has_first_order():
            reports.extend(self._first_order(QuantCoeffs(alpha=quantization.alpha(w))))
        elif w == Weights(0, 1):
            reports.extend(self._delta_one())
        if self.has_second_order():
            coeffs = quantization.betas(n, w)
            if self._perturb is not None:
                logger.info('invariance: perturbing %s by 1', self._perturb)
                coeffs = coeffs.perturbed(self._perturb)
            reports.append(self._second_order(coeffs))
            reports.append(self._cross_validation(quantization.betas(n, w)))
            if self.run_negative_controls():
                for field in PERTURBABLE:
                    reports.append(self._second_order_control(quantization.betas(n, w).perturbed(field), field))
        return reports

    def _instances(self, stream, degrees):
        sampler = self.sampler(stream)
        n = self.n
        for _ in range(self._samples):
            yield (sampler.connection(n), sampler.one_form(n), sampler.symbol(n, self.weights.delta, degrees))

    def _residuals(self, stream, degrees, coeffs):
        for g, omega, t in self._instances(stream, degrees):
            yield checks.invariance_residual(g, omega, t, self.weights, coeffs)

    def _first_order(self, coeffs):
        detail = 'Q1 n=%d %r' % (self.n, self.weights)
        reports = [self.expect_zero('invariance_q1', self._residuals('q1', (0, 1), coeffs), detail)]
        if self.run_negative_controls():
            reports.append(self.expect_nonzero(
                'invariance_q1_control_alpha',
                self._residuals('q1', (0, 1), coeffs.perturbed('alpha')),
                self._samples - 1,
                detail + ' alpha+1'))
        return reports

    def _delta_one(self):
        """At (lambda, mu) = (0, 1) every alpha gives an invariant map."""
        reports = []
        for value in (0, 1):
            coeffs = QuantCoeffs(alpha=value)
            reports.append(self.expect_zero(
                'invariance_q1_delta_one_alpha%d' % value,
                self._residuals('q1_delta_one', (0, 1), coeffs),
                'Q1 at delta=1, alpha=%d, n=%d' % (value, self.n)))
        return reports

    def _second_order(self, coeffs):
        return self.expect_zero(
            'invariance_q2',
            self._residuals('q2', (2,), coeffs),
            'Q2 n=%d %r %s' % (self.n, self.weights, 'perturb=%s' % self._perturb if self._perturb else 'betas'))

    def _second_order_control(self, coeffs, field):
        return self.expect_nonzero(
            'invariance_q2_control_%s' % field,
            self._residuals('q2', (2,), coeffs),
            self._samples - 1,
            'Q2 n=%d %r %s+1' % (self.n, self.weights, field))

    def _cross_validation(self, solution):
        """Compares the expanded brackets with the computed residual at generic constants."""
        n = self.n
        w = self.weights
        checks.log_bracket_discrepancies(n, w, solution)
        derived = checks.coeff_bracket_values(n, w, solution, checks.BracketForm.DERIVED)
        if any(derived):
            return checks.CheckReport('bracket_cross_validation', False, None,
                                      'expanded brackets do not vanish at the solution, n=%d %r' % (n, w))
        sampler = self.sampler('bracket_coeffs')

        def residuals():
            for g, omega, t in self._instances('brackets', (2,)):
                coeffs = sampler.coeffs()
                brackets = checks.coeff_bracket_values(n, w, coeffs, checks.BracketForm.DERIVED)
                yield op_difference(checks.invariance_residual(g, omega, t, w, coeffs),
                                    checks.bracket_residual(g, omega, t, w, brackets))

        return self.expect_zero('bracket_cross_validation', residuals(),
                                'expanded brackets against Q~ - Q, n=%d %r' % (n, w))
