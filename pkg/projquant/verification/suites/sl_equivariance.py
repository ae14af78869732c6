from projquant import quantization
from projquant.logger import get_logger
from projquant.tensor_fields import QuantCoeffs
from projquant.verification import checks
from projquant.verification import suite

logger = get_logger(__name__)

# beta3 multiplies the Ricci tensor, which vanishes on the flat chart.
_FLAT_CONTROLS = ('beta1', 'beta2')


@suite.register_suite("sl_equivariance")
class SlEquivarianceSuite(suite.Suite):
    """Q(L_X T) == L_X Q(T) for every generator X of sl(n+1) on the flat chart."""

    def run(self):
        reports = []
        n = self.n
        w = self.weights
        generators = checks.sl_generators(n)
        if self.has_first_order():
            coeffs = QuantCoeffs(alpha=quantization.alpha(w))
            for gen in generators:
                reports.append(self._check(gen, (0, 1), coeffs, 'sl_equivariance_q1'))
        if self.has_second_order():
            solution = quantization.betas(n, w)
            coeffs = solution
            if self._perturb is not None:
                coeffs = coeffs.perturbed(self._perturb)
            for gen in generators:
                reports.append(self._check(gen, (2,), coeffs, 'sl_equivariance_q2'))
            if self.run_negative_controls():
                for gen in generators:
                    if gen.kind != checks.SlGenerator.QUADRATIC:
                        continue
                    for field in _FLAT_CONTROLS:
                        reports.append(self._control(gen, solution.perturbed(field), field))
        return reports

    def _residuals(self, gen, degrees, coeffs):
        sampler = self.sampler('%s:%s' % (gen.label, degrees))
        n = self.n
        for _ in range(self._samples):
            t = sampler.symbol(n, self.weights.delta, degrees)
            yield checks.check_sl_equivariance(gen, t, self.weights, coeffs).residual

    def _check(self, gen, degrees, coeffs, name):
        return self.expect_zero(
            name, self._residuals(gen, degrees, coeffs),
            'generator %s, n=%d %r' % (gen.label, self.n, self.weights))

    def _control(self, gen, coeffs, field):
        """Uniqueness witness: a perturbed constant breaks equivariance on some sample."""
        return self.expect_nonzero(
            'sl_equivariance_control_%s' % field,
            self._residuals(gen, (2,), coeffs),
            1,
            'generator %s, n=%d %r %s+1' % (gen.label, self.n, self.weights, field))
