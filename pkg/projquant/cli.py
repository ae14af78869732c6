"""Command line front end: coefficients, quantization of symbol files and verification."""

import json

from projquant import config as config_util
from projquant import quantization
from projquant import scalar_poly
from projquant import utility
from projquant.logger import get_logger
from projquant.operators import op_to_json
from projquant.tensor_fields import (CONNECTION_SCHEMA, SYMBOL_SCHEMA, WeightError, Weights,
                                     connection_from_json, symbol_from_json)
from projquant.verification import runner

logger = get_logger(__name__)

SELFTEST_DIMENSIONS = (2, 3)
SELFTEST_WEIGHTS = {'lambda': '1/2', 'mu': '1/2'}

QUANTIZE_INPUT_SCHEMA = {
    'type': 'object',
    'properties': {
        'connection': CONNECTION_SCHEMA,
        'symbol': SYMBOL_SCHEMA,
    },
    'required': ['connection', 'symbol'],
    'additionalProperties': False,
}


def format_coeffs(n, w):
    """The coefficient line for (n, w), or the resonant-case rows when delta is resonant."""
    tokens = []
    if w.delta != 1:
        tokens.append('alpha=%s' % scalar_poly.format_rational(quantization.alpha(w)))
    elif w == Weights(0, 1):
        tokens.append('alpha=0')
    else:
        logger.warning('No invariant first-order quantization exists at delta=1 for %r', w)
    lines = []
    if n >= 2:
        try:
            coeffs = quantization.betas(n, w)
        except quantization.ResonantWeight as e:
            logger.info('%s', e)
            lines.extend(format_table1_row(case, n) for case in e.cases)
        else:
            tokens.extend('%s=%s' % (name, scalar_poly.format_rational(getattr(coeffs, name)))
                          for name in ('beta1', 'beta2', 'beta3'))
    if tokens:
        lines.insert(0, ' '.join(tokens))
    return lines


def format_table1_row(case, n):
    w = quantization.table1_weights(case, n)
    coeffs = quantization.table1_coeffs(case, n)
    if case == quantization.ResonantCase.CASE_1:
        beta1, beta2 = '2*beta2', 'free'
    else:
        beta1 = scalar_poly.format_rational(coeffs.beta1)
        beta2 = scalar_poly.format_rational(coeffs.beta2)
    return 'table1 case=%d lambda=%s mu=%s beta1=%s beta2=%s beta3=%s' % (
        case,
        scalar_poly.format_rational(w.lam),
        scalar_poly.format_rational(w.mu),
        beta1,
        beta2,
        scalar_poly.format_rational(coeffs.beta3))


def _write_output(text, path):
    if path is None:
        print(text)
    else:
        with open(path, 'w') as output_file:
            output_file.write(text)
            output_file.write('\n')
        logger.info('Wrote %s', path)


class QuantizationTool(utility.Utility):
    """Computes quantization constants, quantizes symbols and runs the verification checks."""

    @property
    def name(self):
        return 'projquant'

    def declare_arguments(self, parser):
        subparsers = parser.add_subparsers(dest='command', help='Command to run.')
        subparsers.required = True

        parser_coeffs = subparsers.add_parser('coeffs', help='Print the quantization constants.')
        self._add_weight_arguments(parser_coeffs)

        parser_quantize = subparsers.add_parser('quantize', help='Quantize a symbol file.')
        self._add_weight_arguments(parser_quantize)
        parser_quantize.add_argument('--in', dest='input', required=True,
                                     help='JSON file with a "connection" and a "symbol".')
        parser_quantize.add_argument('--out', default=None,
                                     help='Output file for the operator (defaults to stdout).')
        self._add_resonance_arguments(parser_quantize)

        parser_verify = subparsers.add_parser('verify', help='Run the verification suites.')
        self._add_weight_arguments(parser_verify)
        self._add_verify_arguments(parser_verify)
        parser_verify.add_argument('--suite', dest='suites', action='append', default=None,
                                   choices=config_util.SUITE_NAMES,
                                   help='Suite to run (repeatable, defaults to all).')
        self._add_resonance_arguments(parser_verify)
        parser_verify.add_argument('--perturb', default=None, choices=config_util.PERTURBABLE,
                                   help='Shift one constant by 1 in the checks (negative control).')

        parser_selftest = subparsers.add_parser(
            'selftest', help='Run every suite at n=2 and n=3 with the default weights.')
        self._add_verify_arguments(parser_selftest)

    def _add_weight_arguments(self, parser):
        parser.add_argument('--n', type=int, default=None, help='Dimension of the chart.')
        parser.add_argument('--lambda', dest='lam', default=None, help='Source weight as "p/q".')
        parser.add_argument('--mu', default=None, help='Target weight as "p/q".')

    def _add_resonance_arguments(self, parser):
        parser.add_argument('--case', type=int, default=None, choices=quantization.ResonantCase.ALL,
                            help='Resonant case for resonant weights.')
        parser.add_argument('--beta2', default=None, help='Free beta2 of resonant case 1, as "p/q".')

    def _add_verify_arguments(self, parser):
        parser.add_argument('--seed', type=int, default=None, help='Seed of the random instances.')
        parser.add_argument('--samples', type=int, default=None, help='Random instances per check.')
        parser.add_argument('--out', default=None,
                            help='Output file for the JSON report (defaults to stdout).')

    def _options(self, args, **overrides):
        explicit = {
            'n': getattr(args, 'n', None),
            'lambda': getattr(args, 'lam', None),
            'mu': getattr(args, 'mu', None),
            'seed': getattr(args, 'seed', None),
            'samples': getattr(args, 'samples', None),
            'suites': getattr(args, 'suites', None),
            'case': getattr(args, 'case', None),
            'beta2': getattr(args, 'beta2', None),
            'perturb': getattr(args, 'perturb', None),
        }
        explicit.update(overrides)
        return config_util.read_options(self._config, explicit)

    def exec_function(self, args):
        if args.command == 'coeffs':
            return self.cmd_coeffs(self._options(args))
        if args.command == 'quantize':
            return self.cmd_quantize(self._options(args), args.input, args.out)
        if args.command == 'verify':
            return self.cmd_verify(self._options(args), args.out)
        return self.cmd_selftest(self._options(args, **SELFTEST_WEIGHTS), args.out)

    def cmd_coeffs(self, options):
        w = Weights(options['lambda'], options['mu'])
        for line in format_coeffs(options['n'], w):
            print(line)
        return 0

    def cmd_quantize(self, options, input_path, output_path):
        utility.check_input_path(input_path)
        utility.check_output_path(output_path)
        payload = utility.load_json_file(input_path)
        config_util.validate(payload, QUANTIZE_INPUT_SCHEMA, 'Quantize input')
        g = connection_from_json(payload['connection'])
        t = symbol_from_json(payload['symbol'])
        w = Weights(options['lambda'], options['mu'])
        if t.delta != w.delta:
            raise WeightError('Symbol delta=%s does not match mu - lambda = %s'
                              % (scalar_poly.format_rational(t.delta), scalar_poly.format_rational(w.delta)))
        op = quantization.quantize(g, t, w, case=options['case'], beta2_free=options['beta2'])
        _write_output(json.dumps(op_to_json(op), indent=2, sort_keys=True), output_path)
        return 0

    def cmd_verify(self, options, output_path):
        utility.check_output_path(output_path)
        reports = runner.run_suites(options)
        _write_output(runner.reports_to_json(reports), output_path)
        failed = [report['name'] for report in reports if not report['passed']]
        if failed:
            logger.warning('%d check(s) failed: %s', len(failed), ', '.join(failed))
            return 1
        logger.info('All %d check(s) passed', len(reports))
        return 0

    def cmd_selftest(self, options, output_path):
        options = dict(options, n=list(SELFTEST_DIMENSIONS), suites=list(config_util.SUITE_NAMES))
        return self.cmd_verify(options, output_path)
