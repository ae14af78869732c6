"""Seeded random instances for the verification checks."""

import itertools
import random

from projquant import scalar_poly
from projquant.covariant_calculus import closed_one_form
from projquant.quantization import resonant_deltas
from projquant.scalar_poly import QQ
from projquant.tensor_fields import (Connection, Density, OneForm, QuantCoeffs, SymbolField, VectorField,
                                     Weights, zero_matrix, zero_vector)

NUMERATORS = (-9, 9)
DENOMINATORS = (1, 2, 3)
DEFAULT_DEGREE = 2


class InstanceSampler(object):
    """Draws small exact polynomials and fields from a seeded generator.

    The generator is seeded from (seed, stream) so that independent checks
    draw reproducible instances regardless of the order they run in.
    """

    def __init__(self, seed, stream='', degree=DEFAULT_DEGREE):
        self._rng = random.Random('%s:%s' % (seed, stream))
        self._degree = degree

    def rational(self):
        return QQ(self._rng.randint(*NUMERATORS), self._rng.choice(DENOMINATORS))

    def polynomial(self, n, degree=None):
        if degree is None:
            degree = self._degree
        terms = {}
        for exponent in itertools.product(range(degree + 1), repeat=n):
            if sum(exponent) <= degree:
                terms[exponent] = self.rational()
        return scalar_poly.from_terms(n, terms)

    def connection(self, n):
        gamma = [[[None] * n for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(n):
                for k in range(j, n):
                    entry = self.polynomial(n)
                    gamma[i][j][k] = entry
                    gamma[i][k][j] = entry
        return Connection(gamma)

    def one_form(self, n):
        return OneForm(self.polynomial(n) for _ in range(n))

    def closed_one_form(self, n):
        return closed_one_form(self.polynomial(n, self._degree + 1))

    def vector_field(self, n):
        return VectorField(self.polynomial(n) for _ in range(n))

    def density(self, n, weight):
        return Density(weight, self.polynomial(n))

    def symbol(self, n, delta, degrees=(0, 1, 2)):
        """A random symbol whose nonzero parts are the listed degrees."""
        deg2 = zero_matrix(n)
        if 2 in degrees:
            deg2 = [[None] * n for _ in range(n)]
            for i in range(n):
                for j in range(i, n):
                    entry = self.polynomial(n)
                    deg2[i][j] = entry
                    deg2[j][i] = entry
        deg1 = [self.polynomial(n) for _ in range(n)] if 1 in degrees else zero_vector(n)
        deg0 = self.polynomial(n) if 0 in degrees else scalar_poly.zero(n)
        return SymbolField(delta, deg2, deg1, deg0)

    def weights(self, n):
        """Random weights with delta away from 1 and from the resonant values."""
        excluded = set(resonant_deltas(n)) | {QQ(1)}
        while True:
            w = Weights(self.rational(), self.rational())
            if w.delta not in excluded:
                return w

    def coeffs(self):
        """Generic constants, unrelated to any weights."""
        return QuantCoeffs(self.rational(), self.rational(), self.rational(), self.rational())
