"""Analytic repeat probabilities, event bounds and a Monte Carlo check.

This module provides:
- repeat_probability: probability that two independent windows are equal
- overlap_repeat_bound: bound on an overlapping (L-1)-repeat anywhere
- nonoverlap_repeat_bound: bound on a non-overlapping (L-1)-repeat anywhere
- t_event_bound: bound on a four-genome T event
- exclusion_bound: bound on a B event that fails the swap conditions
- RepeatEstimate: empirical repeat frequency next to its analytic value
- estimate_repeat_probability: function sampling independent window pairs
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from models import Distribution, collision_probability
from utils.common import make_generator
from utils.constants import REPEAT_PROBABILITY_CHUNK, Stream
from utils.exceptions import ValidationError

logger = logging.getLogger(__name__)


def _decay(count: float, rate: float) -> float:
	"""Return e^{-count * rate}, taking 0 * inf as 0."""
	if count == 0:
		return 1.0
	return math.exp(-count * rate)


def _check_positive(**values: float) -> None:
	for name, value in values.items():
		if not value > 0:
			msg = f"{name} must be positive, got {value}"
			raise ValidationError(msg)


def repeat_probability(p: Distribution, q: Distribution, ell: int) -> float:
	"""Return e^{-ell F(p, q)} = (sum_a p(a) q(a))^ell for non-overlapping windows."""
	if ell < 0:
		msg = f"ell must be >= 0, got {ell}"
		raise ValidationError(msg)
	return collision_probability(p, q) ** ell


def overlap_repeat_bound(
	num_genomes: int, genome_length: int, read_length: int, h_star: float
) -> float:
	"""Return M N L e^{-(L - 1) h_star / 2}."""
	_check_positive(M=num_genomes, N=genome_length, L=read_length)
	scale = num_genomes * genome_length * read_length
	return scale * _decay(read_length - 1, h_star / 2.0)


def nonoverlap_repeat_bound(
	num_genomes: int, genome_length: int, read_length: int, f_lower: float
) -> float:
	"""Return M^2 N^2 e^{-(L - 1) f_lower}."""
	_check_positive(M=num_genomes, N=genome_length, L=read_length)
	scale = float(num_genomes * genome_length) ** 2
	return scale * _decay(read_length - 1, f_lower)


def t_event_bound(genome_length: int, h_star: float) -> float:
	"""Return e^{-2 N h_star}."""
	_check_positive(N=genome_length)
	return _decay(2 * genome_length, h_star)


def exclusion_bound(  # noqa: PLR0913
	genome_length: int,
	read_length: int,
	j: int,
	num_genomes: int,
	f_lower: float,
	h_star: float,
) -> float:
	"""Bound the chance that a B event at j has a = c, b = d or a T event.

	Returns e^{-(j-1) f_lower} + e^{-(N-(j+L)+1) f_lower} + M^2 e^{-2 N h_star}.
	"""
	_check_positive(M=num_genomes, N=genome_length, L=read_length)
	if not 1 <= j <= genome_length - read_length + 1:
		msg = f"j={j} is not a window start for N={genome_length}, L={read_length}"
		raise ValidationError(msg)
	prefix = _decay(j - 1, f_lower)
	suffix = _decay(genome_length - (j + read_length) + 1, f_lower)
	return prefix + suffix + num_genomes**2 * t_event_bound(genome_length, h_star)


@dataclass(frozen=True)
class RepeatEstimate:
	"""Observed frequency of equal independent windows and its analytic value."""

	trials: int
	matches: int
	analytic: float

	@property
	def frequency(self) -> float:
		"""Fraction of trials whose two windows were equal."""
		return self.matches / self.trials

	@property
	def standard_error(self) -> float:
		"""Binomial standard error of the frequency under the analytic value."""
		return math.sqrt(self.analytic * (1.0 - self.analytic) / self.trials)

	def within(self, sigmas: float) -> bool:
		"""True iff |frequency - analytic| <= sigmas * standard_error."""
		return abs(self.frequency - self.analytic) <= sigmas * self.standard_error


def estimate_repeat_probability(
	p: Distribution, q: Distribution, ell: int, trials: int, seed: int
) -> RepeatEstimate:
	"""Draw `trials` pairs of independent ell-windows (one from p, one from q).

	Sampling runs in vectorised batches on the REPEAT_PROBABILITY stream of
	`seed`, so the result depends only on the arguments.
	"""
	analytic = repeat_probability(p, q, ell)
	if trials < 1:
		msg = f"trials must be >= 1, got {trials}"
		raise ValidationError(msg)

	rng = make_generator(seed, Stream.REPEAT_PROBABILITY)
	size = p.alphabet.size
	first, second = p.as_array(), q.as_array()
	matches = 0
	remaining = trials
	while remaining:
		batch = min(remaining, REPEAT_PROBABILITY_CHUNK)
		left = rng.choice(size, size=(batch, ell), p=first)
		right = rng.choice(size, size=(batch, ell), p=second)
		matches += int(np.count_nonzero(np.all(left == right, axis=1)))
		remaining -= batch
	logger.debug("%d of %d window pairs matched (ell=%d)", matches, trials, ell)
	return RepeatEstimate(trials=trials, matches=matches, analytic=analytic)
