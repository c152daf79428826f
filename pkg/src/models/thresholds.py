"""Read-length thresholds of the identifiability and non-identifiability results.

This module provides:
- upper_threshold: read length above which reconstruction succeeds w.h.p.
- lower_threshold: read length below which reconstruction fails w.h.p.
- lower_threshold_constant: the constant C = min(1/f_star, 1/(2 f_star - f_lower))
- max_genomes_upper: largest genome count compatible with the upper threshold
- min_genomes_lower: genome count beyond which the lower threshold applies
"""

import math
import sys

from utils.exceptions import ValidationError

_MAX_EXPONENT = math.log(sys.float_info.max)


def _check_counts(num_genomes: int, genome_length: int) -> None:
	if num_genomes < 1 or genome_length < 1:
		msg = f"need M >= 1 and N >= 1, got M={num_genomes}, N={genome_length}"
		raise ValidationError(msg)


def _check_epsilon(epsilon: float) -> None:
	if not epsilon >= 0:
		msg = f"epsilon must be >= 0, got {epsilon}"
		raise ValidationError(msg)


def _scaled_exp(exponent: float, genome_length: int) -> float:
	"""Return e^{exponent} / N, or inf when it exceeds the float range."""
	log_value = exponent - math.log(genome_length)
	if log_value > _MAX_EXPONENT:
		return math.inf
	return math.exp(log_value)


def upper_threshold(
	num_genomes: int, genome_length: int, h_star: float, epsilon: float = 0.0
) -> float:
	"""Return 2(1 + epsilon)/h_star * log(M N)."""
	_check_counts(num_genomes, genome_length)
	_check_epsilon(epsilon)
	if not h_star > 0:
		msg = f"h_star must be positive, got {h_star}"
		raise ValidationError(msg)
	return 2.0 * (1.0 + epsilon) / h_star * math.log(num_genomes * genome_length)


def lower_threshold_constant(f_star: float, f_lower: float) -> float:
	"""Return C = min(1/f_star, 1/(2 f_star - f_lower))."""
	if not (0 < f_lower <= f_star < math.inf):
		msg = f"need 0 < f_lower <= f_star < inf, got f_lower={f_lower}, f_star={f_star}"
		raise ValidationError(msg)
	return min(1.0 / f_star, 1.0 / (2.0 * f_star - f_lower))


def lower_threshold(
	num_genomes: int,
	genome_length: int,
	f_star: float,
	f_lower: float,
	epsilon: float = 0.0,
) -> float:
	"""Return C (1 - epsilon) log(M N)."""
	_check_counts(num_genomes, genome_length)
	_check_epsilon(epsilon)
	constant = lower_threshold_constant(f_star, f_lower)
	return constant * (1.0 - epsilon) * math.log(num_genomes * genome_length)


def max_genomes_upper(read_length: int, genome_length: int, h_star: float) -> float:
	"""Return e^{L h_star / 2} / N (inf past the float range)."""
	if read_length < 0 or genome_length < 1 or not h_star > 0:
		msg = (
			f"need L >= 0, N >= 1, h_star > 0, got L={read_length}, "
			f"N={genome_length}, h_star={h_star}"
		)
		raise ValidationError(msg)
	return _scaled_exp(read_length * h_star / 2.0, genome_length)


def min_genomes_lower(read_length: int, genome_length: int, constant: float) -> float:
	"""Return e^{L / C} / N (inf past the float range)."""
	if read_length < 0 or genome_length < 1 or not constant > 0:
		msg = (
			f"need L >= 0, N >= 1, C > 0, got L={read_length}, "
			f"N={genome_length}, C={constant}"
		)
		raise ValidationError(msg)
	return _scaled_exp(read_length / constant, genome_length)
