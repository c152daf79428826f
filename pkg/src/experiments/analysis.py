"""Analytic side of the experiments: the exact E[Z] and the bounds report.

This module provides:
- analytic_expectation_z: function computing the exact expectation of Z
- threshold_pair: the upper and lower read-length thresholds of a problem
- BoundsReport: thresholds, event bounds and moment bounds of one problem
- theorem_bounds_report: function assembling a BoundsReport
"""

import math
from dataclasses import dataclass

from models import (
	ProblemSpec,
	entropy_bounds,
	lower_threshold,
	lower_threshold_constant,
	max_genomes_upper,
	min_genomes_lower,
	upper_threshold,
)
from repeats import (
	default_eta,
	exclusion_bound,
	nonoverlap_repeat_bound,
	overlap_repeat_bound,
	position_range,
	repeat_probability,
	t_event_bound,
)
from utils.exceptions import ValidationError


def analytic_expectation_z(
	spec: ProblemSpec, read_length: int, eta: float | None = None
) -> float:
	"""Return sum over m < m' of |j range| * e^{-L F(p^m, p^m')}."""
	if not 1 <= read_length <= spec.genome_length:
		msg = f"need 1 <= L <= N, got L={read_length}, N={spec.genome_length}"
		raise ValidationError(msg)
	eta = default_eta(read_length, spec.genome_length) if eta is None else eta
	positions = len(position_range(spec.genome_length, read_length, eta))
	if not positions:
		return 0.0
	dists = spec.dists
	return positions * math.fsum(
		repeat_probability(dists[m], dists[m2], read_length)
		for m in range(len(dists))
		for m2 in range(m + 1, len(dists))
	)


@dataclass(frozen=True)
class BoundsReport:
	"""Closed-form quantities of a problem at one read length.

	Fields that need a positive h_star (the upper threshold and the maximum
	genome count) are None when some distribution is a point mass. Fields that
	need a finite, positive F (the lower threshold and the minimum genome
	count) are None when F vanishes or the distributions have disjoint supports.
	`exclusion_bound` is None when the Z position range is empty.
	"""

	num_genomes: int
	genome_length: int
	read_length: int
	eta: float
	epsilon: float
	h_star: float
	f_lower: float
	f_star: float
	upper_threshold: float | None
	lower_threshold: float | None
	max_genomes_upper: float | None
	min_genomes_lower: float | None
	overlap_bound: float
	nonoverlap_bound: float
	theorem_one_bound: float
	t_event_bound: float
	exclusion_bound: float | None
	union_bound: float
	expected_z: float
	expected_z_lower: float

	@property
	def nonidentifiability_bound(self) -> float:
		"""Overlapping plus non-overlapping repeat bounds."""
		return self.overlap_bound + self.nonoverlap_bound

	def items(self) -> list[tuple[str, float | None]]:
		"""(name, value) pairs in report order."""
		names = [
			"upper_threshold",
			"lower_threshold",
			"max_genomes_upper",
			"min_genomes_lower",
			"overlap_bound",
			"nonoverlap_bound",
			"nonidentifiability_bound",
			"theorem_one_bound",
			"t_event_bound",
			"exclusion_bound",
			"union_bound",
			"expected_z",
			"expected_z_lower",
		]
		return [(name, getattr(self, name)) for name in names]


def _decay(count: float, rate: float) -> float:
	return 1.0 if count == 0 else math.exp(-count * rate)


def _has_lower_threshold(f_lower: float, f_star: float) -> bool:
	return 0 < f_lower <= f_star < math.inf


def threshold_pair(
	spec: ProblemSpec, epsilon: float = 0.0
) -> tuple[float | None, float | None]:
	"""Return (upper, lower) read-length thresholds of `spec`.

	Either is None when its entropy constant makes it undefined: the upper one
	when h_star = 0, the lower one when F is zero or infinite.
	"""
	bounds = entropy_bounds(spec.dists)
	num_genomes, genome_length = spec.num_genomes, spec.genome_length
	upper = None
	if bounds.h_star > 0:
		upper = upper_threshold(num_genomes, genome_length, bounds.h_star, epsilon)
	lower = None
	if _has_lower_threshold(bounds.f_lower, bounds.f_star):
		lower = lower_threshold(
			num_genomes, genome_length, bounds.f_star, bounds.f_lower, epsilon
		)
	return upper, lower


def theorem_bounds_report(
	spec: ProblemSpec,
	read_length: int,
	eta: float | None = None,
	epsilon: float = 0.0,
) -> BoundsReport:
	"""Collect every closed-form bound of `spec` at read length L.

	Args:
		spec: the problem (M, N and the distributions; its own L is ignored).
		read_length: L.
		eta: margin for the Z range; the default rule when None.
		epsilon: slack of both thresholds.
	"""
	num_genomes, genome_length = spec.num_genomes, spec.genome_length
	if not 1 <= read_length <= genome_length:
		msg = f"need 1 <= L <= N, got L={read_length}, N={genome_length}"
		raise ValidationError(msg)
	eta = default_eta(read_length, genome_length) if eta is None else eta
	bounds = entropy_bounds(spec.dists)
	h_star, f_lower, f_star = bounds.h_star, bounds.f_lower, bounds.f_star
	pairs = num_genomes**2 * genome_length**2

	upper, lower = threshold_pair(spec, epsilon)
	maximum_genomes: float | None = None
	if h_star > 0:
		maximum_genomes = max_genomes_upper(read_length, genome_length, h_star)
	minimum_genomes: float | None = None
	if _has_lower_threshold(f_lower, f_star):
		constant = lower_threshold_constant(f_star, f_lower)
		minimum_genomes = min_genomes_lower(read_length, genome_length, constant)

	positions = position_range(genome_length, read_length, eta)
	worst_exclusion: float | None = None
	if positions:
		worst_exclusion = max(
			exclusion_bound(genome_length, read_length, j, num_genomes, f_lower, h_star)
			for j in (positions[0], positions[-1])
		)

	delta = read_length / genome_length
	c3 = (1.0 - delta - 2.0 * eta) / 2.0
	# C1 = e^{h_star/2} and C2 = e^{f_lower}/4 folded into the exponents
	theorem_one = num_genomes * genome_length * read_length * _decay(
		read_length - 1, h_star / 2.0
	) + pairs / 4.0 * _decay(read_length - 1, f_lower)
	union = num_genomes**2 * (
		_decay(eta * genome_length, f_lower)
		+ _decay((1.0 - delta - eta) * genome_length, f_lower)
	) + num_genomes**4 * t_event_bound(genome_length, h_star)

	return BoundsReport(
		num_genomes=num_genomes,
		genome_length=genome_length,
		read_length=read_length,
		eta=eta,
		epsilon=epsilon,
		h_star=h_star,
		f_lower=f_lower,
		f_star=f_star,
		upper_threshold=upper,
		lower_threshold=lower,
		max_genomes_upper=maximum_genomes,
		min_genomes_lower=minimum_genomes,
		overlap_bound=overlap_repeat_bound(
			num_genomes, genome_length, read_length, h_star
		),
		nonoverlap_bound=nonoverlap_repeat_bound(
			num_genomes, genome_length, read_length, f_lower
		),
		theorem_one_bound=theorem_one,
		t_event_bound=t_event_bound(genome_length, h_star),
		exclusion_bound=worst_exclusion,
		union_bound=union,
		expected_z=analytic_expectation_z(spec, read_length, eta),
		expected_z_lower=c3
		* num_genomes**2
		* genome_length
		* _decay(read_length, f_star),
	)
