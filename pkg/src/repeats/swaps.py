"""Same-position repeats (B events), four-genome T events and swap witnesses.

Genome indices and positions in this module's public API are 1-based.

This module provides:
- SwapWitness: genomes m, m2 sharing the L-window w at position j
- default_eta: the default boundary margin eta for (L, N)
- position_range: the j range of the Z statistic
- swap_range: the j range admissible for a swap witness
- is_t_event: function testing the awb/cwd/awd/cwb configuration
- t_event_exists: function testing whether any (m3, m4) completes a T event
- find_swap_witness: function returning the first verified swap witness
- count_b_events: function computing the Z statistic
"""

from dataclasses import dataclass

import numpy as np

from models import Sample
from utils.common import ceil_tol, floor_tol
from utils.exceptions import ValidationError

from .index import WindowIndex

_MAX_ETA = 0.5
_T_EVENT_GENOMES = 4
_FIRST_J = 2


@dataclass(frozen=True, order=True)
class SwapWitness:
	"""X^m = a w b and X^m2 = c w d with |a| = |c| = j - 1, |w| = L, a != c, b != d."""

	m: int
	m2: int
	j: int
	w: str

	def __post_init__(self) -> None:
		"""Checks the index relations that do not need the sample."""
		if self.m == self.m2 or min(self.m, self.m2) < 1:
			msg = f"swap needs two distinct genomes, got m={self.m}, m2={self.m2}"
			raise ValidationError(msg)
		if self.j < _FIRST_J or not self.w:
			msg = f"swap needs j >= 2 and a nonempty word, got j={self.j}"
			raise ValidationError(msg)

	@property
	def read_length(self) -> int:
		"""L, the length of the shared word."""
		return len(self.w)

	def parts(self, sample: Sample) -> tuple[str, str, str, str]:
		"""Return (a, b, c, d) of the two genomes around the shared word."""
		start, end = self.j - 1, self.j - 1 + self.read_length
		first, second = sample.genomes[self.m - 1], sample.genomes[self.m2 - 1]
		return first[:start], first[end:], second[:start], second[end:]

	def matches(self, sample: Sample) -> bool:
		"""True iff both genomes exist and carry w at position j."""
		upper = sample.genome_length - self.read_length
		if max(self.m, self.m2) > sample.num_genomes:
			return False
		if not _FIRST_J <= self.j <= upper:
			return False
		start, end = self.j - 1, self.j - 1 + self.read_length
		return (
			sample.genomes[self.m - 1][start:end] == self.w
			and sample.genomes[self.m2 - 1][start:end] == self.w
		)

	def verify(self, sample: Sample) -> bool:
		"""Re-check every invariant of the type against `sample`."""
		if not self.matches(sample):
			return False
		a, b, c, d = self.parts(sample)
		return a != c and b != d

	def format_line(self) -> str:
		"""Dump line `SWAP m m2 j w`."""
		return f"SWAP {self.m} {self.m2} {self.j} {self.w}"


def default_eta(read_length: int, genome_length: int) -> float:
	"""Return min(delta/2, (1 - delta)/2)/2 with delta = L/N."""
	delta = read_length / genome_length
	return min(delta / 2.0, (1.0 - delta) / 2.0) / 2.0


def _check_eta(eta: float) -> None:
	if not 0 <= eta < _MAX_ETA:
		msg = f"eta must lie in [0, 1/2), got {eta}"
		raise ValidationError(msg)


def position_range(genome_length: int, read_length: int, eta: float) -> range:
	"""Positions j with ceil(eta N) <= j <= floor((1 - eta) N) - L that start a window."""
	_check_eta(eta)
	low = max(1, ceil_tol(eta * genome_length))
	last_start = genome_length - read_length + 1
	high = min(last_start, floor_tol((1 - eta) * genome_length) - read_length)
	return range(low, max(low, high + 1))


def swap_range(genome_length: int, read_length: int, eta: float) -> range:
	"""The position range further restricted to 2 <= j <= N - L."""
	window = position_range(genome_length, read_length, eta)
	low = max(_FIRST_J, window.start)
	high = min(genome_length - read_length, window.stop - 1)
	return range(low, max(low, high + 1))


def _check_genome(sample: Sample, genome: int) -> None:
	if not 1 <= genome <= sample.num_genomes:
		msg = f"genome index {genome} outside 1..{sample.num_genomes}"
		raise ValidationError(msg)


def is_t_event(  # noqa: PLR0913
	sample: Sample, j: int, m1: int, m2: int, m3: int, m4: int, read_length: int
) -> bool:
	"""True iff X^m1 = awb, X^m2 = cwd, X^m3 = awd and X^m4 = cwb with |a| = j - 1."""
	genomes = (m1, m2, m3, m4)
	if len(set(genomes)) != _T_EVENT_GENOMES:
		msg = f"T event needs four distinct genomes, got {genomes}"
		raise ValidationError(msg)
	for genome in genomes:
		_check_genome(sample, genome)
	if read_length < 1 or not _FIRST_J <= j <= sample.genome_length - read_length:
		msg = (
			f"need 2 <= j <= N - L, got j={j}, L={read_length}, "
			f"N={sample.genome_length}"
		)
		raise ValidationError(msg)

	cut = j - 1 + read_length
	x1, x2, x3, x4 = (sample.genomes[g - 1] for g in genomes)
	word = x1[j - 1 : cut]
	return (
		x2[j - 1 : cut] == word
		and x3[:cut] == x1[:cut]
		and x4[:cut] == x2[:cut]
		and x4[cut:] == x1[cut:]
		and x3[cut:] == x2[cut:]
	)


def t_event_exists(sample: Sample, j: int, m: int, m2: int, read_length: int) -> bool:
	"""True iff some pair (m3, m4) of other genomes makes T_j(m, m2, m3, m4) occur.

	Only genomes whose (j + L - 1)-prefix equals that of X^m (for m3) or X^m2
	(for m4) are paired up.
	"""
	cut = j - 1 + read_length
	head, head2 = sample.genomes[m - 1][:cut], sample.genomes[m2 - 1][:cut]
	others = [g for g in range(1, sample.num_genomes + 1) if g not in (m, m2)]
	thirds = [g for g in others if sample.genomes[g - 1][:cut] == head]
	fourths = [g for g in others if sample.genomes[g - 1][:cut] == head2]
	return any(
		is_t_event(sample, j, m, m2, m3, m4, read_length)
		for m3 in thirds
		for m4 in fourths
		if m3 != m4
	)


def _check_swap_arguments(sample: Sample, read_length: int, eta: float) -> None:
	_check_eta(eta)
	if not 1 <= read_length <= sample.genome_length - 2:  # noqa: PLR2004
		msg = f"need 1 <= L <= N - 2, got L={read_length}, N={sample.genome_length}"
		raise ValidationError(msg)


def find_swap_witness(
	sample: Sample, read_length: int, eta: float | None = None
) -> SwapWitness | None:
	"""First verified swap witness in (m, m2, j) order, or None.

	A candidate is a B event (equal L-windows at one position j in the eta
	range) with a != c, b != d and no T event over any pair of other genomes.
	"""
	eta = default_eta(read_length, sample.genome_length) if eta is None else eta
	_check_swap_arguments(sample, read_length, eta)
	positions = swap_range(sample.genome_length, read_length, eta)
	if not positions:
		return None

	index = WindowIndex(sample, read_length)
	low, high = positions.start - 1, positions.stop - 1
	for m in range(sample.num_genomes):
		for m2 in range(m + 1, sample.num_genomes):
			hits = np.flatnonzero(index.keys[m, low:high] == index.keys[m2, low:high])
			for offset in hits.tolist():
				position = low + offset
				if not index.same_window(m, m2, position):
					continue
				witness = SwapWitness(
					m + 1, m2 + 1, position + 1, index.window(m, position)
				)
				if witness.verify(sample) and not t_event_exists(
					sample, witness.j, witness.m, witness.m2, read_length
				):
					return witness
	return None


def count_b_events(sample: Sample, read_length: int, eta: float | None = None) -> int:
	"""Return Z: pairs m < m2 and positions j in range with equal L-windows."""
	eta = default_eta(read_length, sample.genome_length) if eta is None else eta
	_check_swap_arguments(sample, read_length, eta)
	positions = position_range(sample.genome_length, read_length, eta)
	if not positions:
		return 0

	index = WindowIndex(sample, read_length)
	low, high = positions.start - 1, positions.stop - 1
	total = 0
	for m in range(sample.num_genomes):
		for m2 in range(m + 1, sample.num_genomes):
			hits = np.flatnonzero(index.keys[m, low:high] == index.keys[m2, low:high])
			if index.exact:
				total += int(hits.size)
			else:
				total += sum(index.same_window(m, m2, low + h) for h in hits.tolist())
	return total
