"""Repeated windows (the S events).

This module provides:
- RepeatWitness: a pair of distinct positions carrying equal windows
- find_repeats: function listing repeats in canonical order, via WindowIndex
- all_segments_distinct: function testing that a sample has no repeat
- write_witnesses: function writing witnesses in the dump format
"""

from collections.abc import Iterable
from dataclasses import dataclass
from typing import Protocol

import numpy as np
import numpy.typing as npt

from models import Sample
from utils.common import TextSource, open_text_output
from utils.exceptions import ValidationError

from .index import WindowIndex


@dataclass(frozen=True, order=True)
class RepeatWitness:
	"""Windows of length `length` at (m, i) and (m2, i2) are equal.

	Genome indices and positions are 1-based; (m, i) < (m2, i2).
	"""

	m: int
	i: int
	m2: int
	i2: int
	length: int
	overlapping: bool

	def __post_init__(self) -> None:
		"""Checks ordering and the overlap classification."""
		if (self.m, self.i) >= (self.m2, self.i2):
			msg = (
				f"repeat positions out of order: "
				f"{(self.m, self.i)}, {(self.m2, self.i2)}"
			)
			raise ValidationError(msg)
		if self.overlapping != _overlaps(self.m, self.i, self.m2, self.i2, self.length):
			msg = "overlapping flag disagrees with the positions"
			raise ValidationError(msg)

	@classmethod
	def between(cls, m: int, i: int, m2: int, i2: int, length: int) -> "RepeatWitness":
		"""Witness with the overlap flag derived from the positions."""
		return cls(m, i, m2, i2, length, _overlaps(m, i, m2, i2, length))

	def verify(self, sample: Sample) -> bool:
		"""True iff both windows lie inside their genomes and are equal."""
		last = sample.genome_length - self.length + 1
		for genome, position in ((self.m, self.i), (self.m2, self.i2)):
			if not (1 <= genome <= sample.num_genomes and 1 <= position <= last):
				return False
		first = sample.genomes[self.m - 1][self.i - 1 : self.i - 1 + self.length]
		second = sample.genomes[self.m2 - 1][self.i2 - 1 : self.i2 - 1 + self.length]
		return first == second

	def format_line(self) -> str:
		"""Dump line `S m i m2 i2 len ovl`."""
		fields = (self.m, self.i, self.m2, self.i2, self.length, int(self.overlapping))
		return "S " + " ".join(map(str, fields))


def _overlaps(m: int, i: int, m2: int, i2: int, length: int) -> bool:
	return m == m2 and abs(i - i2) <= length - 1


class _Dumpable(Protocol):
	def format_line(self) -> str: ...


def find_repeats(
	sample: Sample, length: int, limit: int | None = None
) -> list[RepeatWitness]:
	"""All (or the first `limit`) repeats of `length`, ordered by (m, i, m2, i2)."""
	if limit is not None and limit < 0:
		msg = f"limit must be >= 0, got {limit}"
		raise ValidationError(msg)
	index = WindowIndex(sample, length)
	witnesses: list[RepeatWitness] = []
	if limit == 0:
		return witnesses

	# each window points at the later windows equal to it
	later: dict[int, npt.NDArray[np.intp]] = {}
	for members in index.groups():
		for rank in range(len(members) - 1):
			later[int(members[rank])] = members[rank + 1 :]

	for first in sorted(later):
		genome, position = index.locate(first)
		for second in later[first].tolist():
			genome2, position2 = index.locate(second)
			witnesses.append(
				RepeatWitness.between(
					genome + 1, position + 1, genome2 + 1, position2 + 1, length
				)
			)
			if limit is not None and len(witnesses) >= limit:
				return witnesses
	return witnesses


def all_segments_distinct(sample: Sample, length: int) -> bool:
	"""True iff no two windows of `length` are equal."""
	return not WindowIndex(sample, length).has_repeat()


def write_witnesses(witnesses: Iterable[_Dumpable], destination: TextSource) -> None:
	"""Write one dump line per witness."""
	with open_text_output(destination) as stream:
		for witness in witnesses:
			stream.write(f"{witness.format_line()}\n")
