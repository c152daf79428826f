"""Read multisets R(X).

This module provides:
- ReadMultiset: immutable map from L-length reads to positive counts
- extract_reads: function to collect all L-reads of a Sample with multiplicity
- multiset_equal: function comparing two read multisets
"""

import multiprocessing
from collections import Counter
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from types import MappingProxyType

from models import Sample
from utils.exceptions import ValidationError


@dataclass(frozen=True)
class ReadMultiset:
	"""Reads of one length with their counts; `total` is the sum of the counts."""

	read_length: int
	counts: Mapping[str, int]
	total: int

	def __post_init__(self) -> None:
		"""Validates keys and counts and freezes the mapping."""
		if self.read_length < 1:
			msg = f"read length must be >= 1, got {self.read_length}"
			raise ValidationError(msg)
		for read, count in self.counts.items():
			if len(read) != self.read_length:
				msg = f"read {read!r} does not have length {self.read_length}"
				raise ValidationError(msg)
			if count < 1:
				msg = f"read {read!r} has nonpositive count {count}"
				raise ValidationError(msg)
		if sum(self.counts.values()) != self.total:
			msg = f"total {self.total} does not equal the sum of counts"
			raise ValidationError(msg)
		object.__setattr__(self, "counts", MappingProxyType(dict(self.counts)))

	@classmethod
	def from_counts(cls, read_length: int, counts: Mapping[str, int]) -> "ReadMultiset":
		"""Build from a count map, computing the total."""
		return cls(read_length, dict(counts), sum(counts.values()))

	@classmethod
	def from_reads(cls, read_length: int, reads: Iterable[str]) -> "ReadMultiset":
		"""Build from a flat iterable of reads."""
		return cls.from_counts(read_length, Counter(reads))

	def __reduce__(self) -> tuple[type["ReadMultiset"], tuple[int, dict[str, int], int]]:
		"""Pickles through a plain dict (mapping proxies are not picklable)."""
		return (type(self), (self.read_length, dict(self.counts), self.total))

	def __contains__(self, read: object) -> bool:
		"""True iff `read` occurs at least once."""
		return read in self.counts

	def __iter__(self) -> Iterator[str]:
		"""Distinct reads in insertion order."""
		return iter(self.counts)

	@property
	def distinct(self) -> int:
		"""Number of distinct reads."""
		return len(self.counts)

	def count(self, read: str) -> int:
		"""Multiplicity of `read` (0 if absent)."""
		return self.counts.get(read, 0)


def _genome_reads(genome: str, read_length: int) -> Counter[str]:
	return Counter(
		genome[i : i + read_length] for i in range(len(genome) - read_length + 1)
	)


def extract_reads(sample: Sample, read_length: int, workers: int = 1) -> ReadMultiset:
	"""Return R(X): every L-window of every genome, with multiplicity.

	With workers > 1 genomes are counted in a process pool and the per-genome
	counters merged; the result does not depend on the partitioning.
	"""
	if not 1 <= read_length <= sample.genome_length:
		msg = f"need 1 <= L <= N, got L={read_length}, N={sample.genome_length}"
		raise ValidationError(msg)
	counts: Counter[str] = Counter()
	if workers > 1 and sample.num_genomes > 1:
		tasks = [(genome, read_length) for genome in sample.genomes]
		with multiprocessing.Pool(min(workers, sample.num_genomes)) as pool:
			for partial in pool.starmap(_genome_reads, tasks):
				counts.update(partial)
	else:
		for genome in sample.genomes:
			counts.update(_genome_reads(genome, read_length))
	return ReadMultiset.from_counts(read_length, counts)


def multiset_equal(first: ReadMultiset, second: ReadMultiset) -> bool:
	"""True iff both read length and count maps agree."""
	if first.read_length != second.read_length:
		return False
	return dict(first.counts) == dict(second.counts)
