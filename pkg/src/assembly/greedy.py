"""Greedy overlap assembly of a read multiset into M genomes of length N.

This module provides:
- Contig: an assembled string with its multiplicity
- AssemblyResult: the final contigs and whether assembly completed
- greedy_assemble: function merging contigs by maximal suffix-prefix overlap
"""

import logging
from collections import Counter
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from models import Alphabet, Sample
from reads import ReadMultiset
from utils.common import make_generator
from utils.constants import Stream
from utils.exceptions import ValidationError

from .overlap import max_overlap

logger = logging.getLogger(__name__)

# Invalid draws in a row before a bucket level is enumerated exhaustively.
_MAX_REJECTIONS = 32
# Keys are drawn by rejection while max weight * keys <= this * total weight.
_DENSE_FACTOR = 4

PairCheck = Callable[[int, int], bool]


@dataclass(frozen=True, order=True)
class Contig:
	"""An assembled string and the number of identical copies of it."""

	text: str
	multiplicity: int = 1

	def __post_init__(self) -> None:
		"""Checks the text and multiplicity."""
		if not self.text:
			msg = "contig text must be nonempty"
			raise ValidationError(msg)
		if self.multiplicity < 1:
			msg = f"contig multiplicity must be >= 1, got {self.multiplicity}"
			raise ValidationError(msg)


@dataclass(frozen=True)
class AssemblyResult:
	"""Contigs sorted by text; `complete` iff they are exactly M strings of length N."""

	contigs: tuple[Contig, ...]
	complete: bool

	@property
	def genomes(self) -> tuple[str, ...]:
		"""Contig texts repeated by multiplicity, in sorted order."""
		return tuple(c.text for c in self.contigs for _ in range(c.multiplicity))

	def as_sample(self, alphabet: Alphabet) -> Sample:
		"""The assembled genomes as a Sample; only complete results qualify."""
		if not self.complete:
			msg = "an incomplete assembly is not a sample"
			raise ValidationError(msg)
		return Sample(self.genomes, alphabet)

	def recovers(self, sample: Sample) -> bool:
		"""True iff assembly completed with exactly the genome multiset of `sample`."""
		return self.complete and self.genomes == sample.canonical()


class _OverlapIndex:
	"""Active contigs bucketed by their `level`-prefix and `level`-suffix.

	A key shared by both tables yields |suffixes[key]| * |prefixes[key]|
	candidate (left, right) pairs; that product is the key's weight.
	"""

	def __init__(self, level: int) -> None:
		self.level = level
		self.prefixes: dict[str, list[int]] = {}
		self.suffixes: dict[str, list[int]] = {}
		self.shared: list[str] = []
		self._slots: dict[str, int] = {}
		self._weights: dict[str, int] = {}
		self._histogram: Counter[int] = Counter()
		self._total = 0

	def _ends(self, text: str) -> tuple[str, str]:
		return text[: self.level], text[len(text) - self.level :]

	def add(self, contig: int, text: str) -> None:
		prefix, suffix = self._ends(text)
		self.prefixes.setdefault(prefix, []).append(contig)
		self.suffixes.setdefault(suffix, []).append(contig)
		self._reweigh(prefix)
		if suffix != prefix:
			self._reweigh(suffix)

	def remove(self, contig: int, text: str) -> None:
		prefix, suffix = self._ends(text)
		for table, key in ((self.prefixes, prefix), (self.suffixes, suffix)):
			members = table[key]
			members.remove(contig)
			if not members:
				del table[key]
		self._reweigh(prefix)
		if suffix != prefix:
			self._reweigh(suffix)

	def _reweigh(self, key: str) -> None:
		weight = len(self.prefixes.get(key, ())) * len(self.suffixes.get(key, ()))
		old = self._weights.pop(key, 0)
		if old:
			self._histogram[old] -= 1
			if not self._histogram[old]:
				del self._histogram[old]
		if weight:
			self._weights[key] = weight
			self._histogram[weight] += 1
		self._total += weight - old

		if weight and key not in self._slots:
			self._slots[key] = len(self.shared)
			self.shared.append(key)
		elif not weight and key in self._slots:
			slot = self._slots.pop(key)
			last = self.shared.pop()
			if last != key:
				self.shared[slot] = last
				self._slots[last] = slot

	def _pick_key(self, rng: np.random.Generator) -> str:
		"""A shared key with probability proportional to its weight."""
		top = max(self._histogram)
		if top * len(self.shared) <= _DENSE_FACTOR * self._total:
			while True:
				key = self.shared[int(rng.integers(len(self.shared)))]
				if rng.random() * top < self._weights[key]:
					return key
		weights = np.fromiter(
			(self._weights[key] for key in self.shared),
			dtype=np.int64,
			count=len(self.shared),
		)
		cumulative = np.cumsum(weights)
		target = rng.integers(int(cumulative[-1]))
		return self.shared[int(np.searchsorted(cumulative, target, side="right"))]

	def draw(self, rng: np.random.Generator, valid: PairCheck) -> tuple[int, int] | None:
		"""A uniformly random valid (left, right) pair, or None if there is none."""
		if not self.shared:
			return None
		for _ in range(_MAX_REJECTIONS):
			key = self._pick_key(rng)
			lefts, rights = self.suffixes[key], self.prefixes[key]
			left = lefts[int(rng.integers(len(lefts)))]
			right = rights[int(rng.integers(len(rights)))]
			if valid(left, right):
				return left, right

		pairs = [
			(left, right)
			for key in self.shared
			for left in self.suffixes[key]
			for right in self.prefixes[key]
			if valid(left, right)
		]
		logger.debug(
			"overlap %d: %d valid pairs after exhaustive scan", self.level, len(pairs)
		)
		if not pairs:
			return None
		return pairs[int(rng.integers(len(pairs)))]


class _GreedyAssembler:
	"""Mutable merge state of one assembly run."""

	def __init__(
		self,
		reads: ReadMultiset,
		num_genomes: int,
		genome_length: int,
		rng: np.random.Generator,
	) -> None:
		self.num_genomes = num_genomes
		self.genome_length = genome_length
		self.rng = rng
		self.texts: dict[int, str] = {}
		self.multiplicities: dict[int, int] = {}
		self.ids: dict[str, int] = {}
		self.retired: Counter[str] = Counter()
		self.top = _OverlapIndex(max(reads.read_length - 1, 0))
		self.merges = 0
		self.short_merges = 0
		self._next_id = 0
		for read in sorted(reads):
			self._add(read, reads.count(read))

	@property
	def retired_count(self) -> int:
		return self.retired.total()

	def _add(self, text: str, count: int = 1) -> None:
		if len(text) == self.genome_length:
			self.retired[text] += count
			return
		contig = self.ids.get(text)
		if contig is not None:
			self.multiplicities[contig] += count
			return
		contig = self._next_id
		self._next_id += 1
		self.texts[contig] = text
		self.multiplicities[contig] = count
		self.ids[text] = contig
		self.top.add(contig, text)

	def _release(self, contig: int) -> None:
		self.multiplicities[contig] -= 1
		if self.multiplicities[contig]:
			return
		text = self.texts.pop(contig)
		del self.multiplicities[contig]
		del self.ids[text]
		self.top.remove(contig, text)

	def _mergeable(self, level: int) -> PairCheck:
		def check(left: int, right: int) -> bool:
			if left == right and self.multiplicities[left] < 2:  # noqa: PLR2004
				return False
			merged = len(self.texts[left]) + len(self.texts[right]) - level
			return merged <= self.genome_length

		return check

	def _next_merge(self) -> tuple[int, int, int] | None:
		"""(left, right, overlap) at the highest level holding a valid pair."""
		pair = self.top.draw(self.rng, self._mergeable(self.top.level))
		if pair is not None:
			return *pair, self.top.level
		for level in range(self.top.level - 1, -1, -1):
			index = _OverlapIndex(level)
			for contig, text in self.texts.items():
				index.add(contig, text)
			pair = index.draw(self.rng, self._mergeable(level))
			if pair is not None:
				return *pair, level
		return None

	def _merge(self, left: int, right: int, level: int) -> None:
		first, second = self.texts[left], self.texts[right]
		overlap = max_overlap(first, second, cap=level)
		self._release(left)
		self._release(right)
		self._add(first + second[overlap:])
		self.merges += 1
		if level < self.top.level:
			self.short_merges += 1

	def run(self) -> AssemblyResult:
		while self.retired_count < self.num_genomes:
			step = self._next_merge()
			if step is None:
				break
			self._merge(*step)

		complete = self.retired_count == self.num_genomes and not self.texts
		final = Counter(self.retired)
		for contig, text in self.texts.items():
			final[text] += self.multiplicities[contig]
		logger.debug(
			"%d merges (%d below overlap %d), %d of %d genomes retired, complete=%s",
			self.merges,
			self.short_merges,
			self.top.level,
			self.retired_count,
			self.num_genomes,
			complete,
		)
		contigs = tuple(Contig(text, final[text]) for text in sorted(final))
		return AssemblyResult(contigs=contigs, complete=complete)


def greedy_assemble(
	reads: ReadMultiset, num_genomes: int, genome_length: int, seed: int
) -> AssemblyResult:
	"""Assemble `reads` into `num_genomes` genomes of length `genome_length`.

	Contigs start as the distinct reads. Each step merges a pair of active
	contigs at the largest admissible suffix-prefix overlap (at most L - 1,
	down to 0), choosing uniformly among the tied pairs with the ASSEMBLY
	stream of `seed`. A merge may not exceed length N; a contig that reaches
	N is retired. Assembly stops once M contigs are retired or no pair can be
	merged.

	Args:
		reads: the read multiset R(X).
		num_genomes: M.
		genome_length: N.
		seed: tie-break seed; the result is a function of all four arguments.
	"""
	read_length = reads.read_length
	if num_genomes < 1 or not 1 <= read_length <= genome_length:
		msg = (
			f"need M >= 1 and L <= N, got M={num_genomes}, "
			f"L={read_length}, N={genome_length}"
		)
		raise ValidationError(msg)
	expected = num_genomes * (genome_length - read_length + 1)
	if reads.total != expected:
		msg = f"read total {reads.total} != M(N - L + 1) = {expected}"
		raise ValidationError(msg)

	rng = make_generator(seed, Stream.ASSEMBLY)
	return _GreedyAssembler(reads, num_genomes, genome_length, rng).run()
