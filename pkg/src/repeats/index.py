"""Hash index over the fixed-length windows of a sample.

This module provides:
- WindowIndex: per-window keys of a Sample and the groups of equal windows
"""

from collections import defaultdict
from collections.abc import Iterator

import numpy as np
import numpy.typing as npt

from models import Sample
from utils.exceptions import ValidationError

_WORD_BITS = 64
_HASH_BASE = 0x9E3779B97F4A7C15  # odd, so invertible modulo 2^64
_HASH_MODULUS = 2**64
_MIN_GROUP = 2

WindowKeys = npt.NDArray[np.uint64]


def _packed_keys(codes: npt.NDArray[np.uint8], length: int, bits: int) -> WindowKeys:
	"""Exact keys: the window's symbol codes packed `bits` apiece into one word."""
	windows = codes.shape[1] - length + 1
	shift = np.uint64(bits)
	keys = np.zeros((codes.shape[0], windows), dtype=np.uint64)
	for offset in range(length):
		keys = (keys << shift) | codes[:, offset : offset + windows].astype(np.uint64)
	return keys


def _rolling_keys(codes: npt.NDArray[np.uint8], length: int) -> WindowKeys:
	"""Polynomial rolling hash modulo 2^64 via prefix differences.

	With S[i] = sum_{t<i} c[t] B^{-t}, the window at i hashes to
	B^{i+length-1} (S[i+length] - S[i]) = sum_t c[t] B^{i+length-1-t}.
	"""
	genome_length = codes.shape[1]
	windows = genome_length - length + 1
	base = np.full(genome_length, _HASH_BASE, dtype=np.uint64)
	inverse = np.full(genome_length, pow(_HASH_BASE, -1, _HASH_MODULUS), dtype=np.uint64)
	powers = np.ones(genome_length + 1, dtype=np.uint64)
	powers[1:] = np.cumprod(base, dtype=np.uint64)
	inverse_powers = np.ones(genome_length + 1, dtype=np.uint64)
	inverse_powers[1:] = np.cumprod(inverse, dtype=np.uint64)

	# +1 keeps symbol 0 from hashing like an absent symbol
	weighted = (codes.astype(np.uint64) + np.uint64(1)) * inverse_powers[:genome_length]
	prefix = np.zeros((codes.shape[0], genome_length + 1), dtype=np.uint64)
	prefix[:, 1:] = np.cumsum(weighted, axis=1, dtype=np.uint64)
	window_powers = powers[length - 1 : length - 1 + windows]
	return (prefix[:, length:] - prefix[:, :windows]) * window_powers


class WindowIndex:
	"""Keys for every length-`length` window of every genome.

	Keys are exact (packed codes) when length * bits_per_symbol fits in 64 bits;
	otherwise they are rolling hashes and equal keys are confirmed by comparing
	the windows themselves. Windows are addressed by a flat index
	genome * windows + position (both 0-based), so flat order is (m, i) order.
	"""

	def __init__(self, sample: Sample, length: int) -> None:
		"""Computes the window keys of `sample`."""
		if not 1 <= length <= sample.genome_length:
			msg = f"need 1 <= length <= N, got length={length}, N={sample.genome_length}"
			raise ValidationError(msg)
		self.sample = sample
		self.length = length
		self.windows = sample.genome_length - length + 1
		bits = sample.alphabet.bits_per_symbol
		self.exact = length * bits <= _WORD_BITS
		codes = sample.codes()
		self.keys: WindowKeys = (
			_packed_keys(codes, length, bits)
			if self.exact
			else _rolling_keys(codes, length)
		)

	def locate(self, flat: int) -> tuple[int, int]:
		"""0-based (genome, position) of a flat window index."""
		return divmod(flat, self.windows)

	def window(self, genome: int, position: int) -> str:
		"""Text of the window at 0-based (genome, position)."""
		return self.sample.genomes[genome][position : position + self.length]

	def same_window(self, genome: int, other: int, position: int) -> bool:
		"""True iff two genomes carry equal windows at one 0-based position."""
		if self.keys[genome, position] != self.keys[other, position]:
			return False
		return self.exact or self.window(genome, position) == self.window(other, position)

	def groups(self) -> Iterator[npt.NDArray[np.intp]]:
		"""Yield each set of >= 2 equal windows as ascending flat indices."""
		flat = self.keys.ravel()
		order = np.argsort(flat, kind="stable")
		ordered = flat[order]
		boundaries = np.flatnonzero(ordered[1:] != ordered[:-1]) + 1
		starts = np.concatenate(([0], boundaries))
		ends = np.concatenate((boundaries, [flat.size]))
		repeated = (ends - starts) >= _MIN_GROUP
		for start, end in zip(starts[repeated], ends[repeated], strict=True):
			members = order[start:end]
			if self.exact:
				yield members
				continue
			buckets: defaultdict[str, list[int]] = defaultdict(list)
			for member in members.tolist():
				buckets[self.window(*self.locate(member))].append(member)
			for bucket in buckets.values():
				if len(bucket) >= _MIN_GROUP:
					yield np.asarray(bucket, dtype=np.intp)

	def has_repeat(self) -> bool:
		"""True iff two distinct windows are equal."""
		if self.exact:
			return int(np.unique(self.keys).size) < self.keys.size
		return next(self.groups(), None) is not None
