"""Metagenomics problems and genome samples.

This module provides:
- ProblemSpec: the tuple (M, N, L, P) defining a metagenomics problem
- Sample: a collection of M equal-length genomes over an alphabet
- sample_metagenome: function to draw a Sample with IID symbols per genome
"""

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from utils.common import make_generator
from utils.constants import DEFAULT_ALPHABET, Stream
from utils.exceptions import ValidationError

from .alphabet import Alphabet
from .distribution import Distribution


@dataclass(frozen=True)
class ProblemSpec:
	"""Number of genomes, genome length, read length and one distribution per genome."""

	num_genomes: int
	genome_length: int
	read_length: int
	dists: tuple[Distribution, ...]

	def __post_init__(self) -> None:
		"""Validates the parameter ranges and the distribution list."""
		if self.num_genomes < 1:
			msg = f"need at least one genome, got M={self.num_genomes}"
			raise ValidationError(msg)
		if not 1 <= self.read_length <= self.genome_length:
			msg = f"need 1 <= L <= N, got L={self.read_length}, N={self.genome_length}"
			raise ValidationError(msg)
		if len(self.dists) != self.num_genomes:
			msg = f"expected {self.num_genomes} distributions, got {len(self.dists)}"
			raise ValidationError(msg)
		if any(p.alphabet != self.dists[0].alphabet for p in self.dists):
			msg = "all distributions must share one alphabet"
			raise ValidationError(msg)

	@classmethod
	def uniform(
		cls,
		num_genomes: int,
		genome_length: int,
		read_length: int,
		alphabet: Alphabet | None = None,
	) -> "ProblemSpec":
		"""Problem with every genome uniform over `alphabet` (default ACGT)."""
		alphabet = alphabet or Alphabet.from_symbols(DEFAULT_ALPHABET)
		dist = Distribution.uniform(alphabet)
		return cls(num_genomes, genome_length, read_length, (dist,) * num_genomes)

	@property
	def alphabet(self) -> Alphabet:
		"""Alphabet shared by all distributions."""
		return self.dists[0].alphabet

	def with_read_length(self, read_length: int) -> "ProblemSpec":
		"""Same problem with a different read length."""
		return ProblemSpec(self.num_genomes, self.genome_length, read_length, self.dists)


@dataclass(frozen=True)
class Sample:
	"""Genomes X = (X^1, ..., X^M), all of length N, over `alphabet`."""

	genomes: tuple[str, ...]
	alphabet: Alphabet

	def __post_init__(self) -> None:
		"""Validates lengths and symbols."""
		if not self.genomes:
			msg = "a sample needs at least one genome"
			raise ValidationError(msg)
		length = len(self.genomes[0])
		if length < 1:
			msg = "genomes must be nonempty"
			raise ValidationError(msg)
		for index, genome in enumerate(self.genomes, start=1):
			if len(genome) != length:
				msg = f"genome {index} has length {len(genome)}, expected {length}"
				raise ValidationError(msg)
			if not self.alphabet.is_word(genome):
				msg = f"genome {index} has symbols outside alphabet {self.alphabet}"
				raise ValidationError(msg)

	@classmethod
	def from_strings(
		cls, genomes: Iterable[str], alphabet: Alphabet | str | None = None
	) -> "Sample":
		"""Build a sample, inferring the alphabet when none is given.

		The inferred alphabet is ACGT when every symbol is one of A, C, G, T, and
		otherwise the sorted distinct symbols of the genomes. A single foreign
		symbol is joined to ACGT, since an alphabet needs two symbols.
		"""
		genomes = tuple(genomes)
		if isinstance(alphabet, str):
			alphabet = Alphabet.from_symbols(alphabet)
		if alphabet is None:
			default = Alphabet.from_symbols(DEFAULT_ALPHABET)
			symbols = set("".join(genomes))
			if all(symbol in default for symbol in symbols):
				alphabet = default
			else:
				if len(symbols) == 1:
					symbols |= set(DEFAULT_ALPHABET)
				alphabet = Alphabet.from_symbols("".join(sorted(symbols)))
		return cls(genomes, alphabet)

	@property
	def num_genomes(self) -> int:
		"""M."""
		return len(self.genomes)

	@property
	def genome_length(self) -> int:
		"""N."""
		return len(self.genomes[0])

	def codes(self) -> npt.NDArray[np.uint8]:
		"""Symbol indices as an (M, N) array."""
		return np.stack([self.alphabet.encode(g) for g in self.genomes])

	def canonical(self) -> tuple[str, ...]:
		"""Sorted genome list, the representative of the permutation class [X]."""
		return tuple(sorted(self.genomes))

	def is_permutation_of(self, other: "Sample") -> bool:
		"""True iff `other` is in [self]."""
		return self.canonical() == other.canonical()

	def replace_genomes(self, genomes: Sequence[str]) -> "Sample":
		"""New sample over the same alphabet."""
		return Sample(tuple(genomes), self.alphabet)


def sample_metagenome(spec: ProblemSpec, seed: int) -> Sample:
	"""Draw each genome m with IID symbols from spec.dists[m].

	Genome m uses its own PCG64 stream, spawned from `seed` with key
	(GENERATION, m), so the output is a pure function of (spec, seed).
	"""
	alphabet = spec.alphabet
	genomes = []
	for index, dist in enumerate(spec.dists):
		rng = make_generator(seed, Stream.GENERATION, index)
		codes = rng.choice(alphabet.size, size=spec.genome_length, p=dist.as_array())
		genomes.append(alphabet.decode(codes))
	return Sample(tuple(genomes), alphabet)
