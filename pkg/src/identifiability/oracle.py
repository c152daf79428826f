"""Exhaustive identifiability oracle for tiny samples.

This module provides:
- brute_force_identifiable: function deciding identifiability by enumeration
"""

import itertools
import logging
from collections import Counter

from models import Sample
from reads import ReadMultiset, extract_reads
from utils.constants import BRUTE_FORCE_CAP
from utils.exceptions import RefusalError, ValidationError

logger = logging.getLogger(__name__)


def _candidate_genomes(sample: Sample, reads: ReadMultiset) -> list[str]:
	"""Every length-N string over the alphabet whose L-reads all occur in `reads`.

	Genomes are grown one symbol at a time and abandoned as soon as the newest
	window is not a read, so only prefixes consistent with R(X) are explored.
	"""
	length, read_length = sample.genome_length, reads.read_length
	symbols = sample.alphabet.symbols
	frontier = [""]
	for size in range(1, length + 1):
		grown = []
		for prefix in frontier:
			for symbol in symbols:
				word = prefix + symbol
				if size >= read_length and word[size - read_length :] not in reads:
					continue
				grown.append(word)
		frontier = grown
	return frontier


def brute_force_identifiable(
	sample: Sample, read_length: int, cap: int = BRUTE_FORCE_CAP
) -> bool:
	"""True iff every sample with the read multiset of `sample` is a permutation of it.

	Any X' with R(X') = R(X) consists of genomes whose reads all lie in R(X), so
	only multisets of M such genomes are compared. The work is still bounded
	by the size |A|^(M N) of the full space.

	Args:
		sample: the genomes X.
		read_length: L.
		cap: largest |A|^(M N) that will be enumerated.
	"""
	space = sample.alphabet.size ** (sample.num_genomes * sample.genome_length)
	if space > cap:
		msg = f"|A|^(M N) = {space} exceeds the enumeration cap {cap}"
		raise RefusalError(msg)
	if not 1 <= read_length <= sample.genome_length:
		msg = f"need 1 <= L <= N, got L={read_length}, N={sample.genome_length}"
		raise ValidationError(msg)

	reads = extract_reads(sample, read_length)
	target = Counter(reads.counts)
	canonical = sample.canonical()
	genome_reads = {
		genome: Counter(
			extract_reads(sample.replace_genomes([genome]), read_length).counts
		)
		for genome in _candidate_genomes(sample, reads)
	}
	logger.debug("%d candidate genomes for L=%d", len(genome_reads), read_length)

	for combination in itertools.combinations_with_replacement(
		sorted(genome_reads), sample.num_genomes
	):
		if combination == canonical:
			continue
		total: Counter[str] = Counter()
		for genome in combination:
			total.update(genome_reads[genome])
		if total == target:
			logger.debug("read-equivalent non-permutation %s", combination)
			return False
	return True
