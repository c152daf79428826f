"""Three-valued identifiability verdicts and the suffix-exchange construction.

This module provides:
- VerdictTag: Identifiable, NonIdentifiable or Unknown
- IdentVerdict: a verdict with its witness and a short reason
- check_identifiable: function deciding the verdict from both sufficient conditions
- apply_swap: function exchanging the suffixes named by a SwapWitness
"""

from dataclasses import dataclass
from enum import Enum

from models import Sample
from repeats import RepeatWitness, SwapWitness, find_repeats, find_swap_witness
from utils.exceptions import ValidationError

_MIN_READ_LENGTH = 2
_SWAP_MARGIN = 2


class VerdictTag(Enum):
	"""Outcome of the identifiability check."""

	IDENTIFIABLE = "Identifiable"
	NON_IDENTIFIABLE = "NonIdentifiable"
	UNKNOWN = "Unknown"

	def __str__(self) -> str:
		"""The tag as printed in `verdict=<tag>`."""
		return self.value


@dataclass(frozen=True)
class IdentVerdict:
	"""A verdict, the swap witness when non-identifiable, and why.

	`repeat` is the first (L-1)-repeat found when the sample is not
	Identifiable; it is None for Identifiable verdicts.
	"""

	tag: VerdictTag
	reason: str
	witness: SwapWitness | None = None
	repeat: RepeatWitness | None = None

	def __post_init__(self) -> None:
		"""Checks that a witness is present exactly for NonIdentifiable."""
		if (self.witness is not None) != (self.tag is VerdictTag.NON_IDENTIFIABLE):
			needs = "needs" if self.witness is None else "takes no"
			msg = f"a {self.tag} verdict {needs} witness"
			raise ValidationError(msg)

	@property
	def identifiable(self) -> bool:
		"""True iff the tag is Identifiable."""
		return self.tag is VerdictTag.IDENTIFIABLE


def check_identifiable(
	sample: Sample, read_length: int, eta: float = 0.0
) -> IdentVerdict:
	"""Classify `sample` for reads of length L.

	Identifiable when all (L-1)-segments are distinct; NonIdentifiable when a
	swap witness exists; Unknown otherwise, since neither condition is
	necessary.

	Args:
		sample: the genomes X.
		read_length: L, at least 2.
		eta: boundary margin of the swap search. The default 0 searches every
			position 2 <= j <= N - L.
	"""
	if not _MIN_READ_LENGTH <= read_length <= sample.genome_length:
		msg = f"need 2 <= L <= N, got L={read_length}, N={sample.genome_length}"
		raise ValidationError(msg)

	repeats = find_repeats(sample, read_length - 1, limit=1)
	if not repeats:
		return IdentVerdict(
			VerdictTag.IDENTIFIABLE, f"all {read_length - 1}-segments are distinct"
		)
	repeat = repeats[0]

	if read_length > sample.genome_length - _SWAP_MARGIN:
		return IdentVerdict(
			VerdictTag.UNKNOWN,
			f"{read_length - 1}-repeat present and L > N - 2 leaves no swap position",
			repeat=repeat,
		)
	witness = find_swap_witness(sample, read_length, eta)
	if witness is not None:
		return IdentVerdict(
			VerdictTag.NON_IDENTIFIABLE,
			f"genomes {witness.m} and {witness.m2} exchange suffixes after position "
			f"{witness.j + read_length - 1}",
			witness=witness,
			repeat=repeat,
		)
	return IdentVerdict(
		VerdictTag.UNKNOWN,
		f"{read_length - 1}-repeat present but no swap witness",
		repeat=repeat,
	)


def apply_swap(sample: Sample, witness: SwapWitness) -> Sample:
	"""Return X~ with X~^m = a w d and X~^m2 = c w b, other genomes unchanged."""
	if not witness.verify(sample):
		msg = f"stale swap witness {witness.format_line()!r} for this sample"
		raise ValidationError(msg)
	a, b, c, d = witness.parts(sample)
	genomes = list(sample.genomes)
	genomes[witness.m - 1] = a + witness.w + d
	genomes[witness.m2 - 1] = c + witness.w + b
	return sample.replace_genomes(genomes)
