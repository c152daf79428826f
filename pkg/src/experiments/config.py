"""Experiment configuration: the key=value file and its validated form.

This module provides:
- ExperimentMode: identifiability, assembly, moments or repeat-prob
- ExperimentConfig: a validated experiment description
- parse_config: function to parse configuration lines
- load_config: function to read a configuration file
"""

import dataclasses
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from enum import Enum

from models import Alphabet, Distribution, ProblemSpec
from repeats import default_eta
from utils.common import TextSource, open_text_input, parse_bool, parse_key_value_lines
from utils.constants import DEFAULT_ALPHABET
from utils.exceptions import ParseError, ValidationError

_MIN_READ_LENGTH = 2
_MAX_ETA = 0.5
_DIST_PREFIX = "dist."
_KEYS = frozenset(
	{
		"mode",
		"alphabet",
		"genomes",
		"length",
		"read_lengths",
		"trials",
		"seed",
		"eta",
		"dist",
		"assemble",
		"epsilon",
		"scales",
	}
)
_REQUIRED = ("genomes", "length", "read_lengths")
_DEFAULT_TRIALS = 100
_SCALE_SEPARATOR = "x"
_SCALE_FIELDS = 3

Scale = tuple[int, int, int]


class ExperimentMode(Enum):
	"""What each trial of an experiment measures."""

	IDENTIFIABILITY = "identifiability"
	ASSEMBLY = "assembly"
	MOMENTS = "moments"
	REPEAT_PROB = "repeat-prob"


@dataclass(frozen=True)
class ExperimentConfig:
	"""A problem template, the read lengths to sweep and the trial budget.

	`eta` of None means the default margin rule per read length. Assembly
	mode always assembles; moments mode never does. `scales` lists further
	(M, N, L) points a moments-mode run measures after its own read lengths.
	"""

	mode: ExperimentMode
	num_genomes: int
	genome_length: int
	read_lengths: tuple[int, ...]
	trials: int
	seed: int
	dists: tuple[Distribution, ...]
	eta: float | None = None
	assemble: bool = False
	epsilon: float = 0.0
	scales: tuple[Scale, ...] = ()

	def __post_init__(self) -> None:
		"""Validates counts, read lengths and the distributions."""
		if self.trials < 1:
			msg = f"trials must be >= 1, got {self.trials}"
			raise ValidationError(msg)
		if not self.read_lengths:
			msg = "at least one read length is required"
			raise ValidationError(msg)
		if len(set(self.read_lengths)) != len(self.read_lengths):
			msg = f"read lengths repeat: {self.read_lengths}"
			raise ValidationError(msg)
		for read_length in self.read_lengths:
			if not _MIN_READ_LENGTH <= read_length <= self.genome_length:
				msg = f"read length {read_length} outside [2, N={self.genome_length}]"
				raise ValidationError(msg)
		if self.eta is not None and not 0 <= self.eta < _MAX_ETA:
			msg = f"eta must lie in [0, 1/2), got {self.eta}"
			raise ValidationError(msg)
		if self.epsilon < 0:
			msg = f"epsilon must be >= 0, got {self.epsilon}"
			raise ValidationError(msg)
		# validates M, N and the distribution list
		ProblemSpec(
			self.num_genomes, self.genome_length, self.read_lengths[0], self.dists
		)
		if self.mode is ExperimentMode.ASSEMBLY:
			object.__setattr__(self, "assemble", True)
		if self.mode is ExperimentMode.MOMENTS and self.assemble:
			msg = "moments mode does not assemble"
			raise ValidationError(msg)
		if self.scales:
			self._check_scales()

	def _check_scales(self) -> None:
		if self.mode is not ExperimentMode.MOMENTS:
			msg = f"scales need moments mode, got {self.mode.value}"
			raise ValidationError(msg)
		if any(p != self.dists[0] for p in self.dists):
			msg = "scales need one distribution shared by every genome"
			raise ValidationError(msg)
		for num_genomes, genome_length, read_length in self.scales:
			if num_genomes < 1 or not _MIN_READ_LENGTH <= read_length <= genome_length:
				msg = (
					f"scale point M={num_genomes}, N={genome_length}, L={read_length} "
					"needs M >= 1 and 2 <= L <= N"
				)
				raise ValidationError(msg)

	@classmethod
	def uniform(  # noqa: PLR0913
		cls,
		mode: ExperimentMode,
		num_genomes: int,
		genome_length: int,
		read_lengths: Sequence[int],
		trials: int,
		seed: int,
		alphabet: Alphabet | None = None,
		**options: float | bool | None,
	) -> "ExperimentConfig":
		"""Configuration with every genome uniform over `alphabet` (default ACGT)."""
		alphabet = alphabet or Alphabet.from_symbols(DEFAULT_ALPHABET)
		dists = (Distribution.uniform(alphabet),) * num_genomes
		return cls(
			mode,
			num_genomes,
			genome_length,
			tuple(read_lengths),
			trials,
			seed,
			dists,
			**options,  # type: ignore[arg-type]
		)

	@property
	def alphabet(self) -> Alphabet:
		"""Alphabet shared by the distributions."""
		return self.dists[0].alphabet

	def spec(self, read_length: int) -> ProblemSpec:
		"""The metagenomics problem at one read length."""
		return ProblemSpec(self.num_genomes, self.genome_length, read_length, self.dists)

	def eta_for(self, read_length: int) -> float:
		"""Margin of the Z statistic at `read_length`."""
		if self.eta is not None:
			return self.eta
		return default_eta(read_length, self.genome_length)

	@property
	def verdict_eta(self) -> float:
		"""Margin of the swap search; 0 unless configured."""
		return 0.0 if self.eta is None else self.eta

	def with_scale(
		self, num_genomes: int, genome_length: int, read_length: int
	) -> "ExperimentConfig":
		"""The same experiment at another (M, N) and a single read length.

		Only configurations whose genomes share one distribution can be rescaled.
		"""
		if any(p != self.dists[0] for p in self.dists):
			msg = "only a configuration with one shared distribution can be rescaled"
			raise ValidationError(msg)
		return dataclasses.replace(
			self,
			num_genomes=num_genomes,
			genome_length=genome_length,
			read_lengths=(read_length,),
			dists=(self.dists[0],) * num_genomes,
			scales=(),
		)


def _parse_int(value: str, line_number: int) -> int:
	try:
		return int(value)
	except ValueError:
		msg = f"expected an integer, got {value!r}"
		raise ParseError(msg, line_number) from None


def _parse_float(value: str, line_number: int) -> float:
	try:
		return float(value)
	except ValueError:
		msg = f"expected a number, got {value!r}"
		raise ParseError(msg, line_number) from None


def _parse_mode(value: str, line_number: int) -> ExperimentMode:
	try:
		return ExperimentMode(value.lower())
	except ValueError:
		choices = ", ".join(mode.value for mode in ExperimentMode)
		msg = f"unknown mode {value!r}; expected one of {choices}"
		raise ParseError(msg, line_number) from None


def _parse_scales(value: str, line_number: int) -> tuple[Scale, ...]:
	"""Parse "MxNxL, MxNxL, ..." into (M, N, L) triples."""
	scales = []
	for part in value.split(","):
		numbers = [
			_parse_int(number.strip(), line_number)
			for number in part.lower().split(_SCALE_SEPARATOR)
		]
		if len(numbers) != _SCALE_FIELDS:
			msg = f"expected MxNxL, got {part.strip()!r}"
			raise ParseError(msg, line_number)
		scales.append((numbers[0], numbers[1], numbers[2]))
	return tuple(scales)


def _parse_dists(
	entries: dict[str, tuple[str, int]], alphabet: Alphabet, num_genomes: int
) -> tuple[Distribution, ...]:
	shared_text, shared_line = entries.get("dist", ("uniform", 0))
	shared = Distribution.parse(shared_text, alphabet, shared_line or None)
	dists = [shared] * num_genomes
	for key, (value, line_number) in entries.items():
		if not key.startswith(_DIST_PREFIX):
			continue
		genome = _parse_int(key.removeprefix(_DIST_PREFIX), line_number)
		if not 1 <= genome <= num_genomes:
			msg = f"{key} names no genome in 1..{num_genomes}"
			raise ParseError(msg, line_number)
		dists[genome - 1] = Distribution.parse(value, alphabet, line_number)
	return tuple(dists)


def parse_config(lines: Iterable[str]) -> ExperimentConfig:
	"""Parse a flat key=value experiment configuration."""
	entries = parse_key_value_lines(lines)
	for key, (_, line_number) in entries.items():
		if key not in _KEYS and not key.startswith(_DIST_PREFIX):
			msg = f"unknown key {key!r}"
			raise ParseError(msg, line_number)
	for key in _REQUIRED:
		if key not in entries:
			msg = f"missing required key {key!r}"
			raise ParseError(msg)

	try:
		alphabet_text, alphabet_line = entries.get("alphabet", (DEFAULT_ALPHABET, 0))
		try:
			alphabet = Alphabet.from_symbols(alphabet_text)
		except ValidationError as err:
			raise ParseError(str(err), alphabet_line or None) from None

		num_genomes = _parse_int(*entries["genomes"])
		read_lengths_text, read_lengths_line = entries["read_lengths"]
		read_lengths = tuple(
			_parse_int(part.strip(), read_lengths_line)
			for part in read_lengths_text.split(",")
		)
		mode = ExperimentMode.IDENTIFIABILITY
		if "mode" in entries:
			mode = _parse_mode(*entries["mode"])
		return ExperimentConfig(
			mode=mode,
			num_genomes=num_genomes,
			genome_length=_parse_int(*entries["length"]),
			read_lengths=read_lengths,
			trials=_parse_int(*entries.get("trials", (str(_DEFAULT_TRIALS), 0))),
			seed=_parse_int(*entries.get("seed", ("0", 0))),
			dists=_parse_dists(entries, alphabet, num_genomes),
			eta=_parse_float(*entries["eta"]) if "eta" in entries else None,
			assemble=parse_bool(*entries["assemble"]) if "assemble" in entries else False,
			epsilon=_parse_float(*entries["epsilon"]) if "epsilon" in entries else 0.0,
			scales=_parse_scales(*entries["scales"]) if "scales" in entries else (),
		)
	except ValidationError as err:
		if isinstance(err, ParseError):
			raise
		raise ParseError(str(err)) from None


def load_config(source: TextSource) -> ExperimentConfig:
	"""Read an experiment configuration from a path, "-" or an open stream."""
	with open_text_input(source) as stream:
		return parse_config(stream)
