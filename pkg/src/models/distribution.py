"""Symbol distributions over an alphabet.

This module provides:
- Distribution: probability vector over an Alphabet, renormalised on construction
"""

import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from utils.constants import PROBABILITY_TOLERANCE
from utils.exceptions import ParseError, ValidationError

from .alphabet import Alphabet


@dataclass(frozen=True)
class Distribution:
	"""Probability of each alphabet symbol, in alphabet order."""

	alphabet: Alphabet
	probs: tuple[float, ...]

	def __post_init__(self) -> None:
		"""Validates the vector and renormalises it to sum exactly to one."""
		if len(self.probs) != self.alphabet.size:
			msg = (
				f"distribution has {len(self.probs)} entries, "
				f"alphabet {self.alphabet} has {self.alphabet.size}"
			)
			raise ValidationError(msg)
		values = [float(p) for p in self.probs]
		if any(not math.isfinite(p) or p < 0 for p in values):
			msg = f"probabilities must be finite and nonnegative: {values}"
			raise ValidationError(msg)
		total = math.fsum(values)
		if abs(total - 1.0) > PROBABILITY_TOLERANCE:
			msg = f"probabilities sum to {total!r}, not 1"
			raise ValidationError(msg)
		object.__setattr__(self, "probs", tuple(p / total for p in values))

	@classmethod
	def uniform(cls, alphabet: Alphabet) -> "Distribution":
		"""Equal mass on every symbol."""
		return cls(alphabet, (1.0 / alphabet.size,) * alphabet.size)

	@classmethod
	def point_mass(cls, symbol: str, alphabet: Alphabet) -> "Distribution":
		"""All mass on a single symbol."""
		index = alphabet.index(symbol)
		probs = tuple(1.0 if i == index else 0.0 for i in range(alphabet.size))
		return cls(alphabet, probs)

	@classmethod
	def from_values(cls, values: Sequence[float], alphabet: Alphabet) -> "Distribution":
		"""Wrap a sequence of probabilities."""
		return cls(alphabet, tuple(float(v) for v in values))

	@classmethod
	def parse(
		cls, text: str, alphabet: Alphabet, line_number: int | None = None
	) -> "Distribution":
		"""Parse "uniform" or comma-separated reals given in alphabet order."""
		stripped = text.strip()
		if stripped.lower() == "uniform":
			return cls.uniform(alphabet)
		try:
			values = [float(part) for part in stripped.split(",")]
		except ValueError:
			msg = f"expected comma-separated probabilities, got {text!r}"
			raise ParseError(msg, line_number) from None
		try:
			return cls.from_values(values, alphabet)
		except ValidationError as err:
			raise ParseError(str(err), line_number) from None

	def as_array(self) -> npt.NDArray[np.float64]:
		"""Probabilities as a float array."""
		return np.asarray(self.probs, dtype=np.float64)

	def is_uniform(self) -> bool:
		"""True iff every symbol has mass 1/|A| (within tolerance)."""
		target = 1.0 / self.alphabet.size
		return all(abs(p - target) <= PROBABILITY_TOLERANCE for p in self.probs)
