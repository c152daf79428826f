"""Finite symbol alphabets.

This module provides:
- Alphabet: ordered set of single-character symbols with integer codes
"""

import math
from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt

from utils.constants import DEFAULT_ALPHABET
from utils.exceptions import ValidationError

_MIN_SIZE = 2
_ASCII_LIMIT = 128
_UNKNOWN_CODE = 255


@dataclass(frozen=True)
class Alphabet:
	"""Ordered, duplicate-free symbols; the order fixes the index of each symbol."""

	symbols: tuple[str, ...]
	_lookup: dict[str, int] = field(init=False, repr=False, compare=False)
	_table: npt.NDArray[np.uint8] = field(init=False, repr=False, compare=False)

	def __post_init__(self) -> None:
		"""Validates the symbols and builds the encoding tables."""
		if len(self.symbols) < _MIN_SIZE:
			msg = f"alphabet needs at least {_MIN_SIZE} symbols, got {len(self.symbols)}"
			raise ValidationError(msg)
		if len(set(self.symbols)) != len(self.symbols):
			msg = f"alphabet has duplicate symbols: {''.join(self.symbols)!r}"
			raise ValidationError(msg)
		for symbol in self.symbols:
			if (
				len(symbol) != 1
				or ord(symbol) >= _ASCII_LIMIT
				or not symbol.isprintable()
				or symbol.isspace()
				or symbol == "#"
			):
				msg = f"invalid alphabet symbol {symbol!r}"
				raise ValidationError(msg)

		# bytes outside the alphabet map to _UNKNOWN_CODE
		table = np.full(_ASCII_LIMIT, _UNKNOWN_CODE, dtype=np.uint8)
		for index, symbol in enumerate(self.symbols):
			table[ord(symbol)] = index
		object.__setattr__(self, "_lookup", {s: i for i, s in enumerate(self.symbols)})
		object.__setattr__(self, "_table", table)

	@classmethod
	def from_symbols(cls, symbols: str = DEFAULT_ALPHABET) -> "Alphabet":
		"""Build an alphabet from a string such as "ACGT"."""
		return cls(tuple(symbols))

	@property
	def size(self) -> int:
		"""Number of symbols."""
		return len(self.symbols)

	@property
	def bits_per_symbol(self) -> int:
		"""Bits needed to pack one symbol code."""
		return max(1, math.ceil(math.log2(self.size)))

	def __str__(self) -> str:
		"""Symbols concatenated in index order."""
		return "".join(self.symbols)

	def __contains__(self, symbol: object) -> bool:
		"""Membership test for single symbols."""
		return symbol in self._lookup

	def index(self, symbol: str) -> int:
		"""Return the index of `symbol`."""
		try:
			return self._lookup[symbol]
		except KeyError:
			msg = f"symbol {symbol!r} is not in alphabet {self}"
			raise ValidationError(msg) from None

	def is_word(self, text: str) -> bool:
		"""True iff every character of `text` belongs to the alphabet."""
		return set(text) <= self._lookup.keys()

	def encode(self, text: str) -> npt.NDArray[np.uint8]:
		"""Map text to its array of symbol indices."""
		try:
			raw = np.frombuffer(text.encode("ascii"), dtype=np.uint8)
		except UnicodeEncodeError:
			msg = f"text contains symbols outside alphabet {self}"
			raise ValidationError(msg) from None
		codes = self._table[raw]
		if codes.size and codes.max() == _UNKNOWN_CODE:
			msg = f"text contains symbols outside alphabet {self}"
			raise ValidationError(msg)
		return codes

	def decode(self, codes: npt.ArrayLike) -> str:
		"""Map an array of symbol indices back to text."""
		letters = np.frombuffer(str(self).encode("ascii"), dtype=np.uint8)
		return letters[np.asarray(codes, dtype=np.intp)].tobytes().decode("ascii")

	def sort_key(self, text: str) -> tuple[int, ...]:
		"""Key ordering words lexicographically by symbol index."""
		return tuple(self._lookup[ch] for ch in text)
