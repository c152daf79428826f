"""Error hierarchy shared by every package.

This module provides:
- MetashotError: root of all library errors
- ValidationError: invalid arguments, values or states
- ParseError: malformed text input, with the offending line number
- RefusalError: work refused because it exceeds a configured cap
"""


class MetashotError(Exception):
	"""Base class for all library errors."""


class ValidationError(MetashotError, ValueError):
	"""Raised when a value violates a documented invariant or range."""


class ParseError(ValidationError):
	"""Raised when text input cannot be parsed."""

	def __init__(self, reason: str, line_number: int | None = None) -> None:
		"""Stores the reason and the 1-based line number, if any."""
		self.reason = reason
		self.line_number = line_number
		message = reason if line_number is None else f"line {line_number}: {reason}"
		super().__init__(message)


class RefusalError(ValidationError):
	"""Raised when a request exceeds a configured work cap."""
