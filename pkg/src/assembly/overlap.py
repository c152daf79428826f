"""Suffix-prefix overlaps between strings.

This module provides:
- max_overlap: length of the longest suffix of one string that prefixes another
"""

from utils.exceptions import ValidationError


def max_overlap(s1: str, s2: str, cap: int | None = None) -> int:
	"""Largest k <= min(cap, |s1|, |s2|) with s1[-k:] == s2[:k] (0 if none).

	Args:
		s1: left string, nonempty.
		s2: right string, nonempty.
		cap: upper limit on the overlap; no limit when None.
	"""
	if not s1 or not s2:
		msg = "overlap needs two nonempty strings"
		raise ValidationError(msg)
	if cap is not None and cap < 0:
		msg = f"cap must be >= 0, got {cap}"
		raise ValidationError(msg)

	limit = min(len(s1), len(s2))
	if cap is not None:
		limit = min(limit, cap)
	for k in range(limit, 0, -1):
		if s1.endswith(s2[:k]):
			return k
	return 0
