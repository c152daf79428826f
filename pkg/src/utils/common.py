"""Common utility functions shared across the packages.

This module provides:
- child_seed: function to derive a 64-bit child seed from a master seed and keys
- make_generator: function to build a seeded PCG64 generator for a named stream
- ceil_tol: function to round up while absorbing floating-point noise
- floor_tol: function to round down while absorbing floating-point noise
- open_text_input: context manager reading from a path or an open stream
- open_text_output: context manager writing to a path or an open stream
- parse_key_value_lines: function to parse flat key=value configuration text
- parse_bool: function to parse a boolean configuration value
"""

import math
import os
import sys
from collections.abc import Iterable, Iterator
from contextlib import contextmanager
from typing import TextIO

import numpy as np

from .constants import SEED_MASK
from .exceptions import ParseError

TextSource = str | os.PathLike[str] | TextIO

_ROUNDING_SLACK = 1e-9

_TRUE_VALUES = frozenset({"1", "true", "yes", "on"})
_FALSE_VALUES = frozenset({"0", "false", "no", "off"})


def child_seed(master: int, *keys: int) -> int:
	"""Derive a 64-bit child seed from a master seed and integer keys.

	The splitting function is numpy's SeedSequence: the master seed (reduced
	modulo 2^64) is the entropy, the keys are the spawn key, and the child
	seed is the first 64-bit word of the generated state.
	"""
	sequence = np.random.SeedSequence(master & SEED_MASK, spawn_key=tuple(keys))
	return int(sequence.generate_state(1, dtype=np.uint64)[0])


def make_generator(seed: int, *keys: int) -> np.random.Generator:
	"""Return a PCG64 generator for the stream named by `keys` under `seed`."""
	sequence = np.random.SeedSequence(seed & SEED_MASK, spawn_key=tuple(keys))
	return np.random.Generator(np.random.PCG64(sequence))


def ceil_tol(value: float) -> int:
	"""Ceiling that treats values within 1e-9 of an integer as that integer."""
	return math.ceil(value - _ROUNDING_SLACK)


def floor_tol(value: float) -> int:
	"""Floor that treats values within 1e-9 of an integer as that integer."""
	return math.floor(value + _ROUNDING_SLACK)


@contextmanager
def open_text_input(source: TextSource) -> Iterator[TextIO]:
	"""Yield a readable text stream; "-" means standard input."""
	if isinstance(source, str | os.PathLike):
		if os.fspath(source) == "-":
			yield sys.stdin
			return
		with open(source, encoding="utf-8") as stream:
			yield stream
		return
	yield source


@contextmanager
def open_text_output(destination: TextSource) -> Iterator[TextIO]:
	"""Yield a writable text stream; "-" means standard output."""
	if isinstance(destination, str | os.PathLike):
		if os.fspath(destination) == "-":
			yield sys.stdout
			return
		with open(destination, "w", encoding="utf-8", newline="\n") as stream:
			yield stream
		return
	yield destination


def parse_key_value_lines(lines: Iterable[str]) -> dict[str, tuple[str, int]]:
	"""Parse flat key=value text into {key: (value, line_number)}.

	Blank lines and lines starting with '#' are skipped. Keys are lowercased
	and stripped; duplicate keys are an error.
	"""
	entries: dict[str, tuple[str, int]] = {}
	for line_number, raw in enumerate(lines, start=1):
		line = raw.strip()
		if not line or line.startswith("#"):
			continue
		key, sep, value = line.partition("=")
		key = key.strip().lower()
		if not sep or not key:
			msg = f"expected key=value, got {line!r}"
			raise ParseError(msg, line_number)
		if key in entries:
			msg = f"duplicate key {key!r}"
			raise ParseError(msg, line_number)
		entries[key] = (value.strip(), line_number)
	return entries


def parse_bool(value: str, line_number: int | None = None) -> bool:
	"""Parse true/false style configuration values."""
	lowered = value.strip().lower()
	if lowered in _TRUE_VALUES:
		return True
	if lowered in _FALSE_VALUES:
		return False
	msg = f"expected a boolean, got {value!r}"
	raise ParseError(msg, line_number)
