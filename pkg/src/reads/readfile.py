"""Reads file format.

A header `#L=<int>\t#total=<int>` followed by `read<TAB>count` lines sorted
lexicographically (by alphabet index when an alphabet is supplied).

This module provides:
- write_reads: function to serialise a ReadMultiset
- read_reads: function to parse a ReadMultiset from a path or stream
"""

from collections.abc import Iterable

from models import Alphabet
from utils.common import TextSource, open_text_input, open_text_output
from utils.exceptions import ParseError, ValidationError

from .multiset import ReadMultiset


def write_reads(
	reads: ReadMultiset, destination: TextSource, alphabet: Alphabet | None = None
) -> None:
	"""Write the header and the sorted `read<TAB>count` lines."""
	key = alphabet.sort_key if alphabet is not None else None
	with open_text_output(destination) as stream:
		stream.write(f"#L={reads.read_length}\t#total={reads.total}\n")
		for read in sorted(reads, key=key):
			stream.write(f"{read}\t{reads.count(read)}\n")


def _parse_header(line: str) -> tuple[int, int]:
	length_field, _, total_field = line.rstrip("\r\n").partition("\t")
	if not length_field.startswith("#L=") or not total_field.startswith("#total="):
		msg = "expected header '#L=<int>\\t#total=<int>'"
		raise ParseError(msg, 1)
	try:
		return int(length_field.removeprefix("#L=")), int(
			total_field.removeprefix("#total=")
		)
	except ValueError:
		msg = "header values must be integers"
		raise ParseError(msg, 1) from None


def parse_reads_lines(lines: Iterable[str]) -> ReadMultiset:
	"""Parse the reads format from text lines."""
	iterator = iter(lines)
	header = next(iterator, None)
	if header is None:
		msg = "empty reads file"
		raise ParseError(msg, 1)
	read_length, total = _parse_header(header)
	counts: dict[str, int] = {}
	for line_number, raw in enumerate(iterator, start=2):
		line = raw.rstrip("\r\n")
		if not line:
			continue
		read, sep, count_text = line.partition("\t")
		if not sep:
			msg = f"expected 'read<TAB>count', got {line!r}"
			raise ParseError(msg, line_number)
		if len(read) != read_length:
			msg = f"read {read!r} has length {len(read)}, header says {read_length}"
			raise ParseError(msg, line_number)
		if read in counts:
			msg = f"duplicate read {read!r}"
			raise ParseError(msg, line_number)
		try:
			count = int(count_text)
		except ValueError:
			msg = f"count {count_text!r} is not an integer"
			raise ParseError(msg, line_number) from None
		if count < 1:
			msg = f"count {count} must be positive"
			raise ParseError(msg, line_number)
		counts[read] = count
	try:
		return ReadMultiset(read_length, counts, total)
	except ValidationError as err:
		raise ParseError(str(err)) from None


def read_reads(source: TextSource) -> ReadMultiset:
	"""Read a ReadMultiset from a path, "-" or an open stream."""
	with open_text_input(source) as stream:
		return parse_reads_lines(stream)
