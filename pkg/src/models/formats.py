"""Sample text format.

One genome per line, optionally preceded by a `#alphabet=<symbols>` header.
Without a header the alphabet is inferred as in Sample.from_strings.

This module provides:
- read_sample: function to parse a Sample from a path or stream
- write_sample: function to write a Sample with its alphabet header
- parse_sample_lines: function to parse a Sample from text lines
"""

from collections.abc import Iterable

from utils.common import TextSource, open_text_input, open_text_output
from utils.exceptions import ParseError, ValidationError

from .alphabet import Alphabet
from .problem import Sample

ALPHABET_HEADER = "#alphabet="


def parse_sample_lines(lines: Iterable[str]) -> Sample:
	"""Parse the sample text format."""
	alphabet: Alphabet | None = None
	genomes: list[str] = []
	for line_number, raw in enumerate(lines, start=1):
		line = raw.rstrip("\r\n")
		if not line:
			continue
		if line.startswith(ALPHABET_HEADER):
			if alphabet is not None or genomes:
				msg = "alphabet header must come first and only once"
				raise ParseError(msg, line_number)
			try:
				alphabet = Alphabet.from_symbols(line[len(ALPHABET_HEADER) :])
			except ValidationError as err:
				raise ParseError(str(err), line_number) from None
			continue
		if line.startswith("#"):
			continue
		if genomes and len(line) != len(genomes[0]):
			msg = f"genome has length {len(line)}, expected {len(genomes[0])}"
			raise ParseError(msg, line_number)
		if alphabet is not None and not alphabet.is_word(line):
			msg = f"genome has symbols outside alphabet {alphabet}"
			raise ParseError(msg, line_number)
		genomes.append(line)
	if not genomes:
		msg = "no genomes found"
		raise ParseError(msg)
	try:
		return Sample.from_strings(genomes, alphabet)
	except ValidationError as err:
		raise ParseError(str(err)) from None


def read_sample(source: TextSource) -> Sample:
	"""Read a sample from a path, "-" or an open stream."""
	with open_text_input(source) as stream:
		return parse_sample_lines(stream)


def write_sample(sample: Sample, destination: TextSource) -> None:
	"""Write a sample with its alphabet header, one genome per line."""
	with open_text_output(destination) as stream:
		stream.write(f"{ALPHABET_HEADER}{sample.alphabet}\n")
		for genome in sample.genomes:
			stream.write(f"{genome}\n")
