"""Application-level constant variables."""

from enum import IntEnum

VERSION = "0.1.0"

DEFAULT_ALPHABET = "ACGT"

# Absolute tolerance on the sum of a probability vector.
PROBABILITY_TOLERANCE = 1e-9

# Largest |A|^(M*N) the exhaustive identifiability oracle will enumerate.
BRUTE_FORCE_CAP = 2**20

SEED_MASK = 2**64 - 1

# Witnesses written by `check --dump` unless --limit says otherwise.
DUMP_LIMIT = 1000

# Window pairs drawn per vectorised batch in the repeat-probability estimator.
REPEAT_PROBABILITY_CHUNK = 1_000_000

# Environment variable holding the default experiment worker count.
THREADS_ENV = "METASHOT_THREADS"


class ExitCode(IntEnum):
	"""Process exit codes of the command-line application."""

	OK = 0
	USAGE = 1
	VALIDATION = 2
	INCOMPLETE = 3
	IO = 4


class Stream(IntEnum):
	"""Spawn keys separating the independent random streams."""

	GENERATION = 0
	ASSEMBLY = 1
	REPEAT_PROBABILITY = 2
