"""A single seeded trial of an experiment.

This module provides:
- TrialResult: verdict, Z count and assembly outcome of one sample
- run_trial: function generating and analysing the sample for (L, trial)
"""

import time
from dataclasses import dataclass

from assembly import greedy_assemble
from identifiability import VerdictTag, check_identifiable
from models import sample_metagenome
from reads import extract_reads
from repeats import count_b_events
from utils.common import child_seed
from utils.exceptions import ValidationError

from .config import ExperimentConfig, ExperimentMode

_SWAP_MARGIN = 2


@dataclass(frozen=True)
class TrialResult:
	"""Outcome of one trial.

	`verdict` is None in moments mode, where only Z is measured;
	`assembly_recovered` is None when assembly was skipped.
	"""

	read_length: int
	trial: int
	verdict: VerdictTag | None
	swap_witness: bool
	distinct_segments: bool
	z_count: int
	assembly_recovered: bool | None
	elapsed_ms: float

	def __post_init__(self) -> None:
		"""Checks that the verdict agrees with the flags."""
		if self.distinct_segments != (self.verdict is VerdictTag.IDENTIFIABLE):
			msg = f"{self.verdict} verdict disagrees with distinct_segments"
			raise ValidationError(msg)
		if self.swap_witness != (self.verdict is VerdictTag.NON_IDENTIFIABLE):
			msg = f"{self.verdict} verdict disagrees with swap_witness"
			raise ValidationError(msg)


def run_trial(config: ExperimentConfig, read_length: int, trial: int) -> TrialResult:
	"""Generate the sample of (L, trial) and measure it.

	The sample seed is child_seed(config.seed, L, trial); assembly draws its
	tie-breaks from a separate stream of the same seed.
	"""
	started = time.perf_counter()
	seed = child_seed(config.seed, read_length, trial)
	sample = sample_metagenome(config.spec(read_length), seed)

	tag: VerdictTag | None = None
	swap_witness = distinct_segments = False
	if config.mode is not ExperimentMode.MOMENTS:
		verdict = check_identifiable(sample, read_length, config.verdict_eta)
		tag = verdict.tag
		swap_witness = verdict.witness is not None
		distinct_segments = verdict.identifiable
	z_count = 0
	if read_length <= config.genome_length - _SWAP_MARGIN:
		z_count = count_b_events(sample, read_length, config.eta_for(read_length))

	recovered = None
	if config.assemble:
		reads = extract_reads(sample, read_length)
		result = greedy_assemble(reads, config.num_genomes, config.genome_length, seed)
		recovered = result.recovers(sample)

	return TrialResult(
		read_length=read_length,
		trial=trial,
		verdict=tag,
		swap_witness=swap_witness,
		distinct_segments=distinct_segments,
		z_count=z_count,
		assembly_recovered=recovered,
		elapsed_ms=(time.perf_counter() - started) * 1000.0,
	)
