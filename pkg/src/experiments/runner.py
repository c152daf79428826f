"""Running experiments and the summary CSV.

This module provides:
- SummaryRow: aggregate statistics at one read length
- ExperimentSummary: the rows of one experiment
- run_experiment: function running every trial and aggregating per read length
- write_summary_csv: function writing the summary CSV
- read_summary_csv: function reading a summary CSV back
- moment_ratio_sequence: function measuring Var(Z)/E(Z)^2 across problem scales
"""

import csv
import functools
import itertools
import logging
import math
import multiprocessing
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from identifiability import VerdictTag
from repeats import estimate_repeat_probability
from utils.common import TextSource, child_seed, open_text_input, open_text_output
from utils.exceptions import ParseError, ValidationError

from .analysis import analytic_expectation_z
from .config import ExperimentConfig, ExperimentMode
from .trials import TrialResult, run_trial

logger = logging.getLogger(__name__)

CSV_HEADER = (
	"L",
	"trials",
	"p_identifiable",
	"p_nonidentifiable",
	"p_unknown",
	"p_assembly_success",
	"z_mean",
	"z_var",
	"z_mean_analytic",
	"se_binomial",
)


def _binomial_se(probability: float, trials: int) -> float:
	return math.sqrt(probability * (1.0 - probability) / trials)


@dataclass(frozen=True)
class SummaryRow:
	"""Per-read-length aggregates; `p_assembly_success` is None when not assembled."""

	read_length: int
	trials: int
	p_identifiable: float
	p_nonidentifiable: float
	p_unknown: float
	p_assembly_success: float | None
	z_mean: float
	z_var: float
	z_mean_analytic: float
	se_binomial: float

	@property
	def moment_ratio(self) -> float:
		"""Var(Z) / E(Z)^2 of the empirical moments (nan when the mean is 0)."""
		if self.z_mean == 0:
			return math.nan
		return self.z_var / self.z_mean**2

	@property
	def se_nonidentifiable(self) -> float:
		"""Binomial standard error of p_nonidentifiable."""
		return _binomial_se(self.p_nonidentifiable, self.trials)

	@property
	def se_unknown(self) -> float:
		"""Binomial standard error of p_unknown."""
		return _binomial_se(self.p_unknown, self.trials)

	@property
	def se_assembly(self) -> float | None:
		"""Binomial standard error of p_assembly_success."""
		if self.p_assembly_success is None:
			return None
		return _binomial_se(self.p_assembly_success, self.trials)

	@property
	def se_z_mean(self) -> float:
		"""Standard error of the empirical mean of Z."""
		return math.sqrt(self.z_var / self.trials)

	def fields(self) -> tuple[str, ...]:
		"""CSV cells in header order."""
		assembly = self.p_assembly_success
		return (
			str(self.read_length),
			str(self.trials),
			_format_float(self.p_identifiable),
			_format_float(self.p_nonidentifiable),
			_format_float(self.p_unknown),
			"" if assembly is None else _format_float(assembly),
			_format_float(self.z_mean),
			_format_float(self.z_var),
			_format_float(self.z_mean_analytic),
			_format_float(self.se_binomial),
		)


@dataclass(frozen=True)
class ExperimentSummary:
	"""The configuration and one row per read length, in configuration order."""

	config: ExperimentConfig
	rows: tuple[SummaryRow, ...]

	def row(self, read_length: int) -> SummaryRow:
		"""The row of `read_length`."""
		for row in self.rows:
			if row.read_length == read_length:
				return row
		msg = f"no row for L={read_length}"
		raise KeyError(msg)


def _format_float(value: float) -> str:
	return format(value, ".12g")


def _summarise(
	config: ExperimentConfig, read_length: int, results: Sequence[TrialResult]
) -> SummaryRow:
	trials = len(results)
	tags = [result.verdict for result in results]
	p_identifiable = tags.count(VerdictTag.IDENTIFIABLE) / trials
	p_nonidentifiable = tags.count(VerdictTag.NON_IDENTIFIABLE) / trials
	z_counts = np.array([result.z_count for result in results], dtype=np.float64)

	p_assembly = None
	if config.assemble:
		p_assembly = sum(bool(result.assembly_recovered) for result in results) / trials

	analytic = 0.0
	if read_length <= config.genome_length - 2:  # noqa: PLR2004
		analytic = analytic_expectation_z(
			config.spec(read_length), read_length, config.eta_for(read_length)
		)
	return SummaryRow(
		read_length=read_length,
		trials=trials,
		p_identifiable=p_identifiable,
		p_nonidentifiable=p_nonidentifiable,
		p_unknown=(tags.count(VerdictTag.UNKNOWN) + tags.count(None)) / trials,
		p_assembly_success=p_assembly,
		z_mean=float(z_counts.mean()),
		z_var=float(z_counts.var(ddof=1)) if trials > 1 else 0.0,
		z_mean_analytic=analytic,
		se_binomial=_binomial_se(p_identifiable, trials),
	)


def _repeat_probability_row(config: ExperimentConfig, ell: int) -> SummaryRow:
	"""Window-pair frequency of genomes 1 and 2 (genome 1 twice when M = 1)."""
	second = config.dists[1] if config.num_genomes > 1 else config.dists[0]
	estimate = estimate_repeat_probability(
		config.dists[0], second, ell, config.trials, child_seed(config.seed, ell)
	)
	frequency = estimate.frequency
	return SummaryRow(
		read_length=ell,
		trials=estimate.trials,
		p_identifiable=0.0,
		p_nonidentifiable=0.0,
		p_unknown=1.0,
		p_assembly_success=None,
		z_mean=frequency,
		z_var=frequency * (1.0 - frequency),
		z_mean_analytic=estimate.analytic,
		se_binomial=estimate.standard_error,
	)


def _log_row(mode: ExperimentMode, row: SummaryRow) -> None:
	if mode is ExperimentMode.MOMENTS:
		logger.info(
			"L=%d: %d trials, mean Z=%.4g (exact %.4g), Var(Z)/E(Z)^2=%.4g",
			row.read_length,
			row.trials,
			row.z_mean,
			row.z_mean_analytic,
			row.moment_ratio,
		)
		return
	logger.info(
		"L=%d: %d trials, P(identifiable)=%.3f, P(nonidentifiable)=%.3f, mean Z=%.4g",
		row.read_length,
		row.trials,
		row.p_identifiable,
		row.p_nonidentifiable,
		row.z_mean,
	)
	logger.debug(
		"L=%d standard errors: nonidentifiable %.3g, unknown %.3g, assembly %s",
		row.read_length,
		row.se_nonidentifiable,
		row.se_unknown,
		"n/a" if row.se_assembly is None else format(row.se_assembly, ".3g"),
	)


def _run_trials(config: ExperimentConfig, workers: int) -> list[TrialResult]:
	"""All trials in (L, trial) order, however many workers run them."""
	tasks = list(itertools.product(config.read_lengths, range(config.trials)))
	job = functools.partial(run_trial, config)
	if workers <= 1:
		return [job(read_length, trial) for read_length, trial in tasks]
	chunksize = max(1, len(tasks) // (workers * 4))
	with multiprocessing.Pool(workers) as pool:
		return pool.starmap(job, tasks, chunksize=chunksize)


def run_experiment(
	config: ExperimentConfig, out: TextSource | None = None, workers: int = 1
) -> ExperimentSummary:
	"""Run the experiment, aggregate per read length and optionally write the CSV.

	The summary depends only on the configuration: trial seeds are derived from
	(seed, L, trial) and results are merged in (L, trial) order.

	Args:
		config: the experiment.
		out: CSV destination ("-" for stdout); nothing is written when None.
		workers: number of worker processes.
	"""
	if workers < 1:
		msg = f"workers must be >= 1, got {workers}"
		raise ValidationError(msg)

	if config.mode is ExperimentMode.REPEAT_PROB:
		rows = tuple(_repeat_probability_row(config, ell) for ell in config.read_lengths)
	else:
		results = _run_trials(config, workers)
		by_length: dict[int, list[TrialResult]] = {}
		for result in results:
			by_length.setdefault(result.read_length, []).append(result)
		rows = tuple(
			_summarise(config, read_length, by_length[read_length])
			for read_length in config.read_lengths
		)
	if config.scales:
		rows += tuple(moment_ratio_sequence(config, config.scales, workers))
	for row in rows:
		_log_row(config.mode, row)

	summary = ExperimentSummary(config=config, rows=rows)
	if out is not None:
		write_summary_csv(summary.rows, out)
	return summary


def write_summary_csv(rows: Iterable[SummaryRow], destination: TextSource) -> None:
	"""Write the header and one line per row."""
	with open_text_output(destination) as stream:
		writer = csv.writer(stream, lineterminator="\n")
		writer.writerow(CSV_HEADER)
		for row in rows:
			writer.writerow(row.fields())


def _parse_row(cells: list[str], line_number: int) -> SummaryRow:
	if len(cells) != len(CSV_HEADER):
		msg = f"expected {len(CSV_HEADER)} columns, got {len(cells)}"
		raise ParseError(msg, line_number)
	try:
		floats = [float(cell) for cell in cells[2:5] + cells[6:]]
		return SummaryRow(
			read_length=int(cells[0]),
			trials=int(cells[1]),
			p_identifiable=floats[0],
			p_nonidentifiable=floats[1],
			p_unknown=floats[2],
			p_assembly_success=float(cells[5]) if cells[5] else None,
			z_mean=floats[3],
			z_var=floats[4],
			z_mean_analytic=floats[5],
			se_binomial=floats[6],
		)
	except ValueError:
		msg = "malformed number"
		raise ParseError(msg, line_number) from None


def read_summary_csv(source: TextSource) -> list[SummaryRow]:
	"""Read the rows of a summary CSV."""
	with open_text_input(source) as stream:
		reader = csv.reader(stream)
		header = next(reader, None)
		if header is None or tuple(header) != CSV_HEADER:
			msg = f"expected header {','.join(CSV_HEADER)}"
			raise ParseError(msg, 1)
		return [
			_parse_row(cells, line_number)
			for line_number, cells in enumerate(reader, start=2)
			if cells
		]


def moment_ratio_sequence(
	config: ExperimentConfig,
	scales: Sequence[tuple[int, int, int]],
	workers: int = 1,
) -> list[SummaryRow]:
	"""Run `config` in moments mode at each (M, N, L) scale point, one row each."""
	rows = []
	for num_genomes, genome_length, read_length in scales:
		scaled = config.with_scale(num_genomes, genome_length, read_length)
		summary = run_experiment(scaled, workers=workers)
		logger.info(
			"scale M=%d N=%d L=%d measured", num_genomes, genome_length, read_length
		)
		rows.append(summary.rows[0])
	return rows
