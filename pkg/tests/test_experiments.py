"""Tests for the experiments package."""

import dataclasses
import io
import math
from pathlib import Path

import pytest

from experiments import (
	CSV_HEADER,
	ExperimentConfig,
	ExperimentMode,
	analytic_expectation_z,
	load_config,
	moment_ratio_sequence,
	parse_config,
	plot_summary,
	read_summary_csv,
	run_experiment,
	run_trial,
	theorem_bounds_report,
	write_summary_csv,
)
from identifiability import VerdictTag
from models import Alphabet, Distribution, ProblemSpec
from utils.exceptions import ParseError, ValidationError

ACGT = Alphabet.from_symbols("ACGT")

CONFIG_TEXT = """\
# moments at two read lengths
mode = moments
genomes = 4
length = 1000
read_lengths = 6, 7
trials = 10
seed = 3
eta = 0.1
dist = uniform
dist.2 = 0.1,0.2,0.3,0.4
"""

MOMENTS_LINES = ["mode=moments", "genomes=2", "length=50", "read_lengths=5"]


def small_config(**options: float | bool | None) -> ExperimentConfig:
	return ExperimentConfig.uniform(
		ExperimentMode.IDENTIFIABILITY, 3, 60, [4, 6], 6, seed=11, **options
	)


def test_parse_config() -> None:
	config = parse_config(CONFIG_TEXT.splitlines())
	assert config.mode is ExperimentMode.MOMENTS
	assert config.num_genomes == 4
	assert config.genome_length == 1000
	assert config.read_lengths == (6, 7)
	assert config.trials == 10
	assert config.seed == 3
	assert config.eta == 0.1
	assert config.dists[0] == Distribution.uniform(ACGT)
	assert config.dists[1].probs == pytest.approx((0.1, 0.2, 0.3, 0.4))
	assert config.dists[2] == config.dists[0]
	assert not config.assemble


def test_parse_config_defaults() -> None:
	config = parse_config(["genomes=2", "length=50", "read_lengths=5"])
	assert config.mode is ExperimentMode.IDENTIFIABILITY
	assert config.trials == 100
	assert config.seed == 0
	assert config.eta is None
	assert config.verdict_eta == 0.0
	assert config.eta_for(5) == pytest.approx(0.025)


def test_assembly_mode_always_assembles() -> None:
	config = parse_config(["mode=assembly", "genomes=2", "length=50", "read_lengths=5"])
	assert config.assemble


def test_load_config_from_file(tmp_path: Path) -> None:
	path = tmp_path / "experiment.cfg"
	path.write_text(CONFIG_TEXT, encoding="utf-8")
	assert load_config(path) == parse_config(CONFIG_TEXT.splitlines())


@pytest.mark.parametrize(
	("lines", "match"),
	[
		(["genomes=2", "length=50", "read_lengths=5", "colour=blue"], "line 4"),
		(["genomes=2", "length=50"], "read_lengths"),
		(["genomes=two", "length=50", "read_lengths=5"], "line 1"),
		(["genomes=2", "length=50", "read_lengths=5", "dist.3=uniform"], "line 4"),
		(["genomes=2", "length=50", "read_lengths=5", "mode=sweep"], "line 4"),
		(["genomes=2", "length=50", "read_lengths=5", "dist=0.5,0.5"], "line 4"),
		(["genomes=2", "length=50", "read_lengths=1"], "read length"),
		(["genomes=2", "length=50", "read_lengths=5", "eta=0.7"], "eta"),
		(["genomes=3", "length=60", "read_lengths=5,5", "trials=4"], "repeat"),
		([*MOMENTS_LINES, "assemble=1"], "assemble"),
		(["genomes=2", "length=50", "read_lengths=5", "scales=4x80x5"], "moments"),
		([*MOMENTS_LINES, "scales=4x80"], "line 5"),
		([*MOMENTS_LINES, "scales=4x8x9"], "scale"),
	],
)
def test_parse_config_errors(lines: list[str], match: str) -> None:
	with pytest.raises(ParseError, match=match):
		parse_config(lines)


def test_parse_config_scales() -> None:
	config = parse_config(
		[
			"mode=moments",
			"genomes=4",
			"length=1000",
			"read_lengths=6",
			"scales=8x4000x7, 16X16000x8",
		]
	)
	assert config.scales == ((8, 4000, 7), (16, 16000, 8))
	assert config.with_scale(8, 4000, 7).scales == ()


def test_config_validation() -> None:
	with pytest.raises(ValidationError):
		ExperimentConfig.uniform(ExperimentMode.MOMENTS, 2, 50, [5], 0, seed=0)
	with pytest.raises(ValidationError):
		ExperimentConfig.uniform(ExperimentMode.MOMENTS, 2, 50, [], 5, seed=0)
	with pytest.raises(ValidationError):
		ExperimentConfig.uniform(
			ExperimentMode.MOMENTS, 2, 50, [5], 5, seed=0, epsilon=-1.0
		)


def test_with_scale() -> None:
	config = small_config(eta=0.1)
	scaled = config.with_scale(8, 4000, 7)
	assert (scaled.num_genomes, scaled.genome_length) == (8, 4000)
	assert scaled.read_lengths == (7,)
	assert len(scaled.dists) == 8
	assert scaled.eta == 0.1
	mixed = dataclasses.replace(
		config,
		dists=(Distribution.uniform(ACGT),) * 2 + (Distribution.point_mass("A", ACGT),),
	)
	with pytest.raises(ValidationError):
		mixed.with_scale(8, 4000, 7)


def test_run_trial_is_deterministic() -> None:
	config = small_config(assemble=True)
	first = run_trial(config, 4, 2)
	second = run_trial(config, 4, 2)
	assert dataclasses.replace(first, elapsed_ms=0.0) == dataclasses.replace(
		second, elapsed_ms=0.0
	)
	assert first.assembly_recovered is not None


def test_identical_genomes_are_never_identifiable() -> None:
	dists = (Distribution.point_mass("A", ACGT),) * 2
	config = ExperimentConfig(ExperimentMode.IDENTIFIABILITY, 2, 20, (5,), 3, 0, dists)
	summary = run_experiment(config)
	row = summary.row(5)
	assert row.p_identifiable == 0.0
	assert row.p_unknown + row.p_nonidentifiable == 1.0
	assert run_trial(config, 5, 0).verdict is not VerdictTag.IDENTIFIABLE


def test_moments_mode_measures_only_z() -> None:
	config = ExperimentConfig.uniform(
		ExperimentMode.MOMENTS, 3, 60, [4], 6, seed=8, eta=0.1
	)
	result = run_trial(config, 4, 0)
	assert result.verdict is None
	assert result.assembly_recovered is None
	row = run_experiment(config).row(4)
	assert (row.p_identifiable, row.p_nonidentifiable, row.p_unknown) == (0.0, 0.0, 1.0)
	assert row.p_assembly_success is None
	assert row.z_mean_analytic > 0


def test_moments_mode_runs_configured_scales() -> None:
	base = ExperimentConfig.uniform(
		ExperimentMode.MOMENTS, 3, 60, [4], 5, seed=1, eta=0.1
	)
	config = dataclasses.replace(base, scales=((4, 80, 5), (5, 100, 6)))
	rows = run_experiment(config).rows
	assert [row.read_length for row in rows] == [4, 5, 6]
	assert rows[0] == run_experiment(base).rows[0]
	assert rows[1] == run_experiment(base.with_scale(4, 80, 5)).rows[0]
	assert all(row.trials == 5 for row in rows)


def test_single_trial_rows_hold_indicators() -> None:
	config = ExperimentConfig.uniform(
		ExperimentMode.IDENTIFIABILITY, 2, 40, [12], 1, seed=5
	)
	row = run_experiment(config).row(12)
	assert row.trials == 1
	assert {row.p_identifiable, row.p_nonidentifiable, row.p_unknown} <= {0.0, 1.0}
	assert row.p_identifiable + row.p_nonidentifiable + row.p_unknown == 1.0
	assert row.z_var == 0.0
	assert row.p_assembly_success is None


def test_summary_csv_is_identical_across_worker_counts() -> None:
	config = small_config(assemble=True)
	serial, parallel = io.StringIO(), io.StringIO()
	run_experiment(config, out=serial, workers=1)
	run_experiment(config, out=parallel, workers=2)
	assert serial.getvalue() == parallel.getvalue()
	lines = serial.getvalue().splitlines()
	assert lines[0] == ",".join(CSV_HEADER)
	assert [line.split(",")[0] for line in lines[1:]] == ["4", "6"]


def test_run_experiment_rejects_bad_worker_count() -> None:
	with pytest.raises(ValidationError):
		run_experiment(small_config(), workers=0)


def test_summary_csv_round_trip(tmp_path: Path) -> None:
	summary = run_experiment(small_config(assemble=True))
	path = tmp_path / "summary.csv"
	write_summary_csv(summary.rows, path)
	parsed = read_summary_csv(path)
	assert [row.fields() for row in parsed] == [row.fields() for row in summary.rows]


def test_summary_csv_rejects_bad_input() -> None:
	with pytest.raises(ParseError, match="line 1"):
		read_summary_csv(io.StringIO("a,b\n"))
	header = ",".join(CSV_HEADER)
	with pytest.raises(ParseError, match="line 2"):
		read_summary_csv(io.StringIO(f"{header}\n4,6,x,0,0,,0,0,0,0\n"))


def test_repeat_probability_mode() -> None:
	config = ExperimentConfig.uniform(
		ExperimentMode.REPEAT_PROB, 2, 50, [2, 3], 50_000, seed=7
	)
	summary = run_experiment(config)
	for ell in (2, 3):
		row = summary.row(ell)
		assert row.p_unknown == 1.0
		assert row.z_mean_analytic == pytest.approx(4.0**-ell)
		assert abs(row.z_mean - row.z_mean_analytic) <= 4 * row.se_binomial


def test_analytic_expectation_z() -> None:
	spec = ProblemSpec.uniform(4, 1000, 6)
	assert analytic_expectation_z(spec, 6, 0.1) == pytest.approx(1.1646, abs=1e-4)
	assert analytic_expectation_z(spec, 6, 0.4999) == 0.0
	large = ProblemSpec.uniform(16, 10000, 8)
	assert analytic_expectation_z(large, 8) == pytest.approx(18.29, rel=1e-3)
	disjoint = ProblemSpec(
		2,
		100,
		4,
		(Distribution.point_mass("A", ACGT), Distribution.point_mass("C", ACGT)),
	)
	assert analytic_expectation_z(disjoint, 4, 0.1) == 0.0


def test_theorem_bounds_report() -> None:
	report = theorem_bounds_report(ProblemSpec.uniform(4, 2000, 26), 26)
	assert report.upper_threshold == pytest.approx(12.966, abs=1e-3)
	assert report.lower_threshold == pytest.approx(6.483, abs=1e-3)
	assert report.overlap_bound == pytest.approx(6.199e-3, rel=1e-3)
	assert report.nonoverlap_bound == pytest.approx(5.684e-8, rel=1e-3)
	assert report.nonidentifiability_bound == pytest.approx(6.2e-3, rel=1e-2)
	assert report.theorem_one_bound > 0
	names = [name for name, _ in report.items()]
	assert names[:2] == ["upper_threshold", "lower_threshold"]


def test_theorem_bounds_report_lower_regime() -> None:
	spec = ProblemSpec.uniform(16, 10000, 8)
	report = theorem_bounds_report(spec, 8, eta=0.1)
	assert report.lower_threshold == pytest.approx(8.644, abs=1e-3)
	assert report.exclusion_bound is not None
	assert report.exclusion_bound < 1e-9
	assert report.union_bound < 1e-9
	assert report.expected_z == pytest.approx(14.636, abs=1e-3)
	assert report.expected_z_lower == pytest.approx(report.expected_z * 16 / 15, rel=1e-3)


def test_theorem_bounds_report_with_disjoint_supports() -> None:
	dists = (
		Distribution.from_values([0.5, 0.5, 0.0, 0.0], ACGT),
		Distribution.from_values([0.0, 0.0, 0.5, 0.5], ACGT),
	)
	report = theorem_bounds_report(ProblemSpec(2, 100, 4, dists), 4)
	assert report.lower_threshold is None
	assert report.min_genomes_lower is None
	assert math.isinf(report.f_star)
	assert report.expected_z == 0.0
	assert report.expected_z_lower == 0.0


@pytest.mark.parametrize("read_length", [1100, 2500, 5000])
def test_theorem_bounds_report_at_long_reads(read_length: int) -> None:
	report = theorem_bounds_report(ProblemSpec.uniform(4, 5000, 26), read_length)
	assert report.max_genomes_upper == math.inf
	assert report.min_genomes_lower == math.inf
	assert report.overlap_bound < 1e-100
	assert report.nonoverlap_bound < 1e-100
	assert report.theorem_one_bound < 1e-100
	assert report.expected_z_lower < 1e-100


def test_theorem_bounds_report_with_point_masses() -> None:
	dists = (Distribution.point_mass("A", ACGT),) * 2
	report = theorem_bounds_report(ProblemSpec(2, 50, 5, dists), 5)
	assert report.h_star == 0.0
	assert report.upper_threshold is None
	assert report.max_genomes_upper is None
	assert report.lower_threshold is None
	assert report.min_genomes_lower is None
	assert report.expected_z > 0


def test_plot_summary(tmp_path: Path) -> None:
	summary = run_experiment(small_config(assemble=True))
	path = tmp_path / "summary.png"
	plot_summary(summary.rows, path, title="small")
	assert path.read_bytes().startswith(b"\x89PNG")


@pytest.mark.slow
def test_identifiable_above_the_upper_threshold() -> None:
	config = ExperimentConfig.uniform(
		ExperimentMode.IDENTIFIABILITY, 4, 2000, [26], 200, seed=1, assemble=True
	)
	row = run_experiment(config, workers=4).row(26)
	assert row.p_identifiable >= 0.95
	assert row.p_assembly_success is not None
	assert row.p_assembly_success >= 0.95


@pytest.mark.slow
def test_swaps_below_the_lower_threshold() -> None:
	config = ExperimentConfig.uniform(
		ExperimentMode.IDENTIFIABILITY, 16, 10000, [8], 100, seed=2
	)
	row = run_experiment(config, workers=4).row(8)
	assert row.p_nonidentifiable >= 0.90


@pytest.mark.slow
def test_z_mean_matches_its_expectation() -> None:
	config = ExperimentConfig.uniform(
		ExperimentMode.MOMENTS, 4, 1000, [6], 5000, seed=3, eta=0.1
	)
	row = run_experiment(config, workers=4).row(6)
	assert row.z_mean == pytest.approx(1.1646, rel=0.05)
	assert row.z_mean_analytic == pytest.approx(1.1646, abs=1e-4)


@pytest.mark.slow
def test_moment_ratio_decreases_with_scale() -> None:
	config = ExperimentConfig.uniform(
		ExperimentMode.MOMENTS, 4, 1000, [6], 400, seed=4, eta=0.1
	)
	scales = [(4, 1000, 6), (8, 4000, 7), (16, 16000, 8)]
	rows = moment_ratio_sequence(config, scales, workers=4)
	ratios = [row.moment_ratio for row in rows]
	assert ratios[0] > ratios[1] > ratios[2]
