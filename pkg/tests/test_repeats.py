"""Tests for the repeats package."""

import io
import itertools
import math

import numpy as np
import pytest

from models import Alphabet, Distribution, ProblemSpec, Sample, sample_metagenome
from repeats import (
	RepeatWitness,
	SwapWitness,
	WindowIndex,
	all_segments_distinct,
	count_b_events,
	default_eta,
	estimate_repeat_probability,
	exclusion_bound,
	find_repeats,
	find_swap_witness,
	is_t_event,
	nonoverlap_repeat_bound,
	overlap_repeat_bound,
	position_range,
	repeat_probability,
	swap_range,
	t_event_bound,
	t_event_exists,
	write_witnesses,
)
from utils.exceptions import ValidationError

ACGT = Alphabet.from_symbols("ACGT")
UNIFORM = Distribution.uniform(ACGT)
LOG4 = math.log(4)

# X = (awb, cwd, awd, cwb) with a = "A", c = "C", w = "GG", b = "T", d = "A"
SWAP_SAMPLE = Sample.from_strings(["AGGGT", "CGGGA"])

T_EVENT_SAMPLE = Sample.from_strings(["AGGT", "CGGA", "AGGA", "CGGT"])


def brute_force_repeats(sample: Sample, length: int) -> list[tuple[int, int, int, int]]:
	windows = [
		(m, i, genome[i - 1 : i - 1 + length])
		for m, genome in enumerate(sample.genomes, start=1)
		for i in range(1, sample.genome_length - length + 2)
	]
	return [
		(m, i, m2, i2)
		for index, (m, i, word) in enumerate(windows)
		for m2, i2, word2 in windows[index + 1 :]
		if word == word2
	]


@pytest.mark.parametrize(
	("genomes", "length", "expected"),
	[
		(("AAA",), 2, [RepeatWitness(1, 1, 1, 2, 2, overlapping=True)]),
		(("ABAB",), 2, [RepeatWitness(1, 1, 1, 3, 2, overlapping=False)]),
		(("ABC", "XBC"), 2, [RepeatWitness(1, 2, 2, 2, 2, overlapping=False)]),
		(("ABCD",), 2, []),
	],
)
def test_find_repeats_examples(
	genomes: tuple[str, ...], length: int, expected: list[RepeatWitness]
) -> None:
	assert find_repeats(Sample.from_strings(genomes), length) == expected


@pytest.mark.parametrize("length", [1, 2, 3, 40])
@pytest.mark.parametrize("seed", [3, 11])
def test_find_repeats_agrees_with_all_pairs(length: int, seed: int) -> None:
	alphabet = Alphabet.from_symbols("AB")
	dist = Distribution.uniform(alphabet)
	sample = sample_metagenome(ProblemSpec(3, 48, length, (dist,) * 3), seed)
	found = find_repeats(sample, length)
	assert [(r.m, r.i, r.m2, r.i2) for r in found] == brute_force_repeats(sample, length)
	assert all(r.verify(sample) for r in found)
	assert all_segments_distinct(sample, length) == (not found)


def test_rolling_hash_keys_confirm_windows() -> None:
	sample = sample_metagenome(ProblemSpec.uniform(4, 300, 40), 5)
	index = WindowIndex(sample, 40)
	assert not index.exact
	doubled = sample.replace_genomes([sample.genomes[0], sample.genomes[0]])
	repeats = find_repeats(doubled, 40)
	assert len(repeats) == 300 - 40 + 1
	assert all(r.m == 1 and r.m2 == 2 and r.i == r.i2 for r in repeats)


def test_find_repeats_limit_and_range() -> None:
	sample = Sample.from_strings(["AAAAAA"])
	assert len(find_repeats(sample, 2, limit=3)) == 3
	assert find_repeats(sample, 2, limit=0) == []
	with pytest.raises(ValidationError):
		find_repeats(sample, 7)
	with pytest.raises(ValidationError):
		find_repeats(sample, 2, limit=-1)


@pytest.mark.parametrize(
	("genomes", "length", "expected"),
	[(("ABCD",), 2, True), (("AABA",), 1, False), (("ABC", "ABD"), 2, False)],
)
def test_all_segments_distinct(
	genomes: tuple[str, ...], length: int, expected: bool
) -> None:
	assert all_segments_distinct(Sample.from_strings(genomes), length) is expected


def test_repeat_witness_validation() -> None:
	with pytest.raises(ValidationError):
		RepeatWitness(1, 3, 1, 1, 2, overlapping=False)
	with pytest.raises(ValidationError):
		RepeatWitness(1, 1, 1, 2, 2, overlapping=False)
	assert RepeatWitness.between(1, 1, 2, 1, 3).overlapping is False


def test_write_witnesses() -> None:
	buffer = io.StringIO()
	write_witnesses(
		[RepeatWitness.between(1, 1, 1, 2, 2), SwapWitness(1, 2, 2, "GGG")], buffer
	)
	assert buffer.getvalue() == "S 1 1 1 2 2 1\nSWAP 1 2 2 GGG\n"


def test_repeat_probability() -> None:
	assert repeat_probability(UNIFORM, UNIFORM, 0) == 1.0
	assert repeat_probability(UNIFORM, UNIFORM, 5) == pytest.approx(4.0**-5, rel=1e-12)
	a = Distribution.point_mass("A", ACGT)
	c = Distribution.point_mass("C", ACGT)
	assert repeat_probability(a, c, 3) == 0.0
	with pytest.raises(ValidationError):
		repeat_probability(UNIFORM, UNIFORM, -1)


def test_repeat_bounds() -> None:
	assert overlap_repeat_bound(4, 2000, 1, LOG4) == 8000
	assert nonoverlap_repeat_bound(4, 2000, 1, LOG4) == 6.4e7
	assert overlap_repeat_bound(4, 2000, 26, LOG4) == pytest.approx(6.199e-3, rel=1e-3)
	assert nonoverlap_repeat_bound(4, 2000, 26, LOG4) == pytest.approx(5.684e-8, rel=1e-3)
	assert t_event_bound(10, LOG4) == pytest.approx(4.0**-20)
	with pytest.raises(ValidationError):
		overlap_repeat_bound(0, 2000, 26, LOG4)


def test_repeat_bounds_decay_in_read_length() -> None:
	lengths = range(30, 80)
	overlap = [overlap_repeat_bound(4, 2000, length, LOG4) for length in lengths]
	nonoverlap = [nonoverlap_repeat_bound(4, 2000, length, LOG4) for length in lengths]
	assert all(later < earlier for earlier, later in itertools.pairwise(overlap))
	assert all(later < earlier for earlier, later in itertools.pairwise(nonoverlap))


def test_exclusion_bound() -> None:
	assert exclusion_bound(10000, 8, 1000, 16, LOG4, LOG4) < 1e-9
	assert exclusion_bound(10000, 8, 1, 16, LOG4, LOG4) >= 1.0
	with pytest.raises(ValidationError):
		exclusion_bound(10, 4, 8, 2, LOG4, LOG4)


def test_estimate_repeat_probability() -> None:
	estimate = estimate_repeat_probability(UNIFORM, UNIFORM, 3, 200_000, seed=1)
	assert estimate.analytic == pytest.approx(1 / 64)
	assert estimate.within(4)
	again = estimate_repeat_probability(UNIFORM, UNIFORM, 3, 200_000, seed=1)
	assert again == estimate


@pytest.mark.slow
def test_estimate_repeat_probability_ten_million_trials() -> None:
	estimate = estimate_repeat_probability(UNIFORM, UNIFORM, 5, 10_000_000, seed=2024)
	assert estimate.analytic == pytest.approx(9.765625e-4)
	assert estimate.within(3)


def test_default_eta_and_ranges() -> None:
	assert default_eta(500, 1000) == pytest.approx(0.125)
	assert default_eta(100, 1000) == pytest.approx(0.025)
	assert position_range(1000, 6, 0.1) == range(100, 895)
	assert len(position_range(1000, 6, 0.1)) == 795
	assert position_range(5, 3, 0.0) == range(1, 3)
	assert swap_range(5, 3, 0.0) == range(2, 3)
	assert not position_range(10, 3, 0.45)
	with pytest.raises(ValidationError):
		position_range(10, 3, 0.5)


def test_is_t_event() -> None:
	assert is_t_event(T_EVENT_SAMPLE, 2, 1, 2, 3, 4, 2)
	assert is_t_event(Sample.from_strings(["AGGT"] * 4), 2, 1, 2, 3, 4, 2)
	altered = Sample.from_strings(["AGGT", "CGGA", "AGGC", "CGGT"])
	assert not is_t_event(altered, 2, 1, 2, 3, 4, 2)
	with pytest.raises(ValidationError):
		is_t_event(T_EVENT_SAMPLE, 2, 1, 2, 3, 3, 2)
	with pytest.raises(ValidationError):
		is_t_event(T_EVENT_SAMPLE, 3, 1, 2, 3, 4, 2)
	with pytest.raises(ValidationError):
		is_t_event(T_EVENT_SAMPLE, 2, 1, 2, 3, 5, 2)


def test_t_event_exists() -> None:
	assert t_event_exists(T_EVENT_SAMPLE, 2, 1, 2, 2)
	assert not t_event_exists(Sample.from_strings(["AGGT", "CGGA"]), 2, 1, 2, 2)


def test_find_swap_witness_example() -> None:
	sample = Sample.from_strings(["AGGGT", "CGGGA"])
	witness = find_swap_witness(sample, 3, eta=0.0)
	assert witness is not None
	assert witness == SwapWitness(1, 2, 2, "GGG")
	assert witness.verify(sample)
	assert witness.parts(sample) == ("A", "T", "C", "A")
	assert witness.format_line() == "SWAP 1 2 2 GGG"


def test_find_swap_witness_rejections() -> None:
	twins = Sample.from_strings(["ACGTAC", "ACGTAC"])
	assert find_swap_witness(twins, 2, eta=0.0) is None
	assert find_swap_witness(T_EVENT_SAMPLE, 2, eta=0.0) is None
	distinct = Sample.from_strings(["ACGTTGCA", "CATGGTAC"])
	assert all_segments_distinct(distinct, 3)
	assert find_swap_witness(distinct, 3, eta=0.0) is None
	with pytest.raises(ValidationError):
		find_swap_witness(distinct, 7, eta=0.0)


def test_find_swap_witness_on_random_samples_verifies() -> None:
	sample = sample_metagenome(ProblemSpec.uniform(16, 2000, 6), 17)
	witness = find_swap_witness(sample, 6)
	assert witness is not None
	assert witness.verify(sample)
	eta = default_eta(6, 2000)
	assert witness.j in swap_range(2000, 6, eta)
	assert not t_event_exists(sample, witness.j, witness.m, witness.m2, 6)


def test_swap_witness_validation() -> None:
	with pytest.raises(ValidationError):
		SwapWitness(1, 1, 2, "GGG")
	with pytest.raises(ValidationError):
		SwapWitness(1, 2, 1, "GGG")
	with pytest.raises(ValidationError):
		SwapWitness(1, 2, 2, "")
	twins = Sample.from_strings(["AGGGT", "AGGGT"])
	assert not SwapWitness(1, 2, 2, "GGG").verify(twins)
	assert not SwapWitness(1, 3, 2, "GGG").matches(SWAP_SAMPLE)


@pytest.mark.parametrize(
	("genomes", "length", "expected"),
	[
		(("AGGGT", "CGGGA"), 3, 1),
		(("ACGTAC", "ACGTAC"), 2, 4),
		(("ACGTTGCA", "CATGGTAC"), 3, 0),
	],
)
def test_count_b_events(genomes: tuple[str, ...], length: int, expected: int) -> None:
	assert count_b_events(Sample.from_strings(genomes), length, eta=0.0) == expected


def test_count_b_events_matches_direct_scan() -> None:
	sample = sample_metagenome(ProblemSpec.uniform(5, 400, 4), 23)
	eta = default_eta(4, 400)
	expected = sum(
		sample.genomes[m][j - 1 : j + 3] == sample.genomes[m2][j - 1 : j + 3]
		for m in range(5)
		for m2 in range(m + 1, 5)
		for j in position_range(400, 4, eta)
	)
	assert count_b_events(sample, 4) == expected


def test_count_b_events_with_hashed_windows() -> None:
	sample = sample_metagenome(ProblemSpec.uniform(1, 200, 40), 9)
	doubled = sample.replace_genomes(sample.genomes * 2)
	assert count_b_events(doubled, 40, eta=0.0) == len(position_range(200, 40, 0.0))
	shifted = np.roll(np.frombuffer(sample.genomes[0].encode(), dtype=np.uint8), 1)
	other = sample.replace_genomes([sample.genomes[0], shifted.tobytes().decode()])
	assert count_b_events(other, 40, eta=0.0) <= 1


def test_no_b_event_means_no_swap() -> None:
	counts = []
	for seed, read_length in itertools.product(range(20), (2, 8)):
		sample = sample_metagenome(ProblemSpec.uniform(3, 60, read_length), seed)
		count = count_b_events(sample, read_length, eta=0.1)
		counts.append(count)
		if count == 0:
			assert find_swap_witness(sample, read_length, eta=0.1) is None
	assert 0 in counts
	assert max(counts) > 0
