"""Copyright 2022.

This program is free software: you can redistribute it and/or modify
it under the terms of the GNU General Public License as published by
the Free Software Foundation, either version 3 of the License, or
(at your option) any later version.

This program is distributed in the hope that it will be useful,
but WITHOUT ANY WARRANTY; without even the implied warranty of
MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
GNU General Public License for more details.

You should have received a copy of the GNU General Public License
along with this program.  If not, see <http://www.gnu.org/licenses/>.

SPDX-License-Identifier: GPL-3.0-or-later
"""

import argparse
import logging
import os
import sys
from collections.abc import Callable, Sequence
from typing import NoReturn

from assembly import greedy_assemble
from experiments import (
	ExperimentMode,
	load_config,
	plot_summary,
	read_summary_csv,
	run_experiment,
	theorem_bounds_report,
	threshold_pair,
)
from identifiability import check_identifiable
from models import (
	Alphabet,
	Distribution,
	ProblemSpec,
	Sample,
	entropy_bounds,
	read_sample,
	sample_metagenome,
	write_sample,
)
from reads import extract_reads, read_reads, write_reads
from repeats import RepeatWitness, SwapWitness, find_repeats, write_witnesses
from utils.common import open_text_output
from utils.constants import DEFAULT_ALPHABET, DUMP_LIMIT, THREADS_ENV, VERSION, ExitCode
from utils.exceptions import ValidationError

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"

Command = Callable[[argparse.Namespace], int]


def _threads_from_env() -> int:
	"""Worker count from METASHOT_THREADS, 1 when unset."""
	value = os.getenv(THREADS_ENV, "1")
	try:
		return int(value)
	except ValueError:
		msg = f"{THREADS_ENV} must be an integer, got {value!r}"
		raise ValidationError(msg) from None


class _ArgumentParser(argparse.ArgumentParser):
	"""Argument parser whose usage errors exit with ExitCode.USAGE."""

	def error(self, message: str) -> NoReturn:
		"""Prints usage and the message, then exits with code 1."""
		self.print_usage(sys.stderr)
		self.exit(ExitCode.USAGE, f"{self.prog}: error: {message}\n")


class Metashot:
	"""The command-line application class."""

	def __init__(self) -> None:
		"""Initialises the parser and registers the subcommands."""
		self.parser = _ArgumentParser(
			prog="metashot",
			description="Identifiability of metagenomes from shotgun reads.",
		)
		self.parser.add_argument("--version", action="version", version=VERSION)
		verbosity = self.parser.add_mutually_exclusive_group()
		verbosity.add_argument(
			"-v", "--verbose", action="store_true", help="debug logging"
		)
		verbosity.add_argument("-q", "--quiet", action="store_true", help="errors only")
		self.commands = self.parser.add_subparsers(
			dest="command", required=True, parser_class=_ArgumentParser
		)

		self.create_command(
			"generate",
			self.on_generate_command,
			"draw a random sample",
			self._generate_args,
		)
		self.create_command(
			"reads", self.on_reads_command, "extract the read multiset", self._reads_args
		)
		self.create_command(
			"assemble", self.on_assemble_command, "greedy assembly", self._assemble_args
		)
		self.create_command(
			"check", self.on_check_command, "identifiability verdict", self._check_args
		)
		self.create_command(
			"thresholds",
			self.on_thresholds_command,
			"read-length thresholds and bounds",
			self._thresholds_args,
		)
		self.create_command(
			"experiment",
			self.on_experiment_command,
			"run a Monte Carlo experiment",
			self._experiment_args,
		)
		self.create_command(
			"plot", self.on_plot_command, "plot an experiment CSV", self._plot_args
		)

	def create_command(
		self,
		name: str,
		callback: Command,
		description: str,
		configure: Callable[[argparse.ArgumentParser], None],
	) -> None:
		"""Add a subcommand.

		Args:
		  name: the name of the subcommand
		  callback: the function to be called with the parsed arguments
		  description: one-line help text
		  configure: adds the subcommand's own arguments
		"""
		subparser = self.commands.add_parser(
			name, help=description, description=description
		)
		configure(subparser)
		subparser.set_defaults(callback=callback)

	@staticmethod
	def _problem_args(parser: argparse.ArgumentParser) -> None:
		parser.add_argument("--M", "--genomes", dest="num_genomes", type=int)
		parser.add_argument("--N", "--length", dest="genome_length", type=int)
		parser.add_argument("--dist", default="uniform", help="'uniform' or comma reals")
		parser.add_argument("--alphabet", default=DEFAULT_ALPHABET)
		parser.add_argument("--config", help="experiment config supplying M, N and dists")

	def _generate_args(self, parser: argparse.ArgumentParser) -> None:
		self._problem_args(parser)
		parser.add_argument("--L", dest="read_length", type=int, default=1)
		parser.add_argument("--seed", type=int, required=True)
		parser.add_argument("--out", default="-")

	@staticmethod
	def _reads_args(parser: argparse.ArgumentParser) -> None:
		parser.add_argument("--sample", required=True)
		parser.add_argument("--L", dest="read_length", type=int, required=True)
		parser.add_argument("--out", default="-")

	@staticmethod
	def _assemble_args(parser: argparse.ArgumentParser) -> None:
		parser.add_argument("--reads", required=True)
		parser.add_argument(
			"--M", "--genomes", dest="num_genomes", type=int, required=True
		)
		parser.add_argument(
			"--N", "--length", dest="genome_length", type=int, required=True
		)
		parser.add_argument("--seed", type=int, required=True)
		parser.add_argument("--out", default="-")

	@staticmethod
	def _check_args(parser: argparse.ArgumentParser) -> None:
		parser.add_argument("--sample", required=True)
		parser.add_argument("--L", dest="read_length", type=int, required=True)
		parser.add_argument("--eta", type=float, default=0.0)
		parser.add_argument("--dump", help="write repeat and swap witnesses here")
		parser.add_argument("--limit", type=int, default=DUMP_LIMIT)

	def _thresholds_args(self, parser: argparse.ArgumentParser) -> None:
		self._problem_args(parser)
		parser.add_argument("--epsilon", type=float, default=0.0)
		parser.add_argument("--L", dest="read_length", type=int)
		parser.add_argument("--eta", type=float)

	@staticmethod
	def _experiment_args(parser: argparse.ArgumentParser) -> None:
		parser.add_argument("--config", required=True)
		parser.add_argument("--out", default="-")
		parser.add_argument("--threads", type=int)

	@staticmethod
	def _plot_args(parser: argparse.ArgumentParser) -> None:
		parser.add_argument("--summary", required=True)
		parser.add_argument("--out", required=True)
		parser.add_argument("--title", default="")

	@staticmethod
	def _problem(args: argparse.Namespace) -> ProblemSpec:
		"""The problem named by --config or by --M/--N/--dist/--alphabet."""
		read_length = args.read_length or 1
		if args.config:
			config = load_config(args.config)
			return ProblemSpec(
				config.num_genomes, config.genome_length, read_length, config.dists
			)
		if args.num_genomes is None or args.genome_length is None:
			msg = "--M and --N are required without --config"
			raise ValidationError(msg)
		alphabet = Alphabet.from_symbols(args.alphabet)
		dist = Distribution.parse(args.dist, alphabet)
		return ProblemSpec(
			args.num_genomes,
			args.genome_length,
			read_length,
			(dist,) * args.num_genomes,
		)

	def on_generate_command(self, args: argparse.Namespace) -> int:
		"""Callback for the generate subcommand."""
		sample = sample_metagenome(self._problem(args), args.seed)
		write_sample(sample, args.out)
		return ExitCode.OK

	@staticmethod
	def on_reads_command(args: argparse.Namespace) -> int:
		"""Callback for the reads subcommand."""
		sample = read_sample(args.sample)
		write_reads(extract_reads(sample, args.read_length), args.out, sample.alphabet)
		return ExitCode.OK

	@staticmethod
	def on_assemble_command(args: argparse.Namespace) -> int:
		"""Callback for the assemble subcommand."""
		reads = read_reads(args.reads)
		result = greedy_assemble(reads, args.num_genomes, args.genome_length, args.seed)
		if result.complete:
			write_sample(Sample.from_strings(result.genomes), args.out)
			return ExitCode.OK
		logger.warning(
			"assembly incomplete: %d contigs, writing them unaligned", len(result.genomes)
		)
		with open_text_output(args.out) as stream:
			for genome in result.genomes:
				stream.write(f"{genome}\n")
		return ExitCode.INCOMPLETE

	@staticmethod
	def on_check_command(args: argparse.Namespace) -> int:
		"""Callback for the check subcommand."""
		sample = read_sample(args.sample)
		verdict = check_identifiable(sample, args.read_length, args.eta)
		sys.stdout.write(f"{verdict.tag}: {verdict.reason}\n")
		if verdict.witness is not None:
			sys.stdout.write(f"{verdict.witness.format_line()}\n")
		if args.dump:
			witnesses: list[RepeatWitness | SwapWitness] = []
			witnesses.extend(find_repeats(sample, args.read_length - 1, args.limit))
			if verdict.witness is not None:
				witnesses.append(verdict.witness)
			write_witnesses(witnesses, args.dump)
		sys.stdout.write(f"verdict={verdict.tag}\n")
		return ExitCode.OK

	def on_thresholds_command(self, args: argparse.Namespace) -> int:
		"""Callback for the thresholds subcommand."""
		spec = self._problem(args)
		bounds = entropy_bounds(spec.dists)
		lines = [
			f"h_star={bounds.h_star:.6g}",
			f"f_lower={bounds.f_lower:.6g}",
			f"f_star={bounds.f_star:.6g}",
		]
		items: list[tuple[str, float | None]]
		if args.read_length is None:
			upper, lower = threshold_pair(spec, args.epsilon)
			items = [("upper_threshold", upper), ("lower_threshold", lower)]
		else:
			report = theorem_bounds_report(
				spec, args.read_length, eta=args.eta, epsilon=args.epsilon
			)
			items = report.items()
		lines.extend(
			f"{name}={'undefined' if value is None else format(value, '.6g')}"
			for name, value in items
		)
		sys.stdout.write("\n".join(lines) + "\n")
		return ExitCode.OK

	@staticmethod
	def on_experiment_command(args: argparse.Namespace) -> int:
		"""Callback for the experiment subcommand."""
		config = load_config(args.config)
		threads = args.threads or _threads_from_env()
		summary = run_experiment(config, out=args.out, workers=threads)
		if config.mode is ExperimentMode.MOMENTS:
			for row in summary.rows:
				sys.stderr.write(
					f"L={row.read_length} moment_ratio={row.moment_ratio:.6g}\n"
				)
		return ExitCode.OK

	@staticmethod
	def on_plot_command(args: argparse.Namespace) -> int:
		"""Callback for the plot subcommand."""
		plot_summary(read_summary_csv(args.summary), args.out, args.title)
		return ExitCode.OK

	def run(self, argv: Sequence[str] | None = None) -> int:
		"""Parse `argv`, dispatch and map failures to exit codes."""
		try:
			args = self.parser.parse_args(argv)
		except SystemExit as exit_:
			return int(exit_.code or 0)

		level = logging.WARNING
		if args.verbose:
			level = logging.DEBUG
		elif args.quiet:
			level = logging.ERROR
		logging.basicConfig(level=level, stream=sys.stderr, format=LOG_FORMAT)

		try:
			return int(args.callback(args))
		except ValidationError as err:
			sys.stderr.write(f"error: {err}\n")
			return ExitCode.VALIDATION
		except OSError as err:
			sys.stderr.write(f"error: {err}\n")
			return ExitCode.IO


def main(argv: Sequence[str] | None = None) -> int:
	"""The application's entry point."""
	app = Metashot()
	return app.run(argv)


if __name__ == "__main__":
	sys.exit(main())
