"""Static plot of an experiment summary.

This module provides:
- plot_summary: function rendering verdict probabilities and Z moments to a PNG
"""

import os
from collections.abc import Sequence

from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure

from .runner import SummaryRow


def plot_summary(
	rows: Sequence[SummaryRow], destination: str | os.PathLike[str], title: str = ""
) -> None:
	"""Draw verdict probabilities and mean Z against L, one panel each."""
	figure = Figure(figsize=(8, 6), dpi=150)
	FigureCanvasAgg(figure)
	top, bottom = figure.subplots(2, 1, sharex=True)
	lengths = [row.read_length for row in rows]

	top.plot(lengths, [row.p_identifiable for row in rows], "o-", label="Identifiable")
	top.plot(
		lengths, [row.p_nonidentifiable for row in rows], "s-", label="NonIdentifiable"
	)
	top.plot(lengths, [row.p_unknown for row in rows], "^-", label="Unknown")
	assembled = [row for row in rows if row.p_assembly_success is not None]
	if assembled:
		top.plot(
			[row.read_length for row in assembled],
			[row.p_assembly_success for row in assembled],
			"d--",
			label="assembly recovered",
		)
	top.set_ylabel("fraction of trials")
	top.set_ylim(-0.05, 1.05)
	top.legend(loc="best")

	bottom.errorbar(
		lengths,
		[row.z_mean for row in rows],
		yerr=[row.se_z_mean for row in rows],
		fmt="o",
		label="mean Z",
	)
	bottom.plot(lengths, [row.z_mean_analytic for row in rows], "-", label="E[Z]")
	bottom.set_xlabel("read length L")
	bottom.set_ylabel("Z")
	bottom.legend(loc="best")

	if title:
		figure.suptitle(title)
	figure.savefig(destination)
