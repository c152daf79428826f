"""Entropy functionals of symbol distributions (natural logarithms).

This module provides:
- renyi2_entropy: second-order Renyi entropy H2(p)
- cross_entropy_f: collision exponent F(p, q), +inf for disjoint supports
- collision_probability: inner product of two distributions
- EntropyBounds: the collection constants h_star, f_lower, f_star
- entropy_bounds: function to compute EntropyBounds for a list of distributions
"""

import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from utils.exceptions import ValidationError

from .distribution import Distribution


def collision_probability(p: Distribution, q: Distribution) -> float:
	"""Probability that independent draws from p and q coincide."""
	if p.alphabet != q.alphabet:
		msg = f"distributions are over different alphabets: {p.alphabet} vs {q.alphabet}"
		raise ValidationError(msg)
	return float(np.dot(p.as_array(), q.as_array()))


def renyi2_entropy(p: Distribution) -> float:
	"""Return H2(p) = -log sum_a p(a)^2."""
	return -math.log(collision_probability(p, p))


def cross_entropy_f(p: Distribution, q: Distribution) -> float:
	"""Return F(p, q) = -log sum_a p(a) q(a); math.inf when the supports are disjoint."""
	inner = collision_probability(p, q)
	if inner <= 0.0:
		return math.inf
	return -math.log(inner)


@dataclass(frozen=True)
class EntropyBounds:
	"""Uniform entropy constants of a genome collection.

	h_star is the smallest H2 over the distributions; f_lower and f_star are the
	smallest and largest F over all ordered pairs, the diagonal included.
	"""

	h_star: float
	f_lower: float
	f_star: float


def entropy_bounds(dists: Sequence[Distribution]) -> EntropyBounds:
	"""Compute the constants both thresholds are stated in."""
	if not dists:
		msg = "at least one distribution is required"
		raise ValidationError(msg)
	h_star = min(renyi2_entropy(p) for p in dists)
	cross = [cross_entropy_f(p, q) for i, p in enumerate(dists) for q in dists[i:]]
	return EntropyBounds(h_star=h_star, f_lower=min(cross), f_star=max(cross))
