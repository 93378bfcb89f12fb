"""Lipschitz bandit and experts experiments.

Descriptors are plain dicts with the same shape as the JSON configs used by
the ``liplab`` command-line tool.
"""

import json

from . import _core
from ._core import ProtocolError, ResolutionError, ValidationError, kl_bernoulli, kl_divergence, lb_time_threshold, round_key

__all__ = [
    "Instance",
    "ProtocolError",
    "ResolutionError",
    "Session",
    "ValidationError",
    "algorithm_names",
    "dimension",
    "fit_exponent",
    "kl_bernoulli",
    "kl_divergence",
    "lb_time_threshold",
    "round_key",
    "simulate",
]


def _dump(obj):
    return json.dumps(obj)


def algorithm_names():
    return list(_core.algorithm_names())


def simulate(config, parallelism=1, full_arrays=False):
    """Run every replicate of an experiment config; returns traces and the aggregate."""
    return json.loads(_core.simulate(_dump(config), parallelism, full_arrays))


def dimension(space, mode="cov", lo=4, hi=12):
    return json.loads(_core.dimension(_dump(space), mode, lo, hi))


def fit_exponent(t, r, t_lo, t_hi):
    return json.loads(_core.fit_exponent(list(t), list(r), t_lo, t_hi))


class Instance:
    """A payoff instance; points are given in their JSON form (a number for the interval)."""

    def __init__(self, space, instance):
        self._inst = _core.Instance(_dump(space), _dump(instance))

    def mean(self, point):
        return self._inst.mean(_dump(point))

    def realize(self, key, point):
        return self._inst.realize(key, _dump(point))

    def sup_mean(self):
        return self._inst.sup_mean()

    def argmax(self):
        return json.loads(self._inst.argmax())

    def describe(self):
        return json.loads(self._inst.describe())


class Session:
    """Step API: ``choose()`` then ``observe(values)`` at the points listed under "observe"."""

    def __init__(self, space, algorithm, seed=0):
        self._s = _core.Session(_dump(space), _dump(algorithm), seed)

    def choose(self):
        return json.loads(self._s.choose())

    def observe(self, values):
        self._s.observe(list(values))

    @property
    def t(self):
        return self._s.t

    @property
    def name(self):
        return self._s.name

    @property
    def mode(self):
        return self._s.mode

    def params(self):
        return json.loads(self._s.params())

    def report(self):
        return json.loads(self._s.report())
