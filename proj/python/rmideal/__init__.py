"""Random monomial ideals: sampling, standard pairs, divisor counts."""

import json

from . import _core
from ._core import ConfigError, GuardExceeded, RmiError

__version__ = _core.__version__


def _ideal_text(ideal):
    if isinstance(ideal, str):
        return ideal
    return json.dumps({"n": ideal["n"], "generators": ideal["generators"]})


def sample(n, max_degree, *, p=None, k=None, seed=0, trial=0):
    """Draw one ideal; returns {"meta", "n", "generators"}."""
    return json.loads(_core.sample(n, max_degree, p, k, seed, trial))


def census(ideal, *, guard=100_000_000, cap=1_000_000):
    """dim, deg, adeg, pair counts by |S| and the pair list."""
    out = json.loads(_core.census(_ideal_text(ideal), guard, cap))
    for key in ("deg", "adeg"):
        out[key] = int(out[key])
    out["sp_by_dim"] = [int(v) for v in out["sp_by_dim"]]
    return out


def zcount(n, d):
    """#{a in N^n : prod(a_i + 1) <= d}."""
    return int(_core.zcount(n, float(d)))


def staircase_svg(ideal, levels=(), axis_cap=0):
    return _core.staircase_svg(_ideal_text(ideal), list(levels), axis_cap)


def experiment(config):
    """Run an experiment; returns (records, csv_text). Timing fields are omitted."""
    text = config if isinstance(config, str) else json.dumps(config)
    jsonl, csv = _core.experiment(text)
    return [json.loads(line) for line in jsonl.splitlines()], csv


__all__ = [
    "ConfigError",
    "GuardExceeded",
    "RmiError",
    "census",
    "experiment",
    "sample",
    "staircase_svg",
    "zcount",
]
