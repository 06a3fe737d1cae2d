"""Pointwise normality of self-similar measures."""

import json

from . import _ssnormal
from ._ssnormal import SsnError, __version__, expand, parry, pisot

__all__ = ["SsnError", "__version__", "expand", "parry", "pisot", "sample", "disintegration", "model", "chain",
           "spectrum", "cli"]


def _ifs(ifs):
    return ifs if isinstance(ifs, str) else json.dumps(ifs)


def sample(ifs, n, depth=40, seed=1):
    return _ssnormal.sample(_ifs(ifs), n, depth, seed)


def disintegration(ifs, n, depth=20, seed=1):
    return _ssnormal.disintegration(_ifs(ifs), n, depth, seed)


def model(ifs):
    return json.loads(_ssnormal.model(_ifs(ifs)))


def chain(ifs):
    return _ssnormal.chain(_ifs(ifs))


def spectrum(ifs, beta, search_bound=64):
    return _ssnormal.spectrum(_ifs(ifs), beta, search_bound)


def cli(*args):
    return _ssnormal.cli([str(a) for a in args])
