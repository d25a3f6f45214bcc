"""Python bindings for folner-lab.

Operator, projection and rotation-algebra specs are passed as JSON, either as
strings or as plain dicts.
"""

import json

from . import _core
from ._core import NumericalError, SpecError

__version__ = _core.__version__


def _js(spec):
    return spec if isinstance(spec, str) else json.dumps(spec)


def window(lattice, n):
    return json.loads(_core.window(json.dumps(lattice), n))


def compress(op, projection):
    return _core.compress(_js(op), _js(projection))


def folner_ratio(op, projection, p="2"):
    return _core.folner_ratio(_js(op), _js(projection), str(p))


def off_corner_ratio(op, projection, p="2"):
    return _core.off_corner_ratio(_js(op), _js(projection), str(p))


def qd_gap(op, projection):
    return _core.qd_gap(_js(op), _js(projection))


def eigenvalues(op, projection):
    return _core.eigenvalues(_js(op), _js(projection))


def trace_estimate(op, projection):
    return _core.trace_estimate(_js(op), _js(projection))


def canonical_trace(nc):
    return _core.canonical_trace(_js(nc))


def tensor_bound(a, p, b, q):
    return json.loads(_core.tensor_bound(_js(a), _js(p), _js(b), _js(q)))


__all__ = [
    "NumericalError",
    "SpecError",
    "canonical_trace",
    "compress",
    "eigenvalues",
    "folner_ratio",
    "off_corner_ratio",
    "qd_gap",
    "tensor_bound",
    "trace_estimate",
    "window",
]
