"""Finite-truncation computations on hyperbolic-like graphs.

The compiled module does the work; this wrapper decodes its JSON reports
into dictionaries.
"""
import json as _json

from _hypertree import (
    Distances,
    Graph,
    distances,
    generate,
    growth,
    read_graph_text,
)
import _hypertree as _impl

__all__ = [
    "Distances",
    "Graph",
    "cells",
    "delta",
    "dimension",
    "distances",
    "faithful",
    "generate",
    "geodetic",
    "growth",
    "pipeline",
    "read_graph_text",
]


def delta(graph, **kwargs):
    """Hyperbolicity constants and transfer checks, as a dict."""
    return _json.loads(_impl.delta_report(graph, **kwargs))


def cells(graph, **kwargs):
    """Boundary cells on the depth sphere, as a dict."""
    return _json.loads(_impl.cells_report(graph, **kwargs))


def dimension(graph, **kwargs):
    """Doubling and packing exponents of the cell metric, as a dict."""
    return _json.loads(_impl.dimension_report(graph, **kwargs))


def faithful(graph, **kwargs):
    """Staged boundary-respecting spanning tree, as a dict."""
    return _json.loads(_impl.faithful_report(graph, **kwargs))


def geodetic(graph, **kwargs):
    """Distance-preserving tree, ray census and optional audit, as a dict."""
    return _json.loads(_impl.geodetic_report(graph, **kwargs))


def pipeline(**kwargs):
    """Run every stage; returns (exit_code, bundle dict)."""
    code, bundle = _impl.pipeline(**kwargs)
    return code, _json.loads(bundle)
