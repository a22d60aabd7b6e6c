"""Apollonian gasket construction, single-line tracing and length scaling."""

from ._core import (
    ApolloError,
    Gasket,
    Trace,
    build_gasket,
    descartes_curvatures,
    gasket_from_json,
    locate,
    loglog_fit,
    sweep,
    trace,
)

__all__ = [
    "ApolloError",
    "Gasket",
    "Trace",
    "build_gasket",
    "descartes_curvatures",
    "gasket_from_json",
    "locate",
    "loglog_fit",
    "sweep",
    "trace",
]
