"""Kernel instrumentation"""

from .metrics import METRICS, MetricsManager, MetricValue

__all__ = ["METRICS", "MetricsManager", "MetricValue"]
