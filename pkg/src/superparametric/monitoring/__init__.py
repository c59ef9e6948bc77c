"""
Monitoring and observability module
"""

from .metrics import FitMetricsCollector, metrics_collector

__all__ = [
    "FitMetricsCollector",
    "metrics_collector",
]
