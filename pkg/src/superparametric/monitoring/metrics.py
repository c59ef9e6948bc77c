"""
Fit monitoring

Counts fits by outcome and accumulates solver effort and wall time. Wall
time only ever reaches logs and metrics, never result files.
"""
import threading
from typing import Any, Dict

from ..config.logger import logger


class FitMetricsCollector:
    """Collects and tracks metrics over the fits run in this process"""

    def __init__(self):
        # bench workers record from several threads
        self._lock = threading.Lock()
        self.reset()

    def record_fit(self, converged: bool, outer_iterations: int, inner_updates: int, fit_time: float):
        """Record a fit that produced an estimate"""
        with self._lock:
            self.metrics["total_fits"] += 1
            if converged:
                self.metrics["converged_fits"] += 1
            else:
                self.metrics["budget_terminated_fits"] += 1
            self.metrics["outer_iterations"] += outer_iterations
            self.metrics["inner_updates"] += inner_updates
            self._record_time(fit_time)

    def record_failure(self, error: Exception, fit_time: float = 0.0):
        """Record a fit that raised"""
        with self._lock:
            self.metrics["total_fits"] += 1
            self.metrics["failed_fits"] += 1
            self._record_time(fit_time)
        logger.debug(f"Recorded failed fit: {type(error).__name__}")

    def _record_time(self, fit_time: float):
        self.fit_times.append(fit_time)
        self.metrics["total_fit_time"] += fit_time
        self.metrics["average_fit_time"] = self.metrics["total_fit_time"] / self.metrics["total_fits"]

    def get_metrics(self) -> Dict[str, Any]:
        """Get current metrics"""
        with self._lock:
            metrics = dict(self.metrics)
        total = metrics["total_fits"]
        return {
            **metrics,
            "success_rate": (metrics["converged_fits"] / total if total > 0 else 0.0),
            "failure_rate": (metrics["failed_fits"] / total if total > 0 else 0.0),
        }

    def reset(self):
        """Reset all metrics"""
        with self._lock:
            self._reset()

    def _reset(self):
        self.metrics = {
            "total_fits": 0,
            "converged_fits": 0,
            "budget_terminated_fits": 0,
            "failed_fits": 0,
            "outer_iterations": 0,
            "inner_updates": 0,
            "average_fit_time": 0.0,
            "total_fit_time": 0.0,
        }
        self.fit_times = []


# Global metrics collector instance
metrics_collector = FitMetricsCollector()
