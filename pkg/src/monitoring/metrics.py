"""Metrics collection and management"""

import threading
import time
from collections import deque
from dataclasses import dataclass
from typing import Deque, Dict, List, Optional


@dataclass
class MetricValue:
    """Container for metric values"""
    value: float
    timestamp: float = 0.0

    def __post_init__(self) -> None:
        if not self.timestamp:
            self.timestamp = time.time()


class MetricsManager:
    """Counters and rolling samples for kernel instrumentation"""

    def __init__(self, window: int = 1000):
        self.window = window
        self._metrics: Dict[str, Deque[MetricValue]] = {}
        self._counters: Dict[str, int] = {}
        self._lock = threading.Lock()

    def record_metric(self, name: str, value: float) -> None:
        """Record a metric sample"""
        with self._lock:
            if name not in self._metrics:
                self._metrics[name] = deque(maxlen=self.window)
            self._metrics[name].append(MetricValue(value))

    def increment(self, name: str, amount: int = 1) -> None:
        """Add to a named counter"""
        with self._lock:
            self._counters[name] = self._counters.get(name, 0) + amount

    def counter(self, name: str) -> int:
        return self._counters.get(name, 0)

    def reset(self) -> None:
        with self._lock:
            self._metrics.clear()
            self._counters.clear()

    def get_metrics(self, window: Optional[float] = None) -> Dict[str, List[MetricValue]]:
        """Get samples, optionally within a time window in seconds"""
        result = {}
        now = time.time()

        with self._lock:
            for name, values in self._metrics.items():
                if window is None:
                    result[name] = list(values)
                else:
                    result[name] = [v for v in values if now - v.timestamp <= window]

        return result


# Process-wide instance used by kernels when no manager is passed
METRICS = MetricsManager()
