from .performance_monitor import performance_monitoring_middleware

__all__ = ["performance_monitoring_middleware"]