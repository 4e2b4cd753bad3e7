"""
Zeta function of a period, evaluated with power-degree upper bounds:
zeta(t) = exp(sum_m t^m b_m / m) with b_m = power_bound(w, m). Because every
b_m bounds deg(w^m) from above, each value here bounds the true zeta from above.
"""
import math
from typing import List, Optional, Sequence, Union

from .core.config import settings
from .core.events import timed_event
from .core.exceptions import OutOfRangeError
from .schemas import ZetaEvaluation
from .witness import PeriodWitness, power_bound


def _check_t(t: float) -> float:
    t = float(t)
    if not 0.0 <= t < 1.0:
        raise OutOfRangeError("t must lie in [0, 1)", t=t)
    return t


def _exp_bound(t: float, ledger: Union[int, float]) -> float:
    if t == 0.0:
        return 1.0
    if math.isinf(ledger):
        return math.inf
    return math.exp(t * ledger / (1.0 - t))


def zeta_truncated(w: PeriodWitness, t: float, M: Optional[int] = None) -> ZetaEvaluation:
    t = _check_t(t)
    M = settings.zeta_terms if M is None else M
    if M < 1:
        raise OutOfRangeError("Number of terms must be at least 1", terms=M)
    with timed_event("zeta_truncated", signature=str(w), t=t, terms=M) as detail:
        bounds = [power_bound(w, m) for m in range(1, M + 1)]
        exponent = math.fsum(t ** m * b / m for m, b in enumerate(bounds, start=1) if b) if t else 0.0
        b1 = bounds[0]
        tail = 0.0 if t == 0.0 or b1 == 0 else t ** (M + 1) * b1 / (1.0 - t)
        result = ZetaEvaluation(
            t=t,
            M=M,
            series_value=math.exp(exponent),
            closed_bound=zeta_upper_bound(w, t),
            power_bounds=bounds,
            tail_bound=tail,
        )
        detail.update(series_value=result.series_value)
    return result


def zeta_closed_algebraic(t: float) -> float:
    """Exact zeta of a non-zero algebraic number."""
    return 1.0 / (1.0 - _check_t(t))


def zeta_upper_bound(w: PeriodWitness, t: float) -> float:
    return _exp_bound(_check_t(t), w.bound)


def zeta_sum_bound(w1: PeriodWitness, w2: PeriodWitness, t: float) -> float:
    # uses the larger ledger; the sharper split over deg(p1^k p2^(m-k)) needs exact degrees
    return _exp_bound(_check_t(t), max(w1.bound, w2.bound))


def zeta_grid(w: PeriodWitness, ts: Sequence[float], M: Optional[int] = None) -> List[ZetaEvaluation]:
    return [zeta_truncated(w, t, M) for t in ts]
