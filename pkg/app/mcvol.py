"""
Deterministic Monte Carlo volume estimation.

Every (seed, cell index, batch index) triple owns an independent Philox
stream: the 128-bit key is seed << 64 | cell << 32 | batch and the counter
starts at zero. Batches only return integer hit counts, which are reduced in
batch order, so the estimate does not depend on how many workers ran them.
"""
import math
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Tuple

import numpy as np

from .core.config import settings
from .core.events import timed_event
from .core.exceptions import SamplingParameterError
from .models import Cell, Domain
from .schemas import ComplexEstimate, EstimateDifference, VolumeEstimate
from .semialg import cell_contains_array
from .witness import PeriodWitness

_MASK64 = (1 << 64) - 1
_MASK32 = (1 << 32) - 1


def stream(seed: int, cell_index: int, batch_index: int) -> np.random.Generator:
    key = ((seed & _MASK64) << 64) | ((cell_index & _MASK32) << 32) | (batch_index & _MASK32)
    return np.random.Generator(np.random.Philox(key=key))


def _count_batch(cell: Cell, seed: int, cell_index: int, batch_index: int, size: int) -> int:
    rng = stream(seed, cell_index, batch_index)
    points = cell.box.lows() + rng.random((size, cell.dim)) * cell.box.widths()
    return int(np.count_nonzero(cell_contains_array(cell, points)))


def _batches(samples: int, batch_size: int) -> List[Tuple[int, int]]:
    count = math.ceil(samples / batch_size)
    return [(b, min(batch_size, samples - b * batch_size)) for b in range(count)]


def estimate(domain: Domain, samples_per_cell: int, seed: int,
             batch_size: Optional[int] = None, workers: Optional[int] = None,
             first_cell_index: int = 0) -> VolumeEstimate:
    if samples_per_cell < settings.min_samples:
        raise SamplingParameterError(f"samples_per_cell must be at least {settings.min_samples}",
                                     samples=samples_per_cell)
    batch_size = batch_size or settings.batch_size
    workers = workers or settings.workers
    if batch_size < 1 or workers < 1:
        raise SamplingParameterError("batch_size and workers must be positive",
                                     batch_size=batch_size, workers=workers)

    with timed_event("estimate", cells=len(domain), samples=samples_per_cell, seed=seed) as detail:
        tasks = []
        volumes = []
        for i, cell in enumerate(domain):
            box_volume = float(cell.box.volume())
            volumes.append(box_volume)
            if box_volume == 0.0:
                continue
            for b, size in _batches(samples_per_cell, batch_size):
                tasks.append((i, cell, first_cell_index + i, b, size))

        def run(task):
            _, cell, index, b, size = task
            return _count_batch(cell, seed, index, b, size)

        if workers > 1 and len(tasks) > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                counts = list(pool.map(run, tasks))
        else:
            counts = [run(t) for t in tasks]

        hits = [0] * len(volumes)
        for task, count in zip(tasks, counts):
            hits[task[0]] += count

        mean, variance = 0.0, 0.0
        for box_volume, hit in zip(volumes, hits):
            if box_volume == 0.0:
                continue
            p = hit / samples_per_cell
            mean += box_volume * p
            variance += box_volume * box_volume * p * (1.0 - p) / samples_per_cell
        result = VolumeEstimate(mean=mean, stderr=math.sqrt(variance),
                                samples=samples_per_cell, seed=seed)
        detail.update(mean=result.mean, stderr=result.stderr)
    return result


def evaluate_witness(w: PeriodWitness, samples_per_cell: int, seed: int,
                     batch_size: Optional[int] = None, workers: Optional[int] = None) -> ComplexEstimate:
    """Estimate all four buckets on disjoint streams and combine them."""
    names = ("re_pos", "re_neg", "im_pos", "im_neg")
    estimates = {}
    offset = 0
    with timed_event("evaluate_witness", signature=str(w), bound=w.bound) as detail:
        for name, bucket in zip(names, w.buckets):
            estimates[name] = estimate(bucket, samples_per_cell, seed, batch_size, workers,
                                       first_cell_index=offset)
            offset += len(bucket)

        def diff(pos: VolumeEstimate, neg: VolumeEstimate) -> EstimateDifference:
            return EstimateDifference(mean=pos.mean - neg.mean,
                                      stderr=math.hypot(pos.stderr, neg.stderr))

        result = ComplexEstimate(re=diff(estimates["re_pos"], estimates["re_neg"]),
                                 im=diff(estimates["im_pos"], estimates["im_neg"]),
                                 samples=samples_per_cell, seed=seed, buckets=estimates)
        detail.update(re=result.re.mean, im=result.im.mean)
    return result
