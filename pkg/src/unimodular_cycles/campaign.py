"""Randomized verification campaigns over generated cycles."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from .cycles import CyclicUnimodularSequence, rot_angle_float, rot_formula, rot_winding_exact
from .errors import LatticeError
from .generation import campaign_instance
from .reduction import rot_by_reduction

FLOAT_COORD_LIMIT = 2**20
FLOAT_TOLERANCE = 1e-6
MAX_FAILURE_SAMPLES = 20


@dataclass
class CampaignReport:
    seed: int
    trials: int
    failures: int = 0
    failure_samples: list = field(default_factory=list)
    elapsed: float = 0.0

    def to_json_obj(self) -> dict:
        return asdict(self)


def check_cycle(cycle: CyclicUnimodularSequence, verify_splits: bool = True) -> str | None:
    """Run the invariant suite on one cycle; returns a failure message or None."""
    try:
        by_formula = rot_formula(cycle)
        by_reduction, _ = rot_by_reduction(cycle, verify=verify_splits)
        by_winding = rot_winding_exact(cycle)
        if not by_formula == by_reduction == by_winding:
            return f"rotation mismatch: formula {by_formula}, reduction {by_reduction}, winding {by_winding}"
        if cycle.max_abs_coordinate() < FLOAT_COORD_LIMIT:
            approx = rot_angle_float(cycle)
            if abs(approx - by_winding) >= FLOAT_TOLERANCE:
                return f"angle sum {approx} differs from {by_winding}"
    except LatticeError as exc:
        return f"{type(exc).__name__}: {exc}"
    return None


def _trial(args: tuple[int, int, int]) -> dict | None:
    seed, index, max_length = args
    try:
        cycle = campaign_instance(seed, index, max_length)
    except LatticeError as exc:
        return {"index": index, "error": f"generation failed: {exc}", "cycle": None}
    problem = check_cycle(cycle)
    if problem is None:
        return None
    return {"index": index, "error": problem, "cycle": cycle.to_json_obj()}


def run_campaign(seed: int, trials: int, max_length: int, workers: int = 1) -> CampaignReport:
    """Check ``trials`` generated cycles; results are aggregated in trial order."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if max_length < 2:
        raise ValueError("max_length must be >= 2")
    start = time.perf_counter()
    jobs = [(seed, i, max_length) for i in range(trials)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_trial, jobs, chunksize=64))
    else:
        results = [_trial(job) for job in jobs]
    report = CampaignReport(seed=seed, trials=trials)
    for res in results:
        if res is not None:
            report.failures += 1
            if len(report.failure_samples) < MAX_FAILURE_SAMPLES:
                report.failure_samples.append(res)
    report.elapsed = time.perf_counter() - start
    return report
