"""
Benchmark suites, returned as pandas DataFrames for CSV emission.

scaling   wall time of fair_equi and fair_general over growing n
ratio     measured distance ratios against the exact oracle on small instances, next to
          the proven factors
hardness  certificate distance against tau on random YES instances of 3-Partition

Ratio and hardness instances run on a thread pool; rows are sorted before they are returned so
the output does not depend on completion order.
"""
import logging
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Callable, Dict, List, Optional, Sequence

import pandas as pd

from .bounds import create_pdc_bound, fair_equi_bound, general_bound, power_of_two_bound, ratio
from .config import BENCH_WORKERS, DEFAULT_SEED
from .core import pair_distance
from .equi import fair_equi, fair_power_of_two
from .fairness import is_fair, reduced_profile
from .general import create_pdc, fair_general
from .instances.generators import EQUI, gen_hardness, gen_random, gen_random_three_partition
from .oracle import exact_closest_fair, exact_closest_pdc

logger = logging.getLogger(__name__)

Row = Dict[str, object]

SUITES = ("scaling", "ratio", "hardness")


def _run_tasks(tasks: Sequence[Callable[[], List[Row]]], workers: int) -> List[Row]:
    rows: List[Row] = []
    if workers <= 1:
        for task in tasks:
            rows.extend(task())
        return rows

    with ThreadPoolExecutor(max_workers=workers) as executor:
        futures = [executor.submit(task) for task in tasks]
        for future in as_completed(futures):
            rows.extend(future.result())
    return rows


def _frame(rows: List[Row], sort_by: List[str]) -> pd.DataFrame:
    frame = pd.DataFrame(rows)
    if frame.empty:
        return frame
    return frame.sort_values(sort_by, kind="stable").reset_index(drop=True)


def scaling_suite(sizes: Sequence[int], k: int = 8, seed: int = DEFAULT_SEED) -> pd.DataFrame:
    """Wall time per algorithm and size; always runs sequentially."""
    algorithms = {"fair_equi": fair_equi, "fair_general": fair_general}

    def task(n: int, name: str) -> List[Row]:
        d, colors = gen_random(n, k, EQUI, seed=seed)
        start = time.perf_counter()
        result = algorithms[name](d, colors)
        seconds = time.perf_counter() - start
        return [{
            "suite": "scaling",
            "algorithm": name,
            "n": n,
            "k": k,
            "seconds": round(seconds, 6),
            "distance": pair_distance(d, result),
            "fair": is_fair(result, colors),
        }]

    tasks = [lambda n=n, name=name: task(n, name) for n in sizes for name in algorithms]
    return _frame(_run_tasks(tasks, 1), ["algorithm", "n"])


def ratio_suite(n: int = 8, k: int = 2, instances: int = 20, seed: int = DEFAULT_SEED,
                workers: int = BENCH_WORKERS, profile: Optional[Sequence[int]] = None) -> pd.DataFrame:
    """
    Distance of each algorithm's output over the oracle optimum. With no profile the colors
    are equally sized and fair_equi (plus fair_power_of_two when k is a power of two) is
    measured; create_pdc and fair_general are measured in both cases.
    """
    ratio_spec = EQUI if profile is None else list(profile)

    def task(index: int) -> List[Row]:
        d, colors = gen_random(n, k, ratio_spec, seed=seed + index, clusters=max(1, n // 3))
        _, optimum = exact_closest_fair(d, colors)
        reduced = reduced_profile(colors)
        _, pdc_optimum = exact_closest_pdc(d, colors, reduced)

        measured = [
            ("create_pdc", pair_distance(d, create_pdc(d, colors, reduced)), pdc_optimum, create_pdc_bound(k)),
            ("fair_general", pair_distance(d, fair_general(d, colors)), optimum, general_bound(k)),
        ]
        if colors.is_equi:
            measured.append(("fair_equi", pair_distance(d, fair_equi(d, colors)), optimum, fair_equi_bound(k)))
            if k & (k - 1) == 0:
                measured.append((
                    "fair_power_of_two", pair_distance(d, fair_power_of_two(d, colors)), optimum, power_of_two_bound(k)
                ))

        rows = []
        for name, distance, best, bound in measured:
            value = ratio(distance, best)
            rows.append({
                "suite": "ratio",
                "algorithm": name,
                "instance": index,
                "n": n,
                "k": k,
                "distance": distance,
                "optimum": best,
                "ratio": float(value),
                "bound": float(bound),
                "within_bound": value <= bound,
            })
        return rows

    tasks = [lambda index=index: task(index) for index in range(instances)]
    return _frame(_run_tasks(tasks, workers), ["algorithm", "instance"])


def hardness_suite(d: int = 6, ks: Sequence[int] = (3, 5), instances: int = 20, seed: int = DEFAULT_SEED,
                   workers: int = BENCH_WORKERS) -> pd.DataFrame:
    def task(index: int) -> List[Row]:
        values, triples = gen_random_three_partition(d, seed + index)
        rows = []
        for k in ks:
            instance = gen_hardness(values, k, triples)
            distance = pair_distance(instance.clustering, instance.certificate)
            rows.append({
                "suite": "hardness",
                "instance": index,
                "d": d,
                "k": k,
                "target": instance.target,
                "n": instance.n,
                "tau": instance.tau,
                "certificate_distance": distance,
                "certificate_fair": is_fair(instance.certificate, instance.colors),
                "matches_tau": distance == instance.tau,
            })
        return rows

    tasks = [lambda index=index: task(index) for index in range(instances)]
    return _frame(_run_tasks(tasks, workers), ["k", "instance"])
