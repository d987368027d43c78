"""Scaling measurements: instrumented work against the E + R*H' budget, the
growth of R in E on random bounded-degree models, and a wall-clock comparison
of the pure and compiled engine backends.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

from .adversaries import RandomFair
from .engine import run_session
from .providers import gen_random_bounded_degree
from .ranks import available_backends


@dataclass
class ScalingRow:
    n: int
    marked_E: int
    max_rank_R: int
    live_size_H: int
    work: int
    moves: int
    seconds: float
    terminated: str

    @property
    def budget(self) -> int:
        return self.marked_E + max(1, self.max_rank_R) * self.live_size_H

    @property
    def ratio(self) -> float:
        return self.work / self.budget


def measure_session(n, out_degree=3, fanout=2, seed=1, backend=None) -> ScalingRow:
    decl = gen_random_bounded_degree(n, out_degree, fanout, seed)
    adversary = RandomFair(seed + 1)
    t0 = time.perf_counter()
    _, stats = run_session(decl, adversary, max_moves=60 * n, seed=seed,
                           backend=backend)
    dt = time.perf_counter() - t0
    w = stats.work
    return ScalingRow(n=n, marked_E=stats.states_marked, max_rank_R=stats.max_rank_R,
                      live_size_H=w.live_size_H_prime, work=w.work,
                      moves=stats.moves, seconds=dt, terminated=stats.terminated)


def scaling_rows(sizes, out_degree=3, fanout=2, seed=1, backend=None):
    return [measure_session(n, out_degree, fanout, seed + i, backend=backend)
            for i, n in enumerate(sizes)]


def _lstsq(xs, ys):
    """Least-squares fit y = a*x + b plus the coefficient of determination."""
    n = len(xs)
    mx = sum(xs) / n
    my = sum(ys) / n
    sxx = sum((x - mx) ** 2 for x in xs)
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    a = sxy / sxx if sxx else 0.0
    b = my - a * mx
    ss_res = sum((y - (a * x + b)) ** 2 for x, y in zip(xs, ys))
    ss_tot = sum((y - my) ** 2 for y in ys)
    r2 = 1.0 if ss_tot == 0 else 1.0 - ss_res / ss_tot
    return a, b, r2


def work_fit(rows):
    """Fitted constant c with work <= c * (E + R*H') on every row, plus the
    log-log slope of work against the budget (a slope around or below 1
    means the bound scales)."""
    c = max(r.ratio for r in rows)
    slope, _, r2 = _lstsq([math.log(r.budget) for r in rows],
                          [math.log(max(1, r.work)) for r in rows])
    return c, slope, r2


def rank_growth_fit(rows):
    """Least-squares fit of R against log2(E); returns (slope, intercept, R^2)."""
    return _lstsq([math.log2(max(2, r.marked_E)) for r in rows],
                  [r.max_rank_R for r in rows])


def run_benchmark(sizes, out_degree=3, fanout=2, seed=1, compare=False):
    backends = available_backends() if compare else [None]
    all_rows = {}
    for backend in backends:
        label = backend or "default"
        print(f"backend: {label}")
        print(f"{'n':>8} {'E':>8} {'R':>4} {'H_prime':>10} {'work':>12} "
              f"{'work/(E+R*H)':>13} {'seconds':>8}")
        rows = scaling_rows(sizes, out_degree, fanout, seed, backend=backend)
        for r in rows:
            print(f"{r.n:>8} {r.marked_E:>8} {r.max_rank_R:>4} {r.live_size_H:>10} "
                  f"{r.work:>12} {r.ratio:>13.4f} {r.seconds:>8.3f}")
        all_rows[label] = rows
        c, slope, r2 = work_fit(rows)
        print(f"work bound fit: work <= {c:.3f} * (E + R*H'), "
              f"log-log slope {slope:.3f} (R^2 {r2:.3f})")
        slope, intercept, r2 = rank_growth_fit(rows)
        print(f"rank growth fit: R ~ {slope:.3f} * log2(E) + {intercept:.3f} "
              f"(R^2 {r2:.3f})")
        ratios = [r.max_rank_R / r.marked_E for r in rows]
        print("R/E trend: " + " ".join(f"{x:.5f}" for x in ratios))
        print()
    if compare and len(all_rows) == 2:
        pure = all_rows["pure"]
        comp = all_rows["compiled"]
        print("backend speedup (pure seconds / compiled seconds):")
        for p, c in zip(pure, comp):
            ratio = p.seconds / c.seconds if c.seconds > 0 else float("inf")
            print(f"{p.n:>8} {ratio:>8.2f}x")
    return all_rows
