"""Exact blocking probabilities via normalized occupancy recursions.

The raw partition sums C(n, m) (weight of states with total occupancy
exactly n) and R(n, m) (total < n) grow like e^{a*m} and overflow double
precision for large pools. All recursions here therefore run on Poisson
probabilities p_i = e^{-a} a^i / i! instead of raw terms a^i / i!, so
every intermediate is the probability of an event under m i.i.d.
Poisson(a) variables and lies in [0, 1]. The normalization constants
cancel exactly in every reported probability.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import PoolConfig, StateVector


@dataclass(frozen=True)
class BlockingReport:
    """Radio, computational, and total session blocking probabilities."""

    p_radio: float
    p_comp: float
    p_total: float
    underflow: bool = False


class RecursionTable:
    """Memoized normalized occupancy sums for a fixed (K, a).

    c(n, m) is the probability that m i.i.d. Poisson(a) variables, each
    capped at K, sum to exactly n (weight of the total-occupancy level);
    r(n, m) is the same with sum strictly below n. Columns are built by
    convolution, one per m, and cached; a sweep over N for fixed (M, K, a)
    is O(1) per point after the build.
    """

    def __init__(self, k_radio: int, a: float):
        if k_radio < 1:
            raise ValueError(f"k_radio must be >= 1, got {k_radio}")
        if not a > 0:
            raise ValueError(f"offered load must be positive, got {a}")
        self.k_radio = k_radio
        self.a = a
        p = np.empty(k_radio + 1)
        p[0] = math.exp(-a)
        for i in range(1, k_radio + 1):
            p[i] = p[i - 1] * a / i
        self._p = p
        self._c: list[np.ndarray | None] = [None, p]
        self._r: list[np.ndarray | None] = [None, np.concatenate(([0.0], np.cumsum(p)))]

    @property
    def poisson_pmf(self) -> np.ndarray:
        """p_i = e^{-a} a^i / i! for i = 0..K."""
        return self._p

    def _ensure(self, m: int):
        while len(self._c) <= m:
            col = np.convolve(self._c[-1], self._p)
            self._c.append(col)
            self._r.append(np.concatenate(([0.0], np.cumsum(col))))

    def c(self, n: int, m: int) -> float:
        """Normalized level weight: e^{-a m} * C(n, m)."""
        if m < 1:
            raise ValueError(f"m must be >= 1, got {m}")
        if not 0 <= n <= m * self.k_radio:
            raise ValueError(
                f"n={n} out of range 0..{m * self.k_radio} for m={m}"
            )
        self._ensure(m)
        return float(self._c[m][n])

    def r(self, n: int, m: int) -> float:
        """Normalized below-level weight: e^{-a m} * R(n, m)."""
        if m < 1:
            raise ValueError(f"m must be >= 1, got {m}")
        if not 0 <= n <= m * self.k_radio + 1:
            raise ValueError(
                f"n={n} out of range 0..{m * self.k_radio + 1} for m={m}"
            )
        self._ensure(m)
        return float(self._r[m][n])


_tables: dict[tuple[int, float], RecursionTable] = {}


def get_table(k_radio: int, a: float) -> RecursionTable:
    """Shared table for (K, a); built once, then read-only."""
    key = (k_radio, float(a))
    table = _tables.get(key)
    if table is None:
        table = _tables[key] = RecursionTable(k_radio, a)
    return table


def c_value(n: int, m: int, k_radio: int, a: float) -> float:
    return get_table(k_radio, a).c(n, m)


def r_value(n: int, m: int, k_radio: int, a: float) -> float:
    return get_table(k_radio, a).r(n, m)


def compute_blocking(
    config: PoolConfig, table: RecursionTable | None = None
) -> BlockingReport:
    """Exact blocking probabilities for one (M, K, N, a) instance.

    P0_hat = 1 / r(N+1, M); p_comp = P0_hat * c(N, M);
    p_radio = P0_hat * p_K * r(N-K, M-1) for N > K, else 0.
    """
    m, k, n, a = config.m_vbs, config.k_radio, config.n_comp, config.a
    if table is None:
        table = get_table(k, a)
    elif table.k_radio != k or table.a != a:
        raise ValueError("table built for different (K, a)")

    denom = table.r(n + 1, m)
    if denom == 0.0:
        # The normalized weight of the reachable states underflowed:
        # the pool is so overloaded that blocking is 1 to within 1e-300.
        return BlockingReport(p_radio=0.0, p_comp=1.0, p_total=1.0, underflow=True)

    p_comp = table.c(n, m) / denom
    if n > k:
        p_k = float(table.poisson_pmf[k])
        p_radio = p_k * table.r(n - k, m - 1) / denom
    else:
        p_radio = 0.0
    return BlockingReport(
        p_radio=p_radio, p_comp=p_comp, p_total=p_radio + p_comp
    )


def stationary_probability(
    config: PoolConfig,
    state: StateVector,
    table: RecursionTable | None = None,
) -> float:
    """Product-form stationary probability of one state."""
    if not state.is_valid(config):
        raise ValueError(f"state {state.occupancy} not in state space")
    m, k, n, a = config.m_vbs, config.k_radio, config.n_comp, config.a
    if table is None:
        table = get_table(k, a)
    pmf = table.poisson_pmf
    weight = 1.0
    for km in state.occupancy:
        weight *= pmf[km]
    return float(weight) / table.r(n + 1, m)
