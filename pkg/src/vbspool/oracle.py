"""Brute-force ground truth for small instances.

Enumerates the full state space, builds the transition-rate list, solves
the global balance equations by dense linear algebra, and computes the
blocking probabilities as direct sums over blocking states. Everything
here is deliberately independent of the recursive solver so the two can
check each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import IO

import numpy as np

from .analytic import BlockingReport
from .model import PoolConfig, StateVector, admits, state_space_size

DEFAULT_STATE_CAP = 10**6


@dataclass
class EnumeratedChain:
    """Explicit CTMC: states, sparse rate triples, stationary vector."""

    config: PoolConfig
    states: list[StateVector]
    rate_entries: list[tuple[int, int, float]]
    pi: np.ndarray | None = None

    def index_of(self, state: StateVector) -> int:
        return self._index[state.occupancy]

    def __post_init__(self):
        self._index = {s.occupancy: i for i, s in enumerate(self.states)}


def enumerate_states(
    config: PoolConfig, cap: int = DEFAULT_STATE_CAP
) -> list[StateVector]:
    """All states with entries <= K and sum <= N, in lexicographic order."""
    size = state_space_size(config)
    if size > cap:
        raise ValueError(
            f"state space has {size} states, above the cap of {cap}"
        )
    K, N, M = config.k_radio, config.n_comp, config.m_vbs
    states: list[StateVector] = []
    prefix = [0] * M

    def extend(pos: int, used: int):
        if pos == M:
            states.append(StateVector(tuple(prefix), total=used))
            return
        for k in range(min(K, N - used) + 1):
            prefix[pos] = k
            extend(pos + 1, used + k)
        prefix[pos] = 0

    extend(0, 0)
    return states


def build_generator(
    config: PoolConfig, cap: int = DEFAULT_STATE_CAP
) -> EnumeratedChain:
    """Transition rates: lambda per admissible arrival, k_m * mu per departure."""
    states = enumerate_states(config, cap)
    index = {s.occupancy: i for i, s in enumerate(states)}
    lam, mu = config.traffic.lam, config.traffic.mu
    entries: list[tuple[int, int, float]] = []
    for i, s in enumerate(states):
        occ = s.occupancy
        for m in range(config.m_vbs):
            if admits(config, s, m + 1):
                up = occ[:m] + (occ[m] + 1,) + occ[m + 1:]
                entries.append((i, index[up], lam))
            if occ[m] > 0:
                down = occ[:m] + (occ[m] - 1,) + occ[m + 1:]
                entries.append((i, index[down], occ[m] * mu))
    return EnumeratedChain(config=config, states=states, rate_entries=entries)


def solve_stationary(chain: EnumeratedChain) -> np.ndarray:
    """Unique pi with pi @ Q = 0 and sum(pi) = 1, by dense direct
    elimination in GTH (state-reduction) form.

    GTH uses only additions and multiplications of non-negative rates,
    so even stationary probabilities near the underflow threshold keep
    full relative accuracy; a naive solve with a normalization row loses
    small components to absolute rounding. The result is stored on the
    chain and returned.
    """
    n = len(chain.states)
    R = np.zeros((n, n))
    for i, j, rate in chain.rate_entries:
        R[i, j] += rate
    # fold states away from the highest index down
    departure = np.empty(n)
    for k in range(n - 1, 0, -1):
        s = R[k, :k].sum()
        departure[k] = s
        R[:k, :k] += np.outer(R[:k, k], R[k, :k]) / s
    pi = np.zeros(n)
    pi[0] = 1.0
    for k in range(1, n):
        pi[k] = (pi[:k] @ R[:k, k]) / departure[k]
    pi /= pi.sum()
    chain.pi = pi
    return pi


def blocking_direct(
    config: PoolConfig, cap: int = DEFAULT_STATE_CAP
) -> BlockingReport:
    """Blocking probabilities as literal sums over the stationary vector.

    p_comp sums pi over states with total == N; p_radio averages, over
    VBSs, the pi-mass of states with that VBS radio-full and total < N.
    """
    chain = build_generator(config, cap)
    pi = solve_stationary(chain)
    K, N, M = config.k_radio, config.n_comp, config.m_vbs
    p_comp = 0.0
    p_radio_sum = 0.0
    for s, p in zip(chain.states, pi):
        if s.total == N:
            p_comp += p
        else:
            full = sum(1 for k in s.occupancy if k == K)
            p_radio_sum += full * p
    p_radio = float(p_radio_sum / M)
    p_comp = float(p_comp)
    return BlockingReport(
        p_radio=p_radio, p_comp=p_comp, p_total=p_radio + p_comp
    )


def dump_edges(chain: EnumeratedChain, out: IO[str]):
    """Write one `from_state to_state rate` line per transition."""
    for i, j, rate in chain.rate_entries:
        src = ",".join(map(str, chain.states[i].occupancy))
        dst = ",".join(map(str, chain.states[j].occupancy))
        out.write(f"{src} {dst} {rate!r}\n")
