"""Model instance, state space, and admission policy for a VBS pool.

A pool has M virtual base stations (VBSs), each with K radio servers
(r-servers), sharing N computational servers (c-servers). Sessions arrive
per-VBS as Poisson(lambda) and hold one r-server of their VBS plus one
pooled c-server for an Exp(mu) time. A session is admitted only if its
VBS has a free r-server and the pool has a free c-server.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field


class Outcome(enum.Enum):
    """Fate of an offered session at a given state."""

    ADMIT = "admit"
    RADIO_BLOCK = "radio_block"
    COMPUTE_BLOCK = "compute_block"


@dataclass(frozen=True)
class TrafficModel:
    """Per-VBS traffic: arrival rate lam, service rate mu, offered load a = lam/mu."""

    lam: float
    mu: float

    def __post_init__(self):
        if not (self.lam > 0):
            raise ValueError(f"arrival rate must be positive, got {self.lam}")
        if not (self.mu > 0):
            raise ValueError(f"service rate must be positive, got {self.mu}")

    @property
    def a(self) -> float:
        return self.lam / self.mu

    @classmethod
    def from_load(cls, a: float, mu: float = 1.0) -> "TrafficModel":
        """Build from offered load in Erlangs (lam = a * mu)."""
        return cls(lam=a * mu, mu=mu)


@dataclass(frozen=True)
class PoolConfig:
    """One model instance: (M, K, N) plus traffic.

    n_comp > m_vbs * k_radio is accepted but clamped to m_vbs * k_radio:
    provisioning c-servers beyond the r-server total is vacuous.
    """

    m_vbs: int
    k_radio: int
    n_comp: int
    traffic: TrafficModel

    def __post_init__(self):
        if self.m_vbs < 1:
            raise ValueError(f"m_vbs must be >= 1, got {self.m_vbs}")
        if self.k_radio < 1:
            raise ValueError(f"k_radio must be >= 1, got {self.k_radio}")
        if self.n_comp < 0:
            raise ValueError(f"n_comp must be >= 0, got {self.n_comp}")
        cap = self.m_vbs * self.k_radio
        if self.n_comp > cap:
            object.__setattr__(self, "n_comp", cap)

    @property
    def a(self) -> float:
        return self.traffic.a


@dataclass(frozen=True)
class StateVector:
    """Occupancy vector k = (k_1, ..., k_M) with cached total."""

    occupancy: tuple[int, ...]
    total: int = field(default=-1)

    def __post_init__(self):
        if self.total < 0:
            object.__setattr__(self, "total", sum(self.occupancy))
        elif self.total != sum(self.occupancy):
            raise ValueError(
                f"cached total {self.total} != sum {sum(self.occupancy)}"
            )

    def is_valid(self, config: PoolConfig) -> bool:
        """Membership in the constrained state space of config."""
        return (
            len(self.occupancy) == config.m_vbs
            and all(0 <= k <= config.k_radio for k in self.occupancy)
            and self.total <= config.n_comp
        )


def _check_index(config: PoolConfig, state: StateVector, vbs_index: int):
    if not 1 <= vbs_index <= config.m_vbs:
        raise ValueError(
            f"vbs_index {vbs_index} out of range 1..{config.m_vbs}"
        )
    if not state.is_valid(config):
        raise ValueError(f"state {state.occupancy} not in state space")


def classify_blocking(
    config: PoolConfig, state: StateVector, vbs_index: int
) -> Outcome:
    """Classify an arrival at VBS vbs_index (1-based) in the given state.

    Compute blocking takes precedence: a full pool (total == N) is
    COMPUTE_BLOCK even if the target VBS is also radio-full.
    """
    _check_index(config, state, vbs_index)
    if state.total == config.n_comp:
        return Outcome.COMPUTE_BLOCK
    if state.occupancy[vbs_index - 1] == config.k_radio:
        return Outcome.RADIO_BLOCK
    return Outcome.ADMIT


def admits(config: PoolConfig, state: StateVector, vbs_index: int) -> bool:
    """True iff an arrival at VBS vbs_index would be accepted."""
    return classify_blocking(config, state, vbs_index) is Outcome.ADMIT


def state_space_size(config: PoolConfig) -> int:
    """Count of occupancy vectors with every entry <= K and sum <= N."""
    K, N = config.k_radio, config.n_comp
    # DP over VBSs on the total-occupancy distribution
    ways = [1] + [0] * N
    for _ in range(config.m_vbs):
        nxt = [0] * (N + 1)
        for s, w in enumerate(ways):
            if w:
                for k in range(min(K, N - s) + 1):
                    nxt[s + k] += w
        ways = nxt
    return sum(ways)


def format_config(config: PoolConfig) -> str:
    """Serialize to the plain-text key-value config format."""
    t = config.traffic
    return (
        f"m = {config.m_vbs}\n"
        f"k = {config.k_radio}\n"
        f"n = {config.n_comp}\n"
        f"lambda = {t.lam!r}\n"
        f"mu = {t.mu!r}\n"
    )


def parse_config(text: str) -> PoolConfig:
    """Parse the key-value config format.

    Keys: m, k, n, and either (lambda, mu) or a (with mu defaulting to 1).
    Lines are `key = value`; blank lines and #-comments are ignored.
    """
    fields: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" in line:
            key, _, val = line.partition("=")
        elif ":" in line:
            key, _, val = line.partition(":")
        else:
            raise ValueError(f"line {lineno}: expected `key = value`: {raw!r}")
        fields[key.strip().lower()] = val.strip()

    missing = {"m", "k", "n"} - fields.keys()
    if missing:
        raise ValueError(f"missing config keys: {sorted(missing)}")
    if "a" in fields:
        traffic = TrafficModel.from_load(
            float(fields["a"]), mu=float(fields.get("mu", 1.0))
        )
    elif "lambda" in fields:
        traffic = TrafficModel(
            lam=float(fields["lambda"]), mu=float(fields.get("mu", 1.0))
        )
    else:
        raise ValueError("config needs either `a` or `lambda` (and `mu`)")
    return PoolConfig(
        m_vbs=int(fields["m"]),
        k_radio=int(fields["k"]),
        n_comp=int(fields["n"]),
        traffic=traffic,
    )
