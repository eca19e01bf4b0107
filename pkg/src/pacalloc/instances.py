"""Problem instances: finite domains, hypothesis classes, agents.

An instance bundles a finite domain, a finite 0/1 hypothesis class over
that domain, one distribution and sampling cost per agent, and the
accuracy targets (epsilon, delta). Every solver in the package takes an
Instance as its first argument.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError

# Strict comparisons against epsilon get this much slack so that masses
# assembled in floating point land on the intended side of the cutoff.
EPS_SLACK = 1e-12

# Probability vectors must sum to 1 within this tolerance.
MASS_TOL = 1e-9

FORMAT_VERSION = 1


def exceeds_epsilon(mass: float, epsilon: float) -> bool:
    """True when a disagreement mass is strictly above epsilon."""
    return mass > epsilon + EPS_SLACK


def within_delta(failure: float, delta: float) -> bool:
    """True when a failure probability meets the confidence target."""
    return failure <= delta + EPS_SLACK


@dataclass(frozen=True)
class Domain:
    """The finite ground set {0, ..., size - 1}."""

    size: int

    def __post_init__(self):
        if int(self.size) != self.size or self.size <= 0:
            raise ValidationError("domain size must be a positive integer")
        object.__setattr__(self, "size", int(self.size))

    def points(self) -> np.ndarray:
        return np.arange(self.size)


@dataclass(frozen=True, eq=False)
class Hypothesis:
    """A 0/1 labeling of the whole domain, stored as a uint8 vector."""

    labels: np.ndarray

    def __post_init__(self):
        raw = np.asarray(self.labels)
        if raw.ndim != 1 or raw.shape[0] == 0:
            raise ValidationError("hypothesis labels must be a non-empty 1-d sequence")
        if not np.isin(raw, (0, 1)).all():
            raise ValidationError("hypothesis labels must be 0 or 1")
        labels = raw.astype(np.uint8)
        labels.setflags(write=False)
        object.__setattr__(self, "labels", labels)

    def __len__(self):
        return int(self.labels.shape[0])

    def key(self) -> bytes:
        """Byte string identifying the labeling, for dedup and lookups."""
        return self.labels.tobytes()


@dataclass(frozen=True, eq=False)
class HypothesisClass:
    """A finite set of distinct hypotheses over a shared domain."""

    hypotheses: tuple

    def __post_init__(self):
        hyps = tuple(self.hypotheses)
        if not hyps:
            raise ValidationError("hypothesis class must be non-empty")
        n = len(hyps[0])
        seen = set()
        for h in hyps:
            if not isinstance(h, Hypothesis):
                raise ValidationError("hypothesis class entries must be Hypothesis objects")
            if len(h) != n:
                raise ValidationError("all hypotheses must label the same domain")
            k = h.key()
            if k in seen:
                raise ValidationError("duplicate hypothesis in class")
            seen.add(k)
        object.__setattr__(self, "hypotheses", hyps)

    def __len__(self):
        return len(self.hypotheses)

    def __iter__(self):
        return iter(self.hypotheses)

    def __getitem__(self, i):
        return self.hypotheses[i]

    def label_matrix(self) -> np.ndarray:
        """Stack the class into an (H, N) uint8 matrix."""
        return np.stack([h.labels for h in self.hypotheses])


@dataclass(frozen=True, eq=False)
class AgentSpec:
    """One agent: a distribution over the domain and a per-sample cost."""

    distribution: np.ndarray
    cost: float = 1.0

    def __post_init__(self):
        dist = np.asarray(self.distribution, dtype=float)
        if dist.ndim != 1:
            raise ValidationError("agent distribution must be a 1-d sequence")
        if (dist < 0).any():
            raise ValidationError("agent distribution has a negative entry")
        if abs(dist.sum() - 1.0) > MASS_TOL:
            raise ValidationError("agent distribution must sum to 1 within 1e-9")
        cost = float(self.cost)
        if not np.isfinite(cost) or cost <= 0:
            raise ValidationError("agent cost must be a finite positive real")
        dist = dist.copy()
        dist.setflags(write=False)
        object.__setattr__(self, "distribution", dist)
        object.__setattr__(self, "cost", cost)


@dataclass(frozen=True, eq=False)
class Instance:
    """A full problem instance.

    Attributes:
        domain: the finite ground set.
        hypothesis_class: candidate labelings; one of them is the truth.
        agents: one AgentSpec per agent, order is significant.
        epsilon: accuracy target. A hypothesis is acceptable for an agent
            when its disagreement mass with the truth is at most epsilon
            under that agent's distribution.
        delta: confidence target. For every candidate truth, the chance
            of an unacceptable outcome must be at most delta.
    """

    domain: Domain
    hypothesis_class: HypothesisClass
    agents: tuple
    epsilon: float
    delta: float

    def __post_init__(self):
        agents = tuple(self.agents)
        if not agents:
            raise ValidationError("instance needs at least one agent")
        n = self.domain.size
        for h in self.hypothesis_class:
            if len(h) != n:
                raise ValidationError("hypothesis length does not match domain size")
        for a in agents:
            if not isinstance(a, AgentSpec):
                raise ValidationError("agents must be AgentSpec objects")
            if a.distribution.shape[0] != n:
                raise ValidationError("agent distribution length does not match domain size")
        eps = float(self.epsilon)
        if not 0 < eps < 1:
            raise ValidationError("epsilon must lie strictly between 0 and 1")
        dlt = float(self.delta)
        if not 0 < dlt < 1:
            raise ValidationError("delta must lie strictly between 0 and 1")
        object.__setattr__(self, "agents", agents)
        object.__setattr__(self, "epsilon", eps)
        object.__setattr__(self, "delta", dlt)

    @property
    def num_agents(self) -> int:
        return len(self.agents)

    @property
    def num_hypotheses(self) -> int:
        return len(self.hypothesis_class)

    def distribution_matrix(self) -> np.ndarray:
        """Stack agent distributions into a (k, N) float matrix."""
        return np.stack([a.distribution for a in self.agents])

    def costs(self) -> np.ndarray:
        return np.array([a.cost for a in self.agents], dtype=float)


@dataclass(frozen=True)
class ContributionVector:
    """Per-agent sample counts, in agent order. Hashable and comparable."""

    counts: tuple

    def __post_init__(self):
        cleaned = []
        for c in self.counts:
            ci = int(c)
            if ci != c:
                raise ValidationError("sample counts must be integers")
            if ci < 0:
                raise ValidationError("sample counts must be non-negative")
            cleaned.append(ci)
        object.__setattr__(self, "counts", tuple(cleaned))

    def __len__(self):
        return len(self.counts)

    def __getitem__(self, i):
        return self.counts[i]

    def __iter__(self):
        return iter(self.counts)

    def total(self) -> int:
        return sum(self.counts)

    def total_cost(self, instance: Instance) -> float:
        return float(sum(c * a.cost for c, a in zip(self.counts, instance.agents)))

    def replace(self, index: int, value: int) -> "ContributionVector":
        counts = list(self.counts)
        counts[index] = int(value)
        return ContributionVector(tuple(counts))


def disagreement_region(h1: Hypothesis, h2: Hypothesis) -> np.ndarray:
    """Boolean mask over the domain where two hypotheses differ."""
    return h1.labels != h2.labels


def disagreement_mass(distribution: np.ndarray, h1: Hypothesis, h2: Hypothesis) -> float:
    return float(distribution[disagreement_region(h1, h2)].sum())


def unacceptable_hypotheses(instance: Instance, target_index: int, agent_index: int) -> list:
    """Indices of hypotheses too far from a candidate truth for one agent.

    "Too far" means disagreement mass strictly above epsilon under the
    agent's distribution. The target itself is never included.
    """
    target = instance.hypothesis_class[target_index]
    dist = instance.agents[agent_index].distribution
    out = []
    for j, h in enumerate(instance.hypothesis_class):
        if j == target_index:
            continue
        if exceeds_epsilon(disagreement_mass(dist, target, h), instance.epsilon):
            out.append(j)
    return out


def make_instance(hypotheses, distributions, epsilon, delta, costs=None) -> Instance:
    """Build an Instance from plain nested sequences."""
    hyps = HypothesisClass(tuple(Hypothesis(np.asarray(h)) for h in hypotheses))
    n = len(hyps[0])
    if costs is None:
        costs = [1.0] * len(distributions)
    if len(costs) != len(distributions):
        raise ValidationError("costs and distributions must have the same length")
    agents = tuple(
        AgentSpec(np.asarray(d, dtype=float), float(c))
        for d, c in zip(distributions, costs)
    )
    return Instance(Domain(n), hyps, agents, float(epsilon), float(delta))


def instance_to_dict(instance: Instance) -> dict:
    return {
        "format": FORMAT_VERSION,
        "domain_size": instance.domain.size,
        "hypotheses": [h.labels.astype(int).tolist() for h in instance.hypothesis_class],
        "agents": [
            {"distribution": a.distribution.tolist(), "cost": a.cost}
            for a in instance.agents
        ],
        "epsilon": instance.epsilon,
        "delta": instance.delta,
    }


def instance_from_dict(data) -> Instance:
    if not isinstance(data, dict):
        raise ValidationError("instance document must be a JSON object")
    version = data.get("format")
    if version != FORMAT_VERSION:
        raise ValidationError(f"unsupported instance format: {version!r}")
    try:
        domain_size = data["domain_size"]
        hyp_rows = data["hypotheses"]
        agent_rows = data["agents"]
        epsilon = data["epsilon"]
        delta = data["delta"]
    except KeyError as missing:
        raise ValidationError(f"instance document is missing {missing.args[0]!r}") from None
    domain = Domain(domain_size)
    hyps = HypothesisClass(tuple(Hypothesis(np.asarray(row)) for row in hyp_rows))
    agents = []
    for i, row in enumerate(agent_rows):
        if not isinstance(row, dict) or "distribution" not in row:
            raise ValidationError(f"agents[{i}] must be an object with a 'distribution'")
        dist = np.asarray(row["distribution"], dtype=float)
        total = float(dist.sum())
        if abs(total - 1.0) > MASS_TOL:
            raise ValidationError(f"agents[{i}].distribution must sum to 1 within 1e-9")
        # Renormalize so downstream arithmetic sees an exact unit vector.
        agents.append(AgentSpec(dist / total, float(row.get("cost", 1.0))))
    return Instance(domain, hyps, tuple(agents), float(epsilon), float(delta))


def load_instance(path) -> Instance:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as err:
            raise ValidationError(f"could not parse {path}: {err}") from None
    return instance_from_dict(data)


def save_instance(instance: Instance, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(instance_to_dict(instance), fh, indent=2, sort_keys=True)
        fh.write("\n")
