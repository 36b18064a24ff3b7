"""Instances, labeled samples, perturbation maps, robust losses, inflation.

Instances are integer ids into a finite domain ``{0, ..., n-1}``.  A
perturbation map sends each instance to the finite set of corruptions an
adversary may apply at test time; the instance itself is always a member
of its own set.  The robust losses take the worst case over that set,
which for finite sets is an exact maximum.
"""

from __future__ import annotations

import json
from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptySample, InvalidParameter, MissingPerturbation


@dataclass(frozen=True)
class LabeledExample:
    """An instance id with a label in [0, 1]."""

    x: int
    y: float

    def __post_init__(self):
        if not 0.0 <= self.y <= 1.0:
            raise InvalidParameter(f"label must be in [0, 1], got {self.y}")


@dataclass(frozen=True)
class InflatedExample:
    """A perturbed point with the label of its lowest-index origin."""

    z: int
    y: float
    origin: int

    def __post_init__(self):
        if not 0.0 <= self.y <= 1.0:
            raise InvalidParameter(f"label must be in [0, 1], got {self.y}")


class PerturbationMap:
    """Finite set-valued map ``x -> U(x)`` with ``x in U(x)``.

    Entries are stored as duplicate-free tuples in their given order.
    Instances without an entry raise :class:`MissingPerturbation` when
    looked up; the map makes no assumption about unseen instances.
    """

    def __init__(self, table: Mapping[int, Sequence[int]]):
        frozen = {}
        for x, zs in table.items():
            zs = tuple(int(z) for z in zs)
            if not zs:
                raise InvalidParameter(f"perturbation set of {x} is empty")
            if len(set(zs)) != len(zs):
                raise InvalidParameter(f"perturbation set of {x} has duplicates")
            if int(x) not in zs:
                raise InvalidParameter(f"instance {x} missing from its own set")
            frozen[int(x)] = zs
        self._table = frozen

    def of(self, x: int) -> tuple[int, ...]:
        try:
            return self._table[x]
        except KeyError:
            raise MissingPerturbation(x) from None

    def __contains__(self, x: int) -> bool:
        return x in self._table

    def instances(self) -> tuple[int, ...]:
        return tuple(sorted(self._table))

    @classmethod
    def identity(cls, domain_size: int) -> "PerturbationMap":
        return cls({x: (x,) for x in range(domain_size)})

    @classmethod
    def grid_ball(cls, domain_size: int, radius: int) -> "PerturbationMap":
        """Ball of the given radius on the 1-D integer grid, clipped to the domain."""
        if radius < 0:
            raise InvalidParameter("radius must be >= 0")
        return cls({
            x: tuple(range(max(0, x - radius), min(domain_size, x + radius + 1)))
            for x in range(domain_size)
        })


@dataclass(frozen=True, eq=False)
class Hypothesis:
    """An evaluable map from instance ids to [0, 1].

    The descriptor identifies the hypothesis (class tag plus parameters)
    and carries equality; evaluation is deterministic.
    """

    evaluator: Callable[[int], float]
    descriptor: tuple

    def __call__(self, z: int) -> float:
        return self.evaluator(z)

    def __eq__(self, other):
        return isinstance(other, Hypothesis) and self.descriptor == other.descriptor

    def __hash__(self):
        return hash(self.descriptor)

    def values(self, zs: Sequence[int]) -> np.ndarray:
        return np.array([self.evaluator(int(z)) for z in zs], dtype=float)


def constant_hypothesis(value: float) -> Hypothesis:
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise InvalidParameter(f"constant must be in [0, 1], got {value}")
    return Hypothesis(lambda z, c=value: c, ("constant", value))


@dataclass(frozen=True)
class EtaBall:
    """Indicator loss of worst-case deviation >= eta."""

    eta: float

    def __post_init__(self):
        if not 0.0 < self.eta < 1.0:
            raise InvalidParameter(f"eta must be in (0, 1), got {self.eta}")


@dataclass(frozen=True)
class Lp:
    """Worst-case |h(z) - y|^p loss."""

    p: float

    def __post_init__(self):
        if self.p < 1.0:
            raise InvalidParameter(f"p must be >= 1, got {self.p}")


LossMode = EtaBall | Lp


def inflate(sample: Sequence[LabeledExample], U: PerturbationMap) -> list[InflatedExample]:
    """Expand a sample to all reachable perturbed points.

    Each distinct perturbed point appears once, labeled by its
    lowest-index origin.  Output is sorted by (origin, instance id), so
    downstream covers and boosting runs replay identically.
    """
    claimed: dict[int, InflatedExample] = {}
    for i, ex in enumerate(sample):
        for z in U.of(ex.x):
            if z not in claimed:
                claimed[z] = InflatedExample(z=z, y=ex.y, origin=i)
    return sorted(claimed.values(), key=lambda e: (e.origin, e.z))


def robust_deviation(h: Hypothesis, ex: LabeledExample, U: PerturbationMap) -> float:
    """max over z in U(x) of |h(z) - y|, an exact maximum over the finite set."""
    return max(abs(h(z) - ex.y) for z in U.of(ex.x))


def robust_loss(h: Hypothesis, ex: LabeledExample, U: PerturbationMap, mode: LossMode) -> float:
    dev = robust_deviation(h, ex, U)
    if isinstance(mode, EtaBall):
        return 1.0 if dev >= mode.eta else 0.0
    return dev ** mode.p


def empirical_error(
    h: Hypothesis,
    sample: Sequence[LabeledExample],
    U: PerturbationMap,
    mode: LossMode,
) -> float:
    if len(sample) == 0:
        raise EmptySample("empirical error over an empty sample")
    return sum(robust_loss(h, ex, U, mode) for ex in sample) / len(sample)


@dataclass(frozen=True)
class DomainData:
    """Contents of a domain JSON document."""

    domain_size: int
    sample: tuple[LabeledExample, ...]
    perturbations: PerturbationMap
    class_matrix: np.ndarray | None = None
    holdout: tuple[LabeledExample, ...] = ()
    extras: dict = field(default_factory=dict)


def _parse_examples(raw, domain_size, what):
    out = []
    for item in raw:
        if len(item) != 2:
            raise InvalidParameter(f"{what} entries must be [id, label] pairs")
        x, y = int(item[0]), float(item[1])
        if not 0 <= x < domain_size:
            raise InvalidParameter(f"{what} id {x} outside domain of size {domain_size}")
        out.append(LabeledExample(x=x, y=y))
    return tuple(out)


def load_domain(source) -> DomainData:
    """Load a domain document from a path, JSON string, or parsed dict.

    Schema: ``{"domain_size": n, "samples": [[id, y], ...],
    "perturbations": {"id": [ids...]}}`` with optional ``"class_matrix"``
    (rows are hypotheses) and ``"holdout"`` (same shape as samples).
    """
    if isinstance(source, dict):
        doc = source
    else:
        text = open(source).read() if not str(source).lstrip().startswith("{") else str(source)
        doc = json.loads(text)
    for key in ("domain_size", "samples", "perturbations"):
        if key not in doc:
            raise InvalidParameter(f"domain document missing key '{key}'")
    n = int(doc["domain_size"])
    if n < 1:
        raise InvalidParameter("domain_size must be >= 1")
    sample = _parse_examples(doc["samples"], n, "samples")
    table = {int(k): [int(z) for z in v] for k, v in doc["perturbations"].items()}
    for x, zs in table.items():
        for z in (x, *zs):
            if not 0 <= z < n:
                raise InvalidParameter(f"perturbations id {z} outside domain of size {n}")
    U = PerturbationMap(table)
    matrix = None
    if doc.get("class_matrix") is not None:
        matrix = np.asarray(doc["class_matrix"], dtype=float)
        if matrix.ndim != 2 or matrix.shape[1] != n:
            raise InvalidParameter("class_matrix must be 2-D with one column per instance")
    holdout = _parse_examples(doc.get("holdout", []), n, "holdout")
    extras = {k: v for k, v in doc.items()
              if k not in ("domain_size", "samples", "perturbations", "class_matrix", "holdout")}
    return DomainData(domain_size=n, sample=sample, perturbations=U,
                      class_matrix=matrix, holdout=holdout, extras=extras)
