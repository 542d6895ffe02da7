"""Monte-Carlo typo injection and recoverability analysis.

Each trial perturbs a taxonomy label with sampled edit events (adjacent-key
or random substitution, deletion, insertion, adjacent transposition) and
asks whether the original label can still be recovered by nearest-neighbor
weighted edit distance. When the gap between the best and second-best
candidate is within the margin ``delta`` the trial is indeterminate: a
downstream corrector working on distance alone cannot decide. Aggregated
per-pair confusion is then rank-correlated against the composite scores,
which is the empirical check that the ranking predicts real confusion.

Classification deliberately uses morphological distance only, modeling a
corrector that sees strings, not meanings. Trials assign sources round-robin
and draw from one seeded generator, so a fixed seed reproduces the stats
bit for bit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import stats as scipy_stats

from ._fastdist import TaxonomyDistancer
from .core import Taxonomy, brute_force_ranking
from .cost_model import CostConfig

__all__ = [
    "ADJACENT_SUB",
    "RANDOM_SUB",
    "DELETE",
    "INSERT",
    "TRANSPOSE",
    "TypoModel",
    "TypoEvent",
    "Classification",
    "ConfusionStats",
    "CorrelationReport",
    "adjacency_from_config",
    "perturb",
    "classify_back",
    "run_simulation",
    "correlate",
    "validate_ranking",
]

ADJACENT_SUB = "adjacent_sub"
RANDOM_SUB = "random_sub"
DELETE = "delete"
INSERT = "insert"
TRANSPOSE = "transpose"
_EVENT_KINDS = (ADJACENT_SUB, RANDOM_SUB, DELETE, INSERT, TRANSPOSE)

RECOVERED = "recovered"
MISASSIGNED = "misassigned"
INDETERMINATE = "indeterminate"

_DEFAULT_ALPHABET = "abcdefghijklmnopqrstuvwxyz0123456789"


@dataclass(frozen=True)
class TypoModel:
    """Event mix, keyboard geometry, and intensity of the noise channel."""

    p_adjacent_sub: float = 0.35
    p_random_sub: float = 0.15
    p_delete: float = 0.20
    p_insert: float = 0.15
    p_transpose: float = 0.15
    adjacency: dict[str, str] = field(default_factory=dict)
    alphabet: str = _DEFAULT_ALPHABET
    events_per_label: int = 1

    def __post_init__(self) -> None:
        probs = self.probabilities
        if any(p < 0 for p in probs):
            raise ValueError("event probabilities must be >= 0")
        if abs(sum(probs) - 1.0) > 1e-9:
            raise ValueError(f"event probabilities must sum to 1, got {sum(probs)}")
        if self.events_per_label < 0:
            raise ValueError("events_per_label must be >= 0")
        if not self.alphabet:
            raise ValueError("alphabet must be non-empty")
        for char, neighbors in self.adjacency.items():
            for nb in neighbors:
                if char not in self.adjacency.get(nb, ""):
                    raise ValueError(f"adjacency must be symmetric: {char!r} -> {nb!r}")

    @property
    def probabilities(self) -> tuple[float, float, float, float, float]:
        return (
            self.p_adjacent_sub,
            self.p_random_sub,
            self.p_delete,
            self.p_insert,
            self.p_transpose,
        )

    def to_dict(self) -> dict:
        return {
            "p_adjacent_sub": self.p_adjacent_sub,
            "p_random_sub": self.p_random_sub,
            "p_delete": self.p_delete,
            "p_insert": self.p_insert,
            "p_transpose": self.p_transpose,
            "adjacency": {k: self.adjacency[k] for k in sorted(self.adjacency)},
            "alphabet": self.alphabet,
            "events_per_label": self.events_per_label,
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "TypoModel":
        known = {
            "p_adjacent_sub", "p_random_sub", "p_delete", "p_insert", "p_transpose",
            "adjacency", "alphabet", "events_per_label",
        }
        unknown = set(raw) - known
        if unknown:
            raise ValueError(f"unknown typo model keys: {sorted(unknown)}")
        return cls(**raw)


def adjacency_from_config(cfg: CostConfig) -> dict[str, str]:
    """Derive a symmetric adjacency map from a config's substitution pairs.

    A keyboard file shipped as reduced-cost substitutions therefore doubles
    as the adjacency source for the noise model.
    """
    neighbors: dict[str, set[str]] = {}
    for a, b in cfg.sub_overrides:
        neighbors.setdefault(a, set()).add(b)
        neighbors.setdefault(b, set()).add(a)
    return {char: "".join(sorted(nbs)) for char, nbs in sorted(neighbors.items())}


@dataclass(frozen=True)
class TypoEvent:
    kind: str
    position: int
    before: str
    after: str


def _apply_event(label: str, kind: str, model: TypoModel, rng: np.random.Generator) -> tuple[str, TypoEvent]:
    alphabet = model.alphabet
    if kind == INSERT:
        pos = int(rng.integers(len(label) + 1))
        char = alphabet[int(rng.integers(len(alphabet)))]
        return label[:pos] + char + label[pos:], TypoEvent(INSERT, pos, "", char)
    if not label:
        return label, TypoEvent(kind, 0, "", "")
    if kind == DELETE:
        pos = int(rng.integers(len(label)))
        return label[:pos] + label[pos + 1 :], TypoEvent(DELETE, pos, label[pos], "")
    if kind == TRANSPOSE:
        if len(label) < 2:
            return label, TypoEvent(TRANSPOSE, 0, label, label)
        pos = int(rng.integers(len(label) - 1))
        swapped = label[:pos] + label[pos + 1] + label[pos] + label[pos + 2 :]
        return swapped, TypoEvent(TRANSPOSE, pos, label[pos : pos + 2], swapped[pos : pos + 2])
    # substitution kinds
    pos = int(rng.integers(len(label)))
    current = label[pos]
    if kind == ADJACENT_SUB:
        neighbors = model.adjacency.get(current, "")
        if neighbors:
            char = neighbors[int(rng.integers(len(neighbors)))]
            return label[:pos] + char + label[pos + 1 :], TypoEvent(ADJACENT_SUB, pos, current, char)
        # no keyboard neighbors known: degrade to a random substitution
        kind = RANDOM_SUB
    choices = alphabet.replace(current, "")
    if not choices:
        return label, TypoEvent(RANDOM_SUB, pos, current, current)
    char = choices[int(rng.integers(len(choices)))]
    return label[:pos] + char + label[pos + 1 :], TypoEvent(RANDOM_SUB, pos, current, char)


def perturb(label: str, model: TypoModel, rng: np.random.Generator) -> tuple[str, list[TypoEvent]]:
    """Apply the model's sampled edit events to ``label``; returns the result
    and the event list for audit. Zero configured events is the identity."""
    if not label:
        raise ValueError("cannot perturb an empty label")
    events: list[TypoEvent] = []
    current = label
    probs = np.asarray(model.probabilities)
    for _ in range(model.events_per_label):
        kind = _EVENT_KINDS[int(rng.choice(len(_EVENT_KINDS), p=probs))]
        current, event = _apply_event(current, kind, model, rng)
        events.append(event)
    return current, events


@dataclass(frozen=True)
class Classification:
    """Nearest-label verdict for one perturbed string."""

    outcome: str
    best: str
    candidates: tuple[str, ...]
    distance: float
    gap: float


def _classify(
    distancer: TaxonomyDistancer, perturbed: str, delta: float
) -> tuple[int, tuple[int, ...], float, float]:
    dists = distancer.distances(perturbed)
    order = np.lexsort((np.arange(len(dists)), dists))
    best_idx = int(order[0])
    best = float(dists[best_idx])
    gap = float(dists[int(order[1])]) - best if len(order) > 1 else math.inf
    tied = np.flatnonzero(dists <= best + delta)
    return best_idx, tuple(int(t) for t in tied), best, gap


def classify_back(
    perturbed: str,
    source: str,
    tax: Taxonomy,
    cfg: CostConfig,
    delta: float = 0.0,
    distancer: TaxonomyDistancer | None = None,
) -> Classification:
    """Assign ``perturbed`` to its nearest label by weighted edit distance.

    If two or more labels sit within ``delta`` of the best distance the
    trial is indeterminate; otherwise it is recovered when the winner is the
    source label and misassigned when it is not.
    """
    if distancer is None:
        distancer = TaxonomyDistancer(list(tax.labels), cfg)
    best_idx, tied, best, gap = _classify(distancer, perturbed, delta)
    labels = tax.labels
    if len(tied) > 1:
        outcome = INDETERMINATE
    elif labels[best_idx] == source:
        outcome = RECOVERED
    else:
        outcome = MISASSIGNED
    return Classification(
        outcome=outcome,
        best=labels[best_idx],
        candidates=tuple(labels[t] for t in tied),
        distance=best,
        gap=gap,
    )


@dataclass
class ConfusionStats:
    """Trial outcomes, per source label and attributed to label pairs.

    An indeterminate trial from source ``s`` is attributed to every pair
    ``(s, c)`` where ``c`` is a non-source candidate inside the margin; a
    misassignment is attributed to ``(s, winner)``.
    """

    trials: int
    delta: float
    seed: int
    per_source: dict[str, dict[str, int]]
    pair_events: dict[tuple[str, str], int]
    source_trials: dict[str, int]

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "delta": self.delta,
            "seed": self.seed,
            "per_source": {k: self.per_source[k] for k in sorted(self.per_source)},
            "pair_events": [
                {"label_i": a, "label_j": b, "count": count}
                for (a, b), count in sorted(self.pair_events.items())
            ],
            "source_trials": {k: self.source_trials[k] for k in sorted(self.source_trials)},
        }


def run_simulation(
    tax: Taxonomy,
    cfg: CostConfig,
    model: TypoModel,
    trials: int,
    delta: float = 0.0,
    seed: int = 0,
) -> ConfusionStats:
    """Run ``trials`` perturbation trials, sources assigned round-robin."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if delta < 0:
        raise ValueError("delta must be >= 0")
    rng = np.random.default_rng(seed)
    distancer = TaxonomyDistancer(list(tax.labels), cfg)
    labels = tax.labels
    per_source = {label: {RECOVERED: 0, MISASSIGNED: 0, INDETERMINATE: 0} for label in labels}
    source_trials = {label: 0 for label in labels}
    pair_events: dict[tuple[str, str], int] = {}
    cache: dict[str, tuple[int, tuple[int, ...]]] = {}

    def attribute(source: str, other: str) -> None:
        key = (source, other) if source < other else (other, source)
        pair_events[key] = pair_events.get(key, 0) + 1

    for trial in range(trials):
        source_idx = trial % len(labels)
        source = labels[source_idx]
        source_trials[source] += 1
        perturbed, _ = perturb(source, model, rng)
        if perturbed == source:
            per_source[source][RECOVERED] += 1
            continue
        hit = cache.get(perturbed)
        if hit is None:
            best_idx, tied, _, _ = _classify(distancer, perturbed, delta)
            hit = (best_idx, tied)
            cache[perturbed] = hit
        best_idx, tied = hit
        if len(tied) > 1:
            per_source[source][INDETERMINATE] += 1
            for t in tied:
                if t != source_idx:
                    attribute(source, labels[t])
        elif best_idx == source_idx:
            per_source[source][RECOVERED] += 1
        else:
            per_source[source][MISASSIGNED] += 1
            attribute(source, labels[best_idx])
    return ConfusionStats(
        trials=trials,
        delta=delta,
        seed=seed,
        per_source=per_source,
        pair_events=pair_events,
        source_trials=source_trials,
    )


@dataclass
class CorrelationReport:
    """Spearman rank agreement between scores and observed confusion."""

    rho: float
    ci_low: float
    ci_high: float
    n_pairs: int
    degenerate: bool
    bootstrap_samples: int
    pairs: list[dict]

    def to_dict(self) -> dict:
        return {
            "rho": self.rho,
            "ci_low": self.ci_low,
            "ci_high": self.ci_high,
            "n_pairs": self.n_pairs,
            "degenerate": self.degenerate,
            "bootstrap_samples": self.bootstrap_samples,
            "pairs": self.pairs,
        }


def correlate(
    stats: ConfusionStats,
    scores,
    seed: int = 0,
    bootstrap: int = 1000,
) -> CorrelationReport:
    """Spearman correlation of pair scores vs. empirical confusion rates.

    The confusion rate of a pair divides its attributed events by the trials
    run from its two labels. All-zero confusion is reported as degenerate
    rather than raised. The confidence interval is a percentile bootstrap
    over pairs.
    """
    isec_values: list[float] = []
    rates: list[float] = []
    pairs: list[dict] = []
    for score in scores:
        key = (score.label_i, score.label_j) if score.label_i < score.label_j else (
            score.label_j,
            score.label_i,
        )
        events = stats.pair_events.get(key, 0)
        exposure = stats.source_trials.get(score.label_i, 0) + stats.source_trials.get(
            score.label_j, 0
        )
        rate = events / exposure if exposure else 0.0
        isec_values.append(score.isec)
        rates.append(rate)
        pairs.append(
            {
                "label_i": score.label_i,
                "label_j": score.label_j,
                "isec": score.isec,
                "confusion_rate": rate,
                "events": events,
            }
        )
    isec_arr = np.asarray(isec_values)
    rate_arr = np.asarray(rates)
    degenerate = bool(np.all(rate_arr == rate_arr[0])) if len(rate_arr) else True
    if degenerate:
        return CorrelationReport(
            rho=float("nan"),
            ci_low=float("nan"),
            ci_high=float("nan"),
            n_pairs=len(pairs),
            degenerate=True,
            bootstrap_samples=0,
            pairs=pairs,
        )
    rho = float(scipy_stats.spearmanr(isec_arr, rate_arr).statistic)
    rng = np.random.default_rng([seed, 0xB00])
    samples: list[float] = []
    n = len(isec_arr)
    for _ in range(bootstrap):
        idx = rng.integers(0, n, size=n)
        xs, ys = isec_arr[idx], rate_arr[idx]
        if np.all(ys == ys[0]) or np.all(xs == xs[0]):
            continue
        samples.append(float(scipy_stats.spearmanr(xs, ys).statistic))
    if samples:
        ci_low, ci_high = np.percentile(samples, [2.5, 97.5])
    else:
        ci_low = ci_high = float("nan")
    return CorrelationReport(
        rho=rho,
        ci_low=float(ci_low),
        ci_high=float(ci_high),
        n_pairs=len(pairs),
        degenerate=False,
        bootstrap_samples=len(samples),
        pairs=pairs,
    )


def validate_ranking(
    tax: Taxonomy,
    cfg: CostConfig,
    model: TypoModel,
    trials: int,
    delta: float = 0.0,
    seed: int = 0,
    bootstrap: int = 1000,
) -> tuple[ConfusionStats, CorrelationReport]:
    """Full validation loop: simulate, score all pairs, correlate.

    Requires at least 100 trials per label so the per-pair rates carry
    statistical weight.
    """
    if trials < 100 * tax.n:
        raise ValueError(f"need at least {100 * tax.n} trials for {tax.n} labels, got {trials}")
    stats = run_simulation(tax, cfg, model, trials, delta=delta, seed=seed)
    ranking = brute_force_ranking(tax, cfg, keep_paths=False)
    report = correlate(stats, ranking.scores, seed=seed, bootstrap=bootstrap)
    return stats, report
