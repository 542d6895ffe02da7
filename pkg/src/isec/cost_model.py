"""Operation-specific character cost tables and the scoring scalars k and alpha.

A :class:`CostConfig` holds four override tables (substitution, insertion,
deletion, transposition), a shared default cost for everything unspecified,
and the two scalars that shape the composite score: ``k`` (linear penalty
weight) and ``alpha`` (semantic vs. morphological balance). With no overrides
and ``default_cost=1.0`` every lookup returns 1.0, which reduces the edit
metric to the classical unit-cost formulation.

Configs are immutable after construction and safe to share across workers.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

__all__ = [
    "ConfigError",
    "CostConfig",
    "load_config",
    "loads_config",
    "save_config",
    "config_to_dict",
    "lookup_sub",
    "lookup_ins",
    "lookup_del",
    "lookup_trans",
]


class ConfigError(ValueError):
    """Raised when a cost configuration file is malformed or invalid."""


def _check_char(value: object, where: str) -> str:
    if not isinstance(value, str) or len(value) != 1:
        raise ConfigError(f"{where}: expected a single character, got {value!r}")
    return value


def _check_cost(value: object, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where}: cost must be a number, got {value!r}")
    cost = float(value)
    if not math.isfinite(cost) or cost < 0:
        raise ConfigError(f"{where}: cost must be finite and >= 0, got {cost}")
    return cost


@dataclass(frozen=True)
class CostConfig:
    """Validated cost tables plus the scalars k and alpha.

    ``sub_overrides`` is keyed by ordered (from, to) pairs; when
    ``symmetric_subs`` is true a lookup also consults the mirrored key.
    ``trans_overrides`` is keyed by the unordered character pair (stored
    sorted), since swapping adjacent characters has no orientation.
    """

    sub_overrides: dict[tuple[str, str], float] = field(default_factory=dict)
    ins_overrides: dict[str, float] = field(default_factory=dict)
    del_overrides: dict[str, float] = field(default_factory=dict)
    trans_overrides: dict[tuple[str, str], float] = field(default_factory=dict)
    default_cost: float = 1.0
    symmetric_subs: bool = True
    k: float = 0.0
    alpha: float = 0.5

    def __post_init__(self) -> None:
        if not math.isfinite(self.default_cost) or self.default_cost < 0:
            raise ConfigError(f"default_cost must be >= 0, got {self.default_cost}")
        if not math.isfinite(self.k) or self.k < 0:
            raise ConfigError(f"k must be >= 0, got {self.k}")
        if not math.isfinite(self.alpha) or not 0.0 <= self.alpha <= 1.0:
            raise ConfigError(f"alpha must be in [0, 1], got {self.alpha}")
        for (a, b), cost in self.sub_overrides.items():
            if a == b:
                raise ConfigError(f"substitution override ({a!r},{b!r}) must use distinct characters")
            _check_cost(cost, f"substitution ({a!r},{b!r})")
        for (a, b), cost in self.trans_overrides.items():
            if a == b:
                raise ConfigError(f"transposition override ({a!r},{b!r}) must use distinct characters")
            if (a, b) != tuple(sorted((a, b))):
                raise ConfigError(f"transposition key ({a!r},{b!r}) must be stored sorted")
            _check_cost(cost, f"transposition ({a!r},{b!r})")
        for table, name in ((self.ins_overrides, "insertion"), (self.del_overrides, "deletion")):
            for ch, cost in table.items():
                _check_char(ch, name)
                _check_cost(cost, f"{name} {ch!r}")
        if self.symmetric_subs:
            for a, b in self.sub_overrides:
                if (b, a) in self.sub_overrides and self.sub_overrides[(b, a)] != self.sub_overrides[(a, b)]:
                    raise ConfigError(
                        f"symmetric_subs: overrides ({a!r},{b!r}) and ({b!r},{a!r}) disagree"
                    )

    @property
    def is_symmetric(self) -> bool:
        """True when costs cannot distinguish direction: lookup(a,b) == lookup(b,a)
        for substitutions and ins(x) == del(x) for every character."""
        if not self.symmetric_subs:
            for (a, b), cost in self.sub_overrides.items():
                if self.sub_overrides.get((b, a), self.default_cost) != cost:
                    return False
        chars = set(self.ins_overrides) | set(self.del_overrides)
        for ch in chars:
            if self.ins_overrides.get(ch, self.default_cost) != self.del_overrides.get(ch, self.default_cost):
                return False
        return True

    def max_cost(self) -> float:
        """Largest cost any single operation can take under this config."""
        candidates = [self.default_cost]
        candidates.extend(self.sub_overrides.values())
        candidates.extend(self.ins_overrides.values())
        candidates.extend(self.del_overrides.values())
        candidates.extend(self.trans_overrides.values())
        return max(candidates)


def lookup_sub(cfg: CostConfig, a: str, b: str) -> float:
    """Cost of replacing character ``a`` with ``b`` (``a != b``)."""
    if a == b:
        raise ValueError(f"substitution lookup requires distinct characters, got {a!r}")
    cost = cfg.sub_overrides.get((a, b))
    if cost is None and cfg.symmetric_subs:
        cost = cfg.sub_overrides.get((b, a))
    return cfg.default_cost if cost is None else cost


def lookup_ins(cfg: CostConfig, a: str) -> float:
    """Cost of inserting character ``a``."""
    return cfg.ins_overrides.get(a, cfg.default_cost)


def lookup_del(cfg: CostConfig, a: str) -> float:
    """Cost of deleting character ``a``."""
    return cfg.del_overrides.get(a, cfg.default_cost)


def lookup_trans(cfg: CostConfig, a: str, b: str) -> float:
    """Cost of transposing adjacent characters ``a`` and ``b`` (order-free)."""
    if a == b:
        raise ValueError(f"transposition lookup requires distinct characters, got {a!r}")
    key = (a, b) if a < b else (b, a)
    return cfg.trans_overrides.get(key, cfg.default_cost)


def _parse_pair_entries(
    entries: object, section: str, key_a: str, key_b: str, sorted_key: bool
) -> dict[tuple[str, str], float]:
    if not isinstance(entries, list):
        raise ConfigError(f"{section}: expected a list of entries")
    table: dict[tuple[str, str], float] = {}
    for entry in entries:
        if not isinstance(entry, dict):
            raise ConfigError(f"{section}: entries must be objects, got {entry!r}")
        a = _check_char(entry.get(key_a), f"{section}.{key_a}")
        b = _check_char(entry.get(key_b), f"{section}.{key_b}")
        cost = _check_cost(entry.get("cost"), f"{section} ({a},{b})")
        key = (a, b) if not sorted_key else ((a, b) if a < b else (b, a))
        if key in table:
            raise ConfigError(f"{section}: duplicate key ({a!r},{b!r})")
        table[key] = cost
    return table


def _parse_char_entries(entries: object, section: str) -> dict[str, float]:
    if not isinstance(entries, list):
        raise ConfigError(f"{section}: expected a list of entries")
    table: dict[str, float] = {}
    for entry in entries:
        if not isinstance(entry, dict):
            raise ConfigError(f"{section}: entries must be objects, got {entry!r}")
        ch = _check_char(entry.get("char"), f"{section}.char")
        cost = _check_cost(entry.get("cost"), f"{section} {ch!r}")
        if ch in table:
            raise ConfigError(f"{section}: duplicate key {ch!r}")
        table[ch] = cost
    return table


def loads_config(text: str) -> CostConfig:
    """Parse a config from a JSON string. See :func:`load_config`."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON: {exc}") from exc
    return config_from_dict(raw)


def config_from_dict(raw: object) -> CostConfig:
    """Build a validated :class:`CostConfig` from parsed JSON data."""
    if not isinstance(raw, dict):
        raise ConfigError("top-level config must be a JSON object")
    known = {
        "default_cost", "k", "alpha", "symmetric_subs",
        "substitutions", "insertions", "deletions", "transpositions",
    }
    unknown = set(raw) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    subs = _parse_pair_entries(raw.get("substitutions", []), "substitutions", "from", "to", sorted_key=False)
    trans = _parse_pair_entries(raw.get("transpositions", []), "transpositions", "a", "b", sorted_key=True)
    ins = _parse_char_entries(raw.get("insertions", []), "insertions")
    dels = _parse_char_entries(raw.get("deletions", []), "deletions")
    symmetric = raw.get("symmetric_subs", True)
    if not isinstance(symmetric, bool):
        raise ConfigError(f"symmetric_subs must be a boolean, got {symmetric!r}")
    return CostConfig(
        sub_overrides=subs,
        ins_overrides=ins,
        del_overrides=dels,
        trans_overrides=trans,
        default_cost=_check_cost(raw.get("default_cost", 1.0), "default_cost"),
        symmetric_subs=symmetric,
        k=_check_cost(raw.get("k", 0.0), "k"),
        alpha=float(raw["alpha"]) if "alpha" in raw else 0.5,
    )


def load_config(path: str) -> CostConfig:
    """Load and validate a cost configuration from a JSON file.

    An empty object ``{}`` yields the identity configuration: every lookup
    returns 1.0, k=0, alpha=0.5.
    """
    with open(path, encoding="utf-8") as fh:
        return loads_config(fh.read())


def config_to_dict(cfg: CostConfig) -> dict:
    """Canonical JSON-ready representation, inverse of :func:`config_from_dict`.

    Entries are emitted in sorted key order so serialization is deterministic.
    """
    return {
        "default_cost": cfg.default_cost,
        "k": cfg.k,
        "alpha": cfg.alpha,
        "symmetric_subs": cfg.symmetric_subs,
        "substitutions": [
            {"from": a, "to": b, "cost": cost}
            for (a, b), cost in sorted(cfg.sub_overrides.items())
        ],
        "insertions": [
            {"char": ch, "cost": cost} for ch, cost in sorted(cfg.ins_overrides.items())
        ],
        "deletions": [
            {"char": ch, "cost": cost} for ch, cost in sorted(cfg.del_overrides.items())
        ],
        "transpositions": [
            {"a": a, "b": b, "cost": cost}
            for (a, b), cost in sorted(cfg.trans_overrides.items())
        ],
    }


def save_config(cfg: CostConfig, path: str) -> None:
    """Write ``cfg`` as JSON; ``load_config(save_config(cfg))`` round-trips."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(config_to_dict(cfg), fh, indent=2, sort_keys=True)
        fh.write("\n")
