"""Batched weighted edit distances from one query to many labels.

Internal numpy kernel used by the perturbation simulator, where a single
trial needs the distance from a perturbed string to every taxonomy label.
It evaluates the same Optimal-String-Alignment recurrence as
``edit_engine.align`` (cost only, no witness path), vectorized across all
labels at once. The insertion chain inside a DP row is closed with a
prefix-minimum scan, which is exact because costs are additive.

Consistency with the scalar engine is property-tested; tiny float
reassociation differences (sub-ulp scale) are possible with fractional
costs and are irrelevant for nearest-label classification.
"""
from __future__ import annotations

import numpy as np

from .cost_model import CostConfig

__all__ = ["TaxonomyDistancer"]


class TaxonomyDistancer:
    """Precomputed cost tables for distance queries against a fixed label set.

    Characters outside the known alphabet (possible only in queries) map to a
    reserved code with default costs, which is correct because overrides can
    only mention characters that are part of the alphabet.
    """

    def __init__(self, labels: list[str], cfg: CostConfig):
        if not labels:
            raise ValueError("need at least one label")
        chars: set[str] = set()
        for label in labels:
            chars.update(label)
        for a, b in cfg.sub_overrides:
            chars.update((a, b))
        for a, b in cfg.trans_overrides:
            chars.update((a, b))
        chars.update(cfg.ins_overrides)
        chars.update(cfg.del_overrides)

        self._code: dict[str, int] = {ch: i + 1 for i, ch in enumerate(sorted(chars))}
        n_codes = len(self._code) + 1  # code 0 reserved for unknown
        default = cfg.default_cost

        sub = np.full((n_codes, n_codes), default, dtype=np.float64)
        np.fill_diagonal(sub, 0.0)
        for (a, b), cost in cfg.sub_overrides.items():
            sub[self._code[a], self._code[b]] = cost
            if cfg.symmetric_subs:
                sub[self._code[b], self._code[a]] = cost
        trans = np.full((n_codes, n_codes), default, dtype=np.float64)
        for (a, b), cost in cfg.trans_overrides.items():
            trans[self._code[a], self._code[b]] = cost
            trans[self._code[b], self._code[a]] = cost
        ins = np.full(n_codes, default, dtype=np.float64)
        for ch, cost in cfg.ins_overrides.items():
            ins[self._code[ch]] = cost
        dele = np.full(n_codes, default, dtype=np.float64)
        for ch, cost in cfg.del_overrides.items():
            dele[self._code[ch]] = cost

        self._sub = sub
        self._trans = trans
        self._ins = ins
        self._del = dele
        self.labels = list(labels)
        self._lengths = np.array([len(lb) for lb in labels], dtype=np.int64)
        maxlen = int(self._lengths.max(initial=0))
        codes = np.zeros((len(labels), maxlen), dtype=np.int64)
        for row, label in enumerate(labels):
            for col, ch in enumerate(label):
                codes[row, col] = self._code[ch]
        self._codes = codes
        # Row 0 of the DP: cumulative insertion cost of each label prefix.
        ins_costs = self._ins[codes]
        row0 = np.zeros((len(labels), maxlen + 1), dtype=np.float64)
        np.cumsum(ins_costs, axis=1, out=row0[:, 1:])
        self._row0 = row0
        self._ins_cum = row0.copy()

    def _encode(self, query: str) -> np.ndarray:
        code = self._code
        return np.array([code.get(ch, 0) for ch in query], dtype=np.int64)

    def distances(self, query: str) -> np.ndarray:
        """Weighted OSA distance from ``query`` to every label, in label order."""
        qa = self._encode(query)
        m = len(qa)
        codes = self._codes
        n_labels, maxlen = codes.shape
        ins_cum = self._ins_cum
        prev1 = self._row0.copy()
        prev2 = np.empty_like(prev1)
        cur = np.empty_like(prev1)
        tvals = np.empty_like(prev1)

        for i in range(1, m + 1):
            qc = int(qa[i - 1])
            dc = self._del[qc]
            sub_row = self._sub[qc][codes]
            # arrivals by deletion or by diagonal (match/substitution)
            tvals[:, 0] = prev1[:, 0] + dc
            np.minimum(prev1[:, 1:] + dc, prev1[:, :-1] + sub_row, out=tvals[:, 1:])
            if i >= 2 and qa[i - 1] != qa[i - 2]:
                qp = int(qa[i - 2])
                mask = (codes[:, : maxlen - 1] == qc) & (codes[:, 1:] == qp)
                if mask.any():
                    tc = self._trans[qp, qc]
                    alt = prev2[:, : maxlen - 1] + tc
                    region = tvals[:, 2:]
                    np.copyto(region, np.minimum(region, alt), where=mask)
            # close the in-row insertion chain with a prefix-min scan
            np.subtract(tvals, ins_cum, out=cur)
            np.minimum.accumulate(cur, axis=1, out=cur)
            cur += ins_cum
            prev2, prev1, cur = prev1, cur, prev2
        return prev1[np.arange(n_labels), self._lengths]
