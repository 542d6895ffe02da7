"""Minimal-cost weighted edit paths between labels, and the CM/CP/CMP scores.

The alignment uses the Optimal String Alignment operation model: insertions,
deletions, substitutions, and adjacent transpositions, where a transposed
pair is never edited again. Costs come per character (pair) from a
:class:`~isec.cost_model.CostConfig`. ``align`` returns a concrete witness
path, so every score can be audited operation by operation.

Among equal-cost edit scripts the one with fewer operations wins; remaining
ties break by a fixed backtrace priority (substitution, deletion, insertion,
transposition), which makes CM and CP deterministic.

Strings are treated as sequences of Unicode scalar values; callers normalize
(NFC, case folding) before aligning. All functions are pure.
"""
from __future__ import annotations

from dataclasses import dataclass

from .cost_model import CostConfig, lookup_del, lookup_ins, lookup_sub, lookup_trans

__all__ = [
    "INSERTION",
    "DELETION",
    "SUBSTITUTION",
    "TRANSPOSITION",
    "KINDS",
    "EditOp",
    "PathSummary",
    "DegeneratePathError",
    "align",
    "align_stats",
    "cmp_score",
    "replay",
]

INSERTION = "insertion"
DELETION = "deletion"
SUBSTITUTION = "substitution"
TRANSPOSITION = "transposition"
KINDS = (INSERTION, DELETION, SUBSTITUTION, TRANSPOSITION)

# Transpositions are excluded from the linear penalty CP.
_PENALTY_KINDS = frozenset((INSERTION, DELETION, SUBSTITUTION))


class DegeneratePathError(ValueError):
    """Raised when a score is requested for an empty edit path (identity pair)."""


@dataclass(frozen=True, slots=True)
class EditOp:
    """One edit operation in a witness path.

    ``chars`` holds the character(s) involved: a single character for
    insertion/deletion, ``(original, replacement)`` for substitution, and the
    source-order pair ``(x, y)`` for a transposition that emits ``yx``.
    ``pos_a``/``pos_b`` are the offsets in the source and target strings at
    which the operation starts, which makes paths replayable.
    """

    kind: str
    chars: tuple[str, ...]
    cost: float
    pos_a: int
    pos_b: int


@dataclass(frozen=True)
class PathSummary:
    """A minimal-cost edit path with its derived scores.

    ``cm`` is the mean cost over all operations; ``cp`` accumulates only
    insertion, deletion, and substitution costs, so a pure-transposition
    path has ``cp == 0``.
    """

    ops: tuple[EditOp, ...]
    total_cost: float
    n_ops: int
    cm: float
    cp: float
    counts: dict[str, int]

    @classmethod
    def from_ops(cls, ops: tuple[EditOp, ...]) -> "PathSummary":
        total = 0.0
        cp = 0.0
        counts = {kind: 0 for kind in KINDS}
        for op in ops:
            total += op.cost
            counts[op.kind] += 1
            if op.kind in _PENALTY_KINDS:
                cp += op.cost
        n_ops = len(ops)
        cm = total / n_ops if n_ops else 0.0
        return cls(ops=ops, total_cost=total, n_ops=n_ops, cm=cm, cp=cp, counts=counts)

    def to_dict(self) -> dict:
        return {
            "total_cost": self.total_cost,
            "n_ops": self.n_ops,
            "cm": self.cm,
            "cp": self.cp,
            "counts": dict(sorted(self.counts.items())),
            "ops": [
                {
                    "kind": op.kind,
                    "chars": list(op.chars),
                    "cost": op.cost,
                    "pos_a": op.pos_a,
                    "pos_b": op.pos_b,
                }
                for op in self.ops
            ],
        }


def cmp_score(path: PathSummary, k: float) -> float:
    """Penalized mean cost: ``cm + k * cp``.

    ``k`` scales the cumulative linear divergence (CP); with ``k == 0`` the
    score collapses to the mean operation cost. Raises
    :class:`DegeneratePathError` for an empty path, which signals an identity
    pair that should have been filtered upstream.
    """
    if path.n_ops < 1:
        raise DegeneratePathError("cannot score an empty edit path (identity pair)")
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    return path.cm + k * path.cp


def _dp_matrices(a: str, b: str, cfg: CostConfig):
    """Fill the (cost, op-count) DP tables for the OSA model.

    Minimization is lexicographic: total cost first, then number of
    operations. Matches cost nothing and do not count as operations.
    """
    m, n = len(a), len(b)
    sub_over = cfg.sub_overrides
    trans_over = cfg.trans_overrides
    ins_over = cfg.ins_overrides
    del_over = cfg.del_overrides
    symmetric = cfg.symmetric_subs
    default = cfg.default_cost

    del_a = [del_over.get(ch, default) for ch in a]
    ins_b = [ins_over.get(ch, default) for ch in b]

    cost = [[0.0] * (n + 1) for _ in range(m + 1)]
    nops = [[0] * (n + 1) for _ in range(m + 1)]
    for i in range(1, m + 1):
        cost[i][0] = cost[i - 1][0] + del_a[i - 1]
        nops[i][0] = i
    for j in range(1, n + 1):
        cost[0][j] = cost[0][j - 1] + ins_b[j - 1]
        nops[0][j] = j

    for i in range(1, m + 1):
        ca = a[i - 1]
        dc = del_a[i - 1]
        row_c = cost[i]
        row_n = nops[i]
        prow_c = cost[i - 1]
        prow_n = nops[i - 1]
        for j in range(1, n + 1):
            cb = b[j - 1]
            # deletion of a[i-1]
            best_c = prow_c[j] + dc
            best_n = prow_n[j] + 1
            # insertion of b[j-1]
            cand_c = row_c[j - 1] + ins_b[j - 1]
            cand_n = row_n[j - 1] + 1
            if cand_c < best_c or (cand_c == best_c and cand_n < best_n):
                best_c, best_n = cand_c, cand_n
            # match or substitution
            if ca == cb:
                cand_c = prow_c[j - 1]
                cand_n = prow_n[j - 1]
            else:
                sc = sub_over.get((ca, cb))
                if sc is None and symmetric:
                    sc = sub_over.get((cb, ca))
                if sc is None:
                    sc = default
                cand_c = prow_c[j - 1] + sc
                cand_n = prow_n[j - 1] + 1
            if cand_c < best_c or (cand_c == best_c and cand_n < best_n):
                best_c, best_n = cand_c, cand_n
            # adjacent transposition (distinct characters only)
            if i > 1 and j > 1 and ca == b[j - 2] and a[i - 2] == cb and ca != cb:
                x, y = a[i - 2], ca
                key = (x, y) if x < y else (y, x)
                tc = trans_over.get(key, default)
                cand_c = cost[i - 2][j - 2] + tc
                cand_n = nops[i - 2][j - 2] + 1
                if cand_c < best_c or (cand_c == best_c and cand_n < best_n):
                    best_c, best_n = cand_c, cand_n
            row_c[j] = best_c
            row_n[j] = best_n
    return cost, nops


def _trace(a: str, b: str, cfg: CostConfig, cost, nops, collect_ops: bool):
    """Walk the DP tables backward, applying the fixed tie-break priority.

    Returns ``(ops, cp, counts)``; ``ops`` is ``None`` when not collected.
    """
    i, j = len(a), len(b)
    ops: list[EditOp] | None = [] if collect_ops else None
    cp = 0.0
    counts = {kind: 0 for kind in KINDS}
    while i > 0 or j > 0:
        cur_c = cost[i][j]
        cur_n = nops[i][j]
        # match first: costless, fewest ops
        if i > 0 and j > 0 and a[i - 1] == b[j - 1] and cost[i - 1][j - 1] == cur_c and nops[i - 1][j - 1] == cur_n:
            i -= 1
            j -= 1
            continue
        if i > 0 and j > 0 and a[i - 1] != b[j - 1]:
            sc = lookup_sub(cfg, a[i - 1], b[j - 1])
            if cost[i - 1][j - 1] + sc == cur_c and nops[i - 1][j - 1] + 1 == cur_n:
                counts[SUBSTITUTION] += 1
                cp += sc
                if ops is not None:
                    ops.append(EditOp(SUBSTITUTION, (a[i - 1], b[j - 1]), sc, i - 1, j - 1))
                i -= 1
                j -= 1
                continue
        if i > 0:
            dc = lookup_del(cfg, a[i - 1])
            if cost[i - 1][j] + dc == cur_c and nops[i - 1][j] + 1 == cur_n:
                counts[DELETION] += 1
                cp += dc
                if ops is not None:
                    ops.append(EditOp(DELETION, (a[i - 1],), dc, i - 1, j))
                i -= 1
                continue
        if j > 0:
            ic = lookup_ins(cfg, b[j - 1])
            if cost[i][j - 1] + ic == cur_c and nops[i][j - 1] + 1 == cur_n:
                counts[INSERTION] += 1
                cp += ic
                if ops is not None:
                    ops.append(EditOp(INSERTION, (b[j - 1],), ic, i, j - 1))
                j -= 1
                continue
        if (
            i > 1
            and j > 1
            and a[i - 1] == b[j - 2]
            and a[i - 2] == b[j - 1]
            and a[i - 1] != a[i - 2]
        ):
            tc = lookup_trans(cfg, a[i - 2], a[i - 1])
            if cost[i - 2][j - 2] + tc == cur_c and nops[i - 2][j - 2] + 1 == cur_n:
                counts[TRANSPOSITION] += 1
                if ops is not None:
                    ops.append(EditOp(TRANSPOSITION, (a[i - 2], a[i - 1]), tc, i - 2, j - 2))
                i -= 2
                j -= 2
                continue
        raise AssertionError(f"backtrace stuck at ({i},{j}) aligning {a!r} -> {b!r}")
    if ops is not None:
        ops.reverse()
    return ops, cp, counts


def align(a: str, b: str, cfg: CostConfig) -> PathSummary:
    """Minimal-cost weighted edit path from ``a`` to ``b``.

    Requires ``a != b``; identity pairs are excluded upstream. Empty-vs-empty
    is therefore rejected, but an empty string against a non-empty one aligns
    as pure insertions or deletions.
    """
    if a == b:
        raise ValueError(f"align requires distinct labels, got {a!r} twice")
    cost, nops = _dp_matrices(a, b, cfg)
    ops, _, _ = _trace(a, b, cfg, cost, nops, collect_ops=True)
    summary = PathSummary.from_ops(tuple(ops))
    assert summary.total_cost == cost[len(a)][len(b)]
    return summary


def align_stats(a: str, b: str, cfg: CostConfig) -> tuple[float, int, float, dict[str, int]]:
    """Like :func:`align` but returns ``(total_cost, n_ops, cp, counts)`` only.

    Identical DP and tie-breaking; the operation list is never materialized,
    which keeps full all-pairs runs within memory bounds.
    """
    if a == b:
        raise ValueError(f"align requires distinct labels, got {a!r} twice")
    cost, nops = _dp_matrices(a, b, cfg)
    _, cp, counts = _trace(a, b, cfg, cost, nops, collect_ops=False)
    m, n = len(a), len(b)
    return cost[m][n], nops[m][n], cp, counts


def replay(a: str, ops: tuple[EditOp, ...]) -> str:
    """Apply a witness path to ``a``, reconstructing the aligned target."""
    out: list[str] = []
    ai = 0
    for op in ops:
        out.append(a[ai:op.pos_a])
        if op.kind == DELETION:
            ai = op.pos_a + 1
        elif op.kind == INSERTION:
            out.append(op.chars[0])
            ai = op.pos_a
        elif op.kind == SUBSTITUTION:
            out.append(op.chars[1])
            ai = op.pos_a + 1
        elif op.kind == TRANSPOSITION:
            out.append(op.chars[1] + op.chars[0])
            ai = op.pos_a + 2
        else:
            raise ValueError(f"unknown op kind {op.kind!r}")
    out.append(a[ai:])
    return "".join(out)
