"""Independent reference implementations used only to check the real engine.

Deliberately dumb: the textbook recurrence, full matrices, no tie-breaking,
no witness paths. Nothing here imports from the package's edit engine.
"""
from __future__ import annotations


def osa_distance(a: str, b: str) -> int:
    """Unit-cost Optimal String Alignment distance, straight off the textbook."""
    m, n = len(a), len(b)
    d = [[0] * (n + 1) for _ in range(m + 1)]
    for i in range(m + 1):
        d[i][0] = i
    for j in range(n + 1):
        d[0][j] = j
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            cost = 0 if a[i - 1] == b[j - 1] else 1
            d[i][j] = min(d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + cost)
            if i > 1 and j > 1 and a[i - 1] == b[j - 2] and a[i - 2] == b[j - 1]:
                d[i][j] = min(d[i][j], d[i - 2][j - 2] + 1)
    return d[m][n]


def ngram_bag(label: str, n_min: int = 2, n_max: int = 4) -> dict[str, int]:
    """Exact (collision-free) boundary-marked n-gram bag."""
    padded = "\x02" + label + "\x03"
    bag: dict[str, int] = {}
    for n in range(n_min, n_max + 1):
        for start in range(len(padded) - n + 1):
            gram = padded[start : start + n]
            bag[gram] = bag.get(gram, 0) + 1
    return bag


def bag_cosine(a: dict[str, int], b: dict[str, int]) -> float:
    dot = sum(count * b.get(gram, 0) for gram, count in a.items())
    norm_a = sum(c * c for c in a.values()) ** 0.5
    norm_b = sum(c * c for c in b.values()) ** 0.5
    return dot / (norm_a * norm_b)
