"""Finite permutations of Z, stored as ``{i: sigma(i)}`` over their support.

Composition follows ``(sigma tau)(i) = sigma(tau(i))``.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .errors import InvalidInputError

__all__ = [
    "as_permutation", "apply_perm", "inverse", "compose", "transposition",
    "product_of_transpositions", "inversion_count", "min_adjacent_decomposition",
    "from_cycles", "support",
]


def as_permutation(sigma: Mapping[int, int]) -> dict[int, int]:
    """Validate a finite map as a bijection of its support and drop fixed points."""
    sigma = {int(k): int(v) for k, v in dict(sigma).items()}
    if set(sigma) != set(sigma.values()):
        raise InvalidInputError(f"not a bijection on a finite support: {sigma}")
    return {k: v for k, v in sigma.items() if k != v}


def support(sigma: Mapping[int, int]) -> list[int]:
    return sorted(k for k, v in sigma.items() if k != v)


def apply_perm(sigma: Mapping[int, int], i: int) -> int:
    return sigma.get(i, i)


def inverse(sigma: Mapping[int, int]) -> dict[int, int]:
    return {v: k for k, v in sigma.items()}


def compose(sigma: Mapping[int, int], tau: Mapping[int, int]) -> dict[int, int]:
    """``sigma o tau``."""
    pts = set(sigma) | set(tau)
    out = {i: apply_perm(sigma, apply_perm(tau, i)) for i in pts}
    return {k: v for k, v in out.items() if k != v}


def transposition(i: int, j: int) -> dict[int, int]:
    return {} if i == j else {i: j, j: i}


def from_cycles(*cycles: Iterable[int]) -> dict[int, int]:
    """``from_cycles((3, 5, 6), (8, 9))`` is the permutation 3->5->6->3, 8<->9."""
    out: dict[int, int] = {}
    for cyc in cycles:
        cyc = list(cyc)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            if a in out:
                raise InvalidInputError(f"cycles overlap at {a}")
            out[a] = b
    return as_permutation(out)


def product_of_transpositions(ks: Iterable[int]) -> dict[int, int]:
    """``(k_m, k_m+1) ... (k_1, k_1+1)`` for ``ks = [k_1, ..., k_m]``."""
    result: dict[int, int] = {}
    for k in ks:
        result = compose(transposition(k, k + 1), result)
    return result


def inversion_count(sigma: Mapping[int, int]) -> int:
    pts = support(sigma)
    if not pts:
        return 0
    vals = [apply_perm(sigma, i) for i in range(pts[0], pts[-1] + 1)]
    return sum(1 for a in range(len(vals)) for b in range(a + 1, len(vals)) if vals[a] > vals[b])


def min_adjacent_decomposition(sigma: Mapping[int, int]) -> list[int]:
    """Return ``[k_1, ..., k_m]`` with ``sigma = (k_m, k_m+1) ... (k_1, k_1+1)`` and ``m`` minimal.

    Bubble-sorts the one-line notation of ``sigma`` over its support interval;
    each adjacent swap at positions ``(k, k+1)`` right-multiplies by that
    transposition, so the swaps come out in the order ``k_1, k_2, ...``.
    """
    sigma = as_permutation(sigma)
    if not sigma:
        return []
    lo, hi = min(sigma), max(sigma)
    line = [apply_perm(sigma, i) for i in range(lo, hi + 1)]
    ks = []
    for end in range(len(line) - 1, 0, -1):
        for pos in range(end):
            if line[pos] > line[pos + 1]:
                line[pos], line[pos + 1] = line[pos + 1], line[pos]
                ks.append(lo + pos)
    return ks
