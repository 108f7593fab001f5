"""Weyl group and complete Weyl group machinery for parity diagrams.

Permutations are tuples in one-line notation, 1-based: ``w[i-1]`` is the
image of ``i``.  Composition is "apply the right factor first".
"""

from __future__ import annotations

from itertools import permutations as _permutations
from typing import Dict, List, Tuple

from .rootdata import ParityDiagram

Perm = Tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def compose(w2: Perm, w1: Perm) -> Perm:
    """(w2 o w1)(i) = w2(w1(i))."""
    return tuple(w2[w1[i] - 1] for i in range(len(w1)))


def inverse(w: Perm) -> Perm:
    out = [0] * len(w)
    for i, v in enumerate(w):
        out[v - 1] = i + 1
    return tuple(out)


def transposition(n: int, i: int) -> Perm:
    """Adjacent transposition swapping i and i+1."""
    w = list(range(1, n + 1))
    w[i - 1], w[i] = w[i], w[i - 1]
    return tuple(w)


def swap_of(n: int, a: int, b: int) -> Perm:
    w = list(range(1, n + 1))
    w[a - 1], w[b - 1] = w[b - 1], w[a - 1]
    return tuple(w)


def all_permutations(n: int) -> List[Perm]:
    return [tuple(p) for p in _permutations(range(1, n + 1))]


def canonical_decompose(w: Perm) -> List[List[int]]:
    """Unique staged decomposition w = w_1 o ... o w_{n-1}.

    Stage k contributes either the identity (empty list) or the
    descending run of adjacent transpositions sigma_k..sigma_t, returned
    as the index list [k, k-1, ..., t].
    """
    n = len(w)
    stages: List[List[int]] = [[] for _ in range(n - 1)]
    current = w
    for k in range(n - 1, 0, -1):
        target = k + 1
        t = inverse(current)[target - 1]
        if t != target:
            stages[k - 1] = list(range(k, t - 1, -1))
            stage_perm = identity(n)
            for idx in stages[k - 1]:
                stage_perm = compose(stage_perm, transposition(n, idx))
            current = compose(current, inverse(stage_perm))
    return stages


def recompose(n: int, stages: List[List[int]]) -> Perm:
    w = identity(n)
    for stage in stages:
        stage_perm = identity(n)
        for idx in stage:
            stage_perm = compose(stage_perm, transposition(n, idx))
        w = compose(w, stage_perm)
    return w


def grade(w: Perm, diagram: ParityDiagram) -> int:
    """Z2 grade from the staged decomposition; each sigma_i weighs the
    parity sum of units i and i+1."""
    p = diagram.parities
    total = 0
    for stage in canonical_decompose(w):
        for idx in stage:
            total += (p[idx - 1] + p[idx]) % 2
    return total % 2


def act_on_basis(w: Perm, diagram: ParityDiagram) -> ParityDiagram:
    """Transport the parity sequence: position j receives the parity of
    the unit sent there, so the map is a left action."""
    inv = inverse(w)
    return ParityDiagram(diagram.parities[inv[j - 1] - 1] for j in range(1, len(w) + 1))


def weyl_subgroup_members(diagram: ParityDiagram):
    """Membership predicate for the parity-preserving subgroup."""
    p = diagram.parities

    def member(w: Perm) -> bool:
        return all(p[w[i] - 1] == p[i] for i in range(len(w)))

    return member


def weyl_group_order(diagram: ParityDiagram) -> int:
    import math
    return math.factorial(diagram.n_even) * math.factorial(diagram.n_odd)


def _block_generators(diagram: ParityDiagram) -> Dict[str, List[Perm]]:
    """Adjacent-in-block transpositions generating the parity-preserving
    subgroup, keyed "even"/"odd"."""
    n = len(diagram)
    out: Dict[str, List[Perm]] = {"even": [], "odd": []}
    for parity, key in ((0, "even"), (1, "odd")):
        positions = [i + 1 for i, p in enumerate(diagram.parities) if p == parity]
        for a, b in zip(positions, positions[1:]):
            out[key].append(swap_of(n, a, b))
    return out


def check_coxeter(diagram: ParityDiagram) -> Dict[str, List[dict]]:
    """Verify the defining relations for both the parity-preserving
    subgroup and the full symmetric group on the units."""
    n = len(diagram)
    e = identity(n)
    report: Dict[str, List[dict]] = {"weyl": [], "complete": []}

    blocks = _block_generators(diagram)
    for key in ("even", "odd"):
        gens = blocks[key]
        for a, g in enumerate(gens):
            report["weyl"].append({
                "relation": f"{key}[{a}]^2 = id",
                "passed": compose(g, g) == e,
            })
        for a in range(len(gens) - 1):
            g, h = gens[a], gens[a + 1]
            gh = compose(g, h)
            report["weyl"].append({
                "relation": f"({key}[{a}] {key}[{a + 1}])^3 = id",
                "passed": compose(gh, compose(gh, gh)) == e,
            })
        for a in range(len(gens)):
            for b in range(a + 2, len(gens)):
                report["weyl"].append({
                    "relation": f"{key}[{a}] {key}[{b}] commute",
                    "passed": compose(gens[a], gens[b]) == compose(gens[b], gens[a]),
                })
    for g in blocks["even"]:
        for h in blocks["odd"]:
            report["weyl"].append({
                "relation": "cross-block commute",
                "passed": compose(g, h) == compose(h, g),
            })

    sigmas = [transposition(n, i) for i in range(1, n)]
    for i, s in enumerate(sigmas, start=1):
        report["complete"].append({
            "relation": f"sigma{i}^2 = id",
            "passed": compose(s, s) == e,
        })
    for i in range(1, n - 1):
        st = compose(sigmas[i - 1], sigmas[i])
        report["complete"].append({
            "relation": f"(sigma{i} sigma{i + 1})^3 = id",
            "passed": compose(st, compose(st, st)) == e,
        })
    for i in range(1, n):
        for j in range(i + 2, n):
            report["complete"].append({
                "relation": f"sigma{i} sigma{j} commute",
                "passed": compose(sigmas[i - 1], sigmas[j - 1])
                == compose(sigmas[j - 1], sigmas[i - 1]),
            })
    return report
