"""Normalized flow-polytope volumes via dominance-constrained multinomial sums.

The volume of the flow polytope is a sum over compositions s of m-n
dominating the shifted out-degree vector, each weighted by a multinomial
coefficient and a flow count on the restriction to the first n vertices.
Everything is exact integer arithmetic; polynomial fitting uses Fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterator, Sequence

from .graphs import DirectedStepGraph, NetFlow, augment, restrict
from .kostant import count_flows


class FitMismatchError(ArithmeticError):
    """Interpolated polynomial failed to reproduce the extrapolation sample."""


@dataclass(frozen=True)
class Composition:
    """Nonnegative integer parts with their total."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "parts", tuple(int(p) for p in self.parts))
        if any(p < 0 for p in self.parts):
            raise ValueError("composition parts must be nonnegative")

    @property
    def total(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)


def dominates(s: Composition | Sequence[int], t: Composition | Sequence[int]) -> bool:
    """True iff every prefix sum of s is >= the corresponding prefix sum of t."""
    sp = s.parts if isinstance(s, Composition) else tuple(s)
    tp = t.parts if isinstance(t, Composition) else tuple(t)
    if len(sp) != len(tp):
        raise ValueError("dominance needs equal lengths")
    ssum = tsum = 0
    for a, b in zip(sp, tp):
        ssum += a
        tsum += b
        if ssum < tsum:
            return False
    return True


def dominant_compositions(
    total: int, length: int, t: Composition | Sequence[int]
) -> list[Composition]:
    """All compositions of total into `length` parts dominating t, in
    lexicographically decreasing order."""
    tp = t.parts if isinstance(t, Composition) else tuple(int(v) for v in t)
    if len(tp) != length:
        raise ValueError("t must have the given length")
    if total < 0:
        raise ValueError("total must be nonnegative")
    return [Composition(s) for s in iter_dominant(total, length, tp)]


def iter_dominant(total: int, length: int, t: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Prefix-sum-pruned generator behind dominant_compositions; t entries
    may be negative (shifted out-degree vectors can be)."""
    if length == 0:
        if total == 0:
            yield ()
        return
    tsums = []
    acc = 0
    for v in t:
        acc += v
        tsums.append(acc)
    if total < tsums[-1]:
        return
    prefix: list[int] = []

    def walk(idx: int, ssum: int) -> Iterator[tuple[int, ...]]:
        if idx == length - 1:
            last = total - ssum
            if last >= 0:
                prefix.append(last)
                yield tuple(prefix)
                prefix.pop()
            return
        lo = max(0, tsums[idx] - ssum)
        for v in range(total - ssum, lo - 1, -1):
            prefix.append(v)
            yield from walk(idx + 1, ssum + v)
            prefix.pop()

    yield from walk(0, 0)


def multinomial(total: int, parts: Sequence[int]) -> int:
    if sum(parts) != total:
        raise ValueError("multinomial parts must sum to the total")
    result = 1
    remaining = total
    for p in parts:
        result *= comb(remaining, p)
        remaining -= p
    return result


@lru_cache(maxsize=None)
def volume_terms(graph: DirectedStepGraph) -> tuple[tuple[tuple[int, ...], int], ...]:
    """Pairs (s, multinomial * flow count of the restriction at s - t);
    the volume at a net flow is the sum of coeff * prod a_i^{s_i}."""
    n = graph.vertex_count - 1
    if n < 1:
        raise ValueError("volume needs at least two vertices")
    m = graph.edge_count
    degrees = graph.out_degrees()
    t = tuple(degrees[i] - 1 for i in range(n))
    inner = restrict(graph, n)
    terms = []
    for s in iter_dominant(m - n, n, t):
        flows = count_flows(inner, NetFlow(tuple(si - ti for si, ti in zip(s, t))))
        if flows:
            terms.append((s, multinomial(m - n, s) * flows))
    return tuple(terms)


def volume(graph: DirectedStepGraph, flow: NetFlow) -> int:
    """Normalized volume of the flow polytope; the sink entry of the flow is
    not used by the sum."""
    if len(flow) != graph.vertex_count:
        raise ValueError("net flow length must match the graph")
    values = flow.values
    total = 0
    for s, coeff in volume_terms(graph):
        term = coeff
        for a, e in zip(values, s):
            term *= a**e
        total += term
    return total


def unit_flow_volume(graph: DirectedStepGraph) -> int:
    """Volume at net flow (1, 0, ..., 0, -1), read off a single flow count."""
    degs = graph.out_degrees()
    n = graph.vertex_count - 1
    if n < 1:
        raise ValueError("unit_flow_volume needs at least two vertices")
    p = sum(degs[i] for i in range(1, n)) - n + 1
    vector = (p,) + tuple(1 - degs[i] for i in range(1, n)) + (0,)
    return count_flows(graph, NetFlow(vector))


def ehrhart_like(graph: DirectedStepGraph, k: int) -> int:
    """Volume of the k-fold augmented graph at net flow (1, 0^n)."""
    if k < 1:
        raise ValueError("ehrhart_like requires k >= 1")
    return unit_flow_volume(augment(graph, k))


def fit_ehrhart_polynomial(graph: DirectedStepGraph, k_max: int) -> tuple[Fraction, ...]:
    """Interpolate the augmented-volume values at k = 1..k_max exactly and
    return the coefficients (constant first, trailing zeros trimmed).

    The fit must reproduce the value at k_max + 1, otherwise the degree
    bound was too small (or something is broken) and FitMismatchError is
    raised.
    """
    if k_max < graph.vertex_count + 1:
        raise ValueError("k_max must be at least vertex_count + 1 sample points")
    samples = [(k, ehrhart_like(graph, k)) for k in range(1, k_max + 1)]
    coeffs = _interpolate(samples)
    check = sum(c * Fraction(k_max + 1) ** e for e, c in enumerate(coeffs))
    if check != ehrhart_like(graph, k_max + 1):
        raise FitMismatchError(
            f"fitted polynomial gives {check} at {k_max + 1}, "
            f"sampled value is {ehrhart_like(graph, k_max + 1)}"
        )
    return coeffs


def _interpolate(samples: list[tuple[int, int]]) -> tuple[Fraction, ...]:
    # Newton divided differences, then expansion into monomial coefficients.
    xs = [Fraction(x) for x, _ in samples]
    divided = [Fraction(y) for _, y in samples]
    for level in range(1, len(samples)):
        for idx in range(len(samples) - 1, level - 1, -1):
            divided[idx] = (divided[idx] - divided[idx - 1]) / (xs[idx] - xs[idx - level])
    coeffs = [Fraction(0)] * len(samples)
    basis = [Fraction(1)] + [Fraction(0)] * (len(samples) - 1)  # prod (x - x_j) so far
    for level, d in enumerate(divided):
        for e in range(level + 1):
            coeffs[e] += d * basis[e]
        if level + 1 < len(samples):
            new_basis = [Fraction(0)] * len(samples)
            for e in range(level + 1):
                new_basis[e + 1] += basis[e]
                new_basis[e] -= xs[level] * basis[e]
            basis = new_basis
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)
