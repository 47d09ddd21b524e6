"""Iterated constant terms of products of (1-x_i)^-k and (x_j-x_i)^-1 factors.

Two independent evaluators are provided.  The primary one propagates the
per-variable exponent constraints and never truncates; the series oracle
expands truncated Laurent series and certifies its cap by computing the
value at cap and cap+1.  (x_j-x_i)^-1 with i<j always expands as
x_j^-1 * sum_l (x_i/x_j)^l.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .graphs import DirectedStepGraph, NetFlow


class SeriesUnstableError(ArithmeticError):
    """Truncated-series values at cap and cap+1 disagree; raise the cap."""


@dataclass(frozen=True)
class CTExpression:
    """Formal product: monomial * prod (1-x_i)^-k * prod (x_j-x_i)^-1."""

    nvars: int
    monomial: tuple[int, ...]
    pow_factors: tuple[tuple[int, int], ...] = ()
    diff_factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        if self.nvars < 1:
            raise ValueError("nvars must be positive")
        if len(self.monomial) != self.nvars:
            raise ValueError("monomial length must equal nvars")
        object.__setattr__(self, "monomial", tuple(int(e) for e in self.monomial))
        for i, k in self.pow_factors:
            if not 1 <= i <= self.nvars:
                raise ValueError(f"pow factor index {i} out of range")
            if k < 1:
                raise ValueError("pow factor multiplicity must be >= 1")
        seen = set()
        for i, j in self.diff_factors:
            if not (1 <= i < j <= self.nvars):
                raise ValueError(f"diff factor ({i},{j}) needs 1 <= i < j <= nvars")
            if (i, j) in seen:
                raise ValueError(f"duplicate diff factor ({i},{j})")
            seen.add((i, j))
        object.__setattr__(self, "pow_factors", tuple(sorted(self.pow_factors)))
        object.__setattr__(self, "diff_factors", tuple(sorted(self.diff_factors)))


def evaluate(expr: CTExpression) -> int:
    """Exact iterated constant term by constraint propagation.

    One summand exponent per pow factor and one flow l per diff factor;
    processing variables in increasing index order fixes every l entering a
    variable before its own budget is known, so the zero-exponent constraint
    bounds the outgoing l values and determines the pow exponent.
    """
    n = expr.nvars
    powk = [0] * (n + 1)
    for i, k in expr.pow_factors:
        powk[i] += k
    outgoing: list[list[int]] = [[] for _ in range(n + 1)]  # highs of diffs with low=v
    incoming: list[list[int]] = [[] for _ in range(n + 1)]  # slot ids of diffs with high=v
    slot_of: dict[tuple[int, int], int] = {}
    for slot, (i, j) in enumerate(expr.diff_factors):
        outgoing[i].append(j)
        incoming[j].append(slot)
        slot_of[(i, j)] = slot
    lvals = [0] * len(expr.diff_factors)

    def walk(v: int) -> int:
        if v > n:
            return 1
        budget = -expr.monomial[v - 1] + sum(lvals[s] + 1 for s in incoming[v])
        if budget < 0:
            return 0
        highs = outgoing[v]
        total = 0

        def assign(idx: int, remaining: int) -> None:
            nonlocal total
            if idx == len(highs):
                if powk[v] == 0 and remaining != 0:
                    return
                weight = _multiset(powk[v], remaining)
                if weight:
                    total += weight * walk(v + 1)
                return
            slot = slot_of[(v, highs[idx])]
            for l in range(remaining + 1):
                lvals[slot] = l
                assign(idx + 1, remaining - l)
            lvals[slot] = 0

        assign(0, budget)
        return total

    return walk(1)


def evaluate_series_oracle(expr: CTExpression, degree_cap: int) -> int:
    """Truncated-series evaluation, certified by agreement at cap and cap+1."""
    if degree_cap < 1:
        raise ValueError("degree_cap must be >= 1")
    lo = _series_value(expr, degree_cap)
    hi = _series_value(expr, degree_cap + 1)
    if lo != hi:
        raise SeriesUnstableError(
            f"series values disagree at caps {degree_cap} ({lo}) and {degree_cap + 1} ({hi})"
        )
    return lo


def evaluate_series(expr: CTExpression) -> int:
    """Series oracle with the default cap, doubling until stable."""
    cap = 2 * (expr.nvars + sum(k for _, k in expr.pow_factors))
    for _ in range(8):
        try:
            return evaluate_series_oracle(expr, cap)
        except SeriesUnstableError:
            cap *= 2
    raise SeriesUnstableError(f"no stable cap found up to {cap}")


def _series_value(expr: CTExpression, cap: int) -> int:
    n = expr.nvars
    if any(abs(e) > cap for e in expr.monomial):
        return 0
    poly: dict[tuple[int, ...], int] = {expr.monomial: 1}
    for v in range(1, n + 1):
        for i, k in expr.pow_factors:
            if i == v:
                poly = _multiply(poly, v, [(a, _multiset(k, a)) for a in range(cap + 1)], cap)
        for i, j in expr.diff_factors:
            if i == v:
                poly = _multiply_two(poly, i, j, cap)
        poly = {e: c for e, c in poly.items() if e[v - 1] == 0}
    return poly.get((0,) * n, 0)


def _multiply(poly, var, terms, cap):
    out: dict[tuple[int, ...], int] = {}
    vi = var - 1
    for exps, coeff in poly.items():
        base = exps[vi]
        for add, w in terms:
            e = base + add
            if abs(e) > cap:
                continue
            key = exps[:vi] + (e,) + exps[vi + 1 :]
            out[key] = out.get(key, 0) + coeff * w
    return {k: c for k, c in out.items() if c}


def _multiply_two(poly, low, high, cap):
    # (x_high - x_low)^-1 = sum_l x_low^l x_high^(-l-1)
    out: dict[tuple[int, ...], int] = {}
    li, hi = low - 1, high - 1
    for exps, coeff in poly.items():
        for l in range(cap):
            el = exps[li] + l
            eh = exps[hi] - l - 1
            if abs(el) > cap or abs(eh) > cap:
                continue
            key = list(exps)
            key[li] = el
            key[hi] = eh
            tkey = tuple(key)
            out[tkey] = out.get(tkey, 0) + coeff
    return {k: c for k, c in out.items() if c}


def _multiset(n: int, m: int) -> int:
    if m < 0:
        return 0
    if n == 0:
        return 1 if m == 0 else 0
    return comb(n + m - 1, m)


def ps_ct_expression(n: int, k: int) -> CTExpression:
    """Chain expression: prod (1-x_i)^-k * prod (x_{i+1}-x_i)^-1."""
    if n < 2 or k < 1:
        raise ValueError("ps_ct_expression requires n >= 2 and k >= 1")
    return CTExpression(
        nvars=n,
        monomial=(0,) * n,
        pow_factors=tuple((i, k) for i in range(1, n + 1)),
        diff_factors=tuple((i, i + 1) for i in range(1, n)),
    )


def car_ct_expression(n: int, k: int) -> CTExpression:
    """Fan-plus-chain expression: x_1^-1 prod (1-x_i)^-k
    * prod (x_n-x_i)^-1 * prod (x_{i+1}-x_i)^-1 (chain stops at n-1)."""
    if n < 2 or k < 1:
        raise ValueError("car_ct_expression requires n >= 2 and k >= 1")
    diffs = [(i, n) for i in range(1, n)]
    diffs += [(i, i + 1) for i in range(1, n - 1)]
    return CTExpression(
        nvars=n,
        monomial=(-1,) + (0,) * (n - 1),
        pow_factors=tuple((i, k) for i in range(1, n + 1)),
        diff_factors=tuple(diffs),
    )


def flow_count_expression(graph: DirectedStepGraph, flow: NetFlow) -> CTExpression:
    """Coefficient-extraction form of the flow count for simple graphs:
    each edge (i,j) contributes x_j*(x_j-x_i)^-1 and the target coefficient
    moves into the monomial."""
    if len(flow) != graph.vertex_count:
        raise ValueError("flow length must match the graph")
    if len(set(graph.edges)) != len(graph.edges):
        raise ValueError("flow_count_expression requires a simple graph")
    monomial = [-a for a in flow.values]
    for _, j in graph.edges:
        monomial[j - 1] += 1
    return CTExpression(
        nvars=graph.vertex_count,
        monomial=tuple(monomial),
        diff_factors=graph.edges,
    )


def format_ct_expression(expr: CTExpression) -> str:
    m = ",".join(str(e) for e in expr.monomial)
    p = ",".join(f"{i}^{k}" for i, k in expr.pow_factors)
    d = ",".join(f"{i}-{j}" for i, j in expr.diff_factors)
    return f"m:{m}; p:{p}; d:{d}"


def parse_ct_expression(text: str) -> CTExpression:
    """Parse ``m:<e1,...,en>; p:<i>^<k>,...; d:<i>-<j>,...`` (p/d may be empty)."""
    sections = {"m": None, "p": "", "d": ""}
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        tag, sep, body = part.partition(":")
        tag = tag.strip()
        if not sep or tag not in sections:
            raise ValueError(f"malformed expression section {part!r}")
        sections[tag] = body.strip()
    if sections["m"] is None:
        raise ValueError("expression needs a monomial section m:<e1,...,en>")
    monomial = tuple(_int(tok) for tok in sections["m"].split(","))
    pows = []
    if sections["p"]:
        for tok in sections["p"].split(","):
            i, sep, k = tok.partition("^")
            if not sep:
                raise ValueError(f"malformed pow factor {tok!r}")
            pows.append((_int(i), _int(k)))
    diffs = []
    if sections["d"]:
        for tok in sections["d"].split(","):
            i, sep, j = tok.partition("-")
            if not sep:
                raise ValueError(f"malformed diff factor {tok!r}")
            diffs.append((_int(i), _int(j)))
    return CTExpression(len(monomial), monomial, tuple(pows), tuple(diffs))


def _int(tok: str) -> int:
    try:
        return int(tok.strip())
    except ValueError:
        raise ValueError(f"malformed integer {tok!r}") from None
