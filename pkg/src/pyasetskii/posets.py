"""Exhaustive enumeration of parameters with a fixed infinitesimal parameter,
closure posets, Hasse diagrams, and the dominating-involutions checker.

Enumeration extracts, recursively, one segment ending at the maximal
remaining exponent; memoization on the canonical remaining support and
deduplication through canonical multi-segment forms make the search
exhaustive and duplicate-free.  The support size is capped (default 12
exponents per line) to bound the exponential search.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .core import (
    EMPTY,
    GroupType,
    InfinitesimalParameter,
    LParameter,
    MultiSegment,
    RhoClass,
    Segment,
    TRIVIAL_RHO,
    line_parity,
    LineKey,
    validate,
)
from .halfint import HalfInt, hi
from .rankmat import closure_leq

DEFAULT_SUPPORT_CAP = 12


class SupportCapExceeded(ValueError):
    pass


# Canonical endpoint-level enumeration cache: support key -> endpoint msegs.
_ENUM_CACHE: dict[tuple, tuple[tuple[tuple[int, int], ...], ...]] = {}


def _support_key(counts: dict[int, int]) -> tuple:
    return tuple(sorted((x, m) for x, m in counts.items() if m))


def _enum_endpoints(counts: dict[int, int]) -> tuple[tuple[tuple[int, int], ...], ...]:
    key = _support_key(counts)
    if not key:
        return ((),)
    cached = _ENUM_CACHE.get(key)
    if cached is not None:
        return cached
    top = max(x for x, _ in key)
    results: set[tuple[tuple[int, int], ...]] = set()
    b = top
    while counts.get(b, 0) > 0:
        # extract the segment [b, top] (twice-value grid steps are 2)
        for x in range(b, top + 2, 2):
            counts[x] -= 1
        for rest in _enum_endpoints(counts):
            results.add(tuple(sorted(rest + ((b, top),))))
        for x in range(b, top + 2, 2):
            counts[x] += 1
        b -= 2
    out = tuple(sorted(results))
    _ENUM_CACHE[key] = out
    return out


def enum_line(
    support: Iterable[HalfInt | int],
    rho: RhoClass = TRIVIAL_RHO,
    cap: int = DEFAULT_SUPPORT_CAP,
) -> list[MultiSegment]:
    """All multi-segments over ``rho`` whose exponent expansion equals the
    given support (a multiset of half-integers on one grid)."""
    exps = [hi(x) for x in support]
    if not exps:
        raise ValueError("empty support")
    if len({x.frac() for x in exps}) > 1:
        raise ValueError("support spans more than one grid")
    if len(exps) > cap:
        raise SupportCapExceeded(
            f"support has {len(exps)} exponents, over the cap {cap}"
        )
    counts: dict[int, int] = {}
    for x in exps:
        counts[x.twice] = counts.get(x.twice, 0) + 1
    return [
        MultiSegment.of(
            [Segment(rho, HalfInt(b2), HalfInt(e2)) for b2, e2 in endpoints]
        )
        for endpoints in _enum_endpoints(counts)
    ]


def _line_supports(
    lam: InfinitesimalParameter,
) -> dict[LineKey, dict[RhoClass, list[HalfInt]]]:
    """Support of each isotypic line, split by actual class within the line."""
    lines: dict[LineKey, dict[RhoClass, list[HalfInt]]] = {}
    for (rho, x), mult in lam.pairs:
        key_rho = rho
        if rho.selfdual == "none" and rho.dual_label < rho.label:
            key_rho = rho.dual()
        key = LineKey(key_rho, x.frac())
        lines.setdefault(key, {}).setdefault(rho, []).extend([x] * mult)
    return {
        key: lines[key]
        for key in sorted(lines, key=lambda k: (k.rho.label, k.delta.twice))
    }


def enum_classical(
    lam: InfinitesimalParameter,
    group: GroupType,
    cap: int = DEFAULT_SUPPORT_CAP,
) -> list[LParameter]:
    """All parameters of ``group`` with infinitesimal parameter ``lam``.

    General-linear groups take all products of line enumerations.  Classical
    groups filter each self-dual line by self-duality of the multi-segment
    (good parity) plus even multiplicity of self-centered segments (bad
    parity), and enumerate one free side of each non-self-dual pair.
    """
    if lam.dim() != group.std_dim:
        raise ValueError(
            f"support dimension {lam.dim()} != {group.std_dim} for {group}"
        )
    if group.is_classical and not lam.is_selfdual:
        raise ValueError("classical groups require a self-dual support")

    per_line: list[list[MultiSegment]] = []
    for key, by_class in _line_supports(lam).items():
        if not group.is_classical:
            # every class is its own general-linear line
            for rho in sorted(by_class, key=lambda r: r.label):
                per_line.append(enum_line(by_class[rho], rho, cap))
            continue
        parity = line_parity(key, group)
        if parity == "nonselfdual":
            rho_small = key.rho
            halves = enum_line(by_class[rho_small], rho_small, cap)
            per_line.append([m + m.dual() for m in halves])
            continue
        rho = key.rho
        options = [m for m in enum_line(by_class[rho], rho, cap) if m.is_selfdual]
        if parity == "bad":
            options = [
                m
                for m in options
                if all(
                    mult % 2 == 0
                    for seg, mult in m.pairs
                    if seg.is_self_centered
                )
            ]
        per_line.append(options)

    params = []
    for combo in itertools.product(*per_line):
        total = EMPTY
        for part in combo:
            total = total + part
        p = LParameter(group, total)
        assert not validate(p), f"enumerated an invalid parameter {p}"
        params.append(p)
    params.sort(key=lambda q: tuple(s.sort_key() for s in q.mseg.segments()))
    return params


@dataclass(frozen=True)
class ParameterPoset:
    """Closure poset on parameters sharing a group and infinitesimal
    parameter.  ``leq[i][j]`` means node i lies in the closure of node j;
    ``hasse`` is the transitive reduction, edges directed small to large."""

    nodes: tuple[LParameter, ...]
    leq: tuple[tuple[bool, ...], ...]
    hasse: tuple[tuple[int, int], ...]

    @property
    def n(self) -> int:
        return len(self.nodes)

    def maximal(self) -> list[int]:
        return [
            i
            for i in range(self.n)
            if not any(self.leq[i][j] and i != j for j in range(self.n))
        ]

    def minimal(self) -> list[int]:
        return [
            i
            for i in range(self.n)
            if not any(self.leq[j][i] and i != j for j in range(self.n))
        ]

    def unique_max(self) -> int | None:
        """The index of the maximum (open orbit) when one exists."""
        for i in range(self.n):
            if all(self.leq[j][i] for j in range(self.n)):
                return i
        return None

    def unique_min(self) -> int | None:
        for i in range(self.n):
            if all(self.leq[i][j] for j in range(self.n)):
                return i
        return None

    def to_json(self) -> dict:
        return {
            "nodes": [str(p.mseg) for p in self.nodes],
            "hasse": [list(edge) for edge in self.hasse],
        }


def build_poset(params: Sequence[LParameter]) -> ParameterPoset:
    if not params:
        raise ValueError("empty parameter list")
    group = params[0].group
    lam = params[0].infinitesimal()
    if any(p.group != group or p.infinitesimal() != lam for p in params):
        raise ValueError("parameters mix groups or infinitesimal parameters")
    n = len(params)
    leq = [[closure_leq(params[i], params[j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            # antisymmetry: rank matrices are a complete orbit invariant
            if i != j and leq[i][j] and leq[j][i]:
                raise AssertionError("closure order failed antisymmetry")
    edges = []
    for i in range(n):
        for j in range(n):
            if i == j or not leq[i][j]:
                continue
            if any(
                k != i and k != j and leq[i][k] and leq[k][j] for k in range(n)
            ):
                continue
            edges.append((i, j))
    return ParameterPoset(tuple(params), tuple(map(tuple, leq)), tuple(sorted(edges)))


def involution_indices(
    poset: ParameterPoset, fn: Callable[[LParameter], LParameter]
) -> tuple[int, ...]:
    """Index form of a node map given as a function on parameters."""
    where = {p: i for i, p in enumerate(poset.nodes)}
    out = []
    for p in poset.nodes:
        q = fn(p)
        if q not in where:
            raise ValueError(f"map leaves the poset: {p} -> {q}")
        out.append(where[q])
    return tuple(out)


def check_dominating_involutions(
    poset: ParameterPoset,
    iota1: Sequence[int],
    iota2: Sequence[int],
) -> bool:
    """Return whether the two involutions coincide.  When iota1(s) >= iota2(s)
    holds for every node, the maps are forced equal on a finite poset; that
    implication is asserted, so a counterexample signals a bug."""
    n = poset.n
    for iota in (iota1, iota2):
        if len(iota) != n or any(iota[iota[s]] != s for s in range(n)):
            raise ValueError("map is not an involution on the poset")
    dominates = all(poset.leq[iota2[s]][iota1[s]] for s in range(n))
    equal = all(iota1[s] == iota2[s] for s in range(n))
    if dominates and not equal:
        raise AssertionError(
            "dominating involutions must be equal on a finite poset"
        )
    return equal


def dot_export(poset: ParameterPoset) -> str:
    """Deterministic Graphviz digraph of the Hasse diagram, edges directed
    from smaller to larger orbit."""
    lines = ["digraph closure_order {", "  rankdir=BT;"]
    for i, p in enumerate(poset.nodes):
        label = str(p.mseg).replace('"', r"\"")
        lines.append(f'  n{i} [label="{label}"];')
    for i, j in poset.hasse:
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
