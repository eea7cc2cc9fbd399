"""Rank matrices of single-line multi-segments and the closure order.

The rank matrix of a graded nilpotent element f = (f_t) with exponent window
[e_min, e_max] is the l x l upper-triangular matrix (l = e_max - e_min)

    r[i][j] = rank(f_{e_max-i} o f_{e_max-i-1} o ... o f_{e_max-j}),   i <= j,

the composition starting at grade e_max-j and ending in grade e_max-i+1.
For the base point attached to a multi-segment this is additive over
segments: a segment [b, e] contributes 1 exactly at the positions

    e_max - e + 1 <= i <= j <= e_max - b.

Entrywise comparison of rank matrices decides the closure order on orbits
with a fixed infinitesimal parameter, and the matrix is a complete orbit
invariant there.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import LParameter, MultiSegment, gl_components, single_line_delta
from .halfint import HalfInt


@dataclass(frozen=True)
class RankMatrix:
    """Upper-triangular integer matrix anchored at an exponent window."""

    e_min: HalfInt
    e_max: HalfInt
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        span = self.e_max.twice - self.e_min.twice
        if span < 0 or span % 2 != 0:
            raise ValueError("invalid anchors")
        l = span // 2
        if len(self.entries) != l or any(len(row) != l for row in self.entries):
            raise ValueError(f"entries must be {l}x{l}")
        for i in range(l):
            for j in range(l):
                v = self.entries[i][j]
                if v < 0 or (j < i and v != 0):
                    raise ValueError("entries must be nonnegative and upper-triangular")
        # Ranks of longer compositions cannot exceed shorter ones.
        for i in range(l):
            for j in range(i, l):
                if j + 1 < l and self.entries[i][j] < self.entries[i][j + 1]:
                    raise ValueError("rank matrix not monotone along rows")
                if i >= 1 and i - 1 <= j and self.entries[i][j] < self.entries[i - 1][j]:
                    raise ValueError("rank matrix not monotone along columns")

    @property
    def l(self) -> int:
        return (self.e_max.twice - self.e_min.twice) // 2

    def entry(self, i: int, j: int) -> int:
        """1-based access, zero below the diagonal."""
        return self.entries[i - 1][j - 1]

    def leq(self, other: "RankMatrix") -> bool:
        self._require_same_anchors(other)
        return all(
            self.entries[i][j] <= other.entries[i][j]
            for i in range(self.l)
            for j in range(self.l)
        )

    def add(self, other: "RankMatrix") -> "RankMatrix":
        self._require_same_anchors(other)
        return RankMatrix(
            self.e_min,
            self.e_max,
            tuple(
                tuple(a + b for a, b in zip(ra, rb))
                for ra, rb in zip(self.entries, other.entries)
            ),
        )

    def pad(self, e_min: HalfInt, e_max: HalfInt) -> "RankMatrix":
        """Extend to a larger exponent window.  Compositions leaving the old
        window hit zero spaces, so the old entries embed as a block offset by
        e_max - old e_max and everything else is zero."""
        if e_min > self.e_min or e_max < self.e_max:
            raise ValueError("padding must enlarge the window")
        l = (e_max.twice - e_min.twice) // 2
        shift = (e_max.twice - self.e_max.twice) // 2
        rows = [[0] * l for _ in range(l)]
        for i in range(self.l):
            for j in range(self.l):
                rows[i + shift][j + shift] = self.entries[i][j]
        return RankMatrix(e_min, e_max, tuple(tuple(r) for r in rows))

    def to_json(self) -> dict:
        return {
            "e_min": str(self.e_min),
            "e_max": str(self.e_max),
            "entries": [list(row) for row in self.entries],
        }

    def _require_same_anchors(self, other: "RankMatrix") -> None:
        if self.e_min != other.e_min or self.e_max != other.e_max:
            raise ValueError(
                f"anchor mismatch: ({self.e_min},{self.e_max}) vs "
                f"({other.e_min},{other.e_max})"
            )

    def __str__(self) -> str:
        body = "; ".join(" ".join(str(v) for v in row) for row in self.entries)
        return f"RankMatrix[{self.e_min},{self.e_max}]({body})"


def rank_matrix(m: MultiSegment) -> RankMatrix:
    """Rank matrix of a nonempty single-line multi-segment, as the sum of the
    per-segment indicator matrices."""
    single_line_delta(m)  # raises on empty or mixed-line input
    e_max = max(s.e for s, _ in m.pairs)
    e_min = min(s.b for s, _ in m.pairs)
    l = (e_max.twice - e_min.twice) // 2
    rows = [[0] * l for _ in range(l)]
    for seg, mult in m.pairs:
        i_lo = (e_max.twice - seg.e.twice) // 2 + 1
        j_hi = (e_max.twice - seg.b.twice) // 2
        for i in range(i_lo, j_hi + 1):
            for j in range(i, j_hi + 1):
                rows[i - 1][j - 1] += mult
    return RankMatrix(e_min, e_max, tuple(tuple(r) for r in rows))


def rm_leq(r1: RankMatrix, r2: RankMatrix) -> bool:
    """Entrywise comparison; r1 <= r2 means the orbit of r1 lies in the
    closure of the orbit of r2."""
    return r1.leq(r2)


def rm_add(r1: RankMatrix, r2: RankMatrix) -> RankMatrix:
    return r1.add(r2)


def closure_leq(p1: LParameter, p2: LParameter) -> bool:
    """Closure order on parameters with equal group and infinitesimal
    parameter: true iff every general-linear line of p1 has rank matrix
    entrywise below the matching line of p2."""
    if p1.group != p2.group:
        raise ValueError("parameters belong to different groups")
    if p1.infinitesimal() != p2.infinitesimal():
        raise ValueError("infinitesimal parameters differ")
    comps1 = gl_components(p1.mseg)
    comps2 = gl_components(p2.mseg)
    assert set(comps1) == set(comps2)
    return all(rm_leq(rank_matrix(comps1[k]), rank_matrix(comps2[k])) for k in comps1)
