"""Combinatorial model of L-parameters.

An L-parameter of a general linear or classical p-adic group is encoded as a
multi-segment: a multiset of intervals ``[b, e]`` of half-integer twists of a
unitary supercuspidal class.  Supercuspidal classes are opaque descriptors
(label, dimension, self-duality sign); the tool never models the Weil group
itself.

The module provides:

* ``RhoClass``, ``Segment``, ``MultiSegment`` and the elementary segment
  operations (contragredient, truncations, precedence);
* ``InfinitesimalParameter``, the exponent-level restriction of a parameter;
* ``LineKey`` / ``decompose_lines``, the partition of a multi-segment into
  isotypic lines (one self-dual class and grid offset per key, non-self-dual
  classes grouped with their duals);
* parity classification of lines (``good`` / ``bad`` / ``nonselfdual``) with
  respect to a classical group's form sign;
* ``LParameter`` and ``validate``.

All values are immutable and all operations pure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .halfint import HalfInt, hi

SELFDUAL_KINDS = ("none", "orthogonal", "symplectic")


@dataclass(frozen=True, slots=True)
class RhoClass:
    """Descriptor of a unitary supercuspidal class.

    ``dim`` is the dimension of the class as a Weil-group representation.
    ``selfdual`` records the sign of the invariant bilinear form when the
    class is self-dual ("orthogonal" or "symplectic"), or "none".  For a
    non-self-dual class, ``dual_label`` names the contragredient class.
    """

    label: str
    dim: int
    selfdual: str
    dual_label: str = ""

    def __post_init__(self) -> None:
        if self.selfdual not in SELFDUAL_KINDS:
            raise ValueError(f"bad selfdual kind {self.selfdual!r}")
        if self.dim < 1:
            raise ValueError("class dimension must be positive")
        if not self.dual_label:
            object.__setattr__(self, "dual_label", self.label)
        if (self.selfdual == "none") != (self.dual_label != self.label):
            raise ValueError(
                f"class {self.label!r}: selfdual={self.selfdual!r} inconsistent "
                f"with dual_label={self.dual_label!r}"
            )

    def dual(self) -> "RhoClass":
        if self.selfdual != "none":
            return self
        return RhoClass(self.dual_label, self.dim, "none", self.label)

    @property
    def epsilon(self) -> int | None:
        """Sign of the invariant form on the class: +1, -1, or None."""
        if self.selfdual == "orthogonal":
            return 1
        if self.selfdual == "symplectic":
            return -1
        return None


#: The 1-dimensional trivial class, used after unramification.
TRIVIAL_RHO = RhoClass("1", 1, "orthogonal")


@dataclass(frozen=True, slots=True)
class Segment:
    """An interval ``[b, e]`` of twists of a class, with ``e - b`` a
    nonnegative integer.  Empty segments are never constructed; operations
    that would produce one return ``None``."""

    rho: RhoClass
    b: HalfInt
    e: HalfInt

    def __post_init__(self) -> None:
        object.__setattr__(self, "b", hi(self.b))
        object.__setattr__(self, "e", hi(self.e))
        d = self.e.twice - self.b.twice
        if d < 0 or d % 2 != 0:
            raise ValueError(f"invalid segment endpoints [{self.b},{self.e}]")

    @property
    def length(self) -> int:
        return (self.e.twice - self.b.twice) // 2 + 1

    @property
    def dim(self) -> int:
        return self.rho.dim * self.length

    @property
    def delta(self) -> HalfInt:
        """Grid offset of the segment's exponents in {0, 1/2}."""
        return self.b.frac()

    def exponents(self) -> tuple[HalfInt, ...]:
        return tuple(HalfInt(self.b.twice + 2 * k) for k in range(self.length))

    def dual(self) -> "Segment":
        return Segment(self.rho.dual(), -self.e, -self.b)

    def minus(self) -> "Segment | None":
        """Drop the top exponent: ``[b, e-1]``, or None when that is empty."""
        if self.length == 1:
            return None
        return Segment(self.rho, self.b, self.e - 1)

    def preminus(self) -> "Segment | None":
        """Drop the bottom exponent: ``[b+1, e]``, or None when empty."""
        if self.length == 1:
            return None
        return Segment(self.rho, self.b + 1, self.e)

    def precedes(self, other: "Segment") -> bool:
        """Strict linkage order: self = [b',e'] precedes other = [b,e] iff the
        classes agree, b' - b is integral, b' < b, e' < e and b <= e' + 1."""
        if self.rho != other.rho:
            return False
        if (self.b.twice - other.b.twice) % 2 != 0:
            return False
        return self.b < other.b and self.e < other.e and other.b <= self.e + 1

    @property
    def is_self_centered(self) -> bool:
        """True when the segment equals its own contragredient."""
        return self.rho.selfdual != "none" and self.b.twice == -self.e.twice

    def sort_key(self) -> tuple:
        return (self.rho.label, -self.e.twice, -self.b.twice)

    def __str__(self) -> str:
        return f"[{self.b},{self.e}]_{self.rho.label}"


class MultiSegment:
    """An immutable multiset of segments in canonical form.

    Canonical storage is a tuple of ``(segment, multiplicity)`` pairs sorted
    by (class label, end descending, start descending); equality and hashing
    are structural on that tuple.
    """

    __slots__ = ("_pairs",)

    def __init__(self, pairs: Iterable[tuple[Segment, int]]):
        merged: dict[Segment, int] = {}
        for seg, mult in pairs:
            if mult < 0:
                raise ValueError("negative multiplicity")
            if mult:
                merged[seg] = merged.get(seg, 0) + mult
        object.__setattr__(
            self,
            "_pairs",
            tuple(sorted(merged.items(), key=lambda p: p[0].sort_key())),
        )

    @staticmethod
    def of(segs: Iterable[Segment]) -> "MultiSegment":
        return MultiSegment((s, 1) for s in segs)

    @property
    def pairs(self) -> tuple[tuple[Segment, int], ...]:
        return self._pairs

    def segments(self) -> Iterator[Segment]:
        for seg, mult in self._pairs:
            for _ in range(mult):
                yield seg

    def mult(self, seg: Segment) -> int:
        for s, m in self._pairs:
            if s == seg:
                return m
        return 0

    @property
    def size(self) -> int:
        return sum(m for _, m in self._pairs)

    def dim(self) -> int:
        return sum(s.dim * m for s, m in self._pairs)

    def __bool__(self) -> bool:
        return bool(self._pairs)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, MultiSegment) and self._pairs == other._pairs

    def __hash__(self) -> int:
        return hash(self._pairs)

    def __add__(self, other: "MultiSegment") -> "MultiSegment":
        return MultiSegment(self._pairs + other._pairs)

    def __sub__(self, other: "MultiSegment") -> "MultiSegment":
        counts = dict(self._pairs)
        for seg, mult in other._pairs:
            have = counts.get(seg, 0)
            if have < mult:
                raise ValueError(f"multiplicity underflow removing {mult}x{seg}")
            counts[seg] = have - mult
        return MultiSegment(counts.items())

    def dual(self) -> "MultiSegment":
        return MultiSegment((s.dual(), m) for s, m in self._pairs)

    @property
    def is_selfdual(self) -> bool:
        return self == self.dual()

    def infinitesimal(self) -> "InfinitesimalParameter":
        items: list[tuple[RhoClass, HalfInt]] = []
        for seg, mult in self._pairs:
            for x in seg.exponents():
                items.extend([(seg.rho, x)] * mult)
        return InfinitesimalParameter.of(items)

    def class_labels(self) -> tuple[str, ...]:
        return tuple(sorted({s.rho.label for s, _ in self._pairs}))

    def __str__(self) -> str:
        if not self._pairs:
            return "{}"
        parts = []
        for seg, mult in self._pairs:
            parts.append(f"{mult}*{seg}" if mult > 1 else str(seg))
        return "{" + " + ".join(parts) + "}"

    def __repr__(self) -> str:
        return f"MultiSegment({str(self)})"


EMPTY = MultiSegment(())


class InfinitesimalParameter:
    """Multiset of (class, exponent) pairs: the exponent-level support of a
    multi-segment, i.e. the lattice expansion of all its segments."""

    __slots__ = ("_pairs",)

    def __init__(self, pairs: Iterable[tuple[tuple[RhoClass, HalfInt], int]]):
        merged: dict[tuple[RhoClass, HalfInt], int] = {}
        for key, mult in pairs:
            if mult:
                merged[key] = merged.get(key, 0) + mult
        object.__setattr__(
            self,
            "_pairs",
            tuple(sorted(merged.items(), key=lambda p: (p[0][0].label, p[0][1].twice))),
        )

    @staticmethod
    def of(items: Iterable[tuple[RhoClass, HalfInt]]) -> "InfinitesimalParameter":
        return InfinitesimalParameter(((rho, x), 1) for rho, x in items)

    @property
    def pairs(self) -> tuple[tuple[tuple[RhoClass, HalfInt], int], ...]:
        return self._pairs

    def dual(self) -> "InfinitesimalParameter":
        return InfinitesimalParameter(
            (((rho.dual(), -x), m) for (rho, x), m in self._pairs)
        )

    @property
    def is_selfdual(self) -> bool:
        return self == self.dual()

    def dim(self) -> int:
        return sum(rho.dim * m for (rho, _), m in self._pairs)

    @property
    def size(self) -> int:
        return sum(m for _, m in self._pairs)

    def __bool__(self) -> bool:
        return bool(self._pairs)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, InfinitesimalParameter) and self._pairs == other._pairs
        )

    def __hash__(self) -> int:
        return hash(self._pairs)

    def __str__(self) -> str:
        parts = [
            (f"{m}*" if m > 1 else "") + f"({rho.label},{x})"
            for (rho, x), m in self._pairs
        ]
        return "{" + ", ".join(parts) + "}"

    def __repr__(self) -> str:
        return f"InfinitesimalParameter({str(self)})"


def infinitesimal(m: MultiSegment) -> InfinitesimalParameter:
    return m.infinitesimal()


@dataclass(frozen=True, slots=True)
class GroupType:
    """Group kind and rank.  ``std_dim`` is the dimension N of the standard
    representation of the dual group: N = n for GL(n), 2n for SO(2n+1)
    (symplectic dual), 2n+1 for Sp(2n) (odd orthogonal dual), and 2n for
    O(2n)."""

    kind: str
    n: int

    KINDS = ("GL", "SO_odd", "Sp", "O_even")

    def __post_init__(self) -> None:
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown group kind {self.kind!r}")
        if self.n < 0 or (self.kind == "GL" and self.n < 1):
            raise ValueError(f"bad rank {self.n} for {self.kind}")

    @classmethod
    def gl(cls, n: int) -> "GroupType":
        return cls("GL", n)

    @classmethod
    def so_odd(cls, n: int) -> "GroupType":
        return cls("SO_odd", n)

    @classmethod
    def sp(cls, n: int) -> "GroupType":
        return cls("Sp", n)

    @classmethod
    def o_even(cls, n: int) -> "GroupType":
        return cls("O_even", n)

    @property
    def std_dim(self) -> int:
        if self.kind == "GL":
            return self.n
        if self.kind == "Sp":
            return 2 * self.n + 1
        return 2 * self.n

    @property
    def form_sign(self) -> int | None:
        """Sign of the bilinear form preserved by the dual group's standard
        representation: -1 for SO_odd, +1 for Sp and O_even, None for GL."""
        if self.kind == "SO_odd":
            return -1
        if self.kind in ("Sp", "O_even"):
            return 1
        return None

    @property
    def is_classical(self) -> bool:
        return self.kind != "GL"

    def __str__(self) -> str:
        return f"{self.kind}({self.n})"


@dataclass(frozen=True, slots=True)
class LineKey:
    """Key of an isotypic line: a class (the lexicographically smaller label
    of a non-self-dual pair) together with the grid offset of the exponents."""

    rho: RhoClass
    delta: HalfInt

    @property
    def label(self) -> str:
        return f"{self.rho.label}:{self.delta}"

    def __str__(self) -> str:
        return self.label


def line_key_of(seg: Segment) -> LineKey:
    rho = seg.rho
    if rho.selfdual == "none" and rho.dual_label < rho.label:
        rho = rho.dual()
    return LineKey(rho, seg.delta)


def decompose_lines(m: MultiSegment) -> dict[LineKey, MultiSegment]:
    """Partition a multi-segment into isotypic lines.  Non-self-dual classes
    are grouped with their duals under one key; distinct grid offsets of the
    same class yield distinct keys.  The union of the values is ``m``."""
    buckets: dict[LineKey, list[tuple[Segment, int]]] = {}
    for seg, mult in m.pairs:
        buckets.setdefault(line_key_of(seg), []).append((seg, mult))
    return {
        key: MultiSegment(buckets[key])
        for key in sorted(buckets, key=lambda k: (k.rho.label, k.delta.twice))
    }


def gl_components(m: MultiSegment) -> dict[tuple[str, HalfInt], MultiSegment]:
    """Split into general-linear lines: one component per (class label, grid
    offset), with no pairing of dual classes."""
    buckets: dict[tuple[str, HalfInt], list[tuple[Segment, int]]] = {}
    for seg, mult in m.pairs:
        buckets.setdefault((seg.rho.label, seg.delta), []).append((seg, mult))
    return {
        key: MultiSegment(buckets[key])
        for key in sorted(buckets, key=lambda k: (k[0], k[1].twice))
    }


def line_parity(key: LineKey, group: GroupType) -> str:
    """Classify a line as "good", "bad" or "nonselfdual" for a classical
    group.  A self-dual line carries the sign eps(rho) * (-1)^(2*delta); it is
    good exactly when that sign times the group's form sign is +1."""
    if not group.is_classical:
        raise ValueError("line parity is only defined for classical groups")
    if key.rho.selfdual == "none":
        return "nonselfdual"
    eps_line = key.rho.epsilon * (1 if key.delta.twice % 2 == 0 else -1)
    return "good" if group.form_sign * eps_line == 1 else "bad"


@dataclass(frozen=True, slots=True)
class LParameter:
    group: GroupType
    mseg: MultiSegment

    def infinitesimal(self) -> InfinitesimalParameter:
        return self.mseg.infinitesimal()

    def __str__(self) -> str:
        return f"{self.group} {self.mseg}"


@dataclass(frozen=True, slots=True)
class Violation:
    code: str
    message: str

    def __str__(self) -> str:
        return f"{self.code}: {self.message}"


class InvalidParameterError(ValueError):
    def __init__(self, violations: list[Violation]):
        self.violations = violations
        super().__init__("; ".join(str(v) for v in violations))


def validate(p: LParameter) -> list[Violation]:
    """Check the parameter invariants; an empty list means valid.

    All kinds: total dimension equals the group's standard dimension.
    Classical kinds additionally: the multi-segment is self-dual, and on
    every bad-parity line each self-centered segment has even multiplicity
    (otherwise no fixed-point-free pairing of instances with their
    contragredients exists).
    """
    violations: list[Violation] = []
    total = p.mseg.dim()
    if total != p.group.std_dim:
        violations.append(
            Violation(
                "dimension-mismatch",
                f"total dimension {total} != {p.group.std_dim} for {p.group}",
            )
        )
    if not p.group.is_classical:
        return violations
    if not p.mseg.is_selfdual:
        violations.append(
            Violation("not-selfdual", "multi-segment is not self-dual")
        )
    for key, line in decompose_lines(p.mseg).items():
        if line_parity(key, p.group) != "bad":
            continue
        for seg, mult in line.pairs:
            if seg.is_self_centered and mult % 2 == 1:
                violations.append(
                    Violation(
                        "bad-line-odd-multiplicity",
                        f"self-centered {seg} has odd multiplicity {mult} "
                        f"on bad-parity line {key}",
                    )
                )
    return violations


def require_valid(p: LParameter) -> None:
    violations = validate(p)
    if violations:
        raise InvalidParameterError(violations)


def single_line_delta(m: MultiSegment) -> HalfInt:
    """Grid offset of a nonempty single-line multi-segment; raises if the
    segments live on different classes or grids."""
    if not m:
        raise ValueError("empty multi-segment has no line")
    labels = {s.rho.label for s, _ in m.pairs}
    deltas = {s.delta for s, _ in m.pairs}
    if len(labels) > 1 or len(deltas) > 1:
        raise ValueError(f"mixed-line multi-segment: classes {labels}, grids {deltas}")
    return next(iter(deltas))


def mseg_product(lines: Iterable[Iterable[MultiSegment]]) -> Iterator[MultiSegment]:
    """All unions picking one multi-segment per line."""
    for combo in itertools.product(*lines):
        total = EMPTY
        for part in combo:
            total = total + part
        yield total
