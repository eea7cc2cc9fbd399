"""The dualization algorithms and the per-line Pyasetskii dispatch.

Three line-level algorithms compute the dual multi-segment:

* ``mw_dual``: the Moeglin-Waldspurger algorithm.  Repeatedly extract a
  maximal chain of linked segments ending at the maximal exponent d (each
  chain member precedes the previous one, ends one lower, and has maximal
  start among candidates), replace the extracted segments by their top
  truncations, and emit the segment [d-r, d].
* ``az_bad``: the bad-parity variant.  Chains are selected the same way but
  with an extra admissibility rule: a candidate whose contragredient already
  sits in the chain is admissible only if it occurs with multiplicity at
  least two.  Each extraction removes the chain members together with their
  contragredients, inserts both one-sided truncations, and emits the pair
  {[d-r, d], [-d, -d+r]}.
* ``dual_nonselfdual``: a line grouping a class with its distinct
  contragredient splits as m_1 + dual(m_1); the dual is
  mw_dual(m_1) + dual(mw_dual(m_1)).

``pyasetskii_dual`` decomposes a parameter into isotypic lines and dispatches
on line parity: non-self-dual and good-parity lines go through
Moeglin-Waldspurger (good-parity output is asserted self-dual), bad-parity
lines through ``az_bad``.  General-linear parameters use Moeglin-Waldspurger
on every line with no pairing.

All algorithms are involutions on their valid domains and preserve the
infinitesimal parameter; the test suite verifies both exhaustively and
against the commutant oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    EMPTY,
    GroupType,
    InvalidParameterError,
    LParameter,
    MultiSegment,
    Segment,
    TRIVIAL_RHO,
    decompose_lines,
    gl_components,
    line_parity,
    require_valid,
    single_line_delta,
    validate,
)
from .halfint import HalfInt


@dataclass(frozen=True)
class ExtractionTrace:
    """One extraction step: the maximal end d, the chosen chain
    Delta_{i_0}, ..., Delta_{i_r}, and the remaining multi-segment."""

    d: HalfInt
    chain: tuple[Segment, ...]
    remainder: MultiSegment

    @property
    def r(self) -> int:
        return len(self.chain) - 1


def _select_chain(m: MultiSegment, pair_rule: bool) -> tuple[Segment, ...]:
    """Steps 2 and 3 of the extraction: start from the segment of maximal end
    d and maximal start, then repeatedly append a segment of end d-k that
    precedes the previous member, of maximal start among admissible
    candidates.

    With ``pair_rule`` (bad-parity mode), a candidate equal to the
    contragredient of a chain member is admissible only when its multiplicity
    in ``m`` is at least two; ties among equal segments are immaterial.
    """
    d = max(s.e for s, _ in m.pairs)
    top = [s for s, _ in m.pairs if s.e == d]
    chain = [max(top, key=lambda s: s.b.twice)]
    while True:
        prev = chain[-1]
        want_e = prev.e - 1
        candidates = [
            s
            for s, mult in m.pairs
            if s.e == want_e
            and s.precedes(prev)
            and (not pair_rule or s.dual() not in chain or mult >= 2)
        ]
        if not candidates:
            return tuple(chain)
        chain.append(max(candidates, key=lambda s: s.b.twice))


def mw_step(m: MultiSegment) -> ExtractionTrace:
    """One Moeglin-Waldspurger extraction on a nonempty single line.  The
    remainder replaces each chain member by its top truncation."""
    single_line_delta(m)
    chain = _select_chain(m, pair_rule=False)
    removed = MultiSegment.of(chain)
    added = MultiSegment.of([s.minus() for s in chain if s.minus() is not None])
    return ExtractionTrace(chain[0].e, chain, m - removed + added)


def mw_dual(m: MultiSegment, trace: list[ExtractionTrace] | None = None) -> MultiSegment:
    """Moeglin-Waldspurger dual of a single-line multi-segment (the empty
    multi-segment maps to itself)."""
    out: list[tuple[Segment, int]] = []
    while m:
        step = mw_step(m)
        if trace is not None:
            trace.append(step)
        rho = step.chain[0].rho
        out.append((Segment(rho, step.d - step.r, step.d), 1))
        m = step.remainder
    return MultiSegment(out)


def valid_bad_line(m: MultiSegment) -> bool:
    """True when the line admits a fixed-point-free pairing of instances with
    their contragredients: the multiset is self-dual and every self-centered
    segment has even multiplicity."""
    if not m:
        return True
    single_line_delta(m)
    if not m.is_selfdual:
        return False
    return all(
        mult % 2 == 0 for seg, mult in m.pairs if seg.is_self_centered
    )


def az_bad_step(m: MultiSegment) -> ExtractionTrace:
    """One bad-parity extraction on a nonempty valid single line.  The
    remainder removes each chain member together with its contragredient and
    inserts the top truncation of the member and the bottom truncation of the
    contragredient."""
    if not valid_bad_line(m):
        raise ValueError(f"not a valid bad-parity multi-segment: {m}")
    if not m:
        raise ValueError("empty multi-segment")
    chain = _select_chain(m, pair_rule=True)
    removed = MultiSegment.of(
        [s for seg in chain for s in (seg, seg.dual())]
    )
    added = MultiSegment.of(
        [
            s
            for seg in chain
            for s in (seg.minus(), seg.dual().preminus())
            if s is not None
        ]
    )
    # Admissibility during selection guarantees availability here; an
    # underflow in the subtraction signals a violated precondition.
    return ExtractionTrace(chain[0].e, chain, m - removed + added)


def az_bad(m: MultiSegment, trace: list[ExtractionTrace] | None = None) -> MultiSegment:
    """Bad-parity dual of a valid single-line multi-segment.  Each extraction
    with maximal end d and chain length r+1 contributes the contragredient
    pair {[d-r, d], [-d, -d+r]}."""
    out: list[tuple[Segment, int]] = []
    while m:
        step = az_bad_step(m)  # re-validates the remainder at each level
        if trace is not None:
            trace.append(step)
        rho = step.chain[0].rho
        top = Segment(rho, step.d - step.r, step.d)
        out.append((top, 1))
        out.append((top.dual(), 1))
        m = step.remainder
    result = MultiSegment(out)
    assert valid_bad_line(result), "bad-parity dual left its domain"
    return result


def _nsd_split(m: MultiSegment) -> tuple[MultiSegment, MultiSegment]:
    comps = gl_components(m)
    if len(comps) != 2:
        raise ValueError(f"expected a paired non-self-dual line, got {m}")
    (k1, m1), (k2, m2) = sorted(comps.items())
    del k1, k2
    if m1.dual() != m2:
        raise ValueError(f"line is not of the shape m + dual(m): {m}")
    return m1, m2


def dual_nonselfdual(
    m: MultiSegment, trace: list[ExtractionTrace] | None = None
) -> MultiSegment:
    """Dual of a paired non-self-dual line m_1 + dual(m_1), computed on the
    lexicographically smaller class and mirrored."""
    if not m:
        return EMPTY
    m1, _ = _nsd_split(m)
    d1 = mw_dual(m1, trace)
    return d1 + d1.dual()


def dual_good(m: MultiSegment, trace: list[ExtractionTrace] | None = None) -> MultiSegment:
    """Dual of a self-dual good-parity line: Moeglin-Waldspurger, whose output
    is again self-dual on this domain (asserted)."""
    result = mw_dual(m, trace)
    assert result.is_selfdual, (
        f"good-parity dual of {m} is not self-dual: {result}"
    )
    return result


def unramify(m: MultiSegment, group: GroupType) -> tuple[MultiSegment, GroupType]:
    """Replace the self-dual class of a line by the trivial class, keeping all
    endpoints, and return the split classical group whose dual preserves a
    form of sign form_sign(group) * eps(rho) on the unramified space.
    Dualization commutes with this operation."""
    if not m:
        raise ValueError("empty line")
    single_line_delta(m)
    rho = m.pairs[0][0].rho
    if rho.selfdual == "none":
        raise ValueError("unramification requires a self-dual class")
    if not group.is_classical:
        raise ValueError("unramification requires a classical group")
    stripped = MultiSegment(
        (Segment(TRIVIAL_RHO, s.b, s.e), mult) for s, mult in m.pairs
    )
    n_ur = sum(s.length * mult for s, mult in m.pairs)
    eps_ur = group.form_sign * rho.epsilon
    if eps_ur == -1:
        if n_ur % 2 != 0:
            raise ValueError("symplectic unramified space must be even-dimensional")
        gt = GroupType.so_odd(n_ur // 2)
    elif n_ur % 2 == 1:
        gt = GroupType.sp((n_ur - 1) // 2)
    else:
        gt = GroupType.o_even(n_ur // 2)
    return stripped, gt


@dataclass(frozen=True)
class LineTrace:
    line: str
    mode: str
    steps: tuple[ExtractionTrace, ...]


def pyasetskii_dual(
    p: LParameter, trace: list[LineTrace] | None = None
) -> LParameter:
    """The Pyasetskii involution of a valid parameter.

    General-linear parameters apply the Moeglin-Waldspurger algorithm to each
    line independently.  Classical parameters decompose into isotypic lines
    and dispatch on parity: nonselfdual / good lines through
    Moeglin-Waldspurger, bad lines through the bad-parity extraction.  The
    result has the same group, infinitesimal parameter and validity.
    """
    require_valid(p)
    parts: list[MultiSegment] = []
    if not p.group.is_classical:
        for (label, delta), comp in gl_components(p.mseg).items():
            steps: list[ExtractionTrace] = []
            parts.append(mw_dual(comp, steps))
            if trace is not None:
                trace.append(LineTrace(f"{label}:{delta}", "GL", tuple(steps)))
    else:
        for key, line in decompose_lines(p.mseg).items():
            parity = line_parity(key, p.group)
            steps = []
            if parity == "nonselfdual":
                parts.append(dual_nonselfdual(line, steps))
            elif parity == "good":
                parts.append(dual_good(line, steps))
            else:
                parts.append(az_bad(line, steps))
            if trace is not None:
                trace.append(LineTrace(key.label, parity, tuple(steps)))
    total = EMPTY
    for part in parts:
        total = total + part
    result = LParameter(p.group, total)
    assert result.infinitesimal() == p.infinitesimal(), "dual changed the support"
    assert not validate(result), "dual left the valid domain"
    return result
