"""Fixture corpus: worked examples, the closed/open-orbit family, and the
catalog of infinitesimal parameters used by the self-test harness and the
acceptance suite."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

from .core import (
    GroupType,
    InfinitesimalParameter,
    LParameter,
    MultiSegment,
    RhoClass,
    Segment,
    TRIVIAL_RHO,
    decompose_lines,
    line_parity,
)
from .duality import az_bad, pyasetskii_dual, unramify
from .halfint import HalfInt, hi
from .oracle import build_realization, nilpotency_check, verify_dual
from .posets import build_poset, enum_classical
from .rankmat import closure_leq

# Non-trivial classes used across the catalog.
RHO_S2 = RhoClass("s2", 2, "symplectic")
RHO_W2 = RhoClass("w2", 2, "orthogonal")
RHO_U = RhoClass("u", 1, "none", "u^")
RHO_UD = RHO_U.dual()


def seg(b, e, rho: RhoClass = TRIVIAL_RHO) -> Segment:
    return Segment(rho, hi_parse(b), hi_parse(e))


def hi_parse(x) -> HalfInt:
    if isinstance(x, str):
        return HalfInt.parse(x)
    return hi(x)


def mseg(*items) -> MultiSegment:
    """Build a multi-segment from (b, e[, mult[, rho]]) tuples."""
    pairs = []
    for item in items:
        b, e = item[0], item[1]
        mult = item[2] if len(item) > 2 else 1
        rho = item[3] if len(item) > 3 else TRIVIAL_RHO
        pairs.append((seg(b, e, rho), mult))
    return MultiSegment(pairs)


# ---------------------------------------------------------------------------
# The SO(7) / GL(6) worked example: lambda = |.|^1 + 1^4 + |.|^-1.

SO7 = GroupType.so_odd(3)
GL6 = GroupType.gl(6)

PHI_GL = {
    0: mseg((-1, 1), (0, 0, 3)),
    1: mseg((0, 1), (-1, 0), (0, 0, 2)),
    2: mseg((0, 1), (-1, -1), (0, 0, 3)),
    3: mseg((-1, 0), (1, 1), (0, 0, 3)),
    4: mseg((1, 1), (-1, -1), (0, 0, 4)),
}
#: GL duality on the five parameters: 0 <-> 4, 1 fixed, 2 <-> 3.
PHI_GL_DUAL = {0: 4, 1: 1, 2: 3, 3: 2, 4: 0}

#: The two symplectic members: phi^1 (open) and phi^4 (closed), swapped by
#: the involution.
PHI_SO7 = {1: PHI_GL[1], 4: PHI_GL[4]}

PAPER_LAMBDA = PHI_GL[4].infinitesimal()


# ---------------------------------------------------------------------------
# The closed-orbit family: m_0 = union_i {[d-i,d-i],[i-d,i-d]}, whose dual is
# the open-orbit pair {[d-r,d],[-d,-d+r]}.

@dataclass(frozen=True)
class BadOpenCase:
    d: HalfInt
    r: int
    group: GroupType
    m0: MultiSegment
    expected_dual: MultiSegment

    @property
    def name(self) -> str:
        return f"open-d{self.d}-r{self.r}"


def bad_open_case(d: HalfInt, r: int) -> BadOpenCase:
    segs = []
    for i in range(r + 1):
        segs.append(seg(d - i, d - i))
        segs.append(seg(i - d, i - d))
    m0 = MultiSegment.of(segs)
    top = seg(d - r, d)
    expected = MultiSegment.of([top, top.dual()])
    n = r + 1
    group = GroupType.so_odd(n) if d.is_integer else GroupType.o_even(n)
    return BadOpenCase(d, r, group, m0, expected)


def bad_open_grid() -> list[BadOpenCase]:
    cases = []
    for d_twice in (1, 2, 3, 4):
        d = HalfInt(d_twice)
        for r in range(d_twice + 1):
            cases.append(bad_open_case(d, r))
    return cases


# ---------------------------------------------------------------------------
# Catalog of infinitesimal parameters (>= 30, mixing good, bad and
# non-self-dual lines; at most 10 support exponents per line).

@dataclass(frozen=True)
class CatalogEntry:
    name: str
    group: GroupType
    lam: InfinitesimalParameter


def _entry(name: str, kind: str, lines: list[tuple[RhoClass, list]]) -> CatalogEntry:
    items = []
    for rho, exps in lines:
        items.extend((rho, hi_parse(x)) for x in exps)
    lam = InfinitesimalParameter.of(items)
    n_total = lam.dim()
    if kind == "GL":
        group = GroupType.gl(n_total)
    elif kind == "Sp":
        assert n_total % 2 == 1
        group = GroupType.sp((n_total - 1) // 2)
    else:
        assert n_total % 2 == 0
        group = GroupType.so_odd(n_total // 2) if kind == "SO_odd" else GroupType.o_even(n_total // 2)
    return CatalogEntry(name, group, lam)


def catalog() -> tuple[CatalogEntry, ...]:
    entries: list[CatalogEntry] = [
        _entry("so7-paper", "SO_odd", [(TRIVIAL_RHO, [1, 0, 0, 0, 0, -1])]),
    ]
    for case in bad_open_grid():
        entries.append(
            CatalogEntry(case.name, case.group, case.m0.infinitesimal())
        )
    h = "1/2"
    nh = "-1/2"
    entries += [
        # good-parity lines
        _entry("sp-good-3", "Sp", [(TRIVIAL_RHO, [1, 0, -1])]),
        _entry("sp-good-5", "Sp", [(TRIVIAL_RHO, [2, 1, 0, -1, -2])]),
        _entry("sp-good-mult", "Sp", [(TRIVIAL_RHO, [1, 0, 0, 0, -1])]),
        _entry("oeven-good-4", "O_even", [(TRIVIAL_RHO, [1, 0, 0, -1])]),
        _entry("oeven-good-6", "O_even", [(TRIVIAL_RHO, [2, 1, 0, 0, -1, -2])]),
        _entry("soodd-good-half", "SO_odd", [(TRIVIAL_RHO, [h, h, nh, nh])]),
        _entry(
            "soodd-good-half-6",
            "SO_odd",
            [(TRIVIAL_RHO, ["3/2", h, h, nh, nh, "-3/2"])],
        ),
        # non-self-dual pairs
        _entry(
            "soodd-nsd-01", "SO_odd", [(RHO_U, [0, 1]), (RHO_UD, [-1, 0])]
        ),
        _entry(
            "soodd-nsd-half", "SO_odd", [(RHO_U, [h, nh]), (RHO_UD, [h, nh])]
        ),
        _entry(
            "oeven-nsd-012",
            "O_even",
            [(RHO_U, [1, 0, 0]), (RHO_UD, [0, 0, -1])],
        ),
        # mixed lines
        _entry(
            "soodd-mixed-bgn",
            "SO_odd",
            [
                (TRIVIAL_RHO, [1, 0, 0, -1]),
                (TRIVIAL_RHO, [h, nh]),
                (RHO_U, [0]),
                (RHO_UD, [0]),
            ],
        ),
        _entry(
            "sp-mixed-badhalf",
            "Sp",
            [(TRIVIAL_RHO, [h, h, nh, nh]), (TRIVIAL_RHO, [0])],
        ),
        _entry(
            "sp-bighalf-bad",
            "Sp",
            [(TRIVIAL_RHO, ["3/2", h, h, nh, nh, "-3/2"]), (TRIVIAL_RHO, [0])],
        ),
        _entry(
            "oeven-bad-halfmult",
            "O_even",
            [(TRIVIAL_RHO, [h, h, h, nh, nh, nh])],
        ),
        _entry(
            "oeven-mixed",
            "O_even",
            [
                (TRIVIAL_RHO, ["3/2", h, nh, "-3/2"]),
                (RHO_U, [1, 0]),
                (RHO_UD, [0, -1]),
            ],
        ),
        _entry("soodd-bad-6", "SO_odd", [(TRIVIAL_RHO, [2, 1, 0, 0, -1, -2])]),
        _entry(
            "soodd-bad-8",
            "SO_odd",
            [(TRIVIAL_RHO, [1, 1, 0, 0, 0, 0, -1, -1])],
        ),
        # non-trivial classes
        _entry(
            "sp-s2-bad-small",
            "Sp",
            [(RHO_S2, [0, 0]), (TRIVIAL_RHO, [0])],
        ),
        _entry(
            "sp-s2-bad-window",
            "Sp",
            [(RHO_S2, [1, 0, 0, -1]), (TRIVIAL_RHO, [0])],
        ),
        _entry(
            "sp-w2-badhalf",
            "Sp",
            [(RHO_W2, [h, nh]), (TRIVIAL_RHO, [0])],
        ),
        _entry("soodd-s2-good", "SO_odd", [(RHO_S2, [1, 0, -1])]),
        _entry("soodd-w2-bad", "SO_odd", [(RHO_W2, [1, 0, 0, -1])]),
    ]
    assert len({e.name for e in entries}) == len(entries)
    return tuple(entries)


def catalog_parameters(cap: int = 12) -> dict[str, list[LParameter]]:
    """Enumerate every catalog entry; keyed by entry name."""
    return {e.name: enum_classical(e.lam, e.group, cap) for e in catalog()}


# ---------------------------------------------------------------------------
# Self-test cases.  Each case is (name, thunk); the thunk raises on failure
# and may return a detail string.

Check = tuple[str, Callable[[], str | None]]


def _check_paper_gl() -> str:
    for i, j in PHI_GL_DUAL.items():
        got = pyasetskii_dual(LParameter(GL6, PHI_GL[i]))
        assert got.mseg == PHI_GL[j], f"GL dual of phi_{i} is not phi_{j}"
    return "5 general-linear duals"


def _check_paper_so7() -> str:
    params = enum_classical(PAPER_LAMBDA, SO7)
    assert len(params) == 2, f"expected 2 SO(7) parameters, got {len(params)}"
    gl_params = enum_classical(PAPER_LAMBDA, GL6)
    assert len(gl_params) == 5, f"expected 5 GL(6) parameters, got {len(gl_params)}"
    d1 = pyasetskii_dual(LParameter(SO7, PHI_SO7[1]))
    d4 = pyasetskii_dual(LParameter(SO7, PHI_SO7[4]))
    assert d1.mseg == PHI_SO7[4] and d4.mseg == PHI_SO7[1]
    return "2 + 5 parameters, involution swaps open and closed"


def _check_bad_open(case: BadOpenCase) -> str:
    got = az_bad(case.m0)
    assert got == case.expected_dual, f"{case.name}: {got} != {case.expected_dual}"
    params = enum_classical(case.m0.infinitesimal(), case.group)
    poset = build_poset(params)
    mx, mn = poset.unique_max(), poset.unique_min()
    assert mx is not None and poset.nodes[mx].mseg == case.expected_dual
    assert mn is not None and poset.nodes[mn].mseg == case.m0
    return f"{len(params)} parameters, extremes as expected"


def _check_involutions(params_by_name: dict[str, list[LParameter]]) -> str:
    count = 0
    for params in params_by_name.values():
        for p in params:
            q = pyasetskii_dual(p)
            assert pyasetskii_dual(q) == p, f"dual not involutive on {p}"
            assert q.infinitesimal() == p.infinitesimal()
            count += 1
    return f"{count} parameters"


def _check_oracle_spot(trials: int, seed: int, prime: int) -> str:
    spots = [
        LParameter(SO7, PHI_SO7[1]),
        LParameter(SO7, PHI_SO7[4]),
        LParameter(GL6, PHI_GL[0]),
    ]
    for case in bad_open_grid()[:4]:
        spots.append(LParameter(case.group, case.m0))
    for p in spots:
        report = verify_dual(p, trials=trials, seed=seed, prime=prime)
        assert report.all_match, f"oracle mismatch on {p}"
    return f"{len(spots)} parameters verified"


def _check_nilpotency_spot(trials: int, seed: int, prime: int) -> str:
    checked = 0
    spots = [LParameter(SO7, PHI_SO7[1]), LParameter(SO7, PHI_SO7[4])]
    for p in spots:
        for key, line in decompose_lines(p.mseg).items():
            if line_parity(key, p.group) != "bad":
                continue
            stripped, _ = unramify(line, p.group)
            real = build_realization(stripped, True, split_seed=seed, prime=prime)
            assert nilpotency_check(real, trials=trials, rng_seed=seed)
            checked += 1
    return f"{checked} bad lines"


def selftest_cases(
    trials: int = 5, seed: int = 0, prime: int | None = None
) -> list[Check]:
    from .oracle import DEFAULT_PRIME

    prime = DEFAULT_PRIME if prime is None else prime
    cases: list[Check] = [
        ("paper-gl-duality", _check_paper_gl),
        ("paper-so7-duality", _check_paper_so7),
    ]
    for case in bad_open_grid():
        cases.append((case.name, lambda c=case: _check_bad_open(c)))
    cases.append(
        (
            "involution-catalog",
            lambda: _check_involutions(catalog_parameters()),
        )
    )
    cases.append(
        (
            "oracle-spot",
            lambda: _check_oracle_spot(trials, seed, prime),
        )
    )
    cases.append(
        (
            "nilpotency-spot",
            lambda: _check_nilpotency_spot(trials, seed, prime),
        )
    )
    return cases
