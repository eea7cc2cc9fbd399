"""Brute-force verification of the dualization algorithms.

A single-line multi-segment is realized concretely: one basis vector per
(segment instance, exponent), the nilpotent base point f shifting each
instance's exponents up by one, and (on self-dual lines carrying a form) the
bilinear form J built from a fixed-point-free pairing of instances with their
contragredients and a sign split I = I+ |_| I-.

The dual orbit's rank matrix is then recovered independently of the
combinatorial algorithms: the degree-(+1) elements commuting with the
transpose of f (and lying in the form's Lie algebra, in classical mode) form
a linear space, and the entrywise maximum of composition ranks over that
space equals the rank matrix of the dual parameter.  Generic samples over a
large prime field attain the maximum; taking the entrywise max across several
samples makes a non-generic draw harmless, since it can only undercount.

The opposite orientation (degree-(-1) elements commuting with f itself, then
transposed) computes the same space transposed; both are evaluated and must
agree, which guards the transpose conventions.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import modp
from .core import (
    GroupType,
    LParameter,
    MultiSegment,
    Segment,
    TRIVIAL_RHO,
    decompose_lines,
    gl_components,
    line_parity,
    require_valid,
    single_line_delta,
)
from .duality import az_bad, az_bad_step, dual_good, mw_dual, unramify, valid_bad_line
from .halfint import HalfInt
from .rankmat import RankMatrix, rank_matrix

#: 2^61 - 1; rank over a random large prime equals rank over the rationals
#: outside a null set of draws.
DEFAULT_PRIME = 2305843009213693951
#: 2^31 - 1, used for field-independence checks.
SECOND_PRIME = 2147483647

Matrix = list[list[int]]


def strip_class(m: MultiSegment) -> MultiSegment:
    """Relabel every segment to the trivial class, keeping endpoints."""
    return MultiSegment(
        (Segment(TRIVIAL_RHO, s.b, s.e), mult) for s, mult in m.pairs
    )


def _sign_pow(numer_twice: int) -> int:
    """(-1)^k for the integer k = numer_twice / 2."""
    if numer_twice % 2 != 0:
        raise ValueError("sign exponent is not an integer")
    return 1 if (numer_twice // 2) % 2 == 0 else -1


@dataclass(eq=False)
class Realization:
    """Explicit graded vector space attached to a single-line multi-segment.

    ``instances`` expands multiplicities; ``basis`` lists (instance index,
    exponent) pairs, indexed by ``index``.  ``pairing``/``signs``/``J`` are
    present only when a form was requested; ``epsilon`` is the form sign
    (-1)^(2*delta+1) forced by the grid offset.
    """

    mseg: MultiSegment
    instances: tuple[Segment, ...]
    delta: HalfInt
    dim: int
    basis: tuple[tuple[int, HalfInt], ...]
    index: dict[tuple[int, HalfInt], int]
    grades: dict[HalfInt, list[int]]
    e_min: HalfInt
    e_max: HalfInt
    f: Matrix
    prime: int
    with_form: bool
    pairing: tuple[int, ...] | None = None
    signs: tuple[int, ...] | None = None
    epsilon: int | None = None
    J: Matrix | None = None

    def block(self, x: Matrix, t_from: HalfInt, t_to: HalfInt) -> Matrix:
        """Sub-matrix of x mapping grade t_from into grade t_to."""
        rows = self.grades.get(t_to, [])
        cols = self.grades.get(t_from, [])
        return [[x[r][c] for c in cols] for r in rows]


def build_realization(
    m: MultiSegment,
    with_form: bool,
    split_seed: int = 0,
    prime: int = DEFAULT_PRIME,
) -> Realization:
    """Construct the realization and assert its structural invariants:
    tJ = eps*J = J^(-1), tf*J + J*f = 0, and the composition ranks of f equal
    the rank matrix of the multi-segment."""
    delta = single_line_delta(m)
    instances = tuple(m.segments())
    k = len(instances)

    pairing: list[int] | None = None
    signs: list[int] | None = None
    epsilon: int | None = None
    if with_form:
        if any(s.rho.selfdual == "none" for s in instances):
            raise ValueError("a form requires a self-dual class")
        if not valid_bad_line(m):
            raise ValueError(
                f"no fixed-point-free contragredient pairing exists for {m}"
            )
        pairing = [-1] * k
        for i in range(k):
            if pairing[i] >= 0:
                continue
            target = instances[i].dual()
            j = next(
                idx
                for idx in range(k)
                if idx != i and pairing[idx] < 0 and instances[idx] == target
            )
            pairing[i], pairing[j] = j, i
        signs = [0] * k
        rng = random.Random(split_seed)
        for i in range(k):
            v = instances[i].b.twice + instances[i].e.twice
            if v > 0:
                signs[i] = 1
            elif v < 0:
                signs[i] = -1
        for i in range(k):
            if signs[i] == 0:
                j = pairing[i]
                plus = i if rng.getrandbits(1) == 0 else j
                signs[i] = 1 if plus == i else -1
                signs[j] = -signs[i]
        epsilon = -1 if delta.twice % 2 == 0 else 1

    basis: list[tuple[int, HalfInt]] = []
    for i, seg in enumerate(instances):
        for a in seg.exponents():
            basis.append((i, a))
    index = {key: n for n, key in enumerate(basis)}
    dim = len(basis)
    grades: dict[HalfInt, list[int]] = {}
    for n, (_, a) in enumerate(basis):
        grades.setdefault(a, []).append(n)

    f = modp.zeros(dim, dim)
    for n, (i, a) in enumerate(basis):
        up = index.get((i, a + 1))
        if up is not None:
            f[up][n] = 1

    J: Matrix | None = None
    if with_form:
        J = modp.zeros(dim, dim)
        for n, (i, a) in enumerate(basis):
            ivee = pairing[i]
            sign = signs[ivee] * _sign_pow(-a.twice - delta.twice)
            J[index[(ivee, -a)]][n] = sign % prime

    real = Realization(
        mseg=m,
        instances=instances,
        delta=delta,
        dim=dim,
        basis=tuple(basis),
        index=index,
        grades=grades,
        e_min=min(s.b for s in instances),
        e_max=max(s.e for s in instances),
        f=f,
        prime=prime,
        with_form=with_form,
        pairing=tuple(pairing) if pairing is not None else None,
        signs=tuple(signs) if signs is not None else None,
        epsilon=epsilon,
        J=J,
    )

    p = prime
    if with_form:
        tJ = modp.transpose(J)
        assert tJ == modp.scale(J, epsilon % p, p), "tJ != eps*J"
        assert modp.mat_mul(J, J, p) == modp.scale(
            modp.identity(dim), epsilon % p, p
        ), "J^2 != eps*Id"
        anti = modp.mat_mul(modp.transpose(f), J, p)
        modp.add_into(anti, modp.mat_mul(J, f, p), 1, p)
        assert modp.is_zero(anti), "tf*J + J*f != 0"
    assert graded_rank_matrix(real, f) == rank_matrix(m), (
        "composition ranks of f disagree with the rank matrix"
    )
    return real


def graded_rank_matrix(real: Realization, x: Matrix) -> RankMatrix:
    """Composition ranks of a degree-(+1) matrix over the realization's
    exponent window."""
    l = (real.e_max.twice - real.e_min.twice) // 2
    entries = [[0] * l for _ in range(l)]
    p = real.prime
    for j in range(1, l + 1):
        start = real.e_max - j
        comp = real.block(x, start, start + 1)
        entries[j - 1][j - 1] = modp.rank(comp, p)
        for i in range(j - 1, 0, -1):
            step = real.block(x, real.e_max - i, real.e_max - i + 1)
            comp = modp.mat_mul(step, comp, p)
            entries[i - 1][j - 1] = modp.rank(comp, p)
    return RankMatrix(real.e_min, real.e_max, tuple(tuple(r) for r in entries))


@dataclass(frozen=True)
class CommutantSpace:
    """Basis of the solution space of the commutation (and form) constraints
    in a fixed degree."""

    mode: str  # "GL" or "classical"
    degree: int  # +1 or -1
    basis: tuple[Matrix, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)


def _degree_positions(real: Realization, degree: int) -> list[tuple[int, int]]:
    positions = []
    for c, (_, a) in enumerate(real.basis):
        for r in real.grades.get(a + degree, []):
            positions.append((r, c))
    return positions


def _solve_commutant(
    real: Realization, degree: int, commute_with: Matrix
) -> CommutantSpace:
    """Solve [X, M] = 0 over the degree-``degree`` matrices X, adding
    tX*J + J*X = 0 in classical mode."""
    p = real.prime
    n = real.dim
    positions = _degree_positions(real, degree)
    num = len(positions)
    comm_rows: dict[tuple[int, int], list[int]] = {}
    form_rows: dict[tuple[int, int], list[int]] = {}

    def bump(rows, key, u, value):
        row = rows.get(key)
        if row is None:
            row = [0] * num
            rows[key] = row
        row[u] = (row[u] + value) % p

    M = commute_with
    for u, (ru, cu) in enumerate(positions):
        for j in range(n):
            if M[cu][j]:
                bump(comm_rows, (ru, j), u, M[cu][j])  # (E_u M)[ru][j]
        for i in range(n):
            if M[i][ru]:
                bump(comm_rows, (i, cu), u, -M[i][ru])  # -(M E_u)[i][cu]
    if real.with_form:
        J = real.J
        for u, (ru, cu) in enumerate(positions):
            for j in range(n):
                if J[ru][j]:
                    bump(form_rows, (cu, j), u, J[ru][j])  # (tE_u J)[cu][j]
            for i in range(n):
                if J[i][ru]:
                    bump(form_rows, (i, cu), u, J[i][ru])  # (J E_u)[i][cu]

    system = list(comm_rows.values()) + list(form_rows.values())
    if num == 0:
        vectors: list[list[int]] = []
    elif not system:
        vectors = [[1 if t == u else 0 for t in range(num)] for u in range(num)]
    else:
        vectors = modp.nullspace(system, p)

    basis = []
    for v in vectors:
        mat = modp.zeros(n, n)
        for u, (r, c) in enumerate(positions):
            if v[u]:
                mat[r][c] = v[u]
        basis.append(mat)
    mode = "classical" if real.with_form else "GL"
    space = CommutantSpace(mode, degree, tuple(basis))
    assert space.dimension == structured_commutant_dim(real), (
        "commutant dimension disagrees with the precedence-pair count"
    )
    return space


def structured_commutant_dim(real: Realization) -> int:
    """Independent dimension count for the commutant spaces: one parameter per
    instance pair (i, j) with segment(j) preceding segment(i); in classical
    mode the form identifies the parameter at (i, j) with the one at
    (j~, i~) up to sign and kills the fixed pairs (j = i~)."""
    k = len(real.instances)
    pairs = [
        (i, j)
        for i in range(k)
        for j in range(k)
        if real.instances[j].precedes(real.instances[i])
    ]
    if not real.with_form:
        return len(pairs)
    fixed = sum(1 for i, j in pairs if real.pairing[i] == j)
    return (len(pairs) - fixed) // 2


def dual_commutant_space(real: Realization) -> CommutantSpace:
    """Degree-(+1) matrices commuting with the transpose of f (inside the
    form's Lie algebra, in classical mode)."""
    return _solve_commutant(real, +1, modp.transpose(real.f))


def minus_commutant_space(real: Realization) -> CommutantSpace:
    """Degree-(-1) matrices commuting with f itself (same form condition)."""
    return _solve_commutant(real, -1, real.f)


def _sample(space: CommutantSpace, real: Realization, rng: random.Random) -> Matrix:
    p = real.prime
    x = modp.zeros(real.dim, real.dim)
    for mat in space.basis:
        modp.add_into(x, mat, rng.randrange(p), p)
    return x


def _entrywise_max(a: RankMatrix, b: RankMatrix) -> RankMatrix:
    return RankMatrix(
        a.e_min,
        a.e_max,
        tuple(
            tuple(max(x, y) for x, y in zip(ra, rb))
            for ra, rb in zip(a.entries, b.entries)
        ),
    )


def oracle_dual_rank_matrix(
    real: Realization,
    trials: int = 5,
    rng_seed: int = 0,
    cross_check: bool = True,
) -> RankMatrix:
    """Rank matrix of the dual orbit, by sampling the degree-(+1) commutant
    space and taking the entrywise maximum of composition ranks.  With
    ``cross_check`` the degree-(-1) formulation (transposed afterwards) is
    evaluated as well and must agree."""
    if trials < 1:
        raise ValueError("trials must be positive")
    plus = dual_commutant_space(real)
    result = None
    for t in range(trials):
        rng = random.Random(rng_seed * 1_000_003 + t)
        rm = graded_rank_matrix(real, _sample(plus, real, rng))
        result = rm if result is None else _entrywise_max(result, rm)
    if cross_check:
        minus = minus_commutant_space(real)
        alt = None
        for t in range(trials):
            rng = random.Random(rng_seed * 1_000_003 + t + 500_000_011)
            g = _sample(minus, real, rng)
            rm = graded_rank_matrix(real, modp.transpose(g))
            alt = rm if alt is None else _entrywise_max(alt, rm)
        assert alt == result, (
            "degree +1 and degree -1 oracle formulations disagree"
        )
    return result


def nilpotency_check(
    real: Realization, trials: int = 5, rng_seed: int = 0
) -> bool:
    """On a bad-parity line: every degree-(-1) element g of the commutant
    satisfies g^(r+1) Delta_{i_0}(d) = 0, where r+1 is the extraction chain
    length and i_0 the chain's first instance.  Samples must all pass."""
    if not real.with_form:
        raise ValueError("nilpotency check requires classical mode")
    step = az_bad_step(real.mseg)
    power = step.r + 1
    i0 = next(
        i for i, seg in enumerate(real.instances) if seg == step.chain[0]
    )
    start = real.index[(i0, step.d)]
    space = minus_commutant_space(real)
    p = real.prime
    for t in range(trials):
        rng = random.Random(rng_seed * 1_000_003 + t)
        g = _sample(space, real, rng)
        v = [0] * real.dim
        v[start] = 1
        for _ in range(power):
            v = modp.mat_vec(g, v, p)
        if any(v):
            return False
    return True


@dataclass(frozen=True)
class LineReport:
    line: str
    mode: str
    algorithm_rank_matrix: RankMatrix
    oracle_rank_matrix: RankMatrix
    match: bool
    trials: int
    seed: int
    prime: int

    def to_json(self) -> dict:
        return {
            "line": self.line,
            "mode": self.mode,
            "algorithm_rank_matrix": self.algorithm_rank_matrix.to_json(),
            "oracle_rank_matrix": self.oracle_rank_matrix.to_json(),
            "match": self.match,
            "trials": self.trials,
            "seed": self.seed,
            "prime": self.prime,
        }


@dataclass(frozen=True)
class VerifyReport:
    lines: tuple[LineReport, ...]
    all_match: bool

    def to_json(self) -> dict:
        return {
            "lines": [line.to_json() for line in self.lines],
            "all_match": self.all_match,
        }


def verify_dual(
    p: LParameter,
    trials: int = 5,
    seed: int = 0,
    prime: int = DEFAULT_PRIME,
    cross_check: bool = True,
    corrupt: bool = False,
) -> VerifyReport:
    """Per-line comparison of the combinatorial dual against the commutant
    oracle.  Bad-parity lines run the oracle with the form on the unramified
    line; good-parity, non-self-dual and general-linear lines run it without
    a form against the Moeglin-Waldspurger dual.  Mismatches are report
    content, not exceptions.  ``corrupt`` deliberately bumps the algorithm's
    matrices (a negative control for the exit-code contract)."""
    require_valid(p)
    jobs: list[tuple[str, str, MultiSegment, MultiSegment, bool]] = []
    if not p.group.is_classical:
        for (label, delta), comp in gl_components(p.mseg).items():
            jobs.append((f"{label}:{delta}", "GL", comp, mw_dual(comp), False))
    else:
        for key, line in decompose_lines(p.mseg).items():
            parity = line_parity(key, p.group)
            if parity == "bad":
                stripped, gt = unramify(line, p.group)
                assert gt.form_sign == (-1 if key.delta.twice % 2 == 0 else 1)
                jobs.append((key.label, "bad", stripped, az_bad(line), True))
            elif parity == "good":
                jobs.append((key.label, "good", line, dual_good(line), False))
            else:
                # Both class components are verified independently; their
                # duals mirror each other since dualization commutes with
                # taking contragredients.
                for (label, delta), comp in gl_components(line).items():
                    jobs.append(
                        (f"{label}:{delta}", "nonselfdual", comp, mw_dual(comp), False)
                    )

    reports = []
    for label, mode, line, alg_dual, with_form in jobs:
        alg_rm = rank_matrix(alg_dual) if alg_dual else None
        real = build_realization(line, with_form, split_seed=seed, prime=prime)
        oracle_rm = oracle_dual_rank_matrix(
            real, trials=trials, rng_seed=seed, cross_check=cross_check
        )
        if alg_rm is None:
            raise AssertionError("dual of a nonempty line cannot be empty")
        if corrupt and alg_rm.l > 0:
            alg_rm = RankMatrix(
                alg_rm.e_min,
                alg_rm.e_max,
                tuple(
                    tuple(v + 1 if j >= i else 0 for j, v in enumerate(row))
                    for i, row in enumerate(alg_rm.entries)
                ),
            )
        reports.append(
            LineReport(
                line=label,
                mode=mode,
                algorithm_rank_matrix=alg_rm,
                oracle_rank_matrix=oracle_rm,
                match=alg_rm == oracle_rm,
                trials=trials,
                seed=seed,
                prime=prime,
            )
        )
    return VerifyReport(tuple(reports), all(r.match for r in reports))
