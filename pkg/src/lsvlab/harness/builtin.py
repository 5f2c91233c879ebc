"""Built-in invariant suites.

Every suite has a quick scale, sized for the unit tests, and a full scale
that runs the acceptance-size batteries. Randomness comes from the suite
seed only, so reruns produce identical reports.
"""
import itertools
import math
from collections import Counter
from fractions import Fraction
from typing import Callable, List, Sequence, Tuple, TypeVar

import numpy as np
import scipy.stats

from lsvlab.anticonc import (
    atom_probability,
    atom_probability_mod_p,
    brute_force_distribution,
    brute_force_mod_p,
    brute_force_slice_distribution,
    lcd_small_ball_ratio,
    levy_concentration,
    mod_p_distribution,
    signed_sum_distribution,
    slice_sum_distribution,
    two_step_row_atom,
)
from lsvlab.core.domain import Base, BitChoices, IntMatrix, ModelTag
from lsvlab.core.rng import child_seed, generator
from lsvlab.harness.experiments import (
    Ensemble,
    ExperimentConfig,
    TailCurve,
    calibrate_tail_constant,
    exact_singularity_frequency,
    halasz_corpus,
    run_tail_experiment,
)
from lsvlab.harness.suites import CheckResult, Suite, SuiteContext
from lsvlab.models import (
    assemble_from_base,
    audit_base,
    difference_vector,
    least_prime_at_least,
    sample_base,
    sample_q_via_base,
    sample_matrix,
    sample_row_regular,
    union_components,
)
from lsvlab.slice_stats import (
    calibrate_mgf_constant,
    centered_moment_norm,
    empirical_mgf,
    fixed_vector_invertibility_check,
    iid_second_moment,
    low_moment_ratio,
    mgf_bound,
    moment_norm_bound,
    q_row_norm_expectation,
    q_row_norm_monte_carlo,
    slice_moment_empirical,
    slice_second_moment,
)
from lsvlab.spectral import (
    exact_singularity,
    extreme_singular_values,
    operator_norm_check,
    restricted_norm_H,
    restricted_norm_check,
)
from lsvlab.structure import (
    GammaClass,
    HalaszParams,
    LcdParams,
    LcdStatus,
    Membership,
    b_set_membership,
    classify_gamma,
    counting_bound,
    halasz_calibration,
    halasz_rhs,
    lcd_estimate,
    pigeonhole_floor,
    r_k_star_brute,
    r_k_star_inclusion_exclusion,
    r_k_star_trivial_bound,
    recheck_lcd,
)


T = TypeVar("T")


def _tally(name: str, failures: int, total: int, detail: str = "") -> CheckResult:
    text = f"{failures} of {total} cases failed" + (f"; {detail}" if detail else "")
    return CheckResult(name=name, passed=failures == 0 and total > 0, detail=text, value=float(failures))


def _count(cases: Sequence[T], ok: Callable[[T], bool]) -> Tuple[int, int]:
    bad = sum(0 if ok(case) else 1 for case in cases)
    return bad, len(cases)


# -- models ------------------------------------------------------------------

def _row_pushforward_counts(n: int) -> Counter:
    counts: Counter = Counter()
    for perm in itertools.permutations(range(n)):
        base = Base(perms=[perm] * n)
        for xi in itertools.product((0, 1), repeat=n // 2):
            M = assemble_from_base(base, BitChoices(bits=[xi] * n))
            counts[tuple(M.rows()[0])] += 1
    return counts


def models_pushforward(ctx: SuiteContext) -> List[CheckResult]:
    checks = []
    for n in ctx.pick((2, 4), (2, 4, 6)):
        counts = _row_pushforward_counts(n)
        rows = math.comb(n, n // 2)
        expected = math.factorial(n) * 2 ** (n // 2) // rows
        ok = len(counts) == rows and all(c == expected for c in counts.values())
        checks.append(CheckResult(
            name=f"per-row pushforward n={n}",
            passed=ok,
            detail=f"{len(counts)} rows, counts {sorted(set(counts.values()))}, expected {expected} each",
            value=float(expected),
        ))

    n = 4
    samples = ctx.pick(3000, 1_000_000)
    direct: Counter = Counter()
    two_step: Counter = Counter()
    sums_ok = True
    for trial in range(samples):
        A = sample_row_regular(n, child_seed(ctx.seed, 1, trial))
        B = sample_q_via_base(n, child_seed(ctx.seed, 2, trial))
        sums_ok &= bool(np.all(A.entries.sum(axis=1) == n // 2) and np.all(B.entries.sum(axis=1) == n // 2))
        if ctx.scale == "quick":
            direct.update(tuple(r) for r in A.rows())
            two_step.update(tuple(r) for r in B.rows())
        else:
            direct[tuple(A.entries.ravel())] += 1
            two_step[tuple(B.entries.ravel())] += 1
    keys = sorted(set(direct) | set(two_step))
    table = np.array([[direct[k] for k in keys], [two_step[k] for k in keys]])
    p_value = float(scipy.stats.chi2_contingency(table)[1])
    checks.append(CheckResult(
        name=f"two-step vs direct law n={n} ({'rows' if ctx.scale == 'quick' else 'matrices'})",
        passed=p_value >= 1e-3,
        detail=f"chi-square p={p_value:.4g} over {len(keys)} categories, {samples} samples each",
        value=p_value,
    ))
    checks.append(CheckResult(name="row sums equal n/2", passed=sums_ok))
    return checks


def models_audit(ctx: SuiteContext) -> List[CheckResult]:
    gen = generator(child_seed(ctx.seed, 10))
    checks = []

    cases = []
    for n in (4, 8, 16):
        for t in range(10):
            cases.append(sample_base(n, child_seed(ctx.seed, 11, n, t)))
    bad, total = _count(cases, lambda b: union_components(b.matching(0), b.matching(0)) == b.n // 2)
    checks.append(_tally("union of a matching with itself has n/2 components", bad, total))

    def linear(case: Tuple[Base, np.ndarray, np.ndarray]) -> bool:
        base, u, v = case
        i = int(gen.integers(0, base.n))
        lhs = difference_vector(u + v, base, i)
        rhs = [x + y for x, y in zip(difference_vector(u, base, i), difference_vector(v, base, i))]
        return lhs == rhs

    triples = [(b, gen.integers(-9, 10, size=b.n), gen.integers(-9, 10, size=b.n)) for b in cases]
    bad, total = _count(triples, linear)
    checks.append(_tally("difference_vector is linear", bad, total))

    n = ctx.pick(16, 100)
    bases = ctx.pick(10, 200)
    failed = 0
    for t in range(bases):
        audit = audit_base(sample_base(n, child_seed(ctx.seed, 12, t)), ctx.profile, seed=ctx.seed + t)
        failed += 0 if audit.passed else 1
    frac = failed / bases
    se = math.sqrt(frac * (1 - frac) / bases)
    bound = 2 ** (-math.sqrt(n) / 3)
    checks.append(CheckResult(
        name=f"expanding-base failure rate n={n}",
        passed=frac <= bound + 3 * se,
        detail=f"{failed}/{bases} bases failed the audit, bound {bound:.4g} + 3 SE",
        value=frac,
    ))
    return checks


# -- spectral ----------------------------------------------------------------

def spectral_crosscheck(ctx: SuiteContext) -> List[CheckResult]:
    sizes = ctx.pick((2, 3, 4, 6), (2, 3, 4, 6, 10, 20, 40, 60))
    per = ctx.pick(20, 100)
    mats = []
    for n in sizes:
        for t in range(per):
            mats.append(sample_matrix(ModelTag.IID_RADEMACHER, n, child_seed(ctx.seed, 20, n, t)))
            if n % 2 == 0:
                mats.append(sample_matrix(ModelTag.ROW_REGULAR, n, child_seed(ctx.seed, 21, n, t)))

    tol = 1e-10
    singular_seen = 0

    def agrees(M: IntMatrix) -> bool:
        nonlocal singular_seen
        s_min, s_max, _ = extreme_singular_values(M, tol)
        exact = exact_singularity(M)
        singular_seen += int(exact)
        return exact == (s_min < 10 * tol * s_max)

    bad, total = _count(mats, agrees)
    checks = [_tally("exact singularity matches the float path", bad, total, f"{singular_seen} singular")]

    def restricted_below(M: IntMatrix) -> bool:
        s_min, s_max, _ = extreme_singular_values(M, tol)
        return restricted_norm_H(M) <= s_max * (1 + 1e-12)

    bad, total = _count(mats, restricted_below)
    checks.append(_tally("restricted norm <= operator norm", bad, total))

    def transpose(M: IntMatrix) -> bool:
        s_min, s_max, _ = extreme_singular_values(M, tol)
        t_min, _, _ = extreme_singular_values(M.entries.T, tol)
        return abs(s_min - t_min) <= 2 * tol * max(1.0, s_max)

    bad, total = _count(mats, transpose)
    checks.append(_tally("s_min(M) = s_min(M^T)", bad, total))

    n = ctx.pick(50, 200)
    trials = ctx.pick(20, 500)
    norm = operator_norm_check(ModelTag.IID_RADEMACHER, n, trials, ctx.seed, factor=3.0)
    checks.append(CheckResult(
        name=f"||M_n|| <= 3 sqrt(n) at n={n}",
        passed=norm.passed,
        detail=f"max ratio {norm.max_ratio:.4f}, {len(norm.exceeding)} exceeding",
        value=norm.max_ratio,
    ))
    restricted = restricted_norm_check(n, trials, ctx.seed, factor=5.0)
    checks.append(CheckResult(
        name=f"||Q_n|H|| <= 5 sqrt(n) and Q1 = (n/2)1 at n={n}",
        passed=restricted.passed,
        detail=f"max ratio {restricted.max_ratio:.4f}, identity holds: {restricted.ones_identity_holds}",
        value=restricted.max_ratio,
    ))
    return checks


# -- anticonc ----------------------------------------------------------------

def _random_vectors(ctx: SuiteContext, key: int, count: int, max_n: int, lo: int = -9, hi: int = 9) -> List[List[int]]:
    gen = generator(child_seed(ctx.seed, key))
    out = []
    for _ in range(count):
        n = int(gen.integers(1, max_n + 1))
        out.append([int(x) for x in gen.integers(lo, hi + 1, size=n)])
    return out


def anticonc_oracle(ctx: SuiteContext) -> List[CheckResult]:
    vectors = _random_vectors(ctx, 30, ctx.pick(60, 1000), ctx.pick(8, 14))
    gen = generator(child_seed(ctx.seed, 31))
    primes = (3, 5, 7, 11, 13)
    checks = []

    bad, total = _count(vectors, lambda w: signed_sum_distribution(w) == brute_force_distribution(w))
    checks.append(_tally("signed-sum DP equals enumeration", bad, total))

    cases = [(w, primes[int(gen.integers(0, len(primes)))]) for w in vectors]
    bad, total = _count(cases, lambda c: mod_p_distribution(c[0], c[1]) == brute_force_mod_p(c[0], c[1]))
    checks.append(_tally("mod-p DP equals enumeration", bad, total))

    even = [w for w in vectors if len(w) % 2 == 0]
    bad, total = _count(even, lambda w: slice_sum_distribution(w) == brute_force_slice_distribution(w))
    checks.append(_tally("slice DP equals enumeration", bad, total))

    def invariant(w: List[int]) -> bool:
        rho = atom_probability(w)
        perm = [w[i] for i in gen.permutation(len(w))]
        flips = [x * int(s) for x, s in zip(w, gen.choice([-1, 1], size=len(w)))]
        return (
            atom_probability(perm) == rho
            and atom_probability([-x for x in w]) == rho
            and atom_probability(flips) == rho
            and atom_probability([3 * x for x in w]) == rho
        )

    bad, total = _count(vectors, invariant)
    checks.append(_tally("rho invariant under permutation, signs and scaling", bad, total))

    def levy_ok(w: List[int]) -> bool:
        table = signed_sum_distribution(w)
        values = [levy_concentration(table, d) for d in (0, 0.5, 1, 2, 5)]
        monotone = all(a.value <= b.value for a, b in zip(values, values[1:]))
        return monotone and values[0].exact_value == table.atom()

    bad, total = _count(vectors, levy_ok)
    checks.append(_tally("Levy concentration monotone in delta, equal to rho at 0", bad, total))

    def floor_ok(w: List[int]) -> bool:
        K = max(abs(x) for x in w)
        return K == 0 or atom_probability(w) >= pigeonhole_floor(len(w), K)

    bad, total = _count(vectors, floor_ok)
    checks.append(_tally("pigeonhole floor 1/(2nK+1)", bad, total))

    # entries in [-9, 9] are centred lifts of residues mod 19
    bad, total = _count(vectors, lambda w: atom_probability_mod_p(w, 19) >= atom_probability(w))
    checks.append(_tally("reduction mod p only merges atoms", bad, total))
    return checks


TwoStepCase = Tuple[List[int], Base, int]


def two_step_cases(ctx: SuiteContext) -> List[TwoStepCase]:
    """Every v in {-1, 0, 1}^n and every row for n up to 8, then random instances at n = 12 and n = 8."""
    cases: List[TwoStepCase] = []
    for n in ctx.pick((2, 4), (2, 4, 6, 8)):
        base = sample_base(n, child_seed(ctx.seed, 40, n))
        for v in itertools.product((-1, 0, 1), repeat=n):
            cases.extend((list(v), base, i) for i in range(n))
    gen = generator(child_seed(ctx.seed, 41))
    for n, count in ((12, ctx.pick(10, 10_000)), (8, ctx.pick(10, 2_000))):
        for t in range(count):
            base = sample_base(n, child_seed(ctx.seed, 42, n, t))
            v = [int(x) for x in gen.integers(-5, 6, size=n)]
            cases.append((v, base, int(gen.integers(0, n))))
    return cases


def two_step(ctx: SuiteContext) -> List[CheckResult]:
    checks = []
    cases = two_step_cases(ctx)
    equal = 0

    def holds(case: TwoStepCase) -> bool:
        nonlocal equal
        lhs, rhs = two_step_row_atom(*case)
        equal += int(lhs == rhs)
        return lhs <= rhs

    bad, total = _count(cases, holds)
    checks.append(_tally("row atom <= rho(difference vector)", bad, total, f"{equal} with equality"))
    return checks


# -- structure ---------------------------------------------------------------

def structure_rkstar(ctx: SuiteContext) -> List[CheckResult]:
    gen = generator(child_seed(ctx.seed, 50))
    cases = []
    for p in ctx.pick((3, 5), (3, 5, 7, 11, 13)):
        for m in range(1, ctx.pick(4, 8) + 1):
            if p ** m <= ctx.pick(30, 200):
                vectors = [list(v) for v in itertools.product(range(p), repeat=m)]
            else:
                vectors = [[int(x) for x in gen.integers(0, p, size=m)] for _ in range(ctx.pick(4, 20))]
            for k in (1, 2):
                cases.extend((a, k, p) for a in vectors)

    def agree(case: Tuple[List[int], int, int]) -> bool:
        a, k, p = case
        brute = r_k_star_brute(a, k, p, budget=10 ** 7)
        return brute == r_k_star_inclusion_exclusion(a, k, p) and brute <= r_k_star_trivial_bound(a, k)

    bad, total = _count(cases, agree)
    checks = [_tally("R_k^* brute force equals inclusion-exclusion, below 4^k |a|^(2k)", bad, total)]

    def monotone(a: List[int]) -> bool:
        statuses = [b_set_membership(a, 1, 2, 2, t, 5).status for t in (0, 0.5, 1, 2, 3, 5)]
        seen_non_member = False
        for status in statuses:
            if status == Membership.NON_MEMBER:
                seen_non_member = True
            elif seen_non_member and status == Membership.MEMBER:
                return False
        return True

    members = [[int(x) for x in gen.integers(1, 5, size=4)] for _ in range(ctx.pick(10, 50))]
    bad, total = _count(members, monotone)
    checks.append(_tally("B-set membership monotone in t", bad, total))

    rhs = halasz_rhs(101, 160, 1, 2.0, 0, 1.0)
    checks.append(CheckResult(name="Halasz bound at p=101, n=160, k=1, M=2", passed=abs(rhs - 0.1917) < 5e-4,
                              detail=f"{rhs:.6f}", value=rhs))
    log_count = counting_bound(4, 1, 2, 2, 2, 5)
    checks.append(CheckResult(name="counting bound at n=4", passed=math.isclose(log_count, math.log(2.5e11), rel_tol=1e-12),
                              detail=f"exp(log bound) = {math.exp(log_count):.6g}", value=log_count))
    return checks


def structure_lcd(ctx: SuiteContext) -> List[CheckResult]:
    checks = []
    for gamma in (0.01, 0.1, 0.5):
        for label, a, expected in (
            ("e1", np.eye(ctx.pick(3, 5))[0], 1 / (1 + gamma)),
            ("(1,1)/sqrt2", np.array([1.0, 1.0]) / math.sqrt(2), math.sqrt(2) / (1 + gamma)),
        ):
            params = LcdParams(gamma=gamma, alpha=1.0, theta_max=3.0)
            result = lcd_estimate(a, params)
            ok = (
                result.status == LcdStatus.FOUND
                and result.theta_star is not None
                and abs(result.theta_star - expected) <= result.resolution
                and recheck_lcd(a, result)
            )
            checks.append(CheckResult(
                name=f"LCD of {label} at gamma={gamma}",
                passed=ok,
                detail=f"theta*={result.theta_star}, expected {expected:.10f}",
                value=result.theta_star,
            ))

    gen = generator(child_seed(ctx.seed, 60))
    flips = 0
    trials = ctx.pick(3, 20)
    for _ in range(trials):
        a = gen.standard_normal(4)
        a /= np.linalg.norm(a)
        b = a[gen.permutation(4)] * gen.choice([-1.0, 1.0], size=4)
        params = LcdParams(gamma=0.1, alpha=1.0, theta_max=20.0)
        ra, rb = lcd_estimate(a, params), lcd_estimate(b, params)
        same = ra.status == rb.status and (
            ra.theta_star is None or abs(ra.theta_star - rb.theta_star) <= 2 * ra.resolution
        )
        flips += 0 if same else 1
    checks.append(_tally("LCD invariant under permutation and sign flips", flips, trials))

    e1 = np.eye(4)[0]
    params = LcdParams(gamma=0.1, alpha=1.0, theta_max=1.0)
    low = classify_gamma(e1, 1.0, 4, params, ctx.profile)
    high = classify_gamma(e1, 1e3, 4, params, ctx.profile)
    checks.append(CheckResult(name="Gamma classes of e1", passed=low == GammaClass.GAMMA2 and high == GammaClass.GAMMA1,
                              detail=f"eta=1: {low.value}, eta=1000: {high.value}"))

    iid_ratio, slice_ratio, used = 0.0, 0.0, 0
    n = ctx.pick(6, 12)
    for _ in range(ctx.pick(4, 40)):
        a = gen.standard_normal(n)
        a /= np.linalg.norm(a)
        gamma, alpha = 0.1, n ** ctx.profile.alpha_exp
        result = lcd_estimate(a, LcdParams(gamma=gamma, alpha=alpha, theta_max=50.0))
        if result.theta_star is None:
            continue
        used += 1
        delta = (4 / math.pi) / result.theta_star
        iid_ratio = max(iid_ratio, lcd_small_ball_ratio(a, delta, result.theta_star, gamma, alpha).ratio)
        slice_ratio = max(slice_ratio, lcd_small_ball_ratio(a, delta, result.theta_star, gamma, alpha, on_slice=True).ratio)
    checks.append(CheckResult(name="small-ball corpus has LCD witnesses", passed=used > 0, value=float(used)))
    checks.append(ctx.calibrated("lcd-small-ball-iid", iid_ratio))
    checks.append(ctx.calibrated("lcd-small-ball-slice", slice_ratio))
    return checks


def halasz_suite(ctx: SuiteContext) -> List[CheckResult]:
    n, k, M = 160, 1, 2.0
    p = least_prime_at_least(2500)
    corpus = halasz_corpus(n, p, ctx.pick(12, 500), child_seed(ctx.seed, 70))
    result = halasz_calibration(corpus, HalaszParams(p=p, k=k, M=M, s1=60, s2=60))
    return [
        CheckResult(name=f"Halasz constant finite at p={p}", passed=math.isfinite(result.C_min),
                    detail=f"C_min={result.C_min:.6g} over {len(corpus)} vectors", value=result.C_min),
        ctx.calibrated("halasz-C", result.C_min),
    ]


# -- slice moments -----------------------------------------------------------

def slice_moments(ctx: SuiteContext) -> List[CheckResult]:
    gen = generator(child_seed(ctx.seed, 80))
    checks = []
    vectors = []
    for n in range(2, ctx.pick(8, 12) + 1, 2):
        for _ in range(ctx.pick(5, 100)):
            vectors.append([Fraction(int(gen.integers(-9, 10)), int(gen.integers(1, 6))) for _ in range(n)])

    def second(v: List[Fraction]) -> bool:
        return brute_force_slice_distribution(v).moment(2) == slice_second_moment(v)

    bad, total = _count(vectors, second)
    checks.append(_tally("slice E[X^2] closed form equals enumeration", bad, total))

    def iid(v: List[Fraction]) -> bool:
        S = sum(v, Fraction(0))
        return brute_force_distribution(v).expect(lambda x: (S + x) ** 2) == iid_second_moment(v)

    bad, total = _count(vectors, iid)
    checks.append(_tally("i.i.d. E[Y^2] closed form equals enumeration", bad, total))

    bad, total = _count(vectors, lambda v: q_row_norm_expectation(v) == Fraction(len(v), 4) * slice_second_moment(v))
    checks.append(_tally("E||Q v||^2 = n E[X^2] / 4", bad, total))

    v8 = gen.standard_normal(8)
    mc = q_row_norm_monte_carlo(v8, ctx.pick(2000, 20_000), ctx.seed)
    formula = float(q_row_norm_expectation(v8))
    checks.append(CheckResult(name="E||Q_8 v||^2 against Monte Carlo", passed=abs(mc.mean - formula) <= 3 * mc.se,
                              detail=f"formula {formula:.6g}, MC {mc.mean:.6g} +- {mc.se:.3g}", value=mc.mean))

    ints = [[int(x) for x in gen.integers(-9, 10, size=n)] for n in range(2, ctx.pick(8, 12) + 1, 2)]
    ints = [v for v in ints if any(v)]
    bad, total = _count([(v, q) for v in ints for q in (1, 2, 3)],
                        lambda c: slice_moment_empirical(c[0], c[1]).passed)
    checks.append(_tally("E[X^(2q)] <= 100 sqrt(n) (4q)^q E[X^2]^q", bad, total))

    v12 = [int(x) for x in gen.integers(-3, 4, size=12)]
    exact = slice_moment_empirical(v12, 2)
    mc_moment = slice_moment_empirical(v12, 2, mode="mc", trials=ctx.pick(4000, 50_000), seed=ctx.seed)
    checks.append(CheckResult(name="E[X^4] exact against Monte Carlo at n=12",
                              passed=abs(exact.moment - mc_moment.moment) <= 3 * (mc_moment.se or 0.0),
                              detail=f"exact {exact.moment:.6g}, MC {mc_moment.moment:.6g} +- {mc_moment.se:.3g}",
                              value=mc_moment.moment))

    def norm_ok(c: Tuple[List[int], int]) -> bool:
        v, q = c
        return centered_moment_norm(v, q) <= moment_norm_bound(q, len(v), float(slice_second_moment(v)))

    bad, total = _count([(v, q) for v in ints for q in (2, 3)], norm_ok)
    checks.append(_tally("||X^2 - E X^2||_q below the moment-norm bound", bad, total))

    units = []
    for n in range(4, ctx.pick(8, 12) + 1, 2):
        for _ in range(ctx.pick(3, 20)):
            u = gen.standard_normal(n)
            units.append(list(u / np.linalg.norm(u)))
    mgf = calibrate_mgf_constant(units, t=3)
    checks.append(ctx.calibrated("mgf-O3", mgf.O_t))

    def dominated(v: List[float]) -> bool:
        EX2 = float(slice_second_moment(v))
        lam = 0.5 / (40 * EX2)
        return mgf_bound(lam, EX2, 3, len(v), mgf.O_t) >= empirical_mgf(v, lam) * (1 - 1e-12)

    bad, total = _count(units, dominated)
    checks.append(_tally("calibrated MGF bound dominates", bad, total))

    low = max(low_moment_ratio(v, 2) for v in units)
    checks.append(ctx.calibrated("low-moment-O2", low))

    n = ctx.pick(8, 40)
    trials = ctx.pick(50, 10_000)
    q_check = fixed_vector_invertibility_check(np.ones(n) / math.sqrt(n), n, trials, ctx.seed)
    m_check = fixed_vector_invertibility_check(np.eye(n)[0], n, trials, ctx.seed, model=ModelTag.IID_RADEMACHER)
    checks.append(CheckResult(name="Q_n 1/sqrt(n) never in the small ball", passed=q_check.hits == 0,
                              value=q_check.probability))
    checks.append(CheckResult(name="M_n e1 never in the small ball", passed=m_check.hits == 0,
                              value=m_check.probability))
    return checks


# -- tails -------------------------------------------------------------------

def edelman_baseline(ctx: SuiteContext) -> List[CheckResult]:
    n = ctx.pick(20, 50)
    epsilons = [0.05, 0.1, 0.2, 0.3, 0.5]
    cfg = ExperimentConfig(model=Ensemble.GAUSSIAN, n_list=[n], trials=ctx.pick(1500, 20_000),
                           eta_grid=epsilons, eta_scale="edelman", seed=ctx.seed)
    curve = run_tail_experiment(cfg)
    checks = []
    for eps, cell in zip(epsilons, curve.cells):
        limit = 1 - math.exp(-eps - eps ** 2 / 2)
        tol = max(3 * cell.se, 0.015)
        checks.append(CheckResult(
            name=f"P(s_n <= {eps}/sqrt(n)) at n={n}",
            passed=abs(cell.p_hat - limit) <= tol,
            detail=f"p_hat {cell.p_hat:.4f}, limiting law {limit:.4f}, epsilon {eps}",
            value=cell.p_hat,
        ))
    return checks


def _monotone(curve: TailCurve) -> bool:
    for n in {c.n for c in curve.cells}:
        hits = [c.hits for c in sorted((c for c in curve.cells if c.n == n), key=lambda c: c.eta)]
        if any(b < a for a, b in zip(hits, hits[1:])):
            return False
    return True


def tail_shape(ctx: SuiteContext) -> List[CheckResult]:
    checks = []
    grid = [0.0, 0.001, 0.003, 0.01, 0.03, 0.1]
    for model, key in ((Ensemble.IID_RADEMACHER, "iid"), (Ensemble.ROW_REGULAR, "rr")):
        cfg = ExperimentConfig(model=model, n_list=ctx.pick([6, 8], [20, 40]), trials=ctx.pick(400, 10_000),
                               eta_grid=grid, seed=ctx.seed)
        curve = run_tail_experiment(cfg)
        checks.append(CheckResult(name=f"{model.value} tail curve monotone in eta", passed=_monotone(curve)))
        calibration = calibrate_tail_constant(curve)
        checks.append(ctx.calibrated(f"tail-C-{key}", calibration.C))

    trials = ctx.pick(2000, 10_000)
    cfg = ExperimentConfig(model=Ensemble.IID_RADEMACHER, n_list=[4], trials=trials, eta_grid=[0.0], seed=ctx.seed)
    cell = run_tail_experiment(cfg).cells[0]
    exact = float(exact_singularity_frequency(4, Ensemble.IID_RADEMACHER))
    checks.append(CheckResult(
        name="singularity frequency at n=4 against enumeration",
        passed=abs(cell.p_hat - exact) <= 3 * cell.se,
        detail=f"p_hat {cell.p_hat:.4f}, exact {exact:.6f}",
        value=cell.p_hat,
    ))
    return checks


def get_builtin_suites() -> List[Suite]:
    return [
        Suite(name="models-pushforward", runner=models_pushforward,
              description="Two-step model reproduces the row-regular law"),
        Suite(name="models-audit", runner=models_audit,
              description="Matching identities and the expanding-base failure rate"),
        Suite(name="spectral-crosscheck", runner=spectral_crosscheck,
              description="Float against exact singularity, norm bounds"),
        Suite(name="anticonc-oracle", runner=anticonc_oracle,
              description="DP engines against enumeration, atom invariances"),
        Suite(name="two-step", runner=two_step,
              description="Row atom of Q_sigma v against rho of its difference vector"),
        Suite(name="structure-rkstar", runner=structure_rkstar,
              description="R_k^* engines, membership monotonicity, bound evaluators"),
        Suite(name="structure-lcd", runner=structure_lcd,
              description="LCD analytic family, invariance, small-ball constants"),
        Suite(name="slice-moments", runner=slice_moments,
              description="Closed-form slice moments, moment and MGF bounds"),
        Suite(name="halasz-calibration", runner=halasz_suite,
              description="Corpus constant of the Halasz inequality over F_p"),
        Suite(name="edelman-baseline", runner=edelman_baseline,
              description="Gaussian least singular value against the Edelman law"),
        Suite(name="tail-shape", runner=tail_shape,
              description="Tail constants for both discrete ensembles"),
    ]
