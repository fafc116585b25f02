"""Cross-checks between independent oracles.

Each check returns a :class:`CheckResult`; ``run_all`` runs the whole suite
and is what ``parkgraph verify`` prints. ``quick=True`` shrinks the expensive
sweeps for a fast smoke run.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import product
from math import factorial
from typing import Callable

from .asymptotics import C_HALF, asymp_M, c_less, mc_probability, prob_exact
from .bijection import phi_general, phi_general_inverse
from .core import MappingFn, is_parking_function, park_mapping, park_tree
from .enumgen import all_mappings, all_trees, brute_C_profile, brute_F_profile, brute_M_profile, pf_profile
from .exactcount import (
    classic_P,
    exact_F_n,
    exact_F_nm,
    exact_M_n,
    exact_M_nm,
    series_C,
    series_F,
    series_M,
    series_Q_bivariate,
)
from .structure import (
    char_mapping_full,
    char_tree_subtree,
    chain_count,
    count_ordered_tree_pfs,
    make_chain,
    make_star,
    star_count,
)

GOLDEN19_SUCC = (5, 7, 1, 12, 13, 10, 14, 10, 2, 13, 5, 18, 12, 7, 5, 14, 13, 5, 14)
GOLDEN19_PREFS = (10, 5, 14, 10, 13, 14)
GOLDEN19_PI = (10, 5, 14, 13, 12, 7)
MC_SEED = 20240611


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.detail} ({self.seconds:.1f}s)"


def _timed(name: str, fn: Callable[[], tuple[bool, str]]) -> CheckResult:
    start = time.perf_counter()
    ok, detail = fn()
    return CheckResult(name, ok, detail, time.perf_counter() - start)


def check_exact_counts(quick: bool = False, workers: int = 1) -> CheckResult:
    def run():
        bad = []
        golden = {"F_1": (brute_F_profile(1)[1], 1), "F_2": (brute_F_profile(2)[2], 6),
                  "C_2": (brute_C_profile(2)[2], 10), "M_2": (brute_M_profile(2)[2], 12)}
        for key, (got, want) in golden.items():
            if got != want:
                bad.append(f"{key}={got}!={want}")
        sweeps = [(n, range(n + 1)) for n in range(1, 5)]
        if not quick:
            sweeps.append((5, (0, 1, 3, 5)))
        compared = 0
        for n, ms in sweeps:
            fp = brute_F_profile(n, workers=workers)
            mp = brute_M_profile(n, workers=workers)
            for m in ms:
                compared += 1
                if fp[m] != exact_F_nm(n, m) or mp[m] != exact_M_nm(n, m):
                    bad.append(f"(n={n},m={m})")
        return not bad, f"{compared} (n,m) pairs brute == closed form" if not bad else "mismatch " + ", ".join(bad)

    return _timed("exact counts vs brute force", run)


def check_relations(max_nm: int = 40, max_n: int = 50) -> CheckResult:
    def run():
        bad = [(n, m) for n in range(1, max_nm + 1) for m in range(n + 1)
               if exact_M_nm(n, m) != n * exact_F_nm(n, m)]
        bad += [(n, n) for n in range(1, max_n + 1) if exact_M_n(n) != n * exact_F_n(n)]
        return not bad, f"M = n F for n <= {max_nm} (all m) and n <= {max_n} (m = n)" if not bad else f"fails at {bad[:5]}"

    return _timed("M = n F relations", run)


def check_series(quick: bool = False) -> CheckResult:
    def run():
        biv_n = 6 if quick else 10
        uni = 20 if quick else 40
        gf = series_Q_bivariate(biv_n)
        bad = [(n, m) for n in range(1, biv_n + 1) for m in range(n + 1)
               if gf.count("M", n, m) != exact_M_nm(n, m)]
        M = series_M(uni)
        if series_C(uni).exp() != M:
            bad.append("M != exp(C)")
        if 1 + series_F(uni).derivative().shift(1) != M:
            bad.append("M != 1 + z F'")
        if any(M.coeff(n) * factorial(n) ** 2 != exact_M_n(n) for n in range(1, uni + 1)):
            bad.append("univariate M coefficients")
        return not bad, f"bivariate M for n <= {biv_n}; identities to order {uni}" if not bad else str(bad)

    return _timed("series oracles", run)


def check_bijection(quick: bool = False) -> CheckResult:
    def run():
        sweeps = [(n, range(n + 1)) for n in range(1, 4)]
        if not quick:
            sweeps.append((4, (0, 2, 4)))
        issues = []
        for n, ms in sweeps:
            trees = list(all_trees(n))
            for m in ms:
                image = set()
                triples = 0
                for t in trees:
                    for s in product(range(1, n + 1), repeat=m):
                        out = park_tree(t, s)
                        if not out:
                            continue
                        for w in range(1, n + 1):
                            triples += 1
                            f = phi_general(t, s, w)
                            if park_mapping(f, s).pi != out.pi:
                                issues.append(f"pi changed at n={n}")
                            if phi_general_inverse(f, s) != (t, w):
                                issues.append(f"round trip at n={n}")
                            image.add((f, s))
                target = exact_M_nm(n, m)
                if len(image) != triples or triples != target:
                    issues.append(f"(n={n},m={m}) image {len(image)} triples {triples} M {target}")
                # the image must consist of parking pairs only; size equality then gives "exactly"
                if any(not is_parking_function(f, s) for f, s in image):
                    issues.append(f"non-parking image at n={n}")
        return not issues, "injective, onto parking pairs, pi preserved" if not issues else "; ".join(issues[:5])

    return _timed("bijection", run)


def check_characterizations(max_n: int = 4) -> CheckResult:
    def run():
        bad = 0
        cases = 0
        for n in range(1, max_n + 1):
            for f in all_mappings(n):
                for s in product(range(1, n + 1), repeat=n):
                    cases += 1
                    bad += char_mapping_full(f, s) != is_parking_function(f, s)
            for t in all_trees(n):
                for m in range(n + 1):
                    for s in product(range(1, n + 1), repeat=m):
                        cases += 1
                        bad += char_tree_subtree(t, s) != is_parking_function(t, s)
        return bad == 0, f"{cases} cases agree with simulation" if not bad else f"{bad} disagreements"

    return _timed("characterizations", run)


def check_extremal(max_n: int = 5) -> CheckResult:
    def run():
        bad = []
        for n in range(1, max_n + 1):
            lo = pf_profile(make_star(n), n)
            hi = pf_profile(make_chain(n), n)
            for m in range(n + 1):
                if lo[m] != star_count(n, m) or hi[m] != chain_count(n, m) or hi[m] != classic_P(n, m):
                    bad.append(f"closed form (n={n},m={m})")
            for t in all_trees(n):
                prof = pf_profile(t, n)
                if any(not lo[m] <= prof[m] <= hi[m] for m in range(n + 1)):
                    bad.append(f"bound broken by {t.parent}")
        return not bad, f"star <= S(t,m) <= chain for n <= {max_n}" if not bad else "; ".join(bad[:5])

    return _timed("extremal bounds", run)


def check_ordered(max_n: int = 5) -> CheckResult:
    def run():
        bad = [t.parent for n in range(1, max_n + 1) for t in all_trees(n)
               if count_ordered_tree_pfs(t) != factorial(n)]
        return not bad, f"n! for every tree with n <= {max_n}" if not bad else f"fails for {bad[:3]}"

    return _timed("ordered parking functions", run)


def _deviations(values):
    return [abs(v - 1) for v in values]


def _decreasing(xs) -> bool:
    return all(a > b for a, b in zip(xs, xs[1:]))


def check_asymptotics() -> list[CheckResult]:
    def sub():
        vals = [float(prob_exact(n, 3 * n // 10)) / c_less(0.3) for n in (100, 200, 400)]
        devs = _deviations(vals)
        ratio = vals[-1]
        ok = 0.95 <= ratio <= 1.05 and _decreasing(devs)
        return ok, f"p(400,120)/C_<(0.3) = {ratio:.5f}; deviations {[round(d, 5) for d in devs]}"

    def crit():
        ns = (100, 200, 400, 1000)
        vals = [float(prob_exact(n, n // 2)) * n ** (1 / 6) / C_HALF for n in ns]
        devs = _deviations(vals)
        ok = devs[-1] < 0.15 and _decreasing(devs)
        return ok, f"p(n,n/2) n^(1/6)/C_1/2 at n={ns[-1]}: {vals[-1]:.5f}; deviations {[round(d, 5) for d in devs]}"

    def sup():
        ns = (100, 200, 400)
        vals = [asymp_M(n, 3 * n // 4).ratio(exact_M_nm(n, 3 * n // 4)) for n in ns]
        devs = _deviations(vals)
        ok = devs[-1] < 0.15 and _decreasing(devs)
        return ok, f"exact/asymptotic at n=400, rho=0.75: {vals[-1]:.5f}; deviations {[round(d, 5) for d in devs]}"

    return [_timed("asymptotics sub-critical", sub), _timed("asymptotics critical", crit),
            _timed("asymptotics super-critical", sup)]


def check_monte_carlo(trials: int = 100_000, seed: int = MC_SEED, workers: int = 1) -> CheckResult:
    def run():
        parts, ok = [], True
        for n, m in ((3, 2), (5, 5), (10, 4)):
            est = mc_probability(n, m, trials, seed=[seed, n, m], workers=workers)
            exact = float(prob_exact(n, m))
            z = abs(est.p - exact) / est.stderr
            ok &= z <= 4
            parts.append(f"({n},{m}) {est.p:.4f} vs {exact:.4f} z={z:.2f}")
        return ok, "; ".join(parts)

    return _timed("monte carlo", run)


def check_golden_mapping() -> CheckResult:
    def run():
        f = MappingFn(GOLDEN19_SUCC)
        good = park_mapping(f, GOLDEN19_PREFS)
        bad = park_mapping(f, GOLDEN19_PREFS + (7,))
        ok = good.pi == GOLDEN19_PI and bad.failed_driver == 7
        return ok, f"pi={good.pi}, extension fails at driver {bad.failed_driver}"

    return _timed("19-node golden mapping", run)


def run_all(quick: bool = False, workers: int = 1) -> list[CheckResult]:
    results = [
        check_exact_counts(quick, workers),
        check_relations(20 if quick else 40, 25 if quick else 50),
        check_series(quick),
        check_bijection(quick),
        check_characterizations(3 if quick else 4),
        check_extremal(4 if quick else 5),
        check_ordered(4 if quick else 5),
    ]
    if not quick:
        results += check_asymptotics()
    results.append(check_monte_carlo(10_000 if quick else 100_000, workers=workers))
    results.append(check_golden_mapping())
    return results
