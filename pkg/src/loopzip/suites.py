"""Named verification suites behind the command-line front door.

Each suite returns a list of check dicts {name, passed, ...}; the CLI
wraps them into a versioned report.  Everything is deterministic given
the configuration and the seed.
"""

from __future__ import annotations

import itertools
import random

from .coset import (
    canonical_pair,
    class_of,
    default_precision,
    embedding_fiber_report,
    kernel_invariance_report,
    pair_matrix,
    prozip_invariance_report,
    rescale_class,
    verify_class_bijection,
    witt_census_report,
    witt_kernel_invariance_report,
)
from .gf import FieldSpec
from .grpdata import (
    Cocharacter,
    SubgroupTag,
    conj_by_mu,
    enumerate_gl_flat,
    enumerate_zip_pairs_flat,
    is_member,
    mu_matrix,
    random_k1_mat,
    random_laurent,
    random_left_h_mat,
    upper_block_positions,
)
from .matring import LAURENT, Mat, mat_decode
from .orbits import ActionSpec, chain_compare, check_action_axioms, transport_check, weyl_reps_report
from .series import LaurentElt
from .weyl import (
    CosetPoset,
    all_permutations,
    bruhat_leq,
    identity,
    longest_element,
    min_coset_reps,
    reduced_word,
    shtuka_parametrization,
    simple_reflection,
    zip_parametrization,
)
from .witt import ghost_selftest


# -- loop-group inclusion checks --------------------------------------------------


def _unipotent_series_elements(spec: FieldSpec, mu: Cocharacter, sign: int, prec: int):
    """All of U_+(R) or U_-(R), R = F_q[t]/t^prec, at absolute precision prec."""
    n = mu.n
    positions = upper_block_positions(mu)
    if sign < 0:
        positions = [(j, i) for i, j in positions]
    ident = Mat.identity(LAURENT, n, spec=spec, prec=prec)
    polys = list(itertools.product(range(spec.q), repeat=prec))
    for combo in itertools.product(polys, repeat=len(positions)):
        rows = [list(r) for r in ident.rows]
        for (i, j), codes in zip(positions, combo):
            rows[i][j] = LaurentElt.from_coeff_list(spec, 0, codes, prec)
        yield Mat(LAURENT, rows)


def _parabolic_series_elements(spec: FieldSpec, mu: Cocharacter, sign: int, prec: int):
    """All of P_+(R) or P_-(R) for one-dimensional diagonal blocks."""
    if any(s != 1 for _, s in mu.blocks):
        raise ValueError("exhaustive parabolic enumeration needs 1x1 blocks")
    n = mu.n
    positions = upper_block_positions(mu)
    if sign < 0:
        positions = [(j, i) for i, j in positions]
    units = [
        codes
        for codes in itertools.product(range(spec.q), repeat=prec)
        if codes[0] != 0
    ]
    polys = list(itertools.product(range(spec.q), repeat=prec))
    zero = LaurentElt.zero(spec, prec)
    for diag in itertools.product(units, repeat=n):
        for combo in itertools.product(polys, repeat=len(positions)):
            rows = [[zero] * n for _ in range(n)]
            for i in range(n):
                rows[i][i] = LaurentElt.from_coeff_list(spec, 0, diag[i], prec)
            for (i, j), codes in zip(positions, combo):
                rows[i][j] = LaurentElt.from_coeff_list(spec, 0, codes, prec)
            yield Mat(LAURENT, rows)


def _random_unipotent_series(spec, mu, sign, prec, rng):
    n = mu.n
    positions = upper_block_positions(mu)
    if sign < 0:
        positions = [(j, i) for i, j in positions]
    rows = [list(r) for r in Mat.identity(LAURENT, n, spec=spec, prec=prec).rows]
    for i, j in positions:
        rows[i][j] = random_laurent(spec, rng, 0, prec)
    return Mat(LAURENT, rows)


def _random_parabolic_series(spec, mu, sign, prec, rng):
    n = mu.n
    positions = upper_block_positions(mu)
    if sign < 0:
        positions = [(j, i) for i, j in positions]
    zero = LaurentElt.zero(spec, prec)
    while True:
        rows = [[zero] * n for _ in range(n)]
        # block-diagonal part with invertible reduction
        start = 0
        ok = True
        for _, s in mu.blocks:
            from .matring import flat_det

            blk = [[random_laurent(spec, rng, 0, prec) for _ in range(s)] for _ in range(s)]
            red = tuple(x.reduce_mod_t().code for r in blk for x in r)
            if flat_det(spec, s, red) == 0:
                ok = False
                break
            for i in range(s):
                for j in range(s):
                    rows[start + i][start + j] = blk[i][j]
            start += s
        if not ok:
            continue
        for i, j in positions:
            rows[i][j] = random_laurent(spec, rng, 0, prec)
        return Mat(LAURENT, rows)


def integral_conjugation_checks(spec: FieldSpec, mu: Cocharacter, prec: int,
                                samples: int, seed: int, exhaustive: bool) -> dict:
    """The four inclusion relations for the mu-conjugates of U_+/P_+ and U_-/P_-.

    Conjugating U_+ towards positive powers lands in the depth-one kernel;
    conjugating P_+ stays integral; mirrored on the minus side.
    """
    rng = random.Random(seed)
    cases = 0
    failures = 0

    def gen(sign, parabolic):
        nonlocal cases
        if exhaustive:
            it = (_parabolic_series_elements if parabolic else
                  _unipotent_series_elements)(spec, mu, sign, prec)
        else:
            maker = _random_parabolic_series if parabolic else _random_unipotent_series
            it = (maker(spec, mu, sign, prec, rng) for _ in range(samples))
        for m in it:
            cases += 1
            yield m

    for u in gen(+1, parabolic=False):
        if not is_member(conj_by_mu(u, mu, -1), SubgroupTag.K1, mu):
            failures += 1
    for p in gen(+1, parabolic=True):
        if not conj_by_mu(p, mu, -1).is_integral():
            failures += 1
    for u in gen(-1, parabolic=False):
        if not is_member(conj_by_mu(u, mu, +1), SubgroupTag.K1, mu):
            failures += 1
    for p in gen(-1, parabolic=True):
        if not conj_by_mu(p, mu, +1).is_integral():
            failures += 1

    return {
        "name": "integral-conjugation-inclusions",
        "mu": list(mu.weights),
        "q": spec.q,
        "precision": prec,
        "exhaustive": exhaustive,
        "cases": cases,
        "failures": failures,
        "passed": failures == 0,
    }


def zip_inclusion_checks(spec: FieldSpec, mu: Cocharacter, prec: int,
                         samples: int, seed: int) -> dict:
    """Sampled membership chain for elements integral on both sides of mu.

    Every such element reduces into P_+, its mu-conjugate is integral on
    the other side, and the conjugate pair has matching Levi reductions.
    """
    rng = random.Random(seed)
    failures = 0
    for _ in range(samples):
        g = random_left_h_mat(spec, mu, prec, rng)
        h = conj_by_mu(g, mu, -1)
        ok = (
            is_member(g, SubgroupTag.leftH, mu)
            and is_member(g, SubgroupTag.Hplus, mu)
            and is_member(h, SubgroupTag.rightH, mu)
            and is_member((h, g), SubgroupTag.ZipLoop, mu)
        )
        failures += not ok
    return {
        "name": "two-sided-integral-membership",
        "mu": list(mu.weights),
        "q": spec.q,
        "precision": prec,
        "samples": samples,
        "failures": failures,
        "passed": failures == 0,
    }


def minuscule_check(spec: FieldSpec, mu: Cocharacter, prec: int,
                    samples: int, seed: int) -> dict:
    """Depth-one kernel conjugation: stays integral iff all weight gaps <= 1.

    For a minuscule mu every sampled kernel element conjugates integrally;
    otherwise an explicit violating witness is produced.
    """
    rng = random.Random(seed)
    n = mu.n
    if mu.is_minuscule():
        failures = 0
        for _ in range(samples):
            k = random_k1_mat(spec, n, prec, rng)
            if not conj_by_mu(k, mu, +1).is_integral():
                failures += 1
            # full elements of the parabolic-times-kernel subgroups
            hm = _random_parabolic_series(spec, mu, -1, prec, rng) * random_k1_mat(
                spec, n, prec, rng
            )
            if not conj_by_mu(hm, mu, +1).is_integral():
                failures += 1
            hp = _random_parabolic_series(spec, mu, +1, prec, rng) * random_k1_mat(
                spec, n, prec, rng
            )
            if not conj_by_mu(hp, mu, -1).is_integral():
                failures += 1
        return {
            "name": "minuscule-kernel-conjugation",
            "mu": list(mu.weights),
            "minuscule": True,
            "samples": samples,
            "failures": failures,
            "witness": None,
            "passed": failures == 0,
        }
    # witness: identity plus t in the corner with the widest gap
    ident = Mat.identity(LAURENT, n, spec=spec, prec=prec)
    rows = [list(r) for r in ident.rows]
    rows[0][n - 1] = rows[0][n - 1] + LaurentElt.t_power(spec, 1, prec)
    witness = Mat(LAURENT, rows)
    in_k1 = is_member(witness, SubgroupTag.K1, mu)
    escapes = not conj_by_mu(witness, mu, +1).is_integral()
    return {
        "name": "minuscule-kernel-conjugation",
        "mu": list(mu.weights),
        "minuscule": False,
        "witness": "I + t*E(1,n)",
        "witness_in_kernel": in_k1,
        "witness_escapes": escapes,
        "passed": in_k1 and escapes,
    }


def zip_rescaling_check(spec: FieldSpec, mu: Cocharacter, factors=(2, 3)) -> dict:
    """The zip group depends only on the blocks: point sets agree under scaling."""
    base = set(enumerate_zip_pairs_flat(spec, mu))
    ok = True
    for k in factors:
        if set(enumerate_zip_pairs_flat(spec, mu.scaled(k))) != base:
            ok = False
    return {
        "name": "zip-group-rescaling-invariance",
        "mu": list(mu.weights),
        "q": spec.q,
        "factors": list(factors),
        "passed": ok,
    }


# -- suites -------------------------------------------------------------------------


def suite_lemmas(cfg: dict) -> list:
    spec = FieldSpec.for_q(cfg["q"])
    mu = Cocharacter(cfg["mu"])
    prec = cfg["prec"]
    seed = cfg["seed"]
    samples = cfg["samples"]
    checks = []
    if mu.n == 2 and spec.q == 2 and all(s == 1 for _, s in mu.blocks):
        for small in (2, 3):
            checks.append(
                dict(integral_conjugation_checks(spec, mu, small, 0, seed, True),
                     name=f"integral-conjugation-inclusions-exhaustive-N{small}")
            )
    checks.append(integral_conjugation_checks(spec, mu, prec, samples, seed, False))
    checks.append(zip_inclusion_checks(spec, mu, prec, samples, seed + 1))
    checks.append(minuscule_check(spec, mu, prec, samples, seed + 2))
    if mu.is_minuscule():
        # demonstrate the failure side as well, on a non-minuscule cousin
        wide = Cocharacter((2,) + (0,) * (mu.n - 1))
        checks.append(
            dict(minuscule_check(spec, wide, max(prec, 6), samples, seed + 3),
                 name="non-minuscule-witness")
        )
    checks.append(zip_rescaling_check(spec, mu))
    return checks


def suite_psi(cfg: dict) -> list:
    spec = FieldSpec.for_q(cfg["q"])
    mu = Cocharacter(cfg["mu"])
    prec = max(cfg["prec"], default_precision(mu))
    checks = []
    rep = verify_class_bijection(mu, spec, prec)
    rep["name"] = "class-orbit-bijection"
    rep["passed"] = rep["injective"] and rep["surjective"] and rep["round_trip"]
    checks.append(rep)
    inv = kernel_invariance_report(mu, spec, prec, cfg["samples"], cfg["seed"])
    inv["name"] = "kernel-bi-invariance"
    inv["passed"] = inv["passed_samples"] == inv["samples"]
    checks.append(inv)
    fib = embedding_fiber_report(mu, spec)
    fib["name"] = "embedding-fibers"
    fib["passed"] = fib["alpha_ok"] and fib["beta_ok"]
    checks.append(fib)
    # rescaling consistency on every class representative
    from .coset import ClassContext

    ctx = ClassContext.get(mu, spec)
    ok = True
    for factor in (2, 3):
        mu2 = mu.scaled(factor)
        prec2 = default_precision(mu2)
        for rep_pair in sorted(ctx.orbits):
            g = mat_decode(spec, mu.n, rep_pair[0])
            h = mat_decode(spec, mu.n, rep_pair[1])
            c1 = rescale_class(canonical_pair(g, h, mu), factor)
            c2 = class_of(pair_matrix(g, h, mu2, prec2), mu2)
            if c1 != c2:
                ok = False
    checks.append({
        "name": "rescaling-representative-match",
        "mu": list(mu.weights),
        "q": spec.q,
        "factors": [2, 3],
        "passed": ok,
    })
    return checks


def suite_witt(cfg: dict) -> list:
    spec = FieldSpec.for_q(cfg["q"])
    mu = Cocharacter(cfg["mu"])
    checks = []
    for p in (2, 3):
        for length in (2, 3, 4):
            rep = ghost_selftest(p, length, cfg["samples"], cfg["seed"])
            rep["name"] = f"ghost-oracle-p{p}-N{length}"
            rep["passed"] = rep["passed_samples"] == rep["samples"]
            checks.append(rep)
    if spec.p in (2, 3) and mu.n <= 2 and max(abs(w) for w in mu.weights) <= 1:
        rep = witt_census_report(mu, spec, 3, max(cfg["prec"], default_precision(mu)))
        rep["name"] = "mixed-census-equality"
        rep["passed"] = rep["census_equal"] and rep["pointwise_equal"]
        checks.append(rep)
        inv = witt_kernel_invariance_report(mu, spec, 3, cfg["samples"], cfg["seed"])
        inv["name"] = "mixed-kernel-bi-invariance"
        inv["passed"] = inv["passed_samples"] == inv["samples"]
        checks.append(inv)
    return checks


def suite_chain(cfg: dict) -> list:
    mu = Cocharacter(cfg["mu"])
    q, m = cfg["q"], cfg["tau"]
    checks = []
    for kind in ("zip-normal", "zip-frobenius", "partial-frobenius", "sigma-conj"):
        ok = check_action_axioms(ActionSpec(kind, mu, q, m), seed=cfg["seed"])
        checks.append({"name": f"action-axioms-{kind}", "q": q, "passed": ok})
    rep = chain_compare(mu, q, m)
    rep["name"] = "partition-chain"
    checks.append(rep)
    rep = transport_check(mu, q, m, seed=cfg["seed"])
    rep["name"] = "orbit-transport"
    checks.append(rep)
    return checks


def suite_weyl(cfg: dict) -> list:
    mu = Cocharacter(cfg["mu"])
    n = mu.n
    checks = []

    # Bruhat criterion against the subword oracle, exhaustively
    def subword_oracle(u, w):
        word = reduced_word(w)
        lu = u.length()
        for combo in itertools.combinations(range(len(word)), lu):
            prod = identity(n)
            for idx in combo:
                prod = prod * simple_reflection(n, word[idx])
            if prod == u:
                return True
        return False

    perms = list(all_permutations(n))
    mismatches = sum(
        1 for u in perms for w in perms if bruhat_leq(u, w) != subword_oracle(u, w)
    )
    checks.append({
        "name": "bruhat-vs-subword-oracle",
        "n": n,
        "pairs": len(perms) ** 2,
        "mismatches": mismatches,
        "passed": mismatches == 0,
    })

    reps = min_coset_reps(n, mu.type_J)
    fact = 1
    for _, s in mu.blocks:
        for i in range(1, s + 1):
            fact *= i
    total = 1
    for i in range(1, n + 1):
        total *= i
    checks.append({
        "name": "coset-representative-count",
        "n": n,
        "J": sorted(mu.type_J),
        "count": len(reps),
        "expected": total // fact,
        "passed": len(reps) == total // fact,
    })

    poset = CosetPoset(n, mu.type_J)
    bruhat_poset = CosetPoset(n, set())
    degenerates = all(
        bruhat_poset.leq(u, w) == bruhat_leq(u, w)
        for u in bruhat_poset.elements
        for w in bruhat_poset.elements
    )
    checks.append({
        "name": "coset-order-axioms",
        "elements": len(poset.elements),
        "empty-type-is-bruhat": degenerates,
        "passed": degenerates,
    })

    shtuka = [shtuka_parametrization(w, mu)[0] for w in reps]
    zipp = [zip_parametrization(w, mu) for w in reps]
    inj = len(set(shtuka)) == len(reps) and len(set(zipp)) == len(reps)
    checks.append({
        "name": "parametrization-injectivity",
        "count": len(reps),
        "passed": inj,
    })

    rep = weyl_reps_report(mu, cfg["q"], cfg["tau"], max(cfg["prec"], default_precision(mu)))
    rep["name"] = "representative-conjugacy-distinctness"
    checks.append(rep)
    return checks


def suite_prozip(cfg: dict) -> list:
    spec = FieldSpec.for_q(cfg["q"])
    mu = Cocharacter(cfg["mu"])
    rep = prozip_invariance_report(
        spec=spec, mu=mu, prec=cfg["prec"], samples=cfg["samples"], seed=cfg["seed"]
    )
    rep["name"] = "conjugate-pair-invariance"
    rep["passed"] = rep["passed_samples"] == rep["samples"]
    return [rep]


SUITES = {
    "lemmas": suite_lemmas,
    "psi": suite_psi,
    "witt": suite_witt,
    "chain": suite_chain,
    "weyl": suite_weyl,
    "prozip": suite_prozip,
}


def run_suites(names, cfg: dict) -> dict:
    checks = []
    for name in names:
        for check in SUITES[name](cfg):
            check = dict(check)
            check["suite"] = name
            checks.append(check)
    return {
        "schema": 1,
        "config": {k: cfg[k] for k in sorted(cfg)},
        "suites": list(names),
        "checks": checks,
        "passed": all(c["passed"] for c in checks),
    }
