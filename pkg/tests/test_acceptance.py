"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines; every tolerance is pinned here, nothing is deferred.
"""

import itertools
import time

import numpy as np

from helpers import random_group_hom_instances, reference_completion
from qsym import groups
from qsym.algebras import (
    from_blocks, gram_matrix, orthonormalize, random_faithful_state,
    trace_state, uniform_state,
)
from qsym.families import (
    check_family, check_podles, check_state_preserving, compose,
    family_from_magic_unitary, permutation_family,
)
from qsym.hopfimage import (
    dual_generated_dim, generated_subgroup, hopf_image, inner_faithful,
)
from qsym.increasing import (
    classical_rep, complete, enumerate_sequences, free_pair_rep,
    magic_to_permutation, two_projection_pair, validate_magic,
)
from qsym.linalg import Tolerance, mutual_projection_residual
from qsym.quantumgroups import (
    Functional, cesaro_mean, convolve, cqg_function_algebra, cqg_group_algebra,
    evaluation_hom, group_algebra_quotient_hom,
)

TOL = Tolerance(eps_eq=1e-9, eps_rank=1e-8)


def report(number: int, description: str, ok: bool, extra: str = ""):
    status = "PASS" if ok else "FAIL"
    suffix = f" ({extra})" if extra else ""
    print(f"[{status}] criterion {number}: {description}{suffix}")
    assert ok, f"criterion {number} failed: {description}{suffix}"


def _criterion1_cases():
    cases = []
    for g in (groups.symmetric_group(3), groups.dihedral_group(4)):
        q = cqg_function_algebra(g)
        for a in range(g.order):
            expected = len(groups.subgroup_generated(g, [a]))
            cases.append((q, evaluation_hom(q, [a]), expected, True))
        for a, b in itertools.combinations(range(g.order), 2):
            expected = len(groups.subgroup_generated(g, [a, b]))
            cases.append((q, evaluation_hom(q, [a, b]), expected, True))
    return cases


def _criterion2_cases():
    cases = []
    for gamma in (groups.cyclic_group(4), groups.cyclic_group(6),
                  groups.klein_four(), groups.symmetric_group(3)):
        q = cqg_group_algebra(gamma)
        normals = groups.normal_subgroups(gamma)
        for s1, s2 in itertools.combinations_with_replacement(normals, 2):
            h1 = group_algebra_quotient_hom(q, gamma, s1)
            h2 = group_algebra_quotient_hom(q, gamma, s2)
            expected = gamma.order // len(groups.intersect_subgroups(s1, s2))
            cases.append((q, [h1, h2], expected))
    return cases


CASES1 = _criterion1_cases()
CASES2 = _criterion2_cases()


def test_criterion_1_classical_hopf_image_oracle():
    started = time.perf_counter()
    ok = True
    for q, hom, expected, want_commutative in CASES1:
        res = hopf_image(q, hom, method="coideal", tol=TOL)
        if res.dim != expected:
            ok = False
            break
        if want_commutative and not res.quotient.alg.is_commutative(TOL):
            ok = False
            break
    elapsed = time.perf_counter() - started
    report(1, "Hopf image of point evaluations matches subgroup order "
              f"on S3 and D4 ({len(CASES1)} cases)",
           ok and elapsed < 5.0, f"{elapsed:.2f}s")


def test_criterion_2_dual_quotient_oracle():
    started = time.perf_counter()
    ok = True
    for q, homs, expected in CASES2:
        res = generated_subgroup(q, homs, method="coideal", tol=TOL)
        if res.dim != expected:
            ok = False
            break
    elapsed = time.perf_counter() - started
    report(2, "generated subgroup over group algebras matches |G / (S1 cap S2)| "
              f"({len(CASES2)} pairs)",
           ok and elapsed < 5.0, f"{elapsed:.2f}s")


def test_criterion_3_method_agreement():
    instances = [(q, hom) for q, hom, _, _ in CASES1]
    for q, homs, _ in CASES2:
        big = homs[0][0]
        from qsym.algebras import direct_sum, StarHom
        target = direct_sum(homs[0][1].alg, homs[1][1].alg)
        mat = np.vstack([homs[0][0].matrix, homs[1][0].matrix])
        instances.append((q, StarHom(q.alg, target, mat)))
    instances.extend((q, hom) for q, hom, _ in random_group_hom_instances(50, seed=2024))
    ok = True
    worst_span = 0.0
    for q, hom in instances:
        rk = hopf_image(q, hom, method="kernel", tol=TOL)
        rc = hopf_image(q, hom, method="coideal", tol=TOL)
        span_res = mutual_projection_residual(rk.ideal, rc.ideal)
        worst_span = max(worst_span, span_res)
        if rk.dim != rc.dim or span_res > 1e-8:
            ok = False
            break
    report(3, f"kernel and coideal algorithms agree on {len(instances)} cases",
           ok, f"worst span residual {worst_span:.2e}")


def test_criterion_4_inner_faithfulness_agreement():
    started = time.perf_counter()
    instances = random_group_hom_instances(20, seed=412)
    ok = True
    worst_idem = 0.0
    for q, hom, oracle in instances:
        phi_b = trace_state(hom.target)
        omega = Functional(phi_b.coeffs @ hom.matrix)
        limit = cesaro_mean(q, omega, tol=1e-7, mode="exact")
        idem = float(np.linalg.norm(convolve(q, limit, limit).coeffs - limit.coeffs))
        worst_idem = max(worst_idem, idem)
        cesaro_flag = float(np.linalg.norm(limit.coeffs - q.haar.coeffs)) <= 1e-7
        dim_flag = hopf_image(q, hom, method="coideal", tol=TOL).dim == q.dim
        if idem > 1e-7 or cesaro_flag != dim_flag or dim_flag != (oracle == q.dim):
            ok = False
            break
    elapsed = time.perf_counter() - started
    report(4, "Cesaro and dimension criteria for inner faithfulness agree "
              f"on {len(instances)} seeded instances",
           ok and elapsed < 10.0,
           f"worst idempotency {worst_idem:.2e}, {elapsed:.2f}s")


def _magic_families_up_to_5():
    fams = []
    for n in range(1, 6):
        for images in itertools.permutations(range(n)):
            fams.append(permutation_family(groups.Permutation(images)))
    rng = np.random.default_rng(55)
    for _ in range(10):
        u = complete(free_pair_rep(*two_projection_pair(rng.uniform(0.05, 0.95))))
        fams.append(family_from_magic_unitary(u.p))
    for t in (0.2, 0.5, 0.8):
        s = np.sqrt(t * (1 - t))
        p = np.array([[t, s], [s, 1 - t]], dtype=complex)
        blocks = np.zeros((2, 2, 2, 2), dtype=complex)
        blocks[0, 0] = blocks[1, 1] = p
        blocks[0, 1] = blocks[1, 0] = np.eye(2) - p
        fams.append(family_from_magic_unitary(blocks))
    return fams


def test_criterion_5_relations_on_magic_families_and_composites():
    fams = _magic_families_up_to_5()
    ok = True
    worst = 0.0
    for fam in fams:
        rep = check_family(fam, TOL)
        worst = max(worst, rep.state_preserving, rep.multiplicative,
                    rep.unital, rep.star_map, rep.unitary)
        if not rep.all_ok(TOL, slack=1.0) or not rep.podles_full:
            ok = False
            break
    # 100 seeded composites of invertibility-passing families stay invertible
    rng = np.random.default_rng(99)
    pool4 = [f for f in fams if f.n == 4]
    composites_checked = 0
    if ok:
        for _ in range(100):
            f = pool4[int(rng.integers(0, len(pool4)))]
            g = pool4[int(rng.integers(0, len(pool4)))]
            both = compose(f, g)
            composites_checked += 1
            if not check_podles(both, TOL)[1]:
                ok = False
                break
            if check_state_preserving(both) > 10 * TOL.eps_eq:
                ok = False
                break
    report(5, f"relation checks <= 1e-9 on {len(fams)} magic-unitary families; "
              f"{composites_checked} composites stay invertible and state-preserving",
           ok, f"worst residual {worst:.2e}")


def test_criterion_6_classical_completion_generates_s4():
    started = time.perf_counter()
    perms = [magic_to_permutation(complete(classical_rep(seq, 4)))
             for seq in enumerate_sequences(2, 4)]
    distinct = len(set(p.images for p in perms)) == 6
    order = groups.closure(perms).order
    elapsed = time.perf_counter() - started
    report(6, "six completed (2,4) sequences are distinct and generate a "
              "group of order exactly 24",
           distinct and order == 24 and elapsed < 1.0,
           f"order {order}, {elapsed:.2f}s")


def test_criterion_7_quantum_completions():
    rng = np.random.default_rng(777)
    ok = True
    worst_magic = 0.0
    worst_ref = 0.0
    for _ in range(50):
        t = rng.uniform(0.0, 1.0)
        p1, p2, q1, q2 = two_projection_pair(t)
        u = complete(free_pair_rep(p1, p2, q1, q2), TOL)
        magic = validate_magic(u)
        worst_magic = max(worst_magic, magic.worst)
        ref_dev = float(np.max(np.abs(u.p - reference_completion(p1, p2, q1, q2))))
        worst_ref = max(worst_ref, ref_dev)
        fam = family_from_magic_unitary(u.p)
        rep = check_family(fam, TOL)
        if magic.worst > 1e-9 or ref_dev > 1e-12 or not rep.all_ok(TOL, slack=10.0):
            ok = False
            break
    report(7, "50 seeded free-pair completions: magic invariants <= 1e-9, "
              "reference matrix match <= 1e-12, induced family passes all checks",
           ok, f"worst magic {worst_magic:.2e}, worst match {worst_ref:.2e}")


def test_criterion_8_dual_description_cross_check():
    ok = True
    for q, homs, expected in CASES2:
        gen_dim = generated_subgroup(q, homs, method="coideal", tol=TOL).dim
        dual_dim = dual_generated_dim(q, homs, TOL)
        if gen_dim != dual_dim or gen_dim != expected:
            ok = False
            break
    report(8, f"dual-side generated dimension equals quotient dimension on "
              f"all {len(CASES2)} dual-oracle pairs", ok)


def test_criterion_9_structure_data():
    rng = np.random.default_rng(31415)
    algebras = [from_blocks([1] * n) for n in range(1, 5)]
    algebras.append(from_blocks([2]))
    algebras.append(from_blocks([1, 2]))
    ok = True
    conds = []
    for alg in algebras:
        for _ in range(3):
            phi = random_faithful_state(alg, rng)
            onb = orthonormalize(alg, phi, TOL)
            g = gram_matrix(alg, phi)
            orth = np.linalg.norm(onb.change.conj().T @ g @ onb.change - np.eye(alg.dim))
            unit_res = np.linalg.norm(onb.change @ onb.lam - alg.unit)
            cond = float(np.linalg.cond(onb.t_mat))
            conds.append(cond)
            if orth > 1e-10 or unit_res > 1e-10 or not np.isfinite(cond):
                ok = False
                break
    report(9, "orthonormalization residual <= 1e-10, unit reconstructed, "
              "involution matrix invertible on seeded states",
           ok, f"max involution condition number {max(conds):.3e}")
