"""The quantum subgroup generated by a family of quantum subgroups.

Given surjections pi_i : C(G) -> C(H_i) onto quantum subgroups, the
generated subgroup is the Hopf image of x -> (+) pi_i(x).  Classically this
is the subgroup generated by the H_i; on group-algebra duals it is governed
by intersections of normal subgroups.  Both pictures are checked against the
brute-force group oracle, and against the dual description (the smallest
coproduct-invariant subalgebra of the dual containing the dualized images).
"""

from qsym import groups
from qsym.hopfimage import dual_generated_dim, generated_subgroup
from qsym.quantumgroups import (
    cqg_function_algebra, cqg_group_algebra, function_restriction_hom,
    group_algebra_quotient_hom,
)

print("== two reflections generate S3 ==")
s3 = groups.symmetric_group(3)
q = cqg_function_algebra(s3)
t1, t2 = [a for a in range(6) if s3.element_order(a) == 2][:2]
sub1 = function_restriction_hom(q, s3, groups.subgroup_generated(s3, [t1]))
sub2 = function_restriction_hom(q, s3, groups.subgroup_generated(s3, [t2]))
res = generated_subgroup(q, [sub1, sub2], method="both")
oracle = len(groups.subgroup_generated(s3, [t1, t2]))
print(f"  generated dim = {res.dim}, oracle |<H1, H2>| = {oracle}")
print(f"  dual description dim = {dual_generated_dim(q, [sub1, sub2])}")
print(f"  each H_i re-embeds: theta maps surjective = {len(res.thetas)} checks passed")

print("\n== one subgroup alone stays itself ==")
res_single = generated_subgroup(q, [sub1, sub1])
print(f"  duplicated input collapses: dim = {res_single.dim} "
      f"(= dim C(H1) = {sub1[1].dim})")

print("\n== duals: normal subgroups and intersections ==")
for gamma, name in [(groups.cyclic_group(4), "Z4"),
                    (groups.klein_four(), "Z2 x Z2"),
                    (groups.symmetric_group(3), "S3")]:
    qg_ = cqg_group_algebra(gamma)
    normals = groups.normal_subgroups(gamma)
    print(f"  group algebra of {name}: {len(normals)} normal subgroups")
    for s1 in normals:
        for s2 in normals:
            if sorted(s1) > sorted(s2):
                continue
            h1 = group_algebra_quotient_hom(qg_, gamma, s1)
            h2 = group_algebra_quotient_hom(qg_, gamma, s2)
            got = generated_subgroup(qg_, [h1, h2]).dim
            expected = gamma.order // len(groups.intersect_subgroups(s1, s2))
            marker = "ok" if got == expected else "MISMATCH"
            print(f"    |S1|={len(s1)}, |S2|={len(s2)}: generated dim {got}, "
                  f"|G/(S1 cap S2)| = {expected}  [{marker}]")
