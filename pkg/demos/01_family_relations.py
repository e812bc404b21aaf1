"""Quantum families of maps on a finite quantum space, and their checks.

A family on C^n indexed by an algebra B is a coefficient matrix b over B
with beta(e_j) = sum_i e_i (x) b[i,j].  We build a few families (a single
classical permutation, a genuinely quantum magic unitary built from a free
pair of projections) and run the five checks: state preservation,
multiplicativity, unitality, *-compatibility, and unitarity of the block
matrix, plus the invertibility (Podles) span test.
"""

import numpy as np

from qsym import groups
from qsym.families import (
    check_family, check_podles, compose, family_from_magic_unitary, iterate,
    permutation_family,
)
from qsym.increasing import complete, free_pair_rep, two_projection_pair


def show(title, report):
    print(f"\n{title}")
    print(f"  state preservation residual : {report.state_preserving:.2e}")
    print(f"  multiplicativity residual   : {report.multiplicative:.2e}")
    print(f"  unitality residual          : {report.unital:.2e}")
    print(f"  *-map residual              : {report.star_map:.2e}")
    print(f"  unitarity residual          : {report.unitary:.2e}")
    print(f"  invertibility span rank     : {report.podles_rank} "
          f"(full: {report.podles_full})")


print("== a single classical permutation as a quantum family ==")
sigma = groups.Permutation((1, 2, 0, 3))
fam_sigma = permutation_family(sigma)
show("family of the 4-point permutation (1 2 3):", check_family(fam_sigma))

print("\n== a genuinely quantum family: free-pair magic unitary ==")
# two projections at angle parameter t generate a noncommutative index algebra
t = 1 / 3
u = complete(free_pair_rep(*two_projection_pair(t)))
fam_q = family_from_magic_unitary(u.p)
show(f"free-pair family at t = {t:.3f} (index algebra M_2):", check_family(fam_q))

print("\n== composition ==")
tau = groups.Permutation((0, 2, 1, 3))
fam_tau = permutation_family(tau)
composite = compose(fam_sigma, fam_tau)
print("composite of sigma and tau supports the permutation sigma o tau:",
      np.allclose(composite.coeffs[:, :, 0], (sigma * tau).matrix()))

mixed = compose(fam_q, fam_sigma)
print("quantum (x) classical composite stays invertible:",
      check_podles(mixed)[1])

powers = iterate(fam_sigma, sigma.order())
print(f"iterating the permutation family {sigma.order()} times returns the "
      "identity family:", np.allclose(powers.coeffs.reshape(4, 4), np.eye(4)))

print("\n== a family that fails the checks ==")
broken = fam_q.coeffs.copy()
broken[0, 0] *= 2.0
from qsym.families import QuantumFamily  # noqa: E402
bad = QuantumFamily(fam_q.source, fam_q.phi, fam_q.onb, fam_q.index, broken)
show("same family with one coefficient doubled:", check_family(bad))
