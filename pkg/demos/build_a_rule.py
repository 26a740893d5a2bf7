"""Walk through the quadrature pipeline on a two-site chain, small enough
to check every number by hand.

The chain H = Z0 + Z1 + X0X1 + Y0Y1 + 2 Z0Z1 has spectrum {-4, 0, 0, 4}
and ||H|| = 4, so dt = pi/4.  Started from |10>, half the probability sits
at E = 0 and a quarter at each of E = +-4.  At dt = pi/4 the +-4 levels
both map to the node z = -1 (the branch point), so a 2-node rule resolves
the state exactly: nodes {+1, -1}, weights {1/2, 1/2}.
"""

import numpy as np

import szegoq as sq


def main():
    ham = sq.build_heisenberg(rows=1, cols=2, h=1.0, j1=1.0, j2=1.0, j3=2.0)
    spec = sq.spectral_decompose(ham)
    print(f"spectrum: {np.round(spec.energies, 12)}")
    print(f"||H|| = {spec.h_norm}, dt = {spec.dt:.6f}")

    psi0 = sq.basis_state("10", 2)
    m = sq.moments(spec, psi0, d=4)
    print(f"moments X_0..X_4: {np.round(m.values, 12)}")

    rule = sq.build_rule(m, d=2)
    print(f"nodes:   {np.round(rule.nodes, 12)}")
    print(f"weights: {np.round(rule.weights, 12)}")
    print(f"raw weight sum: {rule.raw_weight_sum:.15f} (shift {rule.shift})")

    # the rule reproduces every moment it was built from
    for j in range(-1, 2):
        reproduced = np.sum(rule.weights * rule.nodes**j if j >= 0
                            else rule.weights * np.conj(rule.nodes) ** (-j))
        print(f"sum_k w_k node_k^{j:+d} = {reproduced:.12f}  (X_{j} = {m.moment(j):.12f})")

    # and integrates any Laurent polynomial of degree <= 1 exactly
    f = sq.random_laurent(1, seed=0)
    exact = sq.exact_functional(spec, psi0, psi0, f)
    approx = sq.apply_rule(rule, f)
    print(f"random degree-1 Laurent: rule {approx:.12f} vs exact {exact:.12f}")


if __name__ == "__main__":
    main()
