"""Retarded Green's function G(omega) = <psi0| (H - omega - i chi)^{-1} |psi0>
reconstructed from a low-dimensional quadrature rule.

Each quadrature node contributes a Lorentzian of width chi centered at its
reconstructed energy; with enough nodes the curve overlays the exact one
built from the full spectrum.
"""

import numpy as np

import szegoq as sq


def greens_on_grid(energies, weights, omegas, chi):
    return weights @ (1.0 / (energies[:, None] - omegas[None, :] - 1j * chi))


def main():
    chi = 0.1
    ham = sq.build_heisenberg(rows=2, cols=3, h=1.0, j1=1.0, j2=1.0, j3=2.0)
    spec = sq.spectral_decompose(ham)
    psi0 = sq.antiferromagnet_state(6)

    probs = np.abs(spec.eigenvectors.conj().T @ psi0) ** 2
    energies = sq.node_to_energy(spec.eigenphases(), spec.dt)
    omegas = np.linspace(energies[probs > 1e-12].min() - 2,
                         energies[probs > 1e-12].max() + 2, 801)
    exact = greens_on_grid(energies, probs, omegas, chi)

    m = sq.moments(spec, psi0, d=12)
    print(f"{'d':>3} {'l1 error':>12}   max |Im G| location")
    for d in (2, 4, 6, 8, 10):
        rule = sq.build_rule(m, d)
        approx = greens_on_grid(rule.energies(), rule.weights, omegas, chi)
        l1 = np.trapezoid(np.abs(approx - exact), omegas)
        peak = omegas[np.argmax(-approx.imag)]
        print(f"{d:>3} {l1:>12.4e}   omega = {peak:+.3f}")

    print("\nquadrature node energies at d = 10:")
    rule = sq.build_rule(m, 10)
    for e, w in zip(rule.energies(), rule.weights):
        print(f"  E = {e:+8.4f}  weight = {w:.4f}")


if __name__ == "__main__":
    main()
