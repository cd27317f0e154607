"""Monodromy matrices and Floquet multipliers.

The variational system along the cycle is integrated jointly with the
cycle state over exactly one period, from the identity.  An attracting
cycle shows the expected structure: one multiplier at 1 (the perturbation
along the orbit) and the rest strictly inside the unit circle.
"""
import numpy as np

from floqnet import find_limit_cycle, lf_decomposition, monodromy, \
    repressilator_model, vdp_model

for model in (vdp_model(1.0), repressilator_model()):
    lc = find_limit_cycle(model)
    mon = monodromy(model, lc)
    print(f"= {model.name}: T = {lc.period:.6f}")
    print("  multipliers (descending modulus):")
    for mu, rho in zip(mon.multipliers, mon.exponents):
        print(f"    mu = {mu.real:+.6e} {mu.imag:+.3e}i   "
              f"|mu| = {abs(mu):.3e}   exponent = {rho.real:+.4f}"
              f" {rho.imag:+.4f}i")
    print(f"  det phi(T,0) = {mon.det:.6e}   "
          f"product of multipliers = {np.prod(mon.multipliers).real:.6e}")
    print()

# The Lyapunov-Floquet factorization turns the time-periodic variational
# system into a constant one: expm(R*T) reproduces the monodromy, and the
# coordinate change P(t) is T-periodic with P(0) = I.
vdp = vdp_model(1.0)
lc = find_limit_cycle(vdp)
lf = lf_decomposition(vdp, lc)
print("= Lyapunov-Floquet factorization of the Van der Pol cycle")
print(f"  R =\n{np.array_str(lf.R.real, precision=6)}")
print(f"  eigenvalues of R: {np.round(np.linalg.eigvals(lf.R), 6)}")
print(f"  periodicity residual |P(T) - P(0)| / |P(0)| = "
      f"{lf.periodicity_residual:.2e}")
