"""
The quintic family, step by step
=================================

Reduce omega_5 for x0^5 + ... + x4^5 - 5 psi x0 x1 x2 x3 x4, build the
Picard-Fuchs operator, and read off the first few instanton numbers.
"""

from pfmirror import BUILTIN_FAMILIES
from pfmirror.griffiths import assemble_pf, check_certificate, reduce_omega5
from pfmirror.multipoly import jacobian_generators
from pfmirror.mirror import mirror_data, q_expansion, extract_n

spec = BUILTIN_FAMILIES[5]

# Groebner basis of the Jacobian ideal, then one split per pole order
der = reduce_omega5(spec)
print("Jacobian ideal basis has", len(der.basis), "elements")
gens = jacobian_generators(der.family)
for step in der.steps:
    print(f"pole order {step.pole_order}: eps = {step.decomposition.epsilon.to_str('psi')}, "
          f"certificate ok = {check_certificate(step, gens)}")

# the same coefficients in z = psi^-5
for i, e in enumerate(der.epsilons, 1):
    print(f"eps{i}(z) = {e.to_str('z')}")

# operator in theta = z d/dz
pf = assemble_pf(spec, der.epsilons)
for j, b in enumerate(pf.B):
    print(f"B{j} = {b.to_str('z')}")
print("singular point at z =", pf.lam)

# regular period, mirror map, Yukawa coupling in q
data = mirror_data(pf, order=16)
print("f0 =", ", ".join(str(data.f0[m]) for m in range(4)), "...")
y = q_expansion(spec, pf, depth=6, order=16, data=data)
print("a_j =", [str(a) for a in y.a])
print("n_j =", extract_n(y.a))
