"""
Ideal membership with certificates
==================================

Divide a polynomial by a Groebner basis and check the cofactors against the
original generators, not the basis elements.
"""

from fractions import Fraction

from pfmirror.groebner import buchberger, divide_with_cofactors, normal_form
from pfmirror.multipoly import MultiPoly

x = [MultiPoly.variable(j) for j in range(5)]

# a small ideal whose basis has one more element than its generating set
gens = [x[0] ** 2 - x[1], x[0] * x[1]]
gb = buchberger(gens)
print(gb.dump())

p = x[1] ** 2 * x[2] + x[0] ** 3 - x[0] * x[1] + Fraction(1, 2) * x[3]
rem, cof = divide_with_cofactors(p, gb)
print("remainder:", rem.to_str())

# p = sum cof_i * gens_i + rem
check = rem
for c, g in zip(cof, gens):
    check = check + c * g
print("certificate holds:", check == p)

# membership: x1^2 is in the ideal although neither generator divides it
print("NF(x1^2) =", normal_form(x[1] ** 2, gb).to_str() or "0")
