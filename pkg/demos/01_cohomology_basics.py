"""First steps: build small groupoids with involution and compute their
exact cohomology for several coefficient groups.

Run:  python3 demos/01_cohomology_basics.py
"""

from realcech import standard
from realcech.cochains import cohomology, invariant_sections
from realcech.coefficients import make_standard

# Z/2 as a one-object groupoid with the identity involution, and the
# finite circle stand-in mu(4) with conjugation s -> -s.
z2 = standard.cyclic_group(2)
mu4 = make_standard("mu(4)_conj")

print("Z/2 with mu(4)_conj coefficients:")
for n in range(4):
    print(f"  HR^{n} =", cohomology(z2, mu4, n))

# The degree-0 group is just the invariant sections, computed here by an
# independent direct solve on the full function space.
sections = invariant_sections(z2, mu4)
print("  invariant sections:", sections, "(same as HR^0)")

# A groupoid whose involution moves things: Z/4 with inversion g -> -g.
z4i = standard.cyclic_group(4, "inversion")
zsign = make_standard("Z_sign")
print("\nZ/4 with inversion involution, Z_sign coefficients:")
for n in range(4):
    print(f"  HR^{n} =", cohomology(z4i, zsign, n))

# With a trivial involution everywhere, the theory collapses onto
# ordinary cohomology with coefficients in the fixed subgroup.
print("\nComparison with the fixed subgroup (trivial involutions):")
fixed, _ = mu4.fixed_part()
print("  fixed subgroup of mu(4)_conj:", fixed.group_key(), "= Z/2")
for n in range(3):
    a = cohomology(z2, mu4, n).group_key()
    b = cohomology(z2, fixed, n).group_key()
    print(f"  degree {n}: HR = {a}, ordinary with fixed coefficients = {b},",
          "agree" if a == b else "DISAGREE")

# Rational coefficients of signature (p, q) route through the
# representation machinery; for a finite groupoid everything above
# degree 0 dies (see demo 04).
q11 = make_standard("Q(1,1)")
print("\nZ/3 with Q(1,1):", [str(cohomology(standard.cyclic_group(3), q11, n))
                             for n in range(3)])
