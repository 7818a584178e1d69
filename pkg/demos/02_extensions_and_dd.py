"""Graded central extensions: building a groupoid from a 2-cocycle,
extracting the cocycle back, Baer sums, and Dixmier-Douady classes.

Run:  python3 demos/02_extensions_and_dd.py
"""

from realcech import standard
from realcech.cochains import RealComplex
from realcech.coefficients import make_standard
from realcech import extensions as ext

z2 = standard.cyclic_group(2)
mu2 = make_standard("mu(2)_conj")
cx = RealComplex(z2, mu2)

# The nontrivial normalized 2-cocycle of Z/2 with Z/2 coefficients:
# omega(1,1) = 1, zero elsewhere.
omega = cx.from_values(2, lambda t: (1,) if t == (1, 1) else (0,))
E = ext.build_extension(z2, mu2, omega)
G = E.as_groupoid()
print("extension of Z/2 by mu(2) with omega(1,1)=1:")
print("  total groupoid:", G, "- valid:", G.validate() == [])

orders = []
for g in range(G.n_arrows):
    k, o = g, 1
    while k != G.unit[0]:
        k, o = int(G.comp[k, g]), o + 1
    orders.append(o)
print("  element orders:", sorted(orders), "=> the group is Z/4")

back = ext.extract_cocycle(E)
print("  extract(build(omega)) == omega exactly:",
      bool(all((back - omega).vector == 0)))

# Gradings are Z/2-valued 1-cocycles constant on involution orbits.
zcx = RealComplex(z2, ext.Z2)
delta = zcx.from_values(1, lambda t: (t[0],))

# All four graded twists of (Z/2, mu(2)) and their Dixmier-Douady pairs.
twists = []
for db in (0, 1):
    for wb in (0, 1):
        d = zcx.from_values(1, lambda t, b=db: ((b * t[0]) % 2,))
        w = cx.from_values(2, lambda t, b=wb: (b,) if t == (1, 1) else (0,))
        twists.append(ext.GradedTwist(z2, mu2, w, d))
print("\nDixmier-Douady classes of the four graded twists:")
for t in twists:
    dc, wc, _, _ = ext.dd_class(t)
    print("  delta class", dc, " omega class", wc)

# The sum of classes is semidirect: the grading classes add, and the
# cocycle classes pick up the cup product of the gradings.
a, b = twists[2], twists[2]   # the purely-graded twist, squared
s = ext.baer_sum(a, b)
print("\n(grading twist) + (grading twist):")
print("  dd of the Baer sum:", ext.dd_class(s)[:2])
print("  semidirect prediction:", ext.dd_sum_predicted(a, b))

h2, cup_class, _ = ext.cup(z2, make_standard("mu(4)_conj"), delta, delta)
print("  cup square of the generator in HR^2(mu(4)):", cup_class,
      "inside", h2)
