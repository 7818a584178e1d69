"""Long exact sequences in real cohomology from short exact sequences of
coefficient groups.

The connecting homomorphism uses the involution-equivariant lift rule:
orbit representatives are lifted through the surjection, partner values
follow by the involution, and values at fixed tuples are lifted inside
the preimage of the fixed subgroup.  If that preimage misses the fixed
subgroup of the middle group, the obstruction is reported explicitly
rather than silently producing garbage.  Independence of the chosen lift
(up to coboundary) is enforced by test, not assumed.
"""

import numpy as np

from . import exact
from .cochains import RealComplex


class SequenceError(ValueError):
    pass


class CoefficientSES:
    """0 -> S' -i-> S -p-> S'' -> 0 with involution-equivariant maps.

    i and p are integer matrices on the chosen generators; validation
    checks equivariance, injectivity, surjectivity, and im i = ker p as
    subgroups."""

    def __init__(self, s_prime, s_mid, s_dprime, i, p):
        self.s_prime = s_prime
        self.s_mid = s_mid
        self.s_dprime = s_dprime
        self.i = exact.as_int_matrix(i)
        self.p = exact.as_int_matrix(p)
        if self.i.shape != (s_mid.ngens, s_prime.ngens):
            raise SequenceError("i has wrong shape")
        if self.p.shape != (s_dprime.ngens, s_mid.ngens):
            raise SequenceError("p has wrong shape")
        bad = self.validate()
        if bad:
            raise SequenceError("; ".join(bad))

    def validate(self):
        bad = []
        sp, sm, sd = self.s_prime, self.s_mid, self.s_dprime
        # maps must send relations into relations (well-defined group homs)
        for mat, src, dst, name in ((self.i, sp, sm, "i"), (self.p, sm, sd, "p")):
            solver = exact.IntSolver(dst.relations()) if dst.invariant_factors else None
            R = src.relations()
            for j in range(R.shape[1]):
                img = mat @ R[:, j]
                if solver is None:
                    if any(v != 0 for v in img):
                        bad.append(f"{name} is not well defined")
                elif solver.solve(img) is None:
                    bad.append(f"{name} is not well defined")
        # equivariance
        for mat, src, dst, name in ((self.i, sp, sm, "i"), (self.p, sm, sd, "p")):
            lhs = mat @ src.tau
            rhs = dst.tau @ mat
            diff = lhs - rhs
            solver = exact.IntSolver(dst.relations()) if dst.invariant_factors else None
            for j in range(diff.shape[1]):
                col = diff[:, j]
                if solver is None:
                    if any(v != 0 for v in col):
                        bad.append(f"{name} is not involution-equivariant")
                elif solver.solve(col) is None:
                    bad.append(f"{name} is not involution-equivariant")
        # exactness on finite groups by enumeration (all our uses are finite)
        if sp.is_finite() and sm.is_finite() and sd.is_finite():
            img_i = {sm.reduce_tuple(tuple(self.i @ np.array(e, dtype=object)))
                     for e in sp.elements()}
            if len(img_i) != sp.order():
                bad.append("i is not injective")
            ker_p = {e for e in sm.elements()
                     if sd.reduce_tuple(tuple(self.p @ np.array(e, dtype=object)))
                     == sd.zero_tuple()}
            if img_i != ker_p:
                bad.append("im i != ker p")
            img_p = {sd.reduce_tuple(tuple(self.p @ np.array(e, dtype=object)))
                     for e in sm.elements()}
            if len(img_p) != sd.order():
                bad.append("p is not surjective")
        return bad

    def apply_i(self, e):
        return self.s_mid.reduce_tuple(tuple(self.i @ np.array(e, dtype=object)))

    def apply_p(self, e):
        return self.s_dprime.reduce_tuple(tuple(self.p @ np.array(e, dtype=object)))


def induced_cochain_map(groupoid, s_a, s_b, f, n):
    """Matrix of the coefficient map f: S_a -> S_b on degree-n real
    cochain coordinates (orbit structure is identical on both sides)."""
    cxa = RealComplex(groupoid, s_a)
    cxb = RealComplex(groupoid, s_b)
    ba, bb = cxa.basis(n), cxb.basis(n)
    assert len(ba.orbits) == len(bb.orbits)
    F = exact.zeros(bb.total, ba.total)
    R_b = s_b.relations()
    fixed_solver = None
    if bb.sb.k_fixed:
        aug = np.concatenate([bb.sb.embed, R_b], axis=1) \
            if R_b.shape[1] else bb.sb.embed
        fixed_solver = exact.IntSolver(aug)
    for oid, (oa, ob) in enumerate(zip(ba.orbits, bb.orbits)):
        assert oa.kind == ob.kind and oa.rep == ob.rep
        off_a, off_b = ba.offsets[oid], bb.offsets[oid]
        if oa.kind == "free":
            F[off_b:off_b + bb.sb.k, off_a:off_a + ba.sb.k] = f
        else:
            X = f @ ba.sb.embed  # S_b-values of the a-side fixed generators
            for c in range(X.shape[1]):
                if bb.sb.k_fixed == 0:
                    # target fixed subgroup trivial: the value must vanish
                    col = s_b.reduce_tuple(tuple(X[:, c]))
                    if any(v != 0 for v in col):
                        raise SequenceError(
                            "map does not respect the fixed subgroups")
                    continue
                sol = fixed_solver.solve(X[:, c])
                if sol is None:
                    raise SequenceError(
                        "map does not respect the fixed subgroups")
                for r in range(bb.sb.k_fixed):
                    F[off_b + r, off_a + c] = sol[r]
    return F, cxa, cxb


class ConnectingMap:
    """The snake map HR^n(S'') -> HR^(n+1)(S') for one groupoid degree."""

    def __init__(self, ses, groupoid, n):
        self.ses = ses
        self.groupoid = groupoid
        self.n = n
        self.cx_mid = RealComplex(groupoid, ses.s_mid)
        self.cx_dp = RealComplex(groupoid, ses.s_dprime)
        self.cx_p = RealComplex(groupoid, ses.s_prime)
        self._build_lift()
        self._build_corestrict()

    def _build_lift(self):
        """Coordinate lift CR^n(S'') -> CR^n(S) through p, orbit-wise and
        involution-equivariantly."""
        ses = self.ses
        bd = self.cx_dp.basis(self.n)
        bm = self.cx_mid.basis(self.n)
        R_m = ses.s_mid.relations()
        aug_free = np.concatenate([ses.p, ses.s_dprime.relations()], axis=1) \
            if ses.s_dprime.relations().shape[1] else ses.p
        free_solver = exact.IntSolver(aug_free)
        # fixed lift: find w in fixed(S) with p(embed_m w) = embed_d u
        Em = bm.sb.embed
        Ed = bd.sb.embed
        if bm.sb.k_fixed:
            mat = ses.p @ Em
            aug = np.concatenate([mat, ses.s_dprime.relations()], axis=1) \
                if ses.s_dprime.relations().shape[1] else mat
            fixed_solver = exact.IntSolver(aug)
        else:
            fixed_solver = None
        L = exact.zeros(bm.total, bd.total)
        for oid, (od, om) in enumerate(zip(bd.orbits, bm.orbits)):
            off_d, off_m = bd.offsets[oid], bm.offsets[oid]
            if od.kind == "free":
                for c in range(bd.sb.k):
                    sol = free_solver.solve(exact.eye(bd.sb.k)[:, c])
                    if sol is None:
                        raise SequenceError("p is not surjective on S''")
                    for r in range(bm.sb.k):
                        L[off_m + r, off_d + c] = sol[r]
            else:
                for c in range(bd.sb.k_fixed):
                    target = Ed[:, c]
                    if fixed_solver is None:
                        col = self.ses.s_dprime.reduce_tuple(tuple(target))
                        if any(v != 0 for v in col):
                            raise SequenceError(
                                "equivariant lift obstructed: fixed values of "
                                "S'' have no fixed preimage in S")
                        continue
                    sol = fixed_solver.solve(target)
                    if sol is None:
                        raise SequenceError(
                            "equivariant lift obstructed: fixed values of "
                            "S'' have no fixed preimage in S")
                    for r in range(bm.sb.k_fixed):
                        L[off_m + r, off_d + c] = sol[r]
        self.lift_matrix = L

    def _build_corestrict(self):
        """Solvers for writing S-valued cochains with p-image zero as
        i-images in CR^(n+1)(S')."""
        ses = self.ses
        R_m = ses.s_mid.relations()
        aug = np.concatenate([ses.i, R_m], axis=1) if R_m.shape[1] else ses.i
        self._free_co = exact.IntSolver(aug)
        bm1 = self.cx_mid.basis(self.n + 1)
        bp1 = self.cx_p.basis(self.n + 1)
        self._bm1, self._bp1 = bm1, bp1
        if bp1.sb.k_fixed:
            mat = ses.i @ bp1.sb.embed
            aug2 = np.concatenate([mat, R_m], axis=1) if R_m.shape[1] else mat
            self._fixed_co = exact.IntSolver(aug2)
        else:
            self._fixed_co = None

    def apply_to_vector(self, vec_dp):
        """The connecting value on a degree-n cocycle vector over S''."""
        lifted = self.lift_matrix @ np.array(list(vec_dp), dtype=object)
        z = self.cx_mid.differential_matrix(self.n) @ lifted
        return self.corestrict(z)

    def corestrict(self, z):
        """Write an S-valued cochain vector with zero p-image as the
        i-image of an S'-valued cochain vector."""
        bm1, bp1 = self._bm1, self._bp1
        out = exact.zeros(bp1.total, 1)[:, 0]
        for oid, (om, op) in enumerate(zip(bm1.orbits, bp1.orbits)):
            off_m, off_p = bm1.offsets[oid], bp1.offsets[oid]
            if om.kind == "free":
                val = z[off_m:off_m + bm1.sb.k]
                sol = self._free_co.solve(val)
                if sol is None:
                    raise SequenceError("snake value is not in the image of i")
                for r in range(bp1.sb.k):
                    out[off_p + r] = sol[r]
            else:
                u = z[off_m:off_m + bm1.sb.k_fixed]
                val = bm1.sb.embed @ u if bm1.sb.k_fixed else \
                    exact.zeros(self.ses.s_mid.ngens, 1)[:, 0]
                if self._fixed_co is None:
                    col = self.ses.s_mid.reduce_tuple(tuple(val))
                    # must be i(0) = 0 modulo relations after corestriction
                    sol0 = self._free_co.solve(np.array(list(val), dtype=object))
                    if sol0 is None:
                        raise SequenceError("snake value is not in the image of i")
                    continue
                sol = self._fixed_co.solve(np.array(list(val), dtype=object))
                if sol is None:
                    raise SequenceError(
                        "snake value escapes the fixed part of S'")
                for r in range(bp1.sb.k_fixed):
                    out[off_p + r] = sol[r]
        return out

    def apply_to_class(self, h_dp, h_p1, coords):
        vec = h_dp.presentation.lift(coords)
        out = self.apply_to_vector(vec)
        return h_p1.presentation.class_coords(out)


def long_exact_sequence_check(ses, groupoid, through_degree=2):
    """Exactness of the 3*(d+1)-term sequence through the given degree,
    checked slot by slot by finite enumeration.  Returns a report dict;
    report['exact'] summarizes.  All cohomology groups must be finite."""
    maps_i = {}
    maps_p = {}
    H_p, H_m, H_d = {}, {}, {}
    for n in range(through_degree + 1):
        Fi, cxp, cxm = induced_cochain_map(groupoid, ses.s_prime, ses.s_mid,
                                           ses.i, n)
        Fp, _, cxd = induced_cochain_map(groupoid, ses.s_mid, ses.s_dprime,
                                         ses.p, n)
        maps_i[n] = Fi
        maps_p[n] = Fp
        H_p[n] = cxp.cohomology(n)
        H_m[n] = cxm.cohomology(n)
        H_d[n] = cxd.cohomology(n)
    conn = {n: ConnectingMap(ses, groupoid, n)
            for n in range(through_degree)}

    def pushed(h_from, h_to, mat, coords):
        vec = h_from.presentation.lift(coords)
        return h_to.presentation.class_coords(mat @ np.array(list(vec), dtype=object))

    report = {"slots": [], "exact": True}

    def check_slot(name, incoming, outgoing):
        img = set(incoming())
        ker = set(outgoing())
        ok = img == ker
        report["slots"].append({"slot": name, "exact": ok,
                                "image_size": len(img), "kernel_size": len(ker)})
        if not ok:
            report["exact"] = False

    # injectivity of the first map
    first_ker = [c for c in H_p[0].all_classes()
                 if all(v == 0 for v in pushed(H_p[0], H_m[0], maps_i[0], c))]
    ok0 = all(all(v == 0 for v in c) for c in first_ker)
    report["slots"].append({"slot": "HR^0(S') injective", "exact": ok0})
    if not ok0:
        report["exact"] = False

    for n in range(through_degree + 1):
        # slot HR^n(S): im i = ker p
        check_slot(
            f"HR^{n}(S)",
            lambda n=n: (pushed(H_p[n], H_m[n], maps_i[n], c)
                         for c in H_p[n].all_classes()),
            lambda n=n: (c for c in H_m[n].all_classes()
                         if all(v == 0 for v in
                                pushed(H_m[n], H_d[n], maps_p[n], c))))
        # slot HR^n(S''): im p = ker connecting
        if n < through_degree:
            check_slot(
                f"HR^{n}(S'')",
                lambda n=n: (pushed(H_m[n], H_d[n], maps_p[n], c)
                             for c in H_m[n].all_classes()),
                lambda n=n: (c for c in H_d[n].all_classes()
                             if all(v == 0 for v in
                                    conn[n].apply_to_class(H_d[n], H_p[n + 1], c))))
            # slot HR^(n+1)(S'): im connecting = ker i
            check_slot(
                f"HR^{n+1}(S')",
                lambda n=n: (conn[n].apply_to_class(H_d[n], H_p[n + 1], c)
                             for c in H_d[n].all_classes()),
                lambda n=n: (c for c in H_p[n + 1].all_classes()
                             if all(v == 0 for v in
                                    pushed(H_p[n + 1], H_m[n + 1],
                                           maps_i[n + 1], c))))
    report["groups"] = {
        "S_prime": [H_p[n].group_key() for n in range(through_degree + 1)],
        "S": [H_m[n].group_key() for n in range(through_degree + 1)],
        "S_dprime": [H_d[n].group_key() for n in range(through_degree + 1)],
    }
    return report
