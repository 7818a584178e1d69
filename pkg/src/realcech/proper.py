"""Vanishing machinery for finite (hence proper) groupoids acting on
rational fibers.

Representation-valued cochains anchor their value at the source of the
last arrow of a tuple (at the object itself in degree 0), carry the
reality constraint f(rho(t)) = nu(f(t)), and use the differential

    (df)(g_1..g_{n+1}) = sum_{k<=n} (-1)^k f(face_k)
                         + (-1)^(n+1) act(g_{n+1})^{-1} f(g_1..g_n)

whose last-face transport is forced by d^2 = 0 together with agreement
with the constant-coefficient differential for trivial actions.  The
counting-measure cutoff c(x) = 1/|G^x| feeds the contraction

    (h f)(g_1..g_n) = (-1)^(n+1) sum_{gamma into anchor}
                      c(src gamma) * act(gamma) f(g_1..g_n, gamma)

and h d + d h = identity in every degree >= 1, which is the vanishing
theorem at matrix level.  All arithmetic is exact rational.
"""

import math
from fractions import Fraction

import numpy as np

from . import exact
from .nerve import nerve, face


def canonical_cutoff(groupoid):
    """c(x) = 1 / #(arrows into x); satisfies c(rho x) = c(x) and the
    unit-mass condition sum_{g into x} c(src g) = 1 exactly."""
    G = groupoid
    counts = [len(G.arrows_into(x)) for x in range(G.n_objects)]
    return [Fraction(1, c) for c in counts]


def verify_cutoff(groupoid, cutoff):
    """Violations of the cutoff axioms (empty list = valid)."""
    G = groupoid
    bad = []
    for x in range(G.n_objects):
        if cutoff[x] <= 0:
            bad.append(f"c({x}) is not positive")
        if cutoff[int(G.rho_obj[x])] != cutoff[x]:
            bad.append(f"c not involution-symmetric at {x}")
        total = sum(cutoff[int(G.src[g])] for g in G.arrows_into(x))
        if total != 1:
            bad.append(f"unit mass fails at {x}: {total}")
    return bad


def _anchor(groupoid, n, tup):
    if n == 0:
        return int(tup[0])
    return int(groupoid.src[tup[-1]])


class RepLevelBasis:
    """Orbit basis of degree-n representation-valued real cochains."""

    def __init__(self, rep, n):
        self.rep = rep
        G = rep.groupoid
        self.groupoid = G
        self.n = n
        self.level = nerve(G, n)
        self.dim = rep.dim
        self.orbits = []      # (kind, rep_index, partner_index)
        self.orbit_of = {}
        self._fixed_basis = {}
        seen = set()
        for i in range(len(self.level)):
            if i in seen:
                continue
            j = self.level.rho_index(i)
            if j == i:
                oid = len(self.orbits)
                self.orbits.append(("fixed", i, i))
                self.orbit_of[i] = (oid, "rep")
                seen.add(i)
            else:
                a, b = (i, j) if i < j else (j, i)
                oid = len(self.orbits)
                self.orbits.append(("free", a, b))
                self.orbit_of[a] = (oid, "rep")
                self.orbit_of[b] = (oid, "partner")
                seen.update((a, b))
        self.offsets = []
        pos = 0
        self.widths = []
        for kind, ri, _ in self.orbits:
            self.offsets.append(pos)
            if kind == "free":
                w = self.dim
            else:
                x = _anchor(G, n, self.level.tuple_at(ri))
                w = self._plus_eigenbasis(x).shape[1]
            self.widths.append(w)
            pos += w
        self.total = pos

    def _plus_eigenbasis(self, x):
        """Columns spanning {v : nu_x v = v} for a rho-fixed object x."""
        if x not in self._fixed_basis:
            nu = self.rep.nu[x]
            C = nu - exact.as_frac_matrix(np.eye(self.dim, dtype=np.int64))
            self._fixed_basis[x] = exact.frac_kernel(C)
        return self._fixed_basis[x]

    def value_expression(self, tuple_index):
        """(offset, M): fiber value at the tuple = M @ stored coords."""
        oid, role = self.orbit_of[tuple_index]
        kind, ri, _ = self.orbits[oid]
        off = self.offsets[oid]
        if kind == "fixed":
            x = _anchor(self.groupoid, self.n, self.level.tuple_at(ri))
            return off, self._plus_eigenbasis(x)
        if role == "rep":
            return off, exact.as_frac_matrix(np.eye(self.dim, dtype=np.int64))
        x = _anchor(self.groupoid, self.n, self.level.tuple_at(ri))
        return off, self.rep.nu[x]

    def corestrict(self, oid, X):
        """Express fiber-valued columns X in the stored coordinates of a
        fixed orbit (solving against the +1 eigenbasis)."""
        kind, ri, _ = self.orbits[oid]
        assert kind == "fixed"
        x = _anchor(self.groupoid, self.n, self.level.tuple_at(ri))
        F = self._plus_eigenbasis(x)
        W = exact.frac_zeros(F.shape[1], X.shape[1])
        for c in range(X.shape[1]):
            sol = exact.frac_solve(F, X[:, c])
            if sol is None:
                raise AssertionError("value escaped the fixed subspace")
            W[:, c] = sol
        return W

    # API parity with the integral LevelBasis
    def counts(self):
        free = sum(1 for k, _, _ in self.orbits if k == "free")
        return free, len(self.orbits) - free

    def presentation_key(self):
        return (self.total, ())


class RepComplex:
    """Cochain complex with coefficients in a rational representation."""

    def __init__(self, groupoid, rep, cutoff=None):
        self.groupoid = groupoid
        self.rep = rep
        self.cutoff = cutoff if cutoff is not None else canonical_cutoff(groupoid)
        self._bases = {}
        self._diffs = {}
        self._homos = {}

    def basis(self, n):
        if n not in self._bases:
            self._bases[n] = RepLevelBasis(self.rep, n)
        return self._bases[n]

    def differential_matrix(self, n):
        if n in self._diffs:
            return self._diffs[n]
        src = self.basis(n)
        dst = self.basis(n + 1)
        G = self.groupoid
        dim = self.rep.dim
        D = exact.frac_zeros(dst.total, src.total)
        for oid, (kind, ri, _) in enumerate(dst.orbits):
            tup = dst.level.tuple_at(ri)
            X = exact.frac_zeros(dim, src.total)
            for k in range(n + 2):
                ftup = face(G, n + 1, k, tup)
                fi = src.level.index_of(ftup)
                off, M = src.value_expression(fi)
                sign = Fraction(1 if k % 2 == 0 else -1)
                if k == n + 1:
                    M = self.rep.act_inv(tup[-1]) @ M
                w = M.shape[1]
                if w:
                    X[:, off:off + w] += sign * M
            off_dst = dst.offsets[oid]
            if kind == "free":
                D[off_dst:off_dst + dim, :] = X
            else:
                W = dst.corestrict(oid, X)
                D[off_dst:off_dst + W.shape[0], :] = W
        self._diffs[n] = D
        return D

    def contraction_matrix(self, n):
        """h: C^(n+1) -> C^n (requires the cutoff; exact rationals)."""
        if n in self._homos:
            return self._homos[n]
        src = self.basis(n + 1)
        dst = self.basis(n)
        G = self.groupoid
        dim = self.rep.dim
        H = exact.frac_zeros(dst.total, src.total)
        sign = Fraction(1 if (n + 1) % 2 == 0 else -1)
        for oid, (kind, ri, _) in enumerate(dst.orbits):
            tup = dst.level.tuple_at(ri)
            x = _anchor(G, n, tup)
            X = exact.frac_zeros(dim, src.total)
            for gamma in G.arrows_into(x):
                longer = tuple(tup) + (int(gamma),) if n >= 1 else (int(gamma),)
                li = src.level.index_of(longer)
                off, M = src.value_expression(li)
                w = M.shape[1]
                if not w:
                    continue
                weight = self.cutoff[int(G.src[gamma])]
                X[:, off:off + w] += sign * weight * (self.rep.act(int(gamma)) @ M)
            off_dst = dst.offsets[oid]
            if kind == "free":
                H[off_dst:off_dst + dim, :] = X
            else:
                W = dst.corestrict(oid, X)
                H[off_dst:off_dst + W.shape[0], :] = W
        self._homos[n] = H
        return H

    def cohomology(self, n):
        return RationalCohomology(self, n)

    def is_cocycle(self, n, vec):
        D = self.differential_matrix(n)
        out = D @ np.array([Fraction(v) for v in vec], dtype=object)
        return all(v == 0 for v in out)

    def is_coboundary(self, n, vec):
        """A rational primitive b with db = vec, or None.  For n >= 1 on a
        finite groupoid every cocycle has one (the contraction builds it:
        b = h(vec) when vec is a cocycle)."""
        if n == 0:
            v = np.array([Fraction(x) for x in vec], dtype=object)
            return v if all(x == 0 for x in v) else None
        D = self.differential_matrix(n - 1)
        return exact.frac_solve(D, [Fraction(v) for v in vec])

    def from_values(self, n, value_fn):
        """Cochain vector from a fiber-valued function on nerve tuples."""
        basis = self.basis(n)
        vec = exact.frac_zeros(basis.total, 1)[:, 0]
        for oid, (kind, ri, _) in enumerate(basis.orbits):
            tup = basis.level.tuple_at(ri)
            val = np.array([Fraction(v) for v in value_fn(tup)], dtype=object)
            off = basis.offsets[oid]
            if kind == "free":
                vec[off:off + basis.dim] = val
            else:
                W = basis.corestrict(oid, val.reshape(-1, 1))
                vec[off:off + W.shape[0]] = W[:, 0]
        return vec


class RationalCohomology:
    """HR^n over Q: a plain dimension count (no torsion)."""

    def __init__(self, complex_, n):
        self.complex = complex_
        self.degree = n
        basis = complex_.basis(n)
        D_n = complex_.differential_matrix(n)
        self.rank_kernel = basis.total - exact.frac_rank(D_n)
        if n == 0:
            self.rank_image = 0
        else:
            self.rank_image = exact.frac_rank(complex_.differential_matrix(n - 1))
        self.free_rank = self.rank_kernel - self.rank_image
        self.invariant_factors = []

    def group_key(self):
        return (self.free_rank, ())

    def order(self):
        return 1 if self.free_rank == 0 else 0

    def __str__(self):
        return " + ".join(["Q"] * self.free_rank) if self.free_rank else "0"


# -- checks used by the acceptance suite --------------------------------

def _lcm_denominator(M):
    out = 1
    for v in M.flat:
        out = out * v.denominator // math.gcd(out, v.denominator)
    return out


def _scaled_int64(M, scale):
    A = np.empty(M.shape, dtype=np.int64)
    for i in range(M.shape[0]):
        for j in range(M.shape[1]):
            val = M[i, j] * scale
            assert val.denominator == 1
            assert abs(val.numerator) < (1 << 40)
            A[i, j] = int(val)
    return A


def homotopy_identity_matrices(complex_, n):
    """(h d + d h, expected multiple of identity) on degree n >= 1,
    computed with cleared denominators in C-speed integer arithmetic."""
    D_n = complex_.differential_matrix(n)
    D_prev = complex_.differential_matrix(n - 1)
    H_n = complex_.contraction_matrix(n)      # C^(n+1) -> C^n
    H_prev = complex_.contraction_matrix(n - 1)  # C^n -> C^(n-1)
    a = max(_lcm_denominator(D_n), _lcm_denominator(D_prev))
    b = max(_lcm_denominator(H_n), _lcm_denominator(H_prev))
    Dn = _scaled_int64(D_n, a)
    Dp = _scaled_int64(D_prev, a)
    Hn = _scaled_int64(H_n, b)
    Hp = _scaled_int64(H_prev, b)
    total = complex_.basis(n).total
    lhs = Hn @ Dn + Dp @ Hp
    rhs = (a * b) * np.eye(total, dtype=np.int64)
    return lhs, rhs


def contraction_is_homotopy(complex_, n):
    lhs, rhs = homotopy_identity_matrices(complex_, n)
    return bool((lhs == rhs).all())


def vanishing_check(groupoid, rep, n_max):
    """Report HR^n(groupoid, rep) for 1 <= n <= n_max; every degree must
    be zero for finite (proper) groupoids."""
    cx = RepComplex(groupoid, rep)
    report = []
    for n in range(1, n_max + 1):
        h = cx.cohomology(n)
        report.append({
            "degree": n,
            "rank_kernel": h.rank_kernel,
            "rank_image": h.rank_image,
            "free_rank": h.free_rank,
        })
    return report
