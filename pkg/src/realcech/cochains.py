"""The cochain complex of a finite groupoid with involution.

A degree-n cochain assigns a coefficient value to every composable
n-tuple subject to the reality constraint c(rho(t)) = tau(c(t)).  The
stored basis runs over involution orbits of nerve tuples: a free orbit
keeps one full copy of S (the partner value is tau of it), a fixed tuple
keeps a copy of the fixed subgroup.  That makes the cochain group an
honest direct sum, so Smith-form arithmetic applies directly.

The differential is the alternating sum over the face maps; cohomology
is kernel-mod-image computed exactly over Z (or over Q for rational
coefficients, which are routed through the representation machinery).
"""

import numpy as np

from . import exact
from .nerve import nerve, face


class SBlocks:
    """Per-coefficient-group data shared by all levels: the S block, the
    fixed-subgroup block, the embedding, and a solver for corestriction
    into fixed coordinates."""

    def __init__(self, S):
        self.S = S
        self.k = S.ngens
        self.moduli_S = [0] * S.free_rank + list(S.invariant_factors)
        fixed, E = S.fixed_part()
        self.fixed = fixed
        self.embed = E  # k x k_fixed
        self.k_fixed = fixed.ngens
        self.moduli_fixed = [0] * fixed.free_rank + list(fixed.invariant_factors)
        R_S = S.relations()
        if self.k_fixed:
            aug = np.concatenate([E, R_S], axis=1) if R_S.shape[1] else E
            self._fixed_solver = exact.IntSolver(aug)
        else:
            self._fixed_solver = None

    def to_fixed_coords(self, vec):
        """Express an S-element lying in the fixed subgroup in fixed
        coordinates; None if it is not fixed."""
        if self.k_fixed == 0:
            reduced = self.S.reduce_tuple(vec)
            return () if all(v == 0 for v in reduced) else None
        sol = self._fixed_solver.solve(np.array(list(vec), dtype=object))
        if sol is None:
            return None
        return tuple(int(v) for v in sol[:self.k_fixed])


class Orbit:
    __slots__ = ("kind", "rep", "partner")

    def __init__(self, kind, rep, partner):
        self.kind = kind        # 'free' | 'fixed'
        self.rep = rep          # tuple index in the nerve level
        self.partner = partner  # == rep for fixed orbits


class LevelBasis:
    """Orbit basis of the degree-n real cochain group."""

    def __init__(self, groupoid, sblocks, n):
        self.groupoid = groupoid
        self.sb = sblocks
        self.n = n
        self.level = nerve(groupoid, n)
        self.orbits = []
        self.orbit_of = {}    # tuple index -> (orbit id, 'rep'|'partner')
        seen = set()
        for i in range(len(self.level)):
            if i in seen:
                continue
            j = self.level.rho_index(i)
            if j == i:
                oid = len(self.orbits)
                self.orbits.append(Orbit("fixed", i, i))
                self.orbit_of[i] = (oid, "rep")
                seen.add(i)
            else:
                rep, partner = (i, j) if i < j else (j, i)
                oid = len(self.orbits)
                self.orbits.append(Orbit("free", rep, partner))
                self.orbit_of[rep] = (oid, "rep")
                self.orbit_of[partner] = (oid, "partner")
                seen.update((rep, partner))
        self.offsets = []
        self.moduli = []
        pos = 0
        for o in self.orbits:
            self.offsets.append(pos)
            if o.kind == "free":
                pos += self.sb.k
                self.moduli.extend(self.sb.moduli_S)
            else:
                pos += self.sb.k_fixed
                self.moduli.extend(self.sb.moduli_fixed)
        self.total = pos

    def width(self, oid):
        return self.sb.k if self.orbits[oid].kind == "free" else self.sb.k_fixed

    def counts(self):
        free = sum(1 for o in self.orbits if o.kind == "free")
        return free, len(self.orbits) - free

    def presentation(self):
        """The cochain group as an abelian group presentation."""
        return exact.quotient(exact.eye(self.total), self.relation_matrix())

    def relation_matrix(self):
        cols = sum(1 for d in self.moduli if d > 0)
        R = exact.zeros(self.total, cols)
        c = 0
        for i, d in enumerate(self.moduli):
            if d > 0:
                R[i, c] = d
                c += 1
        return R

    def in_relation_lattice(self, vec):
        for v, d in zip(vec, self.moduli):
            if d == 0:
                if v != 0:
                    return False
            elif v % d != 0:
                return False
        return True

    def reduce(self, vec):
        out = []
        for v, d in zip(vec, self.moduli):
            out.append(int(v) % d if d > 0 else int(v))
        return np.array(out, dtype=object)

    def value_expression(self, tuple_index):
        """(offset, M): the S-value at this nerve tuple equals
        M @ stored-coordinates-of-its-orbit, placed at the offset."""
        oid, role = self.orbit_of[tuple_index]
        o = self.orbits[oid]
        off = self.offsets[oid]
        if o.kind == "fixed":
            return off, self.sb.embed
        if role == "rep":
            return off, exact.eye(self.sb.k)
        return off, self.sb.S.tau

    def value_at(self, vector, tup):
        """Evaluate a stored coordinate vector at a nerve tuple; returns
        the S-element as a reduced tuple."""
        i = self.level.index_of(tup)
        off, M = self.value_expression(i)
        w = M.shape[1]
        coords = np.array(list(vector[off:off + w]), dtype=object)
        val = M @ coords if w else exact.zeros(self.sb.k, 1)[:, 0]
        return self.sb.S.reduce_tuple(tuple(val))


class RealCochain:
    """A degree-n real cochain in stored orbit coordinates."""

    def __init__(self, complex_, degree, vector):
        self.complex = complex_
        self.degree = degree
        basis = complex_.basis(degree)
        self.vector = basis.reduce(np.array(list(vector), dtype=object))

    def value_at(self, tup):
        return self.complex.basis(self.degree).value_at(self.vector, tup)

    def __add__(self, other):
        assert self.degree == other.degree
        return RealCochain(self.complex, self.degree,
                           self.vector + other.vector)

    def __neg__(self):
        return RealCochain(self.complex, self.degree, -self.vector)

    def __sub__(self, other):
        return self + (-other)

    def serialize(self):
        basis = self.complex.basis(self.degree)
        values = []
        for oid in range(len(basis.orbits)):
            off = basis.offsets[oid]
            w = basis.width(oid)
            values.append([oid, [int(v) for v in self.vector[off:off + w]]])
        return {"degree": self.degree, "values": values}


class RealComplex:
    """Cochain complex of one (groupoid, coefficient group) pair; levels
    and differentials are built once and cached.  Integral mode only;
    rational coefficients go through the representation complex."""

    def __init__(self, groupoid, S):
        if S.mode != "integral":
            raise ValueError("RealComplex requires integral coefficients")
        self.groupoid = groupoid
        self.S = S
        self.sb = SBlocks(S)
        self._bases = {}
        self._diffs = {}

    def basis(self, n):
        if n not in self._bases:
            self._bases[n] = LevelBasis(self.groupoid, self.sb, n)
        return self._bases[n]

    def cochain(self, n, vector):
        return RealCochain(self, n, vector)

    def zero_cochain(self, n):
        return RealCochain(self, n, exact.zeros(self.basis(n).total, 1)[:, 0])

    def from_values(self, n, value_fn):
        """Build a cochain from an S-valued function on nerve tuples; the
        function is sampled at orbit representatives (fixed tuples must
        land in the fixed subgroup)."""
        basis = self.basis(n)
        vec = exact.zeros(basis.total, 1)[:, 0]
        for oid, o in enumerate(basis.orbits):
            tup = basis.level.tuple_at(o.rep)
            val = self.S.reduce_tuple(value_fn(tup))
            off = basis.offsets[oid]
            if o.kind == "free":
                for i, v in enumerate(val):
                    vec[off + i] = v
            else:
                w = self.sb.to_fixed_coords(val)
                if w is None:
                    raise ValueError(
                        f"value at fixed tuple {tup} is not tau-fixed")
                for i, v in enumerate(w):
                    vec[off + i] = v
        return RealCochain(self, n, vec)

    def differential_matrix(self, n):
        """Integer matrix of d: CR^n -> CR^(n+1) in the orbit bases."""
        if n in self._diffs:
            return self._diffs[n]
        src = self.basis(n)
        dst = self.basis(n + 1)
        D = exact.zeros(dst.total, src.total)
        G = self.groupoid
        for oid, o in enumerate(dst.orbits):
            tup = dst.level.tuple_at(o.rep)
            # alternating sum of face values as an S-valued expression
            X = exact.zeros(self.sb.k, src.total)
            for i in range(n + 2):
                ftup = face(G, n + 1, i, tup)
                fi = src.level.index_of(ftup)
                off, M = src.value_expression(fi)
                w = M.shape[1]
                sign = 1 if i % 2 == 0 else -1
                X[:, off:off + w] += sign * M
            off_dst = dst.offsets[oid]
            if o.kind == "free":
                D[off_dst:off_dst + self.sb.k, :] = X
            else:
                for c in range(src.total):
                    wcol = self.sb.to_fixed_coords(X[:, c])
                    if wcol is None:
                        raise AssertionError(
                            "differential broke the reality constraint")
                    for rr, v in enumerate(wcol):
                        D[off_dst + rr, c] = v
        self._diffs[n] = D
        return D

    def d(self, cochain):
        n = cochain.degree
        D = self.differential_matrix(n)
        vec = D @ cochain.vector if self.basis(n).total else \
            exact.zeros(self.basis(n + 1).total, 1)[:, 0]
        return RealCochain(self, n + 1, vec)

    def is_cocycle(self, cochain):
        n = cochain.degree
        D = self.differential_matrix(n)
        img = D @ cochain.vector if self.basis(n).total else \
            exact.zeros(self.basis(n + 1).total, 1)[:, 0]
        return self.basis(n + 1).in_relation_lattice(img)

    def is_coboundary(self, cochain):
        """None, or a degree-(n-1) primitive b with db = c.  The complex
        starts at degree 0, so a 0-cochain is a coboundary only if it is
        zero; the witness returned in that case is the zero 0-cochain."""
        n = cochain.degree
        basis = self.basis(n)
        if n == 0:
            reduced = basis.reduce(cochain.vector)
            if all(v == 0 for v in reduced):
                return self.zero_cochain(0)
            return None
        D = self.differential_matrix(n - 1)
        R = basis.relation_matrix()
        prev = self.basis(n - 1)
        aug = np.concatenate([D, R], axis=1) if R.shape[1] else D
        sol = exact.solve_int(aug, cochain.vector)
        if sol is None:
            return None
        return RealCochain(self, n - 1, sol[:prev.total])

    def cohomology(self, n):
        return CohomologyGroup(self, n)


class CohomologyGroup:
    """ker d^n / im d^(n-1) with representatives and a class tester."""

    def __init__(self, complex_, n):
        self.complex = complex_
        self.degree = n
        basis = complex_.basis(n)
        D_n = complex_.differential_matrix(n)
        R_next = complex_.basis(n + 1).relation_matrix()
        R_here = basis.relation_matrix()
        if n == 0:
            img = R_here
        else:
            D_prev = complex_.differential_matrix(n - 1)
            img = np.concatenate([D_prev, R_here], axis=1) \
                if R_here.shape[1] else D_prev
        self.presentation = exact.lattice_mod_relations(D_n, img, R_next)
        self.free_rank = self.presentation.free_rank
        self.invariant_factors = list(self.presentation.invariant_factors)

    def group_key(self):
        return (self.free_rank, tuple(self.invariant_factors))

    def order(self):
        return self.presentation.order()

    def representatives(self):
        """One representative cocycle per generator of the group."""
        out = []
        for col, order in self.presentation.generators():
            out.append((RealCochain(self.complex, self.degree, col), order))
        return out

    def class_of(self, cochain):
        """Canonical class coordinates; None if not a cocycle."""
        return self.presentation.class_coords(cochain.vector)

    def is_trivial_class(self, cochain):
        c = self.class_of(cochain)
        return c is not None and all(v == 0 for v in c)

    def all_classes(self):
        return self.presentation.all_classes()

    def lift(self, coords):
        return RealCochain(self.complex, self.degree,
                           self.presentation.lift(coords))

    def __str__(self):
        return str(self.presentation)


# -- module-level convenience API --------------------------------------

def cochain_group(groupoid, S, n):
    """The degree-n real cochain group; returns the LevelBasis, whose
    presentation is S^(#free orbits) + fixed(S)^(#fixed tuples)."""
    if S.mode == "rational":
        from .proper import RepComplex
        from .coefficients import RealRepresentation
        rep = RealRepresentation.trivial(groupoid, *_pq_of(S))
        return RepComplex(groupoid, rep).basis(n)
    return RealComplex(groupoid, S).basis(n)


def differential(groupoid, S, n):
    if S.mode == "rational":
        from .proper import RepComplex
        from .coefficients import RealRepresentation
        rep = RealRepresentation.trivial(groupoid, *_pq_of(S))
        return RepComplex(groupoid, rep).differential_matrix(n)
    return RealComplex(groupoid, S).differential_matrix(n)


def cohomology(groupoid, S, n):
    if S.mode == "rational":
        from .proper import RepComplex
        from .coefficients import RealRepresentation
        rep = RealRepresentation.trivial(groupoid, *_pq_of(S))
        return RepComplex(groupoid, rep).cohomology(n)
    return RealComplex(groupoid, S).cohomology(n)


def _pq_of(S):
    # a rational coefficient space is diag(1_p, -1_q) after base change;
    # recover (p, q) from the involution's eigenvalue multiplicities
    fixed, _ = S.fixed_part()
    p = fixed.free_rank
    return p, S.free_rank - p


def invariant_sections(groupoid, S):
    """Sections s with s(rho x) = tau(s(x)) constant on orbits of the
    groupoid: solved directly on the full function space S^X, not via the
    orbit-reduced complex, so it is an independent route to HR^0."""
    if S.mode == "rational":
        raise ValueError("invariant_sections expects integral coefficients")
    G = groupoid
    k = S.ngens
    nvars = G.n_objects * k
    rows = []
    for x in range(G.n_objects):
        rx = int(G.rho_obj[x])
        block = exact.zeros(k, nvars)
        block[:, rx * k:(rx + 1) * k] += exact.eye(k)
        block[:, x * k:(x + 1) * k] -= S.tau
        rows.append(block)
    for g in range(G.n_arrows):
        s, t = int(G.src[g]), int(G.tgt[g])
        if s == t:
            continue
        block = exact.zeros(k, nvars)
        block[:, s * k:(s + 1) * k] += exact.eye(k)
        block[:, t * k:(t + 1) * k] -= exact.eye(k)
        rows.append(block)
    C = np.concatenate(rows, axis=0) if rows else exact.zeros(0, nvars)
    R_S = S.relations()
    per_obj = exact.zeros(nvars, G.n_objects * R_S.shape[1])
    for x in range(G.n_objects):
        per_obj[x * k:(x + 1) * k,
                x * R_S.shape[1]:(x + 1) * R_S.shape[1]] = R_S
    n_rows = C.shape[0] // k if k else 0
    modulus = exact.zeros(C.shape[0], n_rows * R_S.shape[1])
    for r in range(n_rows):
        modulus[r * k:(r + 1) * k,
                r * R_S.shape[1]:(r + 1) * R_S.shape[1]] = R_S
    return exact.lattice_mod_relations(C, per_obj, modulus)
