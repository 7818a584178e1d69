"""Exact integer and rational linear algebra.

Smith normal form, Diophantine solving, integer kernels, and presentation
of quotient lattices as abelian groups (free rank + invariant factors).
All integer work uses arbitrary-precision Python ints inside numpy object
arrays, so intermediate swell is harmless.  Rational work uses
fractions.Fraction end to end; no floating point anywhere.

Everything here is a pure function of its inputs; concurrent use is safe.
"""

from fractions import Fraction

import numpy as np


def as_int_matrix(rows):
    """Coerce a list-of-lists / array into an object-dtype integer matrix."""
    if isinstance(rows, np.ndarray) and rows.dtype == object:
        return rows
    arr = np.array(rows, dtype=object)
    if arr.ndim == 1:
        arr = arr.reshape(len(arr), 1) if len(arr) else arr.reshape(0, 1)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    return arr


def zeros(m, n):
    return np.zeros((m, n), dtype=object) + 0


def eye(n):
    return np.array([[1 if i == j else 0 for j in range(n)] for i in range(n)],
                    dtype=object) if n else np.zeros((0, 0), dtype=object)


def _xgcd(a, b):
    # returns (g, x, y) with x*a + y*b == g == gcd(a, b), g >= 0
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


def smith_normal_form(mat, need_u=True, need_v=True, need_inverses=False):
    """Return (U, D, V) with U @ mat @ V == D, U and V unimodular.

    D is diagonal with a divisibility chain d_1 | d_2 | ... and d_i >= 0.
    With need_inverses, returns (U, D, V, Uinv, Vinv) instead.
    Pivoting picks the minimal nonzero absolute value to limit swell.
    """
    D = as_int_matrix(mat).copy()
    m, n = D.shape
    U = eye(m) if (need_u or need_inverses) else None
    V = eye(n) if (need_v or need_inverses) else None
    Uinv = eye(m) if need_inverses else None
    Vinv = eye(n) if need_inverses else None

    def row_op(i, j, q):
        # row_i -= q * row_j
        D[i, :] -= q * D[j, :]
        if U is not None:
            U[i, :] -= q * U[j, :]
        if Uinv is not None:
            Uinv[:, j] += q * Uinv[:, i]

    def col_op(i, j, q):
        D[:, i] -= q * D[:, j]
        if V is not None:
            V[:, i] -= q * V[:, j]
        if Vinv is not None:
            Vinv[j, :] += q * Vinv[i, :]

    def swap_rows(i, j):
        if i == j:
            return
        D[[i, j], :] = D[[j, i], :]
        if U is not None:
            U[[i, j], :] = U[[j, i], :]
        if Uinv is not None:
            Uinv[:, [i, j]] = Uinv[:, [j, i]]

    def swap_cols(i, j):
        if i == j:
            return
        D[:, [i, j]] = D[:, [j, i]]
        if V is not None:
            V[:, [i, j]] = V[:, [j, i]]
        if Vinv is not None:
            Vinv[[i, j], :] = Vinv[[j, i], :]

    def negate_row(i):
        D[i, :] = -D[i, :]
        if U is not None:
            U[i, :] = -U[i, :]
        if Uinv is not None:
            Uinv[:, i] = -Uinv[:, i]

    t = 0
    limit = min(m, n)
    while t < limit:
        # locate minimal-absolute-value nonzero pivot in D[t:, t:]
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = D[i, j]
                if v != 0 and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            # clear column t
            for i in range(t + 1, m):
                if D[i, t] == 0:
                    continue
                if D[i, t] % D[t, t] == 0:
                    row_op(i, t, D[i, t] // D[t, t])
                else:
                    g, x, y = _xgcd(D[t, t], D[i, t])
                    a, b = D[t, t] // g, D[i, t] // g
                    # rows (t, i) <- ((x*t + y*i), (-b*t + a*i)); det = 1
                    rt = x * D[t, :] + y * D[i, :]
                    ri = -b * D[t, :] + a * D[i, :]
                    D[t, :], D[i, :] = rt, ri
                    if U is not None:
                        ut = x * U[t, :] + y * U[i, :]
                        ui = -b * U[t, :] + a * U[i, :]
                        U[t, :], U[i, :] = ut, ui
                    if Uinv is not None:
                        # inverse of [[x, y], [-b, a]] is [[a, -y], [b, x]]
                        ct = a * Uinv[:, t] + b * Uinv[:, i]
                        ci = -y * Uinv[:, t] + x * Uinv[:, i]
                        Uinv[:, t], Uinv[:, i] = ct, ci
            if any(D[i, t] != 0 for i in range(t + 1, m)):
                continue
            # clear row t
            for j in range(t + 1, n):
                if D[t, j] == 0:
                    continue
                if D[t, j] % D[t, t] == 0:
                    col_op(j, t, D[t, j] // D[t, t])
                else:
                    g, x, y = _xgcd(D[t, t], D[t, j])
                    a, b = D[t, t] // g, D[t, j] // g
                    ct = x * D[:, t] + y * D[:, j]
                    cj = -b * D[:, t] + a * D[:, j]
                    D[:, t], D[:, j] = ct, cj
                    if V is not None:
                        vt = x * V[:, t] + y * V[:, j]
                        vj = -b * V[:, t] + a * V[:, j]
                        V[:, t], V[:, j] = vt, vj
                    if Vinv is not None:
                        rt = a * Vinv[t, :] + b * Vinv[j, :]
                        rj = -y * Vinv[t, :] + x * Vinv[j, :]
                        Vinv[t, :], Vinv[j, :] = rt, rj
            if all(D[i, t] == 0 for i in range(t + 1, m)):
                if all(D[t, j] == 0 for j in range(t + 1, n)):
                    break
        if D[t, t] < 0:
            negate_row(t)
        # enforce divisibility: D[t,t] must divide everything below-right
        bad = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if D[i, j] % D[t, t] != 0:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            # fold the offending row into row t and redo this pivot
            D[t, :] += D[bad, :]
            if U is not None:
                U[t, :] += U[bad, :]
            if Uinv is not None:
                Uinv[:, bad] -= Uinv[:, t]
            continue
        t += 1

    if need_inverses:
        return U, D, V, Uinv, Vinv
    return (U if need_u else None), D, (V if need_v else None)


def diagonal_of(D):
    m, n = D.shape
    return [D[i, i] for i in range(min(m, n))]


def int_kernel(mat):
    """Basis (columns) of the integer kernel {x : mat @ x == 0}."""
    M = as_int_matrix(mat)
    m, n = M.shape
    if n == 0:
        return zeros(0, 0)
    if m == 0:
        return eye(n)
    _, D, V = smith_normal_form(M, need_u=False)
    diag = diagonal_of(D)
    cols = [j for j in range(n) if j >= len(diag) or diag[j] == 0]
    return V[:, cols] if cols else zeros(n, 0)


class IntSolver:
    """Precomputed SNF factorisation for repeated solves of M x = b over Z."""

    def __init__(self, mat):
        self.M = as_int_matrix(mat)
        self.m, self.n = self.M.shape
        U, D, V = smith_normal_form(self.M)
        self.U, self.D, self.V = U, D, V
        self.diag = diagonal_of(D)

    def solve(self, b):
        """A particular integer solution of M x = b, or None."""
        b = np.array([v for v in b], dtype=object)
        if self.n == 0:
            return zeros(0, 1)[:, 0] if all(v == 0 for v in b) else None
        c = self.U @ b if self.m else b[:0]
        y = zeros(self.n, 1)[:, 0]
        for i in range(self.m):
            if i < len(self.diag) and self.diag[i] != 0:
                if c[i] % self.diag[i] != 0:
                    return None
                y[i] = c[i] // self.diag[i]
            else:
                if c[i] != 0:
                    return None
        return self.V @ y


def solve_int(mat, b):
    """One-shot integer solve of mat @ x = b; returns x or None."""
    return IntSolver(mat).solve(b)


class AbelianGroupPresentation:
    """A quotient K / L of lattices, presented by invariant factors.

    K is spanned by the columns of `basis` (full column rank, inside Z^k);
    L is spanned by `sub_gens` (each expressible in K, checked).  Exposes
    free rank, invariant factors d_1 | d_2 | ..., generator lifts into the
    ambient Z^k, and canonical class coordinates for membership tests.
    """

    def __init__(self, basis, sub_gens):
        B = as_int_matrix(basis)
        G = as_int_matrix(sub_gens)
        k = B.shape[0]
        mdim = B.shape[1]
        if G.shape[0] != k and G.size == 0:
            G = zeros(k, 0)
        self.ambient_dim = k
        self.basis = B
        self._solver = IntSolver(B)
        cols = []
        for j in range(G.shape[1]):
            w = self._solver.solve(G[:, j])
            if w is None:
                raise ValueError("image not contained in kernel")
            cols.append(w)
        Umat = (np.stack(cols, axis=1) if cols else zeros(mdim, 0))
        P, D, _, Pinv, _ = smith_normal_form(Umat, need_inverses=True)
        self._P = P
        self._Pinv = Pinv
        diag = diagonal_of(D)
        self._orders = []          # per position: 1 (dead), d>1 (torsion), 0 (free)
        for i in range(mdim):
            d = abs(diag[i]) if i < len(diag) else 0
            self._orders.append(d)
        self.invariant_factors = [d for d in self._orders if d > 1]
        self.free_rank = sum(1 for d in self._orders if d == 0)
        gen_matrix = B @ Pinv if mdim else zeros(k, 0)
        self._gen_cols = gen_matrix
        # surviving generators: order != 1
        self._live = [i for i, d in enumerate(self._orders) if d != 1]

    def generators(self):
        """Ambient lift of each surviving generator, paired with its order."""
        out = []
        for i in self._live:
            out.append((self._gen_cols[:, i], self._orders[i]))
        return out

    def split_generators(self):
        """(free generator columns, [(torsion column, order), ...]) with the
        torsion part in invariant-factor order."""
        free = [self._gen_cols[:, i] for i in self._live if self._orders[i] == 0]
        tors = [(self._gen_cols[:, i], self._orders[i])
                for i in self._live if self._orders[i] > 1]
        return free, tors

    def class_coords(self, vec):
        """Canonical coordinates of [vec]; None if vec is not in K."""
        w = self._solver.solve(vec)
        if w is None:
            return None
        w2 = self._P @ w
        coords = []
        for i in self._live:
            d = self._orders[i]
            coords.append(int(w2[i]) % d if d else int(w2[i]))
        return tuple(coords)

    def is_zero_class(self, vec):
        c = self.class_coords(vec)
        return c is not None and all(v == 0 for v in c)

    def lift(self, coords):
        """Ambient representative of the class with the given coordinates."""
        v = zeros(self.ambient_dim, 1)[:, 0]
        for c, i in zip(coords, self._live):
            v = v + c * self._gen_cols[:, i]
        return v

    def order(self):
        if self.free_rank:
            return 0
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n

    def all_classes(self):
        """Iterate canonical coordinates of every class (finite groups only)."""
        if self.free_rank:
            raise ValueError("group is infinite")
        def rec(i):
            if i == len(self._live):
                yield ()
                return
            d = self._orders[self._live[i]]
            for v in range(d):
                for rest in rec(i + 1):
                    yield (v,) + rest
        return rec(0)

    def group_key(self):
        return (self.free_rank, tuple(self.invariant_factors))

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.invariant_factors]
        return " + ".join(parts) if parts else "0"


def quotient(ker_basis, img_gens):
    """Present ker/im; raises ValueError if im is not inside ker."""
    return AbelianGroupPresentation(ker_basis, img_gens)


def lattice_mod_relations(constraint, relations, modulus_relations):
    """Present {x : constraint @ x in span(modulus_relations)} / span(relations).

    The common pattern behind kernels of maps between groups given as
    Z^k / relations: `constraint` maps into an ambient whose relation
    lattice is `modulus_relations`.
    """
    C = as_int_matrix(constraint)
    MR = as_int_matrix(modulus_relations)
    n = C.shape[1]
    stacked = np.concatenate([C, MR], axis=1) if MR.shape[1] else C
    ker = int_kernel(stacked)
    B = ker[:n, :] if ker.shape[1] else zeros(n, 0)
    # the projected columns may be dependent; re-extract a lattice basis
    B = lattice_basis(B)
    return AbelianGroupPresentation(B, relations)


def lattice_basis(gens):
    """A basis of the lattice spanned by the given generator columns.

    span(G) == span(G @ V) for unimodular V, and in SNF coordinates the
    nonzero columns of G @ V are independent.
    """
    G = as_int_matrix(gens)
    n, g = G.shape
    if g == 0:
        return zeros(n, 0)
    _, D2, V2 = smith_normal_form(G, need_u=False)
    GV = G @ V2
    diag = diagonal_of(D2)
    rank = sum(1 for d in diag if d != 0)
    cols = [GV[:, j] for j in range(g) if any(v != 0 for v in GV[:, j])]
    if not cols:
        return zeros(n, 0)
    B = np.stack(cols, axis=1)
    assert B.shape[1] == rank
    return B


# ----------------------------------------------------------------------
# exact rational linear algebra (fractions end to end)

def as_frac_matrix(rows):
    M = rows if isinstance(rows, np.ndarray) else np.array(rows, dtype=object)
    if M.ndim == 1:
        M = M.reshape(len(M), 1) if len(M) else M.reshape(0, 0)
    out = np.empty(M.shape, dtype=object)
    for i in range(M.shape[0]):
        for j in range(M.shape[1]):
            out[i, j] = Fraction(M[i, j])
    return out


def frac_zeros(m, n):
    M = np.empty((m, n), dtype=object)
    M[:, :] = Fraction(0)
    return M


def _rref(M):
    """Row-reduce a Fraction matrix in place; returns pivot column list."""
    m, n = M.shape
    pivots = []
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, m):
            if M[i, c] != 0:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            M[[r, piv], :] = M[[piv, r], :]
        M[r, :] = M[r, :] / M[r, c]
        for i in range(m):
            if i != r and M[i, c] != 0:
                M[i, :] = M[i, :] - M[i, c] * M[r, :]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return pivots


def frac_rank(mat):
    M = as_frac_matrix(mat).copy()
    if M.size == 0:
        return 0
    return len(_rref(M))


def frac_kernel(mat):
    """Columns spanning the rational null space."""
    M = as_frac_matrix(mat).copy()
    m, n = M.shape
    if n == 0:
        return frac_zeros(0, 0)
    if m == 0 or M.size == 0:
        K = frac_zeros(n, n)
        for i in range(n):
            K[i, i] = Fraction(1)
        return K
    pivots = _rref(M)
    free = [c for c in range(n) if c not in pivots]
    K = frac_zeros(n, len(free))
    for idx, fc in enumerate(free):
        K[fc, idx] = Fraction(1)
        for r, pc in enumerate(pivots):
            K[pc, idx] = -M[r, fc]
    return K


def frac_solve(mat, b):
    """A rational solution of mat @ x = b, or None."""
    M = as_frac_matrix(mat)
    m, n = M.shape
    bb = np.array([Fraction(v) for v in b], dtype=object)
    aug = frac_zeros(m, n + 1)
    aug[:, :n] = M
    aug[:, n] = bb
    pivots = _rref(aug)
    if n in pivots:
        return None
    x = np.array([Fraction(0)] * n, dtype=object)
    r = 0
    for pc in pivots:
        x[pc] = aug[r, n]
        r += 1
    return x
