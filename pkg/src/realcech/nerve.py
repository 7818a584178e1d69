"""The simplicial nerve of a finite groupoid with involution.

Level n lists all composable n-tuples of arrows (level 0 = objects) in
lexicographic order of arrow indices; this ordering is part of the
external contract, so cochain matrices are reproducible across runs.
Face and degeneracy maps follow the standard conventions:

    face 0 drops the first arrow, face i (0<i<n) composes g_i g_{i+1},
    face n drops the last arrow; for 1-tuples face 0 = src, face 1 = tgt.
    degeneracy 0 inserts unit(tgt g_1) in front, degeneracy i inserts
    unit(src g_i) after slot i; on level 0 it is the unit map.

The componentwise involution commutes with all of them.
"""

import numpy as np


class NerveLevel:
    """Composable n-tuples with their componentwise involution.

    entries: (count, n) array of arrow indices for n >= 1, or the object
    indices (count,) reshaped to (count, 0)-style handling for n == 0.
    """

    def __init__(self, groupoid, n, entries):
        self.groupoid = groupoid
        self.n = n
        self.entries = entries
        self.index = {tuple(int(v) for v in row): i
                      for i, row in enumerate(entries)}

    def __len__(self):
        return len(self.entries)

    def tuple_at(self, i):
        return tuple(int(v) for v in self.entries[i])

    def index_of(self, tup):
        return self.index[tuple(tup)]

    def rho(self, tup):
        G = self.groupoid
        if self.n == 0:
            return (int(G.rho_obj[tup[0]]),)
        return tuple(int(G.rho_arr[g]) for g in tup)

    def rho_index(self, i):
        return self.index_of(self.rho(self.tuple_at(i)))


def nerve(groupoid, n):
    """Enumerate nerve level n in lexicographic arrow order."""
    if n < 0:
        raise ValueError("degree must be >= 0")
    G = groupoid
    if n == 0:
        entries = np.arange(G.n_objects, dtype=np.int64).reshape(-1, 1)
        lvl = NerveLevel(G, 0, entries)
        return lvl
    tuples = [(g,) for g in range(G.n_arrows)]
    for _ in range(n - 1):
        new = []
        for t in tuples:
            last = t[-1]
            for h in range(G.n_arrows):
                if G.src[last] == G.tgt[h]:
                    new.append(t + (h,))
        tuples = new
    entries = np.array(tuples, dtype=np.int64).reshape(len(tuples), n)
    return NerveLevel(G, n, entries)


def face(groupoid, n, i, tup):
    """The i-th face of a level-n tuple (result has level n-1)."""
    if not (0 <= i <= n) or n < 1:
        raise IndexError(f"face index {i} out of range for degree {n}")
    G = groupoid
    if n == 1:
        g = tup[0]
        return (int(G.src[g]),) if i == 0 else (int(G.tgt[g]),)
    if i == 0:
        return tuple(tup[1:])
    if i == n:
        return tuple(tup[:-1])
    merged = G.compose(tup[i - 1], tup[i])
    return tuple(tup[:i - 1]) + (merged,) + tuple(tup[i + 1:])


def degeneracy(groupoid, n, i, tup):
    """The i-th degeneracy of a level-n tuple (result has level n+1)."""
    if not (0 <= i <= n):
        raise IndexError(f"degeneracy index {i} out of range for degree {n}")
    G = groupoid
    if n == 0:
        return (int(G.unit[tup[0]]),)
    if i == 0:
        return (int(G.unit[G.tgt[tup[0]]]),) + tuple(tup)
    u = int(G.unit[G.src[tup[i - 1]]])
    return tuple(tup[:i]) + (u,) + tuple(tup[i:])


def check_simplicial_identities(groupoid, max_degree):
    """Exhaustively verify the simplicial identities and involution
    equivariance of faces/degeneracies up to the given degree.

    Returns a list of violation descriptions (empty = all good)."""
    bad = []
    G = groupoid
    levels = {n: nerve(G, n) for n in range(max_degree + 2)}
    for n in range(1, max_degree + 1):
        for tup in (levels[n].tuple_at(k) for k in range(len(levels[n]))):
            # face-face: e_i e_j = e_{j-1} e_i for i < j
            if n >= 2:
                for j in range(n + 1):
                    for i in range(j):
                        lhs = face(G, n - 1, i, face(G, n, j, tup))
                        rhs = face(G, n - 1, j - 1, face(G, n, i, tup))
                        if lhs != rhs:
                            bad.append(f"face-face fails: n={n} i={i} j={j} {tup}")
            # equivariance
            for i in range(n + 1):
                lhs = face(G, n, i, levels[n].rho(tup))
                rhs = levels[n - 1].rho(face(G, n, i, tup))
                if lhs != rhs:
                    bad.append(f"face not equivariant: n={n} i={i} {tup}")
    for n in range(0, max_degree + 1):
        for tup in (levels[n].tuple_at(k) for k in range(len(levels[n]))):
            for i in range(n + 1):
                dg = degeneracy(G, n, i, tup)
                if dg not in levels[n + 1].index:
                    bad.append(f"degeneracy leaves nerve: n={n} i={i} {tup}")
                    continue
                # e_j eta_j = e_{j+1} eta_j = id
                if face(G, n + 1, i, dg) != tuple(tup) or \
                        face(G, n + 1, i + 1, dg) != tuple(tup):
                    bad.append(f"face-degeneracy unit fails: n={n} i={i} {tup}")
                lhs = degeneracy(G, n, i, levels[n].rho(tup))
                rhs = levels[n + 1].rho(dg)
                if lhs != rhs:
                    bad.append(f"degeneracy not equivariant: n={n} i={i} {tup}")
            # eta_i eta_j = eta_{j+1} eta_i for i <= j
            for j in range(n + 1):
                for i in range(j + 1):
                    lhs = degeneracy(G, n + 1, i, degeneracy(G, n, j, tup))
                    rhs = degeneracy(G, n + 1, j + 1, degeneracy(G, n, i, tup))
                    if lhs != rhs:
                        bad.append(f"deg-deg fails: n={n} i={i} j={j} {tup}")
            # mixed identities e_i eta_j
            for j in range(n + 1):
                dg = degeneracy(G, n, j, tup)
                for i in range(n + 2):
                    if i < j:
                        lhs = face(G, n + 1, i, dg)
                        if n >= 1:
                            rhs = degeneracy(G, n - 1, j - 1, face(G, n, i, tup))
                            if lhs != rhs:
                                bad.append(f"mixed fails: n={n} i={i} j={j}")
                    elif i > j + 1:
                        lhs = face(G, n + 1, i, dg)
                        if n >= 1:
                            rhs = degeneracy(G, n - 1, j, face(G, n, i - 1, tup))
                            if lhs != rhs:
                                bad.append(f"mixed fails: n={n} i={i} j={j}")
    return bad
