"""Lie algebras as sparse structure-constant tables.

Brackets are stored for i < j only; [x, x] = 0 and antisymmetry are built
into the representation.  The Jacobi identity is *verified*, never assumed:
``verify_lie`` checks it exactly, either on every basis triple or on a seeded
random sample, using denominator-cleared int64 tensors so that a million
triples stay affordable without ever leaving exact integer arithmetic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Optional, Sequence

import numpy as np

from . import exactlin
from .composition import StructureAlgebra
from .exactlin import Mat, Signature, Vec, _frac
from .report import Report

CENTROID_DIM_LIMIT = 80


@dataclass(frozen=True)
class Subspace:
    """Subspace of Q^n held in canonical reduced-echelon form."""

    ambient: int
    rows: tuple[Vec, ...]

    @classmethod
    def from_vectors(cls, vectors, ambient: int) -> "Subspace":
        return cls(ambient, tuple(exactlin.echelon_vectors(vectors, ambient)))

    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        return cls(ambient, ())

    @classmethod
    def full(cls, ambient: int) -> "Subspace":
        eye = [tuple(Fraction(1 if i == j else 0) for j in range(ambient))
               for i in range(ambient)]
        return cls(ambient, tuple(eye))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def contains(self, v: Sequence) -> bool:
        work = {j: _frac(x) for j, x in enumerate(v) if x}
        for row in self.rows:
            piv = next(j for j, x in enumerate(row) if x)
            c = work.get(piv)
            if c:
                for j, rv in enumerate(row):
                    if rv:
                        nv = work.get(j, Fraction(0)) - c * rv
                        if nv:
                            work[j] = nv
                        elif j in work:
                            del work[j]
        return not work

    def direct_sum(self, other: "Subspace") -> "Subspace":
        return Subspace.from_vectors(list(self.rows) + list(other.rows),
                                     self.ambient)


class LieAlgebra:
    """dim, basis names, and the sparse antisymmetric bracket table."""

    def __init__(self, dim: int, basis_names: Sequence[str],
                 brackets: dict[tuple[int, int], dict[int, Fraction]]):
        if len(basis_names) != dim:
            raise ValueError("basis name count != dim")
        self.dim = dim
        self.basis_names = tuple(basis_names)
        table: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j), tab in brackets.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise ValueError("bracket index out of range")
            if i >= j:
                raise ValueError("brackets must be stored with i < j")
            clean = {k: _frac(v) for k, v in tab.items() if v}
            if clean:
                table[(i, j)] = clean
        self.brackets = table
        self._killing: Optional[Mat] = None
        self._signature: Optional[Signature] = None
        self._int_cache = None
        self._ad_cache = None

    # -- basic bracket access -------------------------------------------------

    def bracket_basis(self, i: int, j: int) -> dict[int, Fraction]:
        if i == j:
            return {}
        if i < j:
            return self.brackets.get((i, j), {})
        tab = self.brackets.get((j, i), {})
        return {k: -v for k, v in tab.items()}

    def bracket_vec(self, u: Sequence, v: Sequence) -> Vec:
        acc = [Fraction(0)] * self.dim
        for (i, j), tab in self.brackets.items():
            c = _frac(u[i]) * _frac(v[j]) - _frac(u[j]) * _frac(v[i])
            if c:
                for k, val in tab.items():
                    acc[k] += c * val
        return tuple(acc)

    def ad_matrix(self, x: Sequence) -> Mat:
        data = {}
        for (i, j), tab in self.brackets.items():
            xi, xj = _frac(x[i]), _frac(x[j])
            if xi:
                for k, val in tab.items():
                    data[(k, j)] = data.get((k, j), Fraction(0)) + xi * val
            if xj:
                for k, val in tab.items():
                    data[(k, i)] = data.get((k, i), Fraction(0)) - xj * val
        return Mat(self.dim, self.dim, data)

    def basis_vector(self, i: int) -> Vec:
        return tuple(Fraction(1 if j == i else 0) for j in range(self.dim))

    # -- denominator-cleared views --------------------------------------------

    def _cleared(self):
        """(den, numerator table, max |numerator|) with constants = num/den."""
        if self._int_cache is None:
            den = 1
            for tab in self.brackets.values():
                for v in tab.values():
                    den = den * v.denominator // gcd(den, v.denominator)
            table = {}
            mx = 0
            for (i, j), tab in self.brackets.items():
                entry = [(k, int(v * den)) for k, v in sorted(tab.items())]
                table[(i, j)] = entry
                mx = max(mx, max(abs(n) for _, n in entry))
            self._int_cache = (den, table, mx)
        return self._int_cache

    def _ad_tensor(self) -> np.ndarray:
        """int64 tensor AD with AD[i] @ v = [e_i, v] (numerators only)."""
        if self._ad_cache is None:
            _, table, mx = self._cleared()
            if mx >= 2 ** 31:
                raise OverflowError("bracket numerators too large for tensor")
            ad = np.zeros((self.dim, self.dim, self.dim), dtype=np.int64)
            for (i, j), entry in table.items():
                for k, n in entry:
                    ad[i, k, j] = n
                    ad[j, k, i] = -n
            self._ad_cache = ad
        return self._ad_cache


# ---------------------------------------------------------------------------
# construction from a structure algebra
# ---------------------------------------------------------------------------

def derivation_algebra(a: StructureAlgebra):
    """Der(a) as a Lie algebra plus its action matrices on a.

    Solves the Leibniz system D(e_i e_j) = D(e_i) e_j + e_i D(e_j) over all
    basis pairs; the unknown is the dim x dim matrix D, flattened row-major.
    """
    n = a.dim
    colmult: list[list[list[tuple[int, Fraction]]]] = \
        [[[] for _ in range(n)] for _ in range(n)]
    rowmult: list[list[list[tuple[int, Fraction]]]] = \
        [[[] for _ in range(n)] for _ in range(n)]
    for (k, j), tab in a.mult.items():
        for c, v in tab.items():
            colmult[j][c].append((k, v))
            rowmult[k][c].append((j, v))
    data: dict[tuple[int, int], Fraction] = {}
    r = 0
    for i in range(n):
        for j in range(n):
            prod = a.basis_product(i, j)
            for c in range(n):
                row: dict[int, Fraction] = {}
                for k, v in colmult[j][c]:
                    col = k * n + i
                    row[col] = row.get(col, Fraction(0)) + v
                for k, v in rowmult[i][c]:
                    col = k * n + j
                    row[col] = row.get(col, Fraction(0)) + v
                for l, v in prod.items():
                    col = c * n + l
                    row[col] = row.get(col, Fraction(0)) - v
                for col, v in row.items():
                    if v:
                        data[(r, col)] = v
                r += 1
    system = Mat(r, n * n, data)
    kernel = exactlin.kernel_basis(system)
    action = [Mat(n, n, {(k, l): vec[k * n + l] for k in range(n)
                         for l in range(n) if vec[k * n + l]})
              for vec in kernel]
    lie = _lie_from_matrix_family(kernel, action, n, "D")
    return lie, action


def _readoff_columns(kernel: list[Vec]) -> list[int]:
    """Recover each reduced-echelon kernel vector's own unit coordinate."""
    cols = []
    for t, v in enumerate(kernel):
        for j, x in enumerate(v):
            if x == 1 and all(kernel[s][j] == 0 for s in range(len(kernel))
                              if s != t):
                cols.append(j)
                break
        else:
            raise AssertionError("kernel basis is not reduced-echelon")
    return cols


def _lie_from_matrix_family(kernel: list[Vec], action: list[Mat], n: int,
                            prefix: str) -> LieAlgebra:
    """Lie algebra structure on a matrix family closed under commutators."""
    dim = len(kernel)
    free = _readoff_columns(kernel)
    dens = []
    mats = []
    mx = 1
    for m in action:
        den = 1
        for _, v in m.items():
            den = den * v.denominator // gcd(den, v.denominator)
        arr = np.zeros((n, n), dtype=np.int64)
        for (i, j), v in m.items():
            arr[i, j] = int(v * den)
            mx = max(mx, abs(int(v * den)))
        dens.append(den)
        mats.append(arr)
    if mx * mx * n >= 2 ** 62:
        raise OverflowError("derivation matrix entries too large for int64")
    brackets = {}
    rng = random.Random(20260810)
    verify_pairs = set()
    if dim > 1:
        allpairs = dim * (dim - 1) // 2
        want = min(allpairs, 24)
        while len(verify_pairs) < want:
            p = rng.randrange(dim)
            q = rng.randrange(dim)
            if p < q:
                verify_pairs.add((p, q))
    for p in range(dim):
        for q in range(p + 1, dim):
            comm = mats[p] @ mats[q] - mats[q] @ mats[p]
            scale = Fraction(1, dens[p] * dens[q])
            tab = {}
            for t, f in enumerate(free):
                val = int(comm[f // n, f % n]) * scale
                if val:
                    tab[t] = val
            if tab:
                brackets[(p, q)] = tab
            if (p, q) in verify_pairs:
                recon = [Fraction(0)] * (n * n)
                for t, cval in tab.items():
                    for idx, kv in enumerate(kernel[t]):
                        if kv:
                            recon[idx] += cval * kv
                for i in range(n):
                    for j in range(n):
                        if recon[i * n + j] != Fraction(int(comm[i, j])) * scale:
                            raise AssertionError(
                                "commutator does not close in the kernel basis")
    names = [f"{prefix}{t}" for t in range(dim)]
    return LieAlgebra(dim, names, brackets)


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

def verify_lie(l: LieAlgebra, mode: str = "full", sample: int = 0,
               seed: int = 0) -> Report:
    """Exact Jacobi check on all basis triples or a seeded random sample."""
    rep = Report(f"jacobi dim {l.dim} ({mode})")
    n = l.dim
    if n < 3:
        rep.check("jacobi", True, "fewer than 3 basis vectors")
        return rep
    ad = l._ad_tensor()
    _, _, mx = l._cleared()
    # T values are bounded by dim * mx^2; keep safely inside int64
    if mx * mx * n >= 2 ** 62:
        return _verify_lie_pure(l, rep, mode, sample, seed)
    if mode == "full":
        triples = None
        count = n * (n - 1) * (n - 2) // 6
    elif mode == "sample":
        rng = random.Random(seed)
        drawn = []
        while len(drawn) < sample:
            i = rng.randrange(n)
            j = rng.randrange(n)
            k = rng.randrange(n)
            if i != j and j != k and i != k:
                drawn.append((i, j, k))
        triples = np.array(drawn, dtype=np.int64)
        count = len(triples)
    else:
        raise ValueError("mode must be 'full' or 'sample'")

    bad = _jacobi_batch(ad, n, triples)
    if bad is None:
        rep.check(f"jacobi on {count} triples", True,
                  f"seed {seed}" if mode == "sample" else "exhaustive")
    else:
        rep.check(f"jacobi on {count} triples", False,
                  f"first failing triple {bad}")
    return rep


def _jacobi_batch(ad: np.ndarray, n: int, triples):
    """None if the Jacobi sum vanishes on the triples (all i<j<k if None).

    When every intermediate is provably below 2**52 the matmuls run through
    float64 BLAS; IEEE-754 represents such integers exactly, so the zero test
    stays exact.  Otherwise int64 is used.
    """
    if triples is None:
        idx = np.array(list(combinations(range(n), 3)), dtype=np.int64)
    else:
        idx = triples
        if len(idx) == 0:
            return None
    mx = int(np.abs(ad).max()) if ad.size else 0
    use_f64 = mx * mx * n * 4 < 2 ** 52
    adw = ad.astype(np.float64) if use_f64 else ad
    chunk = max(1024, 25_000_000 // max(n, 1))
    for s in range(0, len(idx), chunk):
        part = idx[s:s + chunk]
        ii, jj, kk = part[:, 0], part[:, 1], part[:, 2]
        acc = np.zeros((len(part), n),
                       dtype=np.float64 if use_f64 else np.int64)
        for outer, a, b, sign in ((kk, ii, jj, -1), (ii, jj, kk, -1),
                                  (jj, ii, kk, +1)):
            w = adw[a, :, b]  # rows [e_a, e_b]
            order = np.argsort(outer, kind="stable")
            o_sorted = outer[order]
            bounds = np.flatnonzero(np.diff(o_sorted)) + 1
            starts = np.concatenate(([0], bounds))
            ends = np.concatenate((bounds, [len(o_sorted)]))
            for st, en in zip(starts, ends):
                rows = order[st:en]
                m = adw[int(o_sorted[st])]
                if sign > 0:
                    acc[rows] += w[rows] @ m.T
                else:
                    acc[rows] -= w[rows] @ m.T
        nz = np.flatnonzero(acc.any(axis=1))
        if nz.size:
            t = part[int(nz[0])]
            return (int(t[0]), int(t[1]), int(t[2]))
    return None


def _verify_lie_pure(l: LieAlgebra, rep: Report, mode: str, sample: int,
                     seed: int) -> Report:
    n = l.dim
    if mode == "full":
        triples = combinations(range(n), 3)
    else:
        rng = random.Random(seed)
        triples = (tuple(rng.sample(range(n), 3)) for _ in range(sample))
    count = 0
    for i, j, k in triples:
        count += 1
        ei, ej, ek = l.basis_vector(i), l.basis_vector(j), l.basis_vector(k)
        s1 = l.bracket_vec(l.bracket_vec(ei, ej), ek)
        s2 = l.bracket_vec(l.bracket_vec(ej, ek), ei)
        s3 = l.bracket_vec(l.bracket_vec(ek, ei), ej)
        if any(a + b + c for a, b, c in zip(s1, s2, s3)):
            rep.check(f"jacobi on {count} triples", False,
                      f"first failing triple ({i},{j},{k})")
            return rep
    rep.check(f"jacobi on {count} triples", True, "pure path")
    return rep


# ---------------------------------------------------------------------------
# Killing form
# ---------------------------------------------------------------------------

def killing_form(l: LieAlgebra) -> Mat:
    """kappa(e_i, e_j) by sparse contraction of the structure constants."""
    if l._killing is not None:
        return l._killing
    from scipy import sparse

    n = l.dim
    den, table, mx = l._cleared()
    rows_i, cols_a, vals_a = [], [], []
    rows_j, cols_b, vals_b = [], [], []
    for (i, j), entry in table.items():
        for k, v in entry:
            # ad_i[k, j] = v ; ad_j[k, i] = -v
            rows_i.append(i); cols_a.append(k * n + j); vals_a.append(v)
            rows_i.append(j); cols_a.append(k * n + i); vals_a.append(-v)
            rows_j.append(i); cols_b.append(j * n + k); vals_b.append(v)
            rows_j.append(j); cols_b.append(i * n + k); vals_b.append(-v)
    if not rows_i:
        mat = Mat.zeros(n, n)
        l._killing = mat
        return mat
    nnz_row = max(np.bincount(np.array(rows_i), minlength=n).max(), 1)
    if mx * mx * int(nnz_row) >= 2 ** 62:
        return _killing_pure(l)
    va = sparse.csr_matrix((vals_a, (rows_i, cols_a)), shape=(n, n * n),
                           dtype=np.int64)
    vb = sparse.csr_matrix((vals_b, (rows_j, cols_b)), shape=(n, n * n),
                           dtype=np.int64)
    # kappa_ij = sum_{k,l} ad_i[l,k] ad_j[k,l]: match columns (l,k) <-> (k,l)
    prod = (va @ vb.T).toarray()
    d2 = Fraction(1, den * den)
    mat = Mat(n, n, {(i, j): Fraction(int(prod[i, j])) * d2
                     for i in range(n) for j in range(n) if prod[i, j]})
    l._killing = mat
    _spot_check_invariance(l, mat)
    return mat


def _killing_pure(l: LieAlgebra) -> Mat:
    n = l.dim
    ads = [l.ad_matrix(l.basis_vector(i)).row_dicts() for i in range(n)]
    data = {}
    for i in range(n):
        for j in range(i, n):
            acc = Fraction(0)
            for k, rowk in enumerate(ads[i]):
                adj_rows = ads[j]
                for lidx, v in rowk.items():
                    w = adj_rows[lidx].get(k)
                    if w:
                        acc += v * w
            if acc:
                data[(i, j)] = acc
                if i != j:
                    data[(j, i)] = acc
    mat = Mat(n, n, data)
    l._killing = mat
    _spot_check_invariance(l, mat)
    return mat


def _spot_check_invariance(l: LieAlgebra, kappa: Mat, trials: int = 12,
                           seed: int = 11) -> None:
    rng = random.Random(seed)
    n = l.dim
    if n < 2:
        return

    def kf(u, v):
        acc = Fraction(0)
        for (i, j), val in kappa.items():
            if u[i] and v[j]:
                acc += val * u[i] * v[j]
        return acc

    for _ in range(trials):
        x = tuple(Fraction(rng.randint(-2, 2)) for _ in range(n))
        y = tuple(Fraction(rng.randint(-2, 2)) for _ in range(n))
        z = tuple(Fraction(rng.randint(-2, 2)) for _ in range(n))
        if kf(l.bracket_vec(x, y), z) != kf(x, l.bracket_vec(y, z)):
            raise AssertionError("Killing form is not ad-invariant")


def killing_signature(l: LieAlgebra) -> Signature:
    if l._signature is None:
        l._signature = exactlin.symmetric_signature(killing_form(l))
    return l._signature


# ---------------------------------------------------------------------------
# centralizers, ideals, centroid
# ---------------------------------------------------------------------------

def centralizer(l: LieAlgebra, s: Subspace) -> Subspace:
    """{x in l : [x, v] = 0 for every v in s}, as an echelonized subspace."""
    if s.ambient != l.dim:
        raise ValueError("subspace ambient dimension mismatch")
    n = l.dim
    if s.dim == 0:
        return Subspace.full(n)
    data = {}
    r = 0
    for v in s.rows:
        # rows of the map x -> [x, v]: column i holds [e_i, v]
        cols: dict[int, dict[int, Fraction]] = {}
        for (i, j), tab in l.brackets.items():
            vi, vj = v[i], v[j]
            if vj:
                ci = cols.setdefault(i, {})
                for k, val in tab.items():
                    ci[k] = ci.get(k, Fraction(0)) + vj * val
            if vi:
                cj = cols.setdefault(j, {})
                for k, val in tab.items():
                    cj[k] = cj.get(k, Fraction(0)) - vi * val
        for i, ci in cols.items():
            for k, val in ci.items():
                if val:
                    data[(r + k, i)] = val
        r += n
    system = Mat(r, n, data)
    return Subspace.from_vectors(exactlin.kernel_basis(system), n)


class _IncrementalSpan:
    """Exact incremental span with primitive integer reduced rows."""

    def __init__(self, ambient: int):
        self.ambient = ambient
        self.rows: list[dict[int, int]] = []
        self.pivots: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.rows)

    def insert(self, vec: Sequence) -> bool:
        den = 1
        fr = [_frac(x) for x in vec]
        for x in fr:
            den = den * x.denominator // gcd(den, x.denominator)
        work = {j: int(x * den) for j, x in enumerate(fr) if x}
        for piv, row in zip(self.pivots, self.rows):
            rv = work.get(piv)
            if rv:
                pv = row[piv]
                new = {}
                for j, a in work.items():
                    b = row.get(j)
                    val = a * pv - rv * b if b is not None else a * pv
                    if val:
                        new[j] = val
                for j, b in row.items():
                    if j not in work:
                        new[j] = -rv * b
                work = exactlin._normalize_int_row(new)
        if not work:
            return False
        self.pivots.append(min(work))
        self.rows.append(work)
        return True

    def vectors(self) -> list[Vec]:
        out = []
        for row in self.rows:
            v = [Fraction(0)] * self.ambient
            for j, x in row.items():
                v[j] = Fraction(x)
            out.append(tuple(v))
        return out


def ideal_generated(l: LieAlgebra, x: Sequence) -> Subspace:
    """Smallest ad-closed subspace containing x, by bracketing to fixpoint.

    A full-rank certificate modulo a word-sized prime short-circuits the
    closure for simple algebras; rank mod p never exceeds the rational rank,
    so the shortcut is exact.
    """
    vx = tuple(_frac(v) for v in x)
    if not any(vx):
        raise ValueError("ideal generator must be nonzero")
    n = l.dim
    modp = exactlin._ModpRref(n, exactlin._PRIMES[0])

    def clear(v):
        den = 1
        for t in v:
            den = den * t.denominator // gcd(den, t.denominator)
        return np.array([int(t * den) for t in v], dtype=np.int64).reshape(1, n)

    modp.feed(clear(vx))
    frontier = [vx]
    while frontier and modp.nrows < n:
        new = []
        for v in frontier:
            for i in range(n):
                w = l.bracket_vec(l.basis_vector(i), v)
                if any(w):
                    before = modp.nrows
                    modp.feed(clear(w))
                    if modp.nrows > before:
                        new.append(w)
        frontier = new
    if modp.nrows == n:
        return Subspace.full(n)
    # exact fixpoint for the general (non-simple) case
    span = _IncrementalSpan(n)
    span.insert(vx)
    frontier = [vx]
    while frontier:
        new = []
        for v in frontier:
            for i in range(n):
                w = l.bracket_vec(l.basis_vector(i), v)
                if any(w) and span.insert(w):
                    new.append(w)
        frontier = new
    return Subspace.from_vectors(span.vectors(), n)


def _centroid_system_rows(l: LieAlgebra, lefts: Sequence[int]):
    """Rows of phi[e_i,e_j] = [phi e_i, e_j] for i in lefts, all j != i."""
    n = l.dim
    data = {}
    r = 0
    for i in lefts:
        for j in range(n):
            if i == j:
                continue
            bij = l.bracket_basis(i, j)
            for c in range(n):
                row: dict[int, Fraction] = {}
                for lidx, v in bij.items():
                    col = c * n + lidx
                    row[col] = row.get(col, Fraction(0)) + v
                # [phi e_i, e_j]_c = sum_r phi[r,i] * bracket(r,j)_c
                for ridx in range(n):
                    w = l.bracket_basis(ridx, j).get(c)
                    if w:
                        col = ridx * n + i
                        row[col] = row.get(col, Fraction(0)) - w
                for col, v in row.items():
                    if v:
                        data[(r, col)] = v
                r += 1
    return Mat(r, n * n, data)


def _phi_commutes(l: LieAlgebra, phi: list[list[Fraction]]) -> bool:
    n = l.dim
    for i in range(n):
        phi_ei = tuple(phi[r][i] for r in range(n))
        for j in range(n):
            if i == j:
                continue
            bij = l.bracket_basis(i, j)
            lhs = [Fraction(0)] * n
            for lidx, v in bij.items():
                for c in range(n):
                    if phi[c][lidx]:
                        lhs[c] += v * phi[c][lidx]
            rhs = l.bracket_vec(phi_ei, l.basis_vector(j))
            if tuple(lhs) != rhs:
                return False
    return True


def centroid_dimension(l: LieAlgebra) -> int:
    """dim {phi in End(l) : phi[x,y] = [phi x, y] for all basis x, y}.

    Equals 1 for central simple algebras with nondegenerate Killing form.
    Guarded to dim <= 80: beyond that the system has too many unknowns, use
    the ideal_generated certificate instead.
    """
    n = l.dim
    if n > CENTROID_DIM_LIMIT:
        raise ValueError(
            f"centroid solver is limited to dim <= {CENTROID_DIM_LIMIT}; "
            "use ideal_generated as the simplicity certificate instead")
    if n == 0:
        return 0
    if n <= 30:
        lefts = list(range(n))
    else:
        lefts = [0, 1]
    while True:
        system = _centroid_system_rows(l, lefts)
        kernel = exactlin.kernel_basis(system)
        mats = [[[vec[r * n + c] for c in range(n)] for r in range(n)]
                for vec in kernel]
        bad = [t for t, phi in enumerate(mats) if not _phi_commutes(l, phi)]
        if not bad:
            return len(kernel)
        remaining = [i for i in range(n) if i not in lefts]
        if not remaining:
            return len(kernel)
        lefts = lefts + remaining[:2]
