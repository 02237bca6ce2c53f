"""Exact linear algebra over the rationals.

Everything here is exact: scalars are ``fractions.Fraction``, vectors are
tuples of Fractions, and the answers carry no rounding whatsoever.  The
workhorse is a sparse fraction-free row reduction (denominators cleared per
row, Bareiss-style cross-multiplication, rows kept primitive).  For large
systems a multimodular accelerator computes the same reduced echelon form from
images modulo word-sized primes and then *proves* the answer exact: every
reconstructed kernel vector is verified against the original integer rows, and
the pivot pattern is certified by the echelon zero structure.  On any failure
the accelerator adds primes or falls back to the pure path, so both paths
return bit-identical results.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Optional, Sequence

import numpy as np

Vec = tuple[Fraction, ...]

_FAST_MIN_COLS = 56
_FAST_MIN_CELLS = 60_000


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class Mat:
    """Sparse rational matrix: explicit zeros are never stored."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, data: Optional[dict] = None):
        self.rows = rows
        self.cols = cols
        self._data = {}
        if data:
            for (i, j), v in data.items():
                v = _frac(v)
                if v:
                    if not (0 <= i < rows and 0 <= j < cols):
                        raise ValueError(f"entry ({i},{j}) outside {rows}x{cols}")
                    self._data[(i, j)] = v

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "Mat":
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        data = {}
        for i, row in enumerate(rows):
            if len(row) != nc:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                v = _frac(v)
                if v:
                    data[(i, j)] = v
        return cls(nr, nc, data)

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls(n, n, {(i, i): Fraction(1) for i in range(n)})

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Mat":
        return cls(rows, cols)

    def entry(self, i: int, j: int) -> Fraction:
        return self._data.get((i, j), Fraction(0))

    def items(self):
        return self._data.items()

    @property
    def nnz(self) -> int:
        return len(self._data)

    def row_dicts(self) -> list[dict[int, Fraction]]:
        out: list[dict[int, Fraction]] = [dict() for _ in range(self.rows)]
        for (i, j), v in self._data.items():
            out[i][j] = v
        return out

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), v in self._data.items():
            out[i][j] = v
        return out

    def transpose(self) -> "Mat":
        return Mat(self.cols, self.rows,
                   {(j, i): v for (i, j), v in self._data.items()})

    def matvec(self, v: Sequence) -> Vec:
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        acc = [Fraction(0)] * self.rows
        for (i, j), a in self._data.items():
            if v[j]:
                acc[i] += a * _frac(v[j])
        return tuple(acc)

    def is_symmetric(self) -> bool:
        if self.rows != self.cols:
            return False
        for (i, j), v in self._data.items():
            if self._data.get((j, i), Fraction(0)) != v:
                return False
        return True

    def __eq__(self, other) -> bool:
        return (isinstance(other, Mat) and self.rows == other.rows
                and self.cols == other.cols and self._data == other._data)

    def __repr__(self) -> str:
        return f"Mat({self.rows}x{self.cols}, nnz={self.nnz})"


@dataclass(frozen=True)
class Signature:
    """Inertia of a symmetric form: counts of +, -, 0 eigenvalue signs."""

    n_plus: int
    n_minus: int
    n_zero: int

    @property
    def dimension(self) -> int:
        return self.n_plus + self.n_minus + self.n_zero

    @property
    def character(self) -> int:
        return self.n_plus - self.n_minus


# ---------------------------------------------------------------------------
# integer row utilities
# ---------------------------------------------------------------------------

def _int_rows(m: Mat) -> list[dict[int, int]]:
    """Clear denominators row by row; each row becomes a primitive int dict."""
    rows: list[dict[int, Fraction]] = [dict() for _ in range(m.rows)]
    for (i, j), v in m.items():
        rows[i][j] = v
    out = []
    for row in rows:
        if not row:
            continue
        den = 1
        for v in row.values():
            den = den * v.denominator // gcd(den, v.denominator)
        ints = {j: int(v * den) for j, v in row.items()}
        g = 0
        for v in ints.values():
            g = gcd(g, v)
        if g > 1:
            ints = {j: v // g for j, v in ints.items()}
        out.append(ints)
    return out


def _normalize_int_row(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
    if g > 1:
        return {j: v // g for j, v in row.items()}
    return row


def _row_combine(row: dict[int, int], rv: int, prow: dict[int, int], pv: int):
    """Return the primitive form of ``pv*row - rv*prow``."""
    new = {}
    for j, a in row.items():
        b = prow.get(j)
        val = a * pv - rv * b if b is not None else a * pv
        if val:
            new[j] = val
    for j, b in prow.items():
        if j not in row:
            new[j] = -rv * b
    return _normalize_int_row(new)


def _rref_int_sparse(rows: list[dict[int, int]], ncols: int):
    """Deterministic fraction-free RREF of integer sparse rows.

    Pivot choice per column: smallest magnitude entry, ties broken by row
    arrival order.  Returns (pivcols, rational RREF rows, pivots scaled to 1).
    """
    active = [dict(r) for r in rows if r]
    order = list(range(len(active)))
    pivcols: list[int] = []
    pivrows: list[dict[int, int]] = []
    for c in range(ncols):
        best = None
        for idx in order:
            v = active[idx].get(c)
            if v:
                key = (abs(v), idx)
                if best is None or key < best[0]:
                    best = (key, idx)
        if best is None:
            continue
        pidx = best[1]
        prow = active[pidx]
        order.remove(pidx)
        pv = prow[c]
        for idx in order:
            rv = active[idx].get(c)
            if rv:
                active[idx] = _row_combine(active[idx], rv, prow, pv)
        for k, orow in enumerate(pivrows):
            rv = orow.get(c)
            if rv:
                pivrows[k] = _row_combine(orow, rv, prow, pv)
        pivcols.append(c)
        pivrows.append(prow)
    rat_rows = []
    for c, row in zip(pivcols, pivrows):
        pv = Fraction(row[c])
        rat_rows.append({j: Fraction(v) / pv for j, v in row.items()})
    return pivcols, rat_rows


# ---------------------------------------------------------------------------
# multimodular accelerator
# ---------------------------------------------------------------------------
#
# Images are taken modulo primes just below 2**20 so that panel updates can
# run through BLAS float64 matmuls while staying exactly representable
# (residue products < 2**40, panel sums < 2**47 < 2**53).  Nothing modular is
# ever trusted on its own: reconstructed kernels are re-verified against the
# original integer rows, and failures fall back to the pure path.

_PANEL = 96
_CHUNK = 2048


def _small_primes(n: int) -> list[int]:
    out = []
    cand = 2 ** 20 - 3
    while len(out) < n:
        c = cand
        is_p = c % 2 == 1
        d = 3
        while is_p and d * d <= c:
            if c % d == 0:
                is_p = False
            d += 2
        if is_p:
            out.append(c)
        cand -= 2
    return out


_PRIMES = _small_primes(64)


def _crt_pair(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int]:
    g, inv = 0, pow(m1, -1, m2)
    t = ((r2 - r1) * inv) % m2
    return r1 + m1 * t, m1 * m2


def _rat_reconstruct(u: int, m: int) -> Optional[Fraction]:
    """Wang rational reconstruction of u mod m; None if no small candidate."""
    u %= m
    bound = isqrt((m - 1) // 2)
    r0, r1 = m, u
    t0, t1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if r1 == 0 or abs(t1) > bound or gcd(r1, abs(t1)) != 1:
        return None
    if t1 < 0:
        r1, t1 = -r1, -t1
    return Fraction(r1, t1)


class _ModpRref:
    """Streaming RREF mod p with panel-blocked float64 updates.

    The stored rows form a genuine reduced row echelon form after every
    insertion: each new pivot column is eliminated from every stored row
    (rows whose pivot is larger are automatically zero there), so incoming
    rows reduced against the store have their leading entry at a true new
    pivot column.
    """

    def __init__(self, ncols: int, p: int):
        self.ncols = ncols
        self.p = p
        self.r = np.zeros((ncols, ncols), dtype=np.int64)
        self.nrows = 0
        self.pivcols: list[int] = []
        self.pivset: set[int] = set()

    def _reduce_panelwise(self, c: np.ndarray) -> np.ndarray:
        p = self.p
        for s in range(0, self.nrows, _PANEL):
            e = min(s + _PANEL, self.nrows)
            cols = self.pivcols[s:e]
            f = c[:, cols]
            if not f.any():
                continue
            c = c - (f.astype(np.float64)
                     @ self.r[s:e].astype(np.float64)).astype(np.int64)
            c %= p
        return c

    def feed(self, c: np.ndarray) -> None:
        p = self.p
        c = np.mod(c, p)
        if self.nrows:
            c = self._reduce_panelwise(c)
        for col in range(self.ncols):
            if col in self.pivset:
                continue
            colvals = c[:, col]
            nz = np.flatnonzero(colvals)
            if nz.size == 0:
                continue
            r0 = int(nz[0])
            inv = pow(int(c[r0, col]), p - 2, p)
            row = (c[r0] * inv) % p
            rest = nz[1:]
            if rest.size:
                c[rest] = (c[rest] - np.outer(colvals[rest], row)) % p
            c[r0] = 0
            fac = self.r[:self.nrows, col]
            hit = np.flatnonzero(fac)
            if hit.size:
                self.r[hit] = (self.r[hit] - np.outer(fac[hit], row)) % p
            self.r[self.nrows] = row
            self.nrows += 1
            self.pivcols.append(col)
            self.pivset.add(col)

    def finish(self) -> tuple[list[int], np.ndarray]:
        """Return (sorted pivcols, RREF rows mod p in pivot order)."""
        order = sorted(range(self.nrows), key=lambda t: self.pivcols[t])
        piv = [self.pivcols[t] for t in order]
        return piv, self.r[order] if order else np.zeros((0, self.ncols),
                                                         dtype=np.int64)


def _kernel_fast(int_rows: list[dict[int, int]], ncols: int):
    """Multimodular kernel with exact verification; None if not applicable."""
    nnz = sum(len(r) for r in int_rows)
    if nnz == 0:
        return [tuple(Fraction(1 if j == f else 0) for j in range(ncols))
                for f in range(ncols)]
    maxval = max(abs(v) for r in int_rows for v in r.values())
    if maxval >= 2 ** 62:
        return None
    from scipy import sparse

    ri = np.fromiter((i for i, r in enumerate(int_rows) for _ in r),
                     dtype=np.int64, count=nnz)
    ci = np.fromiter((j for r in int_rows for j in r), dtype=np.int64, count=nnz)
    vals = np.fromiter((v for r in int_rows for v in r.values()),
                       dtype=np.int64, count=nnz)
    a = sparse.csr_matrix((vals, (ri, ci)), shape=(len(int_rows), ncols),
                          dtype=np.int64)

    images: dict[int, tuple[tuple[int, ...], np.ndarray]] = {}
    used = 0
    while used < len(_PRIMES):
        batch = _PRIMES[used:used + 3]
        used += len(batch)
        for p in batch:
            red = _ModpRref(ncols, p)
            for s in range(0, a.shape[0], _CHUNK):
                red.feed(a[s:s + _CHUNK].toarray().astype(np.int64))
            piv, r = red.finish()
            images[p] = (tuple(piv), r)
        # pick the pivot pattern with maximal rank, then leftmost columns
        best = max(images.values(), key=lambda t: (len(t[0]), [-c for c in t[0]]))
        pattern = best[0]
        agree = [(p, r) for p, (pv, r) in images.items() if pv == pattern]
        if len(agree) < min(2, len(images)):
            continue
        rank = len(pattern)
        free = [j for j in range(ncols) if j not in set(pattern)]
        if not free:
            return []  # rank mod p certifies full column rank over Q
        # CRT-combine the free-column entries and rationally reconstruct
        ok = True
        entries: dict[tuple[int, int], Fraction] = {}
        fidx = {f: t for t, f in enumerate(free)}
        for t in range(rank):
            for f in free:
                res, mod = 0, 1
                for p, r in agree:
                    res, mod = _crt_pair(res, mod, int(r[t, f]), p)
                if res == 0:
                    continue
                val = _rat_reconstruct(res, mod)
                if val is None:
                    ok = False
                    break
                entries[(t, f)] = val
            if not ok:
                break
        if not ok:
            continue
        # echelon zero pattern: nothing left of a row's pivot
        if any(f < pattern[t] and (t, f) in entries
               for t in range(rank) for f in free):
            continue
        kernel = []
        for f in free:
            v = [Fraction(0)] * ncols
            v[f] = Fraction(1)
            for t in range(rank):
                e = entries.get((t, f))
                if e:
                    v[pattern[t]] = -e
            kernel.append(tuple(v))
        if _verify_kernel(a, int_rows, kernel):
            return kernel
    return None


def _verify_kernel(a, int_rows, kernel) -> bool:
    """Exact check that every candidate vector kills every integer row."""
    if not kernel:
        return True
    ncols = len(kernel[0])
    cleared = []
    for v in kernel:
        den = 1
        for x in v:
            den = den * x.denominator // gcd(den, x.denominator)
        cleared.append([int(x * den) for x in v])
    maxk = max((abs(x) for col in cleared for x in col), default=0)
    l1 = max((sum(abs(v) for v in r.values()) for r in int_rows), default=0)
    if maxk and l1 and maxk < 2 ** 62 // max(l1, 1):
        k = np.array(cleared, dtype=np.int64).T
        return not (a @ k).any()
    for row in int_rows:
        for col in cleared:
            if sum(v * col[j] for j, v in row.items()) != 0:
                return False
    return True


def _kernel_from_rref(pivcols: list[int], rat_rows: list[dict[int, Fraction]],
                      ncols: int) -> list[Vec]:
    pivset = set(pivcols)
    free = [j for j in range(ncols) if j not in pivset]
    out = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for c, row in zip(pivcols, rat_rows):
            e = row.get(f)
            if e:
                v[c] = -e
        out.append(tuple(v))
    return out


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def kernel_basis(m: Mat) -> list[Vec]:
    """Reduced-echelon basis of the rational null space of ``m``."""
    int_rows = _int_rows(m)
    ncols = m.cols
    if ncols == 0:
        return []
    if ncols >= _FAST_MIN_COLS and len(int_rows) * ncols >= _FAST_MIN_CELLS:
        fast = _kernel_fast(int_rows, ncols)
        if fast is not None:
            return fast
    pivcols, rat_rows = _rref_int_sparse(int_rows, ncols)
    return _kernel_from_rref(pivcols, rat_rows, ncols)


def rank(m: Mat) -> int:
    """Rank over Q."""
    return m.cols - len(kernel_basis(m))


def solve_linear(m: Mat, b: Sequence) -> Optional[Vec]:
    """Some exact solution of m.x = b, or None when inconsistent."""
    if len(b) != m.rows:
        raise ValueError("right-hand side has wrong length")
    data = dict(m.items())
    for i, val in enumerate(b):
        val = _frac(val)
        if val:
            data[(i, m.cols)] = -val
    aug = Mat(m.rows, m.cols + 1, data)
    for v in kernel_basis(aug):
        if v[m.cols] != 0:
            s = v[m.cols]
            return tuple(x / s for x in v[:m.cols])
    return None


def symmetric_signature(s: Mat) -> Signature:
    """Exact inertia of a symmetric rational matrix over R.

    Congruence Schur-complement recursion on a denominator-cleared integer
    copy; a sign flag tracks pivot rescaling so no fractions ever appear.
    """
    if s.rows != s.cols:
        raise ValueError("signature needs a square matrix")
    if not s.is_symmetric():
        raise ValueError("matrix is not symmetric")
    n = s.rows
    if n == 0:
        return Signature(0, 0, 0)
    den = 1
    for _, v in s.items():
        den = den * v.denominator // gcd(den, v.denominator)
    a = [[int(s.entry(i, j) * den) for j in range(n)] for i in range(n)]
    n_plus = n_minus = n_zero = 0
    sign = 1
    live = list(range(n))
    while live:
        diag = [(abs(a[i][i]), i) for i in live if a[i][i] != 0]
        if not diag:
            off = None
            for x in live:
                for y in live:
                    if y > x and a[x][y] != 0:
                        off = (x, y)
                        break
                if off:
                    break
            if off is None:
                n_zero += len(live)
                break
            x, y = off
            for j in live:
                a[x][j] += a[y][j]
            for j in live:
                a[j][x] += a[j][y]
            continue
        _, i = min(diag)
        d = a[i][i]
        if sign * d > 0:
            n_plus += 1
        else:
            n_minus += 1
        rest = [j for j in live if j != i]
        col = {j: a[j][i] for j in rest}
        for x in rest:
            cx = col[x]
            ax = a[x]
            ai = a[i]
            for y in rest:
                ax[y] = d * ax[y] - cx * ai[y]
        if d < 0:
            sign = -sign
        g = 0
        for x in rest:
            for y in rest:
                g = gcd(g, a[x][y])
            if g == 1:
                break
        if g > 1:
            for x in rest:
                ax = a[x]
                for y in rest:
                    ax[y] //= g
        live = rest
    return Signature(n_plus, n_minus, n_zero)


def _krylov_relation(mul, n: int, v0: Sequence[int]) -> list[Fraction]:
    """Monic polynomial p (low-to-high coefficients) with p(M)v0 = 0.

    ``mul`` maps a tuple vector to M times that vector; dependence is found
    by exact incremental reduction of the Krylov sequence.
    """
    vecs = [tuple(v0)]
    basis: list[tuple[int, dict[int, Fraction]]] = []
    coords: list[list[Fraction]] = []  # basis rows in terms of raw vectors

    def insert(vec) -> Optional[list[Fraction]]:
        work = {j: _frac(x) for j, x in enumerate(vec) if x}
        coeff = [Fraction(0)] * (len(vecs) - 1)
        for t, (piv, row) in enumerate(basis):
            c = work.get(piv)
            if not c:
                continue
            for j, rv in row.items():
                nv = work.get(j, Fraction(0)) - c * rv
                if nv:
                    work[j] = nv
                elif j in work:
                    del work[j]
            for s, cs in enumerate(coords[t]):
                coeff[s] += c * cs
        if not work:
            return coeff
        piv = min(work)
        pv = work[piv]
        raw = [-cs / pv for cs in coeff] + [Fraction(1) / pv]
        basis.append((piv, {j: x / pv for j, x in work.items()}))
        coords.append(raw)
        return None

    insert(vecs[0])
    while True:
        vecs.append(tuple(mul(vecs[-1])))
        dep = insert(vecs[-1])
        if dep is not None:
            poly = [-c for c in dep]
            poly.append(Fraction(1))
            return poly


def _poly_eval_matvec(poly: Sequence[Fraction], mul, vec: Vec) -> Vec:
    """Evaluate p(M)·vec by Horner on vectors."""
    acc = [poly[-1] * x for x in vec]
    for c in reversed(poly[:-1]):
        acc = list(mul(acc))
        for j, x in enumerate(vec):
            if x:
                acc[j] += c * x
    return tuple(acc)


def rational_eigenspaces(m: Mat) -> list[tuple[Fraction, list[Vec]]]:
    """All rational eigenvalues of m with exact eigenspace bases.

    Candidates come from the rational roots of the minimal polynomial of a
    denominator-cleared copy (built from Krylov relations and certified by
    checking p(M) kills every basis vector); each candidate is confirmed via
    kernel_basis(m - lambda*I).  Irrational eigenvalues are not reported.
    """
    if m.rows != m.cols:
        raise ValueError("eigenspaces need a square matrix")
    n = m.rows
    if n == 0:
        return []
    den = 1
    for _, v in m.items():
        den = den * v.denominator // gcd(den, v.denominator)
    rows: list[dict[int, int]] = [dict() for _ in range(n)]
    for (i, j), v in m.items():
        rows[i][j] = int(v * den)

    def mul(vec):
        out = [0] * n
        for i, row in enumerate(rows):
            acc = 0
            for j, val in row.items():
                x = vec[j]
                if x:
                    acc += val * x
            out[i] = acc
        return out

    import sympy

    poly = _krylov_relation(mul, n, [1] + [0] * (n - 1)) if n else []
    # certify completeness: extend by any basis vector the candidate misses
    for i in range(n):
        e = tuple(Fraction(1 if j == i else 0) for j in range(n))
        if any(_poly_eval_matvec(poly, mul, e)):
            extra = _krylov_relation(mul, n, [1 if j == i else 0 for j in range(n)])
            x = sympy.Symbol("x")
            p1 = sympy.Poly([sympy.Rational(c.numerator, c.denominator)
                             for c in reversed(poly)], x)
            p2 = sympy.Poly([sympy.Rational(c.numerator, c.denominator)
                             for c in reversed(extra)], x)
            lcm = sympy.lcm(p1, p2)
            cs = list(reversed(lcm.all_coeffs()))
            lead = cs[-1]
            poly = [Fraction(int(sympy.numer(c / lead)),
                             int(sympy.denom(c / lead))) for c in cs]
    x = sympy.Symbol("x")
    ip = sympy.Poly([sympy.Rational(c.numerator, c.denominator)
                     for c in reversed(poly)], x)
    roots = ip.ground_roots()
    out = []
    for root in roots:
        lam_scaled = Fraction(int(sympy.numer(root)), int(sympy.denom(root)))
        lam = lam_scaled / den
        shift = Mat(n, n, {**dict(m.items()),
                           **{(i, i): m.entry(i, i) - lam for i in range(n)}})
        basis = kernel_basis(shift)
        if basis:
            out.append((lam, basis))
    out.sort(key=lambda t: t[0])
    return out


def echelon_vectors(vectors: Iterable[Sequence], ncols: int) -> list[Vec]:
    """Canonical RREF basis of the span of the given vectors."""
    rows = []
    for v in vectors:
        den = 1
        fr = [_frac(x) for x in v]
        for x in fr:
            den = den * x.denominator // gcd(den, x.denominator)
        row = {j: int(x * den) for j, x in enumerate(fr) if x}
        if row:
            rows.append(_normalize_int_row(row))
    pivcols, rat = _rref_int_sparse(rows, ncols)
    out = []
    for row in rat:
        v = [Fraction(0)] * ncols
        for j, val in row.items():
            v[j] = val
        out.append(tuple(v))
    return out
