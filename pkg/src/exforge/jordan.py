"""Cubic Jordan algebras of 3x3 hermitian matrices over a composition algebra.

H3(C, rho) is the set of x in M3(C) with conj(x)^T = rho x rho^-1 for a
diagonal rho; the product is x o y = (xy + yx)/2.  The basis is the three
diagonal idempotents E0, E1, E2 followed by, for each pair (i, j) with i < j
and each coordinate basis element c, the matrix with c in slot (i, j) and the
rho-forced conjugate in (j, i).  Dimension is 3 + 3*dim(C).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Sequence

from .composition import CompositionAlgebra, StructureAlgebra
from .exactlin import Mat, Vec, _frac
from .report import Report

_PAIRS = ((0, 1), (0, 2), (1, 2))

FULL_CHECK_MAX_DIM = 15
SAMPLED_CHECK_COUNT = 100_000
SAMPLED_CHECK_SEED = 90210


@dataclass(frozen=True)
class JordanAlgebra:
    alg: StructureAlgebra
    coord: CompositionAlgebra
    rho: tuple[Fraction, Fraction, Fraction]
    trace_vec: Vec
    trace_form: Mat = field(repr=False)

    @property
    def dim(self) -> int:
        return self.alg.dim

    def trace(self, x: Sequence) -> Fraction:
        return sum((_frac(v) * t for v, t in zip(x, self.trace_vec)
                    if v and t), Fraction(0))

    def tform(self, x: Sequence, y: Sequence) -> Fraction:
        acc = Fraction(0)
        for (i, j), v in self.trace_form.items():
            if x[i] and y[j]:
                acc += v * _frac(x[i]) * _frac(y[j])
        return acc

    def product(self, x: Sequence, y: Sequence) -> Vec:
        return self.alg.product(x, y)

    def unit(self) -> Vec:
        return self.alg.unit


class _HMat:
    """3x3 matrix over the coordinate algebra, entries as coordinate tuples."""

    __slots__ = ("c", "e")

    def __init__(self, c: CompositionAlgebra, entries=None):
        self.c = c
        zero = tuple(Fraction(0) for _ in range(c.dim))
        self.e = [[zero, zero, zero] for _ in range(3)] if entries is None \
            else entries

    def mul(self, other: "_HMat") -> "_HMat":
        alg = self.c.alg
        out = _HMat(self.c)
        for i in range(3):
            for k in range(3):
                acc = [Fraction(0)] * self.c.dim
                for j in range(3):
                    if any(self.e[i][j]) and any(other.e[j][k]):
                        p = alg.product(self.e[i][j], other.e[j][k])
                        for t, v in enumerate(p):
                            acc[t] += v
                out.e[i][k] = tuple(acc)
        return out

    def sym(self, other: "_HMat") -> "_HMat":
        a = self.mul(other)
        b = other.mul(self)
        out = _HMat(self.c)
        for i in range(3):
            for j in range(3):
                out.e[i][j] = tuple((x + y) / 2
                                    for x, y in zip(a.e[i][j], b.e[i][j]))
        return out


def _basis_matrices(c: CompositionAlgebra, rho) -> list[_HMat]:
    d = c.dim
    out = []
    for i in range(3):
        m = _HMat(c)
        m.e[i][i] = tuple(c.alg.unit)
        out.append(m)
    for (i, j) in _PAIRS:
        for b in range(d):
            m = _HMat(c)
            eb = c.alg.basis_vector(b)
            m.e[i][j] = eb
            m.e[j][i] = tuple(rho[i] / rho[j] * x for x in c.conjugate(eb))
            out.append(m)
    return out


def _extract_coords(c: CompositionAlgebra, rho, m: _HMat) -> list[Fraction]:
    """Coordinates of a hermitian matrix in the standard basis (checked)."""
    d = c.dim
    coords: list[Fraction] = []
    for i in range(3):
        entry = m.e[i][i]
        for t, v in enumerate(entry):
            if c.alg.unit[t] == 0 and v != 0:
                raise AssertionError("diagonal entry escapes Q*unit")
        k = next(t for t, u in enumerate(c.alg.unit) if u)
        coords.append(entry[k] / c.alg.unit[k])
    for (i, j) in _PAIRS:
        coords.extend(m.e[i][j])
        forced = tuple(rho[i] / rho[j] * x for x in c.conjugate(m.e[i][j]))
        if tuple(m.e[j][i]) != forced:
            raise AssertionError("matrix is not rho-hermitian")
    return coords


def hermitian_jordan(c: CompositionAlgebra, rho: Sequence) -> JordanAlgebra:
    """H3(C, rho) as a structure-constant algebra with its trace form."""
    r = tuple(_frac(x) for x in rho)
    if len(r) != 3 or any(x == 0 for x in r):
        raise ValueError("rho must be three nonzero scalars")
    d = c.dim
    dim = 3 + 3 * d
    basis = _basis_matrices(c, r)
    names = ["E0", "E1", "E2"]
    for (i, j) in _PAIRS:
        names += [f"F{i}{j}_{c.alg.basis_names[b]}" for b in range(d)]
    mult: dict[tuple[int, int], dict[int, Fraction]] = {}
    for a in range(dim):
        for b in range(a, dim):
            prod = basis[a].sym(basis[b])
            coords = _extract_coords(c, r, prod)
            tab = {k: v for k, v in enumerate(coords) if v}
            if tab:
                mult[(a, b)] = tab
                if a != b:
                    mult[(b, a)] = dict(tab)
    unit = tuple(Fraction(1 if k < 3 else 0) for k in range(dim))
    alg = StructureAlgebra(dim, tuple(names), unit, mult)
    trace_vec = tuple(Fraction(1 if k < 3 else 0) for k in range(dim))
    tdata = {}
    for a in range(dim):
        for b in range(dim):
            tab = mult.get((a, b))
            if not tab:
                continue
            val = sum((v for k, v in tab.items() if k < 3), Fraction(0))
            if val:
                tdata[(a, b)] = val
    tform = Mat(dim, dim, tdata)
    j = JordanAlgebra(alg, c, r, trace_vec, tform)
    if j.trace(unit) != 3:
        raise AssertionError("Tr(unit) != 3")
    for k in range(dim):
        e = alg.basis_vector(k)
        if alg.product(unit, e) != e:
            raise AssertionError("unit law fails")
    return j


def traceless_projection(j: JordanAlgebra, x: Sequence) -> Vec:
    """x minus Tr(x)/3 times the unit."""
    t = j.trace(x) / 3
    if not t:
        return tuple(_frac(v) for v in x)
    return tuple(_frac(v) - t * u for v, u in zip(x, j.alg.unit))


def traceless_basis(j: JordanAlgebra) -> list[Vec]:
    """Basis of J0 = ker Tr: two diagonal differences, then off-diagonals."""
    dim = j.dim
    out = []
    for (a, b) in ((0, 1), (1, 2)):
        v = [Fraction(0)] * dim
        v[a], v[b] = Fraction(1), Fraction(-1)
        out.append(tuple(v))
    for k in range(3, dim):
        out.append(j.alg.basis_vector(k))
    return out


def starred_product(j: JordanAlgebra, x: Sequence, y: Sequence) -> Vec:
    """x*y = x o y - T(x,y)/3 * unit, the traceless Jordan product."""
    return traceless_projection(j, j.product(x, y))


def jordan_inner_derivation(j: JordanAlgebra, x: Sequence, y: Sequence) -> Mat:
    """[L_x, L_y], checked to satisfy the Leibniz identity on basis pairs."""
    lx = j.alg.left_mult_matrix(x)
    ly = j.alg.left_mult_matrix(y)
    n = j.dim
    a = lx.to_dense()
    b = ly.to_dense()
    comm = [[sum(a[i][k] * b[k][l] - b[i][k] * a[k][l] for k in range(n))
             for l in range(n)] for i in range(n)]
    dm = Mat.from_rows(comm)
    for p in range(n):
        ep = j.alg.basis_vector(p)
        dep = dm.matvec(ep)
        for q in range(n):
            eq = j.alg.basis_vector(q)
            lhs = dm.matvec(j.product(ep, eq))
            rhs = tuple(u + v for u, v in zip(j.product(dep, eq),
                                              j.product(ep, dm.matvec(eq))))
            if lhs != rhs:
                raise AssertionError(
                    f"[L_x,L_y] violates Leibniz on basis pair ({p},{q})")
    return dm


def _linearized_jordan_idx(j: JordanAlgebra, x1: int, x2: int, x3: int,
                           y: int) -> bool:
    """One basis instantiation of the fully linearized Jordan identity."""
    alg = j.alg
    acc: dict[int, Fraction] = {}
    yd = {y: Fraction(1)}
    for (a, b, c) in ((x1, x2, x3), (x1, x3, x2), (x2, x1, x3),
                      (x2, x3, x1), (x3, x1, x2), (x3, x2, x1)):
        ab = alg.basis_product(a, b)
        cd = {c: Fraction(1)}
        lhs = alg.product_dict(alg.product_dict(ab, yd), cd)
        rhs = alg.product_dict(ab, alg.basis_product(y, c))
        for k, v in lhs.items():
            nv = acc.get(k, Fraction(0)) + v
            if nv:
                acc[k] = nv
            elif k in acc:
                del acc[k]
        for k, v in rhs.items():
            nv = acc.get(k, Fraction(0)) - v
            if nv:
                acc[k] = nv
            elif k in acc:
                del acc[k]
    return not acc


def verify_jordan(j: JordanAlgebra) -> Report:
    """Commutativity plus the linearized Jordan identity, exactly.

    Full sweep over basis quadruples up to dim 15; above that a seeded
    random sample of at least 10^5 instantiations (seed reported).
    """
    rep = Report(f"jordan dim {j.dim} rho {tuple(map(str, j.rho))}")
    n = j.dim
    basis = [j.alg.basis_vector(k) for k in range(n)]
    comm = all(j.product(basis[a], basis[b]) == j.product(basis[b], basis[a])
               for a in range(n) for b in range(a + 1, n))
    rep.check("commutativity on basis pairs", comm)
    sym = j.trace_form.is_symmetric()
    rep.check("trace form symmetric", sym)
    if n <= FULL_CHECK_MAX_DIM:
        ok = True
        witness = None
        for (a, b, c) in combinations_with_replacement(range(n), 3):
            for y in range(n):
                if not _linearized_jordan_idx(j, a, b, c, y):
                    ok = False
                    witness = (a, b, c, y)
                    break
            if not ok:
                break
        rep.check("linearized Jordan identity (full)", ok,
                  "" if ok else f"failing quadruple {witness}")
    else:
        rng = random.Random(SAMPLED_CHECK_SEED)
        ok = True
        witness = None
        for _ in range(SAMPLED_CHECK_COUNT):
            a, b, c, y = (rng.randrange(n) for _ in range(4))
            if not _linearized_jordan_idx(j, a, b, c, y):
                ok = False
                witness = (a, b, c, y)
                break
        rep.check(
            f"linearized Jordan identity ({SAMPLED_CHECK_COUNT} samples, "
            f"seed {SAMPLED_CHECK_SEED})", ok,
            "" if ok else f"failing quadruple {witness}")
    return rep


@dataclass(frozen=True)
class JordanCatalogEntry:
    """Named parameter set for one real cubic Jordan algebra."""

    label: str
    coord_gammas: tuple[Fraction, ...]
    rho: tuple[Fraction, Fraction, Fraction]

    @property
    def coord_dim(self) -> int:
        return 2 ** len(self.coord_gammas)


def _g(*vals) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in vals)


_RHO_PLAIN = (Fraction(1), Fraction(1), Fraction(1))
_RHO_SIGNED = (Fraction(1), Fraction(-1), Fraction(1))

# J^c(d): definite coordinates, plain rho.  J^II(d): definite coordinates,
# rho = diag(1,-1,1).  J^s(d), d >= 2: indefinite (split) coordinates, plain
# rho.  J^s(1) has no indefinite one-dimensional coordinate algebra, so it is
# realized as H3(Q, diag(1,-1,1)), the split form of so(3).
JORDAN_CATALOG: tuple[JordanCatalogEntry, ...] = (
    JordanCatalogEntry("Jc1", _g(), _RHO_PLAIN),
    JordanCatalogEntry("Js1", _g(), _RHO_SIGNED),
    JordanCatalogEntry("Jc2", _g(-1), _RHO_PLAIN),
    JordanCatalogEntry("JII2", _g(-1), _RHO_SIGNED),
    JordanCatalogEntry("Js2", _g(1), _RHO_PLAIN),
    JordanCatalogEntry("Jc4", _g(-1, -1), _RHO_PLAIN),
    JordanCatalogEntry("JII4", _g(-1, -1), _RHO_SIGNED),
    JordanCatalogEntry("Js4", _g(-1, 1), _RHO_PLAIN),
    JordanCatalogEntry("Jc8", _g(-1, -1, -1), _RHO_PLAIN),
    JordanCatalogEntry("JII8", _g(-1, -1, -1), _RHO_SIGNED),
    JordanCatalogEntry("Js8", _g(-1, -1, 1), _RHO_PLAIN),
)


def jordan_catalog_entry(label: str) -> JordanCatalogEntry:
    for entry in JORDAN_CATALOG:
        if entry.label == label:
            return entry
    raise KeyError(f"unknown Jordan catalog label {label!r}")


def build_catalog_jordan(label: str) -> JordanAlgebra:
    from .composition import build_composition

    entry = jordan_catalog_entry(label)
    return hermitian_jordan(build_composition(entry.coord_gammas), entry.rho)
