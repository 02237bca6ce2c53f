"""Composition algebras over Q by iterated Cayley-Dickson doubling.

The doubling convention is fixed once and for all:

    (a, b) * (c, d) = (a*c + gamma * conj(d)*b,  d*a + b*conj(c))
    conj((a, b))    = (conj(a), -b)

starting from Q with trivial conjugation.  Every structural property a
caller could depend on (unit laws, conjugation being an anti-automorphism,
norm multiplicativity, alternativity) is re-checkable through
``verify_composition``, so the convention choice is observationally safe.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exactlin import Mat, Vec, _frac
from .report import Report


@dataclass(frozen=True)
class StructureAlgebra:
    """Finite-dimensional algebra given by basis and multiplication table.

    ``mult`` maps a basis pair (i, j) to the sparse coordinate dict of the
    product e_i * e_j; absent pairs multiply to zero.
    """

    dim: int
    basis_names: tuple[str, ...]
    unit: Vec
    mult: dict[tuple[int, int], dict[int, Fraction]] = field(repr=False)

    def product(self, x: Sequence, y: Sequence) -> Vec:
        acc = [Fraction(0)] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            xi = _frac(xi)
            for j, yj in enumerate(y):
                if not yj:
                    continue
                tab = self.mult.get((i, j))
                if tab:
                    c = xi * _frac(yj)
                    for k, v in tab.items():
                        acc[k] += c * v
        return tuple(acc)

    def basis_product(self, i: int, j: int) -> dict[int, Fraction]:
        return self.mult.get((i, j), {})

    def product_dict(self, x: dict[int, Fraction],
                     y: dict[int, Fraction]) -> dict[int, Fraction]:
        """Sparse product of sparse coordinate dicts."""
        acc: dict[int, Fraction] = {}
        for i, xi in x.items():
            for j, yj in y.items():
                tab = self.mult.get((i, j))
                if tab:
                    c = xi * yj
                    for k, v in tab.items():
                        nv = acc.get(k, Fraction(0)) + c * v
                        if nv:
                            acc[k] = nv
                        elif k in acc:
                            del acc[k]
        return acc

    def basis_vector(self, i: int) -> Vec:
        return tuple(Fraction(1 if j == i else 0) for j in range(self.dim))

    def left_mult_matrix(self, x: Sequence) -> Mat:
        data = {}
        for (i, j), tab in self.mult.items():
            xi = x[i]
            if xi:
                xi = _frac(xi)
                for k, v in tab.items():
                    key = (k, j)
                    data[key] = data.get(key, Fraction(0)) + xi * v
        return Mat(self.dim, self.dim, data)

    def right_mult_matrix(self, x: Sequence) -> Mat:
        data = {}
        for (i, j), tab in self.mult.items():
            xj = x[j]
            if xj:
                xj = _frac(xj)
                for k, v in tab.items():
                    key = (k, i)
                    data[key] = data.get(key, Fraction(0)) + xj * v
        return Mat(self.dim, self.dim, data)


@dataclass(frozen=True)
class CompositionAlgebra:
    """Cayley-Dickson algebra of dimension 1, 2, 4 or 8 with norm data."""

    alg: StructureAlgebra
    gammas: tuple[Fraction, ...]
    conj: Mat
    norm: Mat  # bilinearized norm <a,b> = N(a+b) - N(a) - N(b)

    @property
    def dim(self) -> int:
        return self.alg.dim

    def conjugate(self, x: Sequence) -> Vec:
        return self.conj.matvec(x)

    def trace(self, x: Sequence) -> Fraction:
        """t(x) with x + conj(x) = t(x) * unit."""
        xb = self.conjugate(x)
        total = tuple(_frac(a) + b for a, b in zip(x, xb))
        for k, u in enumerate(self.alg.unit):
            if u:
                return total[k] / u
        raise RuntimeError("algebra without unit support")

    def norm_value(self, x: Sequence) -> Fraction:
        """N(x), recovered from the bilinear form: N(x) = <x,x>/2."""
        acc = Fraction(0)
        for (i, j), v in self.norm.items():
            if x[i] and x[j]:
                acc += v * _frac(x[i]) * _frac(x[j])
        return acc / 2

    def pairing(self, x: Sequence, y: Sequence) -> Fraction:
        acc = Fraction(0)
        for (i, j), v in self.norm.items():
            if x[i] and y[j]:
                acc += v * _frac(x[i]) * _frac(y[j])
        return acc


def _double(alg: StructureAlgebra, conj: Mat, gamma: Fraction):
    """One Cayley-Dickson doubling step on structure-constant level."""
    n = alg.dim
    names = tuple(alg.basis_names) + tuple(f"e{n + i}" for i in range(n))
    if n == 1:
        names = ("e0", "e1")
    mult: dict[tuple[int, int], dict[int, Fraction]] = {}
    cj = conj.to_dense()

    def put(i, j, k, v):
        if v:
            tab = mult.setdefault((i, j), {})
            tab[k] = tab.get(k, Fraction(0)) + v
            if not tab[k]:
                del tab[k]

    for i in range(n):
        for j in range(n):
            # (a,0)(c,0) = (ac, 0)
            for k, v in alg.basis_product(i, j).items():
                put(i, j, k, v)
            # (a,0)(0,d) = (0, da)
            for k, v in alg.basis_product(j, i).items():
                put(i, n + j, n + k, v)
            # (0,b)(c,0) = (0, b conj(c))
            for l in range(n):
                cv = cj[l][j]
                if cv:
                    for k, v in alg.basis_product(i, l).items():
                        put(n + i, j, n + k, cv * v)
            # (0,b)(0,d) = (gamma conj(d) b, 0)
            for l in range(n):
                cv = cj[l][j]
                if cv:
                    for k, v in alg.basis_product(l, i).items():
                        put(n + i, n + j, k, gamma * cv * v)
    unit = tuple(alg.unit) + tuple(Fraction(0) for _ in range(n))
    new_alg = StructureAlgebra(2 * n, names, unit, mult)
    conj_data = {}
    for (i, j), v in conj.items():
        conj_data[(i, j)] = v
    for i in range(n):
        conj_data[(n + i, n + i)] = Fraction(-1)
    new_conj = Mat(2 * n, 2 * n, conj_data)
    return new_alg, new_conj


def build_composition(gammas: Sequence) -> CompositionAlgebra:
    """Iterated doubling of Q by the given nonzero parameters (0 to 3)."""
    gs = tuple(_frac(g) for g in gammas)
    if len(gs) > 3:
        raise ValueError("at most three doubling parameters")
    if any(g == 0 for g in gs):
        raise ValueError("doubling parameters must be nonzero")
    alg = StructureAlgebra(1, ("e0",), (Fraction(1),),
                           {(0, 0): {0: Fraction(1)}})
    conj = Mat.identity(1)
    for g in gs:
        alg, conj = _double(alg, conj, g)
    norm_data = {}
    n = alg.dim
    cj = conj.to_dense()
    for i in range(n):
        for j in range(n):
            # <e_i, e_j> = t(e_i * conj(e_j)) read off the unit coordinate,
            # equivalently N(e_i + e_j) - N(e_i) - N(e_j)
            prod_ij = {}
            for l in range(n):
                cv = cj[l][j]
                if cv:
                    for k, v in alg.basis_product(i, l).items():
                        prod_ij[k] = prod_ij.get(k, Fraction(0)) + cv * v
            conj_part = {}
            for l in range(n):
                cv = cj[l][i]
                if cv:
                    for k, v in alg.basis_product(j, l).items():
                        conj_part[k] = conj_part.get(k, Fraction(0)) + cv * v
            val = prod_ij.get(0, Fraction(0)) + conj_part.get(0, Fraction(0))
            if val:
                norm_data[(i, j)] = val
    norm = Mat(n, n, norm_data)
    c = CompositionAlgebra(alg, gs, conj, norm)
    _quick_invariants(c)
    return c


def _quick_invariants(c: CompositionAlgebra) -> None:
    alg = c.alg
    n = alg.dim
    if n not in (1, 2, 4, 8):
        raise AssertionError("composition algebra dimension must be 1,2,4,8")
    for i in range(n):
        e = alg.basis_vector(i)
        if alg.product(alg.unit, e) != e or alg.product(e, alg.unit) != e:
            raise AssertionError("unit law broken in doubling")


def trace_zero_basis(c: CompositionAlgebra) -> list[Vec]:
    """Basis of ker(t); for the doubling basis this is e1..e_{dim-1}."""
    n = c.dim
    out = []
    for i in range(n):
        e = c.alg.basis_vector(i)
        if c.trace(e) == 0:
            out.append(e)
    if len(out) != n - 1:
        raise AssertionError("trace-zero space has unexpected dimension")
    return out


def inner_derivation(c: CompositionAlgebra, a: Sequence, b: Sequence) -> Mat:
    """The standard derivation D_{a,b} = [L_a,L_b] + [L_a,R_b] + [R_a,R_b].

    Raises if the Leibniz identity fails on some basis pair, which would
    mean the multiplication table itself is corrupt.
    """
    alg = c.alg
    la = alg.left_mult_matrix(a).to_dense()
    lb = alg.left_mult_matrix(b).to_dense()
    ra = alg.right_mult_matrix(a).to_dense()
    rb = alg.right_mult_matrix(b).to_dense()
    n = alg.dim

    def mm(x, y):
        return [[sum(x[i][k] * y[k][j] for k in range(n) if x[i][k])
                 for j in range(n)] for i in range(n)]

    def sub(x, y):
        return [[x[i][j] - y[i][j] for j in range(n)] for i in range(n)]

    d = sub(mm(la, lb), mm(lb, la))
    d = [[d[i][j] + v for j, v in enumerate(row)]
         for i, row in enumerate(sub(mm(la, rb), mm(rb, la)))]
    d = [[d[i][j] + v for j, v in enumerate(row)]
         for i, row in enumerate(sub(mm(ra, rb), mm(rb, ra)))]
    dm = Mat.from_rows(d)
    for i in range(n):
        ei = alg.basis_vector(i)
        dei = dm.matvec(ei)
        for j in range(n):
            ej = alg.basis_vector(j)
            lhs = dm.matvec(alg.product(ei, ej))
            rhs = tuple(x + y for x, y in zip(alg.product(dei, ej),
                                              alg.product(ei, dm.matvec(ej))))
            if lhs != rhs:
                raise AssertionError(
                    f"D_(a,b) violates Leibniz on basis pair ({i},{j})")
    return dm


def verify_composition(c: CompositionAlgebra) -> Report:
    """Check the composition-algebra axioms exhaustively on the basis."""
    rep = Report(f"composition dim {c.dim} gammas {list(map(str, c.gammas))}")
    alg = c.alg
    n = alg.dim
    unit_ok = all(alg.product(alg.unit, alg.basis_vector(i)) == alg.basis_vector(i)
                  and alg.product(alg.basis_vector(i), alg.unit) == alg.basis_vector(i)
                  for i in range(n))
    rep.check("unit laws", unit_ok)
    rep.check("conj is an involution",
              all(c.conjugate(c.conjugate(alg.basis_vector(i))) == alg.basis_vector(i)
                  for i in range(n)) and c.conjugate(alg.unit) == alg.unit)
    anti = True
    for i in range(n):
        for j in range(n):
            lhs = c.conjugate(alg.product(alg.basis_vector(i), alg.basis_vector(j)))
            rhs = alg.product(c.conjugate(alg.basis_vector(j)),
                              c.conjugate(alg.basis_vector(i)))
            if lhs != rhs:
                anti = False
    rep.check("conj is an anti-automorphism", anti)
    tr = all((lambda s: all(x == 0 for k, x in enumerate(s) if not alg.unit[k]))
             (tuple(a + b for a, b in zip(alg.basis_vector(i),
                                          c.conjugate(alg.basis_vector(i)))))
             for i in range(n))
    rep.check("trace lands in Q*unit", tr)
    mult_ok = True
    basis = [alg.basis_vector(i) for i in range(n)]
    for i in range(n):
        for j in range(n):
            if c.norm_value(alg.product(basis[i], basis[j])) != \
                    c.norm_value(basis[i]) * c.norm_value(basis[j]):
                mult_ok = False
    rep.check("norm multiplicativity on basis pairs", mult_ok)
    lin_ok = True
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    lhs = c.pairing(alg.product(basis[i], basis[k]),
                                    alg.product(basis[j], basis[l])) + \
                          c.pairing(alg.product(basis[i], basis[l]),
                                    alg.product(basis[j], basis[k]))
                    if lhs != c.pairing(basis[i], basis[j]) * c.pairing(basis[k], basis[l]):
                        lin_ok = False
                        break
                else:
                    continue
                break
    rep.check("linearized norm multiplicativity", lin_ok)
    alt = True
    for i in range(n):
        for j in range(n):
            xx = alg.product(basis[i], basis[i])
            if alg.product(xx, basis[j]) != alg.product(basis[i], alg.product(basis[i], basis[j])):
                alt = False
            if alg.product(basis[j], xx) != alg.product(alg.product(basis[j], basis[i]), basis[i]):
                alt = False
    # linearized left/right alternativity so the basis check covers all elements
    for i in range(n):
        for j in range(n):
            for k in range(n):
                a1 = _assoc(alg, basis[i], basis[j], basis[k])
                a2 = _assoc(alg, basis[j], basis[i], basis[k])
                if any(x + y for x, y in zip(a1, a2)):
                    alt = False
                a3 = _assoc(alg, basis[k], basis[i], basis[j])
                if any(x + y for x, y in zip(a2, a3)):
                    alt = False
    rep.check("alternativity (with linearizations)", alt)
    return rep


def _assoc(alg: StructureAlgebra, x, y, z) -> Vec:
    return tuple(a - b for a, b in zip(alg.product(alg.product(x, y), z),
                                       alg.product(x, alg.product(y, z))))


def is_associative(c: CompositionAlgebra) -> bool:
    basis = [c.alg.basis_vector(i) for i in range(c.dim)]
    return all(not any(_assoc(c.alg, x, y, z))
               for x in basis for y in basis for z in basis)
