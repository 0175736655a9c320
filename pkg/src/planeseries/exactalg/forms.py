"""Trivariate homogeneous forms, bivariate polynomials, and resultants.

Forms are dense coefficient vectors over the graded-lex monomial order with
x > y > z; that order is serialization-critical and must never change.
BiPoly is the affine chart z = 1 companion: a polynomial in y whose
coefficients are univariate polynomials in x.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .gf import Elem, ExactAlgError, Field
from .unipoly import UniPoly, uni_gcd


@lru_cache(maxsize=None)
def monomials(d: int) -> tuple[tuple[int, int, int], ...]:
    """Exponent triples of total degree d in graded-lex order, x > y > z."""
    return tuple((a, b, d - a - b)
                 for a in range(d, -1, -1)
                 for b in range(d - a, -1, -1))


@lru_cache(maxsize=None)
def monomial_index(d: int) -> dict[tuple[int, int, int], int]:
    return {m: i for i, m in enumerate(monomials(d))}


def n_monomials(d: int) -> int:
    return (d + 1) * (d + 2) // 2


class Form:
    __slots__ = ("K", "d", "c")

    def __init__(self, K: Field, d: int, coeffs: Sequence[Elem]):
        if len(coeffs) != n_monomials(d):
            raise ExactAlgError("coefficient vector has wrong length")
        self.K = K
        self.d = d
        self.c = tuple(coeffs)

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, K: Field, d: int) -> "Form":
        return cls(K, d, (K.zero,) * n_monomials(d))

    @classmethod
    def from_terms(cls, K: Field, d: int,
                   terms: dict[tuple[int, int, int], Elem]) -> "Form":
        idx = monomial_index(d)
        c = [K.zero] * n_monomials(d)
        for m, v in terms.items():
            c[idx[m]] = K.add(c[idx[m]], v)
        return cls(K, d, c)

    @classmethod
    def from_int_terms(cls, K: Field, d: int,
                       terms: dict[tuple[int, int, int], int]) -> "Form":
        return cls.from_terms(K, d, {m: K.from_int(v) for m, v in terms.items()})

    @classmethod
    def random(cls, K: Field, d: int, rng) -> "Form":
        return cls(K, d, [K.rand(rng) for _ in range(n_monomials(d))])

    # -- basics ------------------------------------------------------------
    def is_zero(self) -> bool:
        K = self.K
        return all(K.is_zero(v) for v in self.c)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Form) and self.K == other.K
                and self.d == other.d and self.c == other.c)

    def __hash__(self) -> int:
        return hash((self.K, self.d, self.c))

    def __repr__(self) -> str:
        return f"Form(deg={self.d}, K=GF({self.K.p}^{self.K.k}))"

    def coeff(self, m: tuple[int, int, int]) -> Elem:
        return self.c[monomial_index(self.d)[m]]

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other: "Form") -> "Form":
        if self.d != other.d:
            raise ExactAlgError("degree mismatch in form addition")
        K = self.K
        return Form(K, self.d, tuple(K.add(a, b) for a, b in zip(self.c, other.c)))

    def __neg__(self) -> "Form":
        K = self.K
        return Form(K, self.d, tuple(K.neg(a) for a in self.c))

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def scale(self, a: Elem) -> "Form":
        K = self.K
        return Form(K, self.d, tuple(K.mul(a, v) for v in self.c))

    def __mul__(self, other: "Form") -> "Form":
        K = self.K
        d = self.d + other.d
        idx = monomial_index(d)
        out = [K.zero] * n_monomials(d)
        ms, mo = monomials(self.d), monomials(other.d)
        mul, add = K.mul, K.add
        for i, ci in enumerate(self.c):
            if K.is_zero(ci):
                continue
            a1, b1, c1 = ms[i]
            for j, cj in enumerate(other.c):
                if K.is_zero(cj):
                    continue
                a2, b2, c2 = mo[j]
                t = idx[(a1 + a2, b1 + b2, c1 + c2)]
                out[t] = add(out[t], mul(ci, cj))
        return Form(K, d, out)

    def eval_at(self, x: Elem, y: Elem, z: Elem) -> Elem:
        K = self.K
        pows = []
        for v in (x, y, z):
            row = [K.one]
            for _ in range(self.d):
                row.append(K.mul(row[-1], v))
            pows.append(row)
        acc = K.zero
        for (a, b, c), v in zip(monomials(self.d), self.c):
            if K.is_zero(v):
                continue
            t = K.mul(K.mul(v, pows[0][a]), K.mul(pows[1][b], pows[2][c]))
            acc = K.add(acc, t)
        return acc

    def partial(self, var: int) -> "Form":
        """Formal partial derivative with respect to variable index 0/1/2."""
        K = self.K
        if self.d == 0:
            return Form.zero(K, 0)
        idx = monomial_index(self.d - 1)
        out = [K.zero] * n_monomials(self.d - 1)
        for (a, b, c), v in zip(monomials(self.d), self.c):
            e = (a, b, c)[var]
            if e == 0 or K.is_zero(v):
                continue
            m = [a, b, c]
            m[var] -= 1
            out[idx[tuple(m)]] = K.smul(e, v)
        return Form(K, self.d - 1, out)

    def permute(self, perm: tuple[int, int, int]) -> "Form":
        """Substitute variables: result(v0,v1,v2) = self(v[perm[0]], v[perm[1]], v[perm[2]])."""
        K = self.K
        idx = monomial_index(self.d)
        out = [K.zero] * len(self.c)
        for (e0, e1, e2), v in zip(monomials(self.d), self.c):
            ne = [0, 0, 0]
            for i, e in enumerate((e0, e1, e2)):
                ne[perm[i]] = e
            out[idx[tuple(ne)]] = v
        return Form(K, self.d, out)

    def apply_matrix(self, M: Sequence[Sequence[Elem]]) -> "Form":
        """Linear change of coordinates: result(v) = self(M @ v)."""
        K = self.K
        lin = [Form(K, 1, (M[i][0], M[i][1], M[i][2])) for i in range(3)]
        pows: list[list[Form]] = []
        for L in lin:
            row = [Form(K, 0, (K.one,))]
            for _ in range(self.d):
                row.append(row[-1] * L)
            pows.append(row)
        acc = Form.zero(K, self.d)
        for (a, b, c), v in zip(monomials(self.d), self.c):
            if K.is_zero(v):
                continue
            term = pows[0][a] * pows[1][b]
            term = term * pows[2][c]
            acc = acc + term.scale(v)
        return acc

    def normalized(self) -> "Form":
        """Scale so the first nonzero coefficient in graded-lex order is 1."""
        K = self.K
        for v in self.c:
            if not K.is_zero(v):
                return self.scale(K.inv(v))
        return self

    def z_valuation(self) -> int:
        K = self.K
        best = None
        for (a, b, c), v in zip(monomials(self.d), self.c):
            if not K.is_zero(v):
                best = c if best is None else min(best, c)
        if best is None:
            raise ExactAlgError("zero form has no z-valuation")
        return best

    def z_shift(self, n: int) -> "Form":
        """Multiply by z^n (n may be negative when z^(-n) divides self)."""
        K = self.K
        d = self.d + n
        if d < 0:
            raise ExactAlgError("z-shift below degree zero")
        idx = monomial_index(d)
        out = [K.zero] * n_monomials(d)
        for (a, b, c), v in zip(monomials(self.d), self.c):
            if K.is_zero(v):
                continue
            if c + n < 0:
                raise ExactAlgError("form not divisible by that power of z")
            out[idx[(a, b, c + n)]] = v
        return Form(K, d, out)

    def dehomog_z(self) -> "BiPoly":
        """self(x, y, 1) as a polynomial in y over K[x]."""
        K = self.K
        rows: list[list[Elem]] = [[] for _ in range(self.d + 1)]
        for (a, b, c), v in zip(monomials(self.d), self.c):
            row = rows[b]
            while len(row) <= a:
                row.append(K.zero)
            row[a] = K.add(row[a], v)
        return BiPoly(K, [UniPoly(K, r) for r in rows])

    def restrict_z0(self) -> list[Elem]:
        """Coefficients of the binary form self(x, y, 0), ascending in x."""
        K = self.K
        out = [K.zero] * (self.d + 1)
        for (a, b, c), v in zip(monomials(self.d), self.c):
            if c == 0:
                out[a] = K.add(out[a], v)
        return out

    # -- serialization -----------------------------------------------------
    def to_int_lists(self) -> list[list[int]]:
        return [list(v) for v in self.c]

    @classmethod
    def from_int_lists(cls, K: Field, d: int, data: Sequence[Sequence[int]]) -> "Form":
        return cls(K, d, [K.elem(v) for v in data])


class BiPoly:
    """Polynomial in y with UniPoly-in-x coefficients (affine chart z = 1)."""

    __slots__ = ("K", "ys")

    def __init__(self, K: Field, ys: Sequence[UniPoly], trim: bool = True):
        lst = list(ys)
        if trim:
            while lst and lst[-1].is_zero():
                lst.pop()
        self.K = K
        self.ys = tuple(lst)

    @classmethod
    def zero(cls, K: Field) -> "BiPoly":
        return cls(K, ())

    @classmethod
    def one(cls, K: Field) -> "BiPoly":
        return cls(K, (UniPoly.one(K),))

    @classmethod
    def from_uni(cls, f: UniPoly) -> "BiPoly":
        return cls(f.K, (f,))

    @property
    def deg_y(self) -> int:
        return len(self.ys) - 1

    def x_degree(self) -> int:
        return max((u.degree for u in self.ys), default=-1)

    def is_zero(self) -> bool:
        return not self.ys

    def lc_y(self) -> UniPoly:
        if not self.ys:
            raise ExactAlgError("zero polynomial")
        return self.ys[-1]

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, BiPoly) and self.K == other.K
                and self.ys == other.ys)

    def __hash__(self) -> int:
        return hash((self.K, self.ys))

    def __add__(self, other: "BiPoly") -> "BiPoly":
        K = self.K
        a, b = self.ys, other.ys
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, u in enumerate(b):
            out[i] = out[i] + u
        return BiPoly(K, out)

    def __neg__(self) -> "BiPoly":
        return BiPoly(self.K, tuple(-u for u in self.ys), trim=False)

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def __mul__(self, other: "BiPoly") -> "BiPoly":
        K = self.K
        if self.is_zero() or other.is_zero():
            return BiPoly.zero(K)
        out = [UniPoly.zero(K) for _ in range(len(self.ys) + len(other.ys) - 1)]
        for i, u in enumerate(self.ys):
            if u.is_zero():
                continue
            for j, v in enumerate(other.ys):
                out[i + j] = out[i + j] + u * v
        return BiPoly(K, out)

    def scale_uni(self, f: UniPoly) -> "BiPoly":
        return BiPoly(self.K, tuple(u * f for u in self.ys))

    def y_shift(self, n: int) -> "BiPoly":
        if self.is_zero():
            return self
        return BiPoly(self.K, (UniPoly.zero(self.K),) * n + self.ys, trim=False)

    def eval_at(self, x0: Elem, y0: Elem) -> Elem:
        K = self.K
        acc = K.zero
        for u in reversed(self.ys):
            acc = K.add(K.mul(acc, y0), u.eval_at(x0))
        return acc

    def coeffs_at_x(self, x0: Elem, ny: int) -> list[Elem]:
        """Fixed-shape y-coefficient list of length ny+1 evaluated at x = x0."""
        K = self.K
        out = [K.zero] * (ny + 1)
        for i, u in enumerate(self.ys):
            out[i] = u.eval_at(x0)
        return out

    def eval_y_mod(self, N: UniPoly, E: UniPoly) -> UniPoly:
        """self(x, N(x)) mod E(x), by Horner in y."""
        K = self.K
        acc = UniPoly.zero(K)
        for u in reversed(self.ys):
            acc = acc.mulmod(N, E) + (u % E)
        return acc % E

    def content(self) -> UniPoly:
        g = UniPoly.zero(self.K)
        for u in self.ys:
            g = uni_gcd(g, u)
        return g

    def primitive_part(self) -> "BiPoly":
        if self.is_zero():
            return self
        cont = self.content()
        return BiPoly(self.K, tuple(u.exact_div(cont) for u in self.ys))

    def total_degree(self) -> int:
        best = -1
        for b, u in enumerate(self.ys):
            if not u.is_zero():
                best = max(best, u.degree + b)
        return best


def bipoly_prem(A: BiPoly, B: BiPoly) -> BiPoly:
    """Pseudo-remainder: lc_y(B)^(degA-degB+1) * A reduced mod B."""
    if B.is_zero():
        raise ZeroDivisionError("pseudo-division by zero")
    dB = B.deg_y
    lB = B.lc_y()
    R = A
    e = A.deg_y - dB + 1
    while not R.is_zero() and R.deg_y >= dB:
        s = R.lc_y()
        R = R.scale_uni(lB) - B.scale_uni(s).y_shift(R.deg_y - dB)
        e -= 1
    if e > 0:
        f = lB
        scale = UniPoly.one(A.K)
        n = e
        while n:
            if n & 1:
                scale = scale * f
            f = f * f
            n >>= 1
        R = R.scale_uni(scale)
    return R


def bipoly_gcd(A: BiPoly, B: BiPoly) -> BiPoly:
    """Gcd in K[x][y] by the primitive pseudo-remainder sequence,
    normalized so the leading coefficient of the leading y-coefficient is 1."""
    K = A.K
    if A.is_zero():
        return _bipoly_normalize(B)
    if B.is_zero():
        return _bipoly_normalize(A)
    c = uni_gcd(A.content(), B.content())
    a, b = A.primitive_part(), B.primitive_part()
    if a.deg_y < b.deg_y:
        a, b = b, a
    while b.deg_y > 0:
        r = bipoly_prem(a, b)
        if r.is_zero():
            return _bipoly_normalize(b.primitive_part().scale_uni(c))
        a, b = b, r.primitive_part()
    # remainder sequence reached y-degree zero: primitive parts share nothing
    return _bipoly_normalize(BiPoly.from_uni(c))


def _bipoly_normalize(f: BiPoly) -> BiPoly:
    if f.is_zero():
        return f
    lead = f.lc_y().lead()
    return BiPoly(f.K, tuple(u.scale(f.K.inv(lead)) for u in f.ys))


def homogenize(bp: BiPoly, d: int | None = None) -> Form:
    """Homogenize with z to total degree d (default: the natural degree)."""
    K = bp.K
    td = bp.total_degree()
    if td < 0:
        raise ExactAlgError("cannot homogenize the zero polynomial")
    if d is None:
        d = td
    if d < td:
        raise ExactAlgError("target degree below total degree")
    terms: dict[tuple[int, int, int], Elem] = {}
    for b, u in enumerate(bp.ys):
        for a, v in enumerate(u.c):
            if not K.is_zero(v):
                terms[(a, b, d - a - b)] = v
    return Form.from_terms(K, d, terms)


def form_gcd(F: Form, G: Form) -> Form:
    """Gcd of two homogeneous forms, normalized."""
    if F.is_zero():
        return G.normalized()
    if G.is_zero():
        return F.normalized()
    vF, vG = F.z_valuation(), G.z_valuation()
    af = F.z_shift(-vF).dehomog_z()
    ag = G.z_shift(-vG).dehomog_z()
    h = bipoly_gcd(af, ag)
    v = min(vF, vG)
    return homogenize(h).z_shift(v).normalized()


# ---------------------------------------------------------------------------
# resultants
# ---------------------------------------------------------------------------

def _as_y_coeff_list(f, var: str) -> list[UniPoly]:
    if isinstance(f, BiPoly):
        if var == "y":
            return list(f.ys)
        if var == "x":
            K = f.K
            nx = f.x_degree()
            rows = []
            for a in range(nx + 1):
                rows.append(UniPoly(K, [u.c[a] if a < len(u.c) else K.zero
                                        for u in f.ys]))
            while rows and rows[-1].is_zero():
                rows.pop()
            return rows
        raise ExactAlgError("eliminated variable must be 'x' or 'y'")
    return [u for u in f]


def resultant(f, g, var: str = "y") -> UniPoly:
    """Sylvester-determinant resultant eliminating one variable.

    f and g are BiPoly values (or ascending lists of UniPoly coefficients in
    the eliminated variable).  Computed by fraction-free Bareiss elimination
    on the Sylvester matrix built from ascending coefficient rows, so
    Res(t - a, t - b) = b - a.
    """
    fa = _as_y_coeff_list(f, var)
    ga = _as_y_coeff_list(g, var)
    while fa and fa[-1].is_zero():
        fa.pop()
    while ga and ga[-1].is_zero():
        ga.pop()
    if not fa or not ga:
        raise ExactAlgError("resultant of the zero polynomial")
    K = fa[0].K
    df, dg = len(fa) - 1, len(ga) - 1
    if df == 0 and dg == 0:
        raise ExactAlgError("both inputs constant in the eliminated variable")
    if df == 0:
        return _uni_pow(fa[0], dg)
    if dg == 0:
        return _uni_pow(ga[0], df)
    n = df + dg
    M: list[list[UniPoly]] = []
    zero = UniPoly.zero(K)
    for i in range(dg):
        M.append([zero] * i + fa + [zero] * (n - df - 1 - i))
    for i in range(df):
        M.append([zero] * i + ga + [zero] * (n - dg - 1 - i))
    return _bareiss_det(K, M)


def _uni_pow(f: UniPoly, e: int) -> UniPoly:
    out = UniPoly.one(f.K)
    b = f
    while e:
        if e & 1:
            out = out * b
        b = b * b
        e >>= 1
    return out


def _bareiss_det(K: Field, M: list[list[UniPoly]]) -> UniPoly:
    """Fraction-free determinant of a square matrix of univariate polynomials."""
    n = len(M)
    sign = 1
    prev = UniPoly.one(K)
    for k in range(n - 1):
        # pick the lowest-degree nonzero pivot to limit growth
        pivot = None
        for i in range(k, n):
            if not M[i][k].is_zero():
                if pivot is None or M[i][k].degree < M[pivot][k].degree:
                    pivot = i
        if pivot is None:
            return UniPoly.zero(K)
        if pivot != k:
            M[k], M[pivot] = M[pivot], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[k][k] * M[i][j] - M[i][k] * M[k][j]
                M[i][j] = num.exact_div(prev)
            M[i][k] = UniPoly.zero(K)
        prev = M[k][k]
    det = M[n - 1][n - 1]
    return det if sign == 1 else -det


# ---------------------------------------------------------------------------
# fixed-shape subresultant values at a specialization
# ---------------------------------------------------------------------------

def _elem_pow(K: Field, a: Elem, e: int) -> Elem:
    r = K.one
    while e:
        if e & 1:
            r = K.mul(r, a)
        a = K.mul(a, a)
        e >>= 1
    return r


def _euclid_res(K: Field, f: UniPoly, g: UniPoly) -> Elem:
    """Classical resultant of two nonzero polynomials by Euclidean descent."""
    acc = K.one
    neg = False
    while True:
        dg = g.degree
        if dg == 0:
            val = K.mul(acc, _elem_pow(K, g.lead(), f.degree))
            return K.neg(val) if neg else val
        df = f.degree
        if (df * dg) & 1:
            neg = not neg
        r = f % g
        if r.is_zero():
            return K.zero
        acc = K.mul(acc, _elem_pow(K, g.lead(), df - r.degree))
        f, g = g, r


def shaped_resultant(K: Field, ca: Sequence[Elem], cb: Sequence[Elem]) -> Elem:
    """Determinant of the fixed-shape ascending-column Sylvester matrix for
    the coefficient lists ca, cb (nominal degrees = list length - 1, both
    >= 1), computed by Euclidean reduction instead of elimination.

    Top entries may be zero; each drop on one side contributes a leading
    coefficient factor from the other, and the base case differs from the
    classical resultant only by the column-reversal sign (-1)^(da*db).
    Agrees with _spec_det on _sylvester_rows(..., 0) for every input.
    """
    na, nb = len(ca) - 1, len(cb) - 1
    if na < 1 or nb < 1:
        raise ExactAlgError("nominal degrees must be at least one")
    f = UniPoly(K, tuple(ca))
    g = UniPoly(K, tuple(cb))
    if f.is_zero() or g.is_zero():
        return K.zero
    da, db = f.degree, g.degree
    if da < na and db < nb:
        return K.zero
    if da < na:
        acc = _elem_pow(K, g.lead(), na - da)
    elif db < nb:
        acc = _elem_pow(K, f.lead(), nb - db)
        if (na * (nb - db)) & 1:
            acc = K.neg(acc)
    else:
        acc = K.one
    val = K.mul(acc, _euclid_res(K, f, g))
    return K.neg(val) if (da * db) & 1 else val


def subres_values(ca: Sequence[Elem], cb: Sequence[Elem], K: Field
                  ) -> tuple[Elem, Elem, Elem]:
    """Sylvester determinant S0 and the two coefficients (u, v) of the
    first subresultant S1 = u*y + v for two y-polynomials given as
    fixed-shape ascending coefficient lists (top entries may be zero).

    Shapes are taken from the list lengths, so specialization commutes with
    the determinant definition regardless of degree drops.  Requires both
    nominal degrees >= 1 and nominal total >= 3.
    """
    na, nb = len(ca) - 1, len(cb) - 1
    if na < 1 or nb < 1:
        raise ExactAlgError("nominal degrees must be at least one")
    s0 = _spec_det(K, _sylvester_rows(K, ca, cb, 0))
    if na + nb < 3:
        raise ExactAlgError("first subresultant needs total degree >= 3")
    rows = _sylvester_rows(K, ca, cb, 1)
    # S1 = u*y + v: bordered determinants [columns of degree >= 2 | degree-l
    # column] for l = 1, 0; column order is fixed, so specializations of the
    # same polynomial pair interpolate consistently
    u = _spec_det(K, [r[2:] + [r[1]] for r in rows])
    v = _spec_det(K, [r[2:] + [r[0]] for r in rows])
    return s0, u, v


def _sylvester_rows(K: Field, ca: Sequence[Elem], cb: Sequence[Elem],
                    j: int) -> list[list[Elem]]:
    """Rows of the order-j subresultant matrix, ascending columns."""
    na, nb = len(ca) - 1, len(cb) - 1
    width = na + nb - j
    rows = []
    for i in range(nb - j):
        rows.append([K.zero] * i + list(ca) + [K.zero] * (width - na - 1 - i))
    for i in range(na - j):
        rows.append([K.zero] * i + list(cb) + [K.zero] * (width - nb - 1 - i))
    return rows


def _spec_det(K: Field, M: list[list[Elem]]) -> Elem:
    n = len(M)
    sign = False
    det = K.one
    for k in range(n):
        pivot = None
        for i in range(k, n):
            if not K.is_zero(M[i][k]):
                pivot = i
                break
        if pivot is None:
            return K.zero
        if pivot != k:
            M[k], M[pivot] = M[pivot], M[k]
            sign = not sign
        pk = M[k][k]
        det = K.mul(det, pk)
        inv = K.inv(pk)
        for i in range(k + 1, n):
            f = M[i][k]
            if K.is_zero(f):
                continue
            f = K.mul(f, inv)
            Mi, Mk = M[i], M[k]
            for j in range(k, n):
                Mi[j] = K.sub(Mi[j], K.mul(f, Mk[j]))
    return K.neg(det) if sign else det


