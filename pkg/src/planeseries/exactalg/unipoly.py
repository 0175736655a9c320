"""Dense univariate polynomials over a finite field.

Coefficients are stored ascending (index = power) as field-element tuples;
the zero polynomial has an empty coefficient list.  Everything is exact.
Factorization follows the classical squarefree / distinct-degree /
equal-degree cascade with a seeded splitting generator and a final
multiply-back verification of the factor list.
"""

from __future__ import annotations

import random
import zlib
from typing import Iterable, Sequence

import numpy as np

from .gf import Elem, ExactAlgError, Field

# degree at which prime-field divmod/powmod switch to the numpy path
_NP_MIN_DEG = 32


class UniPoly:
    __slots__ = ("K", "c")

    def __init__(self, K: Field, coeffs: Iterable[Elem] = (), trim: bool = True):
        self.K = K
        c = list(coeffs)
        if trim:
            while c and K.is_zero(c[-1]):
                c.pop()
        self.c = tuple(c)

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, K: Field) -> "UniPoly":
        return cls(K, ())

    @classmethod
    def one(cls, K: Field) -> "UniPoly":
        return cls(K, (K.one,))

    @classmethod
    def x(cls, K: Field) -> "UniPoly":
        return cls(K, (K.zero, K.one))

    @classmethod
    def const(cls, K: Field, a: Elem) -> "UniPoly":
        return cls(K, (a,))

    @classmethod
    def from_ints(cls, K: Field, ints: Sequence[int]) -> "UniPoly":
        return cls(K, tuple(K.from_int(n) for n in ints))

    @classmethod
    def from_roots(cls, K: Field, roots: Sequence[Elem]) -> "UniPoly":
        f = cls.one(K)
        for r in roots:
            f = f * cls(K, (K.neg(r), K.one))
        return f

    # -- basics ------------------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def is_one(self) -> bool:
        return len(self.c) == 1 and self.c[0] == self.K.one

    def lead(self) -> Elem:
        if not self.c:
            raise ExactAlgError("zero polynomial has no leading coefficient")
        return self.c[-1]

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, UniPoly) and self.K == other.K
                and self.c == other.c)

    def __hash__(self) -> int:
        return hash((self.K, self.c))

    def __repr__(self) -> str:
        return f"UniPoly({self.K}, deg={self.degree})"

    # -- ring operations ---------------------------------------------------
    def __add__(self, other: "UniPoly") -> "UniPoly":
        K = self.K
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] = K.add(out[i], v)
        return UniPoly(K, out)

    def __neg__(self) -> "UniPoly":
        K = self.K
        return UniPoly(K, tuple(K.neg(v) for v in self.c), trim=False)

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        K = self.K
        a, b = self.c, other.c
        if not a or not b:
            return UniPoly.zero(K)
        if K.k == 1 and min(len(a), len(b)) > _NP_MIN_DEG:
            arr = np.convolve(_np_coeffs(self), _np_coeffs(other)) % K.p
            return _np_to_poly(K, arr)
        out = [K.zero] * (len(a) + len(b) - 1)
        mul, add = K.mul, K.add
        for i, x in enumerate(a):
            if K.is_zero(x):
                continue
            for j, y in enumerate(b):
                out[i + j] = add(out[i + j], mul(x, y))
        return UniPoly(K, out)

    def scale(self, a: Elem) -> "UniPoly":
        K = self.K
        return UniPoly(K, tuple(K.mul(a, v) for v in self.c))

    def shift(self, n: int) -> "UniPoly":
        # multiply by x^n
        if self.is_zero():
            return self
        return UniPoly(self.K, (self.K.zero,) * n + self.c, trim=False)

    def divmod_(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        K = self.K
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        a = list(self.c)
        b = other.c
        db = len(b) - 1
        if len(a) - 1 < db:
            return UniPoly.zero(K), self
        if K.k == 1 and db >= _NP_MIN_DEG:
            return _np_divmod(self, other)
        inv_lead = K.inv(b[-1])
        q = [K.zero] * (len(a) - db)
        mul, sub = K.mul, K.sub
        while len(a) - 1 >= db:
            coef = mul(a[-1], inv_lead)
            sh = len(a) - 1 - db
            q[sh] = coef
            for i in range(db + 1):
                a[sh + i] = sub(a[sh + i], mul(coef, b[i]))
            while a and K.is_zero(a[-1]):
                a.pop()
        return UniPoly(K, q), UniPoly(K, a)

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod_(other)[1]

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod_(other)[0]

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = self.divmod_(other)
        if not r.is_zero():
            raise ExactAlgError("division is not exact")
        return q

    def mulmod(self, other: "UniPoly", mod: "UniPoly") -> "UniPoly":
        return (self * other) % mod

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self.scale(self.K.inv(self.lead()))

    def deriv(self) -> "UniPoly":
        K = self.K
        return UniPoly(K, tuple(K.smul(i, v) for i, v in enumerate(self.c))[1:])

    def eval_at(self, x: Elem) -> Elem:
        K = self.K
        acc = K.zero
        for v in reversed(self.c):
            acc = K.add(K.mul(acc, x), v)
        return acc

    def compose_mod(self, g: "UniPoly", mod: "UniPoly") -> "UniPoly":
        # self(g) mod mod, Horner
        K = self.K
        acc = UniPoly.zero(K)
        for v in reversed(self.c):
            acc = acc.mulmod(g, mod) + UniPoly.const(K, v)
        return acc % mod

    def powmod(self, e: int, mod: "UniPoly") -> "UniPoly":
        K = self.K
        if K.k == 1 and mod.degree >= _NP_MIN_DEG:
            return _np_powmod(self, e, mod)
        result = UniPoly.one(K) % mod
        base = self % mod
        while e:
            if e & 1:
                result = result.mulmod(base, mod)
            base = base.mulmod(base, mod)
            e >>= 1
        return result


# numpy fast path for large prime-field polynomials; coefficient magnitudes
# stay below degree * p^2 so int64 never overflows for the sizes we handle
def _np_coeffs(f: UniPoly) -> np.ndarray:
    return np.array([c[0] for c in f.c], dtype=np.int64)

def _np_to_poly(K: Field, arr: np.ndarray) -> UniPoly:
    return UniPoly(K, tuple((int(v),) for v in arr))

def _np_divmod(f: UniPoly, g: UniPoly) -> tuple[UniPoly, UniPoly]:
    K = f.K
    p = K.p
    a = _np_coeffs(f)
    b = _np_coeffs(g)
    db = len(b) - 1
    inv_lead = pow(int(b[-1]), p - 2, p)
    q = np.zeros(len(a) - db, dtype=np.int64)
    for sh in range(len(a) - db - 1, -1, -1):
        coef = (int(a[sh + db]) * inv_lead) % p
        if coef:
            q[sh] = coef
            a[sh:sh + db + 1] = (a[sh:sh + db + 1] - coef * b) % p
    return _np_to_poly(K, q), _np_to_poly(K, a[:db])

class _NpModCtx:
    """Fixed-modulus mulmod over a prime field: convolution plus a
    precomputed reduction matrix for the powers x^n .. x^(2n-2)."""

    def __init__(self, K: Field, mod: UniPoly):
        self.p = p = K.p
        self.n = n = mod.degree
        m = _np_coeffs(mod)
        m = (m * pow(int(m[-1]), p - 2, p)) % p
        base = (-m[:n]) % p
        rows = np.zeros((max(n - 1, 0), n), dtype=np.int64)
        row = base.copy()
        for i in range(n - 1):
            rows[i] = row
            lead = int(row[-1])
            row = np.concatenate((np.zeros(1, dtype=np.int64), row[:-1]))
            if lead:
                row = (row + lead * base) % p
        self.rows = rows

    def mulmod(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        c = np.convolve(a, b) % self.p
        if len(c) <= self.n:
            return c
        high = c[self.n:]
        return (c[:self.n] + high @ self.rows[:len(high)]) % self.p

def _np_powmod(f: UniPoly, e: int, mod: UniPoly) -> UniPoly:
    K = f.K
    ctx = _NpModCtx(K, mod)
    base_poly = f % mod
    if base_poly.is_zero():
        return UniPoly.one(K) if e == 0 else UniPoly.zero(K)
    r = np.array([1], dtype=np.int64)
    base = _np_coeffs(base_poly)
    while e:
        if e & 1:
            r = ctx.mulmod(r, base)
        e >>= 1
        if e:
            base = ctx.mulmod(base, base)
    return _np_to_poly(K, r)


def uni_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    while not g.is_zero():
        f, g = g, f % g
    return f.monic() if not f.is_zero() else f


def uni_modinv(a: UniPoly, m: UniPoly) -> UniPoly:
    """Inverse of a modulo m.  Raises if gcd(a, m) is not a unit."""
    K = a.K
    r0, r1 = m, a % m
    s0, s1 = UniPoly.zero(K), UniPoly.one(K)
    while not r1.is_zero():
        q, r2 = r0.divmod_(r1)
        r0, r1 = r1, r2
        s0, s1 = s1, s0 - q * s1
    if r0.degree != 0:
        raise ValueError("inverse of a non unit modulo %s" % (m,))
    return (s0.scale(K.inv(r0.lead()))) % m


def uni_interpolate(K: Field, xs: Sequence[Elem], ys: Sequence[Elem]) -> UniPoly:
    """Lagrange interpolation through distinct nodes xs."""
    if len(xs) != len(ys):
        raise ExactAlgError("node/value length mismatch")
    full = UniPoly.from_roots(K, xs)
    out = UniPoly.zero(K)
    for xi, yi in zip(xs, ys):
        if K.is_zero(yi):
            continue
        li = full.exact_div(UniPoly(K, (K.neg(xi), K.one)))
        out = out + li.scale(K.mul(yi, K.inv(li.eval_at(xi))))
    return out


def uni_resultant(f: UniPoly, g: UniPoly) -> Elem:
    """Resultant of two univariate polynomials via the Euclidean remainder
    sequence; exact over the coefficient field."""
    K = f.K
    if f.is_zero() or g.is_zero():
        return K.zero
    res = K.one
    a, b = f, g
    if a.degree < b.degree:
        if (a.degree * b.degree) % 2 == 1:
            res = K.neg(res)
        a, b = b, a
    while b.degree > 0:
        r = a % b
        if r.is_zero():
            return K.zero
        res = K.mul(res, K.pow_(b.lead(), a.degree - r.degree))
        if (a.degree * b.degree) % 2 == 1:
            res = K.neg(res)
        a, b = b, r
    res = K.mul(res, K.pow_(b.c[0], a.degree))
    return res


# ---------------------------------------------------------------------------
# factorization
# ---------------------------------------------------------------------------

def _pth_root(f: UniPoly) -> UniPoly:
    # f is a polynomial in x^p; take the p-th root coefficientwise
    K = f.K
    p = K.p
    e = K.p ** (K.k - 1)  # a -> a^(p^(k-1)) inverts Frobenius on GF(p^k)
    out = [K.pow_(f.c[i], e) for i in range(0, len(f.c), p)]
    return UniPoly(K, out)


def squarefree_parts(f: UniPoly) -> list[tuple[UniPoly, int]]:
    """Squarefree decomposition [(g_i, e_i)] of a monic f, char-p aware."""
    K = f.K
    out: list[tuple[UniPoly, int]] = []
    if f.degree < 1:
        return out
    fp = f.deriv()
    if fp.is_zero():
        inner = squarefree_parts(_pth_root(f))
        return [(g, e * K.p) for g, e in inner]
    c = uni_gcd(f, fp)
    w = f.exact_div(c)
    i = 1
    while w.degree > 0:
        y = uni_gcd(w, c)
        z = w.exact_div(y)
        if z.degree > 0:
            out.append((z, i))
        w = y
        c = c.exact_div(y)
        i += 1
    if c.degree > 0:
        inner = squarefree_parts(_pth_root(c))
        out.extend((g, e * K.p) for g, e in inner)
    return out


def _ddf(f: UniPoly) -> list[tuple[UniPoly, int]]:
    """Distinct-degree split of a squarefree monic f: [(product, d)]."""
    K = f.K
    q = K.order
    out = []
    x = UniPoly.x(K)
    h = x % f
    d = 0
    while f.degree > 0:
        d += 1
        if 2 * d > f.degree:
            out.append((f, f.degree))
            break
        h = h.powmod(q, f)
        g = uni_gcd(h - x, f)
        if g.degree > 0:
            out.append((g, d))
            f = f.exact_div(g)
            h = h % f
    return out


def _edf(f: UniPoly, d: int, rng: random.Random) -> list[UniPoly]:
    """Equal-degree split: f squarefree monic, all factors of degree d."""
    K = f.K
    if f.degree == d:
        return [f.monic()]
    q = K.order
    while True:
        r = UniPoly(K, [K.rand(rng) for _ in range(f.degree)])
        if r.degree < 1:
            continue
        if K.p == 2:
            # trace splitting in characteristic 2
            g = r % f
            acc = g
            for _ in range(d * K.k - 1):
                g = g.mulmod(g, f)
                acc = acc + g
            cand = uni_gcd(acc, f)
        else:
            w = r.powmod((q ** d - 1) // 2, f)
            cand = uni_gcd(w - UniPoly.one(K), f)
        if 0 < cand.degree < f.degree:
            left = _edf(cand, d, rng)
            right = _edf(f.exact_div(cand), d, rng)
            return left + right


def uni_factor(f: UniPoly, seed: int | None = None) -> list[tuple[UniPoly, int]]:
    """Full factorization of f into monic irreducibles, up to the unit
    f.lead().

    Returns [(factor, multiplicity)] sorted canonically by (degree,
    coefficient tuple).  The product of the unit and all factor powers is
    verified to reproduce f exactly; an internal error is raised if not.
    The splitting generator is seeded from the input when seed is None, so
    repeated runs agree.
    """
    K = f.K
    if f.is_zero():
        raise ExactAlgError("cannot factor the zero polynomial")
    if seed is None:
        blob = repr((K.p, K.k, K.modulus, f.c)).encode()
        seed = zlib.crc32(blob)
    rng = random.Random(seed)
    fm = f.monic()
    out: list[tuple[UniPoly, int]] = []
    for part, mult in squarefree_parts(fm):
        for prod, d in _ddf(part.monic()):
            for irr in _edf(prod, d, rng):
                out.append((irr, mult))
    out.sort(key=lambda t: (t[0].degree, t[0].c))
    check = UniPoly.const(K, f.lead())
    for g, e in out:
        for _ in range(e):
            check = check * g
    if check != f:
        raise ExactAlgError("factorization failed verification")
    return out


def uni_roots(f: UniPoly, seed: int | None = None) -> list[Elem]:
    """Roots of f in its own coefficient field, sorted, without multiplicity."""
    K = f.K
    if f.is_zero():
        raise ExactAlgError("zero polynomial")
    if f.degree == 0:
        return []
    x = UniPoly.x(K)
    lin = uni_gcd(x.powmod(K.order, f) - x, f)
    if lin.degree == 0:
        return []
    if seed is None:
        blob = repr((K.p, K.k, K.modulus, f.c)).encode()
        seed = zlib.crc32(blob) ^ 0x9E3779B9
    rng = random.Random(seed)
    roots = []
    for g in _edf(lin, 1, rng):
        roots.append(K.neg(g.c[0]))
    return sorted(roots)
