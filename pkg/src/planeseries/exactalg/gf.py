"""Finite fields GF(p^k) with exact tuple-based elements.

Elements of a field are plain tuples of ints of length k (coefficients of
the power basis 1, t, ..., t^(k-1) modulo a monic irreducible modulus over
GF(p)).  Tuples keep elements hashable and comparable, which the rest of
the package relies on for canonical orderings; all arithmetic goes through
the owning :class:`Field`.  No floating point anywhere.
"""

from __future__ import annotations

import random
from typing import Iterator, Sequence, Tuple

import numpy as np

Elem = Tuple[int, ...]

# Above this extension degree the mul/reduction path switches to numpy.
_NP_DEGREE = 8


class ExactAlgError(ValueError):
    """Raised for invalid field or polynomial construction requests."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# dense GF(p)[t] helpers on int lists (ascending powers, no trailing zeros)
# ---------------------------------------------------------------------------

def _pp_trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _pp_mul(f: Sequence[int], g: Sequence[int], p: int) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _pp_trim(out)


def _pp_divmod(f: Sequence[int], g: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    # g must be nonzero; works for any field-invertible leading coefficient
    f = list(f)
    _pp_trim(f)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    dg = len(g) - 1
    inv_lead = pow(g[-1], p - 2, p)
    q = [0] * max(0, len(f) - dg)
    while len(f) - 1 >= dg and f:
        shift = len(f) - 1 - dg
        c = (f[-1] * inv_lead) % p
        q[shift] = c
        for i in range(dg + 1):
            f[shift + i] = (f[shift + i] - c * g[i]) % p
        _pp_trim(f)
    return _pp_trim(q), f


def _pp_gcd(f: Sequence[int], g: Sequence[int], p: int) -> list[int]:
    a, b = list(f), list(g)
    _pp_trim(a)
    _pp_trim(b)
    while b:
        _, r = _pp_divmod(a, b, p)
        a, b = b, r
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [(c * inv) % p for c in a]
    return a


def _pp_powmod(base: Sequence[int], e: int, mod: Sequence[int], p: int) -> list[int]:
    _, r = _pp_divmod(base, mod, p)
    result = [1]
    while e:
        if e & 1:
            result = _pp_divmod(_pp_mul(result, r, p), mod, p)[1]
        r = _pp_divmod(_pp_mul(r, r, p), mod, p)[1]
        e >>= 1
    return result


def _pp_sub(f: Sequence[int], g: Sequence[int], p: int) -> list[int]:
    n = max(len(f), len(g))
    f = list(f) + [0] * (n - len(f))
    g = list(g) + [0] * (n - len(g))
    return _pp_trim([(a - b) % p for a, b in zip(f, g)])


def _pp_is_irreducible(f: Sequence[int], p: int) -> bool:
    # Rabin test: t^(p^k) == t mod f, and gcd(t^(p^(k/l)) - t, f) = 1
    # for every prime l dividing k.
    k = len(f) - 1
    if k < 1:
        return False
    t = [0, 1]
    if _pp_sub(_pp_powmod(t, p ** k, f, p), t, p):
        return False
    for l in _prime_divisors(k):
        diff = _pp_sub(_pp_powmod(t, p ** (k // l), f, p), t, p)
        if len(_pp_gcd(diff, f, p)) - 1 != 0:
            return False
    return True


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# the field itself
# ---------------------------------------------------------------------------

class Field:
    """GF(p^k) presented as GF(p)[t] / (modulus).

    Parameters
    ----------
    p : int
        Prime characteristic.
    k : int
        Extension degree, k >= 1.
    modulus : tuple of int
        Monic irreducible polynomial of degree k over GF(p), ascending
        coefficients, length k + 1.  For k = 1 the modulus is t itself.
    """

    __slots__ = ("p", "k", "modulus", "zero", "one", "_red", "_np_red",
                 "_hash")

    def __init__(self, p: int, k: int, modulus: Sequence[int],
                 check: bool = True):
        # check=False skips the Rabin test for moduli that arrive from a
        # verified factorization (minimal polynomials, certified factors)
        if not is_prime(p):
            raise ExactAlgError(f"characteristic {p} is not prime")
        if k < 1:
            raise ExactAlgError("extension degree must be >= 1")
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise ExactAlgError("modulus must be monic of degree k")
        if check and k > 1 and not _pp_is_irreducible(list(modulus), p):
            raise ExactAlgError("modulus is reducible")
        self.p = p
        self.k = k
        self.modulus = modulus
        self.zero: Elem = (0,) * k
        self.one: Elem = (1,) + (0,) * (k - 1)
        # rows of the reduction table: t^(k+i) mod modulus, i = 0..k-2
        red: list[tuple[int, ...]] = []
        row = [(-c) % p for c in modulus[:k]]
        for _ in range(max(0, k - 1)):
            red.append(tuple(row))
            lead, lower = row[-1], row[:-1]
            row = [0] + lower
            if lead:
                row = [(a + lead * b) % p for a, b in zip(row, red[0])]
        self._red = red
        self._np_red = (np.array(red, dtype=np.int64).reshape(k - 1, k)
                        if k >= _NP_DEGREE else None)
        self._hash = hash((p, k, modulus))

    # -- identity ----------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Field) and self.p == other.p
                and self.k == other.k and self.modulus == other.modulus)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    @property
    def order(self) -> int:
        return self.p ** self.k

    # -- element construction ---------------------------------------------
    def elem(self, coeffs: Sequence[int]) -> Elem:
        c = [int(x) % self.p for x in coeffs]
        if len(c) > self.k:
            raise ExactAlgError("coefficient vector longer than degree")
        return tuple(c + [0] * (self.k - len(c)))

    def from_int(self, n: int) -> Elem:
        return (n % self.p,) + (0,) * (self.k - 1)

    def rand(self, rng: random.Random) -> Elem:
        return tuple(rng.randrange(self.p) for _ in range(self.k))

    def elements(self) -> Iterator[Elem]:
        # exhaustive iteration; only sensible for small fields
        def rec(i: int, acc: list[int]) -> Iterator[Elem]:
            if i == self.k:
                yield tuple(acc)
                return
            for c in range(self.p):
                yield from rec(i + 1, acc + [c])
        yield from rec(0, [])

    def is_zero(self, a: Elem) -> bool:
        return all(c == 0 for c in a)

    # -- arithmetic --------------------------------------------------------
    def add(self, a: Elem, b: Elem) -> Elem:
        p = self.p
        if self.k == 1:
            return ((a[0] + b[0]) % p,)
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a: Elem, b: Elem) -> Elem:
        p = self.p
        if self.k == 1:
            return ((a[0] - b[0]) % p,)
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a: Elem) -> Elem:
        p = self.p
        return tuple((-x) % p for x in a)

    def mul(self, a: Elem, b: Elem) -> Elem:
        p, k = self.p, self.k
        if k == 1:
            return ((a[0] * b[0]) % p,)
        if self._np_red is not None:
            return self._mul_np(a, b)
        conv = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    conv[i + j] += x * y
        out = [c % p for c in conv[:k]]
        for i in range(k - 1):
            hi = conv[k + i] % p
            if hi:
                row = self._red[i]
                for j in range(k):
                    out[j] = (out[j] + hi * row[j]) % p
        return tuple(out)

    def _mul_np(self, a: Elem, b: Elem) -> Elem:
        k = self.k
        conv = np.convolve(np.asarray(a, dtype=np.int64),
                           np.asarray(b, dtype=np.int64))
        out = conv[:k] + conv[k:] @ self._np_red
        return tuple(int(v) for v in (out % self.p))

    def smul(self, c: int, a: Elem) -> Elem:
        c %= self.p
        return tuple((c * x) % self.p for x in a)

    def inv(self, a: Elem) -> Elem:
        p = self.p
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        if self.k == 1:
            return (pow(a[0], p - 2, p),)
        # extended euclid in GF(p)[t] against the modulus
        r0, r1 = list(self.modulus), _pp_trim(list(a))
        s0, s1 = [], [1]
        while r1:
            q, r = _pp_divmod(r0, r1, p)
            r0, r1 = r1, r
            qs = _pp_mul(q, s1, p)
            news = [(x - y) % p for x, y in
                    zip(s0 + [0] * max(0, len(qs) - len(s0)),
                        qs + [0] * max(0, len(s0) - len(qs)))]
            s0, s1 = s1, _pp_trim(news)
        # r0 is a unit (gcd of a with the irreducible modulus)
        c = pow(r0[0], p - 2, p)
        out = [(c * x) % p for x in s0]
        return self.elem(out)

    def div(self, a: Elem, b: Elem) -> Elem:
        return self.mul(a, self.inv(b))

    def pow_(self, a: Elem, e: int) -> Elem:
        if e < 0:
            return self.pow_(self.inv(a), -e)
        result = self.one
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def frob(self, a: Elem) -> Elem:
        return self.pow_(a, self.p)

    # -- serialization -----------------------------------------------------
    def tag(self) -> str:
        return f"{self.p}^{self.k}"

    def describe(self) -> dict:
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus)}


def gf_build(p: int, k: int, seed: int = 0) -> Field:
    """Construct GF(p^k), sampling a monic irreducible modulus with a
    seeded generator so the result is reproducible.

    For k = 1 the modulus is the polynomial t.  Raises ExactAlgError if p
    is not prime or no irreducible is found within the attempt budget
    (which should not occur for any valid input).
    """
    if not is_prime(p):
        raise ExactAlgError(f"characteristic {p} is not prime")
    if k < 1:
        raise ExactAlgError("extension degree must be >= 1")
    if k == 1:
        return Field(p, 1, (0, 1))
    rng = random.Random(seed)
    for _ in range(400 * k):
        cand = [rng.randrange(p) for _ in range(k)] + [1]
        if _pp_is_irreducible(cand, p):
            return Field(p, k, tuple(cand))
    raise ExactAlgError("no irreducible modulus found within budget")
