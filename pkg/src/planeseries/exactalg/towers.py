"""Canonical extension fields, embeddings, and root location.

Every degree gets one canonical field per characteristic (seeded from a
stable digest), so independent runs construct identical moduli.  An
Embedding is the F_p-linear matrix sending the source generator to a
canonical root of the source modulus inside the destination field.
"""

from __future__ import annotations

import random
import zlib
from functools import lru_cache

import numpy as np

from .gf import Elem, ExactAlgError, Field, gf_build
from .unipoly import UniPoly
from .unipoly import _edf as _edf_split


@lru_cache(maxsize=None)
def canonical_field(p: int, j: int) -> Field:
    seed = zlib.crc32(f"tower:{p}:{j}".encode())
    return gf_build(p, j, seed)


def _solve_mod_p(mat: list[list[int]], b: list[int], p: int) -> list[int] | None:
    """One solution of an integer matrix system mod p, or None."""
    rows = [list(r) + [v] for r, v in zip(mat, b)]
    n = len(rows)
    ncols = len(mat[0]) if mat else 0
    piv_cols: list[int] = []
    r = 0
    for col in range(ncols):
        sel = None
        for i in range(r, n):
            if rows[i][col] % p:
                sel = i
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = pow(rows[r][col], p - 2, p)
        rows[r] = [(v * inv) % p for v in rows[r]]
        for i in range(n):
            if i != r and rows[i][col] % p:
                f = rows[i][col]
                rows[i] = [(a - f * bb) % p for a, bb in zip(rows[i], rows[r])]
        piv_cols.append(col)
        r += 1
    for i in range(r, n):
        if rows[i][ncols] % p:
            return None
    x = [0] * ncols
    for i, col in enumerate(piv_cols):
        x[col] = rows[i][ncols]
    return x


class Embedding:
    """F_p-linear field embedding determined by the image of the generator."""

    __slots__ = ("src", "dst", "root", "_mat")

    def __init__(self, src: Field, dst: Field, root: Elem):
        if src.p != dst.p or dst.k % src.k != 0:
            raise ExactAlgError("no embedding between these fields")
        self.src = src
        self.dst = dst
        self.root = root
        cols = []
        acc = dst.one
        for _ in range(src.k):
            cols.append(list(acc))
            acc = dst.mul(acc, root)
        self._mat = np.array(cols, dtype=np.int64).T  # (dst.k, src.k)

    def __call__(self, a: Elem) -> Elem:
        v = (self._mat @ np.array(a, dtype=np.int64)) % self.src.p
        return tuple(int(x) for x in v)

    def map_poly(self, f: UniPoly) -> UniPoly:
        return UniPoly(self.dst, tuple(self(c) for c in f.c))

    def preimage(self, b: Elem) -> Elem | None:
        x = _solve_mod_p(self._mat.tolist(), list(b), self.src.p)
        if x is None:
            return None
        cand = tuple(x)
        return cand if self(cand) == b else None


def identity_embedding(K: Field) -> Embedding:
    gen = K.elem((0, 1) + (0,) * (K.k - 2)) if K.k > 1 else K.zero
    return Embedding(K, K, gen)


def roots_in_field(h: UniPoly, dst: Field) -> list[Elem]:
    """All roots in dst of an irreducible polynomial h over the prime field,
    sorted; requires deg h | dst.k.  h's coefficients must be scalars."""
    m = h.degree
    if m < 1:
        raise ExactAlgError("need positive degree")
    if dst.k % m != 0:
        raise ExactAlgError("degree does not divide the extension degree")
    hp = h.K
    if hp.k != 1:
        raise ExactAlgError("modulus coefficients must live in a prime field")
    if m == 1:
        hm = h.monic()
        return [dst.from_int((-hm.c[0][0]) % hp.p)]
    if dst.k <= 16:
        return _roots_direct(h, dst)
    return _roots_via_subfield(h, dst)


def _roots_direct(h: UniPoly, dst: Field) -> list[Elem]:
    # h splits into linear factors over dst; peel them off by seeded
    # equal-degree splitting
    f = UniPoly(dst, tuple(dst.from_int(c[0]) for c in h.c)).monic()
    seed = zlib.crc32(repr((dst.p, dst.k, dst.modulus, h.c)).encode())
    rng = random.Random(seed)
    roots = [dst.neg(g.c[0]) for g in _edf_split(f, 1, rng)]
    return sorted(roots)


def _roots_via_subfield(h: UniPoly, dst: Field) -> list[Elem]:
    """Locate the degree-m subfield of dst by Frobenius linear algebra,
    model it as a small field, find the roots there, and map them back."""
    p = dst.p
    M = dst.k
    m = h.degree
    gen = dst.elem((0, 1) + (0,) * (M - 2))
    frob_gen = dst.pow_(gen, p)
    cols = []
    acc = dst.one
    for _ in range(M):
        cols.append(list(acc))
        acc = dst.mul(acc, frob_gen)
    phi = np.array(cols, dtype=np.int64).T % p
    power = np.eye(M, dtype=np.int64)
    e = m
    base = phi
    while e:
        if e & 1:
            power = (power @ base) % p
        base = (base @ base) % p
        e >>= 1
    target = (power - np.eye(M, dtype=np.int64)) % p
    basis = _int_kernel(target.tolist(), p)
    if len(basis) != m:
        raise ExactAlgError("subfield dimension mismatch")
    seed = zlib.crc32(repr((p, M, dst.modulus, h.c, "subfield")).encode())
    rng = random.Random(seed)
    for _ in range(40):
        coeffs = [rng.randrange(p) for _ in range(m)]
        beta = dst.zero
        for c, vec in zip(coeffs, basis):
            if c:
                beta = dst.add(beta, dst.smul(c, tuple(vec)))
        # minimal polynomial of beta from the kernel of its power matrix
        powers = []
        acc = dst.one
        for _ in range(m + 1):
            powers.append(list(acc))
            acc = dst.mul(acc, beta)
        ker = _int_kernel_rows(powers, p)
        if len(ker) != 1 or ker[0][m] % p == 0:
            continue
        vec = ker[0]
        inv = pow(vec[m], p - 2, p)
        g = [(v * inv) % p for v in vec]
        model = Field(p, m, g, check=False)
        hm = UniPoly(model, tuple(model.from_int(c[0]) for c in h.c))
        rng2 = random.Random(seed ^ 0x5DEECE66D)
        model_roots = [model.neg(q.c[0]) for q in _edf_split(hm.monic(), 1, rng2)]
        out = []
        for r in model_roots:
            img = dst.zero
            bp = dst.one
            for ci in r:
                if ci:
                    img = dst.add(img, dst.smul(ci, bp))
                bp = dst.mul(bp, beta)
            out.append(img)
        return sorted(out)
    raise ExactAlgError("failed to generate the subfield")


def _int_kernel(mat: list[list[int]], p: int) -> list[list[int]]:
    """Right kernel basis of an integer matrix mod p (canonical RREF form)."""
    n = len(mat)
    ncols = len(mat[0]) if mat else 0
    rows = [list(r) for r in mat]
    piv: list[int] = []
    r = 0
    for col in range(ncols):
        sel = None
        for i in range(r, n):
            if rows[i][col] % p:
                sel = i
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = pow(rows[r][col], p - 2, p)
        rows[r] = [(v * inv) % p for v in rows[r]]
        for i in range(n):
            if i != r and rows[i][col] % p:
                f = rows[i][col]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        piv.append(col)
        r += 1
    pivset = set(piv)
    out = []
    for j in range(ncols):
        if j in pivset:
            continue
        v = [0] * ncols
        v[j] = 1
        for i, pc in enumerate(piv):
            v[pc] = (-rows[i][j]) % p
        out.append(v)
    return out


def _int_kernel_rows(rows_in: list[list[int]], p: int) -> list[list[int]]:
    """Kernel of the matrix whose ROWS are the given vectors: coefficient
    relations c with sum_i c_i * row_i = 0."""
    # transpose and reuse the column-kernel routine
    n = len(rows_in)
    width = len(rows_in[0])
    mat = [[rows_in[i][j] for i in range(n)] for j in range(width)]
    return _int_kernel(mat, p)


def find_root(h: UniPoly, dst: Field) -> Elem:
    """Canonical (minimal) root of h in dst."""
    return roots_in_field(h, dst)[0]


def embed(src: Field, dst: Field) -> Embedding:
    """Canonical embedding src -> dst; requires src.k | dst.k, same p."""
    if src == dst:
        return identity_embedding(src)
    if src.p != dst.p or dst.k % src.k != 0:
        raise ExactAlgError("no embedding between these fields")
    if src.k == 1:
        return Embedding(src, dst, dst.zero)
    mod = UniPoly.from_ints(gf_build(src.p, 1), [c for c in src.modulus])
    return Embedding(src, dst, find_root(mod, dst))


def extension_of(K0: Field, j: int) -> tuple[Field, Embedding]:
    """The canonical degree-j extension of K0 with its embedding."""
    if j < 1:
        raise ExactAlgError("extension degree must be >= 1")
    if j == 1:
        return K0, identity_embedding(K0)
    dst = canonical_field(K0.p, K0.k * j)
    return dst, embed(K0, dst)


def compose_embeddings(e1: Embedding, e2: Embedding) -> Embedding:
    """The embedding e2 after e1; e1.dst must be e2.src."""
    if e1.dst is not e2.src:
        raise ExactAlgError("embeddings do not compose")
    if e1.src is e1.dst:
        return e2
    if e2.src is e2.dst:
        return e1
    return Embedding(e1.src, e2.dst, e2(e1.root))


def field_from_quotient(K0: Field, q: UniPoly) -> tuple[Field, Elem, Embedding]:
    """Present K0[x]/(q), q monic irreducible over K0, as a Field over the
    prime subfield.  Returns (L, image of x, embedding K0 -> L)."""
    p = K0.p
    m = q.degree
    if m < 1:
        raise ExactAlgError("quotient by a constant")
    qm = q.monic()
    if m == 1:
        return K0, K0.neg(qm.c[0]), identity_embedding(K0)
    if K0.k == 1:
        L = Field(p, m, [c[0] for c in qm.c], check=False)
        return L, L.elem((0, 1) + (0,) * (m - 2)), Embedding(K0, L, L.zero)
    M = K0.k * m

    def coords(f: UniPoly) -> list[int]:
        out = []
        for i in range(m):
            e = f.c[i] if i < len(f.c) else K0.zero
            out.extend(e)
        return out

    xbar = UniPoly.x(K0) % qm
    tbar = UniPoly.const(K0, K0.elem((0, 1) + (0,) * (K0.k - 2)))
    for c in range(p):
        gamma = (xbar + tbar.scale(K0.from_int(c))) % qm
        pows = []
        acc = UniPoly.one(K0)
        for _ in range(M + 1):
            pows.append(coords(acc))
            acc = (acc * gamma) % qm
        ker = _int_kernel_rows(pows, p)
        if len(ker) != 1 or ker[0][M] % p == 0:
            continue
        vec = ker[0]
        inv = pow(vec[M], p - 2, p)
        g = [(v * inv) % p for v in vec]
        L = Field(p, M, g, check=False)
        basis = [pows[i] for i in range(M)]
        xi = _solve_mod_p([[basis[j][i] for j in range(M)] for i in range(M)],
                          coords(xbar), p)
        ti = _solve_mod_p([[basis[j][i] for j in range(M)] for i in range(M)],
                          coords(tbar % qm), p)
        if xi is None or ti is None:
            continue
        ximg = tuple(xi)
        emb = Embedding(K0, L, tuple(ti))
        # exactness guard: the image of x must satisfy the mapped q
        acc2 = L.zero
        xp = L.one
        for coeff in qm.c:
            acc2 = L.add(acc2, L.mul(emb(coeff), xp))
            xp = L.mul(xp, ximg)
        if acc2 == L.zero:
            return L, ximg, emb
    raise ExactAlgError("failed to present the quotient field")
