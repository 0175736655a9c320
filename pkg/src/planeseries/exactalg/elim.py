"""Eliminants by evaluation and interpolation.

Resultants and first-order subresultant data for bivariate polynomials are
computed from fixed-shape Sylvester determinants evaluated at sample points,
then interpolated.  Specialization commutes with a determinant of fixed
shape, so any sample points are valid and no genericity is needed.
"""

from __future__ import annotations

from itertools import islice

from .gf import Elem, ExactAlgError, Field
from .unipoly import UniPoly, uni_gcd, uni_interpolate
from .forms import BiPoly, shaped_resultant, subres_values
from .towers import Embedding, extension_of


def _nodes_field(K: Field, needed: int) -> tuple[Field, Embedding]:
    # smallest canonical extension with enough elements for the node set
    q = K.p ** K.k
    j = 1
    while q ** j < needed:
        j += 1
    return extension_of(K, j)


def _map_bipoly(bp: BiPoly, emb: Embedding) -> BiPoly:
    if emb.src is emb.dst:
        return bp
    return BiPoly(emb.dst, tuple(emb.map_poly(f) for f in bp.ys), trim=False)


def bipoly_specialize(bp: BiPoly, x0: Elem, emb: Embedding) -> UniPoly:
    """The y-polynomial bp(x0, y), with coefficients pushed through emb."""
    L = emb.dst
    out = []
    for f in bp.ys:
        acc = L.zero
        for c in reversed(f.c):
            acc = L.add(L.mul(acc, x0), emb(c))
        out.append(acc)
    return UniPoly(L, tuple(out))


def interp_resultant(A: BiPoly, B: BiPoly, bound: int | None = None,
                     check: int = 2) -> UniPoly:
    """Res_y(A, B) as a polynomial in x, by sampling and interpolation.

    The Sylvester shape is fixed by the nominal y-degrees of A and B, which
    must both be >= 1.  With bound=None the certain degree bound from the
    matrix rows is used and no verification is needed; a caller-supplied
    smaller bound is verified at `check` extra nodes, and a mismatch raises.
    """
    K = A.K
    na, nb = A.deg_y, B.deg_y
    if na < 1 or nb < 1:
        raise ExactAlgError("interp_resultant needs y-degree >= 1 on both sides")
    dxa, dxb = A.x_degree(), B.x_degree()
    hard = nb * dxa + na * dxb
    if bound is None or bound >= hard:
        bound, check = hard, 0
    Kn, emb = _nodes_field(K, bound + 1 + check)
    nodes = list(islice(Kn.elements(), bound + 1 + check))
    acoeffs = [emb.map_poly(f) for f in A.ys]
    bcoeffs = [emb.map_poly(f) for f in B.ys]
    vals = []
    for x0 in nodes:
        ca = [f.eval_at(x0) for f in acoeffs]
        cb = [f.eval_at(x0) for f in bcoeffs]
        vals.append(shaped_resultant(Kn, ca, cb))
    E = uni_interpolate(Kn, nodes[:bound + 1], vals[:bound + 1])
    for i in range(check):
        if E.eval_at(nodes[bound + 1 + i]) != vals[bound + 1 + i]:
            raise ExactAlgError("eliminant degree bound exceeded")
    if emb.src is emb.dst:
        return E
    down = []
    for c in E.c:
        pre = emb.preimage(c)
        if pre is None:
            raise ExactAlgError("eliminant failed to descend to the base field")
        down.append(pre)
    return UniPoly(K, tuple(down))


def _ytrim(ys: list) -> list:
    while ys and ys[-1].is_zero():
        ys.pop()
    return ys


def _upow(f: UniPoly, e: int) -> UniPoly:
    out = UniPoly.one(f.K)
    for _ in range(e):
        out = out * f
    return out


def _prem(PA: list, PB: list) -> list:
    """lc(PB)^(da-db+1) * PA mod PB in K[x][y]; coefficient lists ascend
    in y.  Every step multiplies through by the leading coefficient, so
    the full power is accumulated regardless of dropped terms."""
    db = len(PB) - 1
    lB = PB[-1]
    R = list(PA)
    for k in range(len(PA) - 1, db - 1, -1):
        ck = R[k]
        R = [c * lB for c in R[:k]]
        if not ck.is_zero():
            sh = k - db
            for j in range(db):
                R[sh + j] = R[sh + j] - ck * PB[j]
    return _ytrim(R)


def prs_resultant(A: BiPoly, B: BiPoly) -> UniPoly:
    """Res_y(A, B) as an x-polynomial, via the subresultant remainder
    sequence over K[x].

    Unlike interp_resultant this never leaves the coefficient field, which
    makes it much faster over a small prime field; the two agree exactly,
    signs included.  Nominal y-degrees are ignored: the inputs are trimmed
    to their true degrees first.
    """
    K = A.K
    if B.K != K:
        raise ExactAlgError("operands live over different fields")
    PA = _ytrim(list(A.ys))
    PB = _ytrim(list(B.ys))
    if not PA or not PB:
        return UniPoly.zero(K)
    # the ascending-column Sylvester convention used throughout carries an
    # extra (-1)^(deg A * deg B) against the remainder-sequence recursion
    neg = (len(PA) - 1) % 2 == 1 and (len(PB) - 1) % 2 == 1
    if len(PA) < len(PB):
        if (len(PA) - 1) % 2 == 1 and (len(PB) - 1) % 2 == 1:
            neg = not neg
        PA, PB = PB, PA
    if len(PB) == 1:
        res = _upow(PB[0], len(PA) - 1)
        return res.scale(K.neg(K.one)) if neg else res
    one = UniPoly.one(K)
    g, h = one, one
    while len(PB) - 1 > 0:
        da, db = len(PA) - 1, len(PB) - 1
        delta = da - db
        if da % 2 == 1 and db % 2 == 1:
            neg = not neg
        R = _prem(PA, PB)
        PA = PB
        denom = g * _upow(h, delta)
        PB = [c.exact_div(denom) for c in R]
        g = PA[-1]
        if delta > 0:
            h = _upow(g, delta).exact_div(_upow(h, delta - 1))
    if not PB:
        return UniPoly.zero(K)
    da = len(PA) - 1
    res = _upow(PB[0], da).exact_div(_upow(h, da - 1))
    return res.scale(K.neg(K.one)) if neg else res


def _content(K, cs: list) -> UniPoly:
    g = UniPoly.zero(K)
    for c in cs:
        if not c.is_zero():
            g = uni_gcd(g, c)
    return g


def bi_gcd(A: BiPoly, B: BiPoly) -> BiPoly:
    """Gcd of two bivariate polynomials, up to a scalar, by the primitive
    remainder sequence in K[x][y]."""
    K = A.K
    if B.K != K:
        raise ExactAlgError("operands live over different fields")
    PA = _ytrim(list(A.ys))
    PB = _ytrim(list(B.ys))
    if not PA:
        return B
    if not PB:
        return A
    if len(PA) < len(PB):
        PA, PB = PB, PA
    cA = _content(K, PA)
    cB = _content(K, PB)
    cont = uni_gcd(cA, cB)
    PA = [c.exact_div(cA) for c in PA]
    PB = [c.exact_div(cB) for c in PB]
    while len(PB) > 1:
        R = _prem(PA, PB)
        if not R:
            break
        cR = _content(K, R)
        PA, PB = PB, [c.exact_div(cR) for c in R]
    else:
        # remainder reached y-degree zero; a primitive constant slice means
        # the y-parts are coprime
        return BiPoly(K, (cont,))
    return BiPoly(K, tuple(c * cont for c in PB))


def is_constant_poly(G: BiPoly) -> bool:
    ys = _ytrim(list(G.ys))
    return len(ys) <= 1 and (not ys or ys[0].degree <= 0)


def interp_elim_chain(A: BiPoly, B: BiPoly) -> tuple[UniPoly, UniPoly, UniPoly]:
    """(E, U, V): the resultant and the two coefficients of the first
    subresultant S1 = U*y + V of A and B with respect to y, as x-polynomials.

    Fixed-shape determinants at every node, so the three interpolated
    polynomials are consistent specializations of one matrix family.
    """
    K = A.K
    na, nb = A.deg_y, B.deg_y
    if na + nb < 3 or na < 1 or nb < 1:
        raise ExactAlgError("subresultant chain needs total y-degree >= 3")
    dxa, dxb = A.x_degree(), B.x_degree()
    bound = max(nb * dxa + na * dxb,
                (nb - 1) * dxa + (na - 1) * dxb)
    Kn, emb = _nodes_field(K, bound + 1)
    nodes = list(islice(Kn.elements(), bound + 1))
    acoeffs = [emb.map_poly(f) for f in A.ys]
    bcoeffs = [emb.map_poly(f) for f in B.ys]
    ev, uv, vv = [], [], []
    for x0 in nodes:
        ca = [f.eval_at(x0) for f in acoeffs]
        cb = [f.eval_at(x0) for f in bcoeffs]
        s0, u1, v1 = subres_values(ca, cb, Kn)
        ev.append(s0)
        uv.append(u1)
        vv.append(v1)
    polys = []
    for vals in (ev, uv, vv):
        P = uni_interpolate(Kn, nodes, vals)
        if emb.src is not emb.dst:
            down = []
            for c in P.c:
                pre = emb.preimage(c)
                if pre is None:
                    raise ExactAlgError("eliminant failed to descend to the base field")
                down.append(pre)
            P = UniPoly(K, tuple(down))
        polys.append(P)
    return polys[0], polys[1], polys[2]
