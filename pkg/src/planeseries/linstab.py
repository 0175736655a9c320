"""Linear series on smooth plane curves and the multiplicity test for
linear stability.

A linear series is a chosen subspace of a section space together with its
base divisor.  For a rank-2 generating series the plane image is recovered
by exact interpolation from sampled points, its singular points are located
by resultant elimination, and the stability verdict compares the largest
image multiplicity with deg(L)/2.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional, Sequence

from .exactalg.gf import Elem, ExactAlgError, Field
from .exactalg.unipoly import UniPoly, uni_factor, uni_gcd, uni_roots
from .exactalg.forms import BiPoly, Form, monomials, n_monomials
from .exactalg.linalg import mat_kernel, mat_rank
from .exactalg.towers import Embedding, extension_of
from .exactalg.elim import prs_resultant
from .curve import CurvePoint, PlaneCurve
from .riemann_roch import Divisor, SectionSpace, base_locus

__all__ = [
    "LinearSeries", "ImageModel", "StabilityVerdict",
    "make_series", "slope_M", "image_curve", "singular_points",
    "pencil_base_degree", "linear_stability_verdict",
]

# extra interpolation rows beyond the monomial count, and held-out rows
# used only to validate the accepted equation
_EXTRA_ROWS = 64
_HOLDOUT = 32


class LinearSeries:
    """A subspace of sections of a line bundle, with its base divisor.

    degree is the degree of the generated (moving) part, deg of the class
    minus deg of the base divisor; the pair is generating exactly when the
    base divisor is empty.
    """

    __slots__ = ("C", "space", "basis", "rank", "class_degree", "base",
                 "degree", "generating")

    def __init__(self, C: PlaneCurve, space: SectionSpace,
                 basis: tuple, base: Divisor):
        self.C = C
        self.space = space
        self.basis = basis
        self.rank = len(basis) - 1
        self.class_degree = space.t * C.d + space.D.degree()
        self.base = base
        self.degree = self.class_degree - base.degree()
        self.generating = base.is_zero()

    def __repr__(self) -> str:
        return "LinearSeries(deg %d, rank %d%s)" % (
            self.degree, self.rank, "" if self.generating else ", base %d"
            % self.base.degree())

    def fingerprint(self) -> tuple:
        return (self.space.t, self.space.D.fingerprint(),
                tuple(tuple(tuple(c) for c in G.c) for G in self.basis))


class ImageModel:
    """The plane image of a rank-2 series: equation, map degree, and the
    singular points of the image (filled in by singular_points)."""

    __slots__ = ("C", "K", "G", "degree", "mu_map", "deg_L", "series_fp",
                 "singulars", "max_mult", "ordinary_all", "count_certified")

    def __init__(self, C: PlaneCurve, K: Field, G: Form, degree: int,
                 mu_map: int, deg_L: int, series_fp: tuple):
        self.C = C
        self.K = K
        self.G = G
        self.degree = degree
        self.mu_map = mu_map
        self.deg_L = deg_L
        self.series_fp = series_fp
        self.singulars: Optional[list] = None
        self.max_mult: Optional[int] = None
        self.ordinary_all: Optional[bool] = None
        self.count_certified: Optional[bool] = None

    def __repr__(self) -> str:
        return "ImageModel(deg %d, mu %d)" % (self.degree, self.mu_map)


class StabilityVerdict:
    """Outcome of the multiplicity criterion for a rank-2 series."""

    __slots__ = ("verdict", "threshold", "max_mult", "witness")

    def __init__(self, verdict: str, threshold: Fraction, max_mult: int,
                 witness):
        self.verdict = verdict
        self.threshold = threshold
        self.max_mult = max_mult
        self.witness = witness

    def __repr__(self) -> str:
        return "StabilityVerdict(%s, max %d vs %s)" % (
            self.verdict, self.max_mult, self.threshold)


# ---------------------------------------------------------------------------
# series construction


def _fmult_rows(C: PlaneCurve, K: Field, m: int) -> list:
    """Coefficient rows of F * (monomials of degree m - d), the ambient
    relations among degree-m forms on the curve."""
    if m < C.d:
        return []
    F = C.form_over(K)
    rows = []
    for (a, b, c) in monomials(m - C.d):
        mono = Form.from_terms(K, m - C.d, {(a, b, c): K.one})
        rows.append(list((mono * F).c))
    return rows


def make_series(C: PlaneCurve, S: SectionSpace,
                subspace: Optional[Sequence[Form]] = None) -> LinearSeries:
    """A linear series from a section space and an optional selection of
    sections (default: the full basis).

    Selected sections must be independent members of the space, and at
    least two are required; the base divisor of the selected system is
    computed and the generated degree recorded.
    """
    if S.G0 is None or not S.basis:
        raise ExactAlgError("cannot build a series on the zero space")
    K = S.K
    frows = _fmult_rows(C, K, S.m)
    if subspace is None:
        sel = tuple(S.basis)
    else:
        sel = tuple(subspace)
        span = [list(G.c) for G in S.basis] + frows
        rk0 = mat_rank(K, span)
        for G in sel:
            if not isinstance(G, Form) or G.d != S.m or G.K is not K:
                raise ExactAlgError(
                    "selected sections must be degree-m forms over the "
                    "presentation field")
            if G.is_zero():
                raise ExactAlgError("the zero form is not a section")
            if mat_rank(K, span + [list(G.c)]) != rk0:
                raise ExactAlgError("a selected form is not in the space")
    if len(sel) < 2:
        raise ExactAlgError("a linear series needs at least two sections")
    rows = frows + [list(G.c) for G in sel]
    rk_f = mat_rank(K, frows) if frows else 0
    if mat_rank(K, rows) != rk_f + len(sel):
        raise ExactAlgError("selected sections are dependent on the curve")
    base = base_locus(S, sections=(None if subspace is None else sel))
    if base is None:
        raise ExactAlgError("base locus computation failed")
    return LinearSeries(C, S, sel, base)


def slope_M(series: LinearSeries) -> Fraction:
    """Slope -deg(L)/rank of the kernel bundle of a generating pair."""
    if not series.generating:
        raise ExactAlgError(
            "the kernel bundle slope needs a generating pair; this series "
            "has a base divisor of degree %d" % series.base.degree())
    return Fraction(-series.degree, series.rank)


def pencil_base_degree(series: LinearSeries, W: Sequence[Form]) -> int:
    """Degree of the base divisor of a pencil inside the series: the
    pointwise minimum of the two section divisors."""
    W = tuple(W)
    if len(W) != 2:
        raise ExactAlgError("a pencil is spanned by exactly two sections")
    K = series.space.K
    frows = _fmult_rows(series.C, K, series.space.m)
    rows = frows + [list(G.c) for G in W]
    if mat_rank(K, rows) != (mat_rank(K, frows) if frows else 0) + 2:
        raise ExactAlgError("the two sections do not span a pencil")
    return base_locus(series.space, sections=W).degree()


# ---------------------------------------------------------------------------
# image interpolation


def _sample_points(C: PlaneCurve, Ke: Field, need: int
                   ) -> tuple[Field, Embedding, list]:
    """Deterministically enumerated curve points over an extension of the
    coefficient field, enough to pin the image equation."""
    for j in (2, 3, 4):
        L, emb = extension_of(Ke, j)
        FL = C.form_over(L)
        bp = FL.dehomog_z()
        ny = bp.deg_y + 1
        seed = C.seed_for("imgpts", (L.k,))
        pts = []
        for x0 in L.elements():
            coeffs = bp.coeffs_at_x(x0, ny)
            f = UniPoly(L, tuple(coeffs))
            if f.is_zero():
                continue
            roots = uni_roots(f, seed=seed)
            for y0 in sorted(roots):
                pts.append(CurvePoint(L, (x0, y0, L.one)))
                if len(pts) >= 4 * need:
                    break
            if len(pts) >= 4 * need:
                break
        if len(pts) >= need:
            return L, emb, pts
    raise ExactAlgError("not enough curve points over small extensions "
                        "to pin the image equation")


def _image_rows(L: Field, img: CurvePoint, degmax: int) -> list:
    """Powers of the image coordinates, for monomial rows of any degree
    up to degmax."""
    pows = []
    for c in img.xyz:
        row = [L.one]
        for _ in range(degmax):
            row.append(L.mul(row[-1], c))
        pows.append(row)
    return pows


def _divisors_of(n: int) -> list[int]:
    return [e for e in range(1, n + 1) if n % e == 0]


def image_curve(C: PlaneCurve, series: LinearSeries) -> ImageModel:
    """The plane image of a generating rank-2 series, by exact
    interpolation.

    Samples more distinct image points than a curve of smaller degree
    could contain, scans the divisors of deg(L) for the minimal degree
    with a one-dimensional interpolation kernel, validates the equation on
    held-out samples, and descends the coefficients to the coefficient
    field.  The map degree is deg(L)/e.
    """
    if not series.generating:
        raise ExactAlgError("image of a non-generating series")
    if series.rank != 2:
        raise ExactAlgError("plane image needs a rank-2 series")
    Ke = series.space.K
    degL = series.degree
    need = n_monomials(degL) + _EXTRA_ROWS + _HOLDOUT
    L, emb, pts = _sample_points(C, Ke, need)
    secs = [Form(L, G.d, tuple(emb(c) for c in G.c)) for G in series.basis]
    seen = set()
    images = []
    for P in pts:
        vals = tuple(G.eval_at(*P.xyz) for G in secs)
        if all(v == L.zero for v in vals):
            # the presentation carries the divisor inside the forms, so all
            # of them vanish on its support; those points add no row
            continue
        img = CurvePoint(L, vals)
        k = img.key()
        if k in seen:
            continue
        seen.add(k)
        images.append(img)
        if len(images) == need:
            break
    if len(images) < need:
        raise ExactAlgError("too few distinct image points; the sample "
                            "pool is exhausted")
    ptab = [_image_rows(L, img, degL) for img in images]
    for e in _divisors_of(degL):
        ncols = n_monomials(e)
        nrows = ncols + _EXTRA_ROWS
        rows = []
        for pows in ptab[:nrows]:
            rows.append([L.mul(L.mul(pows[0][a], pows[1][b]), pows[2][c])
                         for (a, b, c) in monomials(e)])
        ker = mat_kernel(L, rows)
        if not ker:
            continue
        if len(ker) > 1:
            raise ExactAlgError(
                "interpolation kernel in degree %d is %d-dimensional; "
                "samples are deficient" % (e, len(ker)))
        GL = Form(L, e, tuple(ker[0]))
        for pows in ptab[need - _HOLDOUT:]:
            val = L.zero
            for (a, b, c), v in zip(monomials(e), GL.c):
                term = L.mul(L.mul(pows[0][a], pows[1][b]), pows[2][c])
                val = L.add(val, L.mul(v, term))
            if val != L.zero:
                raise ExactAlgError(
                    "degree-%d image equation failed held-out validation"
                    % e)
        down = []
        for c in GL.c:
            pre = emb.preimage(c)
            if pre is None:
                raise ExactAlgError(
                    "image equation failed to descend to the coefficient "
                    "field")
            down.append(pre)
        G = Form(Ke, e, tuple(down)).normalized()
        mu = degL // e
        return ImageModel(C, Ke, G, e, mu, degL, series.fingerprint())
    raise ExactAlgError("no interpolation kernel up to deg(L); the image "
                        "sampling is inconsistent")


# ---------------------------------------------------------------------------
# singular points of the image


def _bp_dx(bp: BiPoly) -> BiPoly:
    return BiPoly(bp.K, tuple(u.deriv() for u in bp.ys))


def _bp_dy(bp: BiPoly) -> BiPoly:
    K = bp.K
    out = []
    for i, u in enumerate(bp.ys[1:], start=1):
        out.append(u.scale(K.from_int(i)))
    return BiPoly(K, tuple(out))


def _binary_squarefree(K: Field, coeffs: list) -> bool:
    """Whether a binary form given by ascending x-coefficients has no
    repeated projective root.  Total degree must stay below the field
    characteristic."""
    m = len(coeffs) - 1
    if m >= K.p:
        raise ExactAlgError("binary form degree reaches the characteristic")
    q = UniPoly(K, tuple(coeffs))
    if q.is_zero():
        return False
    if m - q.degree > 1:
        return False  # the root at infinity repeats
    if q.degree == 0:
        return True
    return uni_gcd(q, q.deriv()).degree == 0


def _bp_scale(bp: BiPoly, c: Elem) -> BiPoly:
    return BiPoly(bp.K, tuple(u.scale(c) for u in bp.ys))


def _bp_eval(bp: BiPoly, x0: Elem, y0: Elem) -> Elem:
    K = bp.K
    acc = K.zero
    for u in reversed(bp.ys):
        acc = K.add(K.mul(acc, y0), u.eval_at(x0))
    return acc


class _TaylorCtx:
    """Scaled partial derivatives dx^a dy^b g / (a! b!) of an affine curve
    equation, precomputed over the coefficient field and mapped to each
    point field on demand.  Exact while probed orders stay below the
    characteristic."""

    def __init__(self, C: PlaneCurve, Ke: Field, g: BiPoly):
        self.C = C
        self.Ke = Ke
        self.total = g.deg_y + max(0, g.x_degree())
        self._cols = {0: [g]}  # b -> [D_{0,b}, D_{1,b}, ...]
        self._mapped: dict = {}

    def _scaled(self, a: int, b: int) -> BiPoly:
        Ke = self.Ke
        if b not in self._cols:
            prev = self._scaled(0, b - 1)
            self._cols[b] = [_bp_scale(_bp_dy(prev), Ke.inv(Ke.from_int(b)))]
        col = self._cols[b]
        while len(col) <= a:
            n = len(col)
            col.append(_bp_scale(_bp_dx(col[n - 1]), Ke.inv(Ke.from_int(n))))
        return col[a]

    def value(self, Lp: Field, a: int, b: int, x1: Elem, y1: Elem) -> Elem:
        key = (id(Lp), a, b)
        bp = self._mapped.get(key)
        if bp is None:
            emb = self.C.embedding_between(self.Ke, Lp)
            src = self._scaled(a, b)
            bp = BiPoly(Lp, tuple(emb.map_poly(u) for u in src.ys))
            self._mapped[key] = bp
        return _bp_eval(bp, x1, y1)

    def mult_at(self, Lp: Field, x1: Elem, y1: Elem) -> tuple[int, bool]:
        """Multiplicity and ordinariness at an affine point already known
        to be singular."""
        for a, b in ((0, 0), (1, 0), (0, 1)):
            if self.value(Lp, a, b, x1, y1) != Lp.zero:
                raise ExactAlgError("elimination produced a smooth point")
        for t in range(2, self.total + 1):
            if t >= self.Ke.p:
                raise ExactAlgError(
                    "multiplicity probing reached the characteristic")
            low = [self.value(Lp, a, t - a, x1, y1) for a in range(t + 1)]
            if any(v != Lp.zero for v in low):
                return t, _binary_squarefree(Lp, low)
        raise ExactAlgError("the equation vanishes to every order at a "
                            "candidate point")


def _try_singulars(model: ImageModel, attempt: int) -> list:
    """One seeded coordinate change followed by resultant elimination;
    raises when a singular point sits on the chart's infinity line."""
    C, Ke, G = model.C, model.K, model.G
    e = G.d
    rng = random.Random(C.seed_for("imgsing", (model.series_fp, attempt)))
    for _draw in range(40):
        M = [[Ke.rand(rng) for _ in range(3)] for _ in range(3)]
        col1 = (M[0][1], M[1][1], M[2][1])
        det = _det3(Ke, M)
        if det != Ke.zero and G.eval_at(*col1) != Ke.zero:
            break
    else:
        raise ExactAlgError("no usable coordinate change found")
    Gr = G.apply_matrix(tuple(tuple(r) for r in M))
    parts = [Gr.partial(i) for i in range(3)]

    # singular points on the chart's infinity line force a retry; the
    # y-corner was excluded by the draw, so all such points are affine in t,
    # and a common root of the restrictions (over any extension) shows up in
    # the gcd over Ke
    q = UniPoly(Ke, tuple(Gr.restrict_z0()))
    for part in parts:
        q = uni_gcd(q, UniPoly(Ke, tuple(part.restrict_z0())))
    if q.degree > 0:
        raise ExactAlgError("a singular point escaped to the infinity line")

    g = Gr.dehomog_z()
    gx, gy = _bp_dx(g), _bp_dy(g)
    if gx.is_zero() or gy.is_zero():
        raise ExactAlgError("a partial derivative vanished identically")
    E1 = prs_resultant(g, gx)
    E2 = prs_resultant(g, gy)
    W = uni_gcd(E1, E2)
    tay = _TaylorCtx(C, Ke, g)
    found = []
    if W.degree > 0:
        for fac, _mult in uni_factor(
                W, seed=C.seed_for("imgsingf", (attempt,))):
            if fac.degree == 0:
                continue
            A, x1 = _x_root_field(C, Ke, fac, attempt)
            embA = C.embedding_between(Ke, A)
            s0 = _specialize_y(embA, g, x1)
            s1 = _specialize_y(embA, gx, x1)
            s2 = _specialize_y(embA, gy, x1)
            u = uni_gcd(uni_gcd(s0, s1), s2)
            if u.degree <= 0:
                continue
            for yfac, _m2 in uni_factor(
                    u, seed=C.seed_for("imgsingy", (attempt,))):
                dy = yfac.degree
                if dy == 0:
                    continue
                if dy == 1:
                    Lp = A
                    ym = yfac.monic()
                    xx, y1 = x1, A.neg(ym.c[0])
                else:
                    Lp, embp = extension_of(A, dy)
                    xx = embp(x1)
                    yp = embp.map_poly(yfac)
                    y1 = sorted(uni_roots(
                        yp, seed=C.seed_for("imgsingy2", (attempt,))))[0]
                # conjugate points share multiplicity and ordinariness, so
                # one probe covers the whole orbit
                orbit = _frobenius_orbit(Ke, Lp, xx, y1, fac.degree * dy)
                m, ordinary = tay.mult_at(Lp, xx, y1)
                ML = [[C.embedding_between(Ke, Lp)(M[i][j])
                       for j in range(3)] for i in range(3)]
                for xa, ya in orbit:
                    vec = (xa, ya, Lp.one)
                    orig = tuple(_dot3(Lp, ML[i], vec) for i in range(3))
                    found.append((CurvePoint(Lp, orig), m, ordinary))
    return found


def _x_root_field(C: PlaneCurve, Ke: Field, fac: UniPoly, attempt: int
                  ) -> tuple[Field, Elem]:
    """A field containing one root of an irreducible eliminant factor,
    together with that root.  Over a prime base the quotient by the factor
    itself serves as the field, making the generator a root for free."""
    f = fac.degree
    fm = fac.monic()
    if f == 1:
        return Ke, Ke.neg(fm.c[0])
    if Ke.k == 1:
        A = Field(Ke.p, f, tuple(c[0] for c in fm.c), check=False)
        return A, A.elem((0, 1))
    Lf, embf = extension_of(Ke, f)
    roots = sorted(uni_roots(embf.map_poly(fm),
                             seed=C.seed_for("imgsingr", (attempt,))))
    return Lf, roots[0]


def _specialize_y(emb: Embedding, bp: BiPoly, x1: Elem) -> UniPoly:
    bpf = BiPoly(emb.dst, tuple(emb.map_poly(u) for u in bp.ys))
    return UniPoly(emb.dst, tuple(bpf.coeffs_at_x(x1, bpf.deg_y + 1)))


def _frobenius_orbit(Ke: Field, Lp: Field, x1: Elem, y1: Elem, size: int
                     ) -> list:
    """The orbit of an affine point under the base-field power map; it must
    close after exactly `size` steps."""
    out = [(x1, y1)]
    x, y = x1, y1
    for i in range(size):
        for _ in range(Ke.k):
            x = Lp.pow_(x, Lp.p)
            y = Lp.pow_(y, Lp.p)
        if (x, y) == (x1, y1):
            if i != size - 1:
                raise ExactAlgError("a conjugacy orbit closed early")
            return out
        if i == size - 1:
            raise ExactAlgError("a conjugacy orbit failed to close")
        out.append((x, y))
    return out


def _det3(K: Field, M) -> Elem:
    a = K.mul(M[0][0], K.sub(K.mul(M[1][1], M[2][2]), K.mul(M[1][2], M[2][1])))
    b = K.mul(M[0][1], K.sub(K.mul(M[1][0], M[2][2]), K.mul(M[1][2], M[2][0])))
    c = K.mul(M[0][2], K.sub(K.mul(M[1][0], M[2][1]), K.mul(M[1][1], M[2][0])))
    return K.add(K.sub(a, b), c)


def _dot3(K: Field, row, vec) -> Elem:
    acc = K.zero
    for a, b in zip(row, vec):
        acc = K.add(acc, K.mul(a, b))
    return acc


def singular_points(model: ImageModel) -> list:
    """All singular points of the image curve with their multiplicities.

    Candidates come from the gcd of two elimination resultants after a
    seeded coordinate change; each point's multiplicity is the lowest
    total degree of the translated equation.  When the map is birational
    and every point is ordinary, the multiplicity sum is checked against
    the genus; a non-ordinary point downgrades that check to an
    inequality that is recorded on the model.
    """
    if model.singulars is not None:
        return [(P, m) for P, m, _o in model.singulars]
    if model.degree <= 1:
        model.singulars = []
        model.max_mult = 0
        model.ordinary_all = True
        model.count_certified = model.mu_map == 1
        return []
    last: Optional[Exception] = None
    for attempt in range(3):
        try:
            found = _try_singulars(model, attempt)
        except ExactAlgError as err:
            last = err
            continue
        ordinary_all = all(o for _P, _m, o in found)
        delta = sum(m * (m - 1) // 2 for _P, m, _o in found)
        if model.mu_map == 1:
            expected = ((model.degree - 1) * (model.degree - 2) // 2
                        - model.C.genus)
            if delta > expected:
                raise ExactAlgError(
                    "multiplicity sum %d exceeds the genus budget %d"
                    % (delta, expected))
            if ordinary_all and delta != expected:
                last = ExactAlgError(
                    "ordinary multiplicity sum %d misses the genus budget "
                    "%d; elimination must have lost a point" % (
                        delta, expected))
                continue
            model.count_certified = ordinary_all and delta == expected
        else:
            model.count_certified = False
        found.sort(key=lambda t: (-t[1], t[0].key()))
        model.singulars = found
        model.max_mult = max((m for _P, m, _o in found), default=0)
        model.ordinary_all = ordinary_all
        return [(P, m) for P, m, _o in found]
    raise last or ExactAlgError("singular point elimination failed")


# ---------------------------------------------------------------------------
# stability verdict


def linear_stability_verdict(C: PlaneCurve, series: LinearSeries,
                             model: Optional[ImageModel] = None
                             ) -> StabilityVerdict:
    """Stability of a rank-2 generating series by the multiplicity
    criterion: Stable when every image multiplicity is below deg(L)/2,
    Semistable on equality, Unstable above, with the extremal singular
    point as witness."""
    if series.rank != 2:
        raise ExactAlgError("the multiplicity criterion needs rank 2")
    if not series.generating:
        raise ExactAlgError("the multiplicity criterion needs a "
                            "generating pair")
    if model is None:
        model = image_curve(C, series)
    singular_points(model)
    if model.mu_map != 1:
        raise ExactAlgError(
            "the series is composed with a degree-%d cover; the "
            "multiplicity criterion needs a birational image"
            % model.mu_map)
    threshold = Fraction(series.degree, 2)
    mmax = model.max_mult or 0
    if mmax < threshold:
        return StabilityVerdict("Stable", threshold, mmax, None)
    worst = model.singulars[0]
    witness = (worst[0], worst[1])
    verdict = "Semistable" if mmax == threshold else "Unstable"
    return StabilityVerdict(verdict, threshold, mmax, witness)
