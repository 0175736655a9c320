"""Multiplication maps on sections, kernel syzygies, and slope
destabilization certificates.

For a generating rank-2 series the kernel of the evaluation map
V (x) O_C -> L is a rank-2 bundle of slope -deg(L)/2.  A nonzero kernel
vector of the section multiplication V (x) H0(B) -> H0(L(x)B) reshapes
into a relation a1*G1 + a2*G2 + a3*G3 = 0 among the defining forms and
realizes the dual of B as a sub-line-bundle of slope -deg(B); whenever
-deg(B) > -deg(L)/2 that relation certifies the kernel bundle is not
semistable.  The auxiliary class probed by the certificate is the line
section class, so deg(B) is the curve degree.
"""

from __future__ import annotations

from fractions import Fraction

from .exactalg.gf import ExactAlgError
from .exactalg.forms import Form, monomials, n_monomials
from .exactalg.linalg import mat_kernel, mat_rank, mat_solve
from .exactalg.elim import bi_gcd, is_constant_poly
from .curve import PlaneCurve
from .riemann_roch import Divisor, SectionSpace, rr_space_twisted
from .linstab import LinearSeries, pencil_base_degree, slope_M

__all__ = [
    "MultiplicationMap", "SyzygyCertificate", "SlopeComparison",
    "ProbeReport", "GenericityError", "PencilRejected",
    "line_class_space", "mult_map", "destabilizer_certificate",
    "pencil_to_destabilizer", "probe", "expand_syzygy",
    "form_coeff_data", "fraction_data",
]


class GenericityError(ExactAlgError):
    """The instance lies in the excluded locus where the dimension count
    behind the destabilization argument breaks down."""


class PencilRejected(ExactAlgError):
    """The offered pencil does not witness strict linear instability."""

    def __init__(self, msg: str, boundary: bool = False):
        super().__init__(msg)
        self.boundary = boundary


def form_coeff_data(G: Form) -> list:
    """Coefficient vector of a form as residue lists, graded-lex order."""
    return [list(c) for c in G.c]


def fraction_data(q: Fraction) -> dict:
    return {"num": q.numerator, "den": q.denominator}


def line_class_space(C: PlaneCurve) -> SectionSpace:
    """Sections of the line section class: every linear form restricts to
    a section, and the class has degree equal to the curve degree."""
    return rr_space_twisted(C, 1, Divisor.zero(C))


def _class_degree(S: SectionSpace) -> int:
    return S.t * S.C.d + S.D.degree()


class MultiplicationMap:
    """The section multiplication V (x) H0(B) -> H0(L(x)B) as a matrix.

    Columns are indexed by basis pairs (i, j) flattened as i*h0(B) + j,
    rows by the product-space basis; each column holds the coordinates of
    the product of sections i and j.  The kernel collects the linear
    relations among all such products.
    """

    __slots__ = ("C", "series", "aux", "target", "source_dim", "matrix",
                 "kernel")

    def __init__(self, C: PlaneCurve, series: LinearSeries,
                 aux: SectionSpace, target: SectionSpace,
                 matrix: tuple, kernel: tuple):
        self.C = C
        self.series = series
        self.aux = aux
        self.target = target
        self.source_dim = len(series.basis) * len(aux.basis)
        self.matrix = matrix
        self.kernel = kernel

    def __repr__(self) -> str:
        return "MultiplicationMap(source %d, target %d, kernel %d)" % (
            self.source_dim, self.target.h0, len(self.kernel))


def mult_map(C: PlaneCurve, series: LinearSeries,
             aux: SectionSpace) -> MultiplicationMap:
    """Multiplication of the series sections by the auxiliary sections.

    The product space is computed as the section space of the summed
    class and cross-checked against the Riemann-Roch prediction before
    anything else is trusted.  Each product is expressed in the product
    space presentation by one exact membership solve; multiples of the
    curve equation enter as extra columns once the comparison degree
    reaches the curve degree.
    """
    S = series.space
    if aux.K is not S.K:
        raise ExactAlgError(
            "the series and the auxiliary space live over different fields")
    if aux.C is not C or S.C is not C:
        raise ExactAlgError("spaces attached to a different curve")
    if S.G0 is None or aux.G0 is None or not series.basis or not aux.basis:
        raise ExactAlgError("multiplication needs two nonzero spaces")
    K = S.K
    t_T = S.t + aux.t
    D_T = S.D + aux.D
    target = rr_space_twisted(C, t_T, D_T)
    deg_T = t_T * C.d + D_T.degree()
    resid = rr_space_twisted(C, (C.d - 3) - t_T, -D_T)
    if target.h0 != deg_T + 1 - C.genus + resid.h0:
        raise ExactAlgError("the product space dimension disagrees with "
                            "the Riemann-Roch prediction")
    if target.G0 is None:
        raise ExactAlgError("the product space is zero, yet the factors "
                            "have sections")
    # membership system: a product (b/G0_S)(c/G0_aux) equals sum_j x_j
    # (t_j/G0_T) exactly when b*c*G0_T = sum_j x_j t_j*G0_S*G0_aux up to
    # a multiple of the curve equation
    N = S.m + aux.m + target.m0
    cols = [list((tj * S.G0 * aux.G0).c) for tj in target.basis]
    if N >= C.d:
        for mu in monomials(N - C.d):
            Fm = C.F * Form.from_terms(K, N - C.d, {mu: K.one})
            cols.append(list(Fm.c))
    A = [[col[r] for col in cols] for r in range(n_monomials(N))]
    nsrc = len(series.basis) * len(aux.basis)
    rows = [[K.zero] * nsrc for _ in range(target.h0)]
    for i, Gi in enumerate(series.basis):
        for j, cj in enumerate(aux.basis):
            sol = mat_solve(K, A, list((Gi * cj * target.G0).c))
            if sol is None:
                raise ExactAlgError(
                    "a section product escaped the computed product space")
            for r in range(target.h0):
                rows[r][i * len(aux.basis) + j] = sol[r]
    kernel = mat_kernel(K, rows, ncols=nsrc)
    rank = mat_rank(K, rows) if rows else 0
    if len(kernel) != nsrc - rank:
        raise ExactAlgError("kernel dimension disagrees with the rank")
    return MultiplicationMap(C, series, aux, target,
                             tuple(tuple(r) for r in rows),
                             tuple(tuple(v) for v in kernel))


class SyzygyCertificate:
    """A destabilizing relation among the defining forms of a series.

    Carries the relation multipliers, the forms themselves, and the slope
    pair it certifies: the dual of the auxiliary class embeds in the
    kernel bundle with sub_slope strictly above kernel_slope, so the
    verdict on the kernel bundle is NotSemistable.  The relation must
    re-verify by pure polynomial expansion from the serialized data.
    """

    __slots__ = ("linear_forms", "basis", "sub_slope", "kernel_slope",
                 "verdict", "mult")

    def __init__(self, linear_forms: tuple, basis: tuple,
                 sub_slope: Fraction, kernel_slope: Fraction,
                 mult: MultiplicationMap):
        self.linear_forms = linear_forms
        self.basis = basis
        self.sub_slope = sub_slope
        self.kernel_slope = kernel_slope
        self.verdict = "NotSemistable"
        self.mult = mult

    def __repr__(self) -> str:
        return "SyzygyCertificate(%s: slope %s > %s)" % (
            self.verdict, self.sub_slope, self.kernel_slope)

    def to_data(self) -> dict:
        return {
            "multiplier_degree": self.linear_forms[0].d,
            "basis_degree": self.basis[0].d,
            "multipliers": [form_coeff_data(a) for a in self.linear_forms],
            "basis": [form_coeff_data(G) for G in self.basis],
            "slopes": {"sub": fraction_data(self.sub_slope),
                       "kernel": fraction_data(self.kernel_slope)},
            "verdict": self.verdict,
        }


def expand_syzygy(C: PlaneCurve, multipliers, basis) -> bool:
    """True when sum(a_i * G_i) vanishes identically on the curve, checked
    by expanding the products; below the curve degree this is literal
    polynomial vanishing, above it the expansion must be an exact multiple
    of the curve equation."""
    K = C.K
    terms = [a * G for a, G in zip(multipliers, basis)]
    E = terms[0]
    for T in terms[1:]:
        E = E + T
    if E.d < C.d:
        return E.is_zero()
    if E.is_zero():
        return True
    cols = []
    for mu in monomials(E.d - C.d):
        Fm = C.F * Form.from_terms(K, E.d - C.d, {mu: K.one})
        cols.append(list(Fm.c))
    A = [[col[r] for col in cols] for r in range(n_monomials(E.d))]
    return mat_solve(K, A, list(E.c)) is not None


def _no_common_factor(C: PlaneCurve, series: LinearSeries) -> None:
    # a factor shared by every section would survive in the iterated gcd
    # of the dehomogenizations, and its curve zeros would be base points;
    # both detectors must come back clean
    g = series.basis[0].dehomog_z()
    for G in series.basis[1:]:
        g = bi_gcd(g, G.dehomog_z())
    if not is_constant_poly(g):
        raise ExactAlgError(
            "the defining forms share a common factor; the relation does "
            "not give a sub-line-bundle of the expected degree")
    if not series.base.is_zero():
        raise ExactAlgError(
            "the series has base points of total degree %d; the relation "
            "does not give a sub-line-bundle of the expected degree"
            % series.base.degree())


def destabilizer_certificate(C: PlaneCurve, series: LinearSeries,
                             aux: SectionSpace | None = None
                             ) -> SyzygyCertificate:
    """Destabilization certificate for the kernel bundle of a rank-2
    series, probing the dual of the line section class.

    The dimension count behind the argument needs the residual space of
    the product class to vanish; that is checked per instance and its
    failure reported as GenericityError so a search pipeline can resample.
    A nonzero kernel vector of the multiplication map is reshaped into
    multipliers (a1, a2, a3), the relation is re-verified by expansion,
    the forms are checked to share no common factor, and the slope pair
    is recorded with the NotSemistable verdict.
    """
    if series.rank != 2 or len(series.basis) != 3:
        raise ExactAlgError("the certificate construction needs a rank-2 "
                            "series presented by three sections")
    if aux is None:
        aux = line_class_space(C)
    S = series.space
    resid = rr_space_twisted(C, (C.d - 3) - S.t - aux.t, -(S.D + aux.D))
    if resid.h0 != 0:
        raise GenericityError(
            "the residual space of the product class has dimension %d; "
            "the instance lies in the excluded locus" % resid.h0)
    deg_B = _class_degree(aux)
    deg_L = series.degree
    sub_slope = Fraction(-deg_B)
    kernel_slope = Fraction(-deg_L, series.rank)
    if not sub_slope > kernel_slope:
        raise ExactAlgError(
            "slope %s does not exceed the kernel bundle slope %s; the "
            "relation would not destabilize" % (sub_slope, kernel_slope))
    mm = mult_map(C, series, aux)
    if not mm.kernel:
        raise ExactAlgError("the multiplication map has no kernel, against "
                            "the dimension count")
    vec = mm.kernel[0]
    nB = len(aux.basis)
    mults = []
    for i in range(3):
        a = Form.zero(aux.K, aux.m)
        for j in range(nB):
            a = a + aux.basis[j].scale(vec[i * nB + j])
        mults.append(a)
    if all(a.is_zero() for a in mults):
        raise ExactAlgError("a nonzero kernel vector folded to zero "
                            "multipliers; the auxiliary basis is degenerate")
    if not expand_syzygy(C, mults, series.basis):
        raise ExactAlgError("the extracted relation fails to expand to "
                            "zero on the curve")
    _no_common_factor(C, series)
    return SyzygyCertificate(tuple(mults), tuple(series.basis),
                             sub_slope, kernel_slope, mm)


class SlopeComparison:
    """Slope of the sub-line-bundle induced by a pencil inside the kernel
    bundle of the ambient series, against the ambient slope."""

    __slots__ = ("generated_degree", "sub_slope", "ambient_slope", "strict")

    def __init__(self, generated_degree: int, sub_slope: Fraction,
                 ambient_slope: Fraction, strict: bool):
        self.generated_degree = generated_degree
        self.sub_slope = sub_slope
        self.ambient_slope = ambient_slope
        self.strict = strict

    def __repr__(self) -> str:
        return "SlopeComparison(%s > %s, generated degree %d)" % (
            self.sub_slope, self.ambient_slope, self.generated_degree)


def pencil_to_destabilizer(C: PlaneCurve, series: LinearSeries,
                           W) -> SlopeComparison:
    """Turn a pencil witnessing linear instability into a kernel-bundle
    destabilizer: a pencil generating degree e gives a sub-line-bundle of
    degree -e, so e strictly below deg(L)/rank destabilizes.

    A pencil generating exactly deg(L)/rank is rejected for strict
    instability but flagged as the semistable boundary.
    """
    if not series.generating:
        raise ExactAlgError("the ambient series must be generating")
    b = pencil_base_degree(series, W)
    e = series.class_degree - b
    ambient = slope_M(series)
    sub = Fraction(-e)
    if sub > ambient:
        return SlopeComparison(e, sub, ambient, True)
    if sub == ambient:
        raise PencilRejected(
            "the pencil generates degree %d, the semistable boundary; "
            "rejected for strict instability" % e, boundary=True)
    raise PencilRejected(
        "the pencil generates degree %d, not below %s; it is not a "
        "linear destabilizer" % (e, -ambient))


class ProbeReport:
    """Kernel probe of the multiplication map against one auxiliary
    space, with the slope comparison its dual inclusion would give."""

    __slots__ = ("mult", "kernel_dim", "sub_slope", "ambient_slope",
                 "destabilizing")

    def __init__(self, mult: MultiplicationMap, sub_slope: Fraction,
                 ambient_slope: Fraction):
        self.mult = mult
        self.kernel_dim = len(mult.kernel)
        self.sub_slope = sub_slope
        self.ambient_slope = ambient_slope
        self.destabilizing = (self.kernel_dim > 0
                              and sub_slope > ambient_slope)

    def __repr__(self) -> str:
        return "ProbeReport(kernel %d, slope %s vs %s)" % (
            self.kernel_dim, self.sub_slope, self.ambient_slope)


def probe(C: PlaneCurve, series: LinearSeries,
          aux: SectionSpace) -> ProbeReport:
    """Probe an arbitrary auxiliary section space for kernel relations.

    Ships unoptimized: every call recomputes the product space and all
    membership solves.  The dedicated line-class search is
    destabilizer_certificate.
    """
    mm = mult_map(C, series, aux)
    return ProbeReport(mm, Fraction(-_class_degree(aux)), slope_M(series))
