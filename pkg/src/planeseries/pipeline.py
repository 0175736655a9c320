"""End-to-end search, certification, and verification pipeline.

The pipeline samples divisors on a smooth plane curve until the adjoint
series cut out by one of them is special of rank 2, then pushes the
series through a fixed ladder of gates: empty base locus, birational
image of full degree, the Stable verdict of the multiplicity criterion,
the two dimension counts behind the kernel-bundle argument, and finally
the destabilizing syzygy itself.  A surviving instance is serialized as
a certificate whose every numeric claim can be recomputed from the
field, the curve, and the divisor alone; verify() does exactly that
recomputation without trusting anything else in the file.
"""

from __future__ import annotations

import json
import random
from fractions import Fraction
from math import gcd
from typing import Callable, Optional, Sequence

import numpy as np

from .exactalg.gf import ExactAlgError, Field, is_prime
from .exactalg.forms import Form, monomials, n_monomials
from .exactalg.linalg import mat_kernel, mat_rank
from .exactalg.towers import canonical_field
from .curve import PlaneCurve, CurvePoint, make_curve, all_points
from .riemann_roch import Divisor, SectionSpace, rr_space_twisted
from .linstab import (LinearSeries, make_series, image_curve,
                      singular_points, linear_stability_verdict,
                      pencil_base_degree)
from .syzygy import (GenericityError, line_class_space,
                     destabilizer_certificate, expand_syzygy,
                     form_coeff_data, fraction_data)

__all__ = [
    "CERT_VERSION", "PipelineConfig", "Rejection", "SearchExhausted",
    "CounterexampleCertificate", "VerifyReport", "fermat_septic",
    "curve_from_data", "search_w113", "build_L", "certify", "reproduce",
    "verify", "GATE_NAMES",
]

CERT_VERSION = "planeseries-cert-1"

GATE_NAMES = (
    "base locus",
    "image degree",
    "linear stability",
    "residual vanishing",
    "product dimension",
    "kernel relation",
)


class SearchExhausted(ExactAlgError):
    """The divisor search cannot succeed over the offered point field
    within its budget; the caller should enlarge the field."""


# ---------------------------------------------------------------------------
# configuration and curve construction


def fermat_septic(K: Field) -> PlaneCurve:
    """The degree-7 sum-of-powers curve x^7 + y^7 + z^7 = 0 over K."""
    if K.p == 7:
        raise ExactAlgError(
            "the degree-7 sum-of-powers curve is singular in "
            "characteristic 7")
    F = Form.from_int_terms(K, 7, {(7, 0, 0): 1, (0, 7, 0): 1,
                                   (0, 0, 7): 1})
    return make_curve(F)


def curve_from_data(K: Field, data: dict) -> PlaneCurve:
    """A smooth plane curve from {"degree", "coefficients"} with the
    coefficient vector in graded-lex order; entries are single residues
    or residue lists for extension fields."""
    d = int(data["degree"])
    raw = data["coefficients"]
    if len(raw) != n_monomials(d):
        raise ExactAlgError(
            "a degree-%d curve needs %d coefficients, got %d"
            % (d, n_monomials(d), len(raw)))
    coeffs = []
    for v in raw:
        if isinstance(v, (list, tuple)):
            coeffs.append(K.elem(v))
        else:
            coeffs.append(K.from_int(int(v)))
    return make_curve(Form(K, d, tuple(coeffs)))


class PipelineConfig:
    """Inputs of one reproduction run: field, curve, seed, and budget."""

    __slots__ = ("prime", "ext", "curve", "seed", "max_tries")

    def __init__(self, prime: int = 31, ext: int = 1,
                 curve="fermat7", seed: int = 0,
                 max_tries: int = 10 ** 6):
        if not is_prime(prime):
            raise ExactAlgError("characteristic %d is not prime" % prime)
        if ext < 1:
            raise ExactAlgError("extension degree must be >= 1")
        if max_tries < 1:
            raise ExactAlgError("the search budget must be >= 1")
        if curve == "fermat7" and prime == 7:
            raise ExactAlgError("the named curve degenerates in "
                                "characteristic 7")
        if curve != "fermat7" and not isinstance(curve, dict):
            raise ExactAlgError(
                'curve must be "fermat7" or a coefficient table')
        self.prime = prime
        self.ext = ext
        self.curve = curve
        self.seed = seed
        self.max_tries = max_tries

    def build_curve(self, K: Field) -> PlaneCurve:
        if self.curve == "fermat7":
            return fermat_septic(K)
        return curve_from_data(K, self.curve)


class Rejection:
    """A candidate turned away at one certification gate, as data."""

    __slots__ = ("gate", "reason")

    def __init__(self, gate: int, reason: str):
        self.gate = gate
        self.reason = reason

    def __repr__(self) -> str:
        return "Rejection(gate %d [%s]: %s)" % (
            self.gate, GATE_NAMES[self.gate - 1], self.reason)


# ---------------------------------------------------------------------------
# divisor search


def _rank_mod_p(M: np.ndarray, p: int) -> int:
    """Row-echelon rank of a small integer matrix mod p."""
    A = np.array(M % p, dtype=np.int64)
    nrows, ncols = A.shape
    r = 0
    for c in range(ncols):
        piv = -1
        for i in range(r, nrows):
            if A[i, c]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r] = (A[r] * inv) % p
        if r + 1 < nrows:
            A[r + 1:] = (A[r + 1:] - np.outer(A[r + 1:, c], A[r])) % p
        r += 1
        if r == nrows:
            break
    return r


def _adjoint_rows(C: PlaneCurve, L: Field):
    """Evaluation rows of the canonical-twist monomials at every
    L-rational point, cached per field; the numpy copy exists only for
    prime fields."""
    key = ("searchrows", L.tag())
    if key in C._cache:
        return C._cache[key]
    pts = all_points(C, L)
    t = C.canonical_twist
    mons = monomials(t)
    rows = []
    for P in pts:
        pows = []
        for coord in P.xyz:
            acc = [L.one]
            for _ in range(t):
                acc.append(L.mul(acc[-1], coord))
            pows.append(acc)
        rows.append([L.mul(L.mul(pows[0][a], pows[1][b]), pows[2][c])
                     for (a, b, c) in mons])
    np_rows = None
    if L.k == 1:
        np_rows = np.array([[v[0] for v in row] for row in rows],
                           dtype=np.int64)
    C._cache[key] = (pts, rows, np_rows)
    return C._cache[key]


def search_w113(C: PlaneCurve, K: Field, rng: random.Random,
                max_tries: int, state: Optional[dict] = None) -> Divisor:
    """Rejection-sample (g-2)-point divisors until the adjoint space
    jumps to dimension 3.

    Each try draws a uniform subset of the K-rational points and rank
    tests its evaluation matrix against the canonical-twist monomials:
    full rank is the generic rejection, one less pins the adjoint space
    to dimension exactly 3 and is accepted, anything lower is rejected
    as an oversize special stratum.  The optional state dict carries the
    try counter, so a certification loop can keep draining one budget
    across repeated calls.  Raises SearchExhausted when the budget runs
    out or the field cannot host the sample at all.
    """
    g = C.genus
    if g < 4:
        raise ExactAlgError("the adjoint search needs genus at least 4")
    need = g - 2
    pts, rows, np_rows = _adjoint_rows(C, K)
    n = len(pts)
    if n < need:
        raise SearchExhausted(
            "only %d rational points over %s; the sample needs %d"
            % (n, K.tag(), need))
    st = state if state is not None else {"tries": 0}
    idx = list(range(n))
    while st["tries"] < max_tries:
        st["tries"] += 1
        for i in range(need):
            j = rng.randrange(i, n)
            idx[i], idx[j] = idx[j], idx[i]
        sel = sorted(idx[:need])
        if np_rows is not None:
            rk = _rank_mod_p(np_rows[sel], K.p)
        else:
            rk = mat_rank(K, [rows[i] for i in sel])
        if rk == g - 3:
            return Divisor.from_points(C, [(pts[i], 1) for i in sel])
    raise SearchExhausted(
        "search budget of %d tries exhausted over %s"
        % (max_tries, K.tag()))


def build_L(C: PlaneCurve, D: Divisor) -> LinearSeries:
    """The adjoint series cut out by D: sections of the canonical class
    minus D, packaged as a complete series.  The divisor must come from
    an accepted search, so a dimension other than 3 means stale input."""
    S = rr_space_twisted(C, C.canonical_twist, -D)
    if S.h0 != 3:
        raise ExactAlgError(
            "stale input: the adjoint space of the offered divisor has "
            "dimension %d, not 3" % S.h0)
    return make_series(C, S)


# ---------------------------------------------------------------------------
# certification gates


def certify(C: PlaneCurve, L: LinearSeries, seed: Optional[int] = None):
    """Run a rank-2 series through the six gates.

    Returns a CounterexampleCertificate when every gate passes and a
    Rejection naming the failed gate otherwise; rejections are expected
    search outcomes, not errors.  Gate order: base locus, image degree,
    stability verdict, residual vanishing, product dimension, kernel
    relation.
    """
    S = L.space
    if not L.generating:
        return Rejection(1, "base locus has degree %d"
                         % L.base.degree())
    model = image_curve(C, L)
    if model.mu_map != 1 or model.degree != L.degree:
        return Rejection(2, "image degree %d under a degree-%d map; the "
                            "full series degree is %d"
                         % (model.degree, model.mu_map, L.degree))
    verdict = linear_stability_verdict(C, L, model)
    if verdict.verdict != "Stable":
        return Rejection(3, "verdict %s: multiplicity %d against "
                            "threshold %s"
                         % (verdict.verdict, verdict.max_mult,
                            verdict.threshold))
    B = line_class_space(C)
    resid = rr_space_twisted(C, (C.d - 3) - S.t - B.t, -(S.D + B.D))
    if resid.h0 != 0:
        return Rejection(4, "residual space has dimension %d" % resid.h0)
    T = rr_space_twisted(C, S.t + B.t, S.D + B.D)
    deg_B = B.t * C.d + B.D.degree()
    expect = L.degree + deg_B + 1 - C.genus
    if T.h0 != expect:
        return Rejection(5, "product space has dimension %d, the count "
                            "predicts %d" % (T.h0, expect))
    try:
        syz = destabilizer_certificate(C, L, B)
    except GenericityError as err:
        return Rejection(6, str(err))
    return _assemble(C, L, B, model, verdict, resid, T, syz, seed)


def _singular_data(model) -> list:
    out = []
    for P, m, ordinary in model.singulars:
        out.append({
            "field": P.K.describe(),
            "xyz": P.to_int_lists(),
            "multiplicity": m,
            "ordinary": bool(ordinary),
        })
    return out


def _assemble(C: PlaneCurve, L: LinearSeries, B: SectionSpace, model,
              verdict, resid: SectionSpace, T: SectionSpace, syz,
              seed: Optional[int]) -> "CounterexampleCertificate":
    S = L.space
    D = -S.D
    deg_B = B.t * C.d + B.D.degree()
    delta = sum(m * (m - 1) // 2 for _P, m, _o in model.singulars)
    data = {
        "version": CERT_VERSION,
        "seed": seed,
        "field": S.K.describe(),
        "curve": {"degree": C.d, "coefficients": form_coeff_data(C.F)},
        "divisor": D.to_data(),
        "series": {"twist": S.t, "degree": L.degree,
                   "basis": [form_coeff_data(G) for G in L.basis]},
        "aux_degree": deg_B,
        "h0": {"series": S.h0, "aux": B.h0, "product": T.h0,
               "residual": resid.h0},
        "base_locus_empty": True,
        "image": {
            "degree": model.degree,
            "map_degree": model.mu_map,
            "coefficients": form_coeff_data(model.G),
            "singular_points": _singular_data(model),
            "max_multiplicity": model.max_mult,
            "ordinary": bool(model.ordinary_all),
            "delta": delta,
            "count_certified": bool(model.count_certified),
        },
        "stability": {
            "verdict": verdict.verdict,
            "threshold": fraction_data(verdict.threshold),
            "max_multiplicity": verdict.max_mult,
        },
        "syzygy": syz.to_data(),
        "slopes": {"sub": fraction_data(syz.sub_slope),
                   "kernel": fraction_data(syz.kernel_slope)},
    }
    return CounterexampleCertificate(data)


class CounterexampleCertificate:
    """A serialized instance of the paired verdicts: linearly Stable,
    kernel bundle NotSemistable.  Everything numeric inside is
    recomputable from the field, the curve, and the divisor; to_json is
    canonical, so identical runs serialize byte-identically."""

    __slots__ = ("data",)

    def __init__(self, data: dict):
        self.data = data

    def to_json(self) -> str:
        return json.dumps(self.data, sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "CounterexampleCertificate":
        data = json.loads(text)
        if not isinstance(data, dict):
            raise ExactAlgError("a certificate must be a JSON object")
        return cls(data)

    def summary(self) -> str:
        img = self.data.get("image", {})
        sl = self.data.get("slopes", {})
        return ("degree %s series, image max multiplicity %s, slopes "
                "%s/%s > %s/%s" % (
                    self.data.get("series", {}).get("degree"),
                    img.get("max_multiplicity"),
                    sl.get("sub", {}).get("num"),
                    sl.get("sub", {}).get("den"),
                    sl.get("kernel", {}).get("num"),
                    sl.get("kernel", {}).get("den")))

    def __repr__(self) -> str:
        return "CounterexampleCertificate(%s)" % self.summary()


# ---------------------------------------------------------------------------
# reproduction loop


def reproduce(config: PipelineConfig,
              log: Optional[Callable[[str], None]] = None
              ) -> CounterexampleCertificate:
    """Search, certify, and serialize one instance under a fixed seed.

    One generator drives every draw, so the emitted certificate is a
    deterministic function of the configuration.  When the base point
    field exhausts its budget the search escalates once to the quadratic
    extension and rebases the curve there; a second exhaustion
    propagates.
    """
    say = log if log is not None else (lambda _s: None)
    K = canonical_field(config.prime, config.ext)
    C = config.build_curve(K)
    rng = random.Random(config.seed)
    state = {"tries": 0}
    escalated = False
    while True:
        try:
            D = search_w113(C, C.K, rng, config.max_tries, state)
        except SearchExhausted as err:
            if escalated:
                raise
            escalated = True
            K2 = canonical_field(K.p, 2 * K.k)
            say("%s; escalating to %s" % (err, K2.tag()))
            C = make_curve(C.form_over(K2))
            state = {"tries": 0}
            continue
        say("try %d: special divisor found" % state["tries"])
        L = build_L(C, D)
        outcome = certify(C, L, seed=config.seed)
        if isinstance(outcome, Rejection):
            say("try %d: rejected at gate %d [%s]: %s"
                % (state["tries"], outcome.gate,
                   GATE_NAMES[outcome.gate - 1], outcome.reason))
            continue
        say("try %d: certified" % state["tries"])
        return outcome


# ---------------------------------------------------------------------------
# independent verification


class _Bad(Exception):
    """Internal: a schema violation with a location string."""


def _want(data: dict, key: str, kind, where: str):
    if not isinstance(data, dict) or key not in data:
        raise _Bad("missing %s.%s" % (where, key))
    v = data[key]
    if kind is int:
        # bool is an int subclass; a bare True is still a format error
        if not isinstance(v, int) or isinstance(v, bool):
            raise _Bad("%s.%s must be an integer" % (where, key))
    elif not isinstance(v, kind):
        raise _Bad("%s.%s has the wrong type" % (where, key))
    return v


def _parse_field(data: dict, where: str) -> Field:
    p = _want(data, "p", int, where)
    k = _want(data, "k", int, where)
    mod = _want(data, "modulus", list, where)
    if not all(isinstance(v, int) and not isinstance(v, bool)
               for v in mod):
        raise _Bad("%s.modulus must hold integers" % where)
    if not is_prime(p) or k < 1 or len(mod) != k + 1:
        raise _Bad("%s does not describe a field" % where)
    if not all(0 <= v < p for v in mod):
        raise _Bad("%s.modulus is not reduced" % where)
    try:
        cand = canonical_field(p, k)
    except ExactAlgError:
        cand = None
    if cand is not None and list(cand.modulus) == mod:
        return cand
    try:
        return Field(p, k, tuple(mod))
    except ExactAlgError as err:
        raise _Bad("%s: %s" % (where, err))


def _parse_form(K: Field, d: int, rows, where: str) -> Form:
    if not isinstance(rows, list) or len(rows) != n_monomials(d):
        raise _Bad("%s must list %d coefficients"
                   % (where, n_monomials(d)))
    coeffs = []
    for i, row in enumerate(rows):
        if (not isinstance(row, list) or len(row) != K.k
                or not all(isinstance(v, int) and not isinstance(v, bool)
                           and 0 <= v < K.p for v in row)):
            raise _Bad("%s[%d] must be a length-%d residue vector"
                       % (where, i, K.k))
        coeffs.append(tuple(row))
    return Form(K, d, tuple(coeffs))


def _parse_fraction(data, where: str) -> Fraction:
    num = _want(data, "num", int, where)
    den = _want(data, "den", int, where)
    if den <= 0 or gcd(num, den) != 1:
        raise _Bad("%s must be in lowest terms with positive "
                   "denominator" % where)
    return Fraction(num, den)


class VerifyReport:
    """Outcome of an independent certificate verification: one line per
    check, overall pass only when every line passes."""

    __slots__ = ("checks",)

    def __init__(self, checks: Sequence[tuple]):
        self.checks = list(checks)

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(ok for _n, ok, _d in self.checks)

    def lines(self) -> list:
        out = []
        for name, ok, detail in self.checks:
            mark = "ok  " if ok else "FAIL"
            out.append("[%s] %-28s%s" % (mark, name,
                                         (" " + detail) if detail else ""))
        out.append("certificate %s" % ("PASS" if self.passed else "FAIL"))
        return out

    def __repr__(self) -> str:
        return "VerifyReport(%s, %d checks)" % (
            "PASS" if self.passed else "FAIL", len(self.checks))


def verify(data) -> VerifyReport:
    """Recompute a certificate's claims from its field, curve, and
    divisor, trusting nothing else in the file.

    Checks, in order: schema shape, curve smoothness, divisor
    membership, the four section-space dimensions and the series basis,
    the image model with its singular points, the stability verdict, the
    syzygy re-expanded from the serialized forms alone, the slope
    comparison, and pencil spot-checks of the multiplicity list.  Aborts
    early only when a later check has lost its inputs.
    """
    if isinstance(data, CounterexampleCertificate):
        data = data.data
    checks: list = []

    def note(name: str, ok: bool, detail: str = "") -> bool:
        checks.append((name, bool(ok), detail))
        return bool(ok)

    # schema and field
    try:
        if not isinstance(data, dict):
            raise _Bad("certificate must be a JSON object")
        version = _want(data, "version", str, "certificate")
        if version != CERT_VERSION:
            raise _Bad("unknown version %r" % version)
        K = _parse_field(_want(data, "field", dict, "certificate"),
                         "field")
        curve_block = _want(data, "curve", dict, "certificate")
        d = _want(curve_block, "degree", int, "curve")
        if d < 4:
            raise _Bad("curve.degree must be at least 4")
        F = _parse_form(K, d, _want(curve_block, "coefficients", list,
                                    "curve"), "curve.coefficients")
        for key in ("divisor", "series", "h0", "image", "stability",
                    "syzygy", "slopes"):
            _want(data, key, dict, "certificate")
        _want(data, "aux_degree", int, "certificate")
        _want(data, "base_locus_empty", bool, "certificate")
    except _Bad as err:
        note("schema", False, str(err))
        return VerifyReport(checks)
    note("schema", True)

    # curve: make_curve recertifies smoothness
    try:
        C = make_curve(F)
    except ExactAlgError as err:
        note("curve_smooth", False, str(err))
        return VerifyReport(checks)
    note("curve_smooth", True, "degree %d, genus %d" % (C.d, C.genus))

    # divisor: every point must lie on the curve over its stated field
    try:
        div_block = data["divisor"]
        pts_raw = _want(div_block, "points", list, "divisor")
        dk = _parse_field(_want(div_block, "field", dict, "divisor"),
                          "divisor.field")
        for i, e in enumerate(pts_raw):
            xyz = _want(e, "xyz", list, "divisor.points[%d]" % i)
            _want(e, "mult", int, "divisor.points[%d]" % i)
            if (len(xyz) != 3 or not all(
                    isinstance(row, list) and len(row) == dk.k
                    and all(isinstance(v, int) and not isinstance(v, bool)
                            and 0 <= v < dk.p for v in row)
                    for row in xyz)):
                raise _Bad("divisor.points[%d].xyz must hold three "
                           "length-%d residue vectors" % (i, dk.k))
        D = Divisor.from_data(C, div_block)
    except (_Bad, ExactAlgError) as err:
        note("divisor_on_curve", False, str(err))
        return VerifyReport(checks)
    note("divisor_on_curve", True, "degree %d" % D.degree())

    # section spaces: the four dimensions and the series basis
    try:
        series_block = data["series"]
        twist = _want(series_block, "twist", int, "series")
        deg_stored = _want(series_block, "degree", int, "series")
        basis_stored = _want(series_block, "basis", list, "series")
        if twist != C.d - 3:
            raise _Bad("series.twist must be the canonical twist %d"
                       % (C.d - 3))
        h0_block = data["h0"]
        h0_stored = {key: _want(h0_block, key, int, "h0")
                     for key in ("series", "aux", "product", "residual")}
    except _Bad as err:
        note("h0_ledger", False, str(err))
        return VerifyReport(checks)

    S = rr_space_twisted(C, twist, -D)
    B = line_class_space(C)
    T = rr_space_twisted(C, twist + B.t, -D + B.D)
    resid = rr_space_twisted(C, (C.d - 3) - twist - B.t, D - B.D)
    deg_B = B.t * C.d + B.D.degree()
    got = {"series": S.h0, "aux": B.h0, "product": T.h0,
           "residual": resid.h0}
    note("h0_ledger", got == h0_stored and S.h0 == 3,
         "series %d, aux %d, product %d, residual %d"
         % (S.h0, B.h0, T.h0, resid.h0))
    if S.h0 != 3:
        return VerifyReport(checks)
    L = make_series(C, S)
    note("series_basis",
         [form_coeff_data(G) for G in L.basis] == basis_stored
         and L.degree == deg_stored
         and data["aux_degree"] == deg_B,
         "degree %d, aux degree %d" % (L.degree, deg_B))
    note("base_locus",
         data["base_locus_empty"] is True and L.generating,
         "base degree %d" % L.base.degree())
    if not L.generating:
        return VerifyReport(checks)

    # image model and singular points
    img_block = data["image"]
    try:
        model = image_curve(C, L)
        singular_points(model)
    except ExactAlgError as err:
        note("image_model", False, str(err))
        return VerifyReport(checks)
    delta = sum(m * (m - 1) // 2 for _P, m, _o in model.singulars)
    try:
        img_ok = (
            _want(img_block, "degree", int, "image") == model.degree
            and _want(img_block, "map_degree", int, "image")
            == model.mu_map
            and _parse_form(model.K, model.degree,
                            _want(img_block, "coefficients", list,
                                  "image"), "image.coefficients").c
            == model.G.c
        )
    except _Bad as err:
        note("image_model", False, str(err))
        return VerifyReport(checks)
    note("image_model", img_ok,
         "degree %d, map degree %d" % (model.degree, model.mu_map))
    sing_ok = (
        img_block.get("singular_points") == _singular_data(model)
        and img_block.get("max_multiplicity") == model.max_mult
        and img_block.get("ordinary") == bool(model.ordinary_all)
        and img_block.get("delta") == delta
        and img_block.get("count_certified")
        == bool(model.count_certified)
    )
    note("singular_points", sing_ok,
         "%d points, max multiplicity %d, delta %d"
         % (len(model.singulars), model.max_mult or 0, delta))

    # stability verdict
    try:
        verdict = linear_stability_verdict(C, L, model)
        thr = _parse_fraction(data["stability"].get("threshold"),
                              "stability.threshold")
        stab_ok = (
            verdict.verdict == "Stable"
            and data["stability"].get("verdict") == verdict.verdict
            and thr == verdict.threshold
            and data["stability"].get("max_multiplicity")
            == verdict.max_mult
        )
        note("stability", stab_ok, "%s, max %d against %s"
             % (verdict.verdict, verdict.max_mult, verdict.threshold))
    except (_Bad, ExactAlgError) as err:
        note("stability", False, str(err))

    # syzygy: re-expand from the serialized forms alone
    try:
        syz_block = data["syzygy"]
        md = _want(syz_block, "multiplier_degree", int, "syzygy")
        bd = _want(syz_block, "basis_degree", int, "syzygy")
        if md != B.m or bd != S.m:
            raise _Bad("syzygy degrees (%d, %d) do not match the "
                       "presentation (%d, %d)" % (md, bd, B.m, S.m))
        mults_raw = _want(syz_block, "multipliers", list, "syzygy")
        basis_raw = _want(syz_block, "basis", list, "syzygy")
        if len(mults_raw) != 3 or len(basis_raw) != 3:
            raise _Bad("syzygy needs three multipliers and three forms")
        mults = [_parse_form(K, md, rows, "syzygy.multipliers[%d]" % i)
                 for i, rows in enumerate(mults_raw)]
        basis = [_parse_form(K, bd, rows, "syzygy.basis[%d]" % i)
                 for i, rows in enumerate(basis_raw)]
        if all(a.is_zero() for a in mults):
            raise _Bad("syzygy.multipliers are all zero")
        if basis_raw != [form_coeff_data(G) for G in L.basis]:
            raise _Bad("syzygy.basis does not present this series")
        if syz_block.get("verdict") != "NotSemistable":
            raise _Bad("syzygy.verdict must be NotSemistable")
        note("syzygy_expansion", expand_syzygy(C, mults, basis),
             "degree %d multipliers against the series basis" % md)
    except (_Bad, ExactAlgError) as err:
        note("syzygy_expansion", False, str(err))

    # slopes: recomputed from the degrees, strict comparison required
    try:
        sub = _parse_fraction(data["slopes"].get("sub"), "slopes.sub")
        ker = _parse_fraction(data["slopes"].get("kernel"),
                              "slopes.kernel")
        syz_slopes = data["syzygy"].get("slopes", {})
        slopes_ok = (
            sub == Fraction(-deg_B)
            and ker == Fraction(-L.degree, 2)
            and sub > ker
            and syz_slopes.get("sub") == fraction_data(sub)
            and syz_slopes.get("kernel") == fraction_data(ker)
        )
        note("slopes", slopes_ok, "%s > %s" % (sub, ker))
    except _Bad as err:
        note("slopes", False, str(err))

    # spot checks: pencils through image points recover multiplicities
    spots = [(P, m) for P, m, _o in model.singulars if P.K == C.K][:3]
    spot_ok = True
    details = []
    for P, m in spots:
        kern = mat_kernel(C.K, [list(P.xyz)], ncols=3)
        W = []
        for vec in kern:
            G = Form.zero(C.K, L.basis[0].d)
            for r in range(3):
                G = G + L.basis[r].scale(vec[r])
            W.append(G)
        b = pencil_base_degree(L, W)
        details.append("%d" % b)
        if b != m:
            spot_ok = False
    note("multiplicity_spot_checks", spot_ok,
         "%d pencils, base degrees %s"
         % (len(spots), ", ".join(details) if details else "none"))
    return VerifyReport(checks)
