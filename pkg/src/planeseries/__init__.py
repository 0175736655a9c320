"""Exact linear series, linear stability, and kernel-bundle slopes on
smooth plane curves over finite fields.

The layers, bottom up: exactalg (fields, polynomials, forms, linear
algebra, elimination), curve (smooth plane curves and their points),
riemann_roch (divisors and section spaces of twisted classes), linstab
(linear series, plane images, the multiplicity criterion), syzygy
(multiplication maps and slope destabilization certificates), and
pipeline (search, certification, serialization, verification) with its
command-line front end in cli.
"""

from .exactalg.gf import ExactAlgError, Field
from .exactalg.forms import Form, monomials, n_monomials
from .exactalg.towers import canonical_field
from .curve import (PlaneCurve, CurvePoint, make_curve, rational_points,
                    all_points, intersection_divisor, ord_at)
from .riemann_roch import (Divisor, SectionSpace, rr_space,
                           rr_space_twisted, rho)
from .linstab import (LinearSeries, ImageModel, StabilityVerdict,
                      make_series, slope_M, pencil_base_degree,
                      image_curve, singular_points,
                      linear_stability_verdict)
from .syzygy import (MultiplicationMap, SyzygyCertificate,
                     GenericityError, PencilRejected, line_class_space,
                     mult_map, destabilizer_certificate,
                     pencil_to_destabilizer, probe, expand_syzygy)
from .pipeline import (PipelineConfig, Rejection, SearchExhausted,
                       CounterexampleCertificate, VerifyReport,
                       fermat_septic, curve_from_data, search_w113,
                       build_L, certify, reproduce, verify)

__version__ = "0.1.0"

__all__ = [
    "ExactAlgError", "Field", "Form", "monomials", "n_monomials",
    "canonical_field",
    "PlaneCurve", "CurvePoint", "make_curve", "rational_points",
    "all_points", "intersection_divisor", "ord_at",
    "Divisor", "SectionSpace", "rr_space", "rr_space_twisted", "rho",
    "LinearSeries", "ImageModel", "StabilityVerdict", "make_series",
    "slope_M", "pencil_base_degree", "image_curve", "singular_points",
    "linear_stability_verdict",
    "MultiplicationMap", "SyzygyCertificate", "GenericityError",
    "PencilRejected", "line_class_space", "mult_map",
    "destabilizer_certificate", "pencil_to_destabilizer", "probe",
    "expand_syzygy",
    "PipelineConfig", "Rejection", "SearchExhausted",
    "CounterexampleCertificate", "VerifyReport", "fermat_septic",
    "curve_from_data", "search_w113", "build_L", "certify", "reproduce",
    "verify",
    "__version__",
]
