"""Operator calculus, subordination checks and admissibility scans for
complex-valued harmonic maps f = h + conj(g) on the unit disk."""

from .admissibility import (
    AdmissibilityScanConfig,
    AffinePsi,
    CustomPsi,
    check_eta_form,
    check_implication,
    rho_limit_scan,
    scan_admissibility,
)
from .domains import (
    BoundaryMapQ,
    Disk,
    Ellipse,
    HalfPlane,
    JordanImage,
    boundary_samples,
    builtin_boundary_map,
    ellipse_domain,
    image_of_disk,
    jordan_domain,
)
from .errors import (
    DegenerateBoundaryError,
    FlatModulusError,
    HarmsubError,
    HypothesisViolationError,
    NearZeroDenominatorError,
    NoCrossingError,
    NormalizationError,
    SeriesFormatError,
    SingularEvaluationError,
)
from .examples import ExampleConfig, example3_chain, example3_threshold, example4_closed_form, run_example
from .report import ScanReport
from .series import (
    HarmonicMap,
    HarmonicSeries,
    apply_D,
    apply_Dfrak,
    apply_Dn,
    deserialize,
    dilatation,
    ellipse_map,
    evaluate,
    halfplane_map,
    jacobian,
    serialize,
    wirtinger_dz,
    wirtinger_dzbar,
)
from .subordination import (
    JackConfig,
    Resolution,
    analytic_jack_probe,
    check_subordination,
    jack_probe,
    univalence_probe,
)

__version__ = "0.1.0"
