"""Peak detection in noisy 1D signals via testing of smoothed local maxima.

The pipeline smooths a sequence with a kernel, takes the local maxima of
the smoothed sequence as candidate peaks, converts their heights to
p-values under the height distribution of maxima of smooth stationary
Gaussian noise, and applies a multiple-testing correction over the
observed candidates.
"""

from .grid import SampledSequence
from .kernels import (
    Kernel,
    KernelFamily,
    convolve,
    estimate_template,
    gaussian_kernel,
    load_kernel_csv,
    quartic_kernel,
    save_kernel_csv,
)
from .signals import (
    CauchyShape,
    CustomShape,
    EpanechnikovShape,
    IntervalUnion,
    LaplaceShape,
    PeakSpec,
    Region,
    RegionSet,
    SignalSpec,
    TriangularShape,
    TruncatedGaussianShape,
    compute_regions,
    synthesize_signal,
)
from .noise import (
    GaussianAcvfParams,
    NoiseMoments,
    closed_form_moments,
    estimate_moments,
    generate_noise,
    model_acvf,
)
from .candidates import CandidateSet
from .palm import (
    PalmParams,
    candidate_pvalues,
    expected_maxima_density,
    palm_quantile,
    palm_survival,
)
from .multitest import (
    AsymptoticThresholds,
    DetectionReport,
    Procedure,
    asymptotic_thresholds,
    benjamini_hochberg,
    bonferroni,
)
from .pipeline import (
    BandwidthSelection,
    StemResult,
    auto_bandwidth,
    find_local_maxima,
    stem_detect,
)
from .baselines import (
    excursion_bound,
    height_rule_report,
    pointwise_correct,
    pointwise_pvalues,
    supremum_detect,
    supremum_threshold,
)
from .evaluation import (
    CellStats,
    SimulationDesign,
    SweepResult,
    TrialOutcome,
    optimal_bandwidth,
    preset_design,
    run_sweep,
    score_trial,
    smoothed_peak_height,
    snr,
    snr_general,
    theoretical_power,
)
from . import errors

__version__ = "0.1.0"

__all__ = [
    "SampledSequence",
    "Kernel",
    "KernelFamily",
    "convolve",
    "estimate_template",
    "gaussian_kernel",
    "quartic_kernel",
    "save_kernel_csv",
    "load_kernel_csv",
    "CauchyShape",
    "CustomShape",
    "EpanechnikovShape",
    "LaplaceShape",
    "TriangularShape",
    "TruncatedGaussianShape",
    "IntervalUnion",
    "PeakSpec",
    "Region",
    "RegionSet",
    "SignalSpec",
    "compute_regions",
    "synthesize_signal",
    "GaussianAcvfParams",
    "NoiseMoments",
    "closed_form_moments",
    "estimate_moments",
    "generate_noise",
    "model_acvf",
    "CandidateSet",
    "PalmParams",
    "candidate_pvalues",
    "expected_maxima_density",
    "palm_quantile",
    "palm_survival",
    "AsymptoticThresholds",
    "DetectionReport",
    "Procedure",
    "asymptotic_thresholds",
    "benjamini_hochberg",
    "bonferroni",
    "BandwidthSelection",
    "StemResult",
    "auto_bandwidth",
    "find_local_maxima",
    "stem_detect",
    "excursion_bound",
    "height_rule_report",
    "pointwise_correct",
    "pointwise_pvalues",
    "supremum_detect",
    "supremum_threshold",
    "CellStats",
    "SimulationDesign",
    "SweepResult",
    "TrialOutcome",
    "optimal_bandwidth",
    "preset_design",
    "run_sweep",
    "score_trial",
    "smoothed_peak_height",
    "snr",
    "snr_general",
    "theoretical_power",
    "errors",
]
