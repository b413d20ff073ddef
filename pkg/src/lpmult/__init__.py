"""Littlewood-Paley / vector-valued Fourier multiplier toolkit on sampled
periodic grids."""

from .atoms import InfinityAtom, decompose_atoms, verify_atom
from .counterexample import (
    CounterexampleParams,
    build_eta,
    build_K,
    build_mk,
    check_blowup,
    check_L_finiteness,
    decay_envelope_check,
    h_function,
    necessary_condition_norms,
)
from .cubes import DyadicCube, DyadicBox, concentric_dilate, cubes_at_scale, cubes_in
from .exponents import ExponentTuple, tau_sp, tau_spq
from .fields import CubeCoefficients, VectorField
from .frames import LPFamily, PsiFamily, build_phi0, build_psi0, psi_translate
from .grid import (
    BandRadius,
    GridSpec,
    SampledFunction,
    band_project,
    bessel_potential,
    convolve,
    dyadic_dilate,
    fft_forward,
    fft_inverse,
    is_band_limited,
    is_strictly_band_limited,
    spectrum_as_function,
)
from .maximal import (
    MaximalConfig,
    dyadic_maximal,
    dyadic_sharp,
    hl_maximal,
    peetre_maximal,
    power_maximal,
    sharp_vector_functional,
)
from .multipliers import (
    ConfigError,
    ExperimentReport,
    MultiplierFamily,
    apply_family,
    localized_hormander_norm,
    multiplier_functional,
    run_corollary13_suite,
    run_lemma61_suite,
    run_theorem11_suite,
    run_theorem12_suite,
    support_normalize,
)
from .norms import (
    finfty_discrete_norm,
    finfty_q_norm,
    fpq_discrete_norm,
    lp_lq_norm,
    scale_components,
    sobolev_norm,
)
from .profiles import (
    SymbolProfile,
    TrigPolynomial,
    random_band_limited,
    random_symbol_profile,
    random_vector_field,
    trial_rng,
)
from .quadrature import adaptive_simpson
from .transform import analyze, duality_pairing, roundtrip, synthesize

__version__ = "0.1.0"
