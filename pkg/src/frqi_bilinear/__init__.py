"""Bilinear up/down-scaling of FRQI-encoded quantum images."""

from .complexity import (
    audit_circuit,
    audit_omega,
    downscale_cost,
    kcnot_sum,
    omega_cost,
    quarter_cost,
    upscale_cost,
)
from .frqi import (
    AngleMap,
    FrqiLayout,
    GrayImage,
    angles_to_image,
    decode_exact,
    decode_sampled,
    encode_frqi,
    image_to_angles,
)
from .interp import (
    ACCUMULATE,
    LITERAL_SWAP,
    ScaleSpec,
    build_downscale_circuit,
    build_upscale_circuit,
    simulate_downscale_dense,
    simulate_upscale_dense,
)
from .metrics import MetricReport, metric_report, psnr, ssim
from .oracle import (
    PAPER_LITERAL,
    STANDARD,
    anchor_subsample,
    average_downscale,
    bilinear_upscale,
    nearest_upscale,
    weight_set,
)
from .pgm import read_pgm, write_pgm
from .qsim import (
    Circuit,
    CostReport,
    Gate,
    QuantumState,
    Register,
    apply_circuit,
    cnot_equivalent_cost,
    decompose_gate,
)
from .structured import downscale_structured, upscale_structured

__all__ = [
    "ACCUMULATE",
    "AngleMap",
    "Circuit",
    "CostReport",
    "FrqiLayout",
    "Gate",
    "GrayImage",
    "LITERAL_SWAP",
    "MetricReport",
    "PAPER_LITERAL",
    "QuantumState",
    "Register",
    "STANDARD",
    "ScaleSpec",
    "anchor_subsample",
    "angles_to_image",
    "apply_circuit",
    "audit_circuit",
    "audit_omega",
    "average_downscale",
    "bilinear_upscale",
    "build_downscale_circuit",
    "build_upscale_circuit",
    "cnot_equivalent_cost",
    "decode_exact",
    "decode_sampled",
    "decompose_gate",
    "downscale_cost",
    "downscale_structured",
    "encode_frqi",
    "image_to_angles",
    "kcnot_sum",
    "metric_report",
    "nearest_upscale",
    "omega_cost",
    "psnr",
    "quarter_cost",
    "read_pgm",
    "simulate_downscale_dense",
    "simulate_upscale_dense",
    "ssim",
    "upscale_cost",
    "upscale_structured",
    "weight_set",
    "write_pgm",
]
