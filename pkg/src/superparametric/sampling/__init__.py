"""
Sample generation and sample files
"""

from .sample_lab import (
    SUPPORTS,
    SampleSet,
    SampleSource,
    gen_bimodal,
    gen_exponential,
    gen_trimodal,
    generate,
    inverse_cdf,
    true_pdf,
    uniforms,
)

__all__ = [
    "SUPPORTS",
    "SampleSet",
    "SampleSource",
    "gen_bimodal",
    "gen_exponential",
    "gen_trimodal",
    "generate",
    "inverse_cdf",
    "true_pdf",
    "uniforms",
]
