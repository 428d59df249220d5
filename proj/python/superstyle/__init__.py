"""Superpixel style codes: encoding, graphical self-attention refinement, mixing."""

from ._core import (
    CodeLengthMismatch,
    DimensionMismatch,
    EmptyInput,
    EmptyLabel,
    IoError,
    Error,
    GsasParams,
    LabelAbsentInDonor,
    LabelCode,
    LengthMismatch,
    NonFinite,
    SchemaError,
    ShapeMismatch,
    StyleCodes,
    cluster,
    coarse_reconstruct,
    encode,
    feature_matching_loss,
    gsas_backward,
    gsas_forward,
    gsas_refine_codes,
    hinge_d_loss,
    hinge_g_loss,
    lab_to_rgb,
    mix_codes,
    perceptual_loss,
    resample_code,
    rgb_to_lab,
    rgb_to_labxy,
    swap_codes,
    total_loss,
)

__all__ = [name for name in dir() if not name.startswith("_")]
