"""Color image enhancement in a bounded logarithmic Euclidean color space."""
from .enhance import (
    U_L,
    W0,
    W1,
    W2,
    AffineParams,
    EnhancementError,
    LsqSystem,
    SingularSystem,
    ZeroMeanNorm,
    apply_affine,
    build_system_a,
    build_system_b,
    enhance_auto,
    solve_mmse,
)
from .fileio import ImageFormatError, load_image, save_image
from .image import (
    ImageStats,
    RasterImage,
    compute_stats,
    decode_channel,
    encode_channel,
    image_dot,
    image_norm,
    map_pixels,
)
from .logspace import (
    EPS,
    THETA,
    ColorVec,
    PhiVec,
    dot3,
    log_add,
    log_neg,
    log_scalar,
    log_smul,
    log_sub,
    norm3,
    phi,
    phi_inv,
    vec_add,
    vec_neg,
    vec_smul,
    vec_sub,
)

__version__ = "0.1.0"
