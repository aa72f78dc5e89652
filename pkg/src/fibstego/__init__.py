"""Grayscale steganography with lossless secret reduction and Fibonacci bit-plane mapping."""

from ._kernels import BACKEND
from .embed import (
    EmbedResult,
    StegoKey,
    embed_lsb_binary,
    embed_lsb_fibonacci,
    embed_mapping,
    embed_payload,
    extract_lsb_binary,
    extract_lsb_fibonacci,
    extract_mapping,
    extract_payload,
    map_triplet,
    permute_indices,
)
from .errors import (
    CapacityError,
    CorruptStegoError,
    FormatError,
    InputError,
    RangeError,
    RepresentationError,
    StegoError,
    ValidityError,
)
from .metrics import bit_balance, capacity, psnr, reduction_ratio
from .sisr import SisrContainer, decode_block, decode_image, encode_block, encode_image
from .steganalysis import rs_estimate_length, rs_statistics, ws_estimate
from .zeckendorf import ZeckendorfWord, from_zeckendorf, is_valid, to_zeckendorf

__version__ = "0.1.0"
