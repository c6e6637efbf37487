"""Reading and writing 8-bit PNG and binary PPM (P6, maxval 255) files.

PNG goes through Pillow.  PPM is parsed here so that the maxval and the
payload length can be checked strictly.
"""
from __future__ import annotations

import io
import os
from pathlib import Path
from typing import Tuple, Union

import numpy as np
from PIL import Image

from .image import RasterImage

PathLike = Union[str, os.PathLike]

_PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


class ImageFormatError(ValueError):
    """The file is not a supported image or its content is damaged."""


def _corrupt(detail: str) -> ImageFormatError:
    return ImageFormatError(f"corrupt input: {detail}")


def _ppm_header(data: bytes) -> Tuple[int, int, int, int]:
    """Return ``(width, height, maxval, payload_offset)`` of a P6 header."""
    fields = []
    pos = 2
    while len(fields) < 3:
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        if pos >= len(data):
            raise _corrupt("truncated PPM header")
        if data[pos : pos + 1] == b"#":
            end = data.find(b"\n", pos)
            if end < 0:
                raise _corrupt("truncated PPM header")
            pos = end + 1
            continue
        start = pos
        while pos < len(data) and data[pos : pos + 1].isdigit():
            pos += 1
        if start == pos:
            raise _corrupt("bad PPM header token")
        fields.append(int(data[start:pos]))
    if pos >= len(data) or not data[pos : pos + 1].isspace():
        raise _corrupt("truncated PPM header")
    width, height, maxval = fields
    return width, height, maxval, pos + 1


def _read_ppm(data: bytes) -> RasterImage:
    width, height, maxval, offset = _ppm_header(data)
    if maxval != 255:
        raise ImageFormatError(f"unsupported PPM maxval {maxval} (only 255)")
    if width == 0 or height == 0:
        raise ImageFormatError("image dimension is zero")
    need = width * height * 3
    payload = data[offset : offset + need]
    if len(payload) < need:
        raise _corrupt(f"PPM payload has {len(payload)} of {need} bytes")
    codes = np.frombuffer(payload, dtype=np.uint8).reshape(height, width, 3)
    return RasterImage.from_codes(codes)


def _read_png(data: bytes) -> RasterImage:
    try:
        with Image.open(io.BytesIO(data)) as im:
            im.load()
            mode = im.mode
            if mode == "P":
                im = im.convert("RGBA" if "transparency" in im.info else "RGB")
            elif mode in ("1", "L"):
                im = im.convert("RGB")
            elif mode == "LA":
                im = im.convert("RGBA")
            elif mode not in ("RGB", "RGBA"):
                raise ImageFormatError(f"unsupported PNG mode {mode!r} (8-bit RGB/RGBA only)")
            arr = np.asarray(im, dtype=np.uint8)
    except ImageFormatError:
        raise
    except (OSError, SyntaxError, ValueError) as exc:
        raise _corrupt(str(exc)) from exc
    if arr.ndim != 3 or arr.shape[0] == 0 or arr.shape[1] == 0:
        raise ImageFormatError("image dimension is zero")
    alpha = arr[:, :, 3] if arr.shape[2] == 4 else None
    return RasterImage.from_codes(arr[:, :, :3], alpha=alpha)


def load_image(path: PathLike) -> RasterImage:
    data = Path(path).read_bytes()
    if data.startswith(_PNG_MAGIC):
        return _read_png(data)
    if data[:2] == b"P6":
        return _read_ppm(data)
    if len(data) < 8 and _PNG_MAGIC.startswith(data) and data:
        raise _corrupt("truncated PNG signature")
    raise ImageFormatError(f"unsupported image format: {path}")


def encode_image(img: RasterImage, fmt: str) -> bytes:
    """Serialize ``img`` as ``"png"`` or ``"ppm"`` bytes.

    PPM has no alpha channel; an alpha plane is dropped when writing it.
    """
    codes = img.to_codes()
    if fmt == "ppm":
        header = f"P6\n{img.width} {img.height}\n255\n".encode("ascii")
        return header + np.ascontiguousarray(codes).tobytes()
    if fmt == "png":
        if img.alpha is not None:
            arr = np.dstack([codes, img.alpha])
            im = Image.fromarray(np.ascontiguousarray(arr))
        else:
            im = Image.fromarray(np.ascontiguousarray(codes))
        buf = io.BytesIO()
        im.save(buf, format="PNG")
        return buf.getvalue()
    raise ImageFormatError(f"unsupported output format {fmt!r}")


def format_for_path(path: PathLike) -> str:
    suffix = Path(path).suffix.lower()
    if suffix == ".png":
        return "png"
    if suffix in (".ppm", ".pnm"):
        return "ppm"
    raise ImageFormatError(f"cannot infer image format from {str(path)!r} (use .png or .ppm)")


def save_image(img: RasterImage, path: PathLike) -> None:
    Path(path).write_bytes(encode_image(img, format_for_path(path)))
