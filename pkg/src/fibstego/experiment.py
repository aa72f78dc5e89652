"""Batch harness producing table-style CSV reports over PGM corpora.

Outputs (one file each, rows sorted):

``reduction.csv``  secret, k, original_bits, encoded_bits, rr, zeros_fraction, ones_fraction
``quality.csv``    image_id, method, variant, psnr_db, mse, rr, zeros_fraction, capacity, bits_embedded, truncated
``detection.csv``  image_id, method, variant, rm, sm, rm_neg, sm_neg, rs_estimate, ws_estimate
``summary.csv``    table, method, variant, k, metric, mean, std, n

``variant`` is ``original`` (raw secret bits, MSB-first per pixel) or
``reduced`` (SISR payload at the first configured block size). Averages are
taken over PSNR values; identical-image rows are left out of the mean.
"""

from __future__ import annotations

import csv
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .embed import METHODS, embed, embedding_capacity
from .errors import InputError
from .metrics import IDENTICAL, bit_balance, capacity, psnr, reduction_ratio
from .pgm import read_pgm
from .sisr import BLOCK_SIZES, encode_image
from .steganalysis import rs_estimate_length, ws_estimate

log = logging.getLogger(__name__)


@dataclass
class ExperimentConfig:
    cover_dir: Path
    secret_dir: Path
    out_dir: Path
    methods: tuple[str, ...] = METHODS
    block_sizes: tuple[int, ...] = BLOCK_SIZES
    seed: int = 0
    detectors: bool = True

    def __post_init__(self):
        self.cover_dir = Path(self.cover_dir)
        self.secret_dir = Path(self.secret_dir)
        self.out_dir = Path(self.out_dir)
        self.methods = tuple(self.methods)
        self.block_sizes = tuple(int(k) for k in self.block_sizes)
        for m in self.methods:
            if m not in METHODS:
                raise InputError(f"unknown method {m!r}")
        for k in self.block_sizes:
            if k not in BLOCK_SIZES:
                raise InputError(f"block size must be one of {BLOCK_SIZES}, got {k}")
        if not self.block_sizes or not self.methods:
            raise InputError("need at least one method and one block size")

    @classmethod
    def from_json(cls, path) -> "ExperimentConfig":
        raw = json.loads(Path(path).read_text())
        return cls(**raw)


def load_corpus(directory: Path) -> list[tuple[str, np.ndarray]]:
    files = sorted(Path(directory).glob("*.pgm"))
    if not files:
        raise InputError(f"no .pgm files in {directory}")
    return [(f.stem, read_pgm(f)) for f in files]


def image_bits(img: np.ndarray) -> np.ndarray:
    """Pixel bits MSB-first, row-major."""
    if img.dtype == np.uint8:
        return np.unpackbits(img.reshape(-1))
    return np.unpackbits(img.astype(">u2").view(np.uint8).reshape(-1))


def _write_csv(path: Path, header, rows):
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(sorted(rows, key=_row_key))


def _row_key(row):
    # numbers before text within a column, so k sorts 4, 8, 16
    return tuple((0, x, "") if isinstance(x, (int, float)) else (1, 0, str(x)) for x in row)


def _fmt(x):
    if x is None:
        return ""
    return f"{x:.6f}" if isinstance(x, float) else x


def run_experiment(cfg: ExperimentConfig) -> dict[str, Path]:
    covers = load_corpus(cfg.cover_dir)
    secrets = load_corpus(cfg.secret_dir)
    cfg.out_dir.mkdir(parents=True, exist_ok=True)

    reduction_rows = []
    messages = {}
    for name, img in secrets:
        original = image_bits(img)
        for k in cfg.block_sizes:
            cont = encode_image(img, k)
            bits = cont.payload_bits
            zeros, ones = bit_balance(bits)
            rr = reduction_ratio(cont.nbits, original.size)
            reduction_rows.append((name, k, original.size, cont.nbits, _fmt(rr), _fmt(zeros), _fmt(ones)))
            if k == cfg.block_sizes[0]:
                messages[name] = {"original": (original, 1.0, bit_balance(original)[0]),
                                  "reduced": (bits, rr, zeros)}

    quality_rows, detect_rows = [], []
    pair = 0
    for cname, cover in covers:
        if cfg.detectors and cover.dtype == np.uint8:
            rs = rs_estimate_length(cover)
            ws = ws_estimate(cover)
            detect_rows.append((cname, "none", "clean", _fmt(rs.rm), _fmt(rs.sm), _fmt(rs.rm_neg),
                                _fmt(rs.sm_neg), _fmt(rs.estimated_payload), _fmt(ws.estimated_payload)))
        for sname, _ in secrets:
            # same key for every method on a given pair
            key = (cfg.seed + pair) % (1 << 64)
            pair += 1
            image_id = f"{cname}+{sname}"
            for method in cfg.methods:
                cap = capacity(cover, method)
                for variant, (bits, rr, zeros) in messages[sname].items():
                    room = embedding_capacity(cover, method)
                    used = bits[:room]
                    res = embed(cover, used, method, key)
                    q = psnr(cover, res.stego)
                    quality_rows.append((image_id, method, variant, q.psnr_text(6), _fmt(q.mse), _fmt(rr),
                                         _fmt(zeros), _fmt(cap), res.bits_embedded, int(used.size < bits.size)))
                    if cfg.detectors and cover.dtype == np.uint8:
                        rs = rs_estimate_length(res.stego)
                        ws = ws_estimate(res.stego)
                        detect_rows.append((image_id, method, variant, _fmt(rs.rm), _fmt(rs.sm), _fmt(rs.rm_neg),
                                            _fmt(rs.sm_neg), _fmt(rs.estimated_payload), _fmt(ws.estimated_payload)))
            log.info("finished %s", image_id)

    out = {
        "reduction": cfg.out_dir / "reduction.csv",
        "quality": cfg.out_dir / "quality.csv",
        "detection": cfg.out_dir / "detection.csv",
        "summary": cfg.out_dir / "summary.csv",
    }
    _write_csv(out["reduction"], ["secret", "k", "original_bits", "encoded_bits", "rr", "zeros_fraction",
                                  "ones_fraction"], reduction_rows)
    _write_csv(out["quality"], ["image_id", "method", "variant", "psnr_db", "mse", "rr", "zeros_fraction",
                                "capacity", "bits_embedded", "truncated"], quality_rows)
    _write_csv(out["detection"], ["image_id", "method", "variant", "rm", "sm", "rm_neg", "sm_neg",
                                  "rs_estimate", "ws_estimate"], detect_rows)
    _write_csv(out["summary"], ["table", "method", "variant", "k", "metric", "mean", "std", "n"],
               summarize(reduction_rows, quality_rows, detect_rows))
    return out


def _stats(values):
    vals = np.array([float(v) for v in values if v not in ("", IDENTICAL)])
    if vals.size == 0:
        return "", "", 0
    return _fmt(float(vals.mean())), _fmt(float(vals.std())), int(vals.size)


def summarize(reduction_rows, quality_rows, detect_rows):
    rows = []
    by_k = {}
    for r in reduction_rows:
        by_k.setdefault(r[1], []).append(r)
    for k, rs in by_k.items():
        rows.append(("reduction", "sisr", "reduced", k, "rr", *_stats(r[4] for r in rs)))
        rows.append(("reduction", "sisr", "reduced", k, "zeros_fraction", *_stats(r[5] for r in rs)))
    groups = {}
    for r in quality_rows:
        groups.setdefault((r[1], r[2]), []).append(r)
    for (method, variant), rs in groups.items():
        rows.append(("quality", method, variant, "", "psnr_db", *_stats(r[3] for r in rs)))
        rows.append(("quality", method, variant, "", "capacity", *_stats(r[7] for r in rs)))
    groups = {}
    for r in detect_rows:
        groups.setdefault((r[1], r[2]), []).append(r)
    for (method, variant), rs in groups.items():
        for col, metric in ((3, "rm"), (4, "sm"), (5, "rm_neg"), (6, "sm_neg"),
                            (7, "rs_estimate"), (8, "ws_estimate")):
            rows.append(("detection", method, variant, "", metric, *_stats(r[col] for r in rs)))
    return rows
