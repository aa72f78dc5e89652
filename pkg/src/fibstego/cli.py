"""Command-line entry point.

Exit codes: 0 success, 2 bad input / format / corrupt payload, 3 capacity.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

import numpy as np

from .bits import pack_bits, unpack_bits
from .covers import generate_cover
from .embed import LENGTH_HEADER_BITS, METHODS, embed_payload, embedding_capacity, extract_payload
from .errors import CapacityError, CorruptStegoError, FormatError, InputError, StegoError
from .experiment import ExperimentConfig, run_experiment
from .pgm import format_pgm, parse_pgm, read_pgm, write_pgm
from .sisr import BLOCK_SIZES, MAGIC, SisrContainer, decode_image, encode_image
from .steganalysis import rs_estimate_length, ws_estimate

SEED_ENV = "FIBSTEGO_SEED"

log = logging.getLogger("fibstego")


def parse_seed(text: str) -> int:
    text = text.strip().lower()
    value = int(text, 16) if text.startswith("0x") else int(text, 10)
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError(f"seed {text} is not a 64-bit unsigned integer")
    return value


def _seed_arg(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    if env is None:
        raise InputError(f"no --seed given and ${SEED_ENV} is unset")
    try:
        return parse_seed(env)
    except (ValueError, argparse.ArgumentTypeError) as exc:
        raise InputError(f"bad ${SEED_ENV}: {exc}") from None


def cmd_sisr_encode(args):
    img = read_pgm(args.input)
    cont = encode_image(img, args.block_size)
    Path(args.output).write_bytes(cont.to_bytes())
    log.info("%d payload bits, rr %.4f", cont.nbits, cont.nbits / (img.size * (8 if img.dtype == np.uint8 else 16)))


def cmd_sisr_decode(args):
    cont = SisrContainer.from_bytes(Path(args.input).read_bytes())
    write_pgm(args.output, decode_image(cont))


def cmd_embed(args):
    cover = read_pgm(args.cover)
    secret_bytes = Path(args.secret).read_bytes()
    secret = parse_pgm(secret_bytes)
    if args.sisr:
        payload = encode_image(secret, args.block_size).to_bytes()
    else:
        payload = format_pgm(secret)
    bits = unpack_bits(payload)
    available = embedding_capacity(cover, args.method)
    required = bits.size + LENGTH_HEADER_BITS
    if required > available:
        raise CapacityError(
            f"secret needs {required} bits, cover offers {available} with method {args.method}",
            required=required, available=available,
        )
    stego = embed_payload(cover, bits, args.method, _seed_arg(args))
    write_pgm(args.out, stego)
    log.info("embedded %d of %d available bits", required, available)


def cmd_extract(args):
    stego = read_pgm(args.stego)
    bits = extract_payload(stego, args.method, _seed_arg(args))
    if bits.size % 8:
        raise CorruptStegoError("extracted payload is not a whole number of bytes")
    payload = pack_bits(bits)
    if payload.startswith(MAGIC):
        img = decode_image(SisrContainer.from_bytes(payload))
    else:
        img = parse_pgm(payload)
    write_pgm(args.out, img)


def cmd_analyze(args):
    img = read_pgm(args.input)
    if img.dtype != np.uint8:
        raise InputError("detectors are defined for 8-bit images only")
    fields = {}
    if args.detector in ("rs", "both"):
        rs = rs_estimate_length(img)
        fields.update(rm=rs.rm, sm=rs.sm, rm_neg=rs.rm_neg, sm_neg=rs.sm_neg,
                      rs_estimate=rs.estimated_payload)
    if args.detector in ("ws", "both"):
        ws = ws_estimate(img)
        fields.update(ws_estimate=ws.estimated_payload, ws_raw=ws.raw_estimate)
    cells = ["unreliable" if v is None else f"{v:.6f}" for v in fields.values()]
    print(",".join(fields))
    print(",".join(cells))


def cmd_experiment(args):
    if args.config:
        cfg = ExperimentConfig.from_json(args.config)
    else:
        if not (args.covers and args.secrets and args.out):
            raise InputError("--covers, --secrets and --out are required without --config")
        cfg = ExperimentConfig(
            cover_dir=args.covers,
            secret_dir=args.secrets,
            out_dir=args.out,
            methods=args.methods.split(","),
            block_sizes=[int(k) for k in args.block_sizes.split(",")],
            seed=args.seed if args.seed is not None else 0,
            detectors=not args.no_detectors,
        )
    for name, path in run_experiment(cfg).items():
        print(f"{name}: {path}")


def cmd_gen_covers(args):
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    seed = _seed_arg(args)
    for i in range(args.count):
        img = generate_cover(args.width, args.height, seed + i, args.depth)
        write_pgm(out / f"cover_{i:04d}.pgm", img)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fibstego", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sisr-encode", help="losslessly reduce a PGM into a .sisr container")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("-k", "--block-size", type=int, choices=BLOCK_SIZES, default=4)
    p.set_defaults(func=cmd_sisr_encode)

    p = sub.add_parser("sisr-decode", help="restore a PGM from a .sisr container")
    p.add_argument("input")
    p.add_argument("output")
    p.set_defaults(func=cmd_sisr_decode)

    p = sub.add_parser("embed", help="hide a secret PGM inside a cover PGM")
    p.add_argument("--cover", required=True)
    p.add_argument("--secret", required=True)
    p.add_argument("--method", choices=METHODS, default="map")
    p.add_argument("--seed", type=parse_seed)
    p.add_argument("--out", required=True)
    p.add_argument("--sisr", action="store_true", help="SISR-reduce the secret before embedding")
    p.add_argument("-k", "--block-size", type=int, choices=BLOCK_SIZES, default=4)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("extract", help="recover the secret PGM from a stego PGM")
    p.add_argument("--stego", required=True)
    p.add_argument("--method", choices=METHODS, default="map")
    p.add_argument("--seed", type=parse_seed)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("analyze", help="run RS / WS steganalysis on an 8-bit PGM")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--detector", choices=("rs", "ws", "both"), default="both")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("experiment", help="produce CSV tables over cover/secret corpora")
    p.add_argument("--config", help="JSON file with ExperimentConfig fields")
    p.add_argument("--covers")
    p.add_argument("--secrets")
    p.add_argument("--out")
    p.add_argument("--methods", default=",".join(METHODS))
    p.add_argument("--block-sizes", default="4,8,16")
    p.add_argument("--seed", type=parse_seed)
    p.add_argument("--no-detectors", action="store_true")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("gen-covers", help="write deterministic synthetic covers")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--width", type=int, required=True)
    p.add_argument("--height", type=int, required=True)
    p.add_argument("--depth", type=int, choices=(8, 16), default=8)
    p.add_argument("--seed", type=parse_seed)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_gen_covers)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        args.func(args)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (StegoError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
