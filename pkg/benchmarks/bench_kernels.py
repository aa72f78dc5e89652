"""Time the public operations on every available kernel backend.

    python benchmarks/bench_kernels.py [--size 512] [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from fibstego import _kernels
from fibstego.covers import generate_cover
from fibstego.embed import embed, permute_indices
from fibstego.sisr import decode_image, encode_image

KERNELS = ("permutation", "splitmix64_stream", "sisr_encode", "sisr_decode")


def use(backend):
    for name in KERNELS:
        setattr(_kernels, name, getattr(backend, name))


def cases(size):
    cover = generate_cover(size, size, 1)
    secret = generate_cover(size // 2, size // 4, 2)
    deep = generate_cover(size // 2, size // 2, 3, depth=16)
    cont = encode_image(secret, 4)
    cont16 = encode_image(deep, 8)
    msg = np.random.default_rng(0).integers(0, 2, cover.size).astype(np.uint8)
    return {
        f"permutation n={cover.size}": lambda: permute_indices(cover.size, 7),
        f"sisr encode {secret.shape} k=4": lambda: encode_image(secret, 4),
        f"sisr decode {secret.shape} k=4": lambda: decode_image(cont),
        f"sisr encode 16-bit {deep.shape} k=8": lambda: encode_image(deep, 8),
        f"sisr decode 16-bit {deep.shape} k=8": lambda: decode_image(cont16),
        f"map embed {cover.shape} full": lambda: embed(cover, msg, "map", 7),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=512)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    backends = _kernels.available_backends()
    work = cases(args.size)
    saved = {name: getattr(_kernels, name) for name in KERNELS}
    times = {}
    try:
        for backend in backends:
            use(backend)
            for label, fn in work.items():
                fn()
                times[label, backend.BACKEND] = min(timeit.repeat(fn, number=1, repeat=args.repeat))
    finally:
        for name, fn in saved.items():
            setattr(_kernels, name, fn)

    names = [b.BACKEND for b in backends]
    print(f"{'operation':<40}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for label in work:
        row = [times[label, n] for n in names]
        line = f"{label:<40}" + "".join(f"{t * 1e3:>10.2f}ms" for t in row)
        if len(row) > 1:
            line += f"{row[0] / row[-1]:>11.1f}x"
        print(line)


if __name__ == "__main__":
    main()
