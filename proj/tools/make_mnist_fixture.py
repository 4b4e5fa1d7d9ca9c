#!/usr/bin/env python3
# Copyright 2026 The QuCNN Authors.
# SPDX-License-Identifier: Apache-2.0
"""Build a small MNIST IDX image file from the digit JSON shipped in the
`mnist` npm package (MIT, Juan Cazala), whose pixels are byte/255 rounded
to three decimals.

    npm pack mnist && tar xzf mnist-*.tgz
    python3 tools/make_mnist_fixture.py package/src/digits data/mnist16-images-idx3-ubyte
"""
import json
import struct
import sys
from pathlib import Path

PIXELS = 28 * 28


def to_bytes(values):
    out = bytearray()
    for v in values:
        b = round(v * 255)
        if round(b / 255, 3) != round(v, 3):
            raise ValueError(f"pixel {v} does not map back to a byte")
        out.append(b)
    return bytes(out)


def main():
    digits_dir, dest = Path(sys.argv[1]), Path(sys.argv[2])
    count = int(sys.argv[3]) if len(sys.argv) > 3 else 16
    digits = [json.loads((digits_dir / f"{d}.json").read_text())["data"] for d in range(10)]
    body = bytearray()
    for k in range(count):
        d, i = k % 10, k // 10
        body += to_bytes(digits[d][i * PIXELS:(i + 1) * PIXELS])
    dest.write_bytes(struct.pack(">IIII", 2051, count, 28, 28) + bytes(body))


if __name__ == "__main__":
    main()
