#!/usr/bin/env python3
"""Straightforward Zhang-Suen thinning used to freeze the skeleton golden files.

Textbook two-sub-iteration algorithm with simultaneous deletion. The one
addition is the rule the library documents: when all four pixels of a 2x2
square are marked in the same sub-iteration, the top-left one is kept.
Shapes used here never reach the library's 2x2 cleanup stage.

    python3 tools/zhang_suen_reference.py data/golden
"""

import sys
from pathlib import Path


def shapes():
    def canvas(w, h):
        return [[0] * w for _ in range(h)]

    square = canvas(24, 24)
    for y in range(2, 22):
        for x in range(2, 22):
            square[y][x] = 1

    bar = canvas(40, 12)
    for y in range(3, 9):
        for x in range(3, 37):
            bar[y][x] = 1

    plus = canvas(31, 31)
    for y in range(3, 28):
        for x in range(13, 18):
            plus[y][x] = 1
    for y in range(13, 18):
        for x in range(3, 28):
            plus[y][x] = 1

    ring = canvas(32, 32)
    for y in range(32):
        for x in range(32):
            d2 = (x - 15.5) ** 2 + (y - 15.5) ** 2
            if 64 <= d2 <= 169:
                ring[y][x] = 1

    ell = canvas(30, 30)
    for y in range(3, 27):
        for x in range(3, 9):
            ell[y][x] = 1
    for y in range(21, 27):
        for x in range(3, 27):
            ell[y][x] = 1

    return {"square20": square, "bar": bar, "plus": plus, "ring": ring, "ell": ell}


def thin(img):
    h, w = len(img), len(img[0])
    img = [row[:] for row in img]

    def px(x, y):
        return img[y][x] if 0 <= x < w and 0 <= y < h else 0

    def ring(x, y):
        # p2..p9: N, NE, E, SE, S, SW, W, NW
        return [px(x, y - 1), px(x + 1, y - 1), px(x + 1, y), px(x + 1, y + 1),
                px(x, y + 1), px(x - 1, y + 1), px(x - 1, y), px(x - 1, y - 1)]

    changed = True
    while changed:
        changed = False
        for step in (0, 1):
            marked = set()
            for y in range(h):
                for x in range(w):
                    if not img[y][x]:
                        continue
                    p = ring(x, y)
                    b = sum(p)
                    a = sum(1 for i in range(8) if p[i] == 0 and p[(i + 1) % 8] == 1)
                    p2, p4, p6, p8 = p[0], p[2], p[4], p[6]
                    if step == 0:
                        c = p2 * p4 * p6 == 0 and p4 * p6 * p8 == 0
                    else:
                        c = p2 * p4 * p8 == 0 and p2 * p6 * p8 == 0
                    if 2 <= b <= 6 and a == 1 and c:
                        marked.add((x, y))
            for y in range(h - 1):
                for x in range(w - 1):
                    if {(x, y), (x + 1, y), (x, y + 1), (x + 1, y + 1)} <= marked:
                        marked.discard((x, y))
            for x, y in marked:
                img[y][x] = 0
            if marked:
                changed = True
    return img


def to_pbm(img):
    h, w = len(img), len(img[0])
    out = bytearray(f"P4\n{w} {h}\n".encode())
    for row in img:
        for start in range(0, w, 8):
            byte = 0
            for i, v in enumerate(row[start:start + 8]):
                byte |= v << (7 - i)
            out.append(byte)
    return bytes(out)


def main():
    out = Path(sys.argv[1] if len(sys.argv) > 1 else "data/golden")
    out.mkdir(parents=True, exist_ok=True)
    for name, img in shapes().items():
        (out / f"{name}.input.pbm").write_bytes(to_pbm(img))
        (out / f"{name}.skeleton.pbm").write_bytes(to_pbm(thin(img)))
        print(name, sum(map(sum, thin(img))), "skeleton pixels")


if __name__ == "__main__":
    main()
