#!/usr/bin/env python3
"""Regenerate the newform fixtures in this directory.

delta_1000.json   Delta = q prod (1 - q^n)^24 from the Jacobi triple product.
cm32a_500.json    y^2 = x^3 - x (conductor 32, CM by Q(i)) by point counting.
sigma1_500.json   a_n = sigma_1(n): weight 2, a_5 = 6.
"""

import json
import pathlib

from sympy import divisor_sigma, factorint, primerange

HERE = pathlib.Path(__file__).resolve().parent


def mul(a, b, n):
    out = [0] * n
    for i, x in enumerate(a):
        if x:
            for j in range(n - i):
                out[i + j] += x * b[j]
    return out


def delta(n):
    # prod (1 - q^m)^3 = sum (-1)^k (2k+1) q^(k(k+1)/2)
    cube = [0] * n
    k = 0
    while k * (k + 1) // 2 < n:
        cube[k * (k + 1) // 2] = (-1) ** k * (2 * k + 1)
        k += 1
    p = cube
    for _ in range(3):
        p = mul(p, p, n)
    return p[: n - 1]  # shift by q: a_m = p[m - 1]


def cm32a(n):
    ap = {2: 0}
    for p in primerange(3, n + 1):
        count = p + 1  # affine points plus infinity
        for x in range(p):
            r = (x * x * x - x) % p
            if r:
                count += 1 if pow(r, (p - 1) // 2, p) == 1 else -1
        ap[p] = p + 1 - count
    out = []
    for m in range(1, n + 1):
        a = 1
        for p, e in factorint(m).items():
            prev, cur = 1, ap[p]
            for _ in range(e - 1):
                prev, cur = cur, ap[p] * cur - (0 if p == 2 else p) * prev
            a *= cur
        out.append(a)
    return out


def write(name, doc):
    (HERE / name).write_text(json.dumps(doc, indent=1) + "\n")


def main():
    write("delta_1000.json", {
        "name": "Delta", "level": 1, "weight": 12,
        "nebentypus": {"modulus": 1, "values": [[0, 1]]},
        "eigenform": True,
        "coeffs": [str(c) for c in delta(1001)],
    })
    write("cm32a_500.json", {
        "name": "32a", "level": 32, "weight": 2,
        "nebentypus": {"modulus": 4, "values": [[1, 1], [3, 1]]},
        "eigenform": True, "cm_verified": True,
        "coeffs": cm32a(500),
    })
    write("sigma1_500.json", {
        "name": "sigma1", "level": 1, "weight": 2,
        "nebentypus": {"modulus": 1, "values": [[0, 1]]},
        "eigenform": True,
        "coeffs": [int(divisor_sigma(m)) for m in range(1, 501)],
    })


if __name__ == "__main__":
    main()
