#!/usr/bin/env python3
"""Brute-force DF, minimum norm and L2 norm of piecewise-linear test
configurations by direct weight enumeration.

Independent of the Rust code: lattice points of kP are enumerated in a
bounding box, weights are -ceil(k r f(u / (k r))), and the polynomials are
fitted with exact fractions. Usage: brute_force.py PROBLEM.json ...
Prints one JSON object keyed by problem name.
"""

import json
import math
import sys
from fractions import Fraction as Fr

STEP = 12
HELD_OUT = 3


def halfspaces_from_vertices(vs):
    """(a, b) with a.x >= b, for a polygon or a segment."""
    n = len(vs[0])
    if n == 1:
        xs = [v[0] for v in vs]
        return [((Fr(1),), min(xs)), ((Fr(-1),), -max(xs))]
    cx = sum(v[0] for v in vs) / len(vs)
    cy = sum(v[1] for v in vs) / len(vs)
    ring = sorted(vs, key=lambda v: math.atan2(v[1] - cy, v[0] - cx))
    hs = []
    for p, q in zip(ring, ring[1:] + ring[:1]):
        a = (-(q[1] - p[1]), q[0] - p[0])
        b = a[0] * p[0] + a[1] * p[1]
        if a[0] * cx + a[1] * cy < b:
            a, b = (-a[0], -a[1]), -b
        hs.append((a, b))
    return hs


def variety(spec):
    v = spec["variety"]
    if "polytope" in v:
        vs = [tuple(Fr(c) for c in p) for p in v["polytope"]]
        return vs, halfspaces_from_vertices(vs)
    rays = [tuple(Fr(c) for c in r) for r in v["fan"]["rays"]]
    l = [Fr(c) for c in v["l"]]
    hs = [(r, -d) for r, d in zip(rays, l)]
    n = len(rays[0])
    if n == 1:
        lo = max(b / a[0] for a, b in hs if a[0] > 0)
        hi = min(b / a[0] for a, b in hs if a[0] < 0)
        return [(lo,), (hi,)], hs
    vs = set()
    for i in range(len(hs)):
        for j in range(i + 1, len(hs)):
            (a1, b1), (a2, b2) = hs[i], hs[j]
            det = a1[0] * a2[1] - a1[1] * a2[0]
            if det == 0:
                continue
            x = (b1 * a2[1] - b2 * a1[1]) / det
            y = (a1[0] * b2 - a2[0] * b1) / det
            if all(a[0] * x + a[1] * y >= b for a, b in hs):
                vs.add((x, y))
    return sorted(vs), hs


def lattice_points(vs, hs, s):
    n = len(vs[0])
    lo = [math.floor(min(v[i] for v in vs) * s) for i in range(n)]
    hi = [math.ceil(max(v[i] for v in vs) * s) for i in range(n)]
    if n == 1:
        box = ((x,) for x in range(lo[0], hi[0] + 1))
    else:
        box = ((x, y) for x in range(lo[0], hi[0] + 1) for y in range(lo[1], hi[1] + 1))
    for u in box:
        if all(sum(a[i] * u[i] for i in range(n)) >= b * s for a, b in hs):
            yield u


def counts(vs, hs, pieces, r, k):
    """Totals (h, w, w2) and, per affine piece, (h_i, w_i) over the points
    where that piece is the first maximal one, plus the smallest weight the
    piece alone would give anywhere in the polytope."""
    s = k * r
    h = w = w2 = 0
    per = [[0, 0, None] for _ in pieces]
    for u in lattice_points(vs, hs, s):
        vals = [sum(g[i] * u[i] for i in range(len(u))) + s * c for g, c in pieces]
        top = max(vals)
        wt = -math.ceil(top)
        h += 1
        w += wt
        w2 += wt * wt
        cell = per[vals.index(top)]
        cell[0] += 1
        cell[1] += wt
        for j, v in enumerate(vals):
            own = -math.ceil(v)
            per[j][2] = own if per[j][2] is None else min(per[j][2], own)
    return (h, w, w2), per


def fit(points, deg):
    """Leading coefficients of the degree-`deg` polynomial through `points`,
    checked on the remaining points."""
    fitpts, rest = points[: deg + 1], points[deg + 1 :]
    m = [[Fr(k) ** e for e in range(deg, -1, -1)] + [Fr(y)] for k, y in fitpts]
    for c in range(deg + 1):
        p = next(i for i in range(c, deg + 1) if m[i][c] != 0)
        m[c], m[p] = m[p], m[c]
        for i in range(deg + 1):
            if i != c and m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    coeffs = [m[i][deg + 1] / m[i][i] for i in range(deg + 1)]
    for k, y in rest:
        if sum(c * Fr(k) ** (deg - i) for i, c in enumerate(coeffs)) != y:
            raise SystemExit(f"not polynomial at k = {k}")
    return coeffs


def evaluate(spec):
    vs, hs = variety(spec)
    n = len(vs[0])
    r = spec["variety"].get("r", 1)
    pl = spec["degeneration"]["pl_function"]
    pieces = [(tuple(Fr(g) for g in p["gradient"]), Fr(p["constant"])) for p in pl["pieces"]]
    ks = [STEP * t for t in range(1, n + 3 + HELD_OUT + 1)]
    runs = [(k, counts(vs, hs, pieces, r, k)) for k in ks]
    samples = [(k, c[0]) for k, c in runs]
    a = fit([(k, s[0]) for k, s in samples], n)
    b = fit([(k, s[1]) for k, s in samples], n + 1)
    d = fit([(k, s[2]) for k, s in samples], n + 2)
    a0, a1, b0, b1, d0 = a[0], a[1], b[0], b[1], d[0]
    # Minimum norm: sum over cells of b0_j - lambda_j a0_j, with lambda_j the
    # limiting minimum over the whole polytope of the cell's own weight, / k.
    norm = Fr(0)
    for j in range(len(pieces)):
        a0j = fit([(k, c[1][j][0]) for k, c in runs], n)[0]
        if a0j == 0:
            continue
        b0j = fit([(k, c[1][j][1]) for k, c in runs], n + 1)[0]
        lams = {Fr(c[1][j][2], k) for k, c in runs if c[1][j][2] is not None}
        if len(lams) != 1:
            raise SystemExit(f"cell {j}: minimum weight is not linear in k")
        norm += b0j - lams.pop() * a0j
    return {
        "df": str((b0 * a1 - b1 * a0) / a0),
        "min_norm": str(norm),
        "l2_norm": str(d0 - b0 * b0 / a0),
    }


def main(paths):
    out = {}
    for p in paths:
        spec = json.load(open(p))
        if "pl_function" in spec["degeneration"]:
            out[spec["name"]] = evaluate(spec)
    json.dump(out, sys.stdout, indent=2, sort_keys=True)
    print()


if __name__ == "__main__":
    main(sys.argv[1:])
