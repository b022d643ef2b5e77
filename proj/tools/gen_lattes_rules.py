#!/usr/bin/env python3
"""Derive subdivision-rule files for Lattes maps from their orbifold cover.

Cover coordinates are rescaled so that the postcritical points lift to Z^2
and the pillow group is G = {z -> +-z + w : w in 2Z^2}. The map lifts to a
linear map A with A(2Z^2) in 2Z^2. A Jordan curve C through the four
postcritical points is given by a lifted closed polyline; the 1-skeleton is
A^-1(G.C). Tiles, edges, corner types and (for invariant curves) the chains
of 1-edges along C are read off the planar arrangement.

Usage: gen_lattes_rules.py OUTDIR
"""
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

from shapely.geometry import LineString, Polygon
from shapely.geometry.polygon import orient
from shapely.ops import polygonize, unary_union

EPS = 1e-9
NDIG = 9


def mod2(v):
    v = round(round(v, NDIG) % 2.0, NDIG - 1)
    return 0.0 if abs(v - 2.0) < EPS else v


def canon(p):
    """Orbit representative of p under G."""
    cands = []
    for s in (1, -1):
        cands.append((mod2(s * p[0]), mod2(s * p[1])))
    return min(cands)


def mat_inv(a):
    det = Fraction(a[0][0] * a[1][1] - a[0][1] * a[1][0])
    return [[a[1][1] / det, -a[0][1] / det], [-a[1][0] / det, a[0][0] / det]]


def apply(m, p):
    return (float(m[0][0]) * p[0] + float(m[0][1]) * p[1],
            float(m[1][0]) * p[0] + float(m[1][1]) * p[1])


def is_int_point(p):
    return all(abs(c - round(c)) < 1e-7 for c in p)


def arc_midpoint(pts):
    segs = [math.dist(pts[i], pts[i + 1]) for i in range(len(pts) - 1)]
    half = sum(segs) / 2.0
    for i, s in enumerate(segs):
        if half <= s + EPS:
            t = half / s if s > 0 else 0.0
            a, b = pts[i], pts[i + 1]
            return (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))
        half -= s
    return pts[-1]


class Lattes:
    def __init__(self, name, amat, labels, path, post_idx, scale):
        self.name = name
        self.A = amat
        self.Ainv = mat_inv(amat)
        self.labels = labels            # corner (x,y) in {0,1}^2 -> label
        self.path = path                # lifted closed polyline
        self.post_idx = post_idx        # indices in path of post visits
        self.scale = scale
        self.k = len(post_idx)
        self.d = abs(amat[0][0] * amat[1][1] - amat[0][1] * amat[1][0])
        self.order = [labels[canon(path[i])] for i in post_idx]

    def post_index(self, p):
        """Type of a 1-vertex p: index on C of the image point."""
        q = apply(self.A, p)
        assert is_int_point(q), p
        return self.order.index(self.labels[canon((round(q[0]), round(q[1])))])

    def image_segments(self, reach):
        segs = []
        base = list(zip(self.path[:-1], self.path[1:]))
        rng = range(-reach, reach + 1)
        for s in (1, -1):
            for wx in rng:
                for wy in rng:
                    for a, b in base:
                        segs.append(((s * a[0] + 2 * wx, s * a[1] + 2 * wy),
                                     (s * b[0] + 2 * wx, s * b[1] + 2 * wy)))
        return segs

    def build(self):
        reach = 4 * max(abs(x) for row in self.A for x in row) + 4
        lines = []
        for a, b in self.image_segments(reach):
            pa, pb = apply(self.Ainv, a), apply(self.Ainv, b)
            if max(abs(c) for c in pa + pb) < 7:
                lines.append(LineString([pa, pb]))
        merged = unary_union(lines)
        faces = {}
        for poly in polygonize(merged):
            c = poly.centroid
            if not (-1 <= c.x <= 3 and -1 <= c.y <= 3):
                continue
            key = canon((c.x, c.y))
            if key not in faces:
                faces[key] = orient(poly, 1.0)
        assert len(faces) == 2 * self.d, (self.name, len(faces))
        self.vertex_cands = []
        lim = 12
        for i in range(-lim, lim + 1):
            for j in range(-lim, lim + 1):
                self.vertex_cands.append(apply(self.Ainv, (i, j)))
        return faces

    def augmented_ring(self, poly):
        """Ccw ring points with 1-vertices inserted; returns (points, flags)."""
        ring = list(poly.exterior.coords)[:-1]
        pts, flags = [], []
        n = len(ring)
        for i in range(n):
            a, b = ring[i], ring[(i + 1) % n]
            seg = LineString([a, b])
            on = sorted((math.dist(a, v), v) for v in self.vertex_cands
                        if seg.distance(LineString([v, v])) < 1e-7
                        and math.dist(v, b) > EPS)
            items = [(0.0, a, False)] + [(t, v, True) for t, v in on]
            items.sort(key=lambda x: (x[0], not x[2]))
            for t, v, isv in items:
                if pts and math.dist(pts[-1], v) < EPS:
                    flags[-1] = flags[-1] or isv
                    continue
                pts.append(v)
                flags.append(isv)
        return pts, flags

    def corners_and_arcs(self, poly):
        pts, flags = self.augmented_ring(poly)
        idx = [i for i, f in enumerate(flags) if f]
        n = len(pts)
        arcs = []
        for a, b in zip(idx, idx[1:] + [idx[0] + n]):
            arcs.append([pts[m % n] for m in range(a, b + 1)])
        return [pts[i] for i in idx], arcs

    def generate(self):
        faces = self.build()
        tiles = []
        edge_keys = {}
        edge_type = {}
        face_list = sorted(faces.items())
        for fkey, poly in face_list:
            corners, arcs = self.corners_and_arcs(poly)
            assert len(corners) == self.k, (self.name, len(corners), corners)
            types = [self.post_index(c) for c in corners]
            k = self.k
            white = all(types[(i + 1) % k] == (types[i] + 1) % k for i in range(k))
            black = all(types[(i + 1) % k] == (types[i] - 1) % k for i in range(k))
            assert white != black, (self.name, types)
            slots = []
            for i in range(k):
                u, v = corners[i], corners[(i + 1) % k]
                arc = arcs[i]
                ekey = canon(arc_midpoint(arc))
                t = types[i] if white else types[(i + 1) % k]
                if ekey in edge_type:
                    assert edge_type[ekey] == t
                else:
                    edge_type[ekey] = t
                slots.append((ekey, t, u, v))
            tiles.append({"key": fkey, "white": white, "poly": poly,
                          "corners": dict(zip(types, corners)), "slots": slots})
        assert len(edge_type) == self.k * self.d, (self.name, len(edge_type))
        # deterministic ids
        tiles.sort(key=lambda t: (not t["white"], t["key"]))
        ekeys = sorted(edge_type, key=lambda e: (edge_type[e], e))
        eid = {e: f"e{i}" for i, e in enumerate(ekeys)}
        for i, t in enumerate(tiles):
            t["id"] = ("W" if t["white"] else "B") + str(i)
        doc = {
            "name": self.name,
            "degree": self.d,
            "post": self.order,
            "tiles": [],
            "edges": [{"id": eid[e], "type": edge_type[e]} for e in ekeys],
        }
        for t in tiles:
            bnd = []
            # start the listing at the slot of type 0
            start = [s[1] for s in t["slots"]].index(0)
            for i in range(self.k):
                ekey, ty, _, _ = t["slots"][(start + i) % self.k]
                bnd.append({"edge": eid[ekey], "type": ty,
                            "orient": "+" if t["white"] else "-"})
            doc["tiles"].append({"id": t["id"],
                                 "color": "white" if t["white"] else "black",
                                 "boundary": bnd})
        chains = self.chains(eid, edge_type)
        if chains is not None:
            doc["curve"] = chains
        doc["post_vertices"] = self.post_vertices(tiles)
        if chains is not None and self.scale is not None:
            doc["geometry"] = self.geometry(tiles)
        return doc

    def chains(self, eid, edge_type):
        out = []
        for j in range(self.k):
            a = self.post_idx[j]
            b = self.post_idx[j + 1] if j + 1 < self.k else len(self.path) - 1
            pts = self.path[a:b + 1]
            # 1-vertices along the polyline, in order
            seq = []
            for i in range(len(pts) - 1):
                p, q = pts[i], pts[i + 1]
                seg = LineString([p, q])
                on = [(math.dist(p, v), v) for v in self.vertex_cands
                      if seg.distance(LineString([v, v])) < 1e-7]
                on.sort()
                for _, v in on:
                    if not seq or math.dist(seq[-1][0], v) > EPS:
                        seq.append((v, i))
            chain = []
            for (u, iu), (v, iv) in zip(seq[:-1], seq[1:]):
                arc = [u] + [pts[m] for m in range(iu + 1, iv + 1)] + [v]
                arc = [p for n_, p in enumerate(arc)
                       if n_ == 0 or math.dist(p, arc[n_ - 1]) > EPS]
                key = canon(arc_midpoint(arc))
                if key not in eid:
                    return None
                ty = edge_type[key]
                chain.append({"edge": eid[key],
                              "dir": "+" if self.post_index(u) == ty else "-"})
            out.append(chain)
        return out

    def post_vertices(self, tiles):
        res = []
        for j in range(self.k):
            target = canon(self.path[self.post_idx[j]])
            hit = None
            for t in tiles:
                for ty, c in sorted(t["corners"].items()):
                    if canon(c) == target:
                        hit = {"tile": t["id"], "corner": ty}
                        break
                if hit:
                    break
            assert hit is not None
            res.append(hit)
        return res

    def chart_rep(self, poly):
        """G-image of a face whose centroid lies in the chart [0,2]x[0,1]."""
        c = poly.centroid
        for s in (1, -1):
            for wx in range(-6, 7):
                for wy in range(-6, 7):
                    cx, cy = s * c.x + 2 * wx, s * c.y + 2 * wy
                    if 0 < cx < 2 and 0 < cy < 1:
                        return lambda p, s=s, wx=wx, wy=wy: (
                            s * p[0] + 2 * wx, s * p[1] + 2 * wy)
        raise AssertionError

    def geometry(self, tiles):
        sx, sy = self.scale

        def fmt(p):
            return [round(p[0] * sx, 12), round(p[1] * sy, 12)]

        chart = {}
        for color, sq in (("white", [(0, 0), (1, 0), (1, 1), (0, 1)]),
                          ("black", [(1, 0), (2, 0), (2, 1), (1, 1)])):
            by_type = {}
            for p in sq:
                by_type[self.order.index(self.labels[canon(p)])] = p
            chart[color] = [fmt(by_type[j]) for j in range(self.k)]
        geo = {"chart": chart, "tiles": {}}
        for t in tiles:
            g = self.chart_rep(t["poly"])
            geo["tiles"][t["id"]] = [fmt(g(t["corners"][j])) for j in range(self.k)]
        return geo


SQUARE = {(0.0, 0.0): "p0", (1.0, 0.0): "p1", (1.0, 1.0): "p2", (0.0, 1.0): "p3"}
G_LABELS = {(0.0, 0.0): "0", (1.0, 0.0): "1", (1.0, 1.0): "inf", (0.0, 1.0): "-1"}
RECT = [(0, 0), (1, 0), (1, 1), (0, 1), (0, 0)]
RECT_REV = [(0, 0), (0, 1), (1, 1), (1, 0), (0, 0)]
H_A = [[0, -2], [1, 0]]
H2_A = [[-2, 0], [0, -2]]
G_A = [[2, 0], [0, 2]]
H_SCALE = (math.sqrt(2) / 2, 1.0)


def specs():
    yield "lattes_g.json", Lattes("lattes_g", G_A, G_LABELS, RECT,
                                  [0, 1, 2, 3], (0.5, 0.5))
    yield "lattes_h.json", Lattes("lattes_h", H_A, SQUARE, RECT,
                                  [0, 1, 2, 3], H_SCALE)
    yield "lattes_h2.json", Lattes("lattes_h2", H2_A, SQUARE, RECT,
                                   [0, 1, 2, 3], H_SCALE)
    alt = "lattes_h_alt_orders/"
    yield alt + "order_p0p3p2p1.json", Lattes(
        "lattes_h_p0p3p2p1", H_A, SQUARE, RECT_REV, [0, 1, 2, 3], H_SCALE)
    yield alt + "order_p0p2p1p3.json", Lattes(
        "lattes_h_p0p2p1p3", H_A, SQUARE,
        [(0, 0), (1, 1), (1.2, 0.5), (1, 0), (2, 1), (2.3, 0.5), (2, 0)],
        [0, 1, 3, 4], None)
    yield alt + "order_p0p3p1p2.json", Lattes(
        "lattes_h_p0p3p1p2", H_A, SQUARE,
        [(0, 0), (0.3, 0.5), (0, 1), (1, 0), (1.2, 0.5), (1, 1), (2, 0)],
        [0, 2, 3, 5], None)


def case2_specs():
    yield "order_p0p1p3p2.json", Lattes(
        "lattes_h_p0p1p3p2", H_A, SQUARE,
        [(0, 0), (0.5, 0.2), (1, 0), (0, 1), (0.5, 0.8), (1, 1), (2, 0)],
        [0, 2, 3, 5], None)


def main():
    out = Path(sys.argv[1])
    extra = len(sys.argv) > 2 and sys.argv[2] == "--case2"
    items = case2_specs() if extra else specs()
    for rel, spec in items:
        doc = spec.generate()
        path = out / rel
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(doc, indent=1) + "\n")
        print(rel, "tiles", len(doc["tiles"]), "edges", len(doc["edges"]),
              "invariant" if "curve" in doc else "non-invariant")


if __name__ == "__main__":
    main()
