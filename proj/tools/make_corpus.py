#!/usr/bin/env python3
"""Regenerates the bundled instance corpus under corpus/."""
import json
import pathlib
import sys

ROOT = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else pathlib.Path(__file__).resolve().parent.parent / "corpus")


def piece(slope, intercept=0.0):
    return {"slope": list(slope), "intercept": intercept}


def hs(normal, offset):
    return {"normal": list(normal), "offset": offset}


def poly(pieces=None, domain=None, box=None):
    f = {"kind": "polyhedral"}
    if pieces is not None:
        f["pieces"] = pieces
    if domain is not None:
        f["domain"] = domain
    if box is not None:
        f["box"] = {"lower": list(box[0]), "upper": list(box[1])}
    return f


def points(*pts):
    return {"kind": "piecewise_min", "branches": [{"point": list(p)} for p in pts]}


def branches(*bs):
    return {"kind": "piecewise_min", "branches": list(bs)}


def branch(pieces=None, domain=None, box=None):
    b = poly(pieces, domain, box)
    del b["kind"]
    return b


def grid(lower, upper, nodes):
    return {"lower": list(lower), "upper": list(upper), "nodes": list(nodes)}


def probe(x, eps):
    return {"x": list(x), "epsilon": eps}


def abs_pieces(shift=0.0):
    return [piece([1.0], -shift), piece([-1.0], shift)]


def neg_abs_on_unit():
    return branches(branch([piece([-1.0])], box=([-1.0], [1.0])), branch([piece([1.0])], box=([-1.0], [1.0])))


G1 = grid([-3.0], [3.0], [61])
D1 = grid([-4.0], [4.0], [81])
G2 = grid([-2.0, -2.0], [2.0, 2.0], [21, 21])
D2 = grid([-3.0, -3.0], [3.0, 3.0], [25, 25])
ALL_FAIL = {"statement_i": False, "statement_ii": False, "statement_iii": False, "statement_iv": False,
            "consistent": True, "conj_identity": False}
ALL_HOLD = {"statement_i": True, "statement_ii": True, "statement_iii": True, "statement_iv": True,
            "consistent": True, "conj_identity": True}

L1_PIECES_2D = [piece([sx, sy]) for sx in (1.0, -1.0) for sy in (1.0, -1.0)]
LINF_PIECES_2D = [piece([1.0, 0.0]), piece([-1.0, 0.0]), piece([0.0, 1.0]), piece([0.0, -1.0])]


def l1_ball(cx):
    # |x1 - cx| + |x2| <= 1
    return [hs([1.0, 1.0], 1.0 + cx), hs([1.0, -1.0], 1.0 + cx), hs([-1.0, 1.0], 1.0 - cx), hs([-1.0, -1.0], 1.0 - cx)]


verify = [
    dict(name="two-point-vs-tilted-two-point", dim=1,
         description="f is the indicator of {0,1}; g is x plus the indicator of {0,2}.",
         f=points([0.0], [1.0]),
         g=branches(branch([piece([1.0])], box=([0.0], [0.0])), branch([piece([1.0])], box=([2.0], [2.0]))),
         probes=[probe([0.0], 0.1)], probe_grid=G1, dual_grid=D1, expected=ALL_FAIL),
    dict(name="two-point-vs-tilted-two-point-2d", dim=2,
         description="Planar copy of the two-point pair along the first axis.",
         f=points([0.0, 0.0], [1.0, 0.0]),
         g=branches(branch([piece([1.0, 0.0])], box=([0.0, 0.0], [0.0, 0.0])),
                    branch([piece([1.0, 0.0])], box=([2.0, 0.0], [2.0, 0.0]))),
         probes=[probe([0.0, 0.0], 0.1)], probe_grid=G2, dual_grid=D2, expected=ALL_FAIL),
    dict(name="three-points-vs-interval", dim=1,
         description="Indicator of {-1,0,1} against the indicator of [-0.5,0.5].",
         f=points([-1.0], [0.0], [1.0]), g=poly(box=([-0.5], [0.5])),
         probes=[probe([0.0], 0.1)], probe_grid=G1, dual_grid=D1, expected=ALL_FAIL),
    dict(name="concave-tent-vs-interval", dim=1,
         description="-|x| on [-1,1] against the indicator of [-0.5,0.5].",
         f=neg_abs_on_unit(), g=poly(box=([-0.5], [0.5])),
         probes=[probe([0.0], 0.6), probe([0.5], 0.1)], probe_grid=G1, dual_grid=D1, expected=ALL_FAIL),
    dict(name="abs-pair", dim=1,
         description="|x| and |x-1|.",
         f=poly(abs_pieces()), g=poly(abs_pieces(1.0)),
         probes=[probe([0.0], 0.1), probe([0.5], 0.2)], probe_grid=G1, dual_grid=D1,
         expected={**ALL_HOLD, "exact_rule": True}),
    dict(name="opposite-half-lines", dim=1,
         description="Indicators of (-inf,0] and [0,inf).",
         f=poly(domain=[hs([1.0], 0.0)]), g=poly(domain=[hs([-1.0], 0.0)]),
         probes=[probe([0.0], 0.1)], probe_grid=G1, dual_grid=D1, expected=ALL_HOLD),
    dict(name="touching-l1-balls", dim=2,
         description="Indicators of two unit l1 balls meeting only at the origin.",
         f=poly(domain=l1_ball(1.0)), g=poly(domain=l1_ball(-1.0)),
         probes=[probe([0.0, 0.0], 0.1)], probe_grid=G2, dual_grid=D2, expected=ALL_HOLD),
    dict(name="same-two-points", dim=1,
         description="f = g = indicator of {0,1}.",
         f=points([0.0], [1.0]), g=points([0.0], [1.0]),
         probes=[probe([0.0], 0.1), probe([1.0], 0.3)], probe_grid=G1, dual_grid=D1, expected=ALL_HOLD),
    dict(name="adjacent-two-points", dim=1,
         description="Indicators of {0,1} and {1,2}.",
         f=points([0.0], [1.0]), g=points([1.0], [2.0]),
         probes=[probe([1.0], 0.1)], probe_grid=G1, dual_grid=D1, expected=ALL_HOLD),
    dict(name="l1-norm-on-box", dim=2,
         description="l1 norm plus the indicator of [-1,1]^2.",
         f=poly(L1_PIECES_2D), g=poly(box=([-1.0, -1.0], [1.0, 1.0])),
         probes=[probe([0.0, 0.0], 0.1), probe([1.0, 0.0], 0.2)], probe_grid=G2, dual_grid=D2,
         expected={**ALL_HOLD, "exact_rule": True}),
    dict(name="kinked-line-on-interval", dim=1,
         description="max(x, 2x-1) with the indicator of [-1,1].",
         f=poly([piece([1.0]), piece([2.0], -1.0)]), g=poly(box=([-1.0], [1.0])),
         probes=[probe([1.0], 0.1), probe([0.0], 0.25)], probe_grid=G1, dual_grid=D1,
         expected={**ALL_HOLD, "exact_rule": True}),
    dict(name="max-norm-vs-tilted-halfplane", dim=2,
         description="Max norm against x1 + 2 x2 restricted to x1 + x2 <= 1.",
         f=poly(LINF_PIECES_2D), g=poly([piece([1.0, 2.0])], domain=[hs([1.0, 1.0], 1.0)]),
         probes=[probe([0.0, 0.0], 0.1), probe([0.5, 0.5], 0.3)], probe_grid=G2, dual_grid=D2,
         expected={**ALL_HOLD, "exact_rule": True}),
    dict(name="concave-tent-vs-endpoints", dim=1,
         description="-|x| on [-1,1] against the indicator of {-1,1}.",
         f=neg_abs_on_unit(), g=points([-1.0], [1.0]),
         probes=[probe([1.0], 0.1), probe([-1.0], 0.5)], probe_grid=G1, dual_grid=D1, expected=ALL_HOLD),
    dict(name="max-norm-on-cube-3d", dim=3,
         description="Max norm in three variables with the indicator of the unit cube.",
         f=poly([piece(v) for v in ([1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1])]),
         g=poly(box=([0.0, 0.0, 0.0], [1.0, 1.0, 1.0])),
         probes=[probe([0.0, 0.0, 0.0], 0.1)],
         probe_grid=grid([-1.0, -1.0, -1.0], [1.0, 1.0, 1.0], [5, 5, 5]),
         expected={"statement_i": True, "statement_ii": True, "statement_iii": True, "statement_iv": True,
                   "consistent": True, "exact_rule": True}),
]

relax = [
    dict(name="concave-tent-on-inner-interval", dim=1,
         description="-|x| on [-1,1] minimized over [-0.5,0.5]: same value, envelopes do not split.",
         f=neg_abs_on_unit(), feasible={"halfspaces": [hs([1.0], 0.5), hs([-1.0], 0.5)]},
         probe_grid=G1, expected={"decomposition": False, "value_identity": True}),
    dict(name="shifted-abs-on-three-points", dim=1,
         description="|x-0.3| over the finite set {0,1,2}.",
         f=poly(abs_pieces(0.3)), feasible={"points": [[0.0], [1.0], [2.0]]},
         probe_grid=G1, expected={"decomposition": False, "value_identity": True}),
    dict(name="l1-plus-tilt-on-box", dim=2,
         description="Convex objective over a box: both identities hold.",
         f=poly([piece([1.0 + 0.5, 1.0]), piece([-1.0 + 0.5, 1.0]), piece([1.0 + 0.5, -1.0]),
                 piece([-1.0 + 0.5, -1.0])]),
         feasible={"halfspaces": [hs([1.0, 0.0], 1.0), hs([-1.0, 0.0], 1.0), hs([0.0, 1.0], 1.0),
                                  hs([0.0, -1.0], 1.0)]},
         probe_grid=G2, expected={"decomposition": True, "value_identity": True}),
    dict(name="concave-tent-on-inner-diamond", dim=2,
         description="-(|x1|+|x2|) on [-1,1]^2 over the four vertices of a small diamond.",
         f=branches(*[branch([piece([-sx, -sy])], box=([-1.0, -1.0], [1.0, 1.0]))
                      for sx in (1.0, -1.0) for sy in (1.0, -1.0)]),
         feasible={"points": [[0.5, 0.0], [-0.5, 0.0], [0.0, 0.5], [0.0, -0.5]]},
         probe_grid=G2, expected={"decomposition": False, "value_identity": True}),
]


def double_well_values(g):
    lo, hi, n = g["lower"][0], g["upper"][0], g["nodes"][0]
    xs = [lo + (hi - lo) * k / (n - 1) for k in range(n)]
    return [round((x * x - 1.0) ** 2, 12) for x in xs]


WELL_GRID = grid([-2.0], [2.0], [81])
relax.append(dict(name="double-well-grid-on-right-half", dim=1,
                  description="Sampled (x^2-1)^2 restricted to x >= 0.2.",
                  f={"kind": "grid_samples", "grid": WELL_GRID, "values": double_well_values(WELL_GRID)},
                  feasible={"halfspaces": [hs([-1.0], -0.2)]}, dual_grid=grid([-30.0], [30.0], [601]),
                  expected={"value_identity": True}))


def half_square(g):
    lo, hi, n = g["lower"][0], g["upper"][0], g["nodes"][0]
    return [round(0.5 * (lo + (hi - lo) * k / (n - 1)) ** 2, 12) for k in range(n)]


Q_GRID = grid([-2.0], [2.0], [401])
transform = [
    dict(name="half-square-grid", dim=1, description="Samples of x^2/2; the conjugate is s^2/2.",
         f={"kind": "grid_samples", "grid": Q_GRID, "values": half_square(Q_GRID)},
         dual_grid=grid([-2.0], [2.0], [401]), probes=[probe([0.5], 0.0), probe([1.5], 0.0)]),
    dict(name="interval-indicator", dim=1, description="Indicator of [-1,1]; the conjugate is |s|.",
         f=poly(box=([-1.0], [1.0])), dual_grid=grid([-2.0], [2.0], [9])),
    dict(name="two-point-indicator", dim=1, description="Indicator of {0,2}; hull is [0,2].",
         f=points([0.0], [2.0]), probes=[probe([1.0], 0.0)]),
    dict(name="l1-ball-indicator", dim=2, description="Indicator of the unit l1 ball; the conjugate is the max norm.",
         f=poly(domain=l1_ball(0.0))),
]

witnesses = [
    dict(name="abs-pair-midpoint", dim=1, description="|x| + |x-1| at x = 0.5 with x* = 0.",
         f=poly(abs_pieces()), g=poly(abs_pieces(1.0)), witness={"x": [0.5], "xstar": [0.0], "n": 12},
         expected={"bounds": True, "converged": True}),
    dict(name="l1-on-box-edge", dim=2, description="l1 norm on [-1,1]^2 at (1,0).",
         f=poly(L1_PIECES_2D), g=poly(box=([-1.0, -1.0], [1.0, 1.0])),
         witness={"x": [1.0, 0.0], "xstar": [2.0, 0.5], "n": 12}, expected={"bounds": True, "converged": True}),
    dict(name="touching-l1-balls", dim=2, description="Two l1 balls meeting at the origin.",
         f=poly(domain=l1_ball(1.0)), g=poly(domain=l1_ball(-1.0)),
         witness={"x": [0.0, 0.0], "xstar": [0.3, 2.0], "n": 12}, expected={"bounds": True, "converged": True}),
]

subdiff = [
    dict(name="abs-value", dim=1, description="|x| at the kink and away from it.",
         f=poly(abs_pieces()), probes=[probe([0.0], 0.0), probe([1.0], 0.5)],
         witness={"x": [1.0], "xstar": [0.5], "epsilon": 1.0}, expected={"nonempty": True}),
    dict(name="concave-tent-below-threshold", dim=1,
         description="-|x| on [-1,1] at 0 has threshold 1, so the 0.6-subdifferential is empty.",
         f=neg_abs_on_unit(), probes=[probe([0.0], 0.6)], expected={"nonempty": False}),
    dict(name="l1-norm-2d", dim=2, description="l1 norm in the plane.",
         f=poly(L1_PIECES_2D), probes=[probe([0.0, 0.0], 0.0), probe([1.0, 0.0], 0.3)],
         witness={"x": [1.0, 0.0], "xstar": [0.8, 0.1], "epsilon": 0.5}, expected={"nonempty": True}),
]


def main():
    for sub, items in (("verify", verify), ("relax", relax), ("transform", transform),
                       ("witnesses", witnesses), ("subdiff", subdiff)):
        d = ROOT / sub
        d.mkdir(parents=True, exist_ok=True)
        for old in d.glob("*.json"):
            old.unlink()
        for k, inst in enumerate(items, 1):
            path = d / f"{k:02d}-{inst['name']}.json"
            path.write_text(json.dumps(inst, indent=2) + "\n")


if __name__ == "__main__":
    main()
