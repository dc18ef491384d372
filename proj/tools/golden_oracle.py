#!/usr/bin/env python3
"""High-precision reference values for the replay fixtures.

Instances are drawn in double precision with numpy, then every quantity is
recomputed from those exact doubles with mpmath at 50 digits, independently
of the C++ code. Output goes to tests/fixtures/ (one JSON file per fixture).

    python3 tools/golden_oracle.py [--out tests/fixtures] [--seed 20240601]
"""

import argparse
import json
import pathlib

import mpmath
import numpy as np
from mpmath import mp

mp.dps = 50
TAU = 1e-8


# ---- encoding ----------------------------------------------------------------

def enc(a):
    a = np.asarray(a, dtype=complex)
    return {"dim": int(a.shape[0]),
            "entries": [[float(z.real), float(z.imag)] for z in a.reshape(-1)]}


def enc_norm(spec):
    kind = spec[0]
    if kind == "schatten":
        return {"kind": "schatten", "p": spec[1]}
    if kind == "kyfan":
        return {"kind": "kyfan", "k": spec[1]}
    return {"kind": "qnorm", "base": enc_norm(spec[1])}


def to_mp(a):
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    m = mp.matrix(n, n)
    for i in range(n):
        for j in range(n):
            m[i, j] = mp.mpc(float(a[i, j].real), float(a[i, j].imag))
    return m


def from_mp(m):
    return np.array([[complex(m[i, j]) for j in range(m.cols)] for i in range(m.rows)])


# ---- high-precision linear algebra ------------------------------------------

def H(a):
    return a.H


def herm(a):
    return (a + a.H) / 2


def eig(a):
    e, q = mp.eighe(herm(a))
    order = sorted(range(len(e)), key=lambda i: e[i])
    n = a.rows
    qs = mp.matrix(n, n)
    for k, i in enumerate(order):
        for r in range(n):
            qs[r, k] = q[r, i]
    return [mp.re(e[i]) for i in order], qs


def diag_apply(q, values):
    n = q.rows
    d = mp.matrix(n, n)
    for i, v in enumerate(values):
        d[i, i] = v
    return herm(q * d * q.H)


def spectral(a, f):
    e, q = eig(a)
    return diag_apply(q, [f(x) for x in e])


def power(a, s):
    return spectral(a, lambda x: mp.mpf(0) ** s if x <= 0 else x ** s)


def svd(a):
    u, s, v = mp.svd_c(a)  # a = u diag(s) v
    return u, [mp.re(x) for x in s], v.H  # v returned as V (a = U S V*)


def sigma(a):
    return sorted(svd(a)[1], reverse=True)


def abs_power(a, s):
    _, sv, v = svd(a)
    return diag_apply(v, [x ** s if x > 0 else mp.mpf(0) ** s for x in sv])


def op_norm(a):
    return max(sigma(a))


def min_eig(a):
    return eig(a)[0][0]


def weighted_mean(a, b, theta):
    ah = power(a, mp.mpf(1) / 2)
    ai = power(a, -mp.mpf(1) / 2)
    return herm(ah * power(herm(ai * b * ai), theta) * ah)


def polar(a):
    u, sv, v = svd(a)
    return u * v.H, diag_apply(v, sv)


def eye(n):
    return mp.eye(n)


def zeros(n):
    return mp.zeros(n, n)


# ---- norms -------------------------------------------------------------------

def norm_sv(spec, sv):
    sv = sorted(sv, reverse=True)
    kind = spec[0]
    if kind == "schatten":
        p = mp.mpf(spec[1])
        return mp.fsum(x ** p for x in sv) ** (1 / p)
    if kind == "kyfan":
        return mp.fsum(sv[: spec[1]])
    return mp.sqrt(norm_sv(spec[1], [x * x for x in sv]))


def norm(spec, a):
    return norm_sv(spec, sigma(a))


def norm_psd_power(spec, a, s):
    return norm_sv(spec, [max(x, 0) ** s for x in eig(a)[0]])


# ---- verdicts ----------------------------------------------------------------

def scalar(lhs, rhs):
    gap = rhs - lhs
    return float(gap), bool(gap >= -TAU * (1 + abs(rhs)))


def loewner(lhs, rhs):
    gap = min_eig(rhs - lhs)
    return float(gap), bool(gap >= -TAU * (1 + op_norm(rhs)))


def wsum(weights, mats):
    out = zeros(mats[0].rows)
    for g, m in zip(weights, mats):
        out += mp.mpf(g) * m
    return out


def sandwich(weights, a, x, b):
    return wsum(weights, [ai.H * xi * bi for ai, xi, bi in zip(a, x, b)])


def exps(p):
    p = mp.mpf(p)
    return p, p / (p - 1)


def gram_pow(x, t, h_exp, side):
    """sum gamma A* h(|T^(*)|)^2 A with h(t) = t^h_exp."""
    weights, blocks = x
    out = zeros(blocks[0].rows)
    for g, a, tn in zip(weights, blocks, t):
        u, sv, v = svd(tn)
        basis = v if side == "right" else u
        w = diag_apply(basis, [(s ** h_exp if s > 0 else mp.mpf(0) ** h_exp) ** 2 for s in sv])
        out += mp.mpf(g) * (a.H * w * a)
    return herm(out)


def inner(x, y):
    return wsum(x[0], [a.H * b for a, b in zip(x[1], y[1])])


def sharp_sides(p_mat, left, right):
    u, mod = polar(p_mat)
    return mod, weighted_mean(herm(u.H * left * u), right, mp.mpf(1) / 2)


def v_cs_sharp(i):
    x, y = i["x"], i["y"]
    lhs, rhs = sharp_sides(inner(x, y), herm(inner(x, x)), herm(inner(y, y)))
    return loewner(lhs, rhs)


def v_weighted_cs(i):
    x, y, t, al = i["x"], i["y"], i["t"], mp.mpf(i["alpha"])
    ty = (y[0], [tn * b for tn, b in zip(t, y[1])])
    lhs, rhs = sharp_sides(inner(x, ty), gram_pow(x, t, al, "left"),
                           gram_pow(y, t, 1 - al, "right"))
    return loewner(lhs, rhs)


def v_horn_mathias(i):
    p, q = exps(i["p"])
    r = mp.mpf(i["r"])
    lhs = norm_sv(i["norm"], [s ** r for s in sigma(i["a_x"])])
    rhs = (norm_psd_power(i["norm"], i["a"], p * r / 2) ** (1 / p)
           * norm_psd_power(i["norm"], i["b"], q * r / 2) ** (1 / q))
    return scalar(lhs, rhs)


def main_sides(weights, a, b, x, alpha, p, r, spec):
    p, q = exps(p)
    r, alpha = mp.mpf(r), mp.mpf(alpha)
    xe, ye = (weights, a), (weights, b)
    ty = (weights, [xn * bn for xn, bn in zip(x, b)])
    lhs = norm_sv(spec, [s ** r for s in sigma(inner(xe, ty))])
    rhs = (norm_psd_power(spec, gram_pow(xe, x, alpha, "left"), p * r / 2) ** (1 / p)
           * norm_psd_power(spec, gram_pow(ye, x, 1 - alpha, "right"), q * r / 2) ** (1 / q))
    return scalar(lhs, rhs)


def v_main(i):
    return main_sides(i["weights"], i["a"], i["b"], i["x"], i["alpha"], i["p"], i["r"], i["norm"])


def v_discrete_ii(i, weights=None):
    w = i["weights"] if weights is None else weights
    p, q = exps(i["p"])
    r = mp.mpf(i["r"])
    s = sandwich(w, i["a"], i["x"], i["b"])
    sup = max(op_norm(x) for x in i["x"])
    lhs = norm_sv(i["norm"], [v ** r for v in sigma(s)])
    rhs = (norm(i["norm"], wsum(w, [abs_power(a, p * r) for a in i["a"]])) ** (1 / p)
           * norm(i["norm"], wsum(w, [abs_power(b, q * r) for b in i["b"]])) ** (1 / q)
           * sup ** r)
    return scalar(lhs, rhs)


def v_discrete_ii_q(i):
    w = i["weights"]
    p, q = exps(i["p"])
    sup = max(op_norm(x) for x in i["x"])
    lhs = norm(i["norm"], sandwich(w, i["a"], i["x"], i["b"]))
    rhs = (norm(i["norm"], wsum(w, [abs_power(a, p) for a in i["a"]])) ** (1 / p)
           * norm(i["norm"], wsum(w, [abs_power(b, q) for b in i["b"]])) ** (1 / q) * sup)
    return scalar(lhs, rhs)


def v_discrete_iii(i):
    w = i["weights"]
    p, q = exps(i["p"])
    wb = [mp.mpf(g) ** (q / 2) for g in w]
    sup = max(op_norm(x) for x in i["x"])
    lhs = norm(i["norm"], sandwich(w, i["a"], i["x"], i["b"]))
    rhs = (norm(i["norm"], wsum(w, [abs_power(a, p) for a in i["a"]])) ** (1 / p)
           * norm(i["norm"], wsum(wb, [abs_power(b, q) for b in i["b"]])) ** (1 / q) * sup)
    return scalar(lhs, rhs)


def v_discrete_iii_finite(i):
    m = len(i["a"])
    ones = [1] * m
    p, q = exps(i["p"])
    c = mp.mpf(m) ** abs(mp.mpf(1) / 2 - 1 / p)
    sup = max(op_norm(x) for x in i["x"])
    lhs = norm(i["norm"], sandwich(ones, i["a"], i["x"], i["b"]))
    rhs = (norm(i["norm"], wsum(ones, [abs_power(a, p) for a in i["a"]])) ** (1 / p)
           * norm(i["norm"], wsum(ones, [abs_power(b, q) for b in i["b"]])) ** (1 / q) * sup)
    return scalar(lhs, c * rhs)


def iv_sides(w, a, b, x, p, spec):
    p, q = exps(p)
    xs = [x] * len(a)
    lhs = norm(spec, sandwich(w, a, xs, b))
    left = power(wsum(w, [abs_power(t, p) for t in a]), 1 / p)
    right = power(wsum(w, [abs_power(t, q) for t in b]), 1 / q)
    return lhs, norm(spec, left * x * right)


def v_discrete_iv(i):
    return scalar(*iv_sides(i["weights"], i["a"], i["b"], i["x"], i["p"], i["norm"]))


def v_discrete_v(i):
    m = len(i["a"])
    p, _ = exps(i["p"])
    lhs, base = iv_sides([1] * m, i["a"], i["b"], i["x"], i["p"], i["norm"])
    return scalar(lhs, mp.mpf(m) ** abs(mp.mpf(1) / 2 - 1 / p) * base)


def poly_at(coeffs, t):
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * t + c
    return acc


def nodes(m):
    return [(mp.mpf(j) + mp.mpf(1) / 2) / m for j in range(m)]


def v_continuous(variant):
    def run(i):
        m = i["nodes"]
        ts = nodes(m)
        a = [poly_at(i["pa"], t) for t in ts]
        b = [poly_at(i["pb"], t) for t in ts]
        w = [mp.mpf(1) / m] * m
        if variant == "i":
            x = [poly_at(i["px"], t) for t in ts]
            return main_sides(w, a, b, x, i["alpha"], i["p"], i["r"], i["norm"])
        if variant == "ii":
            x = [poly_at(i["px"], t) for t in ts]
            return v_discrete_ii({"a": a, "b": b, "x": x, "p": i["p"], "r": i["r"],
                                  "norm": i["norm"]}, weights=w)
        return scalar(*iv_sides(w, a, b, i["px"][0], i["p"], i["norm"]))
    return run


def v_jensen(convex):
    def run(i):
        w, blocks, s = i["weights"], i["blocks"], mp.mpf(i["s"])
        lhs = norm_psd_power(i["norm"], wsum(w, blocks), s)
        coeff = w if convex else [mp.mpf(g) ** s for g in w]
        rhs = norm(i["norm"], wsum(coeff, [power(bl, s) for bl in blocks]))
        return scalar(lhs, rhs)
    return run


def v_seo(i):
    p, q = exps(i["p"])
    theta = 1 / p
    weights, xb = i["x"]
    ap = [power(a, p) for a in i["a"]]
    bq = [power(b, q) for b in i["b"]]
    means = [weighted_mean(b, a, theta) for a, b in zip(ap, bq)]
    lhs = herm(wsum(weights, [x.H * mn * x for x, mn in zip(xb, means)]))
    gb = herm(wsum(weights, [x.H * b * x for x, b in zip(xb, bq)]))
    ga = herm(wsum(weights, [x.H * a * x for x, a in zip(xb, ap)]))
    return loewner(lhs, weighted_mean(gb, ga, theta))


def superadd(w, a, b, p):
    p, q = exps(p)
    theta = 1 / p
    ap = [power(x, p) for x in a]
    bq = [power(x, q) for x in b]
    lhs = herm(wsum(w, [weighted_mean(y, x, theta) for x, y in zip(ap, bq)]))
    return loewner(lhs, weighted_mean(herm(wsum(w, bq)), herm(wsum(w, ap)), theta))


def v_superadditivity(i):
    return superadd(i["weights"], i["a"], i["b"], i["p"])


def v_superadditivity_quadrature(i):
    m = i["nodes"]
    ts = nodes(m)
    a = [herm(poly_at(i["ga"], t).H * poly_at(i["ga"], t)) for t in ts]
    b = [herm(poly_at(i["gb"], t).H * poly_at(i["gb"], t)) for t in ts]
    return superadd([mp.mpf(1) / m] * m, a, b, i["p"])


# ---- instance generation -----------------------------------------------------

class Gen:
    def __init__(self, seed):
        self.rng = np.random.default_rng(seed)

    def mat(self, d):
        return (self.rng.standard_normal((d, d)) + 1j * self.rng.standard_normal((d, d))) / np.sqrt(2 * d)

    def unitary(self, d):
        u, _, vh = np.linalg.svd(self.mat(d))
        return u @ vh

    def psd(self, d):
        # spectrum in [0.1, 1]: well away from the singular regime
        q = self.unitary(d)
        a = q @ np.diag(self.rng.uniform(0.1, 1.0, d)) @ q.conj().T
        return (a + a.conj().T) / 2

    def weights(self, m, unit=False):
        w = self.rng.uniform(0.2, 1.0, m)
        return list(w / w.sum()) if unit else list(w)

    def commuting(self, d, m):
        w = self.unitary(d)
        out = []
        for _ in range(m):
            dg = (self.rng.standard_normal(d) + 1j * self.rng.standard_normal(d)) / np.sqrt(2)
            out.append(w @ np.diag(dg) @ w.conj().T)
        return out


SCHATTEN1 = ("schatten", 1.0)
SCHATTEN2 = ("schatten", 2.0)
SCHATTEN3 = ("schatten", 3.0)
KYFAN1 = ("kyfan", 1)
KYFAN2 = ("kyfan", 2)
Q1 = ("qnorm", SCHATTEN1)
Q2 = ("qnorm", SCHATTEN2)


def mats(lst):
    return [to_mp(a) for a in lst]


def verdict_fixture(name, ineq, json_inputs, mp_inputs, fn):
    gap, ok = fn(mp_inputs)
    return name, {"kind": "verdict", "inequality_id": ineq, "inputs": json_inputs,
                  "tolerance": TAU, "expected": {"gap": gap, "pass": ok}}


def build(seed):
    g = Gen(seed)
    out = []

    def element(d, m, unit=False, w=None):
        w = g.weights(m, unit) if w is None else w
        return w, [g.mat(d) for _ in range(m)]

    # cs_sharp: random and x = y
    w, xa = element(3, 3)
    ya = [g.mat(3) for _ in range(3)]
    out.append(verdict_fixture(
        "cs_sharp_random", "cs_sharp",
        {"x": {"weights": w, "blocks": [enc(a) for a in xa]},
         "y": {"weights": w, "blocks": [enc(a) for a in ya]}},
        {"x": (w, mats(xa)), "y": (w, mats(ya))}, v_cs_sharp))
    w, xa = element(2, 2)
    out.append(verdict_fixture(
        "cs_sharp_equal", "cs_sharp",
        {"x": {"weights": w, "blocks": [enc(a) for a in xa]},
         "y": {"weights": w, "blocks": [enc(a) for a in xa]}},
        {"x": (w, mats(xa)), "y": (w, mats(xa))}, v_cs_sharp))

    # weighted_cs: random alpha = 0.3; identity T
    for name, alpha, ident in (("weighted_cs_random", 0.3, False), ("weighted_cs_identity", 0.5, True)):
        w, xa = element(3, 3)
        ya = [g.mat(3) for _ in range(3)]
        ta = [np.eye(3) if ident else g.mat(3) for _ in range(3)]
        out.append(verdict_fixture(
            name, "weighted_cs",
            {"x": {"weights": w, "blocks": [enc(a) for a in xa]},
             "y": {"weights": w, "blocks": [enc(a) for a in ya]},
             "t": {"blocks": [enc(a) for a in ta]}, "alpha": alpha},
            {"x": (w, mats(xa)), "y": (w, mats(ya)), "t": mats(ta), "alpha": alpha},
            v_weighted_cs))

    # horn_mathias: contraction construction; A = B = X = I
    a, b = g.psd(3), g.psd(3)
    c = g.mat(3)
    c = 0.8 * c / np.linalg.norm(c, 2)
    ev, q = np.linalg.eigh(a)
    ah = q @ np.diag(np.sqrt(ev)) @ q.conj().T
    ev, q = np.linalg.eigh(b)
    bh = q @ np.diag(np.sqrt(ev)) @ q.conj().T
    x = ah @ c @ bh
    for name, (aa, bb, xx, p, r, spec) in {
        "horn_mathias_random": (a, b, x, 3.0, 1.0, SCHATTEN1),
        "horn_mathias_identity": (np.eye(2), np.eye(2), np.eye(2), 2.0, 2.0, KYFAN2),
    }.items():
        out.append(verdict_fixture(
            name, "horn_mathias",
            {"a": enc(aa), "b": enc(bb), "x": enc(xx), "p": p, "r": r, "norm": enc_norm(spec)},
            {"a": to_mp(aa), "b": to_mp(bb), "a_x": to_mp(xx), "p": p, "r": r, "norm": spec},
            v_horn_mathias))

    # main and discrete_i share inputs
    w = g.weights(3)
    a3 = [g.mat(2) for _ in range(3)]
    b3 = [g.mat(2) for _ in range(3)]
    x3 = [g.mat(2) for _ in range(3)]
    scalar_eq = ([1.0, 1.0], [np.array([[3.0]]), np.array([[4.0]])])
    for ineq in ("main", "discrete_i"):
        for name, (ww, aa, bb, xx, alpha, p, r, spec) in {
            f"{ineq}_random": (w, a3, b3, x3, 0.25, 3.0, 2.0, SCHATTEN3),
            f"{ineq}_scalar_equality": (scalar_eq[0], scalar_eq[1], scalar_eq[1],
                                        [np.eye(1), np.eye(1)], 0.5, 2.0, 1.0, SCHATTEN1),
        }.items():
            out.append(verdict_fixture(
                name, ineq,
                {"weights": ww, "a": [enc(t) for t in aa], "b": [enc(t) for t in bb],
                 "x": [enc(t) for t in xx], "alpha": alpha, "p": p, "r": r,
                 "norm": enc_norm(spec)},
                {"weights": ww, "a": mats(aa), "b": mats(bb), "x": mats(xx), "alpha": alpha,
                 "p": p, "r": r, "norm": spec},
                v_main))

    # sandwich forms
    def sandwich_case(name, ineq, fn, d, m, p, r, spec, unit=True, single_identity=False,
                      with_weights=True):
        if single_identity:
            ww = [1.0]
            aa = bb = xx = [np.eye(d)]
        else:
            ww = g.weights(m, unit)
            aa = [g.mat(d) for _ in range(m)]
            bb = [g.mat(d) for _ in range(m)]
            xx = [g.mat(d) for _ in range(m)]
        js = {"a": [enc(t) for t in aa], "b": [enc(t) for t in bb], "x": [enc(t) for t in xx],
              "p": p, "r": r, "norm": enc_norm(spec)}
        mi = {"a": mats(aa), "b": mats(bb), "x": mats(xx), "p": p, "r": r, "norm": spec}
        if with_weights:
            js["weights"] = ww
            mi["weights"] = ww
        out.append(verdict_fixture(name, ineq, js, mi, fn))

    sandwich_case("discrete_ii_random", "discrete_ii", v_discrete_ii, 2, 4, 3.0, 2.0, SCHATTEN2)
    sandwich_case("discrete_ii_single", "discrete_ii", v_discrete_ii, 2, 1, 2.0, 2.0, KYFAN1,
                  single_identity=True)
    sandwich_case("discrete_ii_q_random", "discrete_ii_q", v_discrete_ii_q, 3, 3, 1.5, 1.0, Q1)
    sandwich_case("discrete_iii_random", "discrete_iii", v_discrete_iii, 2, 3, 4.0, 1.0, SCHATTEN1)
    sandwich_case("discrete_iii_single", "discrete_iii", v_discrete_iii, 3, 1, 2.0, 1.0, SCHATTEN2,
                  single_identity=True)
    sandwich_case("discrete_iii_finite_random", "discrete_iii_finite", v_discrete_iii_finite,
                  2, 3, 4.0, 1.0, KYFAN2, with_weights=False)

    # commuting normal families
    for name, ineq, fn, m, p, spec, weighted in (
            ("discrete_iv_random", "discrete_iv", v_discrete_iv, 3, 3.0, Q2, True),
            ("discrete_v_random", "discrete_v", v_discrete_v, 4, 1.5, SCHATTEN1, False)):
        aa, bb, xx = g.commuting(3, m), g.commuting(3, m), g.mat(3)
        js = {"a": [enc(t) for t in aa], "b": [enc(t) for t in bb], "x": enc(xx), "p": p,
              "norm": enc_norm(spec)}
        mi = {"a": mats(aa), "b": mats(bb), "x": to_mp(xx), "p": p, "norm": spec}
        if weighted:
            ww = g.weights(m)
            js["weights"] = ww
            mi["weights"] = ww
        out.append(verdict_fixture(name, ineq, js, mi, fn))
    ident = [np.eye(2)] * 2
    xx = g.mat(2)
    out.append(verdict_fixture(
        "discrete_iv_identity", "discrete_iv",
        {"weights": [0.5, 0.5], "a": [enc(t) for t in ident], "b": [enc(t) for t in ident],
         "x": enc(xx), "p": 3.0, "norm": enc_norm(Q1)},
        {"weights": [0.5, 0.5], "a": mats(ident), "b": mats(ident), "x": to_mp(xx), "p": 3.0,
         "norm": Q1}, v_discrete_iv))

    # continuous families
    for variant, nodes_m, spec, r in (("i", 8, SCHATTEN2, 1.0), ("ii", 8, KYFAN1, 2.0), ("iii", 4, Q2, 1.0)):
        if variant == "iii":
            pa = g.commuting(2, 3)
            pb = g.commuting(2, 3)
            px = [g.mat(2)]
        else:
            pa = [g.mat(2) for _ in range(3)]
            pb = [g.mat(2) for _ in range(3)]
            px = [g.mat(2) for _ in range(3)]
        js = {"a": {"coefficients": [enc(t) for t in pa]},
              "b": {"coefficients": [enc(t) for t in pb]},
              "x": {"coefficients": [enc(t) for t in px]},
              "nodes": nodes_m, "alpha": 0.75, "p": 3.0, "r": r, "norm": enc_norm(spec)}
        mi = {"pa": mats(pa), "pb": mats(pb), "px": mats(px), "nodes": nodes_m, "alpha": 0.75,
              "p": 3.0, "r": r, "norm": spec}
        out.append(verdict_fixture(f"continuous_{variant}_random", f"continuous_{variant}", js, mi,
                                   v_continuous(variant)))

    # Jensen
    for name, ineq, convex, s, m in (("jensen_convex_random", "jensen_convex", True, 2.0, 3),
                                     ("jensen_concave_random", "jensen_concave", False, 0.5, 3)):
        ww = g.weights(m, unit=True) if convex else [1.0] * m
        blocks = [g.psd(3) for _ in range(m)]
        out.append(verdict_fixture(
            name, ineq,
            {"weights": ww, "blocks": [enc(t) for t in blocks], "s": s, "norm": enc_norm(SCHATTEN1)},
            {"weights": ww, "blocks": mats(blocks), "s": s, "norm": SCHATTEN1},
            v_jensen(convex)))

    # weighted-mean ordering and superadditivity
    w, xa = element(2, 3)
    aa = [g.psd(2) for _ in range(3)]
    bb = [g.psd(2) for _ in range(3)]
    out.append(verdict_fixture(
        "seo_ordering_random", "seo_ordering",
        {"x": {"weights": w, "blocks": [enc(t) for t in xa]},
         "a": {"blocks": [enc(t) for t in aa]}, "b": {"blocks": [enc(t) for t in bb]}, "p": 2.0},
        {"x": (w, mats(xa)), "a": mats(aa), "b": mats(bb), "p": 2.0}, v_seo))
    a1, b1 = g.psd(2), g.psd(2)
    out.append(verdict_fixture(
        "seo_ordering_single", "seo_ordering",
        {"x": {"weights": [1.0], "blocks": [enc(np.eye(2))]},
         "a": {"blocks": [enc(a1)]}, "b": {"blocks": [enc(b1)]}, "p": 3.0},
        {"x": ([1.0], mats([np.eye(2)])), "a": mats([a1]), "b": mats([b1]), "p": 3.0}, v_seo))
    ww = g.weights(4)
    aa = [g.psd(3) for _ in range(4)]
    bb = [g.psd(3) for _ in range(4)]
    out.append(verdict_fixture(
        "superadditivity_random", "superadditivity",
        {"weights": ww, "a": [enc(t) for t in aa], "b": [enc(t) for t in bb], "p": 3.0},
        {"weights": ww, "a": mats(aa), "b": mats(bb), "p": 3.0}, v_superadditivity))
    ga = [g.mat(2) for _ in range(3)]
    gb = [g.mat(2) for _ in range(3)]
    ga[0] = ga[0] + 2 * np.eye(2)  # keep G(t)* G(t) invertible on [0, 1]
    gb[0] = gb[0] + 2 * np.eye(2)
    out.append(verdict_fixture(
        "superadditivity_quadrature_random", "superadditivity_quadrature",
        {"ga": {"coefficients": [enc(t) for t in ga]}, "gb": {"coefficients": [enc(t) for t in gb]},
         "nodes": 8, "p": 1.5},
        {"ga": mats(ga), "gb": mats(gb), "nodes": 8, "p": 1.5}, v_superadditivity_quadrature))

    # means
    def mean_fixture(name, kind, a, b, theta, value):
        body = {"kind": kind, "a": enc(a), "b": enc(b), "expected": enc(from_mp(value))}
        if kind == "weighted_geometric_mean":
            body["theta"] = theta
        out.append((name, body))

    a = np.array([[2.0, 1.0], [1.0, 1.0]])
    b = np.diag([3.0, 1.0])
    mean_fixture("geometric_mean_2x2", "geometric_mean", a, b, 0.5,
                 weighted_mean(to_mp(a), to_mp(b), mp.mpf(1) / 2))
    a, b = g.psd(3), g.psd(3)
    mean_fixture("weighted_geometric_mean_random", "weighted_geometric_mean", a, b, 0.3,
                 weighted_mean(to_mp(a), to_mp(b), mp.mpf("0.3")))
    # Exactly singular A: the limit (A + eps I) # B at eps = 1e-40 is within
    # 1e-20 of the limit.
    a = np.diag([1.0, 0.0])
    b = g.psd(2)
    with mp.workdps(90):
        eps = mp.mpf("1e-40")
        lim = weighted_mean(to_mp(a) + eps * eye(2), to_mp(b), mp.mpf(1) / 2)
    mean_fixture("geometric_mean_singular", "geometric_mean", a, b, 0.5, lim)

    # transformed Gram matrices, both sides
    w, xa = element(3, 3)
    ta = [g.mat(3) for _ in range(3)]
    for side in ("left", "right"):
        value = gram_pow((w, mats(xa)), mats(ta), mp.mpf("0.5"), side)
        out.append((f"transformed_gram_{side}", {
            "kind": "transformed_gram",
            "x": {"weights": w, "blocks": [enc(t) for t in xa]},
            "t": {"blocks": [enc(t) for t in ta]},
            "alpha": 0.5, "side": side, "expected": enc(from_mp(value))}))
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures"))
    ap.add_argument("--seed", type=int, default=20240601)
    args = ap.parse_args()
    out_dir = pathlib.Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, body in build(args.seed):
        (out_dir / f"{name}.json").write_text(json.dumps(body, indent=1) + "\n")
        exp = body.get("expected", {})
        print(f"{name:40s} {exp.get('gap', '')}")


if __name__ == "__main__":
    main()
