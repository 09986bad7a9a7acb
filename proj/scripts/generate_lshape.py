#!/usr/bin/env python3
"""Generate include/thermoplate/detail/lshape_fields.hpp.

The L-shape exact solution separates as
    u = t^2 S(x, y),   theta = p = 2 t R(x, y)
with
    S = (x^2-1)^2 (y^2-1)^2 r^(1+v) G(w),   R = (x^2-1)(y^2-1) r^(2/3) sin(2w/3),
w = atan2(y, x) + pi/2 and v = 0.5444837. This script differentiates S and R
symbolically and emits the spatial parts as C++; the time factors and the
model coefficients are applied in mms.hpp.

Usage: python3 scripts/generate_lshape.py [output-path]
"""
import sys
from pathlib import Path

import sympy as sp

V = sp.Float("0.5444837", 30)


def g_angle(w):
    a = (sp.sin((V - 1) * 3 * sp.pi / 2) / (V - 1) - sp.sin((V + 1) * 3 * sp.pi / 2) / (V + 1))
    b = (sp.cos((V - 1) * 3 * sp.pi / 2) - sp.cos((V + 1) * 3 * sp.pi / 2))
    return a * (sp.cos((V - 1) * w) - sp.cos((V + 1) * w)) - (
        sp.sin((V - 1) * w) / (V - 1) - sp.sin((V + 1) * w) / (V + 1)) * b


def cxx(expr):
    return sp.ccode(expr).replace("M_PI", "std::numbers::pi")


def main():
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else (
        Path(__file__).resolve().parent.parent / "include/thermoplate/detail/lshape_fields.hpp")
    x, y = sp.symbols("x y", real=True)
    r = sp.sqrt(x**2 + y**2)
    w = sp.atan2(y, x) + sp.pi / 2

    S = (x**2 - 1)**2 * (y**2 - 1)**2 * r**(1 + V) * g_angle(w)
    R = (x**2 - 1) * (y**2 - 1) * r**sp.Rational(2, 3) * sp.sin(sp.Rational(2, 3) * w)

    lap = lambda e: sp.diff(e, x, 2) + sp.diff(e, y, 2)
    Sx, Sy = sp.diff(S, x), sp.diff(S, y)
    Sxx, Sxy, Syy = sp.diff(Sx, x), sp.diff(Sx, y), sp.diff(Sy, y)
    lapS = Sxx + Syy
    bilapS = lap(lapS)
    Rx, Ry = sp.diff(R, x), sp.diff(R, y)
    lapR = lap(R)

    names = ["s", "s_x", "s_y", "s_xx", "s_xy", "s_yy", "lap_s", "bilap_s", "r", "r_x", "r_y", "lap_r"]
    exprs = [S, Sx, Sy, Sxx, Sxy, Syy, lapS, bilapS, R, Rx, Ry, lapR]
    subs, reduced = sp.cse([sp.N(e, 20) for e in exprs], optimizations="basic")

    lines = []
    for sym, val in subs:
        lines.append(f"    const double {sym} = {cxx(val)};")
    for name, val in zip(names, reduced):
        lines.append(f"    out.{name} = {cxx(val)};")

    header = """#pragma once

// Generated by scripts/generate_lshape.py; do not edit by hand.

#include <cmath>
#include <numbers>

namespace thermoplate::detail {

/// Spatial factors of the L-shape exact solution and their derivatives.
struct LShapeSpatial {
    double s, s_x, s_y, s_xx, s_xy, s_yy, lap_s, bilap_s;
    double r, r_x, r_y, lap_r;
};

inline LShapeSpatial lshape_spatial(double x, double y) {
    using std::atan2; using std::cos; using std::pow; using std::sin; using std::sqrt;
    LShapeSpatial out{};
"""
    footer = """    return out;
}

}  // namespace thermoplate::detail
"""
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(header + "\n".join(lines) + "\n" + footer)
    print(f"wrote {out} ({len(subs)} common subexpressions)")


if __name__ == "__main__":
    main()
