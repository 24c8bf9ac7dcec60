#pragma once

#include "hypdelta/curve.hpp"
#include "hypdelta/periods.hpp"

namespace hypdelta {

/// Wronskian in the coordinate x of the basis mu_l = x^{l-1} dx / 2y at a
/// finite non-branch point, with the factorial normalization
/// det((1/(k-1)!) d^{k-1}/dx^{k-1} [x^{l-1}/(2y)]).
/// Derivatives are exact in the function field: each row entry is a
/// polynomial times an odd power of 1/y.
cx wronskian_x(const CurveSpec& curve, cx x, cx y);

/// Wronskian in the local coordinate z_g about infinity, evaluated at the
/// chart point t (x = t^{-2}). The basis functions are dz_l/dz_g = t^{2(g-l)}
/// exactly, and d/dz_g = sqrt(h) d/dt with h = prod(1 - a_k t^2).
cx wronskian_zg(const PeriodEngine& pe, cx t);

}  // namespace hypdelta
