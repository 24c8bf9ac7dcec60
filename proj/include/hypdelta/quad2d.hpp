#pragma once

#include <functional>
#include <stdexcept>

namespace hypdelta {

struct QuadBudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Quad2DConfig {
    double abs_tol = 1e-3;
    long max_evals = 40000000;
    int init_u = 6;       // initial grid in the first coordinate
    int init_v = 12;      // and in the second
    int max_depth = 24;
    bool throw_on_budget = true;
};

struct Quad2DResult {
    double value = 0.0;
    double err_estimate = 0.0;
    long evals = 0;
    bool converged = false;
};

/// h-adaptive tensor Gauss quadrature of f over [u0,u1] x [v0,v1].
/// Per-cell error indicator: embedded 3x3 vs 5x5 rule; the worst cells are
/// split in four until the summed indicator meets abs_tol. Deterministic.
Quad2DResult integrate_rect(const std::function<double(double, double)>& f, double u0, double u1,
                            double v0, double v1, const Quad2DConfig& cfg);

/// Plain Monte Carlo over the same rectangle with a fixed seed.
Quad2DResult integrate_rect_mc(const std::function<double(double, double)>& f, double u0, double u1,
                               double v0, double v1, long samples, unsigned long seed);

}  // namespace hypdelta
