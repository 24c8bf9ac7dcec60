#include "hypdelta/quad2d.hpp"

#include <cmath>
#include <queue>
#include <random>
#include <vector>

#include "hypdelta/quadrature.hpp"

namespace hypdelta {

namespace {

struct Cell {
    double u0, u1, v0, v1;
    double value = 0.0;  // 5x5 rule
    double err = 0.0;    // |5x5 - 3x3|
    int depth = 0;
    long id = 0;
};

struct CellOrder {
    bool operator()(const Cell& a, const Cell& b) const {
        if (a.err != b.err) return a.err < b.err;
        return a.id > b.id;  // deterministic tie-break
    }
};

}  // namespace

Quad2DResult integrate_rect(const std::function<double(double, double)>& f, double u0, double u1,
                            double v0, double v1, const Quad2DConfig& cfg) {
    std::vector<double> x3, w3, x5, w5;
    gauss_legendre(3, x3, w3);
    gauss_legendre(5, x5, w5);

    Quad2DResult res;
    long next_id = 0;

    auto rate = [&](Cell& c) {
        double um = 0.5 * (c.u0 + c.u1), uh = 0.5 * (c.u1 - c.u0);
        double vm = 0.5 * (c.v0 + c.v1), vh = 0.5 * (c.v1 - c.v0);
        double s5 = 0.0, s3 = 0.0;
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) s5 += w5[i] * w5[j] * f(um + uh * x5[i], vm + vh * x5[j]);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) s3 += w3[i] * w3[j] * f(um + uh * x3[i], vm + vh * x3[j]);
        res.evals += 34;
        c.value = s5 * uh * vh;
        c.err = std::abs((s5 - s3) * uh * vh);
        c.id = next_id++;
    };

    std::priority_queue<Cell, std::vector<Cell>, CellOrder> heap;
    double total = 0.0, total_err = 0.0;
    for (int i = 0; i < cfg.init_u; ++i)
        for (int j = 0; j < cfg.init_v; ++j) {
            Cell c;
            c.u0 = u0 + (u1 - u0) * i / cfg.init_u;
            c.u1 = u0 + (u1 - u0) * (i + 1) / cfg.init_u;
            c.v0 = v0 + (v1 - v0) * j / cfg.init_v;
            c.v1 = v0 + (v1 - v0) * (j + 1) / cfg.init_v;
            rate(c);
            total += c.value;
            total_err += c.err;
            heap.push(c);
        }

    while (total_err > cfg.abs_tol && !heap.empty()) {
        if (res.evals >= cfg.max_evals) {
            if (cfg.throw_on_budget) throw QuadBudgetError("2d quadrature budget exhausted before tolerance");
            break;
        }
        Cell c = heap.top();
        heap.pop();
        if (c.depth >= cfg.max_depth) continue;  // leave its estimate in place
        total -= c.value;
        total_err -= c.err;
        double um = 0.5 * (c.u0 + c.u1), vm = 0.5 * (c.v0 + c.v1);
        for (int q = 0; q < 4; ++q) {
            Cell ch;
            ch.u0 = (q & 1) ? um : c.u0;
            ch.u1 = (q & 1) ? c.u1 : um;
            ch.v0 = (q & 2) ? vm : c.v0;
            ch.v1 = (q & 2) ? c.v1 : vm;
            ch.depth = c.depth + 1;
            rate(ch);
            total += ch.value;
            total_err += ch.err;
            heap.push(ch);
        }
    }

    res.value = total;
    res.err_estimate = total_err;
    res.converged = total_err <= cfg.abs_tol;
    return res;
}

Quad2DResult integrate_rect_mc(const std::function<double(double, double)>& f, double u0, double u1,
                               double v0, double v1, long samples, unsigned long seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    double area = (u1 - u0) * (v1 - v0);
    double sum = 0.0, sum2 = 0.0;
    for (long i = 0; i < samples; ++i) {
        double u = u0 + (u1 - u0) * U(rng);
        double v = v0 + (v1 - v0) * U(rng);
        double y = f(u, v);
        sum += y;
        sum2 += y * y;
    }
    Quad2DResult res;
    res.value = area * sum / samples;
    double var = std::max(0.0, sum2 / samples - (sum / samples) * (sum / samples));
    res.err_estimate = area * std::sqrt(var / samples);
    res.evals = samples;
    res.converged = true;
    return res;
}

}  // namespace hypdelta
