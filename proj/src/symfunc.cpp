#include "hypdelta/symfunc.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace hypdelta {

SymPoly elementary_symmetric(int r, int arity) {
    if (r < 0) throw std::invalid_argument("elementary_symmetric: r must be >= 0");
    if (arity < 1) throw std::invalid_argument("elementary_symmetric: arity must be >= 1");
    SymPoly p(arity);
    if (r > arity) return p;  // zero
    if (r == 0) return SymPoly::constant(arity, Rat(1));
    // iterate over r-subsets of {0..arity-1}
    std::vector<int> idx(r);
    for (int i = 0; i < r; ++i) idx[i] = i;
    while (true) {
        Exponents e(arity, 0);
        for (int i : idx) e[i] = 1;
        p.add_term(e, Rat(1));
        int i = r - 1;
        while (i >= 0 && idx[i] == arity - r + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
    return p;
}

SymPoly power_sum(int r, int arity) {
    if (r < 1) throw std::invalid_argument("power_sum: r must be >= 1");
    if (arity < 1) throw std::invalid_argument("power_sum: arity must be >= 1");
    SymPoly p(arity);
    for (int i = 0; i < arity; ++i) {
        Exponents e(arity, 0);
        e[i] = r;
        p.add_term(e, Rat(1));
    }
    return p;
}

namespace {

// Determinant of a matrix of polynomials by first-row expansion over column
// masks; zero entries are skipped, which keeps banded cases cheap.
SymPoly poly_det(const std::vector<std::vector<SymPoly>>& m, int arity) {
    int n = static_cast<int>(m.size());
    std::map<unsigned, SymPoly> memo;
    std::function<SymPoly(int, unsigned)> rec = [&](int row, unsigned cols) -> SymPoly {
        if (row == n) return SymPoly::constant(arity, Rat(1));
        auto it = memo.find(cols);
        if (it != memo.end()) return it->second;
        SymPoly acc(arity);
        int sign = 1;
        for (int c = 0; c < n; ++c) {
            if (!(cols & (1u << c))) continue;
            if (!m[row][c].is_zero()) {
                SymPoly sub = rec(row + 1, cols & ~(1u << c));
                acc += (sign > 0) ? m[row][c] * sub : -(m[row][c] * sub);
            }
            sign = -sign;
        }
        memo.emplace(cols, acc);
        return acc;
    };
    return rec(0, (1u << n) - 1);
}

}  // namespace

SymPoly schur(const Partition& pi, int arity) {
    if (arity < pi.length())
        throw std::invalid_argument("schur: arity smaller than partition length");
    if (pi.length() == 0) return SymPoly::constant(arity, Rat(1));
    Partition conj = pi.conjugate();
    int n = conj.length();  // = pi_1
    std::vector<std::vector<SymPoly>> m(n, std::vector<SymPoly>(n, SymPoly(arity)));
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            int r = conj.part(k) - (k + 1) + (l + 1);
            if (r >= 0) m[k][l] = elementary_symmetric(r, arity);
        }
    return poly_det(m, arity);
}

Rat schur_at_ones(const Partition& pi) {
    int h = pi.length();
    Rat v(1);
    for (int k = 0; k < h; ++k)
        for (int l = k + 1; l < h; ++l)
            v *= frac(pi.part(k) - pi.part(l) + l - k, l - k);
    return v;
}

Int newton_z(const std::vector<int>& tuple) {
    Int z(1);
    for (std::size_t a = 0; a < tuple.size(); ++a) {
        for (int k = 1; k <= tuple[a]; ++k) z *= k;
        for (int k = 0; k < tuple[a]; ++k) z *= static_cast<long>(a + 1);
    }
    return z;
}

namespace {

// Murnaghan-Nakayama on beta-numbers: strip one border ribbon of length r by
// moving a beta number down by r; the sign counts beta numbers jumped over.
Int mn_recurse(std::vector<int>& beta, const std::vector<int>& parts, std::size_t idx,
               std::map<std::pair<std::vector<int>, std::size_t>, Int>& memo) {
    if (idx == parts.size()) return Int(1);  // all boxes stripped, remainder empty
    auto key = std::make_pair(beta, idx);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    Int total(0);
    int r = parts[idx];
    for (std::size_t i = 0; i < beta.size(); ++i) {
        int b = beta[i];
        int t = b - r;
        if (t < 0) continue;
        if (std::binary_search(beta.begin(), beta.end(), t)) continue;
        int crossed = 0;
        for (int c : beta)
            if (c > t && c < b) ++crossed;
        std::vector<int> next(beta);
        next.erase(next.begin() + i);
        next.insert(std::lower_bound(next.begin(), next.end(), t), t);
        Int sub = mn_recurse(next, parts, idx + 1, memo);
        if (crossed % 2)
            total -= sub;
        else
            total += sub;
    }
    memo.emplace(std::move(key), total);
    return total;
}

}  // namespace

Int character_value(const Partition& lambda, const std::vector<int>& tuple) {
    int d = lambda.size();
    long boxes = 0;
    for (std::size_t a = 0; a < tuple.size(); ++a) boxes += static_cast<long>(a + 1) * tuple[a];
    if (boxes != d) throw std::invalid_argument("character_value: cycle type does not match |lambda|");
    // cycle-type parts in decreasing order
    std::vector<int> parts;
    for (int a = static_cast<int>(tuple.size()); a >= 1; --a)
        for (int k = 0; k < tuple[a - 1]; ++k) parts.push_back(a);
    int L = lambda.length();
    std::vector<int> beta(L);
    for (int j = 0; j < L; ++j) beta[j] = lambda.part(j) + (L - 1 - j);
    std::sort(beta.begin(), beta.end());
    std::map<std::pair<std::vector<int>, std::size_t>, Int> memo;
    return mn_recurse(beta, parts, 0, memo);
}

namespace {

void enumerate_tuples(int d, int a, long remaining, std::vector<int>& cur,
                      const std::function<void(const std::vector<int>&)>& emit) {
    if (a == d) {
        cur[a - 1] = static_cast<int>(remaining / a);
        if (static_cast<long>(cur[a - 1]) * a == remaining) emit(cur);
        cur[a - 1] = 0;
        return;
    }
    for (long k = 0; k * a <= remaining; ++k) {
        cur[a - 1] = static_cast<int>(k);
        enumerate_tuples(d, a + 1, remaining - k * a, cur, emit);
    }
    cur[a - 1] = 0;
}

}  // namespace

NewtonExpansion newton_expansion(const Partition& pi) {
    NewtonExpansion ne;
    int d = pi.size();
    ne.degree = d;
    if (d == 0) return ne;
    std::vector<int> cur(d, 0);
    enumerate_tuples(d, 1, d, cur, [&](const std::vector<int>& tuple) {
        Int chi = character_value(pi, tuple);
        if (chi == 0) return;
        Rat c(chi);
        c /= Rat(newton_z(tuple));
        ne.coefficients.emplace(tuple, c);
    });
    return ne;
}

SymPoly NewtonExpansion::substitute_power_sums(int arity) const {
    SymPoly acc(arity);
    std::map<int, std::vector<SymPoly>> powers;  // p_a^k cache
    auto power = [&](int a, int k) -> const SymPoly& {
        auto& cache = powers[a];
        if (cache.empty()) cache.push_back(SymPoly::constant(arity, Rat(1)));
        while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * power_sum(a, arity));
        return cache[k];
    };
    for (const auto& [tuple, c] : coefficients) {
        SymPoly term = SymPoly::constant(arity, c);
        for (std::size_t a = 0; a < tuple.size(); ++a)
            if (tuple[a] > 0) term = term * power(static_cast<int>(a + 1), tuple[a]);
        acc += term;
    }
    return acc;
}

SymPoly s_g(int g) {
    if (g < 1) throw std::invalid_argument("s_g: g must be >= 1");
    NewtonExpansion ne = newton_expansion(Partition::staircase(g));
    SymPoly out(g);  // variable k (0-based) stands for p_{2k+1}
    for (const auto& [tuple, c] : ne.coefficients) {
        Exponents e(g, 0);
        for (std::size_t a0 = 0; a0 < tuple.size(); ++a0) {
            if (tuple[a0] == 0) continue;
            int a = static_cast<int>(a0 + 1);
            if (a % 2 == 0 || a > 2 * g - 1)
                throw std::logic_error("s_g: staircase expansion contains an even power sum");
            e[(a - 1) / 2] = tuple[a0];
        }
        out.add_term(e, c);
    }
    return out;
}

SymPoly sigma_g(int g) {
    SymPoly s = s_g(g);
    // variable k of s_g (p_{2k+1}) becomes (2k+1) * z_{g-k}
    std::vector<SymPoly> images;
    for (int k = 0; k < g; ++k)
        images.push_back(SymPoly::variable(g, g - 1 - k) * Rat(2 * k + 1));
    return s.substitute(images);
}

SymPoly hankel_leading(int g) {
    if (g < 1) throw std::invalid_argument("hankel_leading: g must be >= 1");
    int n = (g % 2 == 1) ? (g + 1) / 2 : g / 2;
    std::vector<std::vector<SymPoly>> m(n, std::vector<SymPoly>(n, SymPoly(g)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = SymPoly::variable(g, i + j);
    return poly_det(m, g);
}

int hankel_match_sign(int g) {
    SymPoly lead = sigma_g(g).least_degree_part();
    SymPoly h = hankel_leading(g);
    if (lead == h) return 1;
    if (lead == -h) return -1;
    throw std::runtime_error("hankel_match_sign: least-degree part of sigma_g is not +-H");
}

Rat sigma_leading_scalar(int g) {
    std::vector<Rat> point(g);
    for (int k = 1; k <= g; ++k) point[k - 1] = frac(g, 2 * (g - k) + 1);
    return sigma_g(g).evaluate(point);
}

Int binomial_wronskian_det(int g) {
    if (g < 2) throw std::invalid_argument("binomial_wronskian_det: g must be >= 2");
    int n = g - 1;
    auto binom = [](int a, int b) {
        Int r(0);
        if (b < 0 || b > a) return r;
        r = 1;
        for (int i = 0; i < b; ++i) {
            r *= a - i;
            r /= i + 1;
        }
        return r;
    };
    std::vector<std::vector<Int>> m(n, std::vector<Int>(n));
    for (int k = 1; k <= n; ++k)
        for (int l = 1; l <= n; ++l) m[k - 1][l - 1] = binom(2 * g - 2 * k, g - l);
    // fraction-free Gaussian elimination (Bareiss)
    Int det(1);
    int sign = 1;
    Int prev(1);
    for (int c = 0; c < n; ++c) {
        int pivot = -1;
        for (int r = c; r < n; ++r)
            if (m[r][c] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) return Int(0);
        if (pivot != c) {
            std::swap(m[pivot], m[c]);
            sign = -sign;
        }
        for (int r = c + 1; r < n; ++r)
            for (int cc = c + 1; cc < n; ++cc)
                m[r][cc] = (m[r][cc] * m[c][c] - m[r][c] * m[c][cc]) / prev;
        prev = m[c][c];
    }
    det = m[n - 1][n - 1];
    return sign > 0 ? det : -det;
}

}  // namespace hypdelta
