#include "hypdelta/sympoly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hypdelta {

SymPoly SymPoly::constant(int arity, const Rat& c) {
    SymPoly p(arity);
    p.add_term(Exponents(arity, 0), c);
    return p;
}

SymPoly SymPoly::variable(int arity, int index) {
    if (index < 0 || index >= arity) throw std::invalid_argument("variable index out of range");
    SymPoly p(arity);
    Exponents e(arity, 0);
    e[index] = 1;
    p.add_term(e, Rat(1));
    return p;
}

SymPoly SymPoly::monomial(int arity, const Exponents& e, const Rat& c) {
    if (static_cast<int>(e.size()) != arity) throw std::invalid_argument("exponent length != arity");
    SymPoly p(arity);
    p.add_term(e, c);
    return p;
}

void SymPoly::add_term(const Exponents& e, const Rat& c) {
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

int SymPoly::total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_)
        d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
    return d;
}

int SymPoly::min_total_degree() const {
    if (terms_.empty()) return -1;
    int d = std::numeric_limits<int>::max();
    for (const auto& [e, c] : terms_)
        d = std::min(d, std::accumulate(e.begin(), e.end(), 0));
    return d;
}

SymPoly& SymPoly::operator+=(const SymPoly& o) {
    if (arity_ != o.arity_) throw std::invalid_argument("arity mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

SymPoly& SymPoly::operator-=(const SymPoly& o) {
    if (arity_ != o.arity_) throw std::invalid_argument("arity mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

SymPoly SymPoly::operator+(const SymPoly& o) const {
    SymPoly r(*this);
    r += o;
    return r;
}

SymPoly SymPoly::operator-(const SymPoly& o) const {
    SymPoly r(*this);
    r -= o;
    return r;
}

SymPoly SymPoly::operator-() const {
    SymPoly r(arity_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

SymPoly SymPoly::operator*(const Rat& c) const {
    SymPoly r(arity_);
    if (c == 0) return r;
    for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
    return r;
}

SymPoly SymPoly::operator*(const SymPoly& o) const {
    if (arity_ != o.arity_) throw std::invalid_argument("arity mismatch");
    SymPoly r(arity_);
    Exponents e(arity_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            for (int i = 0; i < arity_; ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

SymPoly SymPoly::pow(int n) const {
    if (n < 0) throw std::invalid_argument("negative power");
    SymPoly r = constant(arity_, Rat(1));
    SymPoly base(*this);
    while (n > 0) {
        if (n & 1) r = r * base;
        base = (n >>= 1) ? base * base : base;
    }
    return r;
}

SymPoly SymPoly::substitute(const std::vector<SymPoly>& images) const {
    if (static_cast<int>(images.size()) != arity_) throw std::invalid_argument("image count != arity");
    int target = images.empty() ? 0 : images[0].arity();
    for (const auto& im : images)
        if (im.arity() != target) throw std::invalid_argument("images must share arity");

    // cache powers of each image as they are needed
    std::vector<std::vector<SymPoly>> powers(arity_);
    auto power = [&](int var, int n) -> const SymPoly& {
        auto& cache = powers[var];
        if (cache.empty()) cache.push_back(SymPoly::constant(target, Rat(1)));
        while (static_cast<int>(cache.size()) <= n) cache.push_back(cache.back() * images[var]);
        return cache[n];
    };

    SymPoly r(target);
    for (const auto& [e, c] : terms_) {
        SymPoly term = SymPoly::constant(target, c);
        for (int i = 0; i < arity_; ++i)
            if (e[i] > 0) term = term * power(i, e[i]);
        r += term;
    }
    return r;
}

Rat SymPoly::evaluate(const std::vector<Rat>& point) const {
    if (static_cast<int>(point.size()) != arity_) throw std::invalid_argument("point size != arity");
    Rat total(0);
    for (const auto& [e, c] : terms_) {
        Rat t = c;
        for (int i = 0; i < arity_; ++i)
            for (int k = 0; k < e[i]; ++k) t *= point[i];
        total += t;
    }
    return total;
}

SymPoly SymPoly::homogeneous_part(int degree) const {
    SymPoly r(arity_);
    for (const auto& [e, c] : terms_)
        if (std::accumulate(e.begin(), e.end(), 0) == degree) r.terms_.emplace(e, c);
    return r;
}

SymPoly SymPoly::least_degree_part() const {
    return homogeneous_part(min_total_degree());
}

bool SymPoly::weighted_homogeneous(const std::vector<int>& weights, long& weight) const {
    if (static_cast<int>(weights.size()) != arity_) throw std::invalid_argument("weight size != arity");
    bool first = true;
    for (const auto& [e, c] : terms_) {
        long w = 0;
        for (int i = 0; i < arity_; ++i) w += static_cast<long>(e[i]) * weights[i];
        if (first) {
            weight = w;
            first = false;
        } else if (w != weight) {
            return false;
        }
    }
    return true;
}

SymPoly SymPoly::swap_variables(int i, int j) const {
    SymPoly r(arity_);
    for (const auto& [e, c] : terms_) {
        Exponents se(e);
        std::swap(se[i], se[j]);
        r.add_term(se, c);
    }
    return r;
}

std::string SymPoly::to_string(const std::string& var) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.get_str();
        for (int i = 0; i < arity_; ++i) {
            if (e[i] == 0) continue;
            os << "*" << var << (i + 1);
            if (e[i] > 1) os << "^" << e[i];
        }
    }
    return os.str();
}

}  // namespace hypdelta
