#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

namespace hypdelta {

using Rat = mpq_class;
using Int = mpz_class;
using Exponents = std::vector<int>;

/// Canonicalized rational n/d (mpq_class does not reduce on construction).
inline Rat frac(long n, long d) {
    Rat r(n, d);
    r.canonicalize();
    return r;
}

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are keyed by exponent vectors of fixed length (the arity); the map
/// never stores a zero coefficient, so equality of polynomials is literal
/// map equality. All arithmetic is exact.
class SymPoly {
public:
    explicit SymPoly(int arity = 0) : arity_(arity) {}

    static SymPoly constant(int arity, const Rat& c);
    static SymPoly variable(int arity, int index);  // x_index, 0-based
    static SymPoly monomial(int arity, const Exponents& e, const Rat& c);

    int arity() const { return arity_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Exponents, Rat>& terms() const { return terms_; }

    int total_degree() const;      // -1 for the zero polynomial
    int min_total_degree() const;  // -1 for the zero polynomial

    SymPoly& operator+=(const SymPoly& o);
    SymPoly& operator-=(const SymPoly& o);
    SymPoly operator+(const SymPoly& o) const;
    SymPoly operator-(const SymPoly& o) const;
    SymPoly operator*(const SymPoly& o) const;
    SymPoly operator*(const Rat& c) const;
    SymPoly operator-() const;
    bool operator==(const SymPoly& o) const { return arity_ == o.arity_ && terms_ == o.terms_; }
    bool operator!=(const SymPoly& o) const { return !(*this == o); }

    SymPoly pow(int n) const;

    /// Substitute images[i] for variable i. Images must share a common arity.
    SymPoly substitute(const std::vector<SymPoly>& images) const;

    Rat evaluate(const std::vector<Rat>& point) const;

    SymPoly homogeneous_part(int degree) const;
    SymPoly least_degree_part() const;

    /// Weighted degree of each term under the given per-variable weights;
    /// returns true and sets `weight` if all terms share one weighted degree.
    bool weighted_homogeneous(const std::vector<int>& weights, long& weight) const;

    SymPoly swap_variables(int i, int j) const;

    void add_term(const Exponents& e, const Rat& c);

    std::string to_string(const std::string& var = "x") const;

private:
    int arity_;
    std::map<Exponents, Rat> terms_;
};

inline SymPoly operator*(const Rat& c, const SymPoly& p) { return p * c; }

}  // namespace hypdelta
