#pragma once

#include <map>
#include <vector>

#include "hypdelta/partition.hpp"
#include "hypdelta/sympoly.hpp"

namespace hypdelta {

/// e_r in `arity` variables; e_0 = 1 and e_r = 0 for r > arity.
SymPoly elementary_symmetric(int r, int arity);

/// p_r = x_1^r + ... + x_arity^r (r >= 1).
SymPoly power_sum(int r, int arity);

/// Schur polynomial S_pi in `arity` variables via the dual Jacobi-Trudi
/// determinant det(e_{pi'_k - k + l}). Requires arity >= length(pi).
SymPoly schur(const Partition& pi, int arity);

/// S_pi(1,...,1) with length(pi) ones, by the hook-content product formula.
Rat schur_at_ones(const Partition& pi);

/// Expansion of S_pi on the generalised Newton basis p^(i) = prod p_a^{i_a}.
/// Keys are d-tuples i with sum a*i_a = d; the coefficient of p^(i) is
/// chi_pi(i) / z(i) with chi the symmetric-group character.
struct NewtonExpansion {
    int degree = 0;
    std::map<std::vector<int>, Rat> coefficients;

    /// Sum of c_i * p^(i)(x_1..x_arity); reproduces schur(pi, arity).
    SymPoly substitute_power_sums(int arity) const;
};

NewtonExpansion newton_expansion(const Partition& pi);

/// z(i) = prod_a i_a! * a^{i_a}.
Int newton_z(const std::vector<int>& tuple);

/// Symmetric-group character chi^lambda on the class of cycle type `tuple`
/// (tuple[a-1] = number of a-cycles), by the Murnaghan-Nakayama rule.
Int character_value(const Partition& lambda, const std::vector<int>& tuple);

/// The staircase Schur polynomial S_g written in the odd power sums:
/// variable k (0-based) stands for p_{2k+1}. Even-index power sums are
/// checked to drop out exactly.
SymPoly s_g(int g);

/// sigma_g(z_1..z_g) = s_g(z_g, 3 z_{g-1}, ..., (2g-1) z_1).
SymPoly sigma_g(int g);

/// Hankel determinant H(z) whose entries are z_1..z_g (g odd) or z_1..z_{g-1}
/// (g even); equals the least-degree part of sigma_g up to sign.
SymPoly hankel_leading(int g);

/// +1 or -1 when least_degree_part(sigma_g) == sign * H; throws otherwise.
int hankel_match_sign(int g);

/// sigma_g(g/(2g-1), g/(2g-3), ..., g/3, g) = s_g(g,...,g) = 2^{g(g-1)/2}.
Rat sigma_leading_scalar(int g);

/// det(binom(2g-2k, g-l))_{1<=k,l<=g-1}; absolute value 2^{g(g-1)/2}.
Int binomial_wronskian_det(int g);

}  // namespace hypdelta
