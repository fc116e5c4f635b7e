#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sglat/logembed.hpp"
#include "sglat/params.hpp"
#include "sglat/ring.hpp"

namespace sglat {

// xi_a = sin(a pi / m) / sin(pi / m) as an exact ring element:
// zeta^((1-a)/2) * (1 + zeta + ... + zeta^(a-1)). A unit for every odd a.
RingElement cyclotomic_unit(int a, const TowerParams& p);

// sqrt(2) = zeta_8 + zeta_8^{-1} inside the level; generates the ramified
// prime above 2. Not a unit: |Nm| = 4 at level 3.
RingElement ramified_sqrt2(const TowerParams& p);

// Indices of the units that first appear at tower level L:
// odd a with 2^(L-2) < a < 2^(L-1). For L = 3 this is just {3}.
std::vector<int> new_units_at_level(int L);

// Tower level at which index a first appears.
int unit_index_level(int a);

// Exponent vector over the cyclotomic units xi_a, odd a in (1, n).
struct UnitExponents {
    TowerParams level;
    std::map<int, std::int64_t> exps;

    bool empty() const {
        for (const auto& [a, e] : exps)
            if (e != 0) return false;
        return true;
    }
};

// Product-of-factors representation: a short base element times per-level
// groups of unit exponents and a torsion power of zeta. Log-embeddings are
// evaluated factor-by-factor so the product is never expanded unless the
// remaining exponents are small.
struct TowerFactoredElement {
    struct LevelFactor {
        int level;                              // tower level of these indices
        std::map<int, std::int64_t> exps;       // unit index a -> exponent
    };

    TowerParams level;
    RingElement base;                           // non-unit part (power basis)
    std::vector<LevelFactor> factors;           // ascending level
    std::int64_t torsion = 0;                   // power of zeta_m, mod m (covers signs: -1 = zeta^n)
    std::int64_t sqrt2_exp = 0;                 // power of sqrt(2), may be negative

    std::size_t storage_bits() const;
    UnitExponents unit_exponents() const;
};

TowerFactoredElement tfe_identity(const TowerParams& p);
TowerFactoredElement tfe_from_ring(const RingElement& base);
// Groups exponents by the level at which each index first appears.
TowerFactoredElement unit_from_exponents(const UnitExponents& e);
TowerFactoredElement tfe_mul_unit(const TowerFactoredElement& t, const UnitExponents& e);

// log|sigma_j(t)| without expanding the product; j odd in [1, n).
MpReal tower_eval_log(const TowerFactoredElement& t, int j, mpfr_prec_t precision_bits);
LogVector tower_log_vector(const TowerFactoredElement& t, mpfr_prec_t precision_bits);

// Expand into the power basis. Throws PrecisionError when the predicted
// coefficient growth exceeds max_bits.
RingElement tfe_expand(const TowerFactoredElement& t, std::size_t max_bits = 1u << 22);

// Closed-form log|sigma_j(xi_a)| = ln|sin(a j pi/m)| - ln|sin(j pi/m)|.
MpReal unit_log_embedding(int a, int j, const TowerParams& p, mpfr_prec_t prec);
LogVector unit_log_vector(int a, const TowerParams& p, mpfr_prec_t prec);

// CVP search structure: basis b_i = Pi_H0(L(xi_{order[i]})) with cached
// Gram-Schmidt data.
struct UnitLatticeBasis {
    TowerParams level;
    mpfr_prec_t precision_bits = 0;
    std::vector<int> order;                 // unit indices, basis row i <-> xi_{order[i]}
    std::vector<LogVector> b;
    std::vector<LogVector> bstar;
    std::vector<MpReal> bstar_norm2;        // doubled convention
    std::vector<std::vector<MpReal>> mu;    // lower triangular projection coefficients

    int rank() const { return static_cast<int>(b.size()); }
    double min_gso_norm() const;
};

// Basis in ascending-a order (or a caller-supplied permutation of it).
UnitLatticeBasis log_unit_basis(const TowerParams& p, mpfr_prec_t precision_bits,
                                const std::vector<int>* order = nullptr);

// Numeric rank of the log-embedding matrix of all cyclotomic units at
// level L; equals 2^(L-2) - 1 when the units are independent.
int unit_rank_check(int L, mpfr_prec_t precision_bits = 192);

// Portable JSON dump of (k, precision, order, basis, GSO data).
std::string basis_to_json(const UnitLatticeBasis& basis);
UnitLatticeBasis basis_from_json(const std::string& json_text);

}  // namespace sglat
