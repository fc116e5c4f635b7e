#pragma once

#include <cstdint>
#include <vector>

#include "sglat/logembed.hpp"
#include "sglat/units.hpp"

namespace sglat {

struct GsoData {
    std::vector<LogVector> bstar;
    std::vector<MpReal> norm2;
    std::vector<std::vector<MpReal>> mu;  // lower triangular
};

// Classical Gram-Schmidt over extended-precision reals. Throws
// PrecisionError on rank deficiency (GSO norm underflow).
GsoData gram_schmidt(const std::vector<LogVector>& basis);

struct CVPResult {
    LogVector v;                      // lattice point found
    std::vector<std::int64_t> coeffs; // nearest-plane roundings, basis index order
    LogVector rho;                    // residual t - v
    double rho_inf = 0.0;
};

// Babai nearest-plane: back-substitution from i = r down to 1, rounding
// half-to-even. The target should already be projected onto H0.
CVPResult babai_nearest_plane(const UnitLatticeBasis& basis, const LogVector& t);

// Map nearest-plane coefficients back to unit exponents d_i = coeffs_i
// under the basis ordering.
UnitExponents decode_exponents(const CVPResult& res, const UnitLatticeBasis& basis);

// Exact-rational LLL on integer row vectors. 1/4 < delta < 1.
// Returns a reduced basis spanning the same lattice.
std::vector<std::vector<mpz_class>> lll_reduce(std::vector<std::vector<mpz_class>> rows,
                                               double delta = 0.99);

}  // namespace sglat
