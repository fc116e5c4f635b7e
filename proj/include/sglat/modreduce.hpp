#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sglat/params.hpp"
#include "sglat/ring.hpp"
#include "sglat/rng.hpp"

namespace sglat {

struct SingularModuleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Coefficient distribution for module sampling.
struct Dist {
    enum class Kind { UniformModQ, Cbd, Gaussian };
    Kind kind = Kind::UniformModQ;
    int q = 3329;
    int eta = 2;
    double sigma = 1.0;

    static Dist uniform(int q) { return {Kind::UniformModQ, q, 0, 0.0}; }
    static Dist cbd(int eta) { return {Kind::Cbd, 0, eta, 0.0}; }
    static Dist gaussian(double sigma) { return {Kind::Gaussian, 0, 0, sigma}; }

    std::int64_t sample(Rng& rng) const;
    // Second moment of a single coefficient (exact for the discrete laws).
    double variance() const;
    std::string name() const;
};

struct ModuleMatrix {
    TowerParams level;
    int d = 0;
    std::vector<RingElement> entries;  // row-major d x d
    Dist dist;
    std::uint64_t seed = 0;
    int resamples = 0;

    RingElement& at(int i, int j) { return entries[static_cast<std::size_t>(i) * d + j]; }
    const RingElement& at(int i, int j) const { return entries[static_cast<std::size_t>(i) * d + j]; }
};

// Deterministic i.i.d.-coefficient module basis sample. d is capped at 8.
ModuleMatrix sample_module(int d, const TowerParams& p, const Dist& dist, std::uint64_t seed);

// Exact determinant over R (Laplace expansion over column subsets).
// Throws SingularModuleError when det = 0.
RingElement ring_determinant(const ModuleMatrix& B);

struct GSODecomposition {
    RingElement det_ideal_generator;
    // |R_ii(sigma_j)| for layer i at representative j: diag_mag[j][i].
    std::vector<std::vector<double>> diag_mag;
    // Diagonal layer elements interpolated back to K; present only when the
    // inverse embedding is integral (e.g. triangular inputs).
    std::optional<std::vector<RingElement>> diag_generators;
    double balance_C = 0.0;
    double alpha() const { return std::sqrt(balance_C); }
};

// Per-embedding QR of sigma_j(B). The determinant ideal is exact; the
// diagonal data and balance constant are numerical diagnostics.
// balance_C = max over layers i of
//   mean_j |R_ii(j)|^2 / ((d-i) * n * sigma_c^2_est),
// with sigma_c^2 estimated from 10^4 scalar samples of the same distribution.
GSODecomposition gso_over_ring(const ModuleMatrix& B, mpfr_prec_t precision_bits = 64);

ModuleMatrix reorder_columns(const ModuleMatrix& B, const std::vector<int>& perm);

}  // namespace sglat
