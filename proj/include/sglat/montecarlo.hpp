#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sglat/modreduce.hpp"
#include "sglat/params.hpp"

namespace sglat {

// Trial models:
//   Ring        - sample B in R^{d x d}, embed, per-j log|det sigma_j(B)|
//   Gaussian    - per-j d x d complex standard Gaussian determinant
//   GaussianIid - per-j single N(0, sigma_d^2) coordinate (max-statistics
//                 model; reproduces the Hawk empirical tail columns)
enum class McModel { Ring, Gaussian, GaussianIid };

McModel mc_model_from_string(const std::string& s);
std::string mc_model_name(McModel m);

struct TrialConfig {
    McModel model = McModel::Gaussian;
    int d = 4;
    int n = 256;                 // degree; for the ring model must be 2^(k-1)
    Dist dist = Dist::uniform(3329);
    std::int64_t num_trials = 10000;
    std::uint64_t seed = 1;
    bool apply_alpha = false;    // multiply gamma by alpha
    double alpha = 1.17;
    double threshold = 1664.5;   // failure count threshold on gamma
    int threads = 0;             // 0 = hardware concurrency
    bool full_cvp = false;       // run Babai per trial (ring/gaussian, 2-power n)
    mpfr_prec_t precision_bits = 256;
    bool keep_samples = true;
};

struct GammaStats {
    std::vector<double> per_trial_gamma;  // sorted ascending (when kept)
    std::int64_t num_trials = 0;
    double median = 0.0;
    double p99 = 0.0;
    double max_gamma = 0.0;
    double mean_sigma_sq = 0.0;          // empirical sigma_d^2
    double median_rho_inf = 0.0;
    std::int64_t failures = 0;
    std::int64_t resamples = 0;
    std::int64_t cvp_nonzero = 0;        // trials with a nonzero Babai coefficient
    double runtime_sec = 0.0;
    double threshold = 0.0;
};

GammaStats run_trials(const TrialConfig& cfg);

// Pooled order statistics over two disjoint runs (samples must be kept).
GammaStats merge_stats(const GammaStats& a, const GammaStats& b);

struct EvtReport {
    double predicted_median = 0.0;  // sigma_d * sqrt(2 ln(n/2))
    double empirical_median = 0.0;
    double rel_deviation = 0.0;
    bool in_regime = true;          // false for degenerate small n
};

EvtReport extreme_value_check(const GammaStats& stats, int d, int n);

struct TailReport {
    double failure_prob = 0.0;
    double margin = 0.0;  // threshold / p99
    std::int64_t failures = 0;
};

TailReport tail_report(const GammaStats& stats, double threshold);

struct SingularTailRow {
    double eps;
    double empirical;
    double predicted;  // (d * eps)^2
};
struct SingularTailReport {
    int d = 0;
    std::int64_t num_trials = 0;
    std::vector<SingularTailRow> rows;
};

// Empirical CDF of s_min of d x d complex standard Gaussian matrices at
// small epsilon, against the (d*eps)^2 law.
SingularTailReport singular_tail_check(int d, std::int64_t num_trials, std::uint64_t seed);

// Nearest-rank percentile of a sorted sample.
double nearest_rank(const std::vector<double>& sorted, double p);

}  // namespace sglat
