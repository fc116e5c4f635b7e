#pragma once

#include <cstdint>
#include <vector>

namespace sglat {

// Tower level parameters for the 2-power cyclotomic ring Z[zeta_m],
// m = 2^k, degree n = m/2, log-unit rank r = n/2 - 1.
struct TowerParams {
    int k = 0;
    int m = 0;
    int n = 0;
    int r = 0;

    // Embedding representatives: odd j in [1, n). One per conjugate pair.
    std::vector<int> embedding_reps() const {
        std::vector<int> J;
        J.reserve(n / 2);
        for (int j = 1; j < n; j += 2) J.push_back(j);
        return J;
    }
    int half() const { return n / 2; }

    friend bool operator==(const TowerParams& a, const TowerParams& b) { return a.k == b.k; }
};

// Valid levels are 3 <= k <= 12 (trivial plus-class-number range).
TowerParams make_tower(int k);

// Constants pinned from the analysis; see README for provenance of each.
struct PinnedConstants {
    double alpha_d_mlwe;   // sqrt(1.36), module-reduction factor for MLWE inputs
    double alpha_table;    // 1.17, the rounded value used in the published tables
    double c_worst;        // 3.10, worst-case analytic balance bound
    double sigma_t;        // pi/(2*sqrt(6)), per-component sd of structured targets
    double kappa_tail;     // gamma_99% = kappa_tail * gamma_th in formula mode
    double kappa_emp_hawk; // empirical tail ratio observed for the Hawk rows
};
const PinnedConstants& pinned();

// Trigamma psi'(j) via the recurrence psi'(j+1) = psi'(j) - 1/j^2 seeded
// with psi'(1) = pi^2/6, evaluated in extended precision.
double trigamma(std::int64_t j);

// sigma_d = sqrt( (1/4) * sum_{j=1..d} psi'(j) )
double sigma_d(int d);

// gamma_th = alpha * exp(sigma_d(d) * sqrt(2 ln n))
double gamma_threshold(int d, int n, double alpha);
double gamma_threshold_sigma(double sigma, int n, double alpha);

}  // namespace sglat
