#include "sglat/params.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

#include "sglat/mpreal.hpp"

namespace sglat {

TowerParams make_tower(int k) {
    if (k < 3 || k > 12)
        throw std::domain_error("tower level k must satisfy 3 <= k <= 12");
    TowerParams p;
    p.k = k;
    p.m = 1 << k;
    p.n = 1 << (k - 1);
    p.r = p.n / 2 - 1;
    return p;
}

const PinnedConstants& pinned() {
    static const PinnedConstants c{
        std::sqrt(1.36),          // alpha_d_mlwe
        1.17,                     // alpha_table
        3.10,                     // c_worst
        M_PI / (2 * std::sqrt(6.0)),  // sigma_t
        5.0,                      // kappa_tail
        1.6,                      // kappa_emp_hawk
    };
    return c;
}

double trigamma(std::int64_t j) {
    if (j < 1) throw std::domain_error("trigamma: j must be >= 1");
    static std::mutex mu;
    static std::unordered_map<std::int64_t, double> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(j);
    if (it != cache.end()) return it->second;

    const mpfr_prec_t prec = 128;
    MpReal pi = MpReal::pi(prec);
    MpReal acc = pi * pi / MpReal(6.0, prec);  // psi'(1)
    for (std::int64_t i = 1; i < j; ++i)
        acc -= MpReal(1.0, prec) / (MpReal(static_cast<double>(i), prec) * MpReal(static_cast<double>(i), prec));
    const double out = acc.to_double();
    cache.emplace(j, out);
    return out;
}

double sigma_d(int d) {
    if (d < 1) throw std::domain_error("sigma_d: d must be >= 1");
    double sum = 0.0;
    for (int j = 1; j <= d; ++j) sum += trigamma(j);
    return std::sqrt(sum / 4.0);
}

double gamma_threshold_sigma(double sigma, int n, double alpha) {
    if (n < 8) throw std::domain_error("gamma_threshold: n must be >= 8");
    return alpha * std::exp(sigma * std::sqrt(2.0 * std::log(static_cast<double>(n))));
}

double gamma_threshold(int d, int n, double alpha) {
    return gamma_threshold_sigma(sigma_d(d), n, alpha);
}

}  // namespace sglat
