#include "sglat/montecarlo.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <thread>

#include "sglat/cfft.hpp"
#include "sglat/lattice.hpp"
#include "sglat/rng.hpp"
#include "sglat/units.hpp"

namespace sglat {

McModel mc_model_from_string(const std::string& s) {
    if (s == "ring") return McModel::Ring;
    if (s == "gaussian") return McModel::Gaussian;
    if (s == "iid") return McModel::GaussianIid;
    throw std::invalid_argument("unknown model: " + s);
}

std::string mc_model_name(McModel m) {
    switch (m) {
        case McModel::Ring: return "ring";
        case McModel::Gaussian: return "gaussian";
        case McModel::GaussianIid: return "iid";
    }
    return "?";
}

double nearest_rank(const std::vector<double>& sorted, double p) {
    if (sorted.empty()) return 0.0;
    const auto n = static_cast<std::int64_t>(sorted.size());
    std::int64_t rank = static_cast<std::int64_t>(std::ceil(p * static_cast<double>(n)));
    rank = std::max<std::int64_t>(1, std::min(rank, n));
    return sorted[rank - 1];
}

namespace {

// log|det M| of a complex d x d matrix by partial-pivot LU.
double log_abs_det(std::vector<std::vector<std::complex<double>>>& M) {
    const int d = static_cast<int>(M.size());
    double acc = 0.0;
    for (int i = 0; i < d; ++i) {
        int piv = i;
        for (int r = i + 1; r < d; ++r)
            if (std::norm(M[r][i]) > std::norm(M[piv][i])) piv = r;
        if (piv != i) std::swap(M[i], M[piv]);
        const std::complex<double> pv = M[i][i];
        if (pv == std::complex<double>(0.0, 0.0)) return -std::numeric_limits<double>::infinity();
        acc += 0.5 * std::log(std::norm(pv));
        for (int r = i + 1; r < d; ++r) {
            const std::complex<double> f = M[r][i] / pv;
            for (int c = i; c < d; ++c) M[r][c] -= f * M[i][c];
        }
    }
    return acc;
}

struct TrialOutput {
    double gamma;
    double rho_inf;
    double sigma_sq;
    int resamples;
    bool cvp_nonzero;
};

struct TrialContext {
    const TrialConfig* cfg;
    const UnitLatticeBasis* basis;  // only in full_cvp mode
    double sigma;                   // for GaussianIid
};

// One trial: the per-coordinate log vector, projected, then rho and gamma.
TrialOutput run_one(const TrialContext& ctx, std::uint64_t trial_seed) {
    const TrialConfig& cfg = *ctx.cfg;
    const int half = cfg.n / 2;
    std::vector<double> coords(half);
    int resamples = 0;

    for (;;) {
        Rng rng(trial_seed + static_cast<std::uint64_t>(resamples));
        bool ok = true;
        switch (cfg.model) {
            case McModel::Ring: {
                const int d = cfg.d;
                std::vector<std::vector<std::complex<double>>> emb(
                    static_cast<std::size_t>(d) * d);
                std::vector<double> co(cfg.n);
                for (int e = 0; e < d * d; ++e) {
                    for (int t = 0; t < cfg.n; ++t)
                        co[t] = static_cast<double>(cfg.dist.sample(rng));
                    emb[e] = embed_double(co);
                }
                for (int j = 0; j < half && ok; ++j) {
                    std::vector<std::vector<std::complex<double>>> M(
                        d, std::vector<std::complex<double>>(d));
                    for (int r = 0; r < d; ++r)
                        for (int c = 0; c < d; ++c)
                            M[r][c] = emb[static_cast<std::size_t>(r) * d + c][j];
                    const double ld = log_abs_det(M);
                    if (!std::isfinite(ld)) ok = false;
                    coords[j] = ld;
                }
                break;
            }
            case McModel::Gaussian: {
                const int d = cfg.d;
                const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
                for (int j = 0; j < half && ok; ++j) {
                    std::vector<std::vector<std::complex<double>>> M(
                        d, std::vector<std::complex<double>>(d));
                    for (int r = 0; r < d; ++r)
                        for (int c = 0; c < d; ++c)
                            M[r][c] = std::complex<double>(rng.normal(), rng.normal()) * inv_sqrt2;
                    const double ld = log_abs_det(M);
                    if (!std::isfinite(ld)) ok = false;
                    coords[j] = ld;
                }
                break;
            }
            case McModel::GaussianIid: {
                for (int j = 0; j < half; ++j) coords[j] = ctx.sigma * rng.normal();
                break;
            }
        }
        if (ok) break;
        ++resamples;  // singular draw
    }

    double mean = 0.0;
    for (double v : coords) mean += v;
    mean /= half;
    double rho_inf = 0.0, ss = 0.0;
    for (double& v : coords) {
        v -= mean;
        rho_inf = std::max(rho_inf, std::abs(v));
        ss += v * v;
    }
    ss /= half;  // mean square over embedding coordinates = sigma_d^2 estimate

    TrialOutput out;
    out.rho_inf = rho_inf;
    out.sigma_sq = ss;
    out.resamples = resamples;
    out.cvp_nonzero = false;
    out.gamma = std::exp(rho_inf);
    if (cfg.apply_alpha) out.gamma *= cfg.alpha;

    if (cfg.full_cvp && ctx.basis) {
        const mpfr_prec_t prec = ctx.basis->precision_bits;
        LogVector t(ctx.basis->level, prec);
        for (int j = 0; j < half; ++j) t.v[j] = MpReal(coords[j], prec);
        const CVPResult res = babai_nearest_plane(*ctx.basis, t);
        for (const auto c : res.coeffs)
            if (c != 0) {
                out.cvp_nonzero = true;
                break;
            }
        out.rho_inf = res.rho_inf;
        out.gamma = std::exp(res.rho_inf);
        if (cfg.apply_alpha) out.gamma *= cfg.alpha;
    }
    return out;
}

}  // namespace

GammaStats run_trials(const TrialConfig& cfg) {
    if (cfg.num_trials < 1) throw std::domain_error("run_trials: num_trials must be >= 1");
    if (cfg.n < 2 || cfg.n % 2 != 0) throw std::domain_error("run_trials: bad n");
    if (cfg.model == McModel::Ring && (cfg.n & (cfg.n - 1)) != 0)
        throw std::domain_error("run_trials: ring model needs a 2-power degree");

    const auto t0 = std::chrono::steady_clock::now();

    TrialContext ctx;
    ctx.cfg = &cfg;
    ctx.basis = nullptr;
    ctx.sigma = sigma_d(cfg.d);

    UnitLatticeBasis basis;
    if (cfg.full_cvp) {
        int k = 1;
        while ((1 << (k - 1)) < cfg.n) ++k;
        if ((1 << (k - 1)) != cfg.n)
            throw std::domain_error("run_trials: full_cvp needs a 2-power degree");
        basis = log_unit_basis(make_tower(k), cfg.precision_bits);
        ctx.basis = &basis;
    }

    const std::int64_t N = cfg.num_trials;
    std::vector<TrialOutput> outs(N);
    int threads = cfg.threads > 0 ? cfg.threads
                                  : static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    threads = static_cast<int>(std::min<std::int64_t>(threads, N));

    auto worker = [&](int w) {
        for (std::int64_t i = w; i < N; i += threads)
            outs[i] = run_one(ctx, mix_seed(cfg.seed, static_cast<std::uint64_t>(i)));
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int w = 0; w < threads; ++w) pool.emplace_back(worker, w);
        for (auto& th : pool) th.join();
    }

    GammaStats st;
    st.num_trials = N;
    st.threshold = cfg.threshold;
    st.per_trial_gamma.reserve(N);
    std::vector<double> rho;
    rho.reserve(N);
    double ssum = 0.0;
    for (const auto& o : outs) {
        st.per_trial_gamma.push_back(o.gamma);
        rho.push_back(o.rho_inf);
        ssum += o.sigma_sq;
        st.resamples += o.resamples;
        if (o.cvp_nonzero) ++st.cvp_nonzero;
        if (o.gamma >= cfg.threshold) ++st.failures;
    }
    std::sort(st.per_trial_gamma.begin(), st.per_trial_gamma.end());
    std::sort(rho.begin(), rho.end());
    st.median = nearest_rank(st.per_trial_gamma, 0.5);
    st.p99 = nearest_rank(st.per_trial_gamma, 0.99);
    st.max_gamma = st.per_trial_gamma.back();
    st.median_rho_inf = nearest_rank(rho, 0.5);
    st.mean_sigma_sq = ssum / static_cast<double>(N);
    st.runtime_sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!cfg.keep_samples) st.per_trial_gamma.clear();
    return st;
}

GammaStats merge_stats(const GammaStats& a, const GammaStats& b) {
    if (a.per_trial_gamma.empty() || b.per_trial_gamma.empty())
        throw std::invalid_argument("merge_stats: per-trial samples required");
    GammaStats st;
    st.num_trials = a.num_trials + b.num_trials;
    st.threshold = a.threshold;
    st.per_trial_gamma.resize(a.per_trial_gamma.size() + b.per_trial_gamma.size());
    std::merge(a.per_trial_gamma.begin(), a.per_trial_gamma.end(), b.per_trial_gamma.begin(),
               b.per_trial_gamma.end(), st.per_trial_gamma.begin());
    st.median = nearest_rank(st.per_trial_gamma, 0.5);
    st.p99 = nearest_rank(st.per_trial_gamma, 0.99);
    st.max_gamma = st.per_trial_gamma.back();
    st.mean_sigma_sq =
        (a.mean_sigma_sq * static_cast<double>(a.num_trials) +
         b.mean_sigma_sq * static_cast<double>(b.num_trials)) /
        static_cast<double>(st.num_trials);
    // median_rho_inf is derivable from gamma when alpha was not applied
    st.failures = a.failures + b.failures;
    st.resamples = a.resamples + b.resamples;
    st.cvp_nonzero = a.cvp_nonzero + b.cvp_nonzero;
    st.runtime_sec = a.runtime_sec + b.runtime_sec;
    st.median_rho_inf = std::log(st.median);
    return st;
}

EvtReport extreme_value_check(const GammaStats& stats, int d, int n) {
    EvtReport r;
    r.predicted_median = sigma_d(d) * std::sqrt(2.0 * std::log(n / 2.0));
    r.empirical_median = stats.median_rho_inf;
    r.rel_deviation = (r.empirical_median - r.predicted_median) / r.predicted_median;
    r.in_regime = n >= 64;  // asymptotic regime note for tiny degrees
    return r;
}

TailReport tail_report(const GammaStats& stats, double threshold) {
    TailReport r;
    std::int64_t fail = 0;
    if (!stats.per_trial_gamma.empty()) {
        for (auto it = stats.per_trial_gamma.rbegin(); it != stats.per_trial_gamma.rend(); ++it) {
            if (*it >= threshold)
                ++fail;
            else
                break;
        }
    } else {
        fail = stats.failures;
    }
    r.failures = fail;
    r.failure_prob = static_cast<double>(fail) / static_cast<double>(stats.num_trials);
    r.margin = threshold / stats.p99;
    return r;
}

SingularTailReport singular_tail_check(int d, std::int64_t num_trials, std::uint64_t seed) {
    if (d > 8) throw std::domain_error("singular_tail_check: d must be <= 8");
    SingularTailReport rep;
    rep.d = d;
    rep.num_trials = num_trials;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    std::vector<double> smin(num_trials);
    for (std::int64_t i = 0; i < num_trials; ++i) {
        Rng rng(mix_seed(seed, static_cast<std::uint64_t>(i)));
        std::vector<std::vector<std::complex<double>>> M(d, std::vector<std::complex<double>>(d));
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c)
                M[r][c] = std::complex<double>(rng.normal(), rng.normal()) * inv_sqrt2;
        // smallest singular value by inverse power iteration is overkill at
        // d <= 8; use the exact SVD-free bound via Jacobi on M^H M.
        // Simpler: compute singular values from eigenvalues of M^H M by
        // cyclic Jacobi.
        std::vector<std::vector<std::complex<double>>> A(d, std::vector<std::complex<double>>(d));
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) {
                std::complex<double> acc = 0;
                for (int t = 0; t < d; ++t) acc += std::conj(M[t][r]) * M[t][c];
                A[r][c] = acc;
            }
        // Hermitian Jacobi sweeps
        for (int sweep = 0; sweep < 30; ++sweep) {
            double off = 0;
            for (int p = 0; p < d; ++p)
                for (int q = p + 1; q < d; ++q) off += std::norm(A[p][q]);
            if (off < 1e-24) break;
            for (int p = 0; p < d; ++p)
                for (int q = p + 1; q < d; ++q) {
                    const std::complex<double> apq = A[p][q];
                    if (std::norm(apq) < 1e-30) continue;
                    const double app = A[p][p].real(), aqq = A[q][q].real();
                    const double absapq = std::abs(apq);
                    const std::complex<double> phase = apq / absapq;
                    const double theta = 0.5 * std::atan2(2.0 * absapq, app - aqq);
                    const double ct = std::cos(theta), stn = std::sin(theta);
                    for (int t = 0; t < d; ++t) {
                        const auto atp = A[t][p], atq = A[t][q];
                        A[t][p] = atp * ct + atq * std::conj(phase) * stn;
                        A[t][q] = -atp * phase * stn + atq * ct;
                    }
                    for (int t = 0; t < d; ++t) {
                        const auto apt = A[p][t], aqt = A[q][t];
                        A[p][t] = apt * ct + aqt * phase * stn;
                        A[q][t] = -apt * std::conj(phase) * stn + aqt * ct;
                    }
                }
        }
        double lmin = A[0][0].real();
        for (int t = 1; t < d; ++t) lmin = std::min(lmin, A[t][t].real());
        smin[i] = std::sqrt(std::max(0.0, lmin));
    }
    std::sort(smin.begin(), smin.end());
    for (double eps : {0.01, 0.02, 0.05}) {
        const auto cnt = std::upper_bound(smin.begin(), smin.end(), eps) - smin.begin();
        rep.rows.push_back(
            {eps, static_cast<double>(cnt) / static_cast<double>(num_trials),
             (d * eps) * (d * eps)});
    }
    return rep;
}

}  // namespace sglat
