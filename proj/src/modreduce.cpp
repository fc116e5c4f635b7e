#include "sglat/modreduce.hpp"

#include <cmath>
#include <complex>

#include "sglat/cfft.hpp"

namespace sglat {

void fft(std::vector<std::complex<double>>& a, int sign) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * M_PI / static_cast<double>(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                const auto u = a[i + j];
                const auto v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

std::vector<std::complex<double>> embed_double(const std::vector<double>& coeffs) {
    const std::size_t n = coeffs.size();
    std::vector<std::complex<double>> a(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double ang = M_PI * static_cast<double>(i) / static_cast<double>(n);
        a[i] = coeffs[i] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    fft(a, +1);
    a.resize(n / 2);
    return a;
}

std::int64_t Dist::sample(Rng& rng) const {
    switch (kind) {
        case Kind::UniformModQ:
            return rng.uniform_int(-(q - 1) / 2, (q - 1) / 2);
        case Kind::Cbd:
            return rng.cbd(eta);
        case Kind::Gaussian:
            return std::llround(sigma * rng.normal());
    }
    return 0;
}

double Dist::variance() const {
    switch (kind) {
        case Kind::UniformModQ: {
            const double w = q;  // q odd: values -(q-1)/2 .. (q-1)/2
            return (w * w - 1.0) / 12.0;
        }
        case Kind::Cbd:
            return eta / 2.0;
        case Kind::Gaussian:
            return sigma * sigma;  // ignores the rounding correction
    }
    return 0.0;
}

std::string Dist::name() const {
    switch (kind) {
        case Kind::UniformModQ: return "uniform_mod_" + std::to_string(q);
        case Kind::Cbd: return "cbd_" + std::to_string(eta);
        case Kind::Gaussian: return "gaussian_" + std::to_string(sigma);
    }
    return "?";
}

ModuleMatrix sample_module(int d, const TowerParams& p, const Dist& dist, std::uint64_t seed) {
    if (d < 1 || d > 8) throw std::domain_error("sample_module: d must be in [1, 8]");
    ModuleMatrix B;
    B.level = p;
    B.d = d;
    B.dist = dist;
    B.seed = seed;
    Rng rng(mix_seed(seed, 0x6d6f64756c65ULL));
    B.entries.reserve(static_cast<std::size_t>(d) * d);
    for (int i = 0; i < d * d; ++i) {
        RingElement e(p);
        for (int t = 0; t < p.n; ++t) e.c[t] = static_cast<long>(dist.sample(rng));
        B.entries.push_back(std::move(e));
    }
    return B;
}

RingElement ring_determinant(const ModuleMatrix& B) {
    const int d = B.d;
    // Laplace expansion over column subsets, row by row; d * 2^(d-1)
    // ring multiplications.
    const unsigned full = 1u << d;
    std::vector<RingElement> cur(full);
    std::vector<bool> done(full, false);
    cur[0] = ring_one(B.level);
    done[0] = true;
    for (int row = 0; row < d; ++row) {
        std::vector<RingElement> next(full);
        std::vector<bool> next_done(full, false);
        for (unsigned s = 0; s < full; ++s) {
            if (!done[s] || __builtin_popcount(s) != row) continue;
            int sign = 1;
            for (int col = 0; col < d; ++col) {
                if (s & (1u << col)) {
                    sign = -sign;
                    continue;
                }
                const unsigned s2 = s | (1u << col);
                RingElement term = ring_mul(cur[s], B.at(row, col));
                if (sign < 0) term = ring_neg(term);
                if (!next_done[s2]) {
                    next[s2] = std::move(term);
                    next_done[s2] = true;
                } else {
                    next[s2] = ring_add(next[s2], term);
                }
            }
        }
        cur = std::move(next);
        done = std::move(next_done);
    }
    RingElement det = cur[full - 1];
    if (det.is_zero()) throw SingularModuleError("ring_determinant: det = 0 (resample)");
    return det;
}

namespace {

// Modified Gram-Schmidt QR on a d x d complex matrix; returns |R_ii|.
std::vector<double> qr_diag(std::vector<std::vector<std::complex<double>>> M) {
    const int d = static_cast<int>(M.size());
    std::vector<double> diag(d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < i; ++j) {
            std::complex<double> proj = 0;
            for (int t = 0; t < d; ++t) proj += std::conj(M[t][j]) * M[t][i];
            for (int t = 0; t < d; ++t) M[t][i] -= proj * M[t][j];
        }
        double n2 = 0;
        for (int t = 0; t < d; ++t) n2 += std::norm(M[t][i]);
        diag[i] = std::sqrt(n2);
        if (diag[i] > 0)
            for (int t = 0; t < d; ++t) M[t][i] /= diag[i];
    }
    return diag;
}

}  // namespace

GSODecomposition gso_over_ring(const ModuleMatrix& B, mpfr_prec_t /*precision_bits*/) {
    const int d = B.d;
    const int half = B.level.half();
    GSODecomposition out;
    out.det_ideal_generator = ring_determinant(B);

    std::vector<std::vector<std::complex<double>>> emb(static_cast<std::size_t>(d) * d);
    for (int i = 0; i < d * d; ++i) {
        std::vector<double> co(B.level.n);
        for (int t = 0; t < B.level.n; ++t) co[t] = B.entries[i].c[t].get_d();
        emb[i] = embed_double(co);
    }

    out.diag_mag.assign(half, std::vector<double>(d, 0.0));
    for (int j = 0; j < half; ++j) {
        std::vector<std::vector<std::complex<double>>> M(d, std::vector<std::complex<double>>(d));
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) M[r][c] = emb[static_cast<std::size_t>(r) * d + c][j];
        out.diag_mag[j] = qr_diag(std::move(M));
    }

    // Interpolate the diagonal back to K (inverse embedding with conjugate
    // symmetry); accept only near-integral coefficients, otherwise fall back
    // to det-only mode.
    {
        const int n = B.level.n;
        std::vector<RingElement> gens;
        bool exact = true;
        for (int i = 0; i < d && exact; ++i) {
            RingElement g(B.level);
            for (int t = 0; t < n; ++t) {
                std::complex<double> acc = 0.0;
                for (int tt = 0; tt < n; ++tt) {
                    const int j = 2 * tt + 1;
                    const double val = out.diag_mag[tt < half ? tt : n - 1 - tt][i];
                    const double ang = -M_PI * static_cast<double>(t) * j / n;
                    acc += val * std::complex<double>(std::cos(ang), std::sin(ang));
                }
                acc /= static_cast<double>(n);
                if (std::abs(acc.imag()) > 1e-6 ||
                    std::abs(acc.real() - std::round(acc.real())) > 1e-6) {
                    exact = false;
                    break;
                }
                g.c[t] = static_cast<long>(std::llround(acc.real()));
            }
            if (exact) gens.push_back(std::move(g));
        }
        if (exact) out.diag_generators = std::move(gens);
    }

    // sigma_c^2 estimated from 10^4 scalar samples of the same distribution.
    Rng rng(mix_seed(B.seed, 0x62616c616e6365ULL));
    double s2 = 0.0;
    const int kSamples = 10000;
    for (int i = 0; i < kSamples; ++i) {
        const double v = static_cast<double>(B.dist.sample(rng));
        s2 += v * v;
    }
    s2 /= kSamples;

    double cmax = 0.0;
    for (int i = 0; i < d; ++i) {
        double mean = 0.0;
        for (int j = 0; j < half; ++j) mean += out.diag_mag[j][i] * out.diag_mag[j][i];
        mean /= half;
        const double expect = (d - i) * static_cast<double>(B.level.n) * s2;
        cmax = std::max(cmax, mean / expect);
    }
    out.balance_C = cmax;
    return out;
}

ModuleMatrix reorder_columns(const ModuleMatrix& B, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != B.d)
        throw std::invalid_argument("reorder_columns: permutation size mismatch");
    std::vector<bool> seen(B.d, false);
    for (int p : perm) {
        if (p < 0 || p >= B.d || seen[p])
            throw std::invalid_argument("reorder_columns: not a permutation");
        seen[p] = true;
    }
    ModuleMatrix out = B;
    for (int i = 0; i < B.d; ++i)
        for (int j = 0; j < B.d; ++j) out.at(i, j) = B.at(i, perm[j]);
    return out;
}

}  // namespace sglat
