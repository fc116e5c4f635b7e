#include "sglat/ntt.hpp"

#include <mutex>
#include <stdexcept>

namespace sglat {
namespace ntt {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

namespace {

constexpr unsigned kMaxOrderLog = 13;  // supports n up to 2^12

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL}) {
        if (n % d == 0) return n == d;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

// Find an element of exact order 2^kMaxOrderLog mod p (p = c*2^kMaxOrderLog + 1).
std::uint64_t find_root(std::uint64_t p) {
    const std::uint64_t c = (p - 1) >> kMaxOrderLog;
    for (std::uint64_t base = 3;; ++base) {
        const std::uint64_t g = powmod(base, c, p);
        if (powmod(g, 1ULL << (kMaxOrderLog - 1), p) != 1) return g;
    }
}

std::vector<Prime>& pool() {
    static std::vector<Prime> primes;
    return primes;
}
std::mutex pool_mu;

void grow_pool(std::size_t need) {
    auto& pr = pool();
    static std::uint64_t candidate = 0;
    if (candidate == 0) {
        // Largest multiple-of-2^13-plus-1 below 2^62.
        candidate = ((((1ULL << 62) - 1) >> kMaxOrderLog) << kMaxOrderLog) + 1;
    }
    while (pr.size() < need) {
        while (!is_prime_u64(candidate)) candidate -= (1ULL << kMaxOrderLog);
        pr.push_back({candidate, find_root(candidate)});
        candidate -= (1ULL << kMaxOrderLog);
    }
}

void bit_reverse(std::vector<std::uint64_t>& a) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
}

// Iterative radix-2 NTT; w has order n mod p.
void transform(std::vector<std::uint64_t>& a, std::uint64_t w, std::uint64_t p) {
    const std::size_t n = a.size();
    bit_reverse(a);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::uint64_t wl = powmod(w, n / len, p);
        for (std::size_t i = 0; i < n; i += len) {
            std::uint64_t cur = 1;
            for (std::size_t j = 0; j < len / 2; ++j) {
                const std::uint64_t u = a[i + j];
                const std::uint64_t v = mulmod(a[i + j + len / 2], cur, p);
                a[i + j] = u + v < p ? u + v : u + v - p;
                a[i + j + len / 2] = u >= v ? u - v : u + p - v;
                cur = mulmod(cur, wl, p);
            }
        }
    }
}

struct Twist {
    std::vector<std::uint64_t> psi_pow;      // psi^i, i in [0, n)
    std::vector<std::uint64_t> psi_inv_pow;  // psi^-i scaled by 1/n
    std::uint64_t w;                         // psi^2, order n
    std::uint64_t w_inv;
};

Twist make_twist(std::size_t n, const Prime& pr) {
    Twist t;
    const std::uint64_t p = pr.p;
    // psi of order 2n
    int log2n = 0;
    while ((1ULL << log2n) < 2 * n) ++log2n;
    const std::uint64_t psi = powmod(pr.g, 1ULL << (kMaxOrderLog - log2n), p);
    const std::uint64_t psi_inv = powmod(psi, p - 2, p);
    const std::uint64_t n_inv = powmod(n, p - 2, p);
    t.psi_pow.resize(n);
    t.psi_inv_pow.resize(n);
    t.psi_pow[0] = 1;
    t.psi_inv_pow[0] = n_inv;
    for (std::size_t i = 1; i < n; ++i) {
        t.psi_pow[i] = mulmod(t.psi_pow[i - 1], psi, p);
        t.psi_inv_pow[i] = mulmod(t.psi_inv_pow[i - 1], psi_inv, p);
    }
    t.w = mulmod(psi, psi, p);
    t.w_inv = powmod(t.w, p - 2, p);
    return t;
}

}  // namespace

const Prime& prime(std::size_t idx) {
    std::lock_guard<std::mutex> lock(pool_mu);
    grow_pool(idx + 1);
    return pool()[idx];
}

void negacyclic_mul(std::vector<std::uint64_t>& a, std::vector<std::uint64_t> b,
                    std::size_t prime_idx) {
    const Prime pr = prime(prime_idx);
    const std::uint64_t p = pr.p;
    const std::size_t n = a.size();
    if (b.size() != n) throw std::invalid_argument("negacyclic_mul: size mismatch");
    const Twist t = make_twist(n, pr);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = mulmod(a[i], t.psi_pow[i], p);
        b[i] = mulmod(b[i], t.psi_pow[i], p);
    }
    transform(a, t.w, p);
    transform(b, t.w, p);
    for (std::size_t i = 0; i < n; ++i) a[i] = mulmod(a[i], b[i], p);
    transform(a, t.w_inv, p);
    for (std::size_t i = 0; i < n; ++i) a[i] = mulmod(a[i], t.psi_inv_pow[i], p);
}

std::vector<std::uint64_t> eval_odd_powers(const std::vector<std::uint64_t>& a,
                                           std::size_t prime_idx) {
    const Prime pr = prime(prime_idx);
    const std::uint64_t p = pr.p;
    const std::size_t n = a.size();
    const Twist t = make_twist(n, pr);
    std::vector<std::uint64_t> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = mulmod(a[i], t.psi_pow[i], p);
    transform(out, t.w, p);
    // out[t] is now f(psi * w^t) = f(psi^(2t+1)) in bit-natural order.
    return out;
}

std::size_t primes_for_bits(std::size_t bits) {
    // Each prime contributes ~61.99 bits; keep a one-prime safety margin.
    return bits / 61 + 2;
}

mpz_class crt_centered(const std::vector<std::uint64_t>& residues) {
    // Incremental CRT: maintain x mod M, lift one prime at a time.
    mpz_class x = 0, M = 1;
    for (std::size_t i = 0; i < residues.size(); ++i) {
        const std::uint64_t p = prime(i).p;
        mpz_class pz(static_cast<unsigned long>(p));
        // t = (r_i - x) * M^-1 mod p
        mpz_class xi = x % pz;
        if (xi < 0) xi += pz;
        std::uint64_t x_mod = mpz_get_ui(xi.get_mpz_t());
        std::uint64_t r = residues[i] % p;
        std::uint64_t diff = r >= x_mod ? r - x_mod : r + p - x_mod;
        mpz_class Mi = M % pz;
        std::uint64_t m_mod = mpz_get_ui(Mi.get_mpz_t());
        std::uint64_t m_inv = powmod(m_mod, p - 2, p);
        std::uint64_t tt = mulmod(diff, m_inv, p);
        x += M * mpz_class(static_cast<unsigned long>(tt));
        M *= pz;
    }
    if (x * 2 > M) x -= M;
    return x;
}

}  // namespace ntt
}  // namespace sglat
