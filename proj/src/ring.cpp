#include "sglat/ring.hpp"

#include <map>
#include <mutex>

#include "sglat/ntt.hpp"

namespace sglat {

namespace {

void check_same_level(const RingElement& a, const RingElement& b, const char* op) {
    if (!(a.level == b.level))
        throw std::invalid_argument(std::string(op) + ": level mismatch");
}

// Add v * zeta^e to coefficient vector, e arbitrary, zeta^n = -1.
void accumulate_monomial(std::vector<mpz_class>& c, int n, long e, const mpz_class& v) {
    long r = e % (2L * n);
    if (r < 0) r += 2L * n;
    if (r < n)
        c[r] += v;
    else
        c[r - n] -= v;
}

}  // namespace

RingElement ring_zero(const TowerParams& p) { return RingElement(p); }

RingElement ring_one(const TowerParams& p) {
    RingElement g(p);
    g.c[0] = 1;
    return g;
}

RingElement ring_constant(const TowerParams& p, const mpz_class& v) {
    RingElement g(p);
    g.c[0] = v;
    return g;
}

RingElement ring_monomial(const TowerParams& p, long e) {
    RingElement g(p);
    accumulate_monomial(g.c, p.n, e, 1);
    return g;
}

RingElement ring_add(const RingElement& a, const RingElement& b) {
    check_same_level(a, b, "ring_add");
    RingElement out(a.level);
    for (int i = 0; i < a.level.n; ++i) out.c[i] = a.c[i] + b.c[i];
    return out;
}

RingElement ring_sub(const RingElement& a, const RingElement& b) {
    check_same_level(a, b, "ring_sub");
    RingElement out(a.level);
    for (int i = 0; i < a.level.n; ++i) out.c[i] = a.c[i] - b.c[i];
    return out;
}

RingElement ring_neg(const RingElement& a) {
    RingElement out(a.level);
    for (int i = 0; i < a.level.n; ++i) out.c[i] = -a.c[i];
    return out;
}

RingElement ring_mul_schoolbook(const RingElement& a, const RingElement& b) {
    check_same_level(a, b, "ring_mul");
    const int n = a.level.n;
    RingElement out(a.level);
    for (int i = 0; i < n; ++i) {
        if (a.c[i] == 0) continue;
        for (int j = 0; j < n; ++j) {
            if (b.c[j] == 0) continue;
            if (i + j < n)
                out.c[i + j] += a.c[i] * b.c[j];
            else
                out.c[i + j - n] -= a.c[i] * b.c[j];
        }
    }
    return out;
}

RingElement ring_mul_ntt(const RingElement& a, const RingElement& b) {
    check_same_level(a, b, "ring_mul");
    const int n = a.level.n;
    const std::size_t bits =
        a.coeff_bits() + b.coeff_bits() + static_cast<std::size_t>(a.level.k) + 1;
    const std::size_t nprimes = ntt::primes_for_bits(bits);

    std::vector<std::vector<std::uint64_t>> res(nprimes);
    for (std::size_t pi = 0; pi < nprimes; ++pi) {
        const std::uint64_t p = ntt::prime(pi).p;
        std::vector<std::uint64_t> av(n), bv(n);
        mpz_class t;
        for (int i = 0; i < n; ++i) {
            t = a.c[i] % p;
            if (t < 0) t += p;
            av[i] = mpz_get_ui(t.get_mpz_t());
            t = b.c[i] % p;
            if (t < 0) t += p;
            bv[i] = mpz_get_ui(t.get_mpz_t());
        }
        ntt::negacyclic_mul(av, std::move(bv), pi);
        res[pi] = std::move(av);
    }

    RingElement out(a.level);
    std::vector<std::uint64_t> col(nprimes);
    for (int i = 0; i < n; ++i) {
        for (std::size_t pi = 0; pi < nprimes; ++pi) col[pi] = res[pi][i];
        out.c[i] = ntt::crt_centered(col);
    }
    return out;
}

RingElement ring_mul(const RingElement& a, const RingElement& b) {
    if (a.level.n <= 32) return ring_mul_schoolbook(a, b);
    return ring_mul_ntt(a, b);
}

RingElement ring_pow(const RingElement& a, std::uint64_t e) {
    RingElement base = a;
    RingElement acc = ring_one(a.level);
    while (e) {
        if (e & 1) acc = ring_mul(acc, base);
        e >>= 1;
        if (e) base = ring_mul(base, base);
    }
    return acc;
}

RingElement galois(const RingElement& a, long t) {
    if ((t & 1) == 0) throw std::domain_error("galois: t must be odd");
    const int n = a.level.n;
    RingElement out(a.level);
    for (int i = 0; i < n; ++i) {
        if (a.c[i] == 0) continue;
        accumulate_monomial(out.c, n, static_cast<long>(i) * t, a.c[i]);
    }
    return out;
}

RingElement conjugate(const RingElement& a) { return galois(a, 2L * a.level.n - 1); }

namespace {

// Cached root tables: cos/sin of 2*pi*t/m for t in [0, m).
struct RootTable {
    std::vector<MpReal> cs, sn;
};

const RootTable& root_table(const TowerParams& p, mpfr_prec_t prec) {
    static std::mutex mu;
    static std::map<std::pair<int, mpfr_prec_t>, RootTable> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p.k, prec);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    RootTable t;
    t.cs.reserve(p.m);
    t.sn.reserve(p.m);
    const MpReal two_pi_over_m = MpReal(2.0, prec) * MpReal::pi(prec) / MpReal(static_cast<long>(p.m), prec);
    for (int i = 0; i < p.m; ++i) {
        MpReal ang = two_pi_over_m * MpReal(static_cast<long>(i), prec);
        t.cs.push_back(cos(ang));
        t.sn.push_back(sin(ang));
    }
    return cache.emplace(key, std::move(t)).first->second;
}

}  // namespace

EmbeddingVector canonical_embed(const RingElement& g, mpfr_prec_t precision_bits) {
    if (precision_bits < 64) throw std::domain_error("canonical_embed: precision_bits must be >= 64");
    const TowerParams& p = g.level;
    const RootTable& rt = root_table(p, precision_bits);

    EmbeddingVector ev;
    ev.level = p;
    ev.precision_bits = precision_bits;
    ev.re.reserve(p.half());
    ev.im.reserve(p.half());

    std::vector<MpReal> coef;
    coef.reserve(p.n);
    for (int i = 0; i < p.n; ++i) coef.emplace_back(g.c[i], precision_bits);

    for (int j = 1; j < p.n; j += 2) {
        MpReal re(precision_bits), im(precision_bits);
        for (int i = 0; i < p.n; ++i) {
            if (g.c[i] == 0) continue;
            const int idx = static_cast<int>((static_cast<long>(i) * j) % p.m);
            re.addmul(coef[i], rt.cs[idx]);
            im.addmul(coef[i], rt.sn[idx]);
        }
        ev.re.push_back(std::move(re));
        ev.im.push_back(std::move(im));
    }
    return ev;
}

mpz_class field_norm(const RingElement& g) {
    const int n = g.level.n;
    // |sigma_j(g)| <= ||g||_1, so |Nm| <= ||g||_1^n.
    mpz_class l1 = 0;
    for (const auto& x : g.c) l1 += abs(x);
    if (l1 == 0) return 0;
    const std::size_t bits = n * mpz_sizeinbase(l1.get_mpz_t(), 2) + 1;
    const std::size_t nprimes = ntt::primes_for_bits(bits);

    std::vector<std::uint64_t> residues(nprimes);
    for (std::size_t pi = 0; pi < nprimes; ++pi) {
        const std::uint64_t p = ntt::prime(pi).p;
        std::vector<std::uint64_t> av(n);
        mpz_class t;
        for (int i = 0; i < n; ++i) {
            t = g.c[i] % p;
            if (t < 0) t += p;
            av[i] = mpz_get_ui(t.get_mpz_t());
        }
        const auto vals = ntt::eval_odd_powers(av, pi);
        std::uint64_t prod = 1;
        for (const auto v : vals) prod = ntt::mulmod(prod, v, p);
        residues[pi] = prod;
    }
    return ntt::crt_centered(residues);
}

MpReal field_norm_float(const RingElement& g, mpfr_prec_t precision_bits) {
    const EmbeddingVector ev = canonical_embed(g, precision_bits);
    // Conjugate pairs contribute |sigma_j|^2 each.
    MpReal prod(1.0, precision_bits);
    for (std::size_t j = 0; j < ev.re.size(); ++j)
        prod *= ev.re[j] * ev.re[j] + ev.im[j] * ev.im[j];
    return prod;
}

bool is_unit(const RingElement& g) {
    const mpz_class nm = field_norm(g);
    return nm == 1 || nm == -1;
}

RingElement divide_exact(const RingElement& g, const RingElement& h) {
    check_same_level(g, h, "divide_exact");
    if (h.is_zero()) throw std::domain_error("divide_exact: divisor is zero");

    // Balanced product of the other conjugates sigma_t(h), odd t != 1.
    std::vector<RingElement> factors;
    factors.reserve(g.level.n - 1);
    for (long t = 3; t < 2L * g.level.n; t += 2) factors.push_back(galois(h, t));
    while (factors.size() > 1) {
        std::vector<RingElement> next;
        next.reserve((factors.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < factors.size(); i += 2)
            next.push_back(ring_mul(factors[i], factors[i + 1]));
        if (factors.size() & 1) next.push_back(factors.back());
        factors = std::move(next);
    }
    const RingElement htilde = factors.empty() ? ring_one(g.level) : factors[0];

    const mpz_class nm = field_norm(h);  // h * htilde == nm as a constant
    const RingElement num = ring_mul(g, htilde);
    RingElement out(g.level);
    for (int i = 0; i < g.level.n; ++i) {
        mpz_class q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.c[i].get_mpz_t(), nm.get_mpz_t());
        if (r != 0) throw NotDivisibleError("divide_exact: not divisible");
        out.c[i] = q;
    }
    return out;
}

}  // namespace sglat
