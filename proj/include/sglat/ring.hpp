#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "sglat/mpreal.hpp"
#include "sglat/params.hpp"

namespace sglat {

struct NotDivisibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Element of R = Z[zeta_m] = Z[x]/(x^n+1) in the power basis, exact
// integer coefficients c[0..n-1].
struct RingElement {
    TowerParams level;
    std::vector<mpz_class> c;

    RingElement() = default;
    explicit RingElement(const TowerParams& p) : level(p), c(p.n) {}

    bool is_zero() const {
        for (const auto& x : c)
            if (x != 0) return false;
        return true;
    }
    std::size_t coeff_bits() const {
        std::size_t b = 0;
        for (const auto& x : c) b = std::max(b, mpz_sizeinbase(x.get_mpz_t(), 2));
        return b;
    }
    friend bool operator==(const RingElement& a, const RingElement& b) {
        return a.level == b.level && a.c == b.c;
    }
};

RingElement ring_zero(const TowerParams& p);
RingElement ring_one(const TowerParams& p);
RingElement ring_constant(const TowerParams& p, const mpz_class& v);
// zeta^e with any integer exponent (reduced via zeta^n = -1).
RingElement ring_monomial(const TowerParams& p, long e);

RingElement ring_add(const RingElement& a, const RingElement& b);
RingElement ring_sub(const RingElement& a, const RingElement& b);
RingElement ring_neg(const RingElement& a);

// Negacyclic product. Schoolbook for n <= 32, CRT/NTT above; both paths
// are exposed for cross-checking.
RingElement ring_mul(const RingElement& a, const RingElement& b);
RingElement ring_mul_schoolbook(const RingElement& a, const RingElement& b);
RingElement ring_mul_ntt(const RingElement& a, const RingElement& b);

RingElement ring_pow(const RingElement& a, std::uint64_t e);

// Galois action zeta -> zeta^t for odd t.
RingElement galois(const RingElement& a, long t);
// Complex conjugation: zeta -> zeta^{-1}.
RingElement conjugate(const RingElement& a);

// Values sigma_j(g) at the representative embeddings, odd j in [1, n).
struct EmbeddingVector {
    TowerParams level;
    mpfr_prec_t precision_bits = 0;
    std::vector<MpReal> re, im;
};

EmbeddingVector canonical_embed(const RingElement& g, mpfr_prec_t precision_bits);

// Exact field norm Nm(g) = prod over all n embeddings, computed as the
// resultant of g with x^n+1 via per-prime evaluation + CRT.
mpz_class field_norm(const RingElement& g);

// Floating-point norm estimate |Nm(g)| from the embedding product; used to
// cross-check the exact path.
MpReal field_norm_float(const RingElement& g, mpfr_prec_t precision_bits);

bool is_unit(const RingElement& g);

// Exact quotient g/h in R, via q = g * (prod of other conjugates of h) / Nm(h).
// Throws NotDivisibleError when g is not an R-multiple of h.
RingElement divide_exact(const RingElement& g, const RingElement& h);

}  // namespace sglat
