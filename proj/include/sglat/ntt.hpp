#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace sglat {

// Negacyclic NTT over word-sized primes p = 1 (mod 2^13), supporting any
// transform length n = 2^(k-1) for k <= 12. Used for exact products in
// Z[x]/(x^n+1) by CRT reconstruction over enough primes.
namespace ntt {

struct Prime {
    std::uint64_t p;
    std::uint64_t g;  // generator of the 2^13-th roots: g has order 2^13 mod p
};

// Deterministic pool of NTT primes just below 2^62; grows on demand.
const Prime& prime(std::size_t idx);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p);

// In-place negacyclic convolution of a and b mod p; both length n (power of 2).
// Result replaces a.
void negacyclic_mul(std::vector<std::uint64_t>& a, std::vector<std::uint64_t> b,
                    std::size_t prime_idx);

// Forward evaluation at all odd powers of the 2n-th root psi:
// out[t] = f(psi^(2t+1)) for t = 0..n-1, where f has coefficients a.
std::vector<std::uint64_t> eval_odd_powers(const std::vector<std::uint64_t>& a,
                                           std::size_t prime_idx);

// CRT reconstruction of centered residues: given residues r[i] mod prime(i),
// returns the unique integer of absolute value < prod/2 with those residues.
mpz_class crt_centered(const std::vector<std::uint64_t>& residues);

// Number of primes needed to cover `bits` bits plus sign.
std::size_t primes_for_bits(std::size_t bits);

}  // namespace ntt
}  // namespace sglat
