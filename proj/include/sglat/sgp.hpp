#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "sglat/lattice.hpp"
#include "sglat/units.hpp"

namespace sglat {

struct AttackOutcome {
    TowerFactoredElement g0_factored;  // recovered short generator
    std::optional<RingElement> g0;     // expanded, when within budget
    double gamma = 0.0;                // exp(||rho||_inf)
    LogVector residual;
    UnitExponents unit_exponents;      // decoded CVP unit
    double threshold = 0.0;
    bool pass = false;
    int retries = 0;
    mpfr_prec_t precision_bits = 0;
};

// Test-instance generator: g = g0 * prod xi_a^{e_a} with |e_a| <= exp_bound,
// kept in factored form.
struct ObfuscatedInstance {
    TowerFactoredElement g;
    UnitExponents planted;
};
ObfuscatedInstance obfuscate_generator(const RingElement& g0, std::int64_t exp_bound,
                                       std::uint64_t seed);

// Phases 3-4: project the log-embedding, Babai CVP, decode the unit,
// divide it out. Retries with up to 3 alternative basis orderings when
// gamma >= threshold.
AttackOutcome short_generator_recover(const TowerFactoredElement& g,
                                      const UnitLatticeBasis& basis, double threshold);
AttackOutcome short_generator_recover(const RingElement& g, const UnitLatticeBasis& basis,
                                      double threshold);

double approximation_factor(const LogVector& rho);

// (g) == (g0) as ideals: divide_exact succeeds in one direction and the
// quotient is a unit.
bool verify_same_ideal(const RingElement& g, const RingElement& g0);

// x == +- zeta^i * y for some i (the torsion ambiguity of recovery).
bool equal_up_to_torsion(const RingElement& x, const RingElement& y);

// Deterministic alternative basis orderings for the retry path.
std::vector<int> retry_ordering(const TowerParams& p, int attempt);

}  // namespace sglat
