#include "sglat/sgp.hpp"

#include <algorithm>
#include <cmath>

#include "sglat/rng.hpp"

namespace sglat {

ObfuscatedInstance obfuscate_generator(const RingElement& g0, std::int64_t exp_bound,
                                       std::uint64_t seed) {
    if (g0.is_zero()) throw std::domain_error("obfuscate_generator: g0 = 0");
    Rng rng(mix_seed(seed, 0x6f626675ULL));
    UnitExponents e;
    e.level = g0.level;
    for (int a = 3; a < g0.level.n; a += 2) {
        const std::int64_t ea = exp_bound == 0 ? 0 : rng.uniform_int(-exp_bound, exp_bound);
        if (ea != 0) e.exps[a] = ea;
    }
    ObfuscatedInstance inst;
    inst.g = tfe_mul_unit(tfe_from_ring(g0), e);
    inst.planted = e;
    return inst;
}

double approximation_factor(const LogVector& rho) {
    return std::exp(lv_linf(rho).to_double());
}

std::vector<int> retry_ordering(const TowerParams& p, int attempt) {
    std::vector<int> order;
    for (int a = 3; a < p.n; a += 2) order.push_back(a);
    if (attempt <= 0) return order;
    if (attempt == 1) {
        std::reverse(order.begin(), order.end());
        return order;
    }
    // seeded deterministic shuffles for attempts 2, 3
    Rng rng(0x7265747279ULL + static_cast<std::uint64_t>(attempt));
    for (std::size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[rng.below(i)]);
    return order;
}

namespace {

AttackOutcome recover_impl(const TowerFactoredElement& g, const UnitLatticeBasis& basis0,
                           double threshold) {
    AttackOutcome out;
    out.threshold = threshold;

    const UnitLatticeBasis* basis = &basis0;
    UnitLatticeBasis reordered;  // holds retry bases

    for (int attempt = 0; attempt <= 3; ++attempt) {
        if (attempt > 0) {
            const std::vector<int> ord = retry_ordering(basis0.level, attempt);
            reordered = log_unit_basis(basis0.level, basis0.precision_bits, &ord);
            basis = &reordered;
        }
        const mpfr_prec_t prec = basis->precision_bits;
        const LogVector t = project_H0(tower_log_vector(g, prec));
        const CVPResult res = babai_nearest_plane(*basis, t);
        out.unit_exponents = decode_exponents(res, *basis);
        out.residual = res.rho;
        out.gamma = std::exp(res.rho_inf);
        out.precision_bits = prec;
        out.retries = attempt;

        // Divide the decoded unit out of g in factored form; expand only the
        // (short) result.
        UnitExponents neg;
        neg.level = out.unit_exponents.level;
        for (const auto& [a, e] : out.unit_exponents.exps) neg.exps[a] = -e;
        out.g0_factored = tfe_mul_unit(g, neg);
        try {
            out.g0 = tfe_expand(out.g0_factored);
        } catch (const PrecisionError&) {
            out.g0.reset();  // residual exponents still large; leave factored
        }

        out.pass = out.gamma < threshold;
        if (out.pass) break;
    }
    return out;
}

}  // namespace

AttackOutcome short_generator_recover(const TowerFactoredElement& g,
                                      const UnitLatticeBasis& basis, double threshold) {
    return recover_impl(g, basis, threshold);
}

AttackOutcome short_generator_recover(const RingElement& g, const UnitLatticeBasis& basis,
                                      double threshold) {
    return recover_impl(tfe_from_ring(g), basis, threshold);
}

bool verify_same_ideal(const RingElement& g, const RingElement& g0) {
    if (g.is_zero() || g0.is_zero()) throw std::domain_error("verify_same_ideal: zero input");
    try {
        return is_unit(divide_exact(g, g0));
    } catch (const NotDivisibleError&) {
    }
    try {
        return is_unit(divide_exact(g0, g));
    } catch (const NotDivisibleError&) {
        return false;
    }
}

bool equal_up_to_torsion(const RingElement& x, const RingElement& y) {
    if (!(x.level == y.level)) return false;
    const int n = x.level.n;
    // y * zeta^i by coefficient rotation with sign wrap; i in [0, 2n) covers
    // all 2m torsion multiples since -1 = zeta^n.
    for (int i = 0; i < 2 * n; ++i) {
        bool match = true;
        for (int t = 0; t < n && match; ++t) {
            // coefficient of zeta^(t+i) lands at (t+i) mod n with sign
            const int s = (t + i) % (2 * n);
            const mpz_class& src = y.c[t];
            if (s < n)
                match = (x.c[s] == src);
            else
                match = (x.c[s - n] == -src);
        }
        if (match) return true;
    }
    return false;
}

}  // namespace sglat
