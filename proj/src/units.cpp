#include "sglat/units.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace sglat {

RingElement cyclotomic_unit(int a, const TowerParams& p) {
    if ((a & 1) == 0) throw std::domain_error("cyclotomic_unit: a must be odd");
    if (a < 1 || a >= p.n) throw std::domain_error("cyclotomic_unit: need 1 <= a < n");
    // xi_a = zeta^((1-a)/2) * (1 - zeta^a)/(1 - zeta)
    //      = zeta^((1-a)/2) * (1 + zeta + ... + zeta^(a-1)),
    // so that |sigma_j(xi_a)| = sin(a j pi/m) / sin(j pi/m).
    RingElement g(p);
    for (int i = 0; i < a; ++i) {
        long e = (1L - a) / 2 + i;
        long r = e % (2L * p.n);
        if (r < 0) r += 2L * p.n;
        if (r < p.n)
            g.c[r] += 1;
        else
            g.c[r - p.n] -= 1;
    }
    return g;
}

RingElement ramified_sqrt2(const TowerParams& p) {
    // zeta^(m/8) + zeta^(-m/8) = 2 cos(pi/4); generates the prime above 2.
    RingElement g = ring_monomial(p, p.m / 8);
    return ring_add(g, ring_monomial(p, -(p.m / 8)));
}

std::vector<int> new_units_at_level(int L) {
    if (L < 4) throw std::domain_error("new_units_at_level: L must be >= 4");
    std::vector<int> out;
    for (int a = (1 << (L - 2)) + 1; a < (1 << (L - 1)); a += 2) out.push_back(a);
    return out;
}

int unit_index_level(int a) {
    if (a < 3 || (a & 1) == 0) throw std::domain_error("unit_index_level: a must be odd and >= 3");
    int L = 3;
    while (a > (1 << (L - 1)) - 1) ++L;
    return L;
}

std::size_t TowerFactoredElement::storage_bits() const {
    std::size_t bits = 64;  // torsion
    for (const auto& x : base.c) bits += mpz_sizeinbase(x.get_mpz_t(), 2) + 1;
    for (const auto& f : factors)
        for (const auto& [a, e] : f.exps) {
            (void)a;
            bits += 64;
        }
    return bits;
}

UnitExponents TowerFactoredElement::unit_exponents() const {
    UnitExponents out;
    out.level = level;
    for (const auto& f : factors)
        for (const auto& [a, e] : f.exps)
            if (e != 0) out.exps[a] += e;
    return out;
}

TowerFactoredElement tfe_identity(const TowerParams& p) {
    TowerFactoredElement t;
    t.level = p;
    t.base = ring_one(p);
    return t;
}

TowerFactoredElement tfe_from_ring(const RingElement& base) {
    TowerFactoredElement t;
    t.level = base.level;
    t.base = base;
    return t;
}

namespace {

void add_exponents(TowerFactoredElement& t, const std::map<int, std::int64_t>& exps) {
    for (const auto& [a, e] : exps) {
        if (e == 0) continue;
        const int L = unit_index_level(a);
        auto it = std::find_if(t.factors.begin(), t.factors.end(),
                               [L](const auto& f) { return f.level == L; });
        if (it == t.factors.end()) {
            t.factors.push_back({L, {}});
            std::sort(t.factors.begin(), t.factors.end(),
                      [](const auto& x, const auto& y) { return x.level < y.level; });
            it = std::find_if(t.factors.begin(), t.factors.end(),
                              [L](const auto& f) { return f.level == L; });
        }
        it->exps[a] += e;
        if (it->exps[a] == 0) it->exps.erase(a);
    }
    t.factors.erase(std::remove_if(t.factors.begin(), t.factors.end(),
                                   [](const auto& f) { return f.exps.empty(); }),
                    t.factors.end());
}

}  // namespace

TowerFactoredElement unit_from_exponents(const UnitExponents& e) {
    TowerFactoredElement t = tfe_identity(e.level);
    add_exponents(t, e.exps);
    return t;
}

TowerFactoredElement tfe_mul_unit(const TowerFactoredElement& t, const UnitExponents& e) {
    if (!(t.level == e.level)) throw std::invalid_argument("tfe_mul_unit: level mismatch");
    TowerFactoredElement out = t;
    add_exponents(out, e.exps);
    return out;
}

MpReal unit_log_embedding(int a, int j, const TowerParams& p, mpfr_prec_t prec) {
    // log|sin(a j pi/m)| - log|sin(j pi/m)|
    const MpReal pi = MpReal::pi(prec);
    const MpReal mr(static_cast<long>(p.m), prec);
    auto logsin = [&](long mult) {
        long r = mult % (2L * p.m);
        if (r < 0) r += 2L * p.m;
        MpReal ang = pi * MpReal(r, prec) / mr;
        return log(abs(sin(ang)));
    };
    return logsin(static_cast<long>(a) * j) - logsin(j);
}

LogVector unit_log_vector(int a, const TowerParams& p, mpfr_prec_t prec) {
    LogVector out(p, prec);
    int idx = 0;
    for (int j = 1; j < p.n; j += 2) out.v[idx++] = unit_log_embedding(a, j, p, prec);
    return out;
}

MpReal tower_eval_log(const TowerFactoredElement& t, int j, mpfr_prec_t precision_bits) {
    if (j < 1 || j >= t.level.n || (j & 1) == 0)
        throw std::domain_error("tower_eval_log: j must be an odd representative in [1, n)");
    MpReal acc(precision_bits);
    const bool base_is_one = t.base.c.empty() || t.base == ring_one(t.level);
    if (!base_is_one) {
        // One embedding of the base: direct evaluation at zeta^j.
        const EmbeddingVector ev = canonical_embed(t.base, precision_bits);
        const int idx = (j - 1) / 2;
        MpReal mag2 = ev.re[idx] * ev.re[idx] + ev.im[idx] * ev.im[idx];
        if (mag2.is_zero()) throw PrecisionError("tower_eval_log: base embedding underflow");
        acc = MpReal(0.5, precision_bits) * log(mag2);
    }
    for (const auto& f : t.factors)
        for (const auto& [a, e] : f.exps) {
            MpReal l = unit_log_embedding(a, j, t.level, precision_bits);
            l *= static_cast<long>(e);
            acc += l;
        }
    if (t.sqrt2_exp != 0) {
        // |sigma_j(sqrt 2)| = sqrt(2) at every embedding
        MpReal half_log2 = log(MpReal(2.0, precision_bits));
        half_log2 /= 2;
        half_log2 *= static_cast<long>(t.sqrt2_exp);
        acc += half_log2;
    }
    return acc;  // torsion contributes log 1 = 0
}

LogVector tower_log_vector(const TowerFactoredElement& t, mpfr_prec_t precision_bits) {
    LogVector out(t.level, precision_bits);
    const bool base_is_one = t.base.c.empty() || t.base == ring_one(t.level);
    if (!base_is_one) {
        out = log_embed(t.base, precision_bits);
    }
    for (const auto& f : t.factors)
        for (const auto& [a, e] : f.exps) {
            const LogVector lu = unit_log_vector(a, t.level, precision_bits);
            for (std::size_t idx = 0; idx < out.size(); ++idx) {
                MpReal term = lu.v[idx];
                term *= static_cast<long>(e);
                out.v[idx] += term;
            }
        }
    if (t.sqrt2_exp != 0) {
        MpReal shift = log(MpReal(2.0, precision_bits));
        shift /= 2;
        shift *= static_cast<long>(t.sqrt2_exp);
        for (std::size_t idx = 0; idx < out.size(); ++idx) out.v[idx] += shift;
    }
    return out;
}

RingElement tfe_expand(const TowerFactoredElement& t, std::size_t max_bits) {
    // Predicted coefficient growth: base bits + sum |e_a| * (bits of xi_a) + slack.
    double predicted = static_cast<double>(t.base.coeff_bits()) + 64;
    for (const auto& f : t.factors)
        for (const auto& [a, e] : f.exps)
            predicted += static_cast<double>(std::llabs(e)) * (std::log2(static_cast<double>(a)) + t.level.k);
    if (predicted > static_cast<double>(max_bits))
        throw PrecisionError("tfe_expand: predicted coefficient growth exceeds budget");

    RingElement acc = t.base.c.empty() ? ring_one(t.level) : t.base;
    if (t.torsion != 0) {
        acc = ring_mul(acc, ring_monomial(t.level, static_cast<long>(((t.torsion % (2L * t.level.n)) + 2L * t.level.n) % (2L * t.level.n))));
    }
    RingElement denom = ring_one(t.level);
    for (const auto& f : t.factors)
        for (const auto& [a, e] : f.exps) {
            if (e == 0) continue;
            const RingElement xi = cyclotomic_unit(a, t.level);
            const RingElement pw = ring_pow(xi, static_cast<std::uint64_t>(std::llabs(e)));
            if (e > 0)
                acc = ring_mul(acc, pw);
            else
                denom = ring_mul(denom, pw);
        }
    if (t.sqrt2_exp > 0)
        acc = ring_mul(acc, ring_pow(ramified_sqrt2(t.level), static_cast<std::uint64_t>(t.sqrt2_exp)));
    else if (t.sqrt2_exp < 0)
        denom = ring_mul(denom, ring_pow(ramified_sqrt2(t.level), static_cast<std::uint64_t>(-t.sqrt2_exp)));
    if (!(denom == ring_one(t.level))) acc = divide_exact(acc, denom);
    return acc;
}

double UnitLatticeBasis::min_gso_norm() const {
    double best = 0;
    for (std::size_t i = 0; i < bstar_norm2.size(); ++i) {
        const double v = std::sqrt(bstar_norm2[i].to_double());
        if (i == 0 || v < best) best = v;
    }
    return best;
}

UnitLatticeBasis log_unit_basis(const TowerParams& p, mpfr_prec_t precision_bits,
                                const std::vector<int>* order) {
    if (p.k > 12) throw std::domain_error("log_unit_basis: k must be <= 12");
    UnitLatticeBasis basis;
    basis.level = p;
    basis.precision_bits = precision_bits;
    if (order) {
        basis.order = *order;
    } else {
        for (int a = 3; a < p.n; a += 2) basis.order.push_back(a);
    }
    if (static_cast<int>(basis.order.size()) != p.r)
        throw std::invalid_argument("log_unit_basis: ordering must list all r unit indices");

    for (int a : basis.order)
        basis.b.push_back(project_H0(unit_log_vector(a, p, precision_bits)));

    // Gram-Schmidt with cached mu.
    const MpReal floor = MpReal::pow2(-static_cast<long>(precision_bits) / 4, precision_bits);
    basis.mu.assign(basis.b.size(), {});
    for (std::size_t i = 0; i < basis.b.size(); ++i) {
        LogVector star = basis.b[i];
        basis.mu[i].resize(i);
        for (std::size_t j = 0; j < i; ++j) {
            MpReal m = lv_dot(basis.b[i], basis.bstar[j]) / basis.bstar_norm2[j];
            basis.mu[i][j] = m;
            for (std::size_t t = 0; t < star.size(); ++t) star.v[t] -= m * basis.bstar[j].v[t];
        }
        MpReal n2 = lv_norm2(star);
        if (n2 <= floor)
            throw PrecisionError("log_unit_basis: GSO norm underflow (rank deficiency)");
        basis.bstar.push_back(std::move(star));
        basis.bstar_norm2.push_back(std::move(n2));
    }
    return basis;
}

int unit_rank_check(int L, mpfr_prec_t precision_bits) {
    const TowerParams p = make_tower(L);
    std::vector<LogVector> rows;
    for (int a = 3; a < p.n; a += 2)
        rows.push_back(project_H0(unit_log_vector(a, p, precision_bits)));

    // Numeric rank via GSO with an underflow floor.
    const MpReal floor = MpReal::pow2(-static_cast<long>(precision_bits) / 4, precision_bits);
    std::vector<LogVector> star;
    std::vector<MpReal> norm2;
    int rank = 0;
    for (auto& row : rows) {
        LogVector v = row;
        for (std::size_t j = 0; j < star.size(); ++j) {
            MpReal m = lv_dot(v, star[j]) / norm2[j];
            for (std::size_t t = 0; t < v.size(); ++t) v.v[t] -= m * star[j].v[t];
        }
        MpReal n2 = lv_norm2(v);
        if (n2 > floor) {
            star.push_back(std::move(v));
            norm2.push_back(std::move(n2));
            ++rank;
        }
    }
    return rank;
}

namespace {

constexpr int kSchemaVersion = 1;

int json_digits(mpfr_prec_t prec) { return static_cast<int>(prec * 0.302) + 10; }

nlohmann::json lv_to_json(const LogVector& v, int digits) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& x : v.v) arr.push_back(x.str(digits));
    return arr;
}

LogVector lv_from_json(const nlohmann::json& arr, const TowerParams& p, mpfr_prec_t prec) {
    LogVector v(p, prec);
    for (std::size_t i = 0; i < v.size(); ++i)
        v.v[i] = MpReal::from_str(arr.at(i).get<std::string>(), prec);
    return v;
}

}  // namespace

std::string basis_to_json(const UnitLatticeBasis& basis) {
    const int digits = json_digits(basis.precision_bits);
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "unit_lattice_basis";
    j["k"] = basis.level.k;
    j["precision_bits"] = static_cast<long>(basis.precision_bits);
    j["order"] = basis.order;
    for (const auto& row : basis.b) j["basis"].push_back(lv_to_json(row, digits));
    for (const auto& row : basis.bstar) j["gso"].push_back(lv_to_json(row, digits));
    for (const auto& n2 : basis.bstar_norm2) j["gso_norm2"].push_back(n2.str(digits));
    for (const auto& row : basis.mu) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& m : row) arr.push_back(m.str(digits));
        j["mu"].push_back(arr);
    }
    return j.dump();
}

UnitLatticeBasis basis_from_json(const std::string& json_text) {
    const nlohmann::json j = nlohmann::json::parse(json_text);
    if (j.at("kind").get<std::string>() != "unit_lattice_basis")
        throw std::invalid_argument("basis_from_json: wrong kind");
    UnitLatticeBasis basis;
    basis.level = make_tower(j.at("k").get<int>());
    basis.precision_bits = j.at("precision_bits").get<long>();
    basis.order = j.at("order").get<std::vector<int>>();
    for (const auto& row : j.at("basis"))
        basis.b.push_back(lv_from_json(row, basis.level, basis.precision_bits));
    for (const auto& row : j.at("gso"))
        basis.bstar.push_back(lv_from_json(row, basis.level, basis.precision_bits));
    for (const auto& s : j.at("gso_norm2"))
        basis.bstar_norm2.push_back(MpReal::from_str(s.get<std::string>(), basis.precision_bits));
    for (const auto& row : j.at("mu")) {
        std::vector<MpReal> r;
        for (const auto& s : row)
            r.push_back(MpReal::from_str(s.get<std::string>(), basis.precision_bits));
        basis.mu.push_back(std::move(r));
    }
    return basis;
}

}  // namespace sglat
