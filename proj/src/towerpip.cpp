#include "sglat/towerpip.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sglat/rng.hpp"

namespace sglat {

PrincipalIdeal ideal_from_generator(const RingElement& g) {
    PrincipalIdeal I;
    I.level = g.level;
    I.generator = tfe_from_ring(g);
    return I;
}

PrincipalIdeal ideal_from_generator(const TowerFactoredElement& g) {
    PrincipalIdeal I;
    I.level = g.level;
    I.generator = g;
    return I;
}

std::vector<std::vector<mpz_class>> ideal_z_basis(const RingElement& g) {
    const int n = g.level.n;
    std::vector<std::vector<mpz_class>> rows(n, std::vector<mpz_class>(n));
    for (int i = 0; i < n; ++i) {
        const RingElement gi = ring_mul(g, ring_monomial(g.level, i));
        for (int t = 0; t < n; ++t) rows[i][t] = gi.c[t];
    }
    // Row HNF by integer elimination.
    int row = 0;
    for (int col = 0; col < n && row < n; ++col) {
        int piv = -1;
        for (int r = row; r < n; ++r)
            if (rows[r][col] != 0 && (piv < 0 || abs(rows[r][col]) < abs(rows[piv][col]))) piv = r;
        if (piv < 0) continue;
        std::swap(rows[row], rows[piv]);
        bool again = true;
        while (again) {
            again = false;
            for (int r = row + 1; r < n; ++r) {
                if (rows[r][col] == 0) continue;
                mpz_class q = rows[r][col] / rows[row][col];  // truncated
                if (q != 0)
                    for (int t = 0; t < n; ++t) rows[r][t] -= q * rows[row][t];
                if (rows[r][col] != 0) {
                    std::swap(rows[row], rows[r]);
                    again = true;
                }
            }
        }
        if (rows[row][col] < 0)
            for (int t = 0; t < n; ++t) rows[row][t] = -rows[row][t];
        for (int r = 0; r < row; ++r) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), rows[r][col].get_mpz_t(), rows[row][col].get_mpz_t());
            if (q != 0)
                for (int t = 0; t < n; ++t) rows[r][t] -= q * rows[row][t];
        }
        ++row;
    }
    return rows;
}

PrincipalIdeal relative_norm_ideal(const PrincipalIdeal& I) {
    const TowerFactoredElement& g = I.generator;
    TowerFactoredElement out;
    out.level = g.level;
    // conj(xi_a) = xi_a and conj(sqrt2) = sqrt2; conj(zeta^t) = zeta^-t, so
    // the torsion cancels and unit/sqrt2 exponents double.
    out.base = ring_mul(g.base, conjugate(g.base));
    out.factors = g.factors;
    for (auto& f : out.factors)
        for (auto& [a, e] : f.exps) e *= 2;
    out.torsion = 0;
    out.sqrt2_exp = 2 * g.sqrt2_exp;
    PrincipalIdeal J;
    J.level = I.level;
    J.generator = std::move(out);
    return J;
}

PipBaseResult pip_base_case(const PrincipalIdeal& I) {
    if (I.level.k != 3) throw std::domain_error("pip_base_case: ideal must live at level 3");
    const mpfr_prec_t prec = 192;

    // |Nm| of the expanded base must be a power of 4 (units contribute 1,
    // the factored sqrt2 exponent contributes a known 4-power).
    const TowerFactoredElement& gen = I.generator;
    if (gen.base.is_zero()) throw NotOfExpectedFormError("pip_base_case: zero generator");
    mpz_class nm = field_norm(gen.base);
    if (nm < 0) nm = -nm;
    std::int64_t e_base = 0;
    {
        mpz_class v = nm;
        while (v > 1) {
            if (v % 4 != 0) throw NotOfExpectedFormError("pip_base_case: |Nm| is not a power of 4");
            v /= 4;
            ++e_base;
        }
        if (v != 1) throw NotOfExpectedFormError("pip_base_case: |Nm| is not a power of 4");
    }
    const std::int64_t e_norm = e_base + gen.sqrt2_exp;

    // Cross-check against the scale part of the log-embedding (the unit
    // part is mean-free): mean = e * ln(2)/2.
    const LogVector lg = tower_log_vector(gen, prec);
    MpReal mean(prec);
    for (const auto& x : lg.v) mean += x;
    mean /= static_cast<long>(lg.size());
    const MpReal half_log2 = log(MpReal(2.0, prec)) / MpReal(2.0, prec);
    const std::int64_t e_rounded = (mean / half_log2).round_to_int64();
    if (e_rounded != e_norm)
        throw NotOfExpectedFormError("pip_base_case: norm/log exponent mismatch");

    PipBaseResult res;
    res.e = e_rounded;
    res.generator = tfe_identity(I.level);
    res.generator.sqrt2_exp = e_rounded;
    return res;
}

HSPInstance hsp_instance(int L) {
    if (L < 4) throw std::domain_error("hsp_instance: L must be >= 4");
    HSPInstance inst;
    inst.L = L;
    inst.num_registers = 1 << (L - 3);
    inst.b_bits = static_cast<std::int64_t>(10) * L * (1LL << L);
    inst.mod_bits = static_cast<int>(std::min<std::int64_t>(inst.b_bits, 62));
    // New units are multiplicatively independent: trivial relation lattice.
    return inst;
}

HSPInstance hsp_instance_planted(int L, std::vector<std::vector<mpz_class>> rows) {
    HSPInstance inst;
    inst.L = L;
    inst.b_bits = static_cast<std::int64_t>(10) * L * (1LL << L);
    inst.mod_bits = static_cast<int>(std::min<std::int64_t>(inst.b_bits, 62));
    if (rows.empty()) throw std::invalid_argument("hsp_instance_planted: need row width");
    inst.num_registers = static_cast<int>(rows[0].size());
    // Drop all-zero rows (the trivial relation).
    std::vector<std::vector<mpz_class>> keep;
    for (auto& r : rows) {
        bool nz = false;
        for (const auto& x : r) nz = nz || x != 0;
        if (nz) keep.push_back(std::move(r));
    }
    inst.relation_lattice = std::move(keep);
    return inst;
}

namespace {

// Diagonalization D = U A V over Z, tracking only V (column operations).
struct DiagResult {
    std::vector<std::vector<mpz_class>> A;  // diagonal-ish h x t
    std::vector<std::vector<mpz_class>> V;  // t x t unimodular (columns)
};

DiagResult diagonalize(std::vector<std::vector<mpz_class>> A, int t) {
    DiagResult res;
    const int h = static_cast<int>(A.size());
    res.V.assign(t, std::vector<mpz_class>(t, 0));
    for (int i = 0; i < t; ++i) res.V[i][i] = 1;
    if (h == 0) {
        res.A = std::move(A);
        return res;
    }

    auto col_sub = [&](int dst, int src, const mpz_class& q) {
        for (int r = 0; r < h; ++r) A[r][dst] -= q * A[r][src];
        for (int r = 0; r < t; ++r) res.V[r][dst] -= q * res.V[r][src];
    };
    auto col_swap = [&](int a, int b) {
        for (int r = 0; r < h; ++r) std::swap(A[r][a], A[r][b]);
        for (int r = 0; r < t; ++r) std::swap(res.V[r][a], res.V[r][b]);
    };

    const int lim = std::min(h, t);
    for (int pos = 0; pos < lim; ++pos) {
        for (;;) {
            int pi = -1, pj = -1;
            for (int i = pos; i < h; ++i)
                for (int j = pos; j < t; ++j)
                    if (A[i][j] != 0 &&
                        (pi < 0 || abs(A[i][j]) < abs(A[pi][pj]))) {
                        pi = i;
                        pj = j;
                    }
            if (pi < 0) { pos = lim; break; }  // all zero, done
            if (pi != pos) std::swap(A[pi], A[pos]);
            if (pj != pos) col_swap(pj, pos);

            bool clean = true;
            for (int i = pos + 1; i < h; ++i) {
                if (A[i][pos] == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), A[i][pos].get_mpz_t(), A[pos][pos].get_mpz_t());
                if (q != 0)
                    for (int j = pos; j < t; ++j) A[i][j] -= q * A[pos][j];
                if (A[i][pos] != 0) clean = false;
            }
            for (int j = pos + 1; j < t; ++j) {
                if (A[pos][j] == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), A[pos][j].get_mpz_t(), A[pos][pos].get_mpz_t());
                if (q != 0) col_sub(j, pos, q);
                if (A[pos][j] != 0) clean = false;
            }
            if (clean) break;
        }
        if (pos >= lim) break;
    }
    res.A = std::move(A);
    return res;
}

}  // namespace

std::vector<std::vector<mpz_class>> kernel_mod(const std::vector<std::vector<mpz_class>>& A,
                                               const mpz_class& N) {
    if (A.empty()) throw std::invalid_argument("kernel_mod: empty system");
    const int t = static_cast<int>(A[0].size());
    DiagResult d = diagonalize(A, t);
    const int h = static_cast<int>(d.A.size());
    std::vector<std::vector<mpz_class>> basis;
    for (int i = 0; i < t; ++i) {
        mpz_class di = 0;
        if (i < h && i < t) di = d.A[i][i];
        mpz_class scale;
        if (di == 0) {
            scale = 1;
        } else {
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), di.get_mpz_t(), N.get_mpz_t());
            scale = N / g;
        }
        std::vector<mpz_class> row(t);
        for (int r = 0; r < t; ++r) row[r] = d.V[r][i] * scale;
        basis.push_back(std::move(row));
    }
    return basis;
}

std::vector<mpz_class> hsp_sample(const HSPInstance& inst, std::uint64_t seed) {
    const int t = inst.num_registers;
    const mpz_class N = inst.modulus();
    Rng rng(mix_seed(seed, 0x687370ULL));

    auto rand_mod = [&]() {
        // mod_bits <= 62: one draw suffices
        return mpz_class(static_cast<unsigned long>(
            rng.u64() & ((1ULL << inst.mod_bits) - 1)));
    };

    if (inst.relation_lattice.empty()) {
        // Trivial hidden subgroup: the annihilator is the full group.
        std::vector<mpz_class> s(t);
        for (auto& x : s) x = rand_mod();
        return s;
    }
    // Basis of {s : H s == 0 mod N}; a uniform integer combination mod N of
    // generating vectors is uniform over the annihilator subgroup.
    const auto basis = kernel_mod(inst.relation_lattice, N);
    std::vector<mpz_class> s(t, 0);
    for (const auto& b : basis) {
        const mpz_class c = rand_mod();
        for (int i = 0; i < t; ++i) s[i] += c * b[i];
    }
    for (auto& x : s) {
        x %= N;
        if (x < 0) x += N;
    }
    return s;
}

std::vector<std::vector<mpz_class>> recover_relations(
    const std::vector<std::vector<mpz_class>>& samples, const HSPInstance& inst) {
    const int t = inst.num_registers;
    if (samples.empty()) throw NeedMoreSamplesError("recover_relations: no samples");
    const mpz_class N = inst.modulus();

    // Relations h satisfy s . h == 0 mod N for every annihilator sample s.
    auto lattice = kernel_mod(samples, N);
    auto reduced = lll_reduce(std::move(lattice), 0.99);
    std::sort(reduced.begin(), reduced.end(), [](const auto& a, const auto& b) {
        mpz_class na = 0, nb = 0;
        for (const auto& x : a) na += x * x;
        for (const auto& x : b) nb += x * x;
        return na < nb;
    });

    // With enough samples the lattice is H + N Z^t; short vectors (far below
    // N) are the true relations. Rank check: count vectors of norm < N^(1/2).
    mpz_class thresh = 1;
    mpz_sqrt(thresh.get_mpz_t(), N.get_mpz_t());
    std::vector<std::vector<mpz_class>> rels;
    for (const auto& row : reduced) {
        mpz_class n2 = 0;
        for (const auto& x : row) n2 += x * x;
        if (n2 != 0 && n2 < thresh) rels.push_back(row);
    }
    const std::size_t expected = inst.relation_lattice.size();
    if (rels.size() > expected)
        throw NeedMoreSamplesError("recover_relations: rank not pinned down, need more samples");
    return rels;
}

namespace {

std::map<int, std::int64_t> level_exponents(const TowerFactoredElement& g, int L) {
    std::map<int, std::int64_t> out;
    for (const auto& f : g.factors)
        if (f.level == L)
            for (const auto& [a, e] : f.exps)
                if (e != 0) out[a] = e;
    return out;
}

}  // namespace

TowerPipResult tower_pip(const PrincipalIdeal& I, std::uint64_t seed) {
    const TowerParams& p = I.level;
    if (p.k > 8) throw std::domain_error("tower_pip: emulation supports k <= 8");
    const mpfr_prec_t prec = 256;
    const TowerFactoredElement& gen = I.generator;

    TowerPipResult result;
    UnitExponents recovered;
    recovered.level = p;

    const double tol = 1e-20;

    for (int L = p.k; L >= 4; --L) {
        const std::vector<int> UL = new_units_at_level(L);
        const auto planted = level_exponents(gen, L);
        const int t = static_cast<int>(UL.size()) + 1;

        // Classical stand-in: the hidden relation between the level-L
        // discrepancy and the new units, as the extended rank-1 lattice
        // (e_1, ..., e_dr, -1).
        std::vector<mpz_class> rel(t, 0);
        for (int i = 0; i < t - 1; ++i) {
            auto it = planted.find(UL[i]);
            rel[i] = it == planted.end() ? 0 : mpz_class(static_cast<long>(it->second));
        }
        rel[t - 1] = -1;
        HSPInstance inst = hsp_instance_planted(L, {rel});

        LevelTranscript tr;
        tr.L = L;
        const int num_samples = 4 * t;
        tr.num_samples = num_samples;
        std::vector<std::vector<mpz_class>> samples;
        samples.reserve(num_samples);
        for (int s = 0; s < num_samples; ++s)
            samples.push_back(
                hsp_sample(inst, mix_seed(seed, (static_cast<std::uint64_t>(L) << 32) | s)));

        std::vector<std::vector<mpz_class>> rels;
        try {
            rels = recover_relations(samples, inst);
        } catch (const NeedMoreSamplesError& err) {
            throw PipError(L, err.what());
        }

        // Extract the relation with discrepancy coordinate +-1.
        bool found = false;
        std::vector<std::int64_t> exps(UL.size(), 0);
        for (const auto& row : rels) {
            if (row[t - 1] == 1 || row[t - 1] == -1) {
                const int sgn = row[t - 1] == -1 ? 1 : -1;
                for (std::size_t i = 0; i + 1 < row.size(); ++i)
                    exps[i] = sgn * static_cast<std::int64_t>(row[i].get_si());
                found = true;
                break;
            }
        }
        if (!found) throw PipError(L, "tower_pip: no usable relation recovered");

        // Membership check via logs: prod xi_a^{rec_a} * delta_L^{-1} must be
        // torsion, i.e. its log-vector vanishes.
        LogVector resid(p, prec);
        for (std::size_t i = 0; i < UL.size(); ++i) {
            const std::int64_t diff =
                exps[i] - (planted.count(UL[i]) ? planted.at(UL[i]) : 0);
            if (diff == 0) continue;
            const LogVector lu = unit_log_vector(UL[i], p, prec);
            for (std::size_t j = 0; j < resid.size(); ++j) {
                MpReal term = lu.v[j];
                term *= static_cast<long>(diff);
                resid.v[j] += term;
            }
        }
        tr.verified = lv_linf(resid).to_double() < tol;
        if (!tr.verified) throw PipError(L, "tower_pip: relation failed the unit-membership check");
        tr.recovered_exps = exps;
        for (std::size_t i = 0; i < UL.size(); ++i)
            if (exps[i] != 0) recovered.exps[UL[i]] = exps[i];
        result.levels.push_back(std::move(tr));
    }

    // Level-3 content: the leftover discrepancy lives in the rank-1 lattice
    // of xi_3 plus a sqrt(2)-power scale; recover both by rounding.
    LogVector w = tower_log_vector(gen, prec);
    {
        const LogVector base_log = log_embed(gen.base, prec);
        for (std::size_t j = 0; j < w.size(); ++j) w.v[j] -= base_log.v[j];
        for (const auto& [a, e] : recovered.exps) {
            const LogVector lu = unit_log_vector(a, p, prec);
            for (std::size_t j = 0; j < w.size(); ++j) {
                MpReal term = lu.v[j];
                term *= static_cast<long>(e);
                w.v[j] -= term;
            }
        }
    }
    const LogVector b3 = project_H0(unit_log_vector(3, p, prec));
    const LogVector wproj = project_H0(w);
    const std::int64_t e3 = round_even(lv_dot(wproj, b3) / lv_norm2(b3)).round_to_int64();
    MpReal mean(prec);
    {
        LogVector w2 = w;
        const LogVector l3 = unit_log_vector(3, p, prec);
        for (std::size_t j = 0; j < w2.size(); ++j) {
            MpReal term = l3.v[j];
            term *= static_cast<long>(e3);
            w2.v[j] -= term;
            mean += w2.v[j];
        }
        mean /= static_cast<long>(w2.size());
        const MpReal half_log2 = log(MpReal(2.0, prec)) / MpReal(2.0, prec);
        const std::int64_t s2e = round_even(mean / half_log2).round_to_int64();
        result.sqrt2_exp = s2e;
        // Final residual must vanish: the recovered decomposition explains
        // the whole log-vector.
        MpReal shift = half_log2;
        shift *= static_cast<long>(s2e);
        double worst = 0;
        for (std::size_t j = 0; j < w2.size(); ++j)
            worst = std::max(worst, std::abs((w2.v[j] - shift).to_double()));
        if (worst > tol) throw PipError(3, "tower_pip: level-3 residual does not vanish");
    }
    result.level3_exp = e3;

    TowerFactoredElement out = tfe_from_ring(gen.base);
    UnitExponents all = recovered;
    if (e3 != 0) all.exps[3] = e3;
    out = tfe_mul_unit(out, all);
    out.sqrt2_exp = result.sqrt2_exp;
    result.g = std::move(out);
    return result;
}

const ResourceCalibration& default_calibration() {
    static const ResourceCalibration cal;
    return cal;
}

ResourceCalibration calibration_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    ResourceCalibration c;
    c.version = j.at("version").get<std::string>();
    c.b_const = j.at("b_const").get<double>();
    c.c_level_gates = j.at("c_level_gates").get<double>();
    c.c_qubits = j.at("c_qubits").get<double>();
    c.c_phys_qubit = j.at("c_phys_qubit").get<double>();
    c.c_phys_gate = j.at("c_phys_gate").get<double>();
    return c;
}

std::string calibration_to_json(const ResourceCalibration& c) {
    nlohmann::json j;
    j["version"] = c.version;
    j["b_const"] = c.b_const;
    j["c_level_gates"] = c.c_level_gates;
    j["c_qubits"] = c.c_qubits;
    j["c_phys_qubit"] = c.c_phys_qubit;
    j["c_phys_gate"] = c.c_phys_gate;
    return j.dump(2);
}

ResourceEstimate resource_estimate(int k, int code_distance, double phys_error_target,
                                   const ResourceCalibration& cal) {
    if (k < 3 || k > 12) throw std::domain_error("resource_estimate: 3 <= k <= 12");
    ResourceEstimate est;
    est.k = k;
    est.code_distance = code_distance;
    est.phys_error_target = phys_error_target;
    est.calibration_version = cal.version;

    for (int L = 3; L <= k; ++L) {
        ResourceLevelRow row;
        row.L = L;
        row.new_units = L == 3 ? 1 : (1LL << (L - 3));
        row.b_bits = static_cast<std::int64_t>(
            std::ceil(cal.b_const * L * static_cast<double>(1LL << L)));
        row.hsp_repetitions = row.new_units;
        const double nL = static_cast<double>(1LL << (L - 1));
        const double log2n = L - 1.0;
        row.oracle_gates = nL * log2n;
        row.qft_gates = nL * log2n * log2n;
        row.level_gates = cal.c_level_gates * static_cast<double>(row.hsp_repetitions) *
                          static_cast<double>(row.new_units) *
                          (row.oracle_gates + row.qft_gates);
        row.level_qubits = static_cast<double>(row.new_units) * static_cast<double>(row.b_bits);
        est.per_level.push_back(row);

        est.logical_gates += row.level_gates;
        est.logical_qubits_formula += row.level_qubits;
        est.classical_bits += static_cast<double>(L) * L * std::pow(2.0, 7.0 * L - 15.0);
    }
    const auto& top = est.per_level.back();
    est.logical_qubits_calibrated =
        cal.c_qubits * static_cast<double>(top.new_units) *
        std::log2(static_cast<double>(top.b_bits));
    const double d2 = static_cast<double>(code_distance) * code_distance;
    est.physical_qubits = cal.c_phys_qubit * d2 * est.logical_qubits_calibrated;
    est.physical_gates = cal.c_phys_gate * d2 * est.logical_gates;
    return est;
}

std::string resource_table_text(const ResourceEstimate& est) {
    const auto& top = est.per_level.back();
    std::ostringstream os;
    char buf[128];
    os << "Resource                                              Estimated Value\n";
    os << "--------------------------------------------------------------------\n";
    auto line = [&](const std::string& label, double v, bool pow2 = false) {
        if (pow2)
            std::snprintf(buf, sizeof buf, "%-52s ~2^%.0f\n", label.c_str(), std::log2(v));
        else if (v >= 1e5)
            std::snprintf(buf, sizeof buf, "%-52s ~%.2g\n", label.c_str(), v);
        else
            std::snprintf(buf, sizeof buf, "%-52s %.0f\n", label.c_str(), v);
        os << buf;
    };
    line("New units at top level (Delta r_" + std::to_string(est.k) + ")",
         static_cast<double>(top.new_units));
    line("HSP repetitions at top level", static_cast<double>(top.hsp_repetitions));
    line("Oracle gates per HSP call (NTT, n=" +
             std::to_string(1 << (est.k - 1)) + ")",
         top.oracle_gates);
    line("Per-HSP QFT cost (top level)", top.qft_gates);
    line("Total logical gates (top level)", top.level_gates);
    line("Total logical gates (all levels)", est.logical_gates, true);
    line("Logical qubits", est.logical_qubits_calibrated);
    line("Logical qubits (formula Sum dr_L*b_L)", est.logical_qubits_formula);
    os << "--------------------------------------------------------------------\n";
    std::snprintf(buf, sizeof buf, "Physical qubits (surface code, d=%d, %.0e error)  ~%.2g\n",
                  est.code_distance, est.phys_error_target, est.physical_qubits);
    os << buf;
    line("Physical gate operations", est.physical_gates, true);
    return os.str();
}

}  // namespace sglat
