#include "sglat/schemes.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "sglat/params.hpp"

namespace sglat {

std::string family_name(Family f) {
    switch (f) {
        case Family::ModuleLwe: return "Module-LWE";
        case Family::NtruGpv: return "NTRU-GPV";
        case Family::ModuleLip: return "Module-LIP";
        case Family::Ntru: return "NTRU";
    }
    return "?";
}

double SchemeSpec::sigma() const {
    switch (sigma_choice) {
        case SigmaChoice::Sigma1: return sigma_d(1);
        case SigmaChoice::Sigma2: return sigma_d(2);
        case SigmaChoice::SigmaD: return sigma_d(d);
    }
    return 0.0;
}

double hawk_beta(int n, double sigma_ver) {
    if (n < 1) throw std::domain_error("hawk_beta: n must be >= 1");
    return sigma_ver * std::sqrt(8.0 * n);
}

namespace {

SchemeSpec mlkem(const std::string& name, int d) {
    SchemeSpec s;
    s.name = name;
    s.family = Family::ModuleLwe;
    s.d = d;
    s.n = 256;
    s.q = 3329.0;
    s.sigma_choice = SigmaChoice::SigmaD;
    s.threshold = 3329.0 / 2.0;
    s.tower_k = 9;
    return s;
}

SchemeSpec falcon(const std::string& name, int n, int k) {
    SchemeSpec s;
    s.name = name;
    s.family = Family::NtruGpv;
    s.d = 2;
    s.n = n;
    s.q = 12289.0;
    s.sigma_choice = SigmaChoice::Sigma2;
    s.threshold = 12289.0 / 2.0;
    s.tower_k = k;
    return s;
}

SchemeSpec hawk(const std::string& name, int n, int k, double sv, bool cond_broken) {
    SchemeSpec s;
    s.name = name;
    s.family = Family::ModuleLip;
    s.d = 2;
    s.n = n;
    s.sigma_ver = sv;
    s.sigma_choice = SigmaChoice::Sigma2;
    s.threshold = hawk_beta(n, sv);
    s.tower_k = k;
    s.conditionally_broken = cond_broken;
    return s;
}

SchemeSpec ntru(const std::string& name, int p, int q) {
    SchemeSpec s;
    s.name = name;
    s.family = Family::Ntru;
    s.d = 2;
    s.n = p - 1;  // printed as-is; not a 2-power, so formula-only
    s.q = static_cast<double>(q);
    s.sigma_choice = SigmaChoice::Sigma2;
    s.threshold = q / 2.0;
    s.formula_only = true;
    return s;
}

}  // namespace

std::vector<SchemeSpec> scheme_catalog() {
    std::vector<SchemeSpec> out;
    out.push_back(mlkem("ML-KEM-512", 2));
    out.push_back(mlkem("ML-KEM-768", 3));
    out.push_back(mlkem("ML-KEM-1024", 4));
    out.push_back(falcon("Falcon-512", 512, 10));
    out.push_back(falcon("Falcon-1024", 1024, 11));
    out.push_back(hawk("Hawk-256", 256, 9, 1.042, true));
    out.push_back(hawk("Hawk-512", 512, 10, 1.425, false));
    out.push_back(hawk("Hawk-1024", 1024, 11, 1.571, false));
    out.push_back(ntru("NTRU-HPS-2048-509", 509, 2048));
    out.push_back(ntru("NTRU-HPS-2048-677", 677, 2048));
    out.push_back(ntru("NTRU-HPS-4096-821", 821, 4096));
    out.push_back(ntru("NTRU-HRSS-701", 701, 8192));
    return out;
}

const SchemeSpec& scheme_by_name(const std::string& name) {
    static const std::vector<SchemeSpec> cat = scheme_catalog();
    for (const auto& s : cat) {
        // case-insensitive match
        if (s.name.size() == name.size()) {
            bool eq = true;
            for (std::size_t i = 0; i < name.size() && eq; ++i)
                eq = std::tolower(s.name[i]) == std::tolower(name[i]);
            if (eq) return s;
        }
    }
    throw std::invalid_argument("unknown scheme: " + name);
}

MarginReport margin_formula(const SchemeSpec& spec) {
    MarginReport r;
    r.scheme = spec.name;
    r.mode = "formula";
    r.gamma_th = gamma_threshold_sigma(spec.sigma(), spec.n, pinned().alpha_table);
    r.gamma99 = pinned().kappa_tail * r.gamma_th;
    r.threshold = spec.threshold;
    r.margin = spec.threshold / r.gamma99;
    r.broken = r.margin > 1.0;
    return r;
}

MarginReport margin_empirical(const SchemeSpec& spec, const GammaStats& stats) {
    MarginReport r;
    r.scheme = spec.name;
    r.mode = "empirical";
    r.gamma_th = gamma_threshold_sigma(spec.sigma(), spec.n, pinned().alpha_table);
    r.gamma99 = stats.p99;
    r.threshold = spec.threshold;
    r.margin = spec.threshold / r.gamma99;
    r.broken = r.margin > 1.0;
    return r;
}

std::string margin_table_text(const std::vector<MarginReport>& rows,
                              const std::vector<SchemeSpec>& specs) {
    std::ostringstream os;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-18s %-11s %2s %5s %6s %9s %9s %10s %8s\n", "Scheme", "Family",
                  "d", "n", "q", "gamma_th", "gamma_99%", "Threshold", "Margin");
    os << buf;
    os << std::string(84, '-') << "\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        const auto& s = specs[i];
        std::string qs = s.q ? std::to_string(static_cast<long>(*s.q)) : "--";
        std::snprintf(buf, sizeof buf, "%-18s %-11s %2d %5d %6s %9.1f %9.0f %10.1f %7.2fx%s\n",
                      r.scheme.c_str(), family_name(s.family).c_str(), s.d, s.n, qs.c_str(),
                      r.gamma_th, r.gamma99, r.threshold, r.margin,
                      s.conditionally_broken ? "*" : "");
        os << buf;
    }
    os << "* conditionally broken: median attack succeeds, the kappa=5 tail bound does not\n";
    return os.str();
}

}  // namespace sglat
