#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sglat/montecarlo.hpp"

namespace sglat {

enum class Family { ModuleLwe, NtruGpv, ModuleLip, Ntru };
std::string family_name(Family f);

enum class SigmaChoice { Sigma1, Sigma2, SigmaD };

struct SchemeSpec {
    std::string name;
    Family family;
    int d = 0;                       // effective module rank
    int n = 0;                       // ring degree (NTRU rows: p - 1)
    std::optional<double> q;         // modulus; absent for Hawk
    std::optional<double> sigma_ver; // Hawk only
    SigmaChoice sigma_choice = SigmaChoice::SigmaD;
    double threshold = 0.0;          // q/2, or sigma_ver * sqrt(8n) for Hawk
    std::optional<int> tower_k;      // present iff n is a 2-power
    bool formula_only = false;       // no ring-level attack demo possible
    bool conditionally_broken = false;

    double sigma() const;
};

// The 12 catalog rows with the published parameters.
std::vector<SchemeSpec> scheme_catalog();
const SchemeSpec& scheme_by_name(const std::string& name);

double hawk_beta(int n, double sigma_ver);

struct MarginReport {
    std::string scheme;
    std::string mode;     // "formula" or "empirical"
    double gamma_th = 0.0;
    double gamma99 = 0.0; // 5 * gamma_th, or stats p99
    double threshold = 0.0;
    double margin = 0.0;  // threshold / gamma99
    bool broken = false;  // margin > 1
};

MarginReport margin_formula(const SchemeSpec& spec);
MarginReport margin_empirical(const SchemeSpec& spec, const GammaStats& stats);

std::string margin_table_text(const std::vector<MarginReport>& rows,
                              const std::vector<SchemeSpec>& specs);

}  // namespace sglat
