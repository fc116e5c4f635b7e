#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sglat/lattice.hpp"
#include "sglat/units.hpp"

namespace sglat {

struct PipError : std::runtime_error {
    int failing_level;
    PipError(int level, const std::string& what)
        : std::runtime_error(what), failing_level(level) {}
};
struct NeedMoreSamplesError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotOfExpectedFormError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Generator-backed principal ideal. The optional Z-basis (HNF of the
// coefficient lattice of g*R) is used for verification on small instances.
struct PrincipalIdeal {
    TowerParams level;
    TowerFactoredElement generator;
    std::optional<std::vector<std::vector<mpz_class>>> z_basis;
};

PrincipalIdeal ideal_from_generator(const RingElement& g);
PrincipalIdeal ideal_from_generator(const TowerFactoredElement& g);

// Row-HNF basis of the coefficient lattice {coeffs(g*x) : x in R}.
std::vector<std::vector<mpz_class>> ideal_z_basis(const RingElement& g);

// K_L / K_L^+ norm: generator g * conj(g), conjugation-invariant.
PrincipalIdeal relative_norm_ideal(const PrincipalIdeal& I);

// Base case at level 3: ideals (torsion * unit * sqrt2^e), |Nm| = 4^|e|.
// The exponent is recovered by rounding; throws NotOfExpectedFormError when
// the norm is not a power of 4.
struct PipBaseResult {
    std::int64_t e = 0;
    TowerFactoredElement generator;  // sqrt2^e
};
PipBaseResult pip_base_case(const PrincipalIdeal& I);

// Abelian HSP instance for one tower level, classically emulated: the
// hidden relation lattice is carried as stand-in ground truth, and samples
// are drawn uniformly from its annihilator mod 2^mod_bits.
struct HSPInstance {
    int L = 0;
    int num_registers = 0;              // canonical instances: 2^(L-3)
    std::int64_t b_bits = 0;            // paper precision b_L = 10 * L * 2^L
    int mod_bits = 0;                   // working modulus bits, min(b_L, 62)
    std::vector<std::vector<mpz_class>> relation_lattice;  // rows

    mpz_class modulus() const { return mpz_class(1) << mod_bits; }
};

// Canonical instance over the Delta_r new units at level L (no relations:
// the new units are multiplicatively independent).
HSPInstance hsp_instance(int L);
// Instance with an explicitly planted relation lattice (num_registers =
// row width).
HSPInstance hsp_instance_planted(int L, std::vector<std::vector<mpz_class>> rows);

// One uniform sample from the annihilator of the relation lattice.
std::vector<mpz_class> hsp_sample(const HSPInstance& inst, std::uint64_t seed);

// Recover the relation lattice from annihilator samples: kernel mod 2^b,
// then LLL. Returns short rows first. Throws NeedMoreSamplesError when the
// samples do not pin the lattice down (recovered rank too large).
std::vector<std::vector<mpz_class>> recover_relations(
    const std::vector<std::vector<mpz_class>>& samples, const HSPInstance& inst);

// Integer basis of {x in Z^t : A x == 0 mod N}.
std::vector<std::vector<mpz_class>> kernel_mod(const std::vector<std::vector<mpz_class>>& A,
                                               const mpz_class& N);

struct LevelTranscript {
    int L = 0;
    int num_samples = 0;
    std::vector<std::int64_t> recovered_exps;  // over new_units_at_level(L)
    bool verified = false;
};

struct TowerPipResult {
    TowerFactoredElement g;
    std::vector<LevelTranscript> levels;   // L = k down to 4
    std::int64_t level3_exp = 0;           // xi_3 exponent
    std::int64_t sqrt2_exp = 0;            // base-case content
};

// Classical emulation of the tower PIP on generator-backed ideals: per
// level, the new-unit content of the generator is re-derived through the
// HSP stand-in + LLL + log-membership checks, the level-3 content through
// the base-case rounding rule. The output is a tower-factored generator of
// the same ideal.
TowerPipResult tower_pip(const PrincipalIdeal& I, std::uint64_t seed);

// --- quantum resource estimator -------------------------------------------

struct ResourceCalibration {
    std::string version = "1";
    double b_const = 10.0;        // b_L = ceil(b_const * L * 2^L)
    double c_level_gates = 1.1921;
    double c_qubits = 1.4120;
    double c_phys_qubit = 1.1111;
    double c_phys_gate = 1.5325;
};
const ResourceCalibration& default_calibration();
ResourceCalibration calibration_from_json(const std::string& text);
std::string calibration_to_json(const ResourceCalibration& c);

struct ResourceLevelRow {
    int L = 0;
    std::int64_t new_units = 0;       // Delta r_L
    std::int64_t b_bits = 0;
    std::int64_t hsp_repetitions = 0;
    double oracle_gates = 0;          // n_L log2 n_L
    double qft_gates = 0;             // n_L log2^2 n_L
    double level_gates = 0;
    double level_qubits = 0;          // Delta r_L * b_L
};

struct ResourceEstimate {
    int k = 0;
    int code_distance = 0;
    double phys_error_target = 0;
    std::vector<ResourceLevelRow> per_level;
    double logical_gates = 0;             // sum of level gates
    double logical_qubits_formula = 0;    // sum Delta r_L * b_L
    double logical_qubits_calibrated = 0; // table-calibrated figure
    double classical_bits = 0;
    double physical_qubits = 0;
    double physical_gates = 0;
    std::string calibration_version;
};

ResourceEstimate resource_estimate(int k, int code_distance = 30,
                                   double phys_error_target = 1e-15,
                                   const ResourceCalibration& cal = default_calibration());

std::string resource_table_text(const ResourceEstimate& est);

}  // namespace sglat
