// experiments.hpp - reproducible experiment runner; each family emits one CSV
// and one metadata file and reports pass/fail per check.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace astk {

struct ExperimentSpec {
    std::string id; // identity_checks | dipole_remainder | uapp_convergence |
                    // boundary_error_scaling | energy_signs | fp_stationary |
                    // separation_diagnostics
    std::map<std::string, std::string> params;
    std::string out_dir = "out";
    std::uint64_t seed = 20240817;
    double tolerance_scale = 1.0;
    int threads = 0;

    double get(const std::string& key, double fallback) const;
    long get_long(const std::string& key, long fallback) const;
    std::vector<double> get_list(const std::string& key,
                                 const std::vector<double>& fallback) const;
    std::string get_str(const std::string& key, const std::string& fallback) const;
};

struct CheckResult {
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double threshold = 0.0;
};

struct ExperimentResult {
    std::string id;
    bool passed = true;
    std::vector<CheckResult> checks;
    std::string csv_path, meta_path;
};

/// all known experiment ids, in canonical run order
const std::vector<std::string>& experiment_ids();

ExperimentSpec default_spec(const std::string& id);

/// specs from a structured-text file: `experiment = <id>|all`, plus parameter
/// overrides; `seed`, `out_dir`, `tolerance_scale` are recognized everywhere
std::vector<ExperimentSpec> parse_spec_file(const std::string& path);

ExperimentResult run_experiment(const ExperimentSpec& spec);

struct RunSummary {
    int total = 0;
    int failed = 0;
    std::vector<ExperimentResult> results;

    int exit_code() const { return failed == 0 ? 0 : 1; }
};

/// sequential execution; a failure is recorded and the remaining experiments
/// still run
RunSummary run_all(const std::vector<ExperimentSpec>& specs);

} // namespace astk
