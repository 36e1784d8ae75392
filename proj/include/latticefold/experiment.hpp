#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "latticefold/mixers.hpp"
#include "latticefold/nelder_mead.hpp"
#include "latticefold/statevector.hpp"

namespace latticefold {

enum class CostVariant { Constant, Reduced };

struct ExperimentConfig {
    ProteinInstance instance;
    MixerKind mixer = MixerKind::XYSimple;
    int depth = 1;
    InitKind init = InitKind::Feasible;
    CostVariant cost_variant = CostVariant::Constant;
    int runs = 100;
    std::optional<int> shots;  // objective uses sampling when set, exact otherwise
    std::uint64_t seed = 0;
    double f_tolerance = 0.001;
    int max_evals = 2000;
    EvolutionConfig evolution;
    std::optional<double> lambda_olap;  // default_lambda_olap when empty
};

struct RunResult {
    std::vector<double> gammas;
    std::vector<double> betas;
    double expectation = 0.0;         // exact expectation at the optimum
    double ground_probability = 0.0;  // at the optimum
    int evals = 0;
};

struct ExperimentStats {
    double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;
};

struct ExperimentOutcome {
    std::vector<RunResult> per_run;
    ExperimentStats stats;  // of ground_probability
    double ground_energy = 0.0;
    int n_qubits = 0;
};

// Quantile with linear interpolation between closest ranks (inclusive);
// values must be sorted ascending.
double quantile(const std::vector<double>& sorted_values, double q);

ExperimentStats aggregate_ground_probability(const std::vector<RunResult>& runs);

// Per run r: draw gamma_i ~ U[0, 2pi), beta_i ~ U[0, pi) from the stream
// seeded with (seed xor r), minimize the expectation over the 2p angles with
// Nelder-Mead, and record the ground-state probability at the optimum.
// Runs are independent and execute in parallel; results are ordered by run
// index and reproducible from the seed.
ExperimentOutcome run_experiment(const ExperimentConfig& cfg);

// Same protocol on an explicit encoding (used by the divide-and-conquer
// splitting, where turns are pre-fixed).
ExperimentOutcome run_experiment_on(const Encoding& e, const ExperimentConfig& cfg);

struct SplitReport {
    struct SubInstance {
        int fixed_direction = 0;  // direction assigned to turn 1
        int n_qubits = 0;
        double ground_energy = 0.0;
        std::string ground_bitstring;      // lowest-energy sub-encoding state
        double ground_probability = 0.0;   // of the best run's final state
        double best_expectation = 0.0;
        std::vector<std::pair<std::string, int>> counts;  // sampling histogram
        int ground_count = 0;              // samples that hit the ground bitstring
        ExperimentOutcome outcome;
    };
    std::vector<SubInstance> subs;
    double combined_ground_energy = 0.0;
};

// Splits on the binary turn 1 (Right / Up), constant-folding the fixed turn
// into both sub-problems, runs each, and reports per-instance ground
// bitstrings with sampled counts when cfg.shots is set.
SplitReport divide_and_conquer(const ExperimentConfig& cfg);

}  // namespace latticefold
