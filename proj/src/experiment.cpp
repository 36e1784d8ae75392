#include "latticefold/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

namespace latticefold {

namespace {

double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct Problem {
    Encoding encoding;
    CostHamiltonian cost;
    MixerHamiltonian mixer;
    std::vector<std::uint64_t> ground_indices;
    double ground_energy = 0.0;
};

Problem build_problem(const Encoding& e, const ExperimentConfig& cfg) {
    Problem p;
    p.encoding = e;
    double lambda = cfg.lambda_olap.value_or(default_lambda_olap(cfg.instance));
    bool skip_short = cfg.cost_variant == CostVariant::Reduced && mixer_covers_short_range(cfg.mixer);
    bool skip_long = cfg.cost_variant == CostVariant::Reduced && mixer_covers_long_range(cfg.mixer);
    p.cost = build_cost(e, cfg.instance, lambda, skip_short, skip_long);
    p.mixer = build_mixer(e, cfg.mixer);

    auto table = enumerate_folds(cfg.instance);
    p.ground_energy = table.ground_energy;
    for (int i : table.ground_indices) {
        const auto& fold = table.folds[i];
        // Folds that violate the encoding's fixed turns belong to the other
        // sub-instance after a split.
        try {
            p.ground_indices.push_back(encode(e, fold).index());
        } catch (const std::invalid_argument&) {
        }
    }
    std::sort(p.ground_indices.begin(), p.ground_indices.end());
    return p;
}

RunResult single_run(const Problem& prob, const ExperimentConfig& cfg, int run_index) {
    std::mt19937_64 rng(cfg.seed ^ static_cast<std::uint64_t>(run_index));
    RunResult r;
    if (cfg.depth == 0) {
        auto q = run_qaoa(prob.encoding, prob.cost, prob.mixer, QaoaSchedule{}, cfg.init,
                          cfg.evolution, prob.ground_indices);
        r.expectation = q.expectation;
        r.ground_probability = q.ground_probability;
        return r;
    }

    std::vector<double> x0(2 * cfg.depth);
    for (int i = 0; i < cfg.depth; ++i) x0[i] = uniform_unit(rng) * 2.0 * std::numbers::pi;
    for (int i = 0; i < cfg.depth; ++i) x0[cfg.depth + i] = uniform_unit(rng) * std::numbers::pi;

    auto diag = prob.cost.diagonal();
    std::uint64_t sample_seed = rng();
    auto simulate = [&](const std::vector<double>& x) {
        Statevector psi = cfg.init == InitKind::UniformAll
                              ? prepare_uniform(prob.encoding.n_qubits)
                              : prepare_feasible(prob.encoding, FeasibleMode::XY);
        for (int i = 0; i < cfg.depth; ++i) {
            psi = evolve_cost(std::move(psi), diag, x[i]);
            psi = evolve_mixer(std::move(psi), prob.mixer, x[cfg.depth + i], cfg.evolution);
        }
        return psi;
    };
    auto objective = [&](const std::vector<double>& x) {
        Statevector psi = simulate(x);
        if (cfg.shots) return sampled_expectation(psi, prob.cost, *cfg.shots, sample_seed);
        return expectation(psi, diag);
    };

    NelderMeadConfig nm;
    nm.f_tolerance = cfg.f_tolerance;
    nm.max_evals = cfg.max_evals;
    auto best = nelder_mead(objective, x0, nm);

    Statevector final_state = simulate(best.x);
    r.gammas.assign(best.x.begin(), best.x.begin() + cfg.depth);
    r.betas.assign(best.x.begin() + cfg.depth, best.x.end());
    r.expectation = expectation(final_state, diag);
    r.ground_probability = ground_state_probability(final_state, prob.ground_indices);
    r.evals = best.evals;
    return r;
}

}  // namespace

double quantile(const std::vector<double>& sorted_values, double q) {
    if (sorted_values.empty()) throw std::invalid_argument("quantile of an empty set");
    if (sorted_values.size() == 1) return sorted_values[0];
    double h = q * static_cast<double>(sorted_values.size() - 1);
    std::size_t lo = static_cast<std::size_t>(h);
    if (lo + 1 >= sorted_values.size()) return sorted_values.back();
    double frac = h - static_cast<double>(lo);
    return sorted_values[lo] + frac * (sorted_values[lo + 1] - sorted_values[lo]);
}

ExperimentStats aggregate_ground_probability(const std::vector<RunResult>& runs) {
    std::vector<double> v;
    v.reserve(runs.size());
    for (const auto& r : runs) v.push_back(r.ground_probability);
    std::sort(v.begin(), v.end());
    ExperimentStats s;
    s.min = v.front();
    s.q1 = quantile(v, 0.25);
    s.median = quantile(v, 0.5);
    s.q3 = quantile(v, 0.75);
    s.max = v.back();
    return s;
}

ExperimentOutcome run_experiment_on(const Encoding& e, const ExperimentConfig& cfg) {
    if (cfg.runs < 1) throw std::invalid_argument("runs must be >= 1");
    if (cfg.depth < 0) throw std::invalid_argument("depth must be >= 0");
    Problem prob = build_problem(e, cfg);

    ExperimentOutcome out;
    out.per_run.resize(cfg.runs);
    out.ground_energy = prob.ground_energy;
    out.n_qubits = e.n_qubits;

    unsigned n_threads = std::min<unsigned>(std::thread::hardware_concurrency(),
                                            static_cast<unsigned>(cfg.runs));
    if (n_threads <= 1) {
        for (int r = 0; r < cfg.runs; ++r) out.per_run[r] = single_run(prob, cfg, r);
    } else {
        std::atomic<int> next{0};
        auto worker = [&] {
            for (int r = next.fetch_add(1); r < cfg.runs; r = next.fetch_add(1)) {
                out.per_run[r] = single_run(prob, cfg, r);
            }
        };
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    out.stats = aggregate_ground_probability(out.per_run);
    return out;
}

ExperimentOutcome run_experiment(const ExperimentConfig& cfg) {
    return run_experiment_on(build_encoding(cfg.instance.lattice, cfg.instance.n_residues()), cfg);
}

SplitReport divide_and_conquer(const ExperimentConfig& cfg) {
    Encoding full = build_encoding(cfg.instance.lattice, cfg.instance.n_residues());
    int variable = 0;
    for (int k = 0; k < n_dirs(full.lattice); ++k) {
        if (full.slot(1, k).is_variable()) ++variable;
    }
    if (variable != 2) throw std::invalid_argument("instance is not splittable on turn 1");

    SplitReport report;
    report.combined_ground_energy = 1e300;
    for (int dir : {kRight, kUp}) {
        Encoding sub = fix_turn(full, 1, dir);
        SplitReport::SubInstance si;
        si.fixed_direction = dir;
        si.n_qubits = sub.n_qubits;

        Problem prob = build_problem(sub, cfg);
        // ground data restricted to this half of the fold space
        auto table = enumerate_folds(cfg.instance);
        double best_e = 1e300;
        Bitstring best_b;
        for (size_t i = 0; i < table.folds.size(); ++i) {
            if (table.folds[i].turns[1] != dir) continue;
            if (table.energies[i] < best_e) {
                best_e = table.energies[i];
                best_b = encode(sub, table.folds[i]);
            }
        }
        si.ground_energy = best_e;
        si.ground_bitstring = best_b.to_string();
        report.combined_ground_energy = std::min(report.combined_ground_energy, best_e);

        // the sub-problem optimizes toward its own ground states
        std::vector<std::uint64_t> sub_ground;
        for (size_t i = 0; i < table.folds.size(); ++i) {
            if (table.folds[i].turns[1] == dir && table.energies[i] == best_e) {
                sub_ground.push_back(encode(sub, table.folds[i]).index());
            }
        }
        std::sort(sub_ground.begin(), sub_ground.end());
        Problem sub_prob = std::move(prob);
        sub_prob.ground_indices = sub_ground;
        sub_prob.ground_energy = best_e;

        ExperimentConfig sub_cfg = cfg;
        ExperimentOutcome outcome;
        outcome.per_run.resize(sub_cfg.runs);
        outcome.ground_energy = best_e;
        outcome.n_qubits = sub.n_qubits;
        for (int r = 0; r < sub_cfg.runs; ++r) outcome.per_run[r] = single_run(sub_prob, sub_cfg, r);
        outcome.stats = aggregate_ground_probability(outcome.per_run);

        int best_run = 0;
        for (int r = 1; r < sub_cfg.runs; ++r) {
            if (outcome.per_run[r].expectation < outcome.per_run[best_run].expectation) best_run = r;
        }
        si.best_expectation = outcome.per_run[best_run].expectation;
        si.ground_probability = outcome.per_run[best_run].ground_probability;

        if (cfg.shots) {
            // re-simulate the winning run's final state and sample it
            QaoaSchedule sched{outcome.per_run[best_run].gammas, outcome.per_run[best_run].betas};
            auto q = run_qaoa(sub, sub_prob.cost, sub_prob.mixer, sched, cfg.init, cfg.evolution,
                              sub_ground);
            auto samples = sample_indices(q.state, *cfg.shots, cfg.seed ^ 0x5a5a5a5aULL);
            std::map<std::string, int> hist;
            for (auto idx : samples) ++hist[Bitstring::from_index(idx, sub.n_qubits).to_string()];
            for (auto& [s, c] : hist) {
                si.counts.emplace_back(s, c);
                if (s == si.ground_bitstring) si.ground_count = c;
            }
        }
        si.outcome = std::move(outcome);
        report.subs.push_back(std::move(si));
    }
    return report;
}

}  // namespace latticefold
