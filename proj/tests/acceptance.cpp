// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. argv[1] must point at the CLI binary (used by the determinism
// criterion).

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "latticefold/experiment.hpp"
#include "latticefold/gatecost.hpp"
#include "support/dense_reference.hpp"

using namespace latticefold;
namespace ts = latticefold::testsupport;
using clk = std::chrono::steady_clock;

namespace {

int g_failures = 0;

struct Criterion {
    std::string label;
    clk::time_point start = clk::now();
    bool ok = true;
    std::string detail;

    explicit Criterion(std::string l) : label(std::move(l)) {}

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }

    void finish() {
        double secs = std::chrono::duration<double>(clk::now() - start).count();
        std::printf("%s %s (%.2f s)%s%s\n", ok ? "PASS" : "FAIL", label.c_str(), secs,
                    detail.empty() ? "" : " -- ", detail.c_str());
        std::fflush(stdout);
        if (!ok) ++g_failures;
    }

    double elapsed() const { return std::chrono::duration<double>(clk::now() - start).count(); }
};

std::string random_hp(std::mt19937_64& rng, int n) {
    std::string s(n, 'P');
    for (auto& c : s) c = (rng() & 1) ? 'H' : 'P';
    return s;
}

struct SizeCase {
    LatticeKind lattice;
    int n_residues;
};

const SizeCase kOracleSizes[] = {
    {LatticeKind::Planar, 4}, {LatticeKind::Planar, 5}, {LatticeKind::Planar, 6},
    {LatticeKind::Cubic, 4},  {LatticeKind::Cubic, 5},
};

void criterion_1_encoding_counts() {
    Criterion c("criterion 1: qubit-count formulas, N in [4,20]");
    for (int n = 4; n <= 20; ++n) {
        c.require(build_encoding(LatticeKind::Planar, n).n_qubits == 4 * n - 10,
                  "planar count off at N=" + std::to_string(n));
        c.require(build_encoding(LatticeKind::Cubic, n).n_qubits == 6 * n - 17,
                  "cubic count off at N=" + std::to_string(n));
    }
    c.require(c.elapsed() < 1.0, "runtime exceeded 1 s");
    c.finish();
}

void criterion_2_oracle_equivalence() {
    Criterion c("criterion 2: cost Hamiltonian matches the folding oracle");
    std::mt19937_64 rng(20260808);
    for (const auto& sz : kOracleSizes) {
        auto e = build_encoding(sz.lattice, sz.n_residues);
        auto xy = feasible_states(e, FeasibleMode::XY);
        for (int round = 0; round < 20; ++round) {
            auto inst = make_instance(random_hp(rng, sz.n_residues), InteractionModel::hp(), sz.lattice);
            double lambda = default_lambda_olap(inst);
            auto h = build_cost(e, inst, lambda, false, false);
            auto diag = h.diagonal();  // exhaustive over all bitstrings
            auto table = enumerate_folds(inst);

            double best_feasible = 1e300;
            std::set<std::uint64_t> argmin;
            for (const auto& b : xy) {
                double v = diag[b.index()];
                if (v < best_feasible) {
                    best_feasible = v;
                    argmin.clear();
                }
                if (v == best_feasible) argmin.insert(b.index());
            }
            for (const auto& b : xy) {
                auto fold = decode(e, b);
                if (is_self_avoiding(*fold)) {
                    double want = classical_energy(inst, *fold);
                    c.require(diag[b.index()] == want,
                              "feasible energy mismatch, seq " + inst.sequence);
                } else {
                    c.require(diag[b.index()] >= best_feasible + lambda / 2 - 1e-9,
                              "overlap penalty below bound, seq " + inst.sequence);
                }
            }
            std::set<std::uint64_t> oracle_set;
            for (int i : table.ground_indices) {
                oracle_set.insert(encode(e, table.folds[i]).index());
            }
            c.require(argmin == oracle_set, "feasible argmin differs from oracle, seq " + inst.sequence);
            c.require(best_feasible == table.ground_energy,
                      "feasible minimum differs from oracle energy, seq " + inst.sequence);
        }
    }
    c.require(c.elapsed() < 300.0, "runtime exceeded 5 min");
    c.finish();
}

void criterion_3_gadget_geometry() {
    Criterion c("criterion 3: overlap and adjacency gadgets match coordinate geometry");
    for (const auto& sz : kOracleSizes) {
        auto e = build_encoding(sz.lattice, sz.n_residues);
        auto xy = feasible_states(e, FeasibleMode::XY);
        std::vector<std::vector<Point>> pts;
        pts.reserve(xy.size());
        for (const auto& b : xy) pts.push_back(coordinates(*decode(e, b)));

        for (int i = 0; i < sz.n_residues - 1; ++i) {
            for (int j = i + 2; j <= sz.n_residues - 1; j += 2) {
                auto olap = h_olap_pair(e, i, j);
                for (size_t s = 0; s < xy.size(); ++s) {
                    double want = pts[s][i] == pts[s][j] ? 1.0 : 0.0;
                    c.require(olap.evaluate(xy[s]) == want, "overlap gadget mismatch");
                }
            }
        }
        for (auto [i, j] : contact_pairs(sz.n_residues)) {
            for (int k = 0; k < n_dirs(sz.lattice); ++k) {
                auto adj = adjacency(e, k, i, j);
                Point u = unit_vector(sz.lattice, k);
                for (size_t s = 0; s < xy.size(); ++s) {
                    Point d{pts[s][j].x - pts[s][i].x, pts[s][j].y - pts[s][i].y,
                            pts[s][j].z - pts[s][i].z};
                    double want = d == u ? 1.0 : 0.0;
                    c.require(adj.evaluate(xy[s]) == want, "adjacency gadget mismatch");
                }
            }
        }
    }
    c.finish();
}

// shared between criteria 4 and 5: dense eigendecompositions per size/mixer
struct DenseRefs {
    std::map<std::pair<int, int>, ts::HermitianExponential> expos;  // (size idx, mixer idx)
    std::vector<Encoding> encodings;
    std::vector<std::vector<MixerHamiltonian>> mixers;
};

const SizeCase kSimSizes[] = {
    {LatticeKind::Planar, 4},  // 6 qubits
    {LatticeKind::Cubic, 4},   // 7 qubits
    {LatticeKind::Planar, 5},  // 10 qubits
};

DenseRefs build_dense_refs() {
    DenseRefs refs;
    for (int s = 0; s < 3; ++s) {
        auto e = build_encoding(kSimSizes[s].lattice, kSimSizes[s].n_residues);
        refs.encodings.push_back(e);
        std::vector<MixerHamiltonian> row;
        int mi = 0;
        for (MixerKind kind : kAllMixers) {
            row.push_back(build_mixer(e, kind));
            auto dense = ts::dense_matrix(row.back().pauli);
            refs.expos.emplace(std::pair{s, mi}, ts::HermitianExponential(
                                                     dense, std::size_t{1} << e.n_qubits));
            ++mi;
        }
        refs.mixers.push_back(std::move(row));
    }
    return refs;
}

void criterion_4_mixer_properties(const DenseRefs& refs) {
    Criterion c("criterion 4: mixer Hermiticity, subspace preservation, commutators");
    std::mt19937_64 rng(44);
    std::uniform_real_distribution<double> beta_dist(0.0, 3.14159265);

    for (int s = 0; s < 3; ++s) {
        const auto& e = refs.encodings[s];
        std::size_t dim = std::size_t{1} << e.n_qubits;
        std::vector<std::vector<bool>> feasible_of_mode(2, std::vector<bool>(dim, false));
        for (const auto& b : feasible_states(e, FeasibleMode::XY)) {
            feasible_of_mode[0][b.index()] = true;
        }
        for (const auto& b : feasible_states(e, FeasibleMode::XZ)) {
            feasible_of_mode[1][b.index()] = true;
        }
        for (int mi = 0; mi < 7; ++mi) {
            const auto& mixer = refs.mixers[s][mi];
            auto dense = ts::dense_matrix(mixer.pauli);
            c.require(ts::hermiticity_defect(dense, dim) < 1e-12,
                      "non-Hermitian mixer " + mixer_name(mixer.kind));
            auto mode = mixer_feasible_mode(mixer.kind);
            if (!mode) continue;
            const auto& ok = feasible_of_mode[*mode == FeasibleMode::XY ? 0 : 1];
            const auto& expo = refs.expos.at({s, mi});
            auto psi = prepare_feasible(e, FeasibleMode::XY);
            for (int round = 0; round < 20; ++round) {
                auto evolved = expo.evolve(psi.amps, beta_dist(rng));
                double leak = 0.0;
                for (std::size_t i = 0; i < dim; ++i) {
                    if (!ok[i]) leak += std::norm(evolved[i]);
                }
                c.require(leak < 1e-10, "feasible-subspace leakage in " + mixer_name(mixer.kind));
            }
        }
    }

    // commutator probe on the HPPH instance, dense route
    auto e = refs.encodings[0];
    auto inst = make_instance("HPPH", InteractionModel::hp(), LatticeKind::Planar);
    auto h_c = build_cost(e, inst, default_lambda_olap(inst), false, false);
    auto a = ts::dense_matrix(h_c.pauli());
    auto v = random_statevector(6, 123).amps;
    for (int mi = 0; mi < 7; ++mi) {
        auto b = ts::dense_matrix(refs.mixers[0][mi].pauli);
        auto ab_v = ts::dense_apply(a, ts::dense_apply(b, v, 64), 64);
        auto ba_v = ts::dense_apply(b, ts::dense_apply(a, v, 64), 64);
        double nrm = 0.0;
        for (size_t i = 0; i < 64; ++i) nrm += std::norm(ab_v[i] - ba_v[i]);
        c.require(std::sqrt(nrm) > 1e-6,
                  "cost commutes with mixer " + mixer_name(refs.mixers[0][mi].kind));
    }
    c.finish();
}

void criterion_5_simulator_crosscheck(const DenseRefs& refs) {
    Criterion c("criterion 5: exact QAOA evolution matches the dense reference");
    std::mt19937_64 rng(55);
    std::uniform_real_distribution<double> gamma_dist(0.0, 6.2831853);
    std::uniform_real_distribution<double> beta_dist(0.0, 3.14159265);

    for (int s = 0; s < 3; ++s) {
        const auto& e = refs.encodings[s];
        std::size_t dim = std::size_t{1} << e.n_qubits;
        std::string seq(e.n_residues, 'H');
        seq[1] = 'P';
        auto inst = make_instance(seq, InteractionModel::hp(), kSimSizes[s].lattice);
        auto h_c = build_cost(e, inst, default_lambda_olap(inst), false, false);
        auto diag = h_c.diagonal();
        auto ground = ground_state_indices(e, enumerate_folds(inst));

        for (int mi = 0; mi < 7; ++mi) {
            const auto& mixer = refs.mixers[s][mi];
            const auto& expo = refs.expos.at({s, mi});
            QaoaSchedule sched{{gamma_dist(rng), gamma_dist(rng)}, {beta_dist(rng), beta_dist(rng)}};

            auto fast = run_qaoa(e, h_c, mixer, sched, InitKind::Feasible, {}, ground);
            c.require(std::abs(fast.state.norm() - 1.0) < 1e-10, "norm drift");

            auto ref = prepare_feasible(e, FeasibleMode::XY).amps;
            for (int step = 0; step < 2; ++step) {
                for (std::size_t i = 0; i < dim; ++i) {
                    double phi = -sched.gammas[step] * diag[i];
                    ref[i] *= cplx{std::cos(phi), std::sin(phi)};
                }
                ref = expo.evolve(ref, sched.betas[step]);
            }
            double diff = 0.0;
            for (std::size_t i = 0; i < dim; ++i) diff += std::norm(fast.state.amps[i] - ref[i]);
            c.require(std::sqrt(diff) < 1e-8,
                      "vector error " + std::to_string(std::sqrt(diff)) + " in " +
                          mixer_name(mixer.kind) + " at " + std::to_string(e.n_qubits) + " qubits");

            // per-step norm drift of the building blocks
            auto psi = prepare_feasible(e, FeasibleMode::XY);
            psi = evolve_cost(std::move(psi), diag, sched.gammas[0]);
            c.require(std::abs(psi.norm() - 1.0) < 1e-10, "cost-phase norm drift");
            psi = evolve_mixer(std::move(psi), mixer, sched.betas[0], {});
            c.require(std::abs(psi.norm() - 1.0) < 1e-10, "mixer norm drift");
        }
    }
    c.finish();
}

void criterion_6_gate_costs() {
    Criterion c("criterion 6: CNOT cost model and routing overhead");
    c.require(term_cnot_cost(3) == std::pair{4L, 1L}, "3-local term cost");
    for (int k = 1; k <= 10; ++k) {
        c.require(term_cnot_cost(k) == std::pair{2L * k - 2L, 1L},
                  "2k-2 rule at k=" + std::to_string(k));
    }
    HardwareGraph path;
    for (int i = 0; i < 12; ++i) path.nodes.push_back(i);
    for (int i = 0; i + 1 < 12; ++i) path.edges.emplace_back(i, i + 1);
    std::map<int, int> placement;
    for (int i = 0; i < 12; ++i) placement[i] = i;
    for (int d = 1; d <= 11; ++d) {
        PauliSum term(12);
        term.add(PauliString{0, std::uint64_t{1} | (std::uint64_t{1} << d)}, 1.0);
        c.require(routing_overhead(term, path, placement) == 3 * (d - 1),
                  "path overhead at distance " + std::to_string(d));
    }
    c.finish();
}

void criterion_7_experiment_ordering() {
    Criterion c("criterion 7: mixer-comparison orderings on the 4-residue instance");
    auto base = [] {
        ExperimentConfig cfg;
        cfg.instance = make_instance("HPPH", InteractionModel::hp(), LatticeKind::Planar);
        cfg.depth = 1;
        cfg.cost_variant = CostVariant::Constant;
        cfg.runs = 100;
        cfg.f_tolerance = 0.001;
        cfg.seed = 7;
        return cfg;
    };

    // (a) feasible init: the simple custom mixers dominate X by >= 1.5x
    double medians[3];
    MixerKind part_a[] = {MixerKind::X, MixerKind::XYSimple, MixerKind::XZSimple};
    for (int i = 0; i < 3; ++i) {
        auto cfg = base();
        cfg.init = InitKind::Feasible;
        cfg.mixer = part_a[i];
        medians[i] = run_experiment(cfg).stats.median;
    }
    c.require(medians[1] >= 1.5 * medians[0],
              "xy-simple median " + std::to_string(medians[1]) + " vs x " + std::to_string(medians[0]));
    c.require(medians[2] >= 1.5 * medians[0],
              "xz-simple median " + std::to_string(medians[2]) + " vs x " + std::to_string(medians[0]));

    // (b) uniform init: X is not dominated by all six custom mixers
    double x_median = 0.0;
    bool some_custom_not_better = false;
    for (MixerKind kind : kAllMixers) {
        auto cfg = base();
        cfg.init = InitKind::UniformAll;
        cfg.mixer = kind;
        double median = run_experiment(cfg).stats.median;
        if (kind == MixerKind::X) {
            x_median = median;
        } else if (median <= x_median) {
            some_custom_not_better = true;
        }
    }
    c.require(some_custom_not_better, "every custom mixer beat X from the uniform start");
    c.require(c.elapsed() < 900.0, "runtime exceeded 15 min");
    c.finish();
}

void criterion_8_divide_and_conquer() {
    Criterion c("criterion 8: divide-and-conquer sub-instances");
    ExperimentConfig cfg;
    cfg.instance = make_instance("HPPH", InteractionModel::hp(), LatticeKind::Planar);
    cfg.mixer = MixerKind::XYSimple;
    cfg.depth = 1;
    cfg.init = InitKind::UniformAll;
    cfg.runs = 2;
    cfg.f_tolerance = 0.5;
    cfg.seed = 1;
    auto report = divide_and_conquer(cfg);
    auto table = enumerate_folds(cfg.instance);
    c.require(report.subs.size() == 2, "expected two sub-instances");
    c.require(report.subs[0].n_qubits == 4 && report.subs[1].n_qubits == 4,
              "sub-instances are not 4-qubit problems");
    c.require(report.combined_ground_energy == table.ground_energy,
              "combined ground energy differs from the oracle");
    bool found = false;
    for (const auto& sub : report.subs) {
        if (sub.ground_energy == table.ground_energy) {
            found = true;
            c.require(sub.ground_bitstring == "0010",
                      "winning sub-instance ground bitstring is " + sub.ground_bitstring);
        }
    }
    c.require(found, "no sub-instance reaches the oracle ground energy");
    c.require(c.elapsed() < 1.0, "runtime exceeded 1 s");
    c.finish();
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void criterion_9_determinism(const std::string& cli) {
    Criterion c("criterion 9: byte-identical results for identical config and seed");
    namespace fs = std::filesystem;
    fs::path work = fs::path("acceptance_determinism");
    fs::remove_all(work);
    fs::create_directories(work);
    std::string base_cmd = "\"" + cli +
                           "\" run --seq HPPH --mixer xz-simple --p 1 --runs 5 --seed 42 --out ";
    int rc1 = std::system((base_cmd + (work / "a").string() + " > /dev/null").c_str());
    int rc2 = std::system((base_cmd + (work / "b").string() + " > /dev/null").c_str());
    c.require(rc1 == 0 && rc2 == 0, "CLI invocation failed");
    if (rc1 == 0 && rc2 == 0) {
        auto ja = slurp(work / "a" / "results.json");
        auto jb = slurp(work / "b" / "results.json");
        c.require(!ja.empty() && ja == jb, "results.json differs between invocations");
        auto ca = slurp(work / "a" / "results.csv");
        auto cb = slurp(work / "b" / "results.csv");
        c.require(!ca.empty() && ca == cb, "results.csv differs between invocations");
    }
    fs::remove_all(work);
    c.finish();
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <path-to-cli>\n";
        return 2;
    }
    criterion_1_encoding_counts();
    criterion_2_oracle_equivalence();
    criterion_3_gadget_geometry();
    auto refs = build_dense_refs();
    criterion_4_mixer_properties(refs);
    criterion_5_simulator_crosscheck(refs);
    criterion_6_gate_costs();
    criterion_7_experiment_ordering();
    criterion_8_divide_and_conquer();
    criterion_9_determinism(argv[1]);

    if (g_failures == 0) {
        std::printf("all acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d acceptance criteria FAILED\n", g_failures);
    return 1;
}
