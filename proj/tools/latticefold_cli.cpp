// Command-line front end: fold enumeration, Hamiltonian construction,
// QAOA mixer experiments, the divide-and-conquer split, and gate-cost
// reports. All randomness flows from --seed; identical flags and seed give
// byte-identical output files.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "latticefold/experiment.hpp"
#include "latticefold/gatecost.hpp"

using namespace latticefold;
using ordered_json = nlohmann::ordered_json;

namespace {

struct CommonFlags {
    std::string seq;
    std::string lattice = "planar";
    std::string model = "hp";
    std::string out_dir = ".";
};

LatticeKind parse_lattice(const std::string& s) {
    if (s == "planar") return LatticeKind::Planar;
    if (s == "cubic") return LatticeKind::Cubic;
    throw CLI::ValidationError("--lattice must be planar or cubic");
}

InteractionModel parse_model(const std::string& s) {
    if (s == "hp") return InteractionModel::hp();
    return InteractionModel::from_json_file(s);
}

ProteinInstance instance_from(const CommonFlags& flags) {
    return make_instance(flags.seq, parse_model(flags.model), parse_lattice(flags.lattice));
}

EvolutionConfig parse_evolution(const std::string& s) {
    EvolutionConfig cfg;
    if (s == "exact") return cfg;
    if (s.rfind("trotter:", 0) == 0) {
        cfg.mode = EvolutionMode::Trotter;
        cfg.trotter_steps = std::stoi(s.substr(8));
        if (cfg.trotter_steps < 1) throw CLI::ValidationError("trotter steps must be >= 1");
        return cfg;
    }
    throw CLI::ValidationError("--evolution must be exact or trotter:<steps>");
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    if (out.empty()) throw CLI::ValidationError("empty list");
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

ordered_json run_to_json(const RunResult& r) {
    ordered_json j;
    j["gammas"] = r.gammas;
    j["betas"] = r.betas;
    j["expectation"] = r.expectation;
    j["ground_probability"] = r.ground_probability;
    j["evals"] = r.evals;
    return j;
}

ordered_json stats_to_json(const ExperimentStats& s) {
    ordered_json j;
    j["min"] = s.min;
    j["q1"] = s.q1;
    j["median"] = s.median;
    j["q3"] = s.q3;
    j["max"] = s.max;
    return j;
}

std::string svg_boxplot(const std::vector<std::pair<std::string, ExperimentStats>>& groups) {
    double ymax = 0.0;
    for (const auto& [label, s] : groups) ymax = std::max(ymax, s.max);
    ymax = std::max(0.05, std::ceil(ymax * 20.0) / 20.0);
    const int plot_top = 30, plot_bottom = 330, label_y = 360;
    const int step = 70, left = 70;
    int width = left + step * static_cast<int>(groups.size()) + 20;
    auto ypos = [&](double v) {
        return plot_bottom - (plot_bottom - plot_top) * (v / ymax);
    };
    std::ostringstream svg;
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='390'>\n";
    svg << "<rect width='100%' height='100%' fill='white'/>\n";
    svg << "<line x1='" << left - 20 << "' y1='" << plot_top << "' x2='" << left - 20 << "' y2='"
        << plot_bottom << "' stroke='black'/>\n";
    for (double frac : {0.0, 0.5, 1.0}) {
        double v = frac * ymax;
        svg << "<text x='2' y='" << ypos(v) + 4 << "' font-size='11'>" << v << "</text>\n";
        svg << "<line x1='" << left - 24 << "' y1='" << ypos(v) << "' x2='" << left - 16 << "' y2='"
            << ypos(v) << "' stroke='black'/>\n";
    }
    svg << "<text x='2' y='16' font-size='11'>ground-state probability</text>\n";
    int x = left + 10;
    for (const auto& [label, s] : groups) {
        int cx = x + 15;
        svg << "<line x1='" << cx << "' y1='" << ypos(s.min) << "' x2='" << cx << "' y2='"
            << ypos(s.max) << "' stroke='black'/>\n";
        for (double w : {s.min, s.max}) {
            svg << "<line x1='" << cx - 8 << "' y1='" << ypos(w) << "' x2='" << cx + 8 << "' y2='"
                << ypos(w) << "' stroke='black'/>\n";
        }
        svg << "<rect x='" << cx - 15 << "' y='" << ypos(s.q3) << "' width='30' height='"
            << ypos(s.q1) - ypos(s.q3) << "' fill='lightsteelblue' stroke='black'/>\n";
        svg << "<line x1='" << cx - 15 << "' y1='" << ypos(s.median) << "' x2='" << cx + 15
            << "' y2='" << ypos(s.median) << "' stroke='black' stroke-width='2'/>\n";
        svg << "<text x='" << cx << "' y='" << label_y
            << "' font-size='10' text-anchor='middle'>" << label << "</text>\n";
        x += step;
    }
    svg << "</svg>\n";
    return svg.str();
}

int cmd_enumerate(const CommonFlags& flags) {
    auto inst = instance_from(flags);
    auto table = enumerate_folds(inst);
    std::filesystem::create_directories(flags.out_dir);

    std::ostringstream csv;
    csv << "turns,energy\n";
    for (size_t i = 0; i < table.folds.size(); ++i) {
        csv << table.folds[i].to_string() << "," << table.energies[i] << "\n";
    }
    write_file(std::filesystem::path(flags.out_dir) / "folds.csv", csv.str());

    ordered_json ground;
    ground["sequence"] = inst.sequence;
    ground["lattice"] = flags.lattice;
    ground["ground_energy"] = table.ground_energy;
    std::vector<std::string> folds;
    for (int i : table.ground_indices) folds.push_back(table.folds[i].to_string());
    ground["ground_folds"] = folds;
    write_file(std::filesystem::path(flags.out_dir) / "ground.json", ground.dump(2) + "\n");

    std::cout << "folds: " << table.folds.size() << "\n";
    std::cout << "ground energy: " << table.ground_energy << "\n";
    for (const auto& f : folds) std::cout << "ground fold: " << f << "\n";
    return 0;
}

int cmd_build(const CommonFlags& flags, const std::string& mixer_flag, bool all_mixers,
              const std::string& cost_variant) {
    auto inst = instance_from(flags);
    auto e = build_encoding(inst.lattice, inst.n_residues());
    std::filesystem::create_directories(flags.out_dir);

    std::vector<MixerKind> kinds;
    if (all_mixers) {
        kinds.assign(std::begin(kAllMixers), std::end(kAllMixers));
    } else {
        kinds.push_back(mixer_from_name(mixer_flag));
    }

    bool reduced = cost_variant == "reduced";
    // the cost file reflects the first requested mixer's reduction
    bool skip_short = reduced && mixer_covers_short_range(kinds[0]);
    bool skip_long = reduced && mixer_covers_long_range(kinds[0]);
    auto h = build_cost(e, inst, default_lambda_olap(inst), skip_short, skip_long);

    std::cout << "qubits: " << e.n_qubits << "\n";
    auto report = logical_cost(h.pauli());
    for (const auto& [k, count] : report.locality_histogram) {
        std::cout << "locality " << k << ": " << count << " terms\n";
    }
    write_file(std::filesystem::path(flags.out_dir) / "h_cost.txt", h.pauli().serialize());
    for (MixerKind kind : kinds) {
        auto m = build_mixer(e, kind);
        write_file(std::filesystem::path(flags.out_dir) / ("h_mixer_" + mixer_name(kind) + ".txt"),
                   m.pauli.serialize());
    }
    return 0;
}

struct RunFlags {
    std::string mixer = "xy-simple";
    std::string mixers_group;  // "all" selects every mixer
    bool all_mixers = false;
    std::string p_list = "1";
    std::string init = "feasible";
    std::string cost_variant = "constant";
    int runs = 100;
    int shots = 0;  // 0 = exact
    double tol = 0.001;
    std::uint64_t seed = 0;
    std::string evolution = "exact";
};

ordered_json config_json(const CommonFlags& flags, const RunFlags& rf) {
    ordered_json c;
    c["seq"] = flags.seq;
    c["lattice"] = flags.lattice;
    c["model"] = flags.model;
    c["mixer"] = rf.all_mixers ? "all" : rf.mixer;
    c["p"] = rf.p_list;
    c["init"] = rf.init;
    c["cost"] = rf.cost_variant;
    c["runs"] = rf.runs;
    if (rf.shots > 0) c["shots"] = rf.shots;
    c["tol"] = rf.tol;
    c["seed"] = rf.seed;
    c["evolution"] = rf.evolution;
    return c;
}

ExperimentConfig experiment_config(const CommonFlags& flags, const RunFlags& rf, MixerKind kind,
                                   int depth) {
    ExperimentConfig cfg;
    cfg.instance = instance_from(flags);
    cfg.mixer = kind;
    cfg.depth = depth;
    if (rf.init == "feasible") {
        cfg.init = InitKind::Feasible;
    } else if (rf.init == "all") {
        cfg.init = InitKind::UniformAll;
    } else {
        throw CLI::ValidationError("--init must be all or feasible");
    }
    if (rf.cost_variant == "reduced") {
        cfg.cost_variant = CostVariant::Reduced;
    } else if (rf.cost_variant == "constant") {
        cfg.cost_variant = CostVariant::Constant;
    } else {
        throw CLI::ValidationError("--cost must be constant or reduced");
    }
    cfg.runs = rf.runs;
    if (rf.shots > 0) cfg.shots = rf.shots;
    cfg.seed = rf.seed;
    cfg.f_tolerance = rf.tol;
    cfg.evolution = parse_evolution(rf.evolution);
    return cfg;
}

int cmd_run(const CommonFlags& flags, const RunFlags& rf) {
    std::filesystem::create_directories(flags.out_dir);
    std::vector<MixerKind> kinds;
    if (rf.all_mixers) {
        kinds.assign(std::begin(kAllMixers), std::end(kAllMixers));
    } else {
        kinds.push_back(mixer_from_name(rf.mixer));
    }
    auto depths = parse_int_list(rf.p_list);

    ordered_json doc;
    doc["config"] = config_json(flags, rf);
    std::ostringstream csv;
    csv << "mixer,p,run,evals,expectation,ground_probability,params\n";
    std::vector<std::pair<std::string, ExperimentStats>> boxes;

    ordered_json experiments = ordered_json::array();
    for (MixerKind kind : kinds) {
        for (int p : depths) {
            auto out = run_experiment(experiment_config(flags, rf, kind, p));
            ordered_json block;
            block["mixer"] = mixer_name(kind);
            block["p"] = p;
            ordered_json per_run = ordered_json::array();
            for (const auto& r : out.per_run) per_run.push_back(run_to_json(r));
            block["per_run"] = std::move(per_run);
            block["stats"] = stats_to_json(out.stats);
            experiments.push_back(std::move(block));

            for (size_t r = 0; r < out.per_run.size(); ++r) {
                const auto& run = out.per_run[r];
                csv << mixer_name(kind) << "," << p << "," << r << "," << run.evals << ","
                    << run.expectation << "," << run.ground_probability << ",";
                for (size_t i = 0; i < run.gammas.size(); ++i) csv << (i ? ";" : "") << run.gammas[i];
                for (double b : run.betas) csv << ";" << b;
                csv << "\n";
            }
            boxes.emplace_back(mixer_name(kind) + " p=" + std::to_string(p), out.stats);
            std::cout << mixer_name(kind) << " p=" << p << ": median " << out.stats.median
                      << " max " << out.stats.max << "\n";
        }
    }
    if (kinds.size() == 1 && depths.size() == 1) {
        doc["per_run"] = experiments[0]["per_run"];
        doc["stats"] = experiments[0]["stats"];
    } else {
        doc["experiments"] = std::move(experiments);
    }
    write_file(std::filesystem::path(flags.out_dir) / "results.json", doc.dump(2) + "\n");
    write_file(std::filesystem::path(flags.out_dir) / "results.csv", csv.str());
    if (rf.all_mixers) {
        write_file(std::filesystem::path(flags.out_dir) / "boxplot.svg", svg_boxplot(boxes));
    }
    return 0;
}

int cmd_split(const CommonFlags& flags, const RunFlags& rf) {
    std::filesystem::create_directories(flags.out_dir);
    auto cfg = experiment_config(flags, rf, mixer_from_name(rf.mixer), parse_int_list(rf.p_list)[0]);
    auto report = divide_and_conquer(cfg);

    ordered_json doc;
    doc["config"] = config_json(flags, rf);
    doc["combined_ground_energy"] = report.combined_ground_energy;
    ordered_json subs = ordered_json::array();
    for (const auto& sub : report.subs) {
        ordered_json s;
        s["fixed_turn"] = std::string(1, direction_letter(parse_lattice(flags.lattice), sub.fixed_direction));
        s["n_qubits"] = sub.n_qubits;
        s["ground_energy"] = sub.ground_energy;
        s["ground_bitstring"] = sub.ground_bitstring;
        s["best_expectation"] = sub.best_expectation;
        s["ground_probability"] = sub.ground_probability;
        if (!sub.counts.empty()) {
            ordered_json counts;
            for (const auto& [bits, count] : sub.counts) counts[bits] = count;
            s["counts"] = std::move(counts);
            s["ground_count"] = sub.ground_count;
        }
        s["stats"] = stats_to_json(sub.outcome.stats);
        subs.push_back(std::move(s));
    }
    doc["sub_instances"] = std::move(subs);
    write_file(std::filesystem::path(flags.out_dir) / "split.json", doc.dump(2) + "\n");

    for (const auto& sub : report.subs) {
        std::cout << "turn 1 = " << direction_letter(parse_lattice(flags.lattice), sub.fixed_direction)
                  << ": qubits " << sub.n_qubits << ", ground " << sub.ground_bitstring << " at "
                  << sub.ground_energy;
        if (!sub.counts.empty()) std::cout << ", ground samples " << sub.ground_count;
        std::cout << "\n";
    }
    std::cout << "combined ground energy: " << report.combined_ground_energy << "\n";
    return 0;
}

int cmd_cost(const CommonFlags& flags, const std::string& mixer_flag, bool mixer_requested,
             const std::string& graph_path, const std::string& cost_variant) {
    auto inst = instance_from(flags);
    auto e = build_encoding(inst.lattice, inst.n_residues());
    bool reduced = cost_variant == "reduced";
    MixerKind kind = mixer_from_name(mixer_flag);
    auto h = build_cost(e, inst, default_lambda_olap(inst),
                        reduced && mixer_covers_short_range(kind),
                        reduced && mixer_covers_long_range(kind));
    auto report = logical_cost(h.pauli());

    ordered_json doc;
    doc["qubits"] = e.n_qubits;
    doc["total_cnots"] = report.total_cnots;
    doc["total_single_qubit"] = report.total_single_qubit;
    ordered_json hist;
    for (const auto& [k, count] : report.locality_histogram) hist[std::to_string(k)] = count;
    doc["locality_histogram"] = std::move(hist);

    std::cout << "qubits: " << e.n_qubits << "\n";
    std::cout << "terms: " << h.pauli().size() << "\n";
    std::cout << "logical cnots: " << report.total_cnots << "\n";
    std::cout << "single-qubit gates: " << report.total_single_qubit << "\n";

    std::map<int, int> placement;
    std::optional<HardwareGraph> graph;
    if (!graph_path.empty()) {
        graph = HardwareGraph::from_json_file(graph_path);
        std::vector<int> nodes = graph->nodes;
        std::sort(nodes.begin(), nodes.end());
        if (static_cast<int>(nodes.size()) < e.n_qubits) {
            throw std::runtime_error("graph has fewer nodes than qubits");
        }
        for (int q = 0; q < e.n_qubits; ++q) placement[q] = nodes[q];
        long overhead = routing_overhead(h.pauli(), graph.value(), placement);
        doc["routing_overhead_cnots"] = overhead;
        std::cout << "routing overhead cnots: " << overhead << "\n";
    }
    if (mixer_requested) {
        auto m = build_mixer(e, kind);
        ordered_json mj;
        mj["name"] = mixer_name(kind);
        mj["terms"] = m.pauli.size();
        ordered_json mh;
        std::map<int, int> hist_m;
        for (const auto& [p, coeff] : m.pauli.terms()) ++hist_m[p.locality()];
        for (const auto& [k, count] : hist_m) mh[std::to_string(k)] = count;
        mj["locality_histogram"] = std::move(mh);
        if (graph) {
            long overhead = routing_overhead(m.pauli, graph.value(), placement);
            mj["routing_overhead_cnots"] = overhead;
            std::cout << "mixer routing overhead cnots: " << overhead << "\n";
        }
        doc["mixer"] = std::move(mj);
        std::cout << "mixer terms: " << m.pauli.size() << "\n";
    }
    std::filesystem::create_directories(flags.out_dir);
    write_file(std::filesystem::path(flags.out_dir) / "cost.json", doc.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lattice protein folding with one-hot QAOA encodings"};
    app.require_subcommand(1);

    CommonFlags flags;
    RunFlags rf;
    std::string graph_path;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--seq", flags.seq, "residue sequence, one letter per residue")->required();
        cmd->add_option("--lattice", flags.lattice, "planar or cubic");
        cmd->add_option("--model", flags.model, "hp or a path to an interaction matrix JSON");
        cmd->add_option("--out", flags.out_dir, "output directory");
    };

    auto* enumerate = app.add_subcommand("enumerate", "exhaustive fold table and ground states");
    add_common(enumerate);

    auto* build = app.add_subcommand("build", "serialize the cost and mixer Hamiltonians");
    add_common(build);
    build->add_option("--mixer", rf.mixer, "mixer Hamiltonian");
    build->add_option("--mixers", rf.mixers_group, "'all' emits every mixer");
    build->add_option("--cost", rf.cost_variant, "constant or reduced");

    auto* run = app.add_subcommand("run", "optimize QAOA angles and report statistics");
    add_common(run);
    run->add_option("--mixer", rf.mixer, "mixer Hamiltonian");
    run->add_option("--mixers", rf.mixers_group, "'all' runs every mixer");
    run->add_option("--p", rf.p_list, "comma-separated QAOA depths");
    run->add_option("--init", rf.init, "all or feasible");
    run->add_option("--cost", rf.cost_variant, "constant or reduced");
    run->add_option("--runs", rf.runs, "optimizer restarts per configuration");
    run->add_option("--shots", rf.shots, "samples per expectation (0 = exact)");
    run->add_option("--tol", rf.tol, "Nelder-Mead f tolerance");
    run->add_option("--seed", rf.seed, "random seed");
    run->add_option("--evolution", rf.evolution, "exact or trotter:<steps>");

    auto* split = app.add_subcommand("split", "divide-and-conquer over the binary turn 1");
    add_common(split);
    split->add_option("--mixer", rf.mixer, "mixer Hamiltonian");
    split->add_option("--p", rf.p_list, "QAOA depth");
    split->add_option("--init", rf.init, "all or feasible");
    split->add_option("--cost", rf.cost_variant, "constant or reduced");
    split->add_option("--runs", rf.runs, "optimizer restarts per sub-instance");
    split->add_option("--shots", rf.shots, "samples from each winning state");
    split->add_option("--tol", rf.tol, "Nelder-Mead f tolerance");
    split->add_option("--seed", rf.seed, "random seed");
    split->add_option("--evolution", rf.evolution, "exact or trotter:<steps>");

    auto* cost = app.add_subcommand("cost", "CNOT counts and routing overhead");
    add_common(cost);
    cost->add_option("--mixer", rf.mixer, "mixer used for the reduced variant");
    cost->add_option("--cost", rf.cost_variant, "constant or reduced");
    cost->add_option("--graph", graph_path, "hardware graph JSON");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!rf.mixers_group.empty()) {
            if (rf.mixers_group != "all") throw std::invalid_argument("--mixers only accepts 'all'");
            rf.all_mixers = true;
        }
        if (enumerate->parsed()) return cmd_enumerate(flags);
        if (build->parsed()) return cmd_build(flags, rf.mixer, rf.all_mixers, rf.cost_variant);
        if (run->parsed()) return cmd_run(flags, rf);
        if (split->parsed()) return cmd_split(flags, rf);
        if (cost->parsed()) {
            return cmd_cost(flags, rf.mixer, cost->count("--mixer") > 0, graph_path,
                            rf.cost_variant);
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
