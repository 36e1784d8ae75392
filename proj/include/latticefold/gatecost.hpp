#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "latticefold/pauli.hpp"

namespace latticefold {

struct HardwareGraph {
    std::vector<int> nodes;
    std::vector<std::pair<int, int>> edges;  // undirected

    static HardwareGraph from_json_file(const std::string& path);
    static HardwareGraph from_json_text(const std::string& text);
    void validate() const;  // simple and connected

    // all-pairs shortest path lengths by BFS
    std::map<std::pair<int, int>, int> distances() const;
};

struct GateCostReport {
    struct TermCost {
        std::string letters;
        int locality = 0;
        long cnots = 0;
        long single_qubit = 0;
    };
    std::vector<TermCost> terms;
    long total_cnots = 0;
    long total_single_qubit = 0;
    long routing_overhead_cnots = 0;
    std::map<int, int> locality_histogram;  // locality -> term count
};

// A k-local diagonal phase term costs 2k-2 CNOTs and one single-qubit
// rotation; identity terms are a global phase and cost nothing.
std::pair<long, long> term_cnot_cost(int locality);

GateCostReport logical_cost(const PauliSum& diagonal);

// Lower-bound routing estimate: per multi-qubit term, a Steiner-tree
// approximation over shortest paths (minimum spanning tree of the metric
// closure, deterministic tie-breaking by node id); each saved adjacency
// costs one topological swap of three CNOTs. Works on term supports, so
// mixers are accepted as well.
long routing_overhead(const PauliSum& h, const HardwareGraph& g,
                      const std::map<int, int>& placement);

}  // namespace latticefold
