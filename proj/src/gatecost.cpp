#include "latticefold/gatecost.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace latticefold {

HardwareGraph HardwareGraph::from_json_text(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    HardwareGraph g;
    g.nodes = j.at("nodes").get<std::vector<int>>();
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw std::invalid_argument("edges must be pairs");
        g.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    g.validate();
    return g;
}

HardwareGraph HardwareGraph::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

void HardwareGraph::validate() const {
    if (nodes.empty()) throw std::invalid_argument("graph has no nodes");
    std::set<int> node_set(nodes.begin(), nodes.end());
    if (node_set.size() != nodes.size()) throw std::invalid_argument("duplicate node ids");
    std::set<std::pair<int, int>> seen;
    for (auto [a, b] : edges) {
        if (a == b) throw std::invalid_argument("self-loop in graph");
        if (!node_set.count(a) || !node_set.count(b)) throw std::invalid_argument("edge references unknown node");
        auto key = std::minmax(a, b);
        if (!seen.insert(key).second) throw std::invalid_argument("duplicate edge");
    }
    // connectivity
    std::map<int, std::vector<int>> adj;
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::set<int> reached{nodes[0]};
    std::deque<int> queue{nodes[0]};
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : adj[v]) {
            if (reached.insert(w).second) queue.push_back(w);
        }
    }
    if (reached.size() != nodes.size()) throw std::invalid_argument("graph is not connected");
}

std::map<std::pair<int, int>, int> HardwareGraph::distances() const {
    std::map<int, std::vector<int>> adj;
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::map<std::pair<int, int>, int> d;
    for (int src : nodes) {
        std::map<int, int> dist{{src, 0}};
        std::deque<int> queue{src};
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int w : adj[v]) {
                if (!dist.count(w)) {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        for (auto [v, dv] : dist) d[{src, v}] = dv;
    }
    return d;
}

std::pair<long, long> term_cnot_cost(int locality) {
    if (locality < 1) throw std::invalid_argument("locality must be >= 1");
    return {2L * locality - 2L, 1L};
}

GateCostReport logical_cost(const PauliSum& diagonal) {
    if (!diagonal.is_diagonal()) throw std::invalid_argument("gate costs are defined for diagonal operators");
    GateCostReport report;
    for (const auto& [p, c] : diagonal.terms()) {
        int k = p.locality();
        GateCostReport::TermCost tc;
        tc.letters = p.to_letters(diagonal.n_qubits());
        tc.locality = k;
        if (k >= 1) {
            auto [cnots, singles] = term_cnot_cost(k);
            tc.cnots = cnots;
            tc.single_qubit = singles;
        }
        report.total_cnots += tc.cnots;
        report.total_single_qubit += tc.single_qubit;
        ++report.locality_histogram[k];
        report.terms.push_back(std::move(tc));
    }
    std::sort(report.terms.begin(), report.terms.end(),
              [](const auto& a, const auto& b) { return a.letters < b.letters; });
    return report;
}

long routing_overhead(const PauliSum& h, const HardwareGraph& g,
                      const std::map<int, int>& placement) {
    std::set<int> used;
    for (auto [q, node] : placement) {
        if (!used.insert(node).second) throw std::invalid_argument("placement is not injective");
    }
    auto dist = g.distances();
    auto d = [&](int a, int b) {
        auto it = dist.find({a, b});
        if (it == dist.end()) throw std::invalid_argument("placement node missing from graph");
        return it->second;
    };

    long overhead = 0;
    for (const auto& [p, c] : h.terms()) {
        int k = p.locality();
        if (k < 2) continue;
        std::vector<int> terminals;
        for (std::uint64_t m = p.x_mask | p.z_mask; m;) {
            std::uint64_t bit = m & (~m + 1);
            m ^= bit;
            int q = std::countr_zero(bit);
            auto it = placement.find(q);
            if (it == placement.end()) throw std::invalid_argument("qubit missing from placement");
            terminals.push_back(it->second);
        }
        std::sort(terminals.begin(), terminals.end());
        // Prim MST on the metric closure, from the smallest terminal,
        // breaking ties by node id.
        std::vector<int> inside{terminals[0]};
        std::vector<int> outside(terminals.begin() + 1, terminals.end());
        long tree_edges = 0;
        while (!outside.empty()) {
            int best_cost = 1 << 30, best_idx = 0;
            for (size_t i = 0; i < outside.size(); ++i) {
                int cost = 1 << 30;
                for (int v : inside) cost = std::min(cost, d(v, outside[i]));
                if (cost < best_cost) {
                    best_cost = cost;
                    best_idx = static_cast<int>(i);
                }
            }
            tree_edges += best_cost;
            inside.push_back(outside[best_idx]);
            outside.erase(outside.begin() + best_idx);
        }
        long swaps = tree_edges - (k - 1);
        overhead += 3 * swaps;
    }
    return overhead;
}

}  // namespace latticefold
