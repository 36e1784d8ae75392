#include "latticefold/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace latticefold {

namespace {

void check_dir(LatticeKind l, int k) {
    if (k < 0 || k >= n_dirs(l)) {
        throw std::out_of_range("direction index " + std::to_string(k) + " out of range");
    }
}

constexpr char kPlanarLetters[4] = {'R', 'U', 'L', 'D'};
constexpr char kCubicLetters[6] = {'R', 'U', 'F', 'L', 'D', 'B'};

}  // namespace

Point unit_vector(LatticeKind l, int k) {
    check_dir(l, k);
    int axis = axis_of(l, k);
    int sign = is_positive(l, k) ? 1 : -1;
    Point p;
    (axis == 0 ? p.x : axis == 1 ? p.y : p.z) = sign;
    return p;
}

int axis_of(LatticeKind l, int k) {
    check_dir(l, k);
    return k % (n_dirs(l) / 2);
}

bool is_positive(LatticeKind l, int k) {
    check_dir(l, k);
    return k < n_dirs(l) / 2;
}

int positive_dir(LatticeKind l, int axis) {
    if (axis < 0 || axis >= dims(l)) throw std::out_of_range("axis out of range");
    return axis;
}

int negative_dir(LatticeKind l, int axis) {
    return positive_dir(l, axis) + n_dirs(l) / 2;
}

char direction_letter(LatticeKind l, int k) {
    check_dir(l, k);
    return l == LatticeKind::Planar ? kPlanarLetters[k] : kCubicLetters[k];
}

int direction_from_letter(LatticeKind l, char c) {
    const char* letters = l == LatticeKind::Planar ? kPlanarLetters : kCubicLetters;
    for (int k = 0; k < n_dirs(l); ++k) {
        if (letters[k] == c) return k;
    }
    throw std::invalid_argument(std::string("unknown direction letter '") + c + "'");
}

std::string Conformation::to_string() const {
    std::string s;
    s.reserve(turns.size());
    for (int k : turns) s.push_back(direction_letter(lattice, k));
    return s;
}

Conformation Conformation::from_string(LatticeKind l, const std::string& letters) {
    Conformation c;
    c.lattice = l;
    c.turns.reserve(letters.size());
    for (char ch : letters) c.turns.push_back(direction_from_letter(l, ch));
    validate(c);
    return c;
}

void validate(const Conformation& c) {
    if (c.turns.empty()) throw std::invalid_argument("conformation needs at least one turn");
    for (int k : c.turns) check_dir(c.lattice, k);
    if (c.turns[0] != kRight) throw std::invalid_argument("turn 0 must be Right");
}

std::vector<Point> coordinates(const Conformation& c) {
    validate(c);
    std::vector<Point> pts;
    pts.reserve(c.turns.size() + 1);
    Point cur;
    pts.push_back(cur);
    for (int k : c.turns) {
        Point u = unit_vector(c.lattice, k);
        cur.x += u.x;
        cur.y += u.y;
        cur.z += u.z;
        pts.push_back(cur);
    }
    return pts;
}

int squared_distance(const Conformation& c, int j, int k) {
    auto pts = coordinates(c);
    int n = static_cast<int>(pts.size());
    if (j < 0 || j >= n || k < 0 || k >= n) throw std::out_of_range("residue index out of range");
    int dx = pts[j].x - pts[k].x;
    int dy = pts[j].y - pts[k].y;
    int dz = pts[j].z - pts[k].z;
    return dx * dx + dy * dy + dz * dz;
}

bool is_self_avoiding(const Conformation& c) {
    auto pts = coordinates(c);
    std::set<Point> seen(pts.begin(), pts.end());
    return seen.size() == pts.size();
}

std::vector<std::pair<int, int>> contact_pairs(int n_residues) {
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a + 3 < n_residues; ++a) {
        for (int b = a + 3; b < n_residues; b += 2) pairs.emplace_back(a, b);
    }
    return pairs;
}

double classical_energy(const ProteinInstance& p, const Conformation& c) {
    if (c.lattice != p.lattice) throw std::invalid_argument("lattice mismatch");
    if (c.n_residues() != p.n_residues()) throw std::invalid_argument("residue count mismatch");
    if (!is_self_avoiding(c)) throw std::invalid_argument("conformation is not self-avoiding");
    auto pts = coordinates(c);
    double e = 0.0;
    for (auto [a, b] : contact_pairs(p.n_residues())) {
        int dx = pts[a].x - pts[b].x;
        int dy = pts[a].y - pts[b].y;
        int dz = pts[a].z - pts[b].z;
        if (dx * dx + dy * dy + dz * dz == 1) e += p.model.energy(p.sequence[a], p.sequence[b]);
    }
    return e;
}

InteractionModel InteractionModel::hp() {
    InteractionModel m;
    m.labels = {'H', 'P'};
    m.energies = {{-1.0, 0.0}, {0.0, 0.0}};
    return m;
}

InteractionModel InteractionModel::from_json_text(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    InteractionModel m;
    for (const auto& lbl : j.at("labels")) {
        std::string s = lbl.get<std::string>();
        if (s.size() != 1) throw std::invalid_argument("labels must be single characters");
        m.labels.push_back(s[0]);
    }
    m.energies = j.at("energies").get<std::vector<std::vector<double>>>();
    size_t n = m.labels.size();
    if (m.energies.size() != n) throw std::invalid_argument("energies must be a square matrix matching labels");
    for (size_t r = 0; r < n; ++r) {
        if (m.energies[r].size() != n) throw std::invalid_argument("energies must be a square matrix matching labels");
    }
    for (size_t r = 0; r < n; ++r) {
        for (size_t c = r + 1; c < n; ++c) {
            if (m.energies[r][c] != m.energies[c][r]) throw std::invalid_argument("interaction matrix must be symmetric");
        }
    }
    return m;
}

InteractionModel InteractionModel::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open interaction file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

bool InteractionModel::has_label(char c) const {
    return std::find(labels.begin(), labels.end(), c) != labels.end();
}

double InteractionModel::energy(char a, char b) const {
    auto idx = [&](char c) {
        auto it = std::find(labels.begin(), labels.end(), c);
        if (it == labels.end()) throw std::invalid_argument(std::string("unknown residue label '") + c + "'");
        return static_cast<size_t>(it - labels.begin());
    };
    return energies[idx(a)][idx(b)];
}

ProteinInstance make_instance(std::string sequence, InteractionModel model, LatticeKind lattice) {
    if (sequence.size() < 4) throw std::invalid_argument("sequence must have at least 4 residues");
    for (char c : sequence) {
        if (!model.has_label(c)) throw std::invalid_argument(std::string("unknown residue label '") + c + "'");
    }
    return ProteinInstance{std::move(sequence), std::move(model), lattice};
}

FoldTable enumerate_folds(const ProteinInstance& p, std::uint64_t cap) {
    int N = p.n_residues();
    int n = n_dirs(p.lattice);
    std::uint64_t space = 1;
    for (int t = 2; t <= N - 2; ++t) {
        space *= static_cast<std::uint64_t>(n);
        if (space > cap) throw std::runtime_error("enumeration cap exceeded");
    }

    FoldTable table;
    Conformation c;
    c.lattice = p.lattice;
    c.turns.assign(N - 1, kRight);

    // Depth-first over symmetry-fixed turn choices, in direction-index order,
    // so the output is lexicographic and deterministic.
    auto recurse = [&](auto&& self, int t) -> void {
        if (t == N - 1) {
            if (!is_self_avoiding(c)) return;
            table.folds.push_back(c);
            table.energies.push_back(classical_energy(p, c));
            return;
        }
        int lo = 0, hi = n;
        if (t == 1) hi = 2;  // Right or Up
        for (int k = lo; k < hi; ++k) {
            if (p.lattice == LatticeKind::Cubic && t == 2 && k == n_dirs(p.lattice) - 1) continue;  // no Back
            c.turns[t] = k;
            self(self, t + 1);
        }
    };
    recurse(recurse, 1);

    table.ground_energy = *std::min_element(table.energies.begin(), table.energies.end());
    for (size_t i = 0; i < table.energies.size(); ++i) {
        if (table.energies[i] == table.ground_energy) table.ground_indices.push_back(static_cast<int>(i));
    }
    return table;
}

}  // namespace latticefold
