#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace latticefold {

enum class LatticeKind { Planar, Cubic };

constexpr int dims(LatticeKind l) { return l == LatticeKind::Planar ? 2 : 3; }
constexpr int n_dirs(LatticeKind l) { return l == LatticeKind::Planar ? 4 : 6; }

// Direction indices. Planar: 0=R(+x), 1=U(+y), 2=L(-x), 3=D(-y).
// Cubic: 0=R(+x), 1=U(+y), 2=F(+z), 3=L(-x), 4=D(-y), 5=B(-z).
constexpr int kRight = 0;
constexpr int kUp = 1;

constexpr int opposite(LatticeKind l, int k) {
    int n = n_dirs(l);
    return (k + n / 2) % n;
}

struct Point {
    int x = 0, y = 0, z = 0;
    friend bool operator==(const Point&, const Point&) = default;
    friend auto operator<=>(const Point&, const Point&) = default;
};

Point unit_vector(LatticeKind l, int k);
// Axis 0=x, 1=y, 2=z and whether k points along the positive side.
int axis_of(LatticeKind l, int k);
bool is_positive(LatticeKind l, int k);
// Direction index pointing to the positive/negative side of an axis.
int positive_dir(LatticeKind l, int axis);
int negative_dir(LatticeKind l, int axis);

char direction_letter(LatticeKind l, int k);
int direction_from_letter(LatticeKind l, char c);

// A walk on the lattice given as turn directions. turns[t] moves residue t
// to residue t+1, so a protein with N residues has N-1 turns. turns[0] is
// always Right; canonical symmetry fixing further restricts turns[1] to
// {Right, Up} and (cubic) turns[2] != Back.
struct Conformation {
    LatticeKind lattice = LatticeKind::Planar;
    std::vector<int> turns;

    int n_residues() const { return static_cast<int>(turns.size()) + 1; }
    std::string to_string() const;
    static Conformation from_string(LatticeKind l, const std::string& letters);

    friend bool operator==(const Conformation&, const Conformation&) = default;
};

// Symmetric residue-pair contact energies, keyed by one-letter labels.
struct InteractionModel {
    std::vector<char> labels;
    std::vector<std::vector<double>> energies;

    static InteractionModel hp();
    static InteractionModel from_json_file(const std::string& path);
    static InteractionModel from_json_text(const std::string& text);

    bool has_label(char c) const;
    double energy(char a, char b) const;
};

struct ProteinInstance {
    std::string sequence;
    InteractionModel model;
    LatticeKind lattice = LatticeKind::Planar;

    int n_residues() const { return static_cast<int>(sequence.size()); }
};

// Validates sequence length >= 4 and that every label is known to the model.
ProteinInstance make_instance(std::string sequence, InteractionModel model, LatticeKind lattice);

void validate(const Conformation& c);

// Residue positions of the walk, point[0] at the origin. Length N.
std::vector<Point> coordinates(const Conformation& c);

int squared_distance(const Conformation& c, int j, int k);

bool is_self_avoiding(const Conformation& c);

// Sum of model energies over residue pairs at odd separation >= 3 that sit on
// adjacent lattice points. Throws if the walk intersects itself.
double classical_energy(const ProteinInstance& p, const Conformation& c);

// Residue pairs (a, b), a < b, that can ever form a lattice contact:
// |a-b| odd and >= 3.
std::vector<std::pair<int, int>> contact_pairs(int n_residues);

struct FoldTable {
    std::vector<Conformation> folds;       // lexicographic in turn indices
    std::vector<double> energies;          // parallel to folds
    double ground_energy = 0.0;
    std::vector<int> ground_indices;       // indices into folds
};

// Exhaustive symmetry-fixed self-avoiding walk enumeration with energies.
// Guard: n_dirs^(N-2) must not exceed `cap`.
FoldTable enumerate_folds(const ProteinInstance& p, std::uint64_t cap = 10'000'000);

}  // namespace latticefold
