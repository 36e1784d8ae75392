#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "latticefold/lattice.hpp"

namespace latticefold {

// One entry of a turn tuple: either a variable qubit or a bit frozen by the
// symmetry fixing.
struct Slot {
    int qubit = -1;     // >= 0 when variable
    int fixed_value = 0;

    bool is_variable() const { return qubit >= 0; }
};

enum class FeasibleMode { XY, XZ };

// Bits in string order: bits[i] is qubit i, rendered leftmost-first. The
// basis-state index puts qubit 0 in the most significant position.
struct Bitstring {
    std::vector<std::uint8_t> bits;

    int size() const { return static_cast<int>(bits.size()); }
    std::uint64_t index() const;
    static Bitstring from_index(std::uint64_t idx, int n_qubits);
    static Bitstring parse(const std::string& s);  // ignores spaces
    std::string to_string() const;

    friend bool operator==(const Bitstring&, const Bitstring&) = default;
};

// One-hot turn encoding with the fixed prefix folded in. Turn 0 is absent
// (always Right); slot_table[t-1][k] describes bit k of turn t's tuple.
// Variable qubits are numbered consecutively, turn-major then k-minor.
struct Encoding {
    LatticeKind lattice = LatticeKind::Planar;
    int n_residues = 0;
    int n_qubits = 0;
    std::vector<std::vector<Slot>> slot_table;

    int first_turn() const { return 1; }
    int last_turn() const { return n_residues - 2; }
    const Slot& slot(int t, int k) const;

    // Bit value of direction k for turn t under bitstring b. Valid for
    // t = 0 as well, where the fixed Right move resolves to constants.
    int turn_bit(int t, int k, const Bitstring& b) const;

    std::string render(const Bitstring& b) const;  // space between turn tuples
};

Encoding build_encoding(LatticeKind lattice, int n_residues);

// Derived encoding with one turn frozen to a fixed direction; remaining
// qubits are renumbered consecutively.
Encoding fix_turn(const Encoding& e, int t, int k);

// 1 iff turn t of the decoded walk goes in direction k. Requires
// 1 <= t <= N-2; fixed bits resolve to constants.
int direction_flag(const Encoding& e, int t, int k, const Bitstring& b);

// nullopt unless every turn tuple is exactly one-hot.
std::optional<Conformation> decode(const Encoding& e, const Bitstring& b);

Bitstring encode(const Encoding& e, const Conformation& c);

// XY: every tuple has weight exactly 1. XZ: every tuple weight 0 or 1.
bool is_feasible(const Encoding& e, const Bitstring& b, FeasibleMode mode);

// Exhaustive, ordered turn-major with direction indices ascending (XZ adds
// the empty tuple after the directions).
std::vector<Bitstring> feasible_states(const Encoding& e, FeasibleMode mode);

}  // namespace latticefold
