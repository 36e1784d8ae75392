#include "latticefold/encoding.hpp"

#include <algorithm>
#include <stdexcept>

namespace latticefold {

std::uint64_t Bitstring::index() const {
    if (bits.size() > 63) throw std::length_error("bitstring too long for a 64-bit index");
    std::uint64_t idx = 0;
    for (std::uint8_t b : bits) idx = (idx << 1) | b;
    return idx;
}

Bitstring Bitstring::from_index(std::uint64_t idx, int n_qubits) {
    Bitstring b;
    b.bits.resize(n_qubits);
    for (int i = 0; i < n_qubits; ++i) {
        b.bits[i] = static_cast<std::uint8_t>((idx >> (n_qubits - 1 - i)) & 1u);
    }
    return b;
}

Bitstring Bitstring::parse(const std::string& s) {
    Bitstring b;
    for (char c : s) {
        if (c == ' ') continue;
        if (c != '0' && c != '1') throw std::invalid_argument("bitstring may only contain 0, 1 and spaces");
        b.bits.push_back(c == '1');
    }
    return b;
}

std::string Bitstring::to_string() const {
    std::string s;
    s.reserve(bits.size());
    for (std::uint8_t b : bits) s.push_back(b ? '1' : '0');
    return s;
}

const Slot& Encoding::slot(int t, int k) const {
    if (t < first_turn() || t > last_turn()) throw std::out_of_range("turn index out of range");
    if (k < 0 || k >= n_dirs(lattice)) throw std::out_of_range("direction index out of range");
    return slot_table[t - 1][k];
}

int Encoding::turn_bit(int t, int k, const Bitstring& b) const {
    if (b.size() != n_qubits) throw std::invalid_argument("bitstring length mismatch");
    if (t == 0) return k == kRight ? 1 : 0;
    const Slot& s = slot(t, k);
    return s.is_variable() ? b.bits[s.qubit] : s.fixed_value;
}

std::string Encoding::render(const Bitstring& b) const {
    if (b.size() != n_qubits) throw std::invalid_argument("bitstring length mismatch");
    std::string out;
    for (int t = first_turn(); t <= last_turn(); ++t) {
        bool wrote = false;
        for (int k = 0; k < n_dirs(lattice); ++k) {
            const Slot& s = slot_table[t - 1][k];
            if (!s.is_variable()) continue;
            out.push_back(b.bits[s.qubit] ? '1' : '0');
            wrote = true;
        }
        if (wrote && t < last_turn()) out.push_back(' ');
    }
    return out;
}

Encoding build_encoding(LatticeKind lattice, int n_residues) {
    if (n_residues < 4) throw std::invalid_argument("encoding requires at least 4 residues");
    Encoding e;
    e.lattice = lattice;
    e.n_residues = n_residues;
    int n = n_dirs(lattice);
    int q = 0;
    for (int t = 1; t <= n_residues - 2; ++t) {
        std::vector<Slot> tuple(n);
        for (int k = 0; k < n; ++k) {
            bool frozen = (t == 1 && k > 1) || (lattice == LatticeKind::Cubic && t == 2 && k == n - 1);
            if (frozen) {
                tuple[k] = Slot{-1, 0};
            } else {
                tuple[k] = Slot{q++, 0};
            }
        }
        e.slot_table.push_back(std::move(tuple));
    }
    e.n_qubits = q;
    return e;
}

Encoding fix_turn(const Encoding& e, int t, int k) {
    if (t < e.first_turn() || t > e.last_turn()) throw std::out_of_range("turn index out of range");
    if (k < 0 || k >= n_dirs(e.lattice)) throw std::out_of_range("direction index out of range");
    if (!e.slot(t, k).is_variable() && e.slot(t, k).fixed_value == 0) {
        throw std::invalid_argument("cannot fix a turn to a direction its tuple forbids");
    }
    Encoding out = e;
    int q = 0;
    for (int tt = 1; tt <= e.last_turn(); ++tt) {
        for (int kk = 0; kk < n_dirs(e.lattice); ++kk) {
            Slot& s = out.slot_table[tt - 1][kk];
            if (tt == t) {
                s = Slot{-1, kk == k ? 1 : 0};
            } else if (s.is_variable()) {
                s.qubit = q++;
            }
        }
    }
    out.n_qubits = q;
    return out;
}

int direction_flag(const Encoding& e, int t, int k, const Bitstring& b) {
    if (t < e.first_turn() || t > e.last_turn()) throw std::out_of_range("turn index out of range");
    return e.turn_bit(t, k, b);
}

std::optional<Conformation> decode(const Encoding& e, const Bitstring& b) {
    if (b.size() != e.n_qubits) throw std::invalid_argument("bitstring length mismatch");
    Conformation c;
    c.lattice = e.lattice;
    c.turns.reserve(e.n_residues - 1);
    c.turns.push_back(kRight);
    for (int t = e.first_turn(); t <= e.last_turn(); ++t) {
        int weight = 0, dir = -1;
        for (int k = 0; k < n_dirs(e.lattice); ++k) {
            if (e.turn_bit(t, k, b)) {
                ++weight;
                dir = k;
            }
        }
        if (weight != 1) return std::nullopt;
        c.turns.push_back(dir);
    }
    return c;
}

Bitstring encode(const Encoding& e, const Conformation& c) {
    validate(c);
    if (c.lattice != e.lattice) throw std::invalid_argument("lattice mismatch");
    if (c.n_residues() != e.n_residues) throw std::invalid_argument("residue count mismatch");
    Bitstring b;
    b.bits.assign(e.n_qubits, 0);
    for (int t = e.first_turn(); t <= e.last_turn(); ++t) {
        int dir = c.turns[t];
        for (int k = 0; k < n_dirs(e.lattice); ++k) {
            const Slot& s = e.slot(t, k);
            int want = k == dir ? 1 : 0;
            if (s.is_variable()) {
                b.bits[s.qubit] = static_cast<std::uint8_t>(want);
            } else if (s.fixed_value != want) {
                throw std::invalid_argument("conformation violates the fixed prefix");
            }
        }
    }
    return b;
}

bool is_feasible(const Encoding& e, const Bitstring& b, FeasibleMode mode) {
    if (b.size() != e.n_qubits) throw std::invalid_argument("bitstring length mismatch");
    for (int t = e.first_turn(); t <= e.last_turn(); ++t) {
        int weight = 0;
        for (int k = 0; k < n_dirs(e.lattice); ++k) weight += e.turn_bit(t, k, b);
        bool ok = mode == FeasibleMode::XY ? weight == 1 : weight <= 1;
        if (!ok) return false;
    }
    return true;
}

std::vector<Bitstring> feasible_states(const Encoding& e, FeasibleMode mode) {
    std::vector<Bitstring> out;
    Bitstring b;
    b.bits.assign(e.n_qubits, 0);

    auto recurse = [&](auto&& self, int t) -> void {
        if (t > e.last_turn()) {
            out.push_back(b);
            return;
        }
        int n = n_dirs(e.lattice);
        int options = n + (mode == FeasibleMode::XZ ? 1 : 0);
        for (int o = 0; o < options; ++o) {
            int dir = o < n ? o : -1;  // -1: empty tuple (XZ only)
            if (dir >= 0) {
                const Slot& s = e.slot(t, dir);
                if (!s.is_variable() && s.fixed_value == 0) continue;  // direction forbidden
            } else {
                bool has_fixed_one = false;
                for (int k = 0; k < n; ++k) {
                    const Slot& s = e.slot(t, k);
                    if (!s.is_variable() && s.fixed_value == 1) has_fixed_one = true;
                }
                if (has_fixed_one) continue;  // tuple weight cannot drop to 0
            }
            for (int k = 0; k < n; ++k) {
                const Slot& s = e.slot(t, k);
                if (s.is_variable()) b.bits[s.qubit] = static_cast<std::uint8_t>(k == dir);
            }
            self(self, t + 1);
        }
    };
    recurse(recurse, 1);
    return out;
}

}  // namespace latticefold
