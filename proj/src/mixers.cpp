#include "latticefold/mixers.hpp"

#include <random>
#include <stdexcept>
#include <vector>

#include "latticefold/statevector.hpp"

namespace latticefold {

namespace {

// Projector factor "neighbor turn j is not going direction k_bar" applied to
// a kernel term. Missing turns and fixed zeros contribute factor one; a
// fixed one annihilates the term. Returns false when the term vanishes.
bool apply_neighbor_control(PauliSum& kernel, const Encoding& e, int j, int k_bar) {
    if (j > e.last_turn()) return true;  // no neighbor on that side
    if (j == 0) return k_bar != kRight;  // turn 0 is fixed Right
    const Slot& s = e.slot(j, k_bar);
    if (!s.is_variable()) return s.fixed_value == 0;
    PauliSum proj(kernel.n_qubits());
    proj.add(PauliString{}, 0.5);
    proj.add(pauli_z(s.qubit), 0.5);
    kernel = kernel * proj;
    return true;
}

// Distance controls of the long-range variants: for every eligible earlier
// residue, multiply by the squared distance to the moved residue, evaluated
// as if turn t already pointed in the proposed direction.
BooleanPolynomial long_range_control(const Encoding& e, int t, int proposed_k) {
    BooleanPolynomial control = BooleanPolynomial::constant(1.0);
    std::map<int, int> overrides{{t, proposed_k}};
    for (int i = 0; i <= e.n_residues - 5; ++i) {
        if (((i - t) % 2 + 2) % 2 != 1) continue;
        control = control * squared_distance_polynomial(e, i, t + 1, overrides);
    }
    return control;
}

std::vector<int> variable_dirs(const Encoding& e, int t) {
    std::vector<int> dirs;
    for (int k = 0; k < n_dirs(e.lattice); ++k) {
        if (e.slot(t, k).is_variable()) dirs.push_back(k);
    }
    return dirs;
}

}  // namespace

std::string mixer_name(MixerKind kind) {
    switch (kind) {
        case MixerKind::X: return "x";
        case MixerKind::XYSimple: return "xy-simple";
        case MixerKind::XZSimple: return "xz-simple";
        case MixerKind::XYShort: return "xy-short";
        case MixerKind::XZShort: return "xz-short";
        case MixerKind::XYLong: return "xy-long";
        case MixerKind::XZLong: return "xz-long";
    }
    throw std::invalid_argument("unknown mixer kind");
}

MixerKind mixer_from_name(const std::string& s) {
    for (MixerKind kind : kAllMixers) {
        if (mixer_name(kind) == s) return kind;
    }
    throw std::invalid_argument("unknown mixer name: " + s);
}

std::optional<FeasibleMode> mixer_feasible_mode(MixerKind kind) {
    switch (kind) {
        case MixerKind::X: return std::nullopt;
        case MixerKind::XYSimple:
        case MixerKind::XYShort:
        case MixerKind::XYLong: return FeasibleMode::XY;
        default: return FeasibleMode::XZ;
    }
}

bool mixer_covers_short_range(MixerKind kind) {
    return kind == MixerKind::XYShort || kind == MixerKind::XZShort ||
           kind == MixerKind::XYLong || kind == MixerKind::XZLong;
}

bool mixer_covers_long_range(MixerKind kind) {
    return kind == MixerKind::XYLong || kind == MixerKind::XZLong;
}

PauliSum swap_term(int qubit_i, int qubit_j, int n_qubits) {
    if (qubit_i == qubit_j) throw std::invalid_argument("swap needs two distinct qubits");
    PauliSum s(n_qubits);
    PauliString xx{(std::uint64_t{1} << qubit_i) | (std::uint64_t{1} << qubit_j), 0};
    PauliString yy{xx.x_mask, xx.x_mask};
    s.add(xx, 0.5);
    s.add(yy, 0.5);
    return s;
}

PauliSum flip_term(const Encoding& e, int t, int k) {
    const Slot& s = e.slot(t, k);
    if (!s.is_variable()) throw std::invalid_argument("flip_term needs a variable slot");
    PauliSum term(e.n_qubits);
    term.add(pauli_x(s.qubit), 1.0);
    for (int ko = 0; ko < n_dirs(e.lattice); ++ko) {
        if (ko == k) continue;
        const Slot& other = e.slot(t, ko);
        if (!other.is_variable()) {
            if (other.fixed_value == 1) return PauliSum(e.n_qubits);  // bit can never be zero
            continue;
        }
        PauliSum proj(e.n_qubits);
        proj.add(PauliString{}, 0.5);
        proj.add(pauli_z(other.qubit), 0.5);
        term = term * proj;
    }
    return term;
}

MixerHamiltonian build_mixer(const Encoding& e, MixerKind kind) {
    PauliSum h(e.n_qubits);
    bool xy = kind == MixerKind::XYSimple || kind == MixerKind::XYShort || kind == MixerKind::XYLong;
    bool long_range = mixer_covers_long_range(kind);

    switch (kind) {
        case MixerKind::X:
            for (int q = 0; q < e.n_qubits; ++q) h.add(pauli_x(q), 1.0);
            break;
        case MixerKind::XYSimple:
            for (int t = e.first_turn(); t <= e.last_turn(); ++t) {
                auto dirs = variable_dirs(e, t);
                for (size_t a = 0; a < dirs.size(); ++a) {
                    for (size_t b = a + 1; b < dirs.size(); ++b) {
                        h += swap_term(e.slot(t, dirs[a]).qubit, e.slot(t, dirs[b]).qubit, e.n_qubits);
                    }
                }
            }
            break;
        case MixerKind::XZSimple:
            for (int t = e.first_turn(); t <= e.last_turn(); ++t) {
                for (int k : variable_dirs(e, t)) h += flip_term(e, t, k);
            }
            break;
        default:
            for (int t = e.first_turn(); t <= e.last_turn(); ++t) {
                auto dirs = variable_dirs(e, t);
                if (xy) {
                    for (int k : dirs) {
                        for (int k_new : dirs) {
                            if (k == k_new) continue;
                            PauliSum term =
                                swap_term(e.slot(t, k).qubit, e.slot(t, k_new).qubit, e.n_qubits);
                            // The swap moves amplitude both ways, so both
                            // swapped directions need their opposite guarded;
                            // on overlap-free states the extra factor is
                            // inactive.
                            bool alive = true;
                            for (int k_bar : {opposite(e.lattice, k_new), opposite(e.lattice, k)}) {
                                alive = alive && apply_neighbor_control(term, e, t - 1, k_bar) &&
                                        apply_neighbor_control(term, e, t + 1, k_bar);
                            }
                            if (!alive) continue;
                            if (long_range) {
                                // both substituted distance products, for the
                                // same two-way reason as the neighbor guards
                                term = term * to_pauli(long_range_control(e, t, k_new) *
                                                           long_range_control(e, t, k),
                                                       e.n_qubits);
                            }
                            h += term;
                        }
                    }
                } else {
                    for (int k : dirs) {
                        PauliSum term = flip_term(e, t, k);
                        int k_bar = opposite(e.lattice, k);
                        if (!apply_neighbor_control(term, e, t - 1, k_bar)) continue;
                        if (!apply_neighbor_control(term, e, t + 1, k_bar)) continue;
                        if (long_range) {
                            term = term * to_pauli(long_range_control(e, t, k), e.n_qubits);
                        }
                        h += term;
                    }
                }
            }
            break;
    }
    return MixerHamiltonian{kind, std::move(h), e};
}

bool commutator_nonzero(const CostHamiltonian& h_c, const MixerHamiltonian& h_m,
                        double threshold, std::uint64_t seed) {
    if (h_c.n_qubits() != h_m.pauli.n_qubits()) throw std::invalid_argument("qubit count mismatch");
    int n = h_c.n_qubits();
    Statevector v = random_statevector(n, seed);
    PauliAction a(h_c.pauli());
    PauliAction b(h_m.pauli);
    auto av = a.apply(v.amps);
    auto bv = b.apply(v.amps);
    auto abv = a.apply(bv);
    auto bav = b.apply(av);
    double diff = 0.0;
    for (size_t i = 0; i < abv.size(); ++i) diff += std::norm(abv[i] - bav[i]);
    return std::sqrt(diff) > threshold;
}

}  // namespace latticefold
