#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "latticefold/hamiltonian.hpp"

namespace latticefold {

enum class MixerKind { X, XYSimple, XZSimple, XYShort, XZShort, XYLong, XZLong };

constexpr MixerKind kAllMixers[] = {
    MixerKind::X,       MixerKind::XYSimple, MixerKind::XZSimple, MixerKind::XYShort,
    MixerKind::XZShort, MixerKind::XYLong,   MixerKind::XZLong,
};

std::string mixer_name(MixerKind kind);           // "x", "xy-simple", ...
MixerKind mixer_from_name(const std::string& s);

// Subspace the mixer's evolution preserves; nullopt for the plain X mixer.
std::optional<FeasibleMode> mixer_feasible_mode(MixerKind kind);

// Whether the mixer enforces the short-range / all-overlap hard constraint,
// i.e. which part of the overlap penalty it can take over from the cost.
bool mixer_covers_short_range(MixerKind kind);
bool mixer_covers_long_range(MixerKind kind);

struct MixerHamiltonian {
    MixerKind kind = MixerKind::X;
    PauliSum pauli;
    Encoding encoding;
};

// (X_i X_j + Y_i Y_j)/2: moves a one between two qubits and annihilates
// |00> and |11>.
PauliSum swap_term(int qubit_i, int qubit_j, int n_qubits);

// X on slot (t, k) conditioned on every other bit of the turn being zero.
// 2^m Pauli terms of weight 1/2^m where m counts the other variable slots.
PauliSum flip_term(const Encoding& e, int t, int k);

MixerHamiltonian build_mixer(const Encoding& e, MixerKind kind);

// Probe with a random unit vector: true iff ||[H_C, H_M] v|| exceeds the
// threshold.
bool commutator_nonzero(const CostHamiltonian& h_c, const MixerHamiltonian& h_m,
                        double threshold = 1e-9, std::uint64_t seed = 1);

}  // namespace latticefold
