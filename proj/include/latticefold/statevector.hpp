#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "latticefold/encoding.hpp"
#include "latticefold/hamiltonian.hpp"

namespace latticefold {

struct MixerHamiltonian;

using cplx = std::complex<double>;

// Dense-statevector size guard, default 26 qubits; the environment variable
// LATTICEFOLD_MAX_QUBITS overrides it.
int max_statevector_qubits();

struct Statevector {
    int n_qubits = 0;
    std::vector<cplx> amps;

    static Statevector basis_state(int n_qubits, std::uint64_t idx);
    std::size_t dim() const { return amps.size(); }
    double norm() const;
    void normalize();
};

// Normalized vector with Gaussian entries from a deterministic stream.
Statevector random_statevector(int n_qubits, std::uint64_t seed);

// A PauliSum compiled to index-space masks for fast statevector application:
// term action is out[i ^ flip] += alpha * (-1)^popcount(i & sign) * in[i].
class PauliAction {
public:
    struct Term {
        std::uint64_t flip = 0;
        std::uint64_t sign = 0;
        cplx alpha;          // coeff * i^(#Y)
        double coeff = 0.0;  // original real coefficient
        cplx unit_phase;     // i^(#Y)
    };

    PauliAction() = default;
    explicit PauliAction(const PauliSum& sum);

    int n_qubits() const { return n_qubits_; }
    double one_norm() const { return one_norm_; }
    const std::vector<Term>& terms() const { return terms_; }

    void apply(const cplx* in, cplx* out) const;  // out = H * in, out zeroed first
    std::vector<cplx> apply(const std::vector<cplx>& in) const;

private:
    int n_qubits_ = 0;
    double one_norm_ = 0.0;
    std::vector<Term> terms_;
};

struct QaoaSchedule {
    std::vector<double> gammas;
    std::vector<double> betas;

    int depth() const { return static_cast<int>(gammas.size()); }
    void validate() const;
};

enum class EvolutionMode { Exact, Trotter };

struct EvolutionConfig {
    EvolutionMode mode = EvolutionMode::Exact;
    int trotter_steps = 1;
    double exp_tolerance = 1e-10;
    bool subspace_projection = false;
};

enum class InitKind { UniformAll, Feasible };

Statevector prepare_uniform(int n_qubits);
Statevector prepare_feasible(const Encoding& e, FeasibleMode mode);

// Diagonal phase evolution: amp_b *= exp(-i * gamma * E_b).
Statevector evolve_cost(Statevector psi, std::span<const double> energies, double gamma);
Statevector evolve_cost(Statevector psi, const CostHamiltonian& h, double gamma);

// exp(-i * beta * H_M) psi. Exact mode uses a matrix-free Krylov/Taylor
// action to cfg.exp_tolerance, optionally replaced by a small dense
// exponential on the mixer's feasible subspace when subspace_projection is
// set and psi lies in that subspace. Trotter mode applies per-term
// exponentials in lexicographic Pauli-string order, trotter_steps times.
Statevector evolve_mixer(Statevector psi, const MixerHamiltonian& m, double beta,
                         const EvolutionConfig& cfg = {});

// Exact exponential action on a plain operator (no subspace machinery).
Statevector evolve_pauli_exact(Statevector psi, const PauliAction& h, double beta,
                               double tolerance = 1e-10);

double expectation(const Statevector& psi, std::span<const double> energies);
double expectation(const Statevector& psi, const CostHamiltonian& h);
double sampled_expectation(const Statevector& psi, const CostHamiltonian& h, int shots,
                           std::uint64_t seed);

// Deterministic measurement sampling from |amp|^2.
std::vector<std::uint64_t> sample_indices(const Statevector& psi, int shots, std::uint64_t seed);

// Basis indices of the oracle's minimum-energy folds under the encoding.
std::vector<std::uint64_t> ground_state_indices(const Encoding& e, const FoldTable& table);
double ground_state_probability(const Statevector& psi,
                                const std::vector<std::uint64_t>& ground_indices);

struct QaoaResult {
    Statevector state;
    double expectation = 0.0;
    double ground_probability = 0.0;
};

QaoaResult run_qaoa(const Encoding& e, const CostHamiltonian& h_c, const MixerHamiltonian& h_m,
                    const QaoaSchedule& schedule, InitKind init, const EvolutionConfig& cfg,
                    const std::vector<std::uint64_t>& ground_indices);

// Debug dump: 8-byte little-endian qubit count, then interleaved (re, im)
// 64-bit floats.
void write_statevector(const std::string& path, const Statevector& psi);
Statevector read_statevector(const std::string& path);

}  // namespace latticefold
