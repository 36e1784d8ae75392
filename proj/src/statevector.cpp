#include "latticefold/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <numbers>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "latticefold/kernels.hpp"
#include "latticefold/mixers.hpp"

namespace latticefold {

namespace {

std::uint64_t reverse_qubit_mask(std::uint64_t qubit_mask, int n_qubits) {
    std::uint64_t out = 0;
    for (std::uint64_t m = qubit_mask; m;) {
        std::uint64_t bit = m & (~m + 1);
        m ^= bit;
        int q = std::countr_zero(bit);
        out |= std::uint64_t{1} << (n_qubits - 1 - q);
    }
    return out;
}

double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

int max_statevector_qubits() {
    if (const char* env = std::getenv("LATTICEFOLD_MAX_QUBITS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 26;
}

Statevector Statevector::basis_state(int n_qubits, std::uint64_t idx) {
    if (n_qubits < 1 || n_qubits > max_statevector_qubits()) {
        throw std::invalid_argument("statevector qubit count out of range");
    }
    Statevector psi;
    psi.n_qubits = n_qubits;
    psi.amps.assign(std::size_t{1} << n_qubits, cplx{});
    psi.amps.at(idx) = 1.0;
    return psi;
}

double Statevector::norm() const { return std::sqrt(kernels::norm_sq(amps.data(), amps.size())); }

void Statevector::normalize() {
    double n = norm();
    if (n == 0.0) throw std::domain_error("cannot normalize the zero vector");
    kernels::scale(amps.data(), amps.size(), 1.0 / n);
}

Statevector random_statevector(int n_qubits, std::uint64_t seed) {
    Statevector psi = Statevector::basis_state(n_qubits, 0);
    std::mt19937_64 rng(seed);
    for (auto& a : psi.amps) {
        // Box-Muller on the raw bit stream keeps this reproducible across
        // standard libraries.
        double u1 = std::max(uniform_unit(rng), 0x1.0p-60);
        double u2 = uniform_unit(rng);
        double r = std::sqrt(-2.0 * std::log(u1));
        a = cplx{r * std::cos(2.0 * std::numbers::pi * u2), r * std::sin(2.0 * std::numbers::pi * u2)};
    }
    psi.normalize();
    return psi;
}

PauliAction::PauliAction(const PauliSum& sum) : n_qubits_(sum.n_qubits()) {
    terms_.reserve(sum.size());
    for (const auto& [p, c] : sum.terms()) {
        Term t;
        t.flip = reverse_qubit_mask(p.x_mask, n_qubits_);
        t.sign = reverse_qubit_mask(p.z_mask, n_qubits_);
        int n_y = std::popcount(p.x_mask & p.z_mask);
        static constexpr cplx kI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        t.unit_phase = kI[n_y % 4];
        t.coeff = c;
        t.alpha = c * t.unit_phase;
        terms_.push_back(t);
        one_norm_ += std::abs(c);
    }
}

void PauliAction::apply(const cplx* in, cplx* out) const {
    std::size_t dim = std::size_t{1} << n_qubits_;
    std::fill(out, out + dim, cplx{});
    for (const auto& t : terms_) {
        kernels::pauli_accumulate(out, in, dim, t.flip, t.sign, t.alpha);
    }
}

std::vector<cplx> PauliAction::apply(const std::vector<cplx>& in) const {
    std::vector<cplx> out(in.size());
    apply(in.data(), out.data());
    return out;
}

void QaoaSchedule::validate() const {
    if (gammas.size() != betas.size()) throw std::invalid_argument("schedule lengths differ");
}

Statevector prepare_uniform(int n_qubits) {
    Statevector psi = Statevector::basis_state(n_qubits, 0);
    double a = std::pow(2.0, -0.5 * n_qubits);
    std::fill(psi.amps.begin(), psi.amps.end(), cplx{a, 0.0});
    return psi;
}

Statevector prepare_feasible(const Encoding& e, FeasibleMode mode) {
    auto states = feasible_states(e, mode);
    if (states.empty()) throw std::domain_error("feasible set is empty");
    Statevector psi = Statevector::basis_state(e.n_qubits, 0);
    psi.amps[0] = 0.0;
    double a = 1.0 / std::sqrt(static_cast<double>(states.size()));
    for (const auto& b : states) psi.amps.at(b.index()) = cplx{a, 0.0};
    return psi;
}

Statevector evolve_cost(Statevector psi, std::span<const double> energies, double gamma) {
    if (energies.size() != psi.dim()) throw std::invalid_argument("dimension mismatch");
    kernels::phase_rotate(psi.amps.data(), energies.data(), psi.dim(), gamma);
    return psi;
}

Statevector evolve_cost(Statevector psi, const CostHamiltonian& h, double gamma) {
    if (h.n_qubits() != psi.n_qubits) throw std::invalid_argument("dimension mismatch");
    auto diag = h.diagonal();
    return evolve_cost(std::move(psi), diag, gamma);
}

namespace {

// ---- small dense complex linear algebra (column-major) ----

std::vector<cplx> matmul(const std::vector<cplx>& a, const std::vector<cplx>& b, int d) {
    std::vector<cplx> c(static_cast<std::size_t>(d) * d);
    for (int j = 0; j < d; ++j) {
        for (int k = 0; k < d; ++k) {
            cplx bkj = b[k + j * d];
            if (bkj == cplx{}) continue;
            for (int i = 0; i < d; ++i) c[i + j * d] += a[i + k * d] * bkj;
        }
    }
    return c;
}

double one_norm(const std::vector<cplx>& a, int d) {
    double best = 0.0;
    for (int j = 0; j < d; ++j) {
        double col = 0.0;
        for (int i = 0; i < d; ++i) col += std::abs(a[i + j * d]);
        best = std::max(best, col);
    }
    return best;
}

// exp(A) by scaling-and-squaring with a Taylor series; fine for the small
// matrices used here (Krylov projections and feasible subspaces).
std::vector<cplx> expm_dense(std::vector<cplx> a, int d) {
    int s = 0;
    double nrm = one_norm(a, d);
    while (nrm > 0.5) {
        nrm /= 2.0;
        ++s;
    }
    double scale = std::pow(2.0, -s);
    for (auto& v : a) v *= scale;

    std::vector<cplx> e(static_cast<std::size_t>(d) * d), term(static_cast<std::size_t>(d) * d);
    for (int i = 0; i < d; ++i) e[i + i * d] = term[i + i * d] = 1.0;
    for (int k = 1; k <= 40; ++k) {
        term = matmul(term, a, d);
        for (auto& v : term) v /= static_cast<double>(k);
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += term[i];
        if (one_norm(term, d) < 1e-18) break;
    }
    for (int i = 0; i < s; ++i) e = matmul(e, e, d);
    return e;
}

// exp(-i * tau * T) e1 for a real symmetric tridiagonal T.
std::vector<cplx> expm_tridiag_e1(const std::vector<double>& diag, const std::vector<double>& off,
                                  int m, double tau) {
    std::vector<cplx> t(static_cast<std::size_t>(m) * m);
    const cplx minus_i_tau{0.0, -tau};
    for (int i = 0; i < m; ++i) {
        t[i + i * m] = minus_i_tau * diag[i];
        if (i + 1 < m) {
            t[(i + 1) + i * m] = minus_i_tau * off[i];
            t[i + (i + 1) * m] = minus_i_tau * off[i];
        }
    }
    auto e = expm_dense(std::move(t), m);
    return {e.begin(), e.begin() + m};
}

// Taylor series for exp(-i beta H) psi; only used when |beta| * ||H||_1 is
// small enough for fast convergence.
void taylor_evolve(std::vector<cplx>& psi, const PauliAction& h, double beta, double tol) {
    std::vector<cplx> term = psi, next(psi.size());
    const cplx minus_i_beta{0.0, -beta};
    for (int k = 1; k <= 60; ++k) {
        h.apply(term.data(), next.data());
        cplx factor = minus_i_beta / static_cast<double>(k);
        kernels::scale(next.data(), next.size(), factor);
        std::swap(term, next);
        kernels::axpy(psi.data(), term.data(), psi.size(), 1.0);
        if (std::sqrt(kernels::norm_sq(term.data(), term.size())) < tol * 0.1) return;
    }
    throw std::runtime_error("taylor series did not converge");
}

void krylov_evolve(std::vector<cplx>& psi, const PauliAction& h, double beta, double tol) {
    const std::size_t dim = psi.size();
    const int m_max = 30;
    double remaining = std::abs(beta);
    double direction = beta >= 0 ? 1.0 : -1.0;
    double tau = remaining;
    int guard = 0;

    while (remaining > 0.0) {
        if (++guard > 10000) throw std::runtime_error("tolerance not reachable within iteration cap");
        double psi_norm = std::sqrt(kernels::norm_sq(psi.data(), dim));
        std::vector<std::vector<cplx>> basis;
        basis.push_back(psi);
        kernels::scale(basis[0].data(), dim, 1.0 / psi_norm);

        std::vector<double> diag, off;
        bool invariant = false;
        std::vector<cplx> w(dim);
        for (int j = 0; j < m_max; ++j) {
            h.apply(basis[j].data(), w.data());
            if (j > 0) kernels::axpy(w.data(), basis[j - 1].data(), dim, -off[j - 1]);
            double aj = kernels::dotc(basis[j].data(), w.data(), dim).real();
            diag.push_back(aj);
            kernels::axpy(w.data(), basis[j].data(), dim, -aj);
            // full reorthogonalization; the basis is small
            for (const auto& v : basis) {
                cplx overlap = kernels::dotc(v.data(), w.data(), dim);
                kernels::axpy(w.data(), v.data(), dim, -overlap);
            }
            double bj = std::sqrt(kernels::norm_sq(w.data(), dim));
            if (bj < 1e-13 * std::max(1.0, h.one_norm())) {
                invariant = true;
                break;
            }
            off.push_back(bj);
            if (j + 1 < m_max) {
                basis.push_back(w);
                kernels::scale(basis.back().data(), dim, 1.0 / bj);
            }
        }

        int m = static_cast<int>(diag.size());
        double coupling = invariant ? 0.0 : off.back();
        if (invariant && remaining > tau) tau = remaining;
        std::vector<cplx> u;
        while (true) {
            tau = std::min(tau, remaining);
            u = expm_tridiag_e1(diag, off, m, direction * tau);
            double err = coupling * std::abs(u[m - 1]) * psi_norm;
            double budget = tol * std::max(tau / std::abs(beta), 1e-3);
            if (err <= budget) break;
            if (tau <= 1e-14 * std::abs(beta)) {
                throw std::runtime_error("tolerance not reachable within iteration cap");
            }
            tau *= 0.5;
        }

        std::fill(psi.begin(), psi.end(), cplx{});
        for (int j = 0; j < m; ++j) {
            kernels::axpy(psi.data(), basis[j].data(), dim, psi_norm * u[j]);
        }
        remaining -= tau;
        tau *= 2.0;
    }
}

// Index list and position map of the mixer's preserved subspace.
struct SubspaceBasis {
    std::vector<std::uint64_t> indices;
    std::unordered_map<std::uint64_t, int> position;
};

SubspaceBasis subspace_basis(const Encoding& e, FeasibleMode mode) {
    SubspaceBasis sb;
    for (const auto& b : feasible_states(e, mode)) {
        sb.position.emplace(b.index(), static_cast<int>(sb.indices.size()));
        sb.indices.push_back(b.index());
    }
    return sb;
}

bool subspace_evolve(Statevector& psi, const MixerHamiltonian& m, double beta, double tol) {
    auto mode = mixer_feasible_mode(m.kind);
    if (!mode) return false;
    auto sb = subspace_basis(m.encoding, *mode);
    int d = static_cast<int>(sb.indices.size());
    if (static_cast<std::size_t>(d) >= psi.dim()) return false;

    double inside = 0.0;
    for (auto idx : sb.indices) inside += std::norm(psi.amps[idx]);
    double total = kernels::norm_sq(psi.amps.data(), psi.dim());
    if (total - inside > 1e-12 * total) return false;  // psi leaves the subspace

    PauliAction action(m.pauli);
    std::vector<cplx> h_sub(static_cast<std::size_t>(d) * d);
    for (int j = 0; j < d; ++j) {
        std::uint64_t col = sb.indices[j];
        for (const auto& t : action.terms()) {
            std::uint64_t row = col ^ t.flip;
            auto it = sb.position.find(row);
            if (it == sb.position.end()) continue;  // amplitude cannot leave the subspace
            cplx v = t.alpha;
            if (std::popcount(col & t.sign) & 1) v = -v;
            h_sub[it->second + static_cast<std::size_t>(j) * d] += v;
        }
    }
    const cplx minus_i_beta{0.0, -beta};
    for (auto& v : h_sub) v *= minus_i_beta;
    auto u = expm_dense(std::move(h_sub), d);

    std::vector<cplx> in(d);
    for (int j = 0; j < d; ++j) in[j] = psi.amps[sb.indices[j]];
    std::fill(psi.amps.begin(), psi.amps.end(), cplx{});
    for (int i = 0; i < d; ++i) {
        cplx acc{};
        for (int j = 0; j < d; ++j) acc += u[i + static_cast<std::size_t>(j) * d] * in[j];
        psi.amps[sb.indices[i]] = acc;
    }
    (void)tol;
    return true;
}

void trotter_evolve(Statevector& psi, const PauliSum& sum, double beta, int steps) {
    if (steps < 1) throw std::invalid_argument("trotter steps must be >= 1");
    PauliAction h(sum);
    // deterministic order: lexicographic in the rendered Pauli letters
    std::vector<std::pair<std::string, const PauliAction::Term*>> order;
    order.reserve(h.terms().size());
    {
        size_t i = 0;
        for (const auto& [p, c] : sum.terms()) {
            order.emplace_back(p.to_letters(sum.n_qubits()), &h.terms()[i++]);
        }
    }
    std::sort(order.begin(), order.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    double theta = beta / steps;
    std::vector<cplx> scratch(psi.dim());
    for (int s = 0; s < steps; ++s) {
        for (const auto& [letters, t] : order) {
            // exp(-i theta c P) = cos(theta c) - i sin(theta c) P, P^2 = 1
            double phi = theta * t->coeff;
            scratch = psi.amps;
            kernels::scale(scratch.data(), scratch.size(), std::cos(phi));
            cplx alpha = cplx{0.0, -std::sin(phi)} * t->unit_phase;
            kernels::pauli_accumulate(scratch.data(), psi.amps.data(), psi.dim(), t->flip, t->sign,
                                      alpha);
            psi.amps.swap(scratch);
        }
    }
}

}  // namespace

Statevector evolve_pauli_exact(Statevector psi, const PauliAction& h, double beta, double tolerance) {
    if (h.n_qubits() != psi.n_qubits) throw std::invalid_argument("dimension mismatch");
    if (beta == 0.0 || h.one_norm() == 0.0) return psi;
    if (std::abs(beta) * h.one_norm() <= 0.5) {
        taylor_evolve(psi.amps, h, beta, tolerance);
    } else {
        krylov_evolve(psi.amps, h, beta, tolerance);
    }
    psi.normalize();
    return psi;
}

Statevector evolve_mixer(Statevector psi, const MixerHamiltonian& m, double beta,
                         const EvolutionConfig& cfg) {
    if (m.pauli.n_qubits() != psi.n_qubits) throw std::invalid_argument("dimension mismatch");
    if (cfg.mode == EvolutionMode::Trotter) {
        trotter_evolve(psi, m.pauli, beta, cfg.trotter_steps);
        psi.normalize();
        return psi;
    }
    if (cfg.subspace_projection && subspace_evolve(psi, m, beta, cfg.exp_tolerance)) {
        psi.normalize();
        return psi;
    }
    return evolve_pauli_exact(std::move(psi), PauliAction(m.pauli), beta, cfg.exp_tolerance);
}

double expectation(const Statevector& psi, std::span<const double> energies) {
    if (energies.size() != psi.dim()) throw std::invalid_argument("dimension mismatch");
    return kernels::weighted_prob_sum(psi.amps.data(), energies.data(), psi.dim());
}

double expectation(const Statevector& psi, const CostHamiltonian& h) {
    auto diag = h.diagonal();
    return expectation(psi, diag);
}

std::vector<std::uint64_t> sample_indices(const Statevector& psi, int shots, std::uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("shots must be >= 1");
    std::vector<double> cdf(psi.dim());
    double acc = 0.0;
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        acc += std::norm(psi.amps[i]);
        cdf[i] = acc;
    }
    std::mt19937_64 rng(seed);
    std::vector<std::uint64_t> out(shots);
    for (auto& s : out) {
        double u = uniform_unit(rng) * acc;
        s = std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
        if (s >= psi.dim()) s = psi.dim() - 1;
    }
    return out;
}

double sampled_expectation(const Statevector& psi, const CostHamiltonian& h, int shots,
                           std::uint64_t seed) {
    auto samples = sample_indices(psi, shots, seed);
    double acc = 0.0;
    for (auto idx : samples) acc += h.evaluate_index(idx);
    return acc / static_cast<double>(samples.size());
}

std::vector<std::uint64_t> ground_state_indices(const Encoding& e, const FoldTable& table) {
    std::vector<std::uint64_t> out;
    out.reserve(table.ground_indices.size());
    for (int i : table.ground_indices) out.push_back(encode(e, table.folds[i]).index());
    std::sort(out.begin(), out.end());
    return out;
}

double ground_state_probability(const Statevector& psi,
                                const std::vector<std::uint64_t>& ground_indices) {
    double p = 0.0;
    for (auto idx : ground_indices) p += std::norm(psi.amps.at(idx));
    return p;
}

QaoaResult run_qaoa(const Encoding& e, const CostHamiltonian& h_c, const MixerHamiltonian& h_m,
                    const QaoaSchedule& schedule, InitKind init, const EvolutionConfig& cfg,
                    const std::vector<std::uint64_t>& ground_indices) {
    schedule.validate();
    if (h_c.n_qubits() != e.n_qubits || h_m.pauli.n_qubits() != e.n_qubits) {
        throw std::invalid_argument("dimension mismatch");
    }
    Statevector psi = init == InitKind::UniformAll ? prepare_uniform(e.n_qubits)
                                                   : prepare_feasible(e, FeasibleMode::XY);
    auto diag = h_c.diagonal();
    for (int i = 0; i < schedule.depth(); ++i) {
        psi = evolve_cost(std::move(psi), diag, schedule.gammas[i]);
        psi = evolve_mixer(std::move(psi), h_m, schedule.betas[i], cfg);
    }
    QaoaResult r;
    r.expectation = expectation(psi, diag);
    r.ground_probability = ground_state_probability(psi, ground_indices);
    r.state = std::move(psi);
    return r;
}

void write_statevector(const std::string& path, const Statevector& psi) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    std::uint64_t n = static_cast<std::uint64_t>(psi.n_qubits);
    out.write(reinterpret_cast<const char*>(&n), 8);
    for (const auto& a : psi.amps) {
        double re = a.real(), im = a.imag();
        out.write(reinterpret_cast<const char*>(&re), 8);
        out.write(reinterpret_cast<const char*>(&im), 8);
    }
}

Statevector read_statevector(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::uint64_t n = 0;
    in.read(reinterpret_cast<char*>(&n), 8);
    Statevector psi = Statevector::basis_state(static_cast<int>(n), 0);
    for (auto& a : psi.amps) {
        double re = 0, im = 0;
        in.read(reinterpret_cast<char*>(&re), 8);
        in.read(reinterpret_cast<char*>(&im), 8);
        a = cplx{re, im};
    }
    if (!in) throw std::runtime_error("truncated statevector file");
    return psi;
}

}  // namespace latticefold
