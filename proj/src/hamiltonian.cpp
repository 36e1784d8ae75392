#include "latticefold/hamiltonian.hpp"

#include <bit>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace latticefold {

namespace {

// Ripple-carry accumulation of turn flags; digits[0] is the least
// significant bit. n_digits must be enough for the maximal count.
std::vector<BooleanPolynomial> count_digits(const Encoding& e, int k, int i, int j, int n_digits,
                                            const std::map<int, int>& overrides) {
    std::vector<BooleanPolynomial> digits(n_digits);
    for (int t = i; t < j; ++t) {
        BooleanPolynomial carry = flag_polynomial(e, t, k, overrides);
        for (int l = 0; l < n_digits && !carry.is_zero(); ++l) {
            BooleanPolynomial sum = xor_poly(digits[l], carry);
            carry = digits[l] * carry;
            digits[l] = std::move(sum);
        }
        if (!carry.is_zero()) throw std::logic_error("digit budget exceeded in sum string");
    }
    return digits;
}

std::vector<BooleanPolynomial> increment(std::vector<BooleanPolynomial> digits) {
    BooleanPolynomial carry = BooleanPolynomial::constant(1.0);
    for (auto& d : digits) {
        if (carry.is_zero()) break;
        BooleanPolynomial sum = xor_poly(d, carry);
        carry = d * carry;
        d = std::move(sum);
    }
    if (!carry.is_zero()) throw std::logic_error("digit budget exceeded in increment");
    return digits;
}

BooleanPolynomial digits_equal(const std::vector<BooleanPolynomial>& a,
                               const std::vector<BooleanPolynomial>& b) {
    BooleanPolynomial out = BooleanPolynomial::constant(1.0);
    size_t n = std::max(a.size(), b.size());
    static const BooleanPolynomial zero;
    for (size_t r = 0; r < n; ++r) {
        out = out * xnor(r < a.size() ? a[r] : zero, r < b.size() ? b[r] : zero);
    }
    return out;
}

}  // namespace

BooleanPolynomial flag_polynomial(const Encoding& e, int t, int k,
                                  const std::map<int, int>& overrides) {
    if (t < 0 || t > e.last_turn()) throw std::out_of_range("turn index out of range");
    if (k < 0 || k >= n_dirs(e.lattice)) throw std::out_of_range("direction index out of range");
    if (auto it = overrides.find(t); it != overrides.end()) {
        return BooleanPolynomial::constant(k == it->second ? 1.0 : 0.0);
    }
    if (t == 0) return BooleanPolynomial::constant(k == kRight ? 1.0 : 0.0);
    const Slot& s = e.slot(t, k);
    if (s.is_variable()) return BooleanPolynomial::variable(static_cast<std::uint32_t>(s.qubit));
    return BooleanPolynomial::constant(s.fixed_value);
}

int sum_digits(int range_len) {
    if (range_len < 1) throw std::invalid_argument("range must be non-empty");
    int d = 0;
    while ((1 << d) <= range_len) ++d;
    return d;
}

BooleanPolynomial sum_string_digit(const Encoding& e, int k, int i, int j, int r,
                                   const std::map<int, int>& overrides) {
    if (i < 0 || i >= j || j > e.n_residues - 1) throw std::out_of_range("residue range out of range");
    int m = sum_digits(j - i);
    if (r < 1 || r > m) throw std::out_of_range("digit index out of range");
    return count_digits(e, k, i, j, m, overrides)[r - 1];
}

BooleanPolynomial h_olap_pair(const Encoding& e, int i, int j) {
    if (i < 0 || j > e.n_residues - 1) throw std::out_of_range("residue index out of range");
    if ((j - i) % 2 != 0 || j - i < 2) throw std::invalid_argument("overlap pairs need even separation >= 2");
    int m = sum_digits(j - i);
    BooleanPolynomial out = BooleanPolynomial::constant(1.0);
    for (int axis = 0; axis < dims(e.lattice); ++axis) {
        auto pos = count_digits(e, positive_dir(e.lattice, axis), i, j, m, {});
        auto neg = count_digits(e, negative_dir(e.lattice, axis), i, j, m, {});
        out = out * digits_equal(pos, neg);
    }
    return out;
}

BooleanPolynomial build_h_overlap(const Encoding& e, double lambda_olap, bool skip_short_range) {
    if (lambda_olap <= 0.0) throw std::invalid_argument("lambda_olap must be positive");
    int N = e.n_residues;
    BooleanPolynomial out;
    int j0 = skip_short_range ? 2 : 1;
    for (int i = 0; i <= N - 3; ++i) {
        for (int j = j0; i + 2 * j <= N - 1; ++j) {
            out += h_olap_pair(e, i, i + 2 * j);
        }
    }
    return out * lambda_olap;
}

BooleanPolynomial adjacency(const Encoding& e, int k, int i, int j) {
    if (i < 0 || j > e.n_residues - 1 || i >= j) throw std::out_of_range("residue index out of range");
    if ((j - i) % 2 == 0 || j - i < 3) throw std::invalid_argument("contact pairs need odd separation >= 3");
    if (k < 0 || k >= n_dirs(e.lattice)) throw std::out_of_range("direction index out of range");
    // Room for count+1 so the comparison below cannot truncate.
    int m = sum_digits(j - i + 1);
    int axis = axis_of(e.lattice, k);
    auto along = count_digits(e, k, i, j, m, {});
    auto against = count_digits(e, opposite(e.lattice, k), i, j, m, {});
    BooleanPolynomial out = digits_equal(along, increment(std::move(against)));
    int m_eq = sum_digits(j - i);
    for (int w = 0; w < dims(e.lattice); ++w) {
        if (w == axis) continue;
        auto pos = count_digits(e, positive_dir(e.lattice, w), i, j, m_eq, {});
        auto neg = count_digits(e, negative_dir(e.lattice, w), i, j, m_eq, {});
        out = out * digits_equal(pos, neg);
    }
    return out;
}

BooleanPolynomial build_h_pair(const Encoding& e, const ProteinInstance& p) {
    if (p.n_residues() != e.n_residues || p.lattice != e.lattice) {
        throw std::invalid_argument("instance does not match encoding");
    }
    BooleanPolynomial out;
    for (auto [a, b] : contact_pairs(p.n_residues())) {
        double strength = p.model.energy(p.sequence[a], p.sequence[b]);
        if (strength == 0.0) continue;
        BooleanPolynomial any_dir;
        for (int k = 0; k < n_dirs(e.lattice); ++k) any_dir += adjacency(e, k, a, b);
        out += strength * any_dir;
    }
    return out;
}

BooleanPolynomial coordinate_polynomial(const Encoding& e, int axis, int a,
                                        const std::map<int, int>& overrides) {
    if (axis < 0 || axis >= dims(e.lattice)) throw std::out_of_range("axis out of range");
    if (a < 0 || a > e.n_residues - 1) throw std::out_of_range("residue index out of range");
    BooleanPolynomial out;
    for (int t = 0; t < a; ++t) {
        out += flag_polynomial(e, t, positive_dir(e.lattice, axis), overrides);
        out -= flag_polynomial(e, t, negative_dir(e.lattice, axis), overrides);
    }
    return out;
}

BooleanPolynomial squared_distance_polynomial(const Encoding& e, int a, int b,
                                              const std::map<int, int>& overrides) {
    BooleanPolynomial out;
    for (int axis = 0; axis < dims(e.lattice); ++axis) {
        BooleanPolynomial d = coordinate_polynomial(e, axis, a, overrides);
        d -= coordinate_polynomial(e, axis, b, overrides);
        out += d * d;
    }
    return out;
}

PauliSum to_pauli(const BooleanPolynomial& poly, int n_qubits) {
    PauliSum out(n_qubits);
    for (const auto& [mono, coeff] : poly.terms()) {
        int deg = static_cast<int>(mono.size());
        if (deg > 30) throw std::length_error("monomial degree too large to expand");
        double scaled = coeff / static_cast<double>(1u << deg);
        for (std::uint32_t subset = 0; subset < (1u << deg); ++subset) {
            std::uint64_t z_mask = 0;
            for (int b = 0; b < deg; ++b) {
                if (subset & (1u << b)) z_mask |= std::uint64_t{1} << mono[b];
            }
            double sign = (std::popcount(subset) & 1) ? -1.0 : 1.0;
            out.add(PauliString{0, z_mask}, sign * scaled);
        }
    }
    return out;
}

double default_lambda_olap(const ProteinInstance& p) {
    double s = 1.0;
    for (auto [a, b] : contact_pairs(p.n_residues())) {
        s += std::abs(p.model.energy(p.sequence[a], p.sequence[b]));
    }
    return s;
}

struct CostHamiltonian::State {
    BooleanPolynomial poly;
    int n_qubits = 0;
    double lambda_olap = 0.0;
    bool includes_short_range = true;
    bool includes_long_range = true;
    mutable std::once_flag pauli_once;
    mutable std::shared_ptr<const PauliSum> pauli;
};

CostHamiltonian::CostHamiltonian(BooleanPolynomial poly, int n_qubits, double lambda_olap,
                                 bool includes_short_range, bool includes_long_range)
    : state_(std::make_shared<State>()) {
    state_->poly = std::move(poly);
    state_->n_qubits = n_qubits;
    state_->lambda_olap = lambda_olap;
    state_->includes_short_range = includes_short_range;
    state_->includes_long_range = includes_long_range;
}

const BooleanPolynomial& CostHamiltonian::polynomial() const { return state_->poly; }
int CostHamiltonian::n_qubits() const { return state_->n_qubits; }
double CostHamiltonian::lambda_olap() const { return state_->lambda_olap; }
bool CostHamiltonian::includes_short_range() const { return state_->includes_short_range; }
bool CostHamiltonian::includes_long_range() const { return state_->includes_long_range; }

const PauliSum& CostHamiltonian::pauli() const {
    std::call_once(state_->pauli_once, [&] {
        state_->pauli = std::make_shared<const PauliSum>(to_pauli(state_->poly, state_->n_qubits));
    });
    return *state_->pauli;
}

double CostHamiltonian::evaluate(const Bitstring& b) const {
    if (b.size() != state_->n_qubits) throw std::invalid_argument("bitstring length mismatch");
    return state_->poly.evaluate(b);
}

double CostHamiltonian::evaluate_index(std::uint64_t idx) const {
    return state_->poly.evaluate_index(idx, state_->n_qubits);
}

std::vector<double> CostHamiltonian::diagonal() const {
    return evaluate_all(state_->poly, state_->n_qubits);
}

CostHamiltonian build_cost(const Encoding& e, const ProteinInstance& p, double lambda_olap,
                           bool skip_short, bool skip_long) {
    BooleanPolynomial poly = build_h_pair(e, p);
    if (!skip_long) poly += build_h_overlap(e, lambda_olap, skip_short);
    return CostHamiltonian(std::move(poly), e.n_qubits, lambda_olap,
                           !skip_short && !skip_long, !skip_long);
}

}  // namespace latticefold
