#pragma once

#include <map>
#include <memory>
#include <optional>

#include "latticefold/encoding.hpp"
#include "latticefold/pauli.hpp"
#include "latticefold/poly.hpp"

namespace latticefold {

// Symbolic flag polynomial of direction_flag: the polynomial over the
// encoding's qubits whose value on any bitstring is d^t_k. Valid for t = 0
// (the fixed Right move) through N-2. `overrides` substitutes whole turns
// by a constant direction, which detaches the result from those qubits.
BooleanPolynomial flag_polynomial(const Encoding& e, int t, int k,
                                  const std::map<int, int>& overrides = {});

// Number of binary digits that can appear in a count of `range_len` turns.
int sum_digits(int range_len);

// Digit r (r = 1 is least significant) of the number of turns in [i, j)
// going direction k. Exact for every bitstring; digits above sum_digits()
// would be identically zero and are rejected.
BooleanPolynomial sum_string_digit(const Encoding& e, int k, int i, int j, int r,
                                   const std::map<int, int>& overrides = {});

// 1 iff residues i and j occupy the same lattice point (j - i even >= 2).
BooleanPolynomial h_olap_pair(const Encoding& e, int i, int j);

// lambda * sum of overlap indicators over residue pairs at even separation;
// skip_short_range drops the (i, i+2) pairs.
BooleanPolynomial build_h_overlap(const Encoding& e, double lambda_olap, bool skip_short_range);

// 1 iff residue j sits exactly one unit in direction k from residue i
// (j - i odd >= 3).
BooleanPolynomial adjacency(const Encoding& e, int k, int i, int j);

// Sum over contact-eligible pairs of interaction strength times adjacency.
BooleanPolynomial build_h_pair(const Encoding& e, const ProteinInstance& p);

// Coordinate of residue a along `axis` as a polynomial of the turn flags.
BooleanPolynomial coordinate_polynomial(const Encoding& e, int axis, int a,
                                        const std::map<int, int>& overrides = {});

// Squared lattice distance between residues a and b as a polynomial.
BooleanPolynomial squared_distance_polynomial(const Encoding& e, int a, int b,
                                              const std::map<int, int>& overrides = {});

// Substitute q = (1 - Z)/2 in every monomial. The result is diagonal and
// has the same eigenvalue as the polynomial's value on every basis state.
PauliSum to_pauli(const BooleanPolynomial& poly, int n_qubits);

// Penalty weight that makes any overlap cost more than the largest possible
// contact gain: 1 + sum of |P| over contact-eligible pairs.
double default_lambda_olap(const ProteinInstance& p);

// Immutable after construction; copies share state, and the diagonal Pauli
// form is built on first use (thread-safe) since it can be much larger than
// the polynomial.
class CostHamiltonian {
public:
    CostHamiltonian() = default;
    CostHamiltonian(BooleanPolynomial poly, int n_qubits, double lambda_olap,
                    bool includes_short_range, bool includes_long_range);

    const BooleanPolynomial& polynomial() const;
    int n_qubits() const;
    double lambda_olap() const;
    bool includes_short_range() const;
    bool includes_long_range() const;

    const PauliSum& pauli() const;

    double evaluate(const Bitstring& b) const;
    double evaluate_index(std::uint64_t idx) const;

    // Eigenvalues on all 2^n basis states.
    std::vector<double> diagonal() const;

private:
    struct State;
    std::shared_ptr<State> state_;
};

// H_C = H_overlap + H_pair. skip_short delegates (i, i+2) overlaps to a
// short-range mixer; skip_long drops the overlap component entirely.
CostHamiltonian build_cost(const Encoding& e, const ProteinInstance& p, double lambda_olap,
                           bool skip_short, bool skip_long);

}  // namespace latticefold
