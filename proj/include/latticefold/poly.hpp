#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "latticefold/encoding.hpp"

namespace latticefold {

// Multilinear polynomial over binary qubit variables. Keys are sorted
// distinct qubit indices; the empty key is the constant term. q^2 = q is
// enforced on multiplication and zero coefficients are pruned, so equal
// polynomials have identical term maps.
class BooleanPolynomial {
public:
    using Monomial = std::vector<std::uint32_t>;
    using TermMap = std::map<Monomial, double>;

    BooleanPolynomial() = default;
    static BooleanPolynomial constant(double c);
    static BooleanPolynomial variable(std::uint32_t qubit);

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const;
    std::uint32_t max_qubit() const;  // highest referenced index; 0 if constant

    void add_term(const Monomial& m, double coeff);

    BooleanPolynomial& operator+=(const BooleanPolynomial& o);
    BooleanPolynomial& operator-=(const BooleanPolynomial& o);
    BooleanPolynomial& operator*=(double s);
    friend BooleanPolynomial operator+(BooleanPolynomial a, const BooleanPolynomial& b) { return a += b; }
    friend BooleanPolynomial operator-(BooleanPolynomial a, const BooleanPolynomial& b) { return a -= b; }
    friend BooleanPolynomial operator*(BooleanPolynomial a, double s) { return a *= s; }
    friend BooleanPolynomial operator*(double s, BooleanPolynomial a) { return a *= s; }
    friend BooleanPolynomial operator*(const BooleanPolynomial& a, const BooleanPolynomial& b);

    friend bool operator==(const BooleanPolynomial&, const BooleanPolynomial&) = default;

    double evaluate(const Bitstring& b) const;
    // Evaluate on the basis state with the big-endian index convention.
    double evaluate_index(std::uint64_t idx, int n_qubits) const;

private:
    TermMap terms_;
};

// XNOR(p, q) = 1 - p - q + 2pq;  XOR(p, q) = p + q - 2pq.
BooleanPolynomial xnor(const BooleanPolynomial& p, const BooleanPolynomial& q);
BooleanPolynomial xor_poly(const BooleanPolynomial& p, const BooleanPolynomial& q);

// Values of the polynomial on all 2^n basis states, indexed big-endian.
// Cost is sum over monomials of 2^(n - degree).
std::vector<double> evaluate_all(const BooleanPolynomial& p, int n_qubits);

}  // namespace latticefold
