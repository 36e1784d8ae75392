#include "latticefold/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace latticefold {

BooleanPolynomial BooleanPolynomial::constant(double c) {
    BooleanPolynomial p;
    p.add_term({}, c);
    return p;
}

BooleanPolynomial BooleanPolynomial::variable(std::uint32_t qubit) {
    BooleanPolynomial p;
    p.add_term({qubit}, 1.0);
    return p;
}

int BooleanPolynomial::degree() const {
    size_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.size());
    return static_cast<int>(d);
}

std::uint32_t BooleanPolynomial::max_qubit() const {
    std::uint32_t q = 0;
    for (const auto& [m, c] : terms_) {
        if (!m.empty()) q = std::max(q, m.back());
    }
    return q;
}

void BooleanPolynomial::add_term(const Monomial& m, double coeff) {
    if (coeff == 0.0) return;
    auto [it, inserted] = terms_.try_emplace(m, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0.0) terms_.erase(it);
    }
}

BooleanPolynomial& BooleanPolynomial::operator+=(const BooleanPolynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

BooleanPolynomial& BooleanPolynomial::operator-=(const BooleanPolynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

BooleanPolynomial& BooleanPolynomial::operator*=(double s) {
    if (s == 0.0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
}

BooleanPolynomial operator*(const BooleanPolynomial& a, const BooleanPolynomial& b) {
    BooleanPolynomial out;
    BooleanPolynomial::Monomial merged;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            merged.clear();
            std::set_union(ma.begin(), ma.end(), mb.begin(), mb.end(), std::back_inserter(merged));
            out.add_term(merged, ca * cb);
        }
    }
    return out;
}

double BooleanPolynomial::evaluate(const Bitstring& b) const {
    double v = 0.0;
    for (const auto& [m, c] : terms_) {
        bool all = true;
        for (std::uint32_t q : m) {
            if (q >= b.bits.size()) throw std::out_of_range("bitstring too short for polynomial");
            if (!b.bits[q]) {
                all = false;
                break;
            }
        }
        if (all) v += c;
    }
    return v;
}

double BooleanPolynomial::evaluate_index(std::uint64_t idx, int n_qubits) const {
    double v = 0.0;
    for (const auto& [m, c] : terms_) {
        bool all = true;
        for (std::uint32_t q : m) {
            if (static_cast<int>(q) >= n_qubits) throw std::out_of_range("index too short for polynomial");
            if (((idx >> (n_qubits - 1 - q)) & 1u) == 0) {
                all = false;
                break;
            }
        }
        if (all) v += c;
    }
    return v;
}

BooleanPolynomial xnor(const BooleanPolynomial& p, const BooleanPolynomial& q) {
    BooleanPolynomial out = BooleanPolynomial::constant(1.0);
    out -= p;
    out -= q;
    out += 2.0 * (p * q);
    return out;
}

BooleanPolynomial xor_poly(const BooleanPolynomial& p, const BooleanPolynomial& q) {
    BooleanPolynomial out = p;
    out += q;
    out -= 2.0 * (p * q);
    return out;
}

std::vector<double> evaluate_all(const BooleanPolynomial& p, int n_qubits) {
    if (n_qubits < 0 || n_qubits > 30) throw std::invalid_argument("evaluate_all limited to 30 qubits");
    std::vector<double> values(std::size_t{1} << n_qubits, 0.0);
    for (const auto& [m, c] : p.terms()) {
        std::uint64_t mask = 0;
        for (std::uint32_t q : m) {
            if (static_cast<int>(q) >= n_qubits) throw std::out_of_range("polynomial touches qubits beyond n_qubits");
            mask |= std::uint64_t{1} << (n_qubits - 1 - q);
        }
        // Add c to every index containing the monomial's mask.
        std::uint64_t rest = ~mask & ((std::uint64_t{1} << n_qubits) - 1);
        std::uint64_t sub = 0;
        while (true) {
            values[mask | sub] += c;
            if (sub == rest) break;
            sub = (sub - rest) & rest;
        }
    }
    return values;
}

}  // namespace latticefold
