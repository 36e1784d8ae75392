#include "latticefold/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace latticefold {

namespace {

std::uint64_t qubit_bit(int qubit) {
    if (qubit < 0 || qubit > 63) throw std::out_of_range("pauli strings are limited to 64 qubits");
    return std::uint64_t{1} << qubit;
}

}  // namespace

char PauliString::letter(int qubit) const {
    std::uint64_t b = qubit_bit(qubit);
    bool x = x_mask & b, z = z_mask & b;
    if (x && z) return 'Y';
    if (x) return 'X';
    if (z) return 'Z';
    return 'I';
}

int PauliString::locality() const {
    return std::popcount(x_mask | z_mask);
}

std::string PauliString::to_letters(int n_qubits) const {
    std::string s(n_qubits, 'I');
    for (int q = 0; q < n_qubits; ++q) s[q] = letter(q);
    return s;
}

PauliString PauliString::from_letters(const std::string& letters) {
    PauliString p;
    for (size_t q = 0; q < letters.size(); ++q) {
        std::uint64_t b = qubit_bit(static_cast<int>(q));
        switch (letters[q]) {
            case 'I': break;
            case 'X': p.x_mask |= b; break;
            case 'Y': p.x_mask |= b; p.z_mask |= b; break;
            case 'Z': p.z_mask |= b; break;
            default: throw std::invalid_argument("pauli letters must be one of I, X, Y, Z");
        }
    }
    return p;
}

PauliString pauli_x(int qubit) { return PauliString{qubit_bit(qubit), 0}; }
PauliString pauli_y(int qubit) { return PauliString{qubit_bit(qubit), qubit_bit(qubit)}; }
PauliString pauli_z(int qubit) { return PauliString{0, qubit_bit(qubit)}; }

PauliSum::PauliSum(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 0 || n_qubits > 64) throw std::invalid_argument("pauli sums are limited to 64 qubits");
}

void PauliSum::add(PauliString p, double coeff) {
    if (coeff == 0.0) return;
    std::uint64_t valid = n_qubits_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_qubits_) - 1;
    if ((p.x_mask | p.z_mask) & ~valid) throw std::out_of_range("pauli term touches qubits beyond n_qubits");
    auto [it, inserted] = terms_.try_emplace(p, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0.0) terms_.erase(it);
    }
}

PauliSum& PauliSum::operator+=(const PauliSum& o) {
    if (o.n_qubits_ != n_qubits_) throw std::invalid_argument("qubit count mismatch");
    for (const auto& [p, c] : o.terms_) add(p, c);
    return *this;
}

PauliSum& PauliSum::operator*=(double s) {
    if (s == 0.0) {
        terms_.clear();
        return *this;
    }
    for (auto& [p, c] : terms_) c *= s;
    return *this;
}

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
    if (a.n_qubits_ != b.n_qubits_) throw std::invalid_argument("qubit count mismatch");
    // Accumulate complex coefficients first: individual cross terms may be
    // imaginary (XY = iZ) even when the Hermitian sum is real.
    std::map<PauliString, std::complex<double>> acc;
    for (const auto& [pa, ca] : a.terms_) {
        for (const auto& [pb, cb] : b.terms_) {
            int phase = 0;  // power of i
            std::uint64_t common = (pa.x_mask | pa.z_mask) & (pb.x_mask | pb.z_mask);
            for (std::uint64_t m = common; m;) {
                std::uint64_t bit = m & (~m + 1);
                m ^= bit;
                int la = (pa.x_mask & bit ? 1 : 0) | (pa.z_mask & bit ? 2 : 0);  // 1=X,2=Z,3=Y
                int lb = (pb.x_mask & bit ? 1 : 0) | (pb.z_mask & bit ? 2 : 0);
                if (la == lb) continue;
                // X*Z=-iY, X*Y=iZ, Z*X=iY, Z*Y=-iX, Y*X=-iZ, Y*Z=iX
                static constexpr int kPhase[4][4] = {
                    {0, 0, 0, 0},
                    {0, 0, 3, 1},
                    {0, 1, 0, 3},
                    {0, 3, 1, 0},
                };
                phase = (phase + kPhase[la][lb]) % 4;
            }
            static constexpr std::complex<double> kI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
            acc[PauliString{pa.x_mask ^ pb.x_mask, pa.z_mask ^ pb.z_mask}] += ca * cb * kI[phase];
        }
    }
    PauliSum out(a.n_qubits_);
    for (const auto& [p, c] : acc) {
        if (std::abs(c.imag()) > 1e-12 * (1.0 + std::abs(c.real()))) {
            throw std::domain_error("product has a non-real coefficient");
        }
        out.add(p, c.real());
    }
    return out;
}

bool PauliSum::is_diagonal() const {
    for (const auto& [p, c] : terms_) {
        if (p.x_mask != 0) return false;
    }
    return true;
}

double PauliSum::one_norm() const {
    double s = 0.0;
    for (const auto& [p, c] : terms_) s += std::abs(c);
    return s;
}

double PauliSum::diagonal_eigenvalue(std::uint64_t idx) const {
    double v = 0.0;
    for (const auto& [p, c] : terms_) {
        if (p.x_mask != 0) throw std::domain_error("diagonal_eigenvalue on a non-diagonal sum");
        // qubit q occupies index bit (n-1-q)
        std::uint64_t index_mask = 0;
        for (std::uint64_t m = p.z_mask; m;) {
            std::uint64_t bit = m & (~m + 1);
            m ^= bit;
            int q = std::countr_zero(bit);
            index_mask |= std::uint64_t{1} << (n_qubits_ - 1 - q);
        }
        v += (std::popcount(idx & index_mask) & 1) ? -c : c;
    }
    return v;
}

std::string PauliSum::serialize() const {
    // std::map ordering on (x,z) masks is not the letters ordering; collect
    // and sort by the rendered strings.
    std::vector<std::pair<std::string, double>> rows;
    rows.reserve(terms_.size());
    for (const auto& [p, c] : terms_) rows.emplace_back(p.to_letters(n_qubits_), c);
    std::sort(rows.begin(), rows.end());
    std::string out;
    char buf[64];
    for (const auto& [letters, c] : rows) {
        std::snprintf(buf, sizeof buf, "%.17g", c);
        out += buf;
        out += ' ';
        out += letters;
        out += '\n';
    }
    return out;
}

PauliSum PauliSum::parse(const std::string& text) {
    std::istringstream in(text);
    std::string coeff_str, letters;
    std::vector<std::pair<std::string, double>> rows;
    size_t width = 0;
    while (in >> coeff_str >> letters) {
        rows.emplace_back(letters, std::stod(coeff_str));
        if (width == 0) width = letters.size();
        if (letters.size() != width) throw std::invalid_argument("inconsistent pauli string widths");
    }
    PauliSum out(static_cast<int>(width));
    for (const auto& [l, c] : rows) out.add(PauliString::from_letters(l), c);
    return out;
}

}  // namespace latticefold
