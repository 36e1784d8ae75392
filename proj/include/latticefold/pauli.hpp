#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace latticefold {

// One Pauli string on up to 64 qubits. Bit i of x_mask/z_mask refers to
// qubit i (string position, not basis-index position): letter I = neither
// bit, X = x only, Z = z only, Y = both.
struct PauliString {
    std::uint64_t x_mask = 0;
    std::uint64_t z_mask = 0;

    friend auto operator<=>(const PauliString&, const PauliString&) = default;

    char letter(int qubit) const;
    int locality() const;  // number of non-identity letters
    std::string to_letters(int n_qubits) const;
    static PauliString from_letters(const std::string& letters);
};

// Real-weighted sum of Pauli strings; Hermitian by construction. Zero
// coefficients are pruned on insertion.
class PauliSum {
public:
    explicit PauliSum(int n_qubits = 0);

    int n_qubits() const { return n_qubits_; }
    const std::map<PauliString, double>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    void add(PauliString p, double coeff);
    PauliSum& operator+=(const PauliSum& o);
    PauliSum& operator*=(double s);
    friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
    friend PauliSum operator*(PauliSum a, double s) { return a *= s; }
    friend PauliSum operator*(double s, PauliSum a) { return a *= s; }

    // Operator product. Throws if the result has a non-real coefficient,
    // which cannot be stored in a real-weighted sum.
    friend PauliSum operator*(const PauliSum& a, const PauliSum& b);

    friend bool operator==(const PauliSum&, const PauliSum&) = default;

    bool is_diagonal() const;  // only I/Z letters
    double one_norm() const;   // sum of |coeff|

    // Eigenvalue of a diagonal sum on the given basis state (big-endian
    // index). Throws on non-diagonal sums.
    double diagonal_eigenvalue(std::uint64_t idx) const;

    // Text form: one "<coeff> <letters>" line per term, sorted by letters,
    // coefficients with 17 significant digits.
    std::string serialize() const;
    static PauliSum parse(const std::string& text);

private:
    int n_qubits_;
    std::map<PauliString, double> terms_;
};

// Convenience constructors for single-letter strings.
PauliString pauli_x(int qubit);
PauliString pauli_y(int qubit);
PauliString pauli_z(int qubit);

}  // namespace latticefold
