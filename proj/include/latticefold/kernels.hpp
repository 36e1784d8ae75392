#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>

// Inner loops of the statevector simulator. Every kernel has a scalar
// reference implementation; on x86-64 an AVX2+FMA variant is selected at
// runtime when the CPU supports it. The environment variable
// LATTICEFOLD_KERNELS=scalar forces the reference path.
namespace latticefold::kernels {

using cplx = std::complex<double>;

struct Backend {
    const char* name;
    void (*scale)(cplx* x, std::size_t n, cplx a);
    void (*axpy)(cplx* y, const cplx* x, std::size_t n, cplx a);
    cplx (*dotc)(const cplx* x, const cplx* y, std::size_t n);
    double (*norm_sq)(const cplx* x, std::size_t n);
    double (*weighted_prob_sum)(const cplx* x, const double* w, std::size_t n);
    void (*phase_rotate)(cplx* x, const double* w, std::size_t n, double theta);
    void (*pauli_accumulate)(cplx* y, const cplx* x, std::size_t n, std::uint64_t flip_mask,
                             std::uint64_t sign_mask, cplx alpha);
};

const Backend& scalar_backend();
// Null when AVX2 code is not compiled in or the CPU lacks it.
const Backend* avx2_backend();
const Backend& active_backend();

// Dispatched entry points.
inline void scale(cplx* x, std::size_t n, cplx a) { active_backend().scale(x, n, a); }
inline void axpy(cplx* y, const cplx* x, std::size_t n, cplx a) { active_backend().axpy(y, x, n, a); }
inline cplx dotc(const cplx* x, const cplx* y, std::size_t n) { return active_backend().dotc(x, y, n); }
inline double norm_sq(const cplx* x, std::size_t n) { return active_backend().norm_sq(x, n); }
// Sum of w[i] * |x[i]|^2.
inline double weighted_prob_sum(const cplx* x, const double* w, std::size_t n) {
    return active_backend().weighted_prob_sum(x, w, n);
}
// x[i] *= exp(-i * theta * w[i]).
inline void phase_rotate(cplx* x, const double* w, std::size_t n, double theta) {
    active_backend().phase_rotate(x, w, n, theta);
}
// y[i ^ flip_mask] += alpha * (-1)^popcount(i & sign_mask) * x[i].
// x and y must not alias. This is the action of one Pauli string on a
// statevector when alpha folds in the coefficient and i^(#Y) factor.
inline void pauli_accumulate(cplx* y, const cplx* x, std::size_t n, std::uint64_t flip_mask,
                             std::uint64_t sign_mask, cplx alpha) {
    active_backend().pauli_accumulate(y, x, n, flip_mask, sign_mask, alpha);
}

}  // namespace latticefold::kernels
