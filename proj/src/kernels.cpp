#include "latticefold/kernels.hpp"

#include <bit>
#include <cmath>
#include <cstdlib>
#include <cstring>

namespace latticefold::kernels {

namespace scalar_impl {

void scale(cplx* x, std::size_t n, cplx a) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

void axpy(cplx* y, const cplx* x, std::size_t n, cplx a) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

cplx dotc(const cplx* x, const cplx* y, std::size_t n) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
        im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
    }
    return {re, im};
}

double norm_sq(const cplx* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return s;
}

double weighted_prob_sum(const cplx* x, const double* w, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        s += w[i] * (x[i].real() * x[i].real() + x[i].imag() * x[i].imag());
    }
    return s;
}

void phase_rotate(cplx* x, const double* w, std::size_t n, double theta) {
    for (std::size_t i = 0; i < n; ++i) {
        double phi = -theta * w[i];
        x[i] *= cplx{std::cos(phi), std::sin(phi)};
    }
}

void pauli_accumulate(cplx* y, const cplx* x, std::size_t n, std::uint64_t flip_mask,
                      std::uint64_t sign_mask, cplx alpha) {
    for (std::size_t i = 0; i < n; ++i) {
        cplx v = alpha * x[i];
        if (std::popcount(i & sign_mask) & 1) v = -v;
        y[i ^ flip_mask] += v;
    }
}

}  // namespace scalar_impl

const Backend& scalar_backend() {
    static const Backend b{
        "scalar",
        scalar_impl::scale,
        scalar_impl::axpy,
        scalar_impl::dotc,
        scalar_impl::norm_sq,
        scalar_impl::weighted_prob_sum,
        scalar_impl::phase_rotate,
        scalar_impl::pauli_accumulate,
    };
    return b;
}

#ifdef LATTICEFOLD_HAVE_AVX2
namespace avx2_impl {
const Backend& backend();  // defined in kernels_avx2.cpp
}
#endif

const Backend* avx2_backend() {
#ifdef LATTICEFOLD_HAVE_AVX2
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
        return &avx2_impl::backend();
    }
#endif
    return nullptr;
}

const Backend& active_backend() {
    static const Backend* chosen = [] {
        const char* env = std::getenv("LATTICEFOLD_KERNELS");
        if (env && std::strcmp(env, "scalar") == 0) return &scalar_backend();
        if (const Backend* avx = avx2_backend()) return avx;
        return &scalar_backend();
    }();
    return *chosen;
}

}  // namespace latticefold::kernels
