// AVX2+FMA kernel variants. Compiled with -mavx2 -mfma; only reached after
// the runtime CPU check in kernels.cpp. A __m256d holds two complex doubles
// as [re0, im0, re1, im1].

#include <immintrin.h>

#include <bit>
#include <cmath>

#include "latticefold/kernels.hpp"

namespace latticefold::kernels::avx2_impl {

namespace {

// [re*ar - im*ai, re*ai + im*ar] for both complex lanes: a constant complex
// multiply via fmaddsub.
inline __m256d cmul_const(__m256d x, __m256d ar, __m256d ai) {
    __m256d swapped = _mm256_permute_pd(x, 0b0101);  // [im0, re0, im1, re1]
    return _mm256_fmaddsub_pd(x, ar, _mm256_mul_pd(swapped, ai));
}

void scale(cplx* x, std::size_t n, cplx a) {
    double* p = reinterpret_cast<double*>(x);
    __m256d ar = _mm256_set1_pd(a.real());
    __m256d ai = _mm256_set1_pd(a.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d v = _mm256_loadu_pd(p + 2 * i);
        _mm256_storeu_pd(p + 2 * i, cmul_const(v, ar, ai));
    }
    for (; i < n; ++i) x[i] *= a;
}

void axpy(cplx* y, const cplx* x, std::size_t n, cplx a) {
    const double* px = reinterpret_cast<const double*>(x);
    double* py = reinterpret_cast<double*>(y);
    __m256d ar = _mm256_set1_pd(a.real());
    __m256d ai = _mm256_set1_pd(a.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d v = _mm256_loadu_pd(px + 2 * i);
        __m256d acc = _mm256_loadu_pd(py + 2 * i);
        _mm256_storeu_pd(py + 2 * i, _mm256_add_pd(acc, cmul_const(v, ar, ai)));
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

cplx dotc(const cplx* x, const cplx* y, std::size_t n) {
    const double* px = reinterpret_cast<const double*>(x);
    const double* py = reinterpret_cast<const double*>(y);
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d vx = _mm256_loadu_pd(px + 2 * i);
        __m256d vy = _mm256_loadu_pd(py + 2 * i);
        acc_re = _mm256_fmadd_pd(vx, vy, acc_re);
        acc_im = _mm256_fmadd_pd(_mm256_permute_pd(vx, 0b0101), vy, acc_im);
    }
    // re lanes sum directly; im lanes carry [xi*yr, xr*yi] and need the
    // first of each pair negated.
    alignas(32) double re4[4], im4[4];
    _mm256_store_pd(re4, acc_re);
    _mm256_store_pd(im4, acc_im);
    double re = re4[0] + re4[1] + re4[2] + re4[3];
    double im = -im4[0] + im4[1] - im4[2] + im4[3];
    for (; i < n; ++i) {
        re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
        im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
    }
    return {re, im};
}

double norm_sq(const cplx* x, std::size_t n) {
    const double* p = reinterpret_cast<const double*>(x);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d v = _mm256_loadu_pd(p + 2 * i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    alignas(32) double s4[4];
    _mm256_store_pd(s4, acc);
    double s = s4[0] + s4[1] + s4[2] + s4[3];
    for (; i < n; ++i) s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return s;
}

double weighted_prob_sum(const cplx* x, const double* w, std::size_t n) {
    const double* p = reinterpret_cast<const double*>(x);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d v = _mm256_loadu_pd(p + 2 * i);
        __m128d w2 = _mm_loadu_pd(w + i);
        __m256d wv = _mm256_permute4x64_pd(_mm256_castpd128_pd256(w2), 0b01010000);
        acc = _mm256_fmadd_pd(_mm256_mul_pd(v, v), wv, acc);
    }
    alignas(32) double s4[4];
    _mm256_store_pd(s4, acc);
    double s = s4[0] + s4[1] + s4[2] + s4[3];
    for (; i < n; ++i) {
        s += w[i] * (x[i].real() * x[i].real() + x[i].imag() * x[i].imag());
    }
    return s;
}

void phase_rotate(cplx* x, const double* w, std::size_t n, double theta) {
    double* p = reinterpret_cast<double*>(x);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        double phi0 = -theta * w[i], phi1 = -theta * w[i + 1];
        __m256d cr = _mm256_setr_pd(std::cos(phi0), std::cos(phi0), std::cos(phi1), std::cos(phi1));
        __m256d ci = _mm256_setr_pd(std::sin(phi0), std::sin(phi0), std::sin(phi1), std::sin(phi1));
        __m256d v = _mm256_loadu_pd(p + 2 * i);
        _mm256_storeu_pd(p + 2 * i, cmul_const(v, cr, ci));
    }
    for (; i < n; ++i) {
        double phi = -theta * w[i];
        x[i] *= cplx{std::cos(phi), std::sin(phi)};
    }
}

void pauli_accumulate(cplx* y, const cplx* x, std::size_t n, std::uint64_t flip_mask,
                      std::uint64_t sign_mask, cplx alpha) {
    if (n < 2) {
        scalar_backend().pauli_accumulate(y, x, n, flip_mask, sign_mask, alpha);
        return;
    }
    const double* px = reinterpret_cast<const double*>(x);
    double* py = reinterpret_cast<double*>(y);
    __m256d ar = _mm256_set1_pd(alpha.real());
    __m256d ai = _mm256_set1_pd(alpha.imag());
    // Sign pattern inside a 2-complex block: lane 1's sign relative to lane 0
    // flips when bit 0 of sign_mask is set.
    bool lane_flip = sign_mask & 1;
    bool pair_swap = flip_mask & 1;  // destination pair order is reversed
    for (std::size_t i = 0; i + 2 <= n; i += 2) {
        __m256d v = cmul_const(_mm256_loadu_pd(px + 2 * i), ar, ai);
        bool neg0 = std::popcount(i & sign_mask) & 1;
        bool neg1 = neg0 ^ lane_flip;
        if (neg0 || neg1) {
            __m256d sgn = _mm256_setr_pd(neg0 ? -1.0 : 1.0, neg0 ? -1.0 : 1.0,
                                         neg1 ? -1.0 : 1.0, neg1 ? -1.0 : 1.0);
            v = _mm256_mul_pd(v, sgn);
        }
        if (pair_swap) v = _mm256_permute2f128_pd(v, v, 0x01);
        std::size_t base = (i ^ flip_mask) & ~std::uint64_t{1};
        __m256d acc = _mm256_loadu_pd(py + 2 * base);
        _mm256_storeu_pd(py + 2 * base, _mm256_add_pd(acc, v));
    }
    if (n & 1) {
        std::size_t i = n - 1;
        cplx v = alpha * x[i];
        if (std::popcount(i & sign_mask) & 1) v = -v;
        y[i ^ flip_mask] += v;
    }
}

}  // namespace

const Backend& backend() {
    static const Backend b{
        "avx2", scale, axpy, dotc, norm_sq, weighted_prob_sum, phase_rotate, pauli_accumulate,
    };
    return b;
}

}  // namespace latticefold::kernels::avx2_impl
