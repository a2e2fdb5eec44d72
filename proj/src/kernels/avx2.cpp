#include "tfim/kernels.hpp"

#if defined(TFIM_HAVE_AVX2_TU)
#include <immintrin.h>
#endif

namespace tfim::kernels::detail {

#if defined(TFIM_HAVE_AVX2_TU)

namespace {

// Lane-wise complex product x * c where c is given as duplicated real and
// imaginary parts ([cr0, cr0, cr1, cr1], [ci0, ci0, ci1, ci1]).
inline __m256d cmul(__m256d x, __m256d c_re, __m256d c_im) {
    const __m256d swapped = _mm256_permute_pd(x, 0b0101);
    return _mm256_fmaddsub_pd(x, c_re, _mm256_mul_pd(swapped, c_im));
}

inline __m256d dup(double a, double b) { return _mm256_setr_pd(a, a, b, b); }

} // namespace

void apply_qubit_avx2(std::span<cplx> amps, std::size_t stride, const Mat2& u) {
    const std::size_t n = amps.size();
    double* data = reinterpret_cast<double*>(amps.data());

    if (stride == 1) {
        // Each 256-bit load holds one (a, b) pair.
        const __m256d ca_re = dup(u.u00.real(), u.u10.real());
        const __m256d ca_im = dup(u.u00.imag(), u.u10.imag());
        const __m256d cb_re = dup(u.u01.real(), u.u11.real());
        const __m256d cb_im = dup(u.u01.imag(), u.u11.imag());
        for (std::size_t i = 0; i < n; i += 2) {
            const __m256d v = _mm256_loadu_pd(data + 2 * i);
            const __m256d va = _mm256_permute2f128_pd(v, v, 0x00);
            const __m256d vb = _mm256_permute2f128_pd(v, v, 0x11);
            const __m256d r = _mm256_add_pd(cmul(va, ca_re, ca_im), cmul(vb, cb_re, cb_im));
            _mm256_storeu_pd(data + 2 * i, r);
        }
        return;
    }

    const __m256d u00_re = _mm256_set1_pd(u.u00.real()), u00_im = _mm256_set1_pd(u.u00.imag());
    const __m256d u01_re = _mm256_set1_pd(u.u01.real()), u01_im = _mm256_set1_pd(u.u01.imag());
    const __m256d u10_re = _mm256_set1_pd(u.u10.real()), u10_im = _mm256_set1_pd(u.u10.imag());
    const __m256d u11_re = _mm256_set1_pd(u.u11.real()), u11_im = _mm256_set1_pd(u.u11.imag());
    for (std::size_t base = 0; base < n; base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; i += 2) {
            double* pa = data + 2 * i;
            double* pb = data + 2 * (i + stride);
            const __m256d a = _mm256_loadu_pd(pa);
            const __m256d b = _mm256_loadu_pd(pb);
            const __m256d na = _mm256_add_pd(cmul(a, u00_re, u00_im), cmul(b, u01_re, u01_im));
            const __m256d nb = _mm256_add_pd(cmul(a, u10_re, u10_im), cmul(b, u11_re, u11_im));
            _mm256_storeu_pd(pa, na);
            _mm256_storeu_pd(pb, nb);
        }
    }
}

void abs2_avx2(std::span<const cplx> amps, std::span<double> out) {
    const std::size_t n = amps.size();
    const double* data = reinterpret_cast<const double*>(amps.data());
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v0 = _mm256_loadu_pd(data + 2 * i);
        const __m256d v1 = _mm256_loadu_pd(data + 2 * i + 4);
        // hadd interleaves the two sources per 128-bit lane: [p0, p2, p1, p3].
        const __m256d h = _mm256_hadd_pd(_mm256_mul_pd(v0, v0), _mm256_mul_pd(v1, v1));
        _mm256_storeu_pd(out.data() + i, _mm256_permute4x64_pd(h, 0b11011000));
    }
    for (; i < n; ++i) {
        out[i] = std::norm(amps[i]);
    }
}

double sum_abs2_avx2(std::span<const cplx> amps) {
    const std::size_t n = amps.size();
    const double* data = reinterpret_cast<const double*>(amps.data());
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v0 = _mm256_loadu_pd(data + 2 * i);
        const __m256d v1 = _mm256_loadu_pd(data + 2 * i + 4);
        acc0 = _mm256_fmadd_pd(v0, v0, acc0);
        acc1 = _mm256_fmadd_pd(v1, v1, acc1);
    }
    const __m256d acc = _mm256_add_pd(acc0, acc1);
    const __m128d lo = _mm256_castpd256_pd128(acc);
    const __m128d hi = _mm256_extractf128_pd(acc, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    double total = _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
    for (; i < n; ++i) {
        total += std::norm(amps[i]);
    }
    return total;
}

#else

void apply_qubit_avx2(std::span<cplx> amps, std::size_t stride, const Mat2& u) { apply_qubit_scalar(amps, stride, u); }
void abs2_avx2(std::span<const cplx> amps, std::span<double> out) { abs2_scalar(amps, out); }
double sum_abs2_avx2(std::span<const cplx> amps) { return sum_abs2_scalar(amps); }

#endif

} // namespace tfim::kernels::detail
