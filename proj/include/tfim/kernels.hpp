#pragma once

// State-vector inner loops with a portable scalar reference and an AVX2
// variant. The active table is picked once at startup from CPUID; setting
// TFIM_SIMD=scalar forces the reference path.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace tfim::kernels {

using cplx = std::complex<double>;

/// Row-major 2x2 complex matrix {u00, u01, u10, u11}.
struct Mat2 {
    cplx u00, u01, u10, u11;
};

enum class Isa { scalar, avx2 };

struct KernelTable {
    Isa isa;
    /// Applies `u` to the qubit whose basis bit has weight `stride` (a power of two).
    void (*apply_qubit)(std::span<cplx> amps, std::size_t stride, const Mat2& u);
    /// out[i] = |amps[i]|^2.
    void (*abs2)(std::span<const cplx> amps, std::span<double> out);
    /// Sum of |amps[i]|^2.
    double (*sum_abs2)(std::span<const cplx> amps);
};

bool isa_supported(Isa isa) noexcept;
std::string_view isa_name(Isa isa) noexcept;

/// Table for a specific ISA; throws std::runtime_error if the CPU lacks it.
const KernelTable& kernel_table(Isa isa);

/// Table selected at startup.
const KernelTable& active();

namespace detail {
void apply_qubit_scalar(std::span<cplx> amps, std::size_t stride, const Mat2& u);
void abs2_scalar(std::span<const cplx> amps, std::span<double> out);
double sum_abs2_scalar(std::span<const cplx> amps);

void apply_qubit_avx2(std::span<cplx> amps, std::size_t stride, const Mat2& u);
void abs2_avx2(std::span<const cplx> amps, std::span<double> out);
double sum_abs2_avx2(std::span<const cplx> amps);
} // namespace detail

} // namespace tfim::kernels
