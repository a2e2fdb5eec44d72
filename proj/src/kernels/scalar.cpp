#include "tfim/kernels.hpp"

namespace tfim::kernels::detail {

void apply_qubit_scalar(std::span<cplx> amps, std::size_t stride, const Mat2& u) {
    const std::size_t n = amps.size();
    for (std::size_t base = 0; base < n; base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
            const cplx a = amps[i];
            const cplx b = amps[i + stride];
            amps[i] = u.u00 * a + u.u01 * b;
            amps[i + stride] = u.u10 * a + u.u11 * b;
        }
    }
}

void abs2_scalar(std::span<const cplx> amps, std::span<double> out) {
    for (std::size_t i = 0; i < amps.size(); ++i) {
        out[i] = std::norm(amps[i]);
    }
}

double sum_abs2_scalar(std::span<const cplx> amps) {
    double acc = 0.0;
    for (const cplx& a : amps) {
        acc += std::norm(a);
    }
    return acc;
}

} // namespace tfim::kernels::detail
