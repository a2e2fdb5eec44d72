#include "tfim/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace tfim::kernels {

namespace {

constexpr KernelTable kScalar{Isa::scalar, &detail::apply_qubit_scalar, &detail::abs2_scalar,
                              &detail::sum_abs2_scalar};
constexpr KernelTable kAvx2{Isa::avx2, &detail::apply_qubit_avx2, &detail::abs2_avx2, &detail::sum_abs2_avx2};

const KernelTable& select() {
    if (const char* env = std::getenv("TFIM_SIMD")) {
        const std::string choice(env);
        if (choice == "scalar") {
            return kScalar;
        }
        if (choice == "avx2" && isa_supported(Isa::avx2)) {
            return kAvx2;
        }
    }
    return isa_supported(Isa::avx2) ? kAvx2 : kScalar;
}

} // namespace

bool isa_supported(Isa isa) noexcept {
    switch (isa) {
    case Isa::scalar:
        return true;
    case Isa::avx2:
#if defined(TFIM_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
        return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
        return false;
#endif
    }
    return false;
}

std::string_view isa_name(Isa isa) noexcept { return isa == Isa::avx2 ? "avx2" : "scalar"; }

const KernelTable& kernel_table(Isa isa) {
    if (!isa_supported(isa)) {
        throw std::runtime_error("kernel ISA not supported on this CPU: " + std::string(isa_name(isa)));
    }
    return isa == Isa::avx2 ? kAvx2 : kScalar;
}

const KernelTable& active() {
    static const KernelTable& table = select();
    return table;
}

} // namespace tfim::kernels
