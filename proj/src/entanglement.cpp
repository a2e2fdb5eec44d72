#include "tfim/entanglement.hpp"

#include "tfim/errors.hpp"
#include "tfim/kernels.hpp"
#include "tfim/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace tfim {

double bipartition_entanglement(const PureState& gs, const SiteList& subset) {
    const int n = gs.n_sites();
    if (subset.empty() || static_cast<int>(subset.size()) >= n) {
        throw DomainError("bipartition needs a non-empty proper subset");
    }
    // Tr rho_A^2 = Tr rho_B^2 for pure states; reduce onto the smaller side.
    SiteList side = subset;
    if (2 * static_cast<int>(subset.size()) > n) {
        side.clear();
        for (int s = 0; s < n; ++s) {
            if (std::find(subset.begin(), subset.end(), s) == subset.end()) {
                side.push_back(s);
            }
        }
    }
    const DensityMatrix rho = reduced_density(gs, side);
    const auto& m = rho.matrix();
    const double purity = kernels::active().sum_abs2({m.data(), static_cast<std::size_t>(m.size())});
    const double e = -std::log2(purity);
    return (e < 0.0 && e > -1e-10) ? 0.0 : e;
}

EntanglementStats entanglement_stats(const PureState& gs, unsigned threads) {
    const int n = gs.n_sites();
    if (n < 2) {
        throw DomainError("bipartitions need at least 2 sites");
    }
    const std::size_t count = (std::size_t{1} << (n - 1)) - 1;
    EntanglementStats stats{0.0, 0.0, std::vector<std::pair<SiteList, double>>(count), count};
    parallel_for(count, threads, [&](std::size_t i) {
        const std::size_t mask = i + 1;
        SiteList subset;
        for (int s = 0; s < n - 1; ++s) {
            if ((mask >> s) & 1U) {
                subset.push_back(s);
            }
        }
        const double e = bipartition_entanglement(gs, subset);
        stats.per_bipartition[i] = {std::move(subset), e};
    });
    double sum = 0.0;
    for (const auto& entry : stats.per_bipartition) {
        sum += entry.second;
    }
    stats.mean = sum / static_cast<double>(count);
    double sq = 0.0;
    for (const auto& entry : stats.per_bipartition) {
        sq += (entry.second - stats.mean) * (entry.second - stats.mean);
    }
    stats.variance = sq / static_cast<double>(count);
    return stats;
}

} // namespace tfim
