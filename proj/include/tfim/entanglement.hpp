#pragma once

#include "tfim/density.hpp"
#include "tfim/ring.hpp"

#include <utility>
#include <vector>

namespace tfim {

/// E = -log2 Tr rho_A^2 for the cut (subset | complement) of a pure ring state.
double bipartition_entanglement(const PureState& gs, const SiteList& subset);

struct EntanglementStats {
    double mean;
    /// Population variance over all bipartitions.
    double variance;
    std::vector<std::pair<SiteList, double>> per_bipartition;
    std::size_t n_bipartitions;
};

/// All 2^(N-1) - 1 unordered bipartitions; each cut is listed once, by the side without the last site.
EntanglementStats entanglement_stats(const PureState& gs, unsigned threads = 1);

} // namespace tfim
