#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace edlab {

/// Sorted sample set with a per-sample seed ledger (seeds stay in draw order,
/// values are sorted for evaluation).
struct EmpiricalCDF {
    std::vector<double> values;
    std::vector<std::uint64_t> seeds;

    static EmpiricalCDF from_samples(std::vector<double> samples,
                                     std::vector<std::uint64_t> sample_seeds = {});

    std::size_t size() const { return values.size(); }

    /// Proportion of samples <= z.
    double operator()(double z) const;
};

/// Sup-norm distance between two empirical CDFs over the merged sample grid.
double ks_distance(const EmpiricalCDF& f, const EmpiricalCDF& g);

}  // namespace edlab
