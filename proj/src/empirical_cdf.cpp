#include "edlab/empirical_cdf.hpp"

#include <algorithm>
#include <cmath>

namespace edlab {

EmpiricalCDF EmpiricalCDF::from_samples(std::vector<double> samples,
                                        std::vector<std::uint64_t> sample_seeds) {
    for (double v : samples)
        if (!std::isfinite(v))
            throw std::domain_error("EmpiricalCDF: non-finite sample");
    EmpiricalCDF cdf;
    cdf.values = std::move(samples);
    cdf.seeds = std::move(sample_seeds);
    std::sort(cdf.values.begin(), cdf.values.end());
    return cdf;
}

double EmpiricalCDF::operator()(double z) const {
    if (values.empty()) throw std::domain_error("EmpiricalCDF: empty");
    auto it = std::upper_bound(values.begin(), values.end(), z);
    return static_cast<double>(it - values.begin()) /
           static_cast<double>(values.size());
}

double ks_distance(const EmpiricalCDF& f, const EmpiricalCDF& g) {
    if (f.values.empty() || g.values.empty())
        throw std::domain_error("ks_distance: empty input");
    // Two-pointer sweep over the merged grid; the CDFs only jump at sample
    // points so the supremum is attained there.
    std::size_t i = 0, j = 0;
    double d = 0.0;
    const double nf = static_cast<double>(f.values.size());
    const double ng = static_cast<double>(g.values.size());
    while (i < f.values.size() && j < g.values.size()) {
        double z = std::min(f.values[i], g.values[j]);
        while (i < f.values.size() && f.values[i] <= z) ++i;
        while (j < g.values.size() && g.values[j] <= z) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / nf -
                                 static_cast<double>(j) / ng));
    }
    return d;
}

}  // namespace edlab
