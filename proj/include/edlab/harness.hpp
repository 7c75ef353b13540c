#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "edlab/convex_body.hpp"
#include "edlab/empirical_cdf.hpp"
#include "edlab/limit_law.hpp"
#include "edlab/smooth_part.hpp"

namespace edlab {

/// Invalid or missing configuration; the message names the offending field.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Everything a pipeline run needs, parsed from a plain key=value file.
/// Unknown keys are rejected, missing ones fall back to defaults where a
/// default is sensible and error otherwise.
struct ExperimentConfig {
    ConvexBody body = ConvexBody::disk();
    double r = 0.3;
    double r_lo = 0.2;
    double r_hi = 0.4;
    std::vector<long long> n_list{512};
    std::vector<double> eps_list{0.1};
    long long samples = 2000;
    long long k_max = 256;
    std::string mode;
    std::uint64_t seed = 1;
    std::string out_dir = ".";
    TruncationPolicy policy;

    static ExperimentConfig from_map(const std::map<std::string, std::string>& kv);
    static ExperimentConfig from_file(const std::string& path);
};

std::map<std::string, std::string> parse_key_value_file(const std::string& path);

// ---------------------------------------------------------------------------
// Statistics helpers
// ---------------------------------------------------------------------------

/// sup_z |F(z) - z| against the uniform law on [0,1].
double ks_against_uniform(const EmpiricalCDF& f);

/// Dvoretzky-Kiefer-Wolfowitz band half-width at confidence level 1 - delta.
double dkw_bound(std::size_t n, double delta);

// ---------------------------------------------------------------------------
// Pipelines
// ---------------------------------------------------------------------------

struct Theorem1aResult {
    EmpiricalCDF finite;  // axis-part discrepancy over N at horizon N
    EmpiricalCDF limit;   // coboundary-difference sampler
    double ks = 0.0;
    double ks_symmetry = 0.0;  // limit CDF vs its reflection about 0
};

Theorem1aResult theorem1a(const ConvexBody& body, double r, long long N,
                          long long k_max, std::size_t samples,
                          std::uint64_t seed);

enum class D2Mode { exact_split, ladder };

struct D2Stats {
    EmpiricalCDF cdf;
    long long resamples = 0;  // alpha draws rejected by the exceptional set
    long long draws = 0;      // total alpha draws
};

/// Samples of the oscillating discrepancy part normalized by sqrt(r N), with
/// (r, x, alpha) uniform on [r_lo, r_hi] x T^2 x T^2 and alpha resampled out
/// of the exceptional set.
D2Stats finite_n_d2_sample(const ConvexBody& body, double r_lo, double r_hi,
                           long long N, double eps, D2Mode mode,
                           long long axis_k_max, std::size_t samples,
                           std::uint64_t seed);

struct Theorem1bResult {
    D2Stats finite_small;   // N = n_small
    D2Stats finite_large;   // N = n_large
    EmpiricalCDF limit;
    double ks_small = 0.0;
    double ks_large = 0.0;
    LimitCdfDiagnostics diag;
};

Theorem1bResult theorem1b(const ConvexBody& body, double r_lo, double r_hi,
                          long long n_small, long long n_large, double eps,
                          long long axis_k_max, std::size_t samples,
                          const TruncationPolicy& policy, std::uint64_t seed);

struct PhaseUniformityReport {
    double ks_single = 0.0;       // one support phase vs U[0,1]
    double chi2 = 0.0;            // 8x8 independence statistic for two indices
    double chi2_df = 49.0;        // (8-1)^2 degrees of freedom
    double ks_gamma[4] = {0, 0, 0, 0};  // gamma phase components vs U[0,1]
    std::size_t samples = 0;
};

PhaseUniformityReport phase_uniformity_test(const ConvexBody& body, long long N,
                                            double eps, std::size_t samples,
                                            std::uint64_t seed);

struct EnMeasureResult {
    double fraction = 0.0;
    double sigma = 0.0;
    double bound = 0.0;  // 2 eps^{1/4}
    std::size_t draws = 0;
};

EnMeasureResult en_measure(double eps, long long N, std::size_t draws,
                           std::uint64_t seed);

// ---------------------------------------------------------------------------
// Reporting
// ---------------------------------------------------------------------------

/// Hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

/// Serialize a double with 17 significant digits (round-trip exact).
std::string format_double(double v);

/// Run the named pipeline, write its CSV artifacts under config.out_dir and
/// append a manifest line (seeds, parameters, output hashes, wall time) to
/// manifest.jsonl there. Returns the list of files written.
std::vector<std::string> run_experiment(const ExperimentConfig& config,
                                        const std::string& pipeline);

}  // namespace edlab
