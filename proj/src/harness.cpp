#include "edlab/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "edlab/lattice.hpp"
#include "edlab/rng.hpp"
#include "json.hpp"

namespace edlab {

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

std::map<std::string, std::string> parse_key_value_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open file '" + path + "'");
    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(lineno) +
                              " is not key=value");
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t");
            auto e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("config: empty key on line " +
                                           std::to_string(lineno));
        kv[key] = value;
    }
    return kv;
}

namespace {

double parse_number(const std::string& field, const std::string& v) {
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("config: field '" + field + "' is not a number: '" + v + "'");
    }
}

long long parse_integer(const std::string& field, const std::string& v) {
    try {
        std::size_t pos = 0;
        long long n = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return n;
    } catch (const std::exception&) {
        throw ConfigError("config: field '" + field + "' is not an integer: '" + v + "'");
    }
}

template <typename T, typename F>
std::vector<T> parse_list(const std::string& field, const std::string& v, F one) {
    std::vector<T> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(one(field, item));
    if (out.empty()) throw ConfigError("config: field '" + field + "' is empty");
    return out;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_map(
    const std::map<std::string, std::string>& kv) {
    ExperimentConfig cfg;
    for (const auto& [key, value] : kv) {
        if (key == "body") {
            try {
                cfg.body = ConvexBody::parse(value);
            } catch (const std::exception& e) {
                throw ConfigError("config: field 'body': " + std::string(e.what()));
            }
        } else if (key == "r") {
            cfg.r = parse_number(key, value);
        } else if (key == "r_lo") {
            cfg.r_lo = parse_number(key, value);
        } else if (key == "r_hi") {
            cfg.r_hi = parse_number(key, value);
        } else if (key == "n_list") {
            cfg.n_list = parse_list<long long>(key, value, parse_integer);
        } else if (key == "eps_list") {
            cfg.eps_list = parse_list<double>(key, value, parse_number);
        } else if (key == "samples") {
            cfg.samples = parse_integer(key, value);
        } else if (key == "k_max") {
            cfg.k_max = parse_integer(key, value);
        } else if (key == "mode") {
            cfg.mode = value;
        } else if (key == "seed") {
            cfg.seed = static_cast<std::uint64_t>(parse_integer(key, value));
        } else if (key == "out") {
            cfg.out_dir = value;
        } else if (key == "pcheck_max") {
            cfg.policy.pcheck_max = parse_integer(key, value);
        } else if (key == "k_eps") {
            cfg.policy.k_eps = parse_number(key, value);
        } else if (key == "tail_cap") {
            cfg.policy.tail_cap = parse_number(key, value);
        } else {
            throw ConfigError("config: unknown field '" + key + "'");
        }
    }
    if (!(cfg.r_lo > 0.0) || !(cfg.r_lo < cfg.r_hi) ||
        !(cfg.r_hi < cfg.body.r0()))
        throw ConfigError("config: fields 'r_lo'/'r_hi' must satisfy 0 < r_lo < r_hi < r0");
    if (!(cfg.r > 0.0) || !(cfg.r < cfg.body.r0()))
        throw ConfigError("config: field 'r' outside (0, r0)");
    if (cfg.samples < 1) throw ConfigError("config: field 'samples' must be >= 1");
    for (long long n : cfg.n_list)
        if (n < 1) throw ConfigError("config: field 'n_list' entries must be >= 1");
    for (double e : cfg.eps_list)
        if (!(e > 0.0) || !(e < 1.0))
            throw ConfigError("config: field 'eps_list' entries must be in (0, 1)");
    return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    return from_map(parse_key_value_file(path));
}

// ---------------------------------------------------------------------------
// Statistics helpers
// ---------------------------------------------------------------------------

double ks_against_uniform(const EmpiricalCDF& f) {
    if (f.values.empty()) throw std::domain_error("ks_against_uniform: empty");
    double d = 0.0;
    double n = static_cast<double>(f.values.size());
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        double z = std::clamp(f.values[i], 0.0, 1.0);
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - z));
        d = std::max(d, std::abs(static_cast<double>(i) / n - z));
    }
    return d;
}

double dkw_bound(std::size_t n, double delta) {
    if (n == 0) throw std::domain_error("dkw_bound: empty sample");
    return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(n)));
}

// ---------------------------------------------------------------------------
// Pipelines
// ---------------------------------------------------------------------------

// Cap on rejection sampling of alpha outside the (half-constant, see
// sampling_en_cut) exceptional set. Acceptance probability is ~1-4% at
// eps = 0.05..0.2, so the cap leaves the failure chance per sample
// negligible while bounding the worst case.
constexpr long long kMaxAlphaDraws = 10'000;

Theorem1aResult theorem1a(const ConvexBody& body, double r, long long N,
                          long long k_max, std::size_t samples,
                          std::uint64_t seed) {
    AxisSeries series(body, r, k_max);
    std::vector<double> finite, limit;
    std::vector<std::uint64_t> fseeds, lseeds;
    finite.reserve(samples);
    limit.reserve(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        std::uint64_t s = derive_seed(seed, 2 * i);
        fseeds.push_back(s);
        Rng rng(s);
        for (;;) {
            Vec2 x{rng.next_unit(), rng.next_unit()};
            Vec2 alpha{rng.next_unit(), rng.next_unit()};
            try {
                finite.push_back(d1_over_n(series, x, alpha, N));
                break;
            } catch (const ResonantNodeError&) {
                // measure-zero resonance under the guard; redraw
            }
        }
    }
    for (std::size_t i = 0; i < samples; ++i) {
        std::uint64_t s = derive_seed(seed, 2 * i + 1);
        lseeds.push_back(s);
        Rng rng(s);
        for (;;) {
            Vec2 x{rng.next_unit(), rng.next_unit()};
            Vec2 alpha{rng.next_unit(), rng.next_unit()};
            Vec2 beta{rng.next_unit(), rng.next_unit()};
            try {
                limit.push_back(limit_sample_d1(series, x, alpha, beta));
                break;
            } catch (const ResonantNodeError&) {
            }
        }
    }
    Theorem1aResult res;
    res.finite = EmpiricalCDF::from_samples(std::move(finite), std::move(fseeds));
    res.limit = EmpiricalCDF::from_samples(std::move(limit), std::move(lseeds));
    res.ks = ks_distance(res.finite, res.limit);
    std::vector<double> reflected(res.limit.values.size());
    for (std::size_t i = 0; i < reflected.size(); ++i)
        reflected[i] = -res.limit.values[i];
    res.ks_symmetry =
        ks_distance(res.limit, EmpiricalCDF::from_samples(std::move(reflected)));
    return res;
}

D2Stats finite_n_d2_sample(const ConvexBody& body, double r_lo, double r_hi,
                           long long N, double eps, D2Mode mode,
                           long long axis_k_max, std::size_t samples,
                           std::uint64_t seed) {
    if (!(r_lo > 0.0) || r_lo > r_hi || !(r_hi < body.r0()))
        throw std::domain_error("finite_n_d2_sample: bad r interval");
    D2Stats stats;
    std::vector<double> values;
    std::vector<std::uint64_t> seeds;
    values.reserve(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        std::uint64_t s = derive_seed(seed, i);
        seeds.push_back(s);
        Rng rng(s);
        double r = rng.next_in(r_lo, r_hi);
        Vec2 x{rng.next_unit(), rng.next_unit()};
        Vec2 alpha{};
        // The full-constant exceptional set covers the torus at moderate eps,
        // so conditioning uses the half-constant threshold; the loop is still
        // capped (a capped sample keeps its last draw) and the resample
        // counters expose the rate.
        for (long long attempt = 0; attempt < kMaxAlphaDraws; ++attempt) {
            alpha = {rng.next_unit(), rng.next_unit()};
            ++stats.draws;
            if (!in_E_N(alpha, N, eps, sampling_en_cut(N, eps))) break;
            ++stats.resamples;
        }
        ActionConfig cfg{.r = r, .x = x, .alpha = alpha, .N = N, .eps = eps};
        double norm = std::sqrt(r) * std::sqrt(static_cast<double>(N));
        if (mode == D2Mode::exact_split) {
            AxisSeries series(body, r, axis_k_max);
            double total = discrepancy_direct(cfg, body);
            double axis = static_cast<double>(N) * d1_over_n(series, x, alpha, N);
            values.push_back((total - axis) / norm);
        } else {
            LadderOptions opts;
            opts.with_delta1 = false;
            DeltaLadder ladder = delta_ladder(cfg, body, opts);
            values.push_back(ladder.delta_prime);
        }
    }
    stats.cdf = EmpiricalCDF::from_samples(std::move(values), std::move(seeds));
    return stats;
}

Theorem1bResult theorem1b(const ConvexBody& body, double r_lo, double r_hi,
                          long long n_small, long long n_large, double eps,
                          long long axis_k_max, std::size_t samples,
                          const TruncationPolicy& policy, std::uint64_t seed) {
    Theorem1bResult res;
    res.finite_small =
        finite_n_d2_sample(body, r_lo, r_hi, n_small, eps, D2Mode::exact_split,
                           axis_k_max, samples, derive_seed(seed, 101));
    res.finite_large =
        finite_n_d2_sample(body, r_lo, r_hi, n_large, eps, D2Mode::exact_split,
                           axis_k_max, samples, derive_seed(seed, 102));
    // The limit comparison uses the eps-truncated law: Haar frames are
    // conditioned on the same small-divisor region the finite-horizon
    // samplers' alpha-conditioning maps to.
    TruncationPolicy limit_policy = policy;
    limit_policy.lattice_eps = eps;
    res.limit = sample_limit_cdf(body, limit_policy, samples,
                                 derive_seed(seed, 103), &res.diag);
    res.ks_small = ks_distance(res.finite_small.cdf, res.limit);
    res.ks_large = ks_distance(res.finite_large.cdf, res.limit);
    return res;
}

PhaseUniformityReport phase_uniformity_test(const ConvexBody& body, long long N,
                                            double eps, std::size_t samples,
                                            std::uint64_t seed) {
    PhaseUniformityReport report;
    report.samples = samples;
    // Two fixed indices; distinct m-pairs so the support phases decouple.
    const IVec2 p{1, 1};
    const IVec2 a_m1{1, 0}, a_m2{1, 0};
    const IVec2 b_m1{0, 1}, b_m2{1, 1};
    double r_lo = 0.5 * body.r0(), r_hi = 0.8 * body.r0();

    std::vector<double> phase_a, phase_b;
    std::vector<double> gamma_vals[4];
    std::vector<std::vector<long long>> bins(8, std::vector<long long>(8, 0));
    for (std::size_t i = 0; i < samples; ++i) {
        Rng rng(derive_seed(seed, i));
        double r = rng.next_in(r_lo, r_hi);
        Vec2 x{rng.next_unit(), rng.next_unit()};
        Vec2 alpha{};
        for (long long attempt = 0; attempt < kMaxAlphaDraws; ++attempt) {
            alpha = {rng.next_unit(), rng.next_unit()};
            if (!in_E_N(alpha, N, eps, sampling_en_cut(N, eps))) break;
        }
        LatticeFrame f1 = flow_lattice(N, alpha.x);
        LatticeFrame f2 = flow_lattice(N, alpha.y);
        auto support_phase = [&](IVec2 m1, IVec2 m2) {
            Vec2 v1 = f1.apply(m1);
            Vec2 v2 = f2.apply(m2);
            Vec2 xv{p.x * v1.x, p.y * v2.x};
            return mod1(r * static_cast<double>(N) * body.support(xv));
        };
        double pa = support_phase(a_m1, a_m2);
        double pb = support_phase(b_m1, b_m2);
        phase_a.push_back(pa);
        phase_b.push_back(pb);
        int ba = std::min(7, static_cast<int>(pa * 8.0));
        int bb = std::min(7, static_cast<int>(pb * 8.0));
        ++bins[ba][bb];
        Vec2 g1 = gamma_phase(x.x, N, f1);
        Vec2 g2 = gamma_phase(x.y, N, f2);
        gamma_vals[0].push_back(mod1(g1.x));
        gamma_vals[1].push_back(mod1(g1.y));
        gamma_vals[2].push_back(mod1(g2.x));
        gamma_vals[3].push_back(mod1(g2.y));
    }
    report.ks_single =
        ks_against_uniform(EmpiricalCDF::from_samples(std::move(phase_a)));
    // chi-square independence on the 8x8 contingency table.
    std::vector<double> row(8, 0.0), col(8, 0.0);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            row[i] += bins[i][j];
            col[j] += bins[i][j];
        }
    double n = static_cast<double>(samples);
    double chi2 = 0.0;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            double expected = row[i] * col[j] / n;
            if (expected > 0.0) {
                double d = bins[i][j] - expected;
                chi2 += d * d / expected;
            }
        }
    report.chi2 = chi2;
    for (int c = 0; c < 4; ++c)
        report.ks_gamma[c] =
            ks_against_uniform(EmpiricalCDF::from_samples(std::move(gamma_vals[c])));
    return report;
}

EnMeasureResult en_measure(double eps, long long N, std::size_t draws,
                           std::uint64_t seed) {
    if (draws == 0) throw std::domain_error("en_measure: draws must be >= 1");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < draws; ++i) {
        Rng rng(derive_seed(seed, i));
        Vec2 alpha{rng.next_unit(), rng.next_unit()};
        if (in_E_N(alpha, N, eps)) ++hits;
    }
    EnMeasureResult res;
    res.draws = draws;
    res.fraction = static_cast<double>(hits) / static_cast<double>(draws);
    res.sigma = std::sqrt(std::max(res.fraction * (1.0 - res.fraction), 1e-12) /
                          static_cast<double>(draws));
    res.bound = 2.0 * std::pow(eps, 0.25);
    return res;
}

// ---------------------------------------------------------------------------
// Reporting
// ---------------------------------------------------------------------------

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

using Row = std::vector<std::string>;

std::string render_csv(const Row& header, const std::vector<Row>& rows) {
    std::string out;
    auto append_row = [&](const Row& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out.push_back(',');
            out += row[i];
        }
        out.push_back('\n');
    };
    append_row(header);
    for (const Row& row : rows) append_row(row);
    return out;
}

struct Artifact {
    std::string name;
    std::string bytes;
};

std::vector<Artifact> build_artifacts(const ExperimentConfig& cfg,
                                      const std::string& pipeline) {
    std::vector<Artifact> arts;
    auto fmt = format_double;

    if (pipeline == "fourier") {
        std::vector<Row> rows;
        for (long long k1 = 0; k1 <= 16; ++k1)
            for (long long k2 = 0; k2 <= 16; ++k2) {
                if (k1 == 0 && k2 == 0) continue;
                IVec2 k{k1, k2};
                double c = cosine_coefficient(cfg.body, cfg.r, k);
                NodeTerm node = main_term(cfg.body, cfg.r, k);
                double knorm = k.to_vec().norm();
                rows.push_back({std::to_string(k1), std::to_string(k2), fmt(c),
                                fmt(node.d_k),
                                fmt(std::abs(c - node.d_k) * std::pow(knorm, 2.5))});
            }
        arts.push_back({"fourier.csv",
                        render_csv({"k1", "k2", "coefficient", "main_term",
                                    "remainder_scaled"},
                                   rows)});
    } else if (pipeline == "discrepancy") {
        std::vector<Row> rows;
        for (long long i = 0; i < cfg.samples; ++i) {
            Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(i)));
            ActionConfig ac{.r = cfg.r,
                            .x = {rng.next_unit(), rng.next_unit()},
                            .alpha = {rng.next_unit(), rng.next_unit()},
                            .N = cfg.n_list.front(),
                            .eps = cfg.eps_list.front()};
            double direct = discrepancy_direct(ac, cfg.body);
            double recon = fourier_reconstruction(ac, cfg.body, cfg.k_max);
            rows.push_back({std::to_string(i), fmt(direct), fmt(recon),
                            fmt(direct - recon)});
        }
        arts.push_back({"discrepancy.csv",
                        render_csv({"sample", "direct", "reconstruction",
                                    "difference"},
                                   rows)});
    } else if (pipeline == "smooth-part") {
        AxisSeries series(cfg.body, cfg.r, cfg.k_max);
        std::vector<Row> rows;
        if (cfg.mode == "cocycle") {
            for (long long i = 0; i < cfg.samples; ++i) {
                Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(i)));
                Vec2 x{rng.next_unit(), rng.next_unit()};
                Vec2 alpha{rng.next_unit(), rng.next_unit()};
                long long n = static_cast<long long>(rng.next_in(0.0, 64.0));
                Vec2 xn{x.x + n * alpha.x, x.y + n * alpha.y};
                Vec2 xn1{x.x + (n + 1) * alpha.x, x.y + (n + 1) * alpha.y};
                double lhs = A_series(series, xn);
                double rhs = B_series(series, alpha, xn1) -
                             B_series(series, alpha, xn);
                rows.push_back({std::to_string(i), fmt(lhs - rhs)});
            }
            arts.push_back(
                {"cocycle_residuals.csv", render_csv({"sample", "residual"}, rows)});
        } else if (cfg.mode == "limit-cdf" || cfg.mode.empty()) {
            std::vector<double> vals;
            for (long long i = 0; i < cfg.samples; ++i) {
                Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(i)));
                Vec2 x{rng.next_unit(), rng.next_unit()};
                Vec2 alpha{rng.next_unit(), rng.next_unit()};
                Vec2 beta{rng.next_unit(), rng.next_unit()};
                vals.push_back(limit_sample_d1(series, x, alpha, beta));
            }
            std::sort(vals.begin(), vals.end());
            for (std::size_t i = 0; i < vals.size(); ++i)
                rows.push_back({std::to_string(i), fmt(vals[i])});
            arts.push_back(
                {"smooth_part_samples.csv", render_csv({"rank", "value"}, rows)});
        } else {
            throw ConfigError("config: field 'mode' must be cocycle or limit-cdf");
        }
    } else if (pipeline == "lattice") {
        std::vector<Row> rows;
        if (cfg.mode == "reduce" || cfg.mode.empty()) {
            for (long long i = 0; i < cfg.samples; ++i) {
                Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(i)));
                double alpha = rng.next_unit();
                LatticeFrame f = flow_lattice(cfg.n_list.front(), alpha);
                rows.push_back({std::to_string(i), fmt(alpha), fmt(f.e1.x),
                                fmt(f.e1.y), fmt(f.e2.x), fmt(f.e2.y),
                                fmt(f.det())});
            }
            arts.push_back({"lattice_frames.csv",
                            render_csv({"sample", "alpha", "e1x", "e1y", "e2x",
                                        "e2y", "det"},
                                       rows)});
        } else if (cfg.mode == "correspond") {
            long long ok = 0, total = 0;
            for (long long i = 0; i < cfg.samples; ++i) {
                Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(i)));
                Vec2 alpha{rng.next_unit(), rng.next_unit()};
                if (in_E_N(alpha, cfg.n_list.front(), cfg.eps_list.front()))
                    continue;
                ActionConfig ac{.r = cfg.r,
                                .x = {},
                                .alpha = alpha,
                                .N = cfg.n_list.front(),
                                .eps = cfg.eps_list.front()};
                LatticeFrame f1 = flow_lattice(ac.N, alpha.x);
                LatticeFrame f2 = flow_lattice(ac.N, alpha.y);
                for (IVec2 k : node_set(ac, NodeFilter::SHat)) {
                    ++total;
                    Correspondence m = correspondence(ac, k, f1, f2);
                    if (correspondence_inverse(m, ac.N, f1, f2) == k) ++ok;
                }
            }
            rows.push_back({std::to_string(total), std::to_string(ok)});
            arts.push_back(
                {"correspondence.csv", render_csv({"nodes", "roundtrip_ok"}, rows)});
        } else if (cfg.mode == "haar-test") {
            double sum_invy = 0.0;
            for (long long i = 0; i < cfg.samples; ++i) {
                LatticeFrame f = haar_sample(derive_seed(cfg.seed,
                                                         static_cast<std::uint64_t>(i)));
                sum_invy += f.e1.norm2();  // shortest vector norm^2 equals 1/y
            }
            rows.push_back({std::to_string(cfg.samples),
                            fmt(sum_invy / static_cast<double>(cfg.samples)),
                            fmt(haar_tail_mass())});
            arts.push_back({"haar_test.csv",
                            render_csv({"samples", "mean_inv_y", "tail_mass"}, rows)});
        } else {
            throw ConfigError(
                "config: field 'mode' must be reduce, correspond or haar-test");
        }
    } else if (pipeline == "limit-law") {
        LimitCdfDiagnostics diag;
        EmpiricalCDF cdf = sample_limit_cdf(cfg.body, cfg.policy,
                                            static_cast<std::size_t>(cfg.samples),
                                            cfg.seed, &diag);
        std::vector<Row> rows;
        for (std::size_t i = 0; i < cdf.values.size(); ++i)
            rows.push_back({std::to_string(i), fmt(cdf.values[i])});
        arts.push_back({"limit_law_samples.csv", render_csv({"rank", "value"}, rows)});
        std::vector<Row> qrows;
        for (int q = 0; q < 512; ++q) {
            double lo = cdf.values.front(), hi = cdf.values.back();
            double z = lo + (hi - lo) * (static_cast<double>(q) / 511.0);
            qrows.push_back({fmt(z), fmt(cdf(z))});
        }
        arts.push_back({"limit_law_cdf.csv", render_csv({"z", "cdf"}, qrows)});
        std::vector<Row> drows{{fmt(diag.max_tail_bound),
                                std::to_string(diag.escalations),
                                std::to_string(diag.max_pcheck_used)}};
        arts.push_back({"limit_law_diag.csv",
                        render_csv({"max_tail_bound", "escalations",
                                    "max_pcheck_used"},
                                   drows)});
    } else if (pipeline == "theorem1a") {
        Theorem1aResult res =
            theorem1a(cfg.body, cfg.r, cfg.n_list.front(), cfg.k_max,
                      static_cast<std::size_t>(cfg.samples), cfg.seed);
        std::vector<Row> rows{{fmt(res.ks), fmt(res.ks_symmetry),
                               std::to_string(res.finite.size()),
                               std::to_string(res.limit.size())}};
        arts.push_back({"theorem1a_summary.csv",
                        render_csv({"ks", "ks_symmetry", "finite_samples",
                                    "limit_samples"},
                                   rows)});
        std::vector<Row> srows;
        for (std::size_t i = 0; i < res.finite.values.size(); ++i)
            srows.push_back({std::to_string(i), fmt(res.finite.values[i]),
                             fmt(res.limit.values[i])});
        arts.push_back({"theorem1a_samples.csv",
                        render_csv({"rank", "finite", "limit"}, srows)});
    } else if (pipeline == "theorem1b") {
        long long n_small = cfg.n_list.front();
        long long n_large = cfg.n_list.back();
        Theorem1bResult res = theorem1b(
            cfg.body, cfg.r_lo, cfg.r_hi, n_small, n_large,
            cfg.eps_list.front(), cfg.k_max,
            static_cast<std::size_t>(cfg.samples), cfg.policy, cfg.seed);
        std::vector<Row> rows{
            {std::to_string(n_small), std::to_string(n_large),
             fmt(res.ks_small), fmt(res.ks_large),
             std::to_string(res.finite_large.resamples),
             std::to_string(res.finite_large.draws),
             fmt(res.diag.max_tail_bound)}};
        arts.push_back({"theorem1b_summary.csv",
                        render_csv({"n_small", "n_large", "ks_small", "ks_large",
                                    "resamples_large", "draws_large",
                                    "max_tail_bound"},
                                   rows)});
        std::vector<Row> srows;
        for (std::size_t i = 0; i < res.finite_large.cdf.values.size(); ++i)
            srows.push_back({std::to_string(i),
                             fmt(res.finite_small.cdf.values[i]),
                             fmt(res.finite_large.cdf.values[i]),
                             fmt(res.limit.values[i])});
        arts.push_back({"theorem1b_samples.csv",
                        render_csv({"rank", "finite_small", "finite_large",
                                    "limit"},
                                   srows)});
    } else if (pipeline == "phases") {
        PhaseUniformityReport rep = phase_uniformity_test(
            cfg.body, cfg.n_list.front(), cfg.eps_list.front(),
            static_cast<std::size_t>(cfg.samples), cfg.seed);
        std::vector<Row> rows{{fmt(rep.ks_single), fmt(rep.chi2), fmt(rep.chi2_df),
                               fmt(rep.ks_gamma[0]), fmt(rep.ks_gamma[1]),
                               fmt(rep.ks_gamma[2]), fmt(rep.ks_gamma[3]),
                               std::to_string(rep.samples)}};
        arts.push_back({"phases.csv",
                        render_csv({"ks_single", "chi2", "chi2_df", "ks_gamma_11",
                                    "ks_gamma_12", "ks_gamma_21", "ks_gamma_22",
                                    "samples"},
                                   rows)});
    } else if (pipeline == "en-measure") {
        std::vector<Row> rows;
        for (double eps : cfg.eps_list) {
            EnMeasureResult res = en_measure(eps, cfg.n_list.front(),
                                             static_cast<std::size_t>(cfg.samples),
                                             cfg.seed);
            rows.push_back({fmt(eps), fmt(res.fraction), fmt(res.sigma),
                            fmt(res.bound), std::to_string(res.draws)});
        }
        arts.push_back({"en_measure.csv",
                        render_csv({"eps", "fraction", "sigma", "bound", "draws"},
                                   rows)});
    } else {
        throw ConfigError("unknown pipeline '" + pipeline + "'");
    }
    return arts;
}

}  // namespace

std::vector<std::string> run_experiment(const ExperimentConfig& cfg,
                                        const std::string& pipeline) {
    auto start = std::chrono::steady_clock::now();
    std::vector<Artifact> arts = build_artifacts(cfg, pipeline);
    auto stop = std::chrono::steady_clock::now();

    std::vector<std::string> written;
    nlohmann::json outputs = nlohmann::json::array();
    for (const Artifact& a : arts) {
        std::string path = cfg.out_dir + "/" + a.name;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("run_experiment: cannot write " + path);
        out << a.bytes;
        out.close();
        outputs.push_back({{"file", a.name}, {"sha256", sha256_hex(a.bytes)}});
        written.push_back(path);
    }
    nlohmann::json manifest = {
        {"pipeline", pipeline},
        {"seed", cfg.seed},
        {"body", cfg.body.spec_string()},
        {"samples", cfg.samples},
        {"k_max", cfg.k_max},
        {"mode", cfg.mode},
        {"n_list", cfg.n_list},
        {"eps_list", cfg.eps_list},
        {"r", cfg.r},
        {"r_lo", cfg.r_lo},
        {"r_hi", cfg.r_hi},
        {"pcheck_max", cfg.policy.pcheck_max},
        {"k_eps", cfg.policy.k_eps},
        {"outputs", outputs},
        {"wall_ms",
         std::chrono::duration_cast<std::chrono::milliseconds>(stop - start)
             .count()},
    };
    std::ofstream mf(cfg.out_dir + "/manifest.jsonl", std::ios::app);
    if (!mf)
        throw std::runtime_error("run_experiment: cannot write manifest.jsonl");
    mf << manifest.dump() << "\n";
    written.push_back(cfg.out_dir + "/manifest.jsonl");
    return written;
}

}  // namespace edlab
