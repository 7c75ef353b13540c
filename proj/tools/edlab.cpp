// Command-line front end: every subcommand maps onto one experiment pipeline.
// Exit codes: 0 success, 2 configuration error, 3 numerical-contract
// violation (quadrature tolerance, resonance guard, domain errors).
#include <cstdio>
#include <exception>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "edlab/fourier.hpp"
#include "edlab/harness.hpp"

namespace {

struct CliOverrides {
    std::string config_path;
    std::map<std::string, std::string> kv;
};

void add_common(CLI::App* sub, CliOverrides& o) {
    sub->add_option("--config", o.config_path, "key=value configuration file");
    auto opt = [&o, sub](const std::string& flag, const std::string& key,
                         const std::string& help) {
        sub->add_option_function<std::string>(
            flag, [&o, key](const std::string& v) { o.kv[key] = v; }, help);
    };
    opt("--seed", "seed", "master seed");
    opt("--out", "out", "output directory");
    opt("--body", "body", "body spec: disk or ellipse:a=<f>,b=<f>");
    opt("--r", "r", "fixed scale r");
    opt("--r-lo", "r_lo", "lower end of the r interval");
    opt("--r-hi", "r_hi", "upper end of the r interval");
    opt("--N", "n_list", "orbit horizon(s), comma separated");
    opt("--eps", "eps_list", "cutoff parameter(s), comma separated");
    opt("--samples", "samples", "Monte Carlo sample count");
    opt("--kmax", "k_max", "series truncation");
    opt("--mode", "mode", "pipeline mode");
    opt("--pcheck-max", "pcheck_max", "signed multiplier cutoff");
    opt("--k-eps", "k_eps", "prime-vector norm cap");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"toral translation discrepancy experiments"};
    app.require_subcommand(1);

    const char* pipelines[] = {"fourier",   "discrepancy", "smooth-part",
                               "lattice",   "limit-law",   "theorem1a",
                               "theorem1b", "phases",      "en-measure"};
    std::map<std::string, CliOverrides> overrides;
    for (const char* name : pipelines)
        add_common(app.add_subcommand(name), overrides[name]);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    std::string pipeline = app.get_subcommands().front()->get_name();
    const CliOverrides& o = overrides[pipeline];
    try {
        std::map<std::string, std::string> kv;
        if (!o.config_path.empty())
            kv = edlab::parse_key_value_file(o.config_path);
        for (const auto& [k, v] : o.kv) kv[k] = v;
        edlab::ExperimentConfig cfg = edlab::ExperimentConfig::from_map(kv);
        for (const std::string& file : edlab::run_experiment(cfg, pipeline))
            std::printf("wrote %s\n", file.c_str());
        return 0;
    } catch (const edlab::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical contract violation: %s\n", e.what());
        return 3;
    }
}
