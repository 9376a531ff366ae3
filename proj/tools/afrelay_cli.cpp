// Command-line front end: GGA fits, outage sweeps, Monte Carlo and figure presets.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "afrelay/errors.hpp"
#include "afrelay/gga.hpp"
#include "afrelay/scenario.hpp"

namespace fs = std::filesystem;
using namespace afrelay;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

std::string default_out_dir()
{
    const char* env = std::getenv("AFRELAY_OUT_DIR");
    return env != nullptr && *env != '\0' ? env : ".";
}

// Relative paths land in the default output directory.
fs::path resolve_out(const std::string& out)
{
    fs::path p(out);
    return p.is_absolute() ? p : fs::path(default_out_dir()) / p;
}

int emit(const OutageCurve& curve, const std::string& out)
{
    if (out.empty() || out == "-") {
        write_csv(std::cout, curve);
    } else {
        const fs::path p = resolve_out(out);
        if (p.has_parent_path()) {
            fs::create_directories(p.parent_path());
        }
        std::ofstream f(p, std::ios::binary);
        if (!f) {
            std::cerr << "cannot write " << p << "\n";
            return kExitFailure;
        }
        write_csv(f, curve);
        std::cerr << "wrote " << p.string() << "\n";
    }
    for (const auto& r : curve.rows) {
        if (!r.outage) {
            std::cerr << to_string(r.method) << " @ " << r.gamma_th_db << " dB: " << r.warnings << "\n";
        }
    }
    return curve.total_failure() ? kExitFailure : 0;
}

int cmd_fit(const std::string& config)
{
    const Scenario s = load_scenario(config);
    if (s.track != Track::random) {
        std::cerr << "fit-gga needs a random-track scenario\n";
        return kExitConfig;
    }
    std::map<int, bool> seen;
    nlohmann::json out = nlohmann::json::array();
    for (const auto& l : s.links) {
        for (int m : {l.m_i, l.m_v}) {
            if (seen[m]) {
                continue;
            }
            seen[m] = true;
            RandomField field;
            field.lambda_mean = s.lambda_mean;
            field.disc_radius = s.disc_radius;
            field.power_product = s.power_product;
            field.fading_m = m;
            field.pathloss = PathLoss{s.pathloss_beta};
            const MomentTriple mt = aggregate_moments_random(field, s.quad);
            const FitReport fit = fit_gga(mt);
            out.push_back({{"interferer_m", m},
                           {"moments", {mt.m1, mt.m2, mt.m3}},
                           {"a", fit.params.a},
                           {"d", fit.params.d},
                           {"p", fit.params.p},
                           {"residuals", fit.residuals},
                           {"iterations", fit.iterations}});
        }
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Outage analysis of dual-hop relay selection under interference"};
    app.require_subcommand(1);

    std::string config;
    std::string methods;
    std::string out;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::string figure;

    auto* fit = app.add_subcommand("fit-gga", "Fit the generalized-Gamma law to each interferer field");
    fit->add_option("--config", config, "Scenario JSON")->required()->check(CLI::ExistingFile);

    auto* outage = app.add_subcommand("outage", "Evaluate outage methods over the threshold grid");
    outage->add_option("--config", config, "Scenario JSON")->required()->check(CLI::ExistingFile);
    outage->add_option("--methods", methods,
                       "Comma list: exact, gga_exact, fixed_exact, lower_bound, asymptotic, "
                       "closed_form_dominant, rayleigh_closed_form, rayleigh_highsinr, mc");
    outage->add_option("--out", out, "CSV file (stdout when omitted)");
    outage->add_option("--threads", threads, "Worker threads (0 = all cores)");

    auto* mc = app.add_subcommand("mc", "Monte Carlo outage");
    mc->add_option("--config", config, "Scenario JSON")->required()->check(CLI::ExistingFile);
    auto* trials_opt = mc->add_option("--trials", trials, "Trials")->check(CLI::PositiveNumber);
    auto* seed_opt = mc->add_option("--seed", seed, "Seed");
    mc->add_option("--out", out, "CSV file (stdout when omitted)");
    mc->add_option("--threads", threads, "Worker threads (0 = all cores)");

    auto* fig = app.add_subcommand("figure", "Run every curve of a figure preset");
    fig->add_option("name", figure, "fig1 .. fig11")->required();
    fig->add_option("--out", out, "Output directory (default $AFRELAY_OUT_DIR or .)");
    fig->add_option("--methods", methods, "Methods (default: exact, lower_bound, asymptotic, mc)");
    auto* fig_trials = fig->add_option("--trials", trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
    fig->add_option("--threads", threads, "Worker threads (0 = all cores)");

    auto* validate = app.add_subcommand("validate", "Check a scenario file and print it normalized");
    validate->add_option("--config", config, "Scenario JSON")->required()->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    try {
        if (fit->parsed()) {
            return cmd_fit(config);
        }
        if (validate->parsed()) {
            const Scenario s = load_scenario(config);
            build_system(s);
            std::cout << serialize_scenario(s) << "\n";
            return 0;
        }
        if (outage->parsed()) {
            Scenario s = load_scenario(config);
            s.mc.threads = threads;
            const auto ms = methods.empty() ? default_methods(s.track) : parse_methods(methods, s.track);
            return emit(run(s, ms, RunOptions{threads}), out);
        }
        if (mc->parsed()) {
            Scenario s = load_scenario(config);
            if (*trials_opt) {
                s.mc.trials = trials;
            }
            if (*seed_opt) {
                s.mc.seed = seed;
            }
            s.mc.threads = threads;
            return emit(run(s, {Method::mc}), out);
        }
        if (fig->parsed()) {
            const fs::path dir = out.empty() ? fs::path(default_out_dir()) : fs::path(out);
            fs::create_directories(dir);
            const fs::path file = dir / (figure + ".csv");
            std::ofstream f(file, std::ios::binary);
            if (!f) {
                std::cerr << "cannot write " << file << "\n";
                return kExitFailure;
            }
            write_csv_header(f);
            bool all_failed = true;
            for (Scenario s : figure_preset(figure)) {
                if (*fig_trials) {
                    s.mc.trials = trials;
                }
                s.mc.threads = threads;
                auto ms = methods.empty() ? default_methods(s.track) : parse_methods(methods, s.track);
                if (methods.empty() && figure == "fig11") {
                    ms.push_back(Method::closed_form_dominant);
                }
                std::cerr << "running " << s.id << "\n";
                const OutageCurve c = run(s, ms, RunOptions{threads});
                write_csv(f, c, false);
                all_failed = all_failed && c.total_failure();
            }
            std::cerr << "wrote " << file.string() << "\n";
            return all_failed ? kExitFailure : 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return 0;
}
