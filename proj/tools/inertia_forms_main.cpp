#include <CLI11.hpp>

#include <iostream>

#include "iforms/scenario.hpp"

namespace {

// Exit codes: 0 all checks pass, 1 a mathematical assertion failed,
// 2 configuration or structural error.
constexpr int kOk = 0;
constexpr int kMathFailure = 1;
constexpr int kConfigError = 2;

struct Options {
    std::string config;
    std::string format = "table";
    int cutoff = -1;
    long long seed = -1;
    int samples = -1;
    std::string fault = "none";
};

void add_common(CLI::App* cmd, Options& opt, bool needs_seed = false) {
    cmd->add_option("--config", opt.config, "scenario config file (JSON)")->required();
    cmd->add_option("--format", opt.format, "output format: json|csv|table");
    cmd->add_option("--cutoff", opt.cutoff, "override the weight cutoff");
    if (needs_seed) {
        cmd->add_option("--seed", opt.seed, "override the sampling seed");
        cmd->add_option("--samples", opt.samples, "override the sample count");
    }
}

iforms::Scenario load(const Options& opt) {
    iforms::Scenario s = iforms::load_scenario_file(opt.config);
    if (opt.cutoff > 0) {
        s.cutoff = opt.cutoff;
        s.echo["cutoff"] = opt.cutoff;
    }
    if (opt.seed >= 0) {
        s.seed = static_cast<std::uint64_t>(opt.seed);
        s.echo["seed"] = s.seed;
    }
    if (opt.samples >= 0) {
        s.samples = opt.samples;
        s.echo["samples"] = s.samples;
    }
    return s;
}

int emit(const iforms::Scenario& s, const iforms::Report& report, const Options& opt) {
    std::cout << iforms::render_report(s, report, opt.format);
    return report.all_pass() ? kOk : kMathFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact differential-form complexes on loop spaces of linear group actions"};
    app.require_subcommand(1);

    Options opt;
    auto* loopspace = app.add_subcommand("loopspace", "list fixed subspaces per group element");
    add_common(loopspace, opt);
    auto* dims = app.add_subcommand("dims", "basic complex slot dimensions");
    add_common(dims, opt);
    auto* cohomology = app.add_subcommand("cohomology", "cohomology table per weight");
    add_common(cohomology, opt);
    auto* verify = app.add_subcommand("verify", "run resolution/morita/chart checks");
    add_common(verify, opt);
    verify->add_option("--fault", opt.fault, "test hook: 'inject' corrupts a differential");
    auto* homotopy = app.add_subcommand("homotopy-check", "sampled homotopy identity checks");
    add_common(homotopy, opt, true);
    auto* morita = app.add_subcommand("morita", "slice-model dimension comparison");
    add_common(morita, opt);
    auto* charts = app.add_subcommand("chart-check", "chart transfer isomorphism/cocycle checks");
    add_common(charts, opt);

    CLI11_PARSE(app, argc, argv);

    try {
        const iforms::Scenario s = load(opt);
        if (loopspace->parsed()) return emit(s, iforms::run_loopspace(s), opt);
        if (dims->parsed()) return emit(s, iforms::run_dims(s), opt);
        if (cohomology->parsed()) return emit(s, iforms::run_cohomology(s), opt);
        if (verify->parsed()) {
            if (opt.fault != "none" && opt.fault != "inject") {
                std::cerr << "error: unknown fault mode '" << opt.fault << "'\n";
                return kConfigError;
            }
            return emit(s, iforms::run_verify(s, opt.fault == "inject"), opt);
        }
        if (homotopy->parsed()) return emit(s, iforms::run_homotopy_check(s, s.samples, s.seed), opt);
        if (morita->parsed()) return emit(s, iforms::run_morita(s), opt);
        if (charts->parsed()) return emit(s, iforms::run_chart_check(s), opt);
        return kConfigError;
    } catch (const iforms::structural_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const iforms::consistency_error& e) {
        std::cerr << "theorem violation: " << e.what() << '\n';
        return kMathFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    }
}
