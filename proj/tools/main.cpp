#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fcprog/errors.hpp"
#include "fcprog/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitNumeric = 3;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fuel-cell prognostics pipeline"};
    app.require_subcommand(1);
    app.fallthrough(true);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    int jobs = 1;
    auto* config_opt = app.add_option("--config", config_path, "Pipeline config file");
    auto* out_opt = app.add_option("--out", out_dir, "Output directory");
    auto* seed_opt = app.add_option("--seed", seed, "Master random seed");
    auto* jobs_opt = app.add_option("--jobs", jobs, "Worker threads for ensemble training")
                         ->check(CLI::PositiveNumber);

    std::string input_csv;
    std::string hi_csv;
    double t_now = 0.0;

    auto* synth = app.add_subcommand("synth", "Generate a synthetic ageing data set");
    auto* decompose = app.add_subcommand("decompose", "EMD + Hilbert spectrum of a series");
    decompose->add_option("input", input_csv, "Input time-series CSV")->required();
    auto* extract = app.add_subcommand("extract", "Extract the normalized health indicator");
    extract->add_option("input", input_csv, "Voltage time-series CSV")->required();
    auto* predict = app.add_subcommand("predict", "RUL at one prognostics point");
    predict->add_option("hi", hi_csv, "Health-indicator CSV")->required();
    predict->add_option("--t-now", t_now, "Prognostics point, hours")->required();
    auto* evaluate = app.add_subcommand("evaluate", "Sweep points x thresholds with metrics");
    evaluate->add_option("hi", hi_csv, "Health-indicator CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitParse;
    }

    try {
        fcprog::PipelineConfig cfg;
        if (config_opt->count()) cfg = fcprog::load_config(config_path);
        if (seed_opt->count()) cfg.seed = seed;
        if (out_opt->count()) cfg.out_dir = out_dir;
        if (jobs_opt->count()) cfg.jobs = jobs;
        fcprog::validate_config(cfg);

        if (synth->parsed()) fcprog::cmd_synth(cfg);
        else if (decompose->parsed()) fcprog::cmd_decompose(cfg, input_csv);
        else if (extract->parsed()) fcprog::cmd_extract(cfg, input_csv);
        else if (predict->parsed()) fcprog::cmd_predict(cfg, hi_csv, t_now);
        else if (evaluate->parsed()) fcprog::cmd_evaluate(cfg, hi_csv);
        return kExitOk;
    } catch (const fcprog::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumeric;
    }
}
