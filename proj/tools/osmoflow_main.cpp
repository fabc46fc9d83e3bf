// Command-line front end: validate and convert workflow descriptions, run
// the EOS-parameterization campaign, and fit performance models.

#include <CLI11.hpp>

#include "osmoflow/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"semantic workflow engine for simulated HPC campaigns"};
    app.require_subcommand(1);

    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "validate a TTL workflow file");
    validate->add_option("file", validate_path, "TTL file")->required();

    osmoflow::cli::RunOptions run_options;
    std::uint64_t seed_value = 0;
    std::string policy_value;
    auto* run = app.add_subcommand("run", "run the EOS-parameterization campaign");
    run->add_option("--config", run_options.config_path,
                    "key=value config file (default: $OSMOFLOW_CONFIG)");
    auto* seed_opt = run->add_option("--seed", seed_value, "scheduler seed");
    auto* policy_opt = run->add_option("--policy", policy_value, "fifo or lpt");
    run->add_option("--out", run_options.out_dir, "output directory");

    std::string dot_in, dot_out;
    auto* export_dot = app.add_subcommand("export-dot", "render a workflow as graphviz");
    export_dot->add_option("input", dot_in, "TTL file")->required();
    export_dot->add_option("output", dot_out, "DOT file")->required();

    std::string fit_in, fit_out = "model.json";
    auto* perf_fit = app.add_subcommand("perf-fit", "fit a runtime model");
    perf_fit->add_option("observations", fit_in, "JSON observation list")->required();
    perf_fit->add_option("--out", fit_out, "model output path");

    CLI11_PARSE(app, argc, argv);

    if (validate->parsed()) return osmoflow::cli::cmd_validate(validate_path);
    if (run->parsed()) {
        if (!seed_opt->empty()) run_options.seed = seed_value;
        if (!policy_opt->empty()) run_options.policy = policy_value;
        return osmoflow::cli::cmd_run(run_options);
    }
    if (export_dot->parsed()) return osmoflow::cli::cmd_export_dot(dot_in, dot_out);
    if (perf_fit->parsed()) return osmoflow::cli::cmd_perf_fit(fit_in, fit_out);
    return osmoflow::cli::kUsage;
}
