#pragma once
// Command implementations behind the CLI binary. Exit-code contract:
// 0 success, 1 domain failure (validation errors, non-convergence,
// unfittable data), 2 usage, configuration, or I/O problems. Output files
// are written atomically (temp + rename), so failures leave no partial
// artifacts.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "osmoflow/campaign.hpp"
#include "osmoflow/dot.hpp"
#include "osmoflow/eos_workflow.hpp"
#include "osmoflow/perfmodel.hpp"
#include "osmoflow/ttl.hpp"
#include "osmoflow/workflow_ttl.hpp"

namespace osmoflow::cli {

inline constexpr int kOk = 0;
inline constexpr int kDomainFailure = 1;
inline constexpr int kUsage = 2;

namespace detail {

inline std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw Error("cannot write " + tmp.string());
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

inline void print_report(const std::string& path, const ValidationReport& report,
                         std::ostream& err) {
    for (const auto& d : report.items())
        err << path << ": "
            << (d.severity == Diagnostic::Severity::Error ? "error" : "warning") << " ["
            << d.code << "] " << d.subject << ": " << d.message << "\n";
}

}  // namespace detail

// ---------------------------------------------------------------------------
// validate: TTL syntax, vocabulary-level domain/range checks, and workflow
// structure when the document describes one.

inline int cmd_validate(const std::string& path, std::ostream& err = std::cerr) {
    auto text = detail::read_file(path);
    if (!text) {
        err << path << ": cannot read file\n";
        return kUsage;
    }
    ttl::TtlDocument doc;
    try {
        doc = ttl::parse_ttl(*text);
    } catch (const ttl::TtlError& e) {
        err << path << ": " << e.what() << "\n";
        return kUsage;
    }

    ValidationReport report;
    auto store = onto::load_builtin_vocabulary();
    report.merge(ttl::assert_document(doc, store));
    report.merge(store.validate());

    if (ttl::has_simulation_workflow_subject(doc)) {
        try {
            auto workflow = ttl::triples_to_workflow(doc);
            report.merge(wf::validate_workflow(workflow));
        } catch (const Error& e) {
            report.add_error("workflow_structure", path, e.what());
        }
    }

    detail::print_report(path, report, err);
    return report.error_count() == 0 ? kOk : kDomainFailure;
}

// ---------------------------------------------------------------------------
// run: the EOS campaign; writes the campaign report, the scheduler run
// report, and the workflow description.

struct RunOptions {
    std::string config_path;  // optional; OSMOFLOW_CONFIG supplies the default
    std::optional<std::uint64_t> seed;
    std::optional<std::string> policy;
    std::string out_dir = ".";
};

inline int cmd_run(const RunOptions& options, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
    eos::CampaignConfig cfg;
    try {
        std::string config_path = options.config_path;
        if (config_path.empty()) {
            if (const char* env = std::getenv("OSMOFLOW_CONFIG")) config_path = env;
        }
        if (!config_path.empty())
            eos::apply_key_values(config::load_key_values(config_path), cfg);
        if (options.seed) cfg.seed = *options.seed;
        if (options.policy) cfg.policy = wms::policy_from_string(*options.policy);
        cfg.output_root = options.out_dir;
        if (cfg.cluster.nodes.empty()) throw config::ConfigError("cluster has no nodes");
        if (cfg.np_per_task > cfg.cluster.total_cores())
            throw config::ConfigError("np exceeds the cluster's total cores");
    } catch (const Error& e) {
        err << "configuration error: " << e.what() << "\n";
        return kUsage;
    }

    eos::CampaignReport report;
    try {
        report = eos::run_eos_campaign(cfg);
    } catch (const Error& e) {
        err << "campaign failed: " << e.what() << "\n";
        return kUsage;
    }

    const std::filesystem::path dir = cfg.output_root;
    detail::atomic_write(dir / "campaign.json", report.to_json().dump(2) + "\n");
    detail::atomic_write(dir / "run_report.jsonl", report.run.to_jsonl());
    detail::atomic_write(dir / "run_summary.json", report.run.summary().dump(2) + "\n");
    detail::atomic_write(dir / "eos-parameterization.ttl", report.workflow_ttl);

    const auto& last = report.iterations.back();
    out << "iterations=" << report.iterations.size() << " makespan=" << report.run.makespan
        << " rms_residual=" << last.rms_residual
        << (report.converged ? " converged" : " NOT CONVERGED") << "\n";
    if (!report.converged) {
        err << "campaign hit the iteration cap before converging\n";
        return kDomainFailure;
    }
    return kOk;
}

// ---------------------------------------------------------------------------
// export-dot: LDT rendering of a workflow document.

inline int cmd_export_dot(const std::string& in_path, const std::string& out_path,
                          std::ostream& err = std::cerr) {
    auto text = detail::read_file(in_path);
    if (!text) {
        err << in_path << ": cannot read file\n";
        return kUsage;
    }
    try {
        auto doc = ttl::parse_ttl(*text);
        auto workflow = ttl::triples_to_workflow(doc);
        detail::atomic_write(out_path, wf::export_dot(workflow));
    } catch (const Error& e) {
        err << in_path << ": " << e.what() << "\n";
        return kUsage;
    }
    return kOk;
}

// ---------------------------------------------------------------------------
// perf-fit: fit a runtime model from a JSON observation list.

inline int cmd_perf_fit(const std::string& obs_path, const std::string& out_path,
                        std::ostream& err = std::cerr) {
    auto text = detail::read_file(obs_path);
    if (!text) {
        err << obs_path << ": cannot read file\n";
        return kUsage;
    }
    std::vector<perf::Observation> observations;
    try {
        auto j = nlohmann::json::parse(*text);
        if (!j.is_array()) throw Error("expected a JSON array of observations");
        for (const auto& jo : j) {
            perf::Observation o;
            if (jo.contains("params"))
                o.params = jo.at("params").get<std::map<std::string, double>>();
            o.resources = jo.at("N").get<int>();
            o.runtime = jo.at("runtime").get<double>();
            observations.push_back(std::move(o));
        }
    } catch (const std::exception& e) {
        err << obs_path << ": " << e.what() << "\n";
        return kUsage;
    }

    try {
        perf::PerfModel model = perf::fit(observations);
        detail::atomic_write(out_path, perf::to_json(model).dump(2) + "\n");
    } catch (const perf::InsufficientDataError& e) {
        err << obs_path << ": " << e.what() << "\n";
        return kDomainFailure;
    } catch (const perf::DegenerateDesignError& e) {
        err << obs_path << ": " << e.what() << "\n";
        return kDomainFailure;
    } catch (const Error& e) {
        err << obs_path << ": " << e.what() << "\n";
        return kUsage;
    }
    return kOk;
}

}  // namespace osmoflow::cli
