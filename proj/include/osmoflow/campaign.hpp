#pragma once
// The end-to-end EOS-parameterization campaign: a workflow model that
// samples state points on the simulated cluster, post-processes the
// derivative outputs, fits the EOS coefficients, and refines around the
// critical point and the coexistence region until the coefficients stop
// moving.

#include <deque>
#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "osmoflow/config.hpp"
#include "osmoflow/eos.hpp"
#include "osmoflow/eos_workflow.hpp"
#include "osmoflow/perfmodel.hpp"
#include "osmoflow/scheduler.hpp"
#include "osmoflow/ttl.hpp"
#include "osmoflow/workflow_ttl.hpp"

namespace osmoflow::eos {

struct CampaignConfig {
    EosForm truth_form = default_truth_form();
    std::vector<double> truth_coefficients = default_truth_coefficients();
    EosForm fit_form = default_truth_form();
    std::vector<double> grid_T = {1.0, 1.2, 1.4, 1.6, 1.8};
    std::vector<double> grid_rho = {0.05, 0.3375, 0.625, 0.9125, 1.2};
    double sigma_rel = 0.01;      // sampling noise
    double epsilon = 1e-4;        // convergence tolerance on coefficients
    int max_iterations = 40;
    int np_per_task = 4;
    wms::Cluster cluster = wms::Cluster::uniform(2, 4);
    wms::Policy policy = wms::Policy::Fifo;
    std::uint64_t seed = 1;
    double scheduler_noise_sigma = 0.05;
    double cost_base = 1.0;   // simulated task duration: base + work / np
    double cost_work = 40.0;
    std::filesystem::path output_root = ".";
    RefineConfig refine;
    bool use_perf_provider = true;
};

struct IterationStats {
    int iteration = 0;
    std::vector<double> coefficients;
    double rms_residual = 0.0;
    std::optional<double> T_c, rho_c;
    double max_rel_change = std::numeric_limits<double>::infinity();
    int new_points = 0;
};

struct CampaignReport {
    std::vector<IterationStats> iterations;
    std::vector<double> final_coefficients;
    bool converged = false;
    std::vector<std::string> warnings;
    wms::RunReport run;
    std::string workflow_ttl;  // OSMO description of the campaign workflow

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["converged"] = converged;
        j["final_coefficients"] = final_coefficients;
        j["iterations"] = nlohmann::ordered_json::array();
        for (const auto& it : iterations) {
            nlohmann::ordered_json ji;
            ji["iteration"] = it.iteration;
            ji["coefficients"] = it.coefficients;
            ji["rms_residual"] = it.rms_residual;
            ji["T_c"] = it.T_c ? nlohmann::ordered_json(*it.T_c)
                               : nlohmann::ordered_json(nullptr);
            ji["rho_c"] = it.rho_c ? nlohmann::ordered_json(*it.rho_c)
                                   : nlohmann::ordered_json(nullptr);
            ji["max_rel_change"] = std::isfinite(it.max_rel_change)
                                       ? nlohmann::ordered_json(it.max_rel_change)
                                       : nlohmann::ordered_json(nullptr);
            ji["new_points"] = it.new_points;
            j["iterations"].push_back(std::move(ji));
        }
        j["warnings"] = warnings;
        j["scheduler"] = run.summary();
        return j;
    }
};

// ---------------------------------------------------------------------------
// The workflow model handed to the scheduler

class EosWorkflowModel : public wms::WorkflowModel {
public:
    explicit EosWorkflowModel(CampaignConfig config) : cfg_(std::move(config)) {
        for (double T : cfg_.grid_T)
            for (double rho : cfg_.grid_rho) pending_.push_back({T, rho, 0});
    }

    std::string name() const override { return "eos-parameterization"; }

    Poll get_task() override {
        while (true) {
            if (done_) return Poll::idle();
            if (!pending_.empty()) {
                StatePoint sp = pending_.front();
                pending_.pop_front();
                ++issued_;
                return Poll::ready(make_task(sp));
            }
            if (recorded_ < issued_) return Poll::idle();  // awaiting results
            if (finish_iteration()) {
                done_ = true;
                return Poll::final();
            }
        }
    }

    void deploy(wms::TaskObject& task, int np, const std::string& mpi_launcher) override {
        task.deploy.np = np;
        task.deploy.cmd = {mpi_launcher, "-np", std::to_string(np), "./ms2",
                           "EOS_fluid.par"};
        task.env = "simulated";
    }

    void record_result(const wms::TaskObject& task) override {
        ++recorded_;
        if (task.returncode && *task.returncode != 0) {
            warnings_.push_back("task " + std::to_string(task.id) +
                                " returned nonzero status");
            return;
        }
        // the sampling oracle stands in for the simulation run; it writes
        // the result file, which is read back as the record of the run
        simulate_state_point(task, cfg_.truth_form, cfg_.truth_coefficients,
                             cfg_.sigma_rel, cfg_.seed, cfg_.output_root);
        auto d = read_result_file(cfg_.output_root / task.taskdir / "result.dat");
        results_.push_back(d);
        sampled_.push_back(d.state);
    }

    double duration(const wms::TaskObject& task, int np) const override {
        (void)task;
        return cfg_.cost_base + cfg_.cost_work / std::max(1, np);
    }

    const std::vector<IterationStats>& iterations() const { return iterations_; }
    bool converged() const { return converged_; }
    const std::vector<double>& final_coefficients() const { return final_coefficients_; }
    const std::vector<std::string>& warnings() const { return warnings_; }

private:
    wms::TaskObject make_task(const StatePoint& sp) {
        wms::TaskObject t;
        t.id = next_id_++;
        t.params = {{"T", sp.T}, {"rho", sp.rho}, {"step", double(sp.step)}};
        t.taskdir = "workflow/results/T_" + detail::fmt(sp.T) + "/rho_" +
                    detail::fmt(sp.rho) + "/step_" + std::to_string(sp.step);
        t.deploy.np = cfg_.np_per_task;
        return t;
    }

    // Fit over everything sampled so far, check convergence, and propose the
    // next round of state points. Returns true when the workflow is over.
    bool finish_iteration() {
        auto input = create_eos_input_from_results(results_);
        EosFit fit = fit_vle_curve(input, cfg_.fit_form);
        fit.iteration = ++iteration_;

        IterationStats stats;
        stats.iteration = fit.iteration;
        stats.coefficients = fit.coefficients;
        stats.rms_residual = fit.rms_residual;
        stats.T_c = fit.T_c;
        stats.rho_c = fit.rho_c;
        if (!prev_coefficients_.empty()) {
            double change = 0.0;
            for (std::size_t k = 0; k < fit.coefficients.size(); ++k)
                change = std::max(change,
                                  std::abs(fit.coefficients[k] - prev_coefficients_[k]) /
                                      (std::abs(fit.coefficients[k]) + 1e-12));
            stats.max_rel_change = change;
        }
        prev_coefficients_ = fit.coefficients;
        final_coefficients_ = fit.coefficients;

        bool converged = stats.max_rel_change < cfg_.epsilon ||
                         cfg_.epsilon == std::numeric_limits<double>::infinity();
        if (!converged && iteration_ < cfg_.max_iterations) {
            auto crit = refine_around_critical_point(fit, sampled_, iteration_,
                                                     cfg_.refine);
            auto crit_and_sampled = sampled_;
            crit_and_sampled.insert(crit_and_sampled.end(), crit.begin(), crit.end());
            auto vle = refine_around_vle(fit, cfg_.fit_form, crit_and_sampled,
                                         iteration_, cfg_.refine);
            for (const auto& w : vle.warnings) warnings_.push_back(w);
            stats.new_points = int(crit.size() + vle.points.size());
            for (const auto& p : crit) pending_.push_back(p);
            for (const auto& p : vle.points) pending_.push_back(p);
        }
        iterations_.push_back(stats);

        if (converged) {
            converged_ = true;
            return true;
        }
        return iteration_ >= cfg_.max_iterations;  // cap hit ends the run, flagged
    }

    CampaignConfig cfg_;
    std::deque<StatePoint> pending_;
    std::vector<StatePoint> sampled_;
    std::vector<MassieuDerivs> results_;
    std::vector<IterationStats> iterations_;
    std::vector<std::string> warnings_;
    std::vector<double> prev_coefficients_, final_coefficients_;
    long long next_id_ = 0;
    int issued_ = 0, recorded_ = 0, iteration_ = 0;
    bool converged_ = false, done_ = false;
};

// ---------------------------------------------------------------------------
// Campaign driver

inline CampaignReport run_eos_campaign(const CampaignConfig& config) {
    if (config.truth_coefficients.size() != config.truth_form.terms.size())
        throw Error("truth coefficients and form sizes differ");
    if (config.grid_T.empty() || config.grid_rho.empty())
        throw Error("initial state-point grid is empty");

    EosWorkflowModel model(config);
    perf::ExtrapProvider provider;
    wms::SchedulerConfig scfg;
    scfg.policy = config.policy;
    scfg.noise_sigma = config.scheduler_noise_sigma;
    scfg.seed = config.seed;

    CampaignReport report;
    report.run = wms::run_workflow(model, config.cluster,
                                   config.use_perf_provider ? &provider : nullptr,
                                   scfg);
    report.iterations = model.iterations();
    report.final_coefficients = model.final_coefficients();
    report.converged = model.converged();
    report.warnings = model.warnings();
    report.workflow_ttl = ttl::emit_ttl(ttl::workflow_to_triples(build_eos_workflow()));
    return report;
}

// ---------------------------------------------------------------------------
// Config-file application

inline void apply_key_values(const config::KeyValues& kv, CampaignConfig& cfg) {
    using namespace osmoflow::config;
    auto parse_form = [](const std::string& s) {
        // "1:1,2:2,1.5:3" -> exponent pairs (t, d)
        EosForm form;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ',')) {
            auto colon = item.find(':');
            if (colon == std::string::npos)
                throw ConfigError("malformed form term (want t:d): " + item);
            form.terms.push_back(
                {std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1))});
        }
        if (form.terms.empty()) throw ConfigError("empty form");
        return form;
    };

    for (const auto& [key, value] : kv) {
        if (key == "policy") cfg.policy = wms::policy_from_string(value);
        else if (key == "seed") cfg.seed = std::uint64_t(parse_long(value));
        else if (key == "sigma") cfg.scheduler_noise_sigma = parse_double(value);
        else if (key == "sigma_rel") cfg.sigma_rel = parse_double(value);
        else if (key == "epsilon") cfg.epsilon = parse_double(value);
        else if (key == "max_iterations") cfg.max_iterations = int(parse_long(value));
        else if (key == "cluster") cfg.cluster = wms::Cluster::parse_shape(value);
        else if (key == "np") cfg.np_per_task = int(parse_long(value));
        else if (key == "grid_T") cfg.grid_T = parse_double_list(value);
        else if (key == "grid_rho") cfg.grid_rho = parse_double_list(value);
        else if (key == "cost_base") cfg.cost_base = parse_double(value);
        else if (key == "cost_work") cfg.cost_work = parse_double(value);
        else if (key == "output") cfg.output_root = value;
        else if (key == "truth_terms") cfg.truth_form = parse_form(value);
        else if (key == "truth_coefficients")
            cfg.truth_coefficients = parse_double_list(value);
        else if (key == "fit_terms") cfg.fit_form = parse_form(value);
        else if (key == "use_perf_provider") cfg.use_perf_provider = parse_bool(value);
        else throw ConfigError("unknown configuration key: " + key);
    }
}

}  // namespace osmoflow::eos
