#pragma once
// Empirical performance modeling: single-term-per-variable runtime
// hypotheses t = c0 + c1 * prod_v v^i * log2(v)^j with rational exponents
// drawn from a fixed candidate set. Coefficients come from linear least
// squares weighted by 1/t^2, matching the relative leave-one-out
// cross-validation error that selects the winning hypothesis (runtime
// noise is multiplicative, so relative residuals are the ones that are
// homoscedastic).

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "osmoflow/errors.hpp"
#include "osmoflow/scheduler.hpp"

namespace osmoflow::perf {

struct InsufficientDataError : Error { using Error::Error; };
struct DegenerateDesignError : Error { using Error::Error; };
struct MissingVariableError : Error { using Error::Error; };

// Resource counts enter the model as the reserved variable "N".
inline const std::string kResourceVariable = "N";

struct Observation {
    std::map<std::string, double> params;
    int resources = 1;
    double runtime = 0.0;

    friend bool operator==(const Observation&, const Observation&) = default;
};

struct Frac {
    int num = 0;
    int den = 1;

    double value() const { return double(num) / double(den); }

    friend bool operator==(const Frac& a, const Frac& b) {
        return a.num * b.den == b.num * a.den;
    }
    friend bool operator<(const Frac& a, const Frac& b) {
        return a.num * b.den < b.num * a.den;
    }
};

struct VarExponent {
    Frac i;      // power of the variable
    int j = 0;   // power of log2(variable)

    friend bool operator==(const VarExponent&, const VarExponent&) = default;
    friend bool operator<(const VarExponent& a, const VarExponent& b) {
        if (a.i < b.i) return true;
        if (b.i < a.i) return false;
        return a.j < b.j;
    }
};

struct Term {
    double coefficient = 0.0;
    std::vector<VarExponent> exponents;  // aligned with PerfModel::variables

    bool constant() const {
        for (const auto& e : exponents)
            if (e.i.num != 0 || e.j != 0) return false;
        return true;
    }
};

struct FitStats {
    double rss = 0.0;
    double cv_error = 0.0;
    int n_obs = 0;
};

struct FitConfig {
    std::vector<Frac> exponents = {{0, 1}, {1, 4}, {1, 3}, {1, 2}, {2, 3}, {3, 4},
                                   {1, 1}, {4, 3}, {3, 2}, {2, 1}, {5, 2}, {3, 1}};
    std::vector<int> log_exponents = {0, 1, 2};
    std::optional<std::vector<std::string>> variables;  // default: all varied ones
    double prediction_floor = 1e-9;
};

struct PerfModel {
    std::vector<std::string> variables;
    std::vector<Term> terms;  // constant term first, then the product term
    FitStats stats;
    FitConfig config;
    std::vector<Observation> observations;  // deduplicated fit inputs
};

// ---------------------------------------------------------------------------
// Fitting

namespace detail {

inline double term_factor(const std::vector<double>& values,
                          const std::vector<VarExponent>& exps) {
    double x = 1.0;
    for (std::size_t k = 0; k < exps.size(); ++k) {
        const auto& e = exps[k];
        if (e.i.num != 0) x *= std::pow(values[k], e.i.value());
        if (e.j != 0) x *= std::pow(std::log2(values[k]), double(e.j));
    }
    return x;
}

struct LinearFit {
    double a = 0.0;  // intercept
    double b = 0.0;  // slope
};

// Centered weighted least squares for y = a + b x.
inline std::optional<LinearFit> solve(const std::vector<double>& x,
                                      const std::vector<double>& y,
                                      const std::vector<double>& w) {
    const std::size_t n = x.size();
    double sw = 0, xm = 0, ym = 0;
    for (std::size_t k = 0; k < n; ++k) {
        sw += w[k];
        xm += w[k] * x[k];
        ym += w[k] * y[k];
    }
    xm /= sw;
    ym /= sw;
    double sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < n; ++k) {
        sxx += w[k] * (x[k] - xm) * (x[k] - xm);
        sxy += w[k] * (x[k] - xm) * (y[k] - ym);
    }
    double scale = 0;
    for (std::size_t k = 0; k < n; ++k) scale = std::max(scale, w[k] * x[k] * x[k]);
    if (!(sxx > scale * 1e-24))  // effectively constant column
        return std::nullopt;
    LinearFit f;
    f.b = sxy / sxx;
    f.a = ym - f.b * xm;
    return f;
}

inline double weighted_mean(const std::vector<double>& y, const std::vector<double>& w) {
    double sw = 0, sy = 0;
    for (std::size_t k = 0; k < y.size(); ++k) {
        sw += w[k];
        sy += w[k] * y[k];
    }
    return sy / sw;
}

struct Hypothesis {
    std::vector<VarExponent> exps;

    bool all_zero() const {
        for (const auto& e : exps)
            if (e.i.num != 0 || e.j != 0) return false;
        return true;
    }
};

}  // namespace detail

inline PerfModel fit(const std::vector<Observation>& raw, const FitConfig& config = {}) {
    // duplicates carry no information for a deterministic refit
    std::vector<Observation> obs;
    for (const auto& o : raw)
        if (std::find(obs.begin(), obs.end(), o) == obs.end()) obs.push_back(o);

    const std::size_t n = obs.size();
    // one coefficient pair plus an intercept needs headroom
    if (n < 4)
        throw InsufficientDataError("need at least 4 distinct observations, have " +
                                    std::to_string(n));

    // collect candidate variables and their sampled values
    std::set<std::string> names;
    for (const auto& o : obs) {
        for (const auto& [k, v] : o.params) names.insert(k);
        names.insert(kResourceVariable);
    }
    auto value_of = [](const Observation& o, const std::string& name) {
        if (name == kResourceVariable) return double(o.resources);
        auto it = o.params.find(name);
        if (it == o.params.end())
            throw MissingVariableError("observation lacks variable " + name);
        return it->second;
    };

    std::vector<std::string> variables;
    if (config.variables) {
        variables = *config.variables;
        for (const auto& v : variables) {
            std::set<double> distinct;
            for (const auto& o : obs) distinct.insert(value_of(o, v));
            if (distinct.size() < 2)
                throw DegenerateDesignError("variable " + v +
                                            " has fewer than 2 distinct values");
        }
    } else {
        for (const auto& name : names) {
            std::set<double> distinct;
            for (const auto& o : obs) distinct.insert(value_of(o, name));
            if (distinct.size() >= 2) variables.push_back(name);
        }
    }

    // per-variable admissible exponents; log terms only for samples >= 1
    std::vector<std::vector<VarExponent>> per_var;
    for (const auto& v : variables) {
        double lo = 1e300;
        for (const auto& o : obs) lo = std::min(lo, value_of(o, v));
        std::vector<VarExponent> exps;
        for (const auto& i : config.exponents)
            for (int j : config.log_exponents) {
                if (j != 0 && lo < 1.0) continue;
                if (i.num != 0 && lo <= 0.0) continue;
                exps.push_back({i, j});
            }
        std::sort(exps.begin(), exps.end());
        per_var.push_back(std::move(exps));
    }

    // value matrix: observation x variable
    std::vector<std::vector<double>> values(n);
    std::vector<double> y(n), w(n);
    for (std::size_t k = 0; k < n; ++k) {
        for (const auto& v : variables) values[k].push_back(value_of(obs[k], v));
        y[k] = obs[k].runtime;
        if (!(y[k] > 0.0))
            throw DegenerateDesignError("observed runtimes must be positive");
        w[k] = 1.0 / (y[k] * y[k]);
    }

    // enumerate hypotheses in ascending exponent-tuple order (deterministic
    // tie-break: the first hypothesis at a given cv error wins)
    std::vector<detail::Hypothesis> hypotheses;
    if (variables.empty()) {
        hypotheses.push_back({});
    } else {
        std::vector<std::size_t> idx(variables.size(), 0);
        bool done = false;
        while (!done) {
            detail::Hypothesis h;
            for (std::size_t k = 0; k < variables.size(); ++k)
                h.exps.push_back(per_var[k][idx[k]]);
            hypotheses.push_back(std::move(h));
            done = true;
            for (std::size_t k = variables.size(); k-- > 0;) {
                if (++idx[k] < per_var[k].size()) {
                    done = false;
                    break;
                }
                idx[k] = 0;
            }
        }
    }

    struct Best {
        bool found = false;
        detail::Hypothesis hyp;
        double c0 = 0, c1 = 0;
        double cv = 0, rss = 0;
        bool constant = false;
    } best;

    for (const auto& h : hypotheses) {
        double cv_sq = 0, rss = 0;
        double c0 = 0, c1 = 0;
        bool constant = h.all_zero() || variables.empty();
        if (constant) {
            c0 = detail::weighted_mean(y, w);
            for (std::size_t k = 0; k < n; ++k) {
                std::vector<double> ys, ws;
                for (std::size_t m = 0; m < n; ++m) {
                    if (m == k) continue;
                    ys.push_back(y[m]);
                    ws.push_back(w[m]);
                }
                double loo = detail::weighted_mean(ys, ws);
                double rel = (loo - y[k]) / y[k];
                cv_sq += rel * rel;
                rss += (c0 - y[k]) * (c0 - y[k]);
            }
        } else {
            std::vector<double> x(n);
            bool finite = true;
            for (std::size_t k = 0; k < n; ++k) {
                x[k] = detail::term_factor(values[k], h.exps);
                if (!std::isfinite(x[k])) finite = false;
            }
            if (!finite) continue;
            auto full = detail::solve(x, y, w);
            if (!full) continue;
            c0 = full->a;
            c1 = full->b;
            bool loo_ok = true;
            for (std::size_t k = 0; k < n && loo_ok; ++k) {
                std::vector<double> xs, ys, ws;
                for (std::size_t m = 0; m < n; ++m) {
                    if (m == k) continue;
                    xs.push_back(x[m]);
                    ys.push_back(y[m]);
                    ws.push_back(w[m]);
                }
                auto f = detail::solve(xs, ys, ws);
                if (!f) {
                    loo_ok = false;
                    break;
                }
                double pred = f->a + f->b * x[k];
                double rel = (pred - y[k]) / y[k];
                cv_sq += rel * rel;
            }
            if (!loo_ok) continue;
            for (std::size_t k = 0; k < n; ++k) {
                double r = c0 + c1 * x[k] - y[k];
                rss += r * r;
            }
        }
        double cv = std::sqrt(cv_sq / double(n));
        if (!best.found || cv < best.cv * (1.0 - 1e-9) - 1e-15) {
            best = {true, h, c0, c1, cv, rss, constant};
        }
    }

    if (!best.found)
        throw DegenerateDesignError("no hypothesis admits a non-singular fit");

    PerfModel model;
    model.variables = variables;
    std::vector<VarExponent> zero(variables.size());
    model.terms.push_back({best.c0, zero});
    if (!best.constant) model.terms.push_back({best.c1, best.hyp.exps});
    model.stats = {best.rss, best.cv, int(n)};
    model.config = config;
    model.observations = std::move(obs);
    return model;
}

inline double predict(const PerfModel& model, const std::map<std::string, double>& params,
                      int resources) {
    std::vector<double> values;
    for (const auto& v : model.variables) {
        if (v == kResourceVariable) {
            values.push_back(double(resources));
        } else {
            auto it = params.find(v);
            if (it == params.end())
                throw MissingVariableError("prediction query lacks variable " + v);
            values.push_back(it->second);
        }
    }
    double t = 0;
    for (const auto& term : model.terms)
        t += term.coefficient * detail::term_factor(values, term.exponents);
    return std::max(t, model.config.prediction_floor);
}

// Batch refit over the accumulated observation set.
inline PerfModel update(const PerfModel& model, const Observation& obs) {
    std::vector<Observation> all = model.observations;
    all.push_back(obs);
    return fit(all, model.config);
}

// ---------------------------------------------------------------------------
// JSON import/export

inline nlohmann::ordered_json to_json(const PerfModel& model) {
    nlohmann::ordered_json j;
    j["variables"] = model.variables;
    j["terms"] = nlohmann::ordered_json::array();
    for (const auto& t : model.terms) {
        nlohmann::ordered_json jt;
        jt["coefficient"] = t.coefficient;
        jt["exponents"] = nlohmann::ordered_json::array();
        for (const auto& e : t.exponents)
            jt["exponents"].push_back({{"num", e.i.num}, {"den", e.i.den}, {"log", e.j}});
        j["terms"].push_back(std::move(jt));
    }
    j["stats"] = {{"rss", model.stats.rss},
                  {"cv_error", model.stats.cv_error},
                  {"n_obs", model.stats.n_obs}};
    j["observations"] = nlohmann::ordered_json::array();
    for (const auto& o : model.observations)
        j["observations"].push_back(
            {{"params", o.params}, {"N", o.resources}, {"runtime", o.runtime}});
    return j;
}

inline PerfModel model_from_json(const nlohmann::json& j) {
    PerfModel model;
    model.variables = j.at("variables").get<std::vector<std::string>>();
    for (const auto& jt : j.at("terms")) {
        Term t;
        t.coefficient = jt.at("coefficient").get<double>();
        for (const auto& je : jt.at("exponents"))
            t.exponents.push_back({{je.at("num").get<int>(), je.at("den").get<int>()},
                                   je.at("log").get<int>()});
        model.terms.push_back(std::move(t));
    }
    model.stats.rss = j.at("stats").at("rss").get<double>();
    model.stats.cv_error = j.at("stats").at("cv_error").get<double>();
    model.stats.n_obs = j.at("stats").at("n_obs").get<int>();
    if (j.contains("observations"))
        for (const auto& jo : j.at("observations")) {
            Observation o;
            o.params = jo.at("params").get<std::map<std::string, double>>();
            o.resources = jo.at("N").get<int>();
            o.runtime = jo.at("runtime").get<double>();
            model.observations.push_back(std::move(o));
        }
    return model;
}

// ---------------------------------------------------------------------------
// Scheduler bridge: accumulates runtime observations and answers prediction
// queries from the current refit.

class ExtrapProvider : public wms::PerfProvider {
public:
    explicit ExtrapProvider(FitConfig config = {}, std::size_t min_observations = 6)
        : config_(std::move(config)), min_observations_(min_observations) {}

    void observe(const std::map<std::string, double>& params, int resources,
                 double runtime) override {
        observations_.push_back({params, resources, runtime});
        dirty_ = true;
    }

    std::optional<double> predict(const std::map<std::string, double>& params,
                                  int resources) const override {
        refit();
        if (!model_) return std::nullopt;
        try {
            return perf::predict(*model_, params, resources);
        } catch (const MissingVariableError&) {
            return std::nullopt;
        }
    }

    const std::optional<PerfModel>& model() const {
        refit();
        return model_;
    }
    const std::vector<Observation>& observations() const { return observations_; }

private:
    void refit() const {
        if (!dirty_ || observations_.size() < min_observations_) return;
        dirty_ = false;
        try {
            model_ = fit(observations_, config_);
        } catch (const Error&) {
            model_.reset();
        }
    }

    FitConfig config_;
    std::size_t min_observations_;
    std::vector<Observation> observations_;
    mutable std::optional<PerfModel> model_;
    mutable bool dirty_ = false;
};

}  // namespace osmoflow::perf
