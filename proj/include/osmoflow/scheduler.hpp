#pragma once
// Simulated workflow management: a deterministic discrete-event loop that
// pulls tasks from a workflow model, schedules them onto a simulated
// cluster (FIFO or performance-model-guided LPT), simulates execution
// durations, acknowledges results back to the model, and feeds runtime
// observations to a performance provider.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "osmoflow/errors.hpp"
#include "osmoflow/task.hpp"

namespace osmoflow::wms {

struct DeadlockDetectedError : Error { using Error::Error; };
struct AllocationImpossibleError : Error { using Error::Error; };

// ---------------------------------------------------------------------------
// Cluster

struct ClusterNode {
    std::string id;
    int cores = 1;
    friend bool operator==(const ClusterNode&, const ClusterNode&) = default;
};

// Node inventory plus free/busy state over simulated time. A node is held
// by at most one task at a time.
struct Cluster {
    std::vector<ClusterNode> nodes;
    std::vector<bool> busy;  // sized lazily to nodes

    static Cluster uniform(int node_count, int cores_per_node) {
        Cluster c;
        for (int i = 0; i < node_count; ++i)
            c.nodes.push_back({"n" + std::to_string(i), cores_per_node});
        c.busy.assign(c.nodes.size(), false);
        return c;
    }

    // "4x8" -> 4 nodes with 8 cores each
    static Cluster parse_shape(const std::string& shape) {
        auto x = shape.find('x');
        if (x == std::string::npos)
            throw Error("cluster shape must look like <nodes>x<cores>: " + shape);
        int n = std::stoi(shape.substr(0, x));
        int c = std::stoi(shape.substr(x + 1));
        if (n < 1 || c < 1) throw Error("cluster shape must be positive: " + shape);
        return uniform(n, c);
    }

    int total_cores() const {
        int total = 0;
        for (const auto& n : nodes) total += n.cores;
        return total;
    }

    void reset() { busy.assign(nodes.size(), false); }

    // Whole free nodes, first fit in inventory order, until np cores covered.
    std::optional<std::vector<std::string>> try_allocate(int np) {
        if (busy.size() != nodes.size()) busy.assign(nodes.size(), false);
        std::vector<std::size_t> picked;
        int covered = 0;
        for (std::size_t i = 0; i < nodes.size() && covered < np; ++i) {
            if (busy[i]) continue;
            picked.push_back(i);
            covered += nodes[i].cores;
        }
        if (covered < np) return std::nullopt;
        std::vector<std::string> ids;
        for (auto i : picked) {
            busy[i] = true;
            ids.push_back(nodes[i].id);
        }
        return ids;
    }

    void release(const std::vector<std::string>& ids) {
        for (const auto& id : ids)
            for (std::size_t i = 0; i < nodes.size(); ++i)
                if (nodes[i].id == id) busy[i] = false;
    }
};

// ---------------------------------------------------------------------------
// Interfaces

class PerfProvider {
public:
    virtual ~PerfProvider() = default;
    virtual void observe(const std::map<std::string, double>& params, int resources,
                         double runtime) = 0;
    virtual std::optional<double> predict(const std::map<std::string, double>& params,
                                          int resources) const = 0;
};

class WorkflowModel {
public:
    enum class PollStatus { Task, Idle, Final };

    struct Poll {
        PollStatus status = PollStatus::Idle;
        std::optional<TaskObject> task;

        static Poll ready(TaskObject t) {
            return {PollStatus::Task, std::move(t)};
        }
        static Poll idle() { return {PollStatus::Idle, std::nullopt}; }
        static Poll final() { return {PollStatus::Final, std::nullopt}; }
    };

    virtual ~WorkflowModel() = default;
    virtual std::string name() const = 0;
    // Hands out ready tasks one at a time; Idle while waiting on results,
    // Final exactly once when the workflow is complete.
    virtual Poll get_task() = 0;
    // Fills in command line and environment for the assigned resources.
    virtual void deploy(TaskObject& task, int np, const std::string& mpi_launcher) = 0;
    // The ACK: called exactly once per completed task.
    virtual void record_result(const TaskObject& task) = 0;
    // Simulated execution cost of a task on np cores, in seconds.
    virtual double duration(const TaskObject& task, int np) const = 0;
};

// ---------------------------------------------------------------------------
// Scheduling

enum class Policy { Fifo, Lpt };

inline Policy policy_from_string(const std::string& s) {
    if (s == "fifo") return Policy::Fifo;
    if (s == "lpt") return Policy::Lpt;
    throw Error("unknown policy: " + s + " (expected fifo or lpt)");
}

struct SchedulerConfig {
    Policy policy = Policy::Fifo;
    double noise_sigma = 0.05;      // lognormal execution-time noise
    std::uint64_t seed = 1;
    std::string mpi_launcher = "mpirun";
    std::string epoch = "2019-08-13T15:49:37.938883";  // wall-clock origin
    int retry_limit = 0;            // automatic retries on nonzero returncode
    std::set<long long> inject_failure_ids;  // tasks forced to returncode 1
};

struct Assignment {
    TaskObject task;
    std::vector<std::string> nodes;
    std::optional<double> predicted;
};

// Orders ready tasks (LPT by predicted runtime when a provider is given,
// FIFO by id otherwise) and greedily assigns whatever fits on free nodes.
// Unassignable tasks stay queued.
inline std::vector<Assignment> schedule_next(const std::vector<TaskObject>& ready,
                                             Cluster& cluster,
                                             const PerfProvider* provider,
                                             Policy policy = Policy::Lpt) {
    struct Entry {
        const TaskObject* task;
        std::optional<double> predicted;
    };
    std::vector<Entry> order;
    order.reserve(ready.size());
    for (const auto& t : ready) {
        std::optional<double> p;
        if (provider && policy == Policy::Lpt)
            p = provider->predict(t.params, t.deploy.np);
        order.push_back({&t, p});
    }
    std::stable_sort(order.begin(), order.end(), [&](const Entry& a, const Entry& b) {
        if (provider && policy == Policy::Lpt) {
            double pa = a.predicted.value_or(0.0), pb = b.predicted.value_or(0.0);
            if (pa != pb) return pa > pb;  // longest predicted first
        }
        return a.task->id < b.task->id;
    });

    std::vector<Assignment> out;
    for (const auto& e : order)
        if (auto nodes = cluster.try_allocate(e.task->deploy.np))
            out.push_back({*e.task, std::move(*nodes), e.predicted});
    return out;
}

// ---------------------------------------------------------------------------
// Simulated wall clock

namespace detail {

struct Epoch {
    std::time_t seconds = 0;
    long micros = 0;
};

inline Epoch parse_epoch(const std::string& iso) {
    std::tm tm{};
    int y = 0, mo = 0, d = 0, h = 0, mi = 0;
    double sec = 0.0;
    if (std::sscanf(iso.c_str(), "%d-%d-%dT%d:%d:%lf", &y, &mo, &d, &h, &mi, &sec) != 6)
        throw Error("malformed ISO-8601 epoch: " + iso);
    tm.tm_year = y - 1900;
    tm.tm_mon = mo - 1;
    tm.tm_mday = d;
    tm.tm_hour = h;
    tm.tm_min = mi;
    tm.tm_sec = static_cast<int>(sec);
    Epoch e;
    e.seconds = timegm(&tm);
    e.micros = std::lround((sec - static_cast<int>(sec)) * 1e6);
    return e;
}

inline std::string format_time(const Epoch& epoch, double sim_seconds) {
    long long total_micros =
        static_cast<long long>(epoch.micros) + std::llround(sim_seconds * 1e6);
    std::time_t t = epoch.seconds + total_micros / 1000000;
    long micros = total_micros % 1000000;
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
    char out[48];
    std::snprintf(out, sizeof out, "%s.%06ld", buf, micros);
    return out;
}

// Deterministic per-task lognormal noise, independent of scheduling order.
inline double noise_factor(std::uint64_t seed, long long task_id, double sigma) {
    if (sigma == 0.0) return 1.0;
    std::uint64_t s = seed * 0x9E3779B97F4A7C15ULL ^
                      (static_cast<std::uint64_t>(task_id) + 1) * 0xBF58476D1CE4E5B9ULL;
    auto next = [&s]() {
        s += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    };
    double u1 = (next() >> 11) * 0x1p-53 + 0x1p-54;  // (0, 1)
    double u2 = (next() >> 11) * 0x1p-53;
    double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    return std::exp(sigma * z);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Run report

struct TaskRecord {
    TaskObject task;
    double start = 0.0;  // simulated seconds from run origin
    double end = 0.0;
    std::optional<double> predicted;
};

struct RunReport {
    std::string model_name;
    std::string policy;
    std::uint64_t seed = 0;
    std::vector<TaskRecord> records;
    double makespan = 0.0;
    double idle_core_time = 0.0;
    std::vector<double> prediction_errors;  // relative, in completion order

    // One JSON line per task record.
    std::string to_jsonl() const;
    nlohmann::ordered_json summary() const {
        nlohmann::ordered_json j;
        j["model"] = model_name;
        j["policy"] = policy;
        j["seed"] = seed;
        j["tasks"] = records.size();
        j["makespan"] = makespan;
        j["idle_core_time"] = idle_core_time;
        j["prediction_errors"] = prediction_errors;
        return j;
    }
};

// ---------------------------------------------------------------------------
// Event loop

inline RunReport run_workflow(WorkflowModel& model, const Cluster& cluster_spec,
                              PerfProvider* provider, const SchedulerConfig& config) {
    if (cluster_spec.nodes.empty())
        throw AllocationImpossibleError("cluster has no nodes");

    Cluster cluster = cluster_spec;
    cluster.reset();
    const detail::Epoch epoch = detail::parse_epoch(config.epoch);

    struct Running {
        double start;
        double end;
        double duration;
        TaskObject task;
        std::vector<std::string> nodes;
        std::optional<double> predicted;
    };

    RunReport report;
    report.model_name = model.name();
    report.policy = config.policy == Policy::Fifo ? "fifo" : "lpt";
    report.seed = config.seed;

    std::vector<TaskObject> queue;
    std::vector<Running> running;
    std::map<long long, int> retries;
    bool final_seen = false;
    double now = 0.0;

    auto poll_all = [&] {
        while (!final_seen) {
            auto p = model.get_task();
            if (p.status == WorkflowModel::PollStatus::Task) {
                if (!p.task) throw Error("model returned an empty task");
                queue.push_back(std::move(*p.task));
            } else {
                final_seen = p.status == WorkflowModel::PollStatus::Final;
                break;
            }
        }
    };

    poll_all();
    while (true) {
        auto assignments =
            schedule_next(queue, cluster, provider, config.policy);
        for (const auto& a : assignments) {
            queue.erase(std::remove_if(queue.begin(), queue.end(),
                                       [&](const TaskObject& t) {
                                           return t.id == a.task.id;
                                       }),
                        queue.end());
            TaskObject task = a.task;
            model.deploy(task, task.deploy.np, config.mpi_launcher);
            task.deploy.nodes = a.nodes;
            task.starttime = detail::format_time(epoch, now);
            double dur = model.duration(task, task.deploy.np) *
                         detail::noise_factor(config.seed, task.id, config.noise_sigma);
            running.push_back({now, now + dur, dur, std::move(task), a.nodes,
                               a.predicted});
        }

        if (running.empty()) {
            if (!queue.empty())
                throw AllocationImpossibleError(
                    "task " + std::to_string(queue.front().id) + " requests " +
                    std::to_string(queue.front().deploy.np) +
                    " cores, beyond the idle cluster's " +
                    std::to_string(cluster.total_cores()));
            if (final_seen) break;
            std::size_t before = queue.size();
            poll_all();
            if (queue.size() == before && !final_seen)
                throw DeadlockDetectedError(
                    "no ready task, none running, and the workflow is not final");
            continue;
        }

        double t_next = running.front().end;
        for (const auto& r : running) t_next = std::min(t_next, r.end);

        int used = 0;
        for (const auto& r : running) used += r.task.deploy.np;
        report.idle_core_time += (cluster.total_cores() - used) * (t_next - now);
        now = t_next;

        std::vector<Running> done;
        for (auto it = running.begin(); it != running.end();) {
            if (it->end == t_next) {
                done.push_back(std::move(*it));
                it = running.erase(it);
            } else {
                ++it;
            }
        }
        std::sort(done.begin(), done.end(),
                  [](const Running& a, const Running& b) { return a.task.id < b.task.id; });
        for (auto& r : done) {
            cluster.release(r.nodes);
            r.task.endtime = detail::format_time(epoch, now);
            bool fail = config.inject_failure_ids.count(r.task.id) != 0 &&
                        retries[r.task.id] == 0;
            r.task.returncode = fail ? 1 : 0;
            model.record_result(r.task);  // the ACK
            if (provider)
                provider->observe(r.task.params, r.task.deploy.np, r.duration);
            if (r.predicted)
                report.prediction_errors.push_back(
                    std::abs(*r.predicted - r.duration) / r.duration);
            report.records.push_back({r.task, r.start, r.end, r.predicted});
            if (*r.task.returncode != 0 && retries[r.task.id] < config.retry_limit) {
                ++retries[r.task.id];
                TaskObject again = r.task;
                again.starttime.reset();
                again.endtime.reset();
                again.returncode.reset();
                again.deploy.nodes.clear();
                queue.push_back(std::move(again));
            }
        }
        poll_all();
    }

    if (!report.records.empty()) {
        double first = report.records.front().start, last = 0.0;
        for (const auto& r : report.records) {
            first = std::min(first, r.start);
            last = std::max(last, r.end);
        }
        report.makespan = last - first;
    }
    return report;
}

// ---------------------------------------------------------------------------
// A workflow model driven by an explicit task DAG: a task becomes ready
// once all its predecessors have been acknowledged.

class DagModel : public WorkflowModel {
public:
    struct Spec {
        TaskObject task;
        std::vector<long long> deps;
        double cost = 1.0;
    };

    DagModel(std::string name, std::vector<Spec> specs)
        : name_(std::move(name)), specs_(std::move(specs)) {
        for (const auto& s : specs_) cost_[s.task.id] = s.cost;
    }

    std::string name() const override { return name_; }

    Poll get_task() override {
        for (auto& s : specs_) {
            if (issued_.count(s.task.id)) continue;
            bool ready = true;
            for (long long d : s.deps)
                if (!done_.count(d)) ready = false;
            if (ready) {
                issued_.insert(s.task.id);
                return Poll::ready(s.task);
            }
        }
        if (done_.size() == specs_.size()) {
            if (final_returned_) return Poll::idle();
            final_returned_ = true;
            return Poll::final();
        }
        return Poll::idle();
    }

    void deploy(TaskObject& task, int np, const std::string& mpi_launcher) override {
        task.deploy.cmd = {mpi_launcher, "-np", std::to_string(np), "./task"};
        task.env = "simulated";
    }

    void record_result(const TaskObject& task) override {
        done_.insert(task.id);
        acks_.push_back(task.id);
        results_.push_back(task);
    }

    double duration(const TaskObject& task, int) const override {
        auto it = cost_.find(task.id);
        return it == cost_.end() ? 1.0 : it->second;
    }

    const std::vector<long long>& acks() const { return acks_; }
    const std::vector<TaskObject>& results() const { return results_; }

private:
    std::string name_;
    std::vector<Spec> specs_;
    std::map<long long, double> cost_;
    std::set<long long> issued_, done_;
    std::vector<long long> acks_;
    std::vector<TaskObject> results_;
    bool final_returned_ = false;
};

inline std::string RunReport::to_jsonl() const {
    std::string out;
    for (const auto& r : records) {
        nlohmann::ordered_json j;
        j["ID"] = r.task.id;
        j["params"] = r.task.params;
        j["nodes"] = r.task.deploy.nodes;
        j["start"] = r.start;
        j["end"] = r.end;
        j["starttime"] = r.task.starttime ? nlohmann::ordered_json(*r.task.starttime)
                                          : nlohmann::ordered_json(nullptr);
        j["endtime"] = r.task.endtime ? nlohmann::ordered_json(*r.task.endtime)
                                      : nlohmann::ordered_json(nullptr);
        j["returncode"] = r.task.returncode ? nlohmann::ordered_json(*r.task.returncode)
                                            : nlohmann::ordered_json(nullptr);
        j["predicted"] = r.predicted ? nlohmann::ordered_json(*r.predicted)
                                     : nlohmann::ordered_json(nullptr);
        out += j.dump();
        out += '\n';
    }
    return out;
}

}  // namespace osmoflow::wms
