#pragma once
// Bridges a workflow graph onto the scheduler: each direct child graph of a
// concrete graph becomes one task, dependencies follow the causal edges
// among those children.

#include <map>
#include <vector>

#include "osmoflow/scheduler.hpp"
#include "osmoflow/workflow.hpp"

namespace osmoflow::wms {

inline DagModel dag_model_from_workflow(const wf::SimulationWorkflow& w,
                                        const wf::EntityId& graph_id, int np = 1,
                                        double cost = 1.0) {
    const auto& g = w.graph(graph_id);
    if (g.kind != wf::GraphKind::Concrete)
        throw wf::WrongKindError("task extraction requires a concrete graph");

    std::map<wf::EntityId, long long> index;
    std::vector<DagModel::Spec> specs;
    for (const auto& child : g.contained) {
        if (!w.is_graph(child)) continue;
        long long id = static_cast<long long>(specs.size());
        index[child] = id;
        TaskObject t;
        t.id = id;
        t.deploy.np = np;
        t.taskdir = "workflow/" + child;
        specs.push_back({t, {}, cost});
    }
    for (const auto& [a, b] : w.causal_edges()) {
        auto ia = index.find(a), ib = index.find(b);
        if (ia != index.end() && ib != index.end())
            specs[std::size_t(ib->second)].deps.push_back(ia->second);
    }
    return DagModel("workflow:" + graph_id, std::move(specs));
}

}  // namespace osmoflow::wms
