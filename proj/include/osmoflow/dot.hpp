#pragma once
// Graphviz export of workflow graphs in the LDT drawing convention:
// ellipse = section, triangle = resource (filled when interactive),
// box = concrete graph, bold box = virtual graph, hollow bullet = starting
// point, filled bullet = simulation outcome.

#include <set>
#include <string>

#include "osmoflow/workflow.hpp"

namespace osmoflow::wf {

namespace detail {

inline std::string q(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

inline void emit_cluster(const SimulationWorkflow& wf, const EntityId& gid,
                         const std::map<EntityId, EntityId>& template_of_virtual,
                         int depth, std::string& out) {
    const auto& g = wf.graph(gid);
    std::string pad(std::size_t(depth) * 2, ' ');
    out += pad + "subgraph " + q("cluster_" + gid) + " {\n";
    out += pad + "  label=" + q(gid) + ";\n";
    out += pad + (g.kind == GraphKind::Virtual ? "  style=bold;\n" : "  style=solid;\n");
    out += pad + "  " + q("anchor_" + gid) +
           " [shape=point, style=invis, width=0.01];\n";
    if (g.kind == GraphKind::Virtual) {
        auto it = template_of_virtual.find(gid);
        if (it != template_of_virtual.end())
            emit_cluster(wf, it->second, template_of_virtual, depth + 1, out);
    }
    for (const auto& r : g.contained) {
        if (wf.is_graph(r)) {
            emit_cluster(wf, r, template_of_virtual, depth + 1, out);
        } else if (wf.sections().count(r)) {
            out += pad + "  " + q(r) + " [shape=ellipse];\n";
        } else if (wf.resources().count(r)) {
            out += pad + "  " + q(r) + " [shape=triangle" +
                   (wf.resources().at(r).interactive ? ", style=filled" : "") + "];\n";
        }
    }
    out += pad + "}\n";
}

}  // namespace detail

inline std::string export_dot(const SimulationWorkflow& wf) {
    std::string out = "digraph " + detail::q(wf.id()) + " {\n";
    out += "  compound=true;\n";

    // virtual graphs draw their instantiating template inside their own box
    std::map<EntityId, EntityId> template_of_virtual;
    std::set<EntityId> templates;
    for (const auto& [gid, g] : wf.graphs())
        if (g.kind == GraphKind::Virtual && g.instantiated_by &&
            wf.is_graph(*g.instantiated_by)) {
            template_of_virtual[gid] = *g.instantiated_by;
            templates.insert(*g.instantiated_by);
        }

    // containment roots, templates excluded (they render inside their virtual)
    for (const auto& [gid, g] : wf.graphs())
        if (!wf.parent_of(gid) && !templates.count(gid))
            detail::emit_cluster(wf, gid, template_of_virtual, 1, out);

    // free-floating sections and resources, if any
    for (const auto& [sid, s] : wf.sections())
        if (!wf.parent_of(sid)) out += "  " + detail::q(sid) + " [shape=ellipse];\n";
    for (const auto& [rid, r] : wf.resources())
        if (!wf.parent_of(rid))
            out += "  " + detail::q(rid) + " [shape=triangle" +
                   (r.interactive ? ", style=filled" : "") + "];\n";

    auto endpoint = [&](const EntityId& id) {
        return wf.is_graph(id) ? detail::q("anchor_" + id) : detail::q(id);
    };
    auto clusterref = [&](const EntityId& id, const char* attr) -> std::string {
        return wf.is_graph(id) ? std::string(", ") + attr + "=" +
                                     detail::q("cluster_" + id)
                               : std::string();
    };

    for (const auto& [a, b] : wf.causal_edges())
        out += "  " + endpoint(a) + " -> " + endpoint(b) + " [color=green" +
               clusterref(a, "ltail") + clusterref(b, "lhead") + "];\n";

    std::set<std::pair<EntityId, EntityId>> coupled_once;
    for (const auto& [a, b] : wf.coupling_pairs()) {
        auto key = std::minmax(a, b);
        if (!coupled_once.insert({key.first, key.second}).second) continue;
        out += "  " + endpoint(key.first) + " -> " + endpoint(key.second) +
               " [color=green, dir=both" + clusterref(key.first, "ltail") +
               clusterref(key.second, "lhead") + "];\n";
    }

    for (const auto& [sec, g] : wf.applies_to_edges())
        out += "  " + endpoint(sec) + " -> " + endpoint(g) + " [color=blue" +
               clusterref(g, "lhead") + "];\n";

    for (const auto& [aid, acc] : wf.accesses()) {
        std::string label;
        auto add = [&label](const char* tag) {
            if (!label.empty()) label += ",";
            label += tag;
        };
        if (acc.flags.reads_initially) add("r_init");
        if (acc.flags.reads_parameters) add("r_param");
        if (acc.flags.writes_finally) add("w_fin");
        if (acc.flags.reads_during_execution) add("r_exec");
        if (acc.flags.writes_during_execution) add("w_exec");
        bool writes = acc.flags.writes_finally || acc.flags.writes_during_execution;
        bool reads = acc.flags.reads_initially || acc.flags.reads_parameters ||
                     acc.flags.reads_during_execution;
        std::string from = writes ? acc.access_point : acc.resource;
        std::string to = writes ? acc.resource : acc.access_point;
        out += "  " + detail::q(from) + " -> " + detail::q(to) +
               " [color=gray, label=" + detail::q(label) +
               (writes && reads ? ", dir=both" : "") + "];\n";
    }

    // bullets: hollow for starting points, filled for outcomes
    for (const auto& [gid, g] : wf.graphs()) {
        int k = 0;
        for (const auto& p : g.starting_points) {
            std::string bullet = "start_" + gid + "_" + std::to_string(k++);
            out += "  " + detail::q(bullet) +
                   " [shape=circle, label=\"\", width=0.12];\n";
            out += "  " + detail::q(bullet) + " -> " + endpoint(p) +
                   " [color=green" + clusterref(p, "lhead") + "];\n";
        }
    }
    int k = 0;
    for (const auto& o : wf.simulation_outcome()) {
        std::string bullet = "outcome_" + std::to_string(k++);
        out += "  " + detail::q(bullet) +
               " [shape=circle, style=filled, label=\"\", width=0.12];\n";
        out += "  " + endpoint(o) + " -> " + detail::q(bullet) + " [color=green" +
               clusterref(o, "ltail") + "];\n";
    }

    out += "}\n";
    return out;
}

}  // namespace osmoflow::wf
