#pragma once
// Workflow-graph data model and validator: sections with their aspects,
// logical resources and accesses, causal/coupling edges between graphs,
// virtual/concrete graph instantiation, execution-order extraction, and
// processor classification.

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "osmoflow/errors.hpp"
#include "osmoflow/ontology.hpp"

namespace osmoflow::wf {

using onto::ClassId;
using onto::VocabularyStore;

using EntityId = std::string;

// ---------------------------------------------------------------------------
// Errors

struct InvalidAspectForKindError : Error { using Error::Error; };
struct UnknownRefError : Error { using Error::Error; };
struct NodeCardinalityViolationError : Error { using Error::Error; };
struct SelfEdgeError : Error { using Error::Error; };
struct CyclicDependencyError : Error { using Error::Error; };
struct WrongKindError : Error { using Error::Error; };
struct NotVirtualError : Error { using Error::Error; };
struct ZeroCountError : Error { using Error::Error; };
struct DuplicateIdError : Error { using Error::Error; };

// ---------------------------------------------------------------------------
// Entities

enum class SectionKind { UseCase, MaterialsModel, Solver, Processor };

inline ClassId section_class(SectionKind k) {
    switch (k) {
        case SectionKind::UseCase: return onto::osmo("use_case");
        case SectionKind::MaterialsModel: return onto::osmo("materials_model");
        case SectionKind::Solver: return onto::osmo("solver");
        case SectionKind::Processor: return onto::osmo("processor");
    }
    return {};
}

struct Aspect {
    ClassId aspect_class;
    std::optional<std::string> text;
    std::optional<ClassId> object;         // content drawn from the vocabulary
    std::optional<std::string> external;   // opaque external reference (IRI)

    friend bool operator==(const Aspect&, const Aspect&) = default;
};

struct Quantity {
    double value = 0.0;
    std::string unit;
    friend bool operator==(const Quantity&, const Quantity&) = default;
};

using LogicalValue = std::variant<double, std::string, std::vector<double>, Quantity>;

struct LogicalVariable {
    EntityId id;
    std::string name;
    std::optional<LogicalValue> value;
    friend bool operator==(const LogicalVariable&, const LogicalVariable&) = default;
};

struct Section {
    EntityId id;
    SectionKind kind = SectionKind::UseCase;
    std::vector<Aspect> aspects;
    std::vector<EntityId> internal_variables;
    std::vector<EntityId> logical_io;
    friend bool operator==(const Section&, const Section&) = default;
};

struct LogicalResource {
    EntityId id;
    bool interactive = false;
    std::vector<EntityId> stored_variables;
    friend bool operator==(const LogicalResource&, const LogicalResource&) = default;
};

struct AccessFlags {
    bool reads_initially = false;
    bool reads_parameters = false;
    bool writes_finally = false;
    bool reads_during_execution = false;
    bool writes_during_execution = false;

    bool any() const {
        return reads_initially || reads_parameters || writes_finally ||
               reads_during_execution || writes_during_execution;
    }
    friend bool operator==(const AccessFlags&, const AccessFlags&) = default;
};

struct LogicalAccess {
    EntityId id;
    EntityId access_point;  // section
    EntityId resource;      // logical resource
    std::vector<EntityId> carried_variables;
    AccessFlags flags;
    friend bool operator==(const LogicalAccess&, const LogicalAccess&) = default;
};

enum class GraphKind { Concrete, Virtual };
enum class Multiplicity { ConcurrentInstances, IterativeLoop };

struct WorkflowGraph {
    EntityId id;
    GraphKind kind = GraphKind::Concrete;
    bool declared_node = false;               // concrete graphs only
    std::vector<EntityId> contained;          // concrete graphs only
    std::optional<EntityId> instantiated_by;  // virtual graphs only
    std::optional<Multiplicity> multiplicity;
    std::optional<long> instance_count;
    std::optional<std::string> termination_condition;
    std::vector<EntityId> starting_points;    // workflow nodes
    std::vector<EntityId> terminal_points;
    friend bool operator==(const WorkflowGraph&, const WorkflowGraph&) = default;
};

enum class ProcessorRole { Postprocessor, CoupledProcessor, Unclassified };

// ---------------------------------------------------------------------------
// SimulationWorkflow

inline std::shared_ptr<const VocabularyStore> shared_builtin_vocabulary() {
    static const auto store =
        std::make_shared<const VocabularyStore>(onto::load_builtin_vocabulary());
    return store;
}

class SimulationWorkflow {
public:
    explicit SimulationWorkflow(EntityId id,
                                std::shared_ptr<const VocabularyStore> vocab =
                                    shared_builtin_vocabulary())
        : id_(std::move(id)), vocab_(std::move(vocab)) {
        WorkflowGraph root;
        root.id = id_;
        graphs_[id_] = std::move(root);
    }

    const EntityId& id() const { return id_; }
    const EntityId& root() const { return id_; }
    const VocabularyStore& vocab() const { return *vocab_; }
    std::shared_ptr<const VocabularyStore> vocab_ptr() const { return vocab_; }

    // --- builders ---------------------------------------------------------

    EntityId add_section(SectionKind kind, std::vector<Aspect> aspects,
                         EntityId id = {}) {
        if (id.empty()) id = fresh_id("sec");
        require_unused(id);
        for (const auto& a : aspects) check_aspect(kind, a);
        check_functional_aspects(kind, aspects);
        Section s;
        s.id = id;
        s.kind = kind;
        s.aspects = std::move(aspects);
        sections_[id] = std::move(s);
        return id;
    }

    EntityId add_variable(std::string name, std::optional<LogicalValue> value = {},
                          EntityId id = {}) {
        if (id.empty()) id = fresh_id("var");
        require_unused(id);
        variables_[id] = {id, std::move(name), std::move(value)};
        return id;
    }

    EntityId add_resource(bool interactive, std::vector<EntityId> stored_variables,
                          EntityId id = {}) {
        if (id.empty()) id = fresh_id("res");
        require_unused(id);
        for (const auto& v : stored_variables)
            if (!variables_.count(v))
                throw UnknownRefError("unknown variable " + v + " stored in " + id);
        auto dedup = stored_variables;
        std::sort(dedup.begin(), dedup.end());
        if (std::adjacent_find(dedup.begin(), dedup.end()) != dedup.end())
            throw UnknownRefError("duplicate stored variable in " + id);
        resources_[id] = {id, interactive, std::move(stored_variables)};
        return id;
    }

    EntityId add_access(const EntityId& section, const EntityId& resource,
                        AccessFlags flags, std::vector<EntityId> carried,
                        EntityId id = {}) {
        if (id.empty()) id = fresh_id("acc");
        require_unused(id);
        auto sec = sections_.find(section);
        if (sec == sections_.end())
            throw UnknownRefError("unknown access point section " + section);
        auto res = resources_.find(resource);
        if (res == resources_.end())
            throw UnknownRefError("unknown resource " + resource);
        if (!flags.any())
            throw UnknownRefError("access " + id + " has no access mode set");
        for (const auto& v : carried) {
            const auto& stored = res->second.stored_variables;
            if (std::find(stored.begin(), stored.end(), v) == stored.end())
                throw UnknownRefError("carried variable " + v + " not stored in " +
                                      resource);
        }
        accesses_[id] = {id, section, resource, std::move(carried), flags};
        return id;
    }

    EntityId add_graph(GraphKind kind, std::vector<EntityId> contained,
                       EntityId id = {}) {
        if (id.empty()) id = fresh_id("g");
        require_unused(id);
        if (kind == GraphKind::Virtual && !contained.empty())
            throw UnknownRefError("virtual graph " + id + " cannot contain resources");
        for (const auto& r : contained) check_containable(r, id);
        WorkflowGraph g;
        g.id = id;
        g.kind = kind;
        g.contained = std::move(contained);
        graphs_[id] = std::move(g);
        return id;
    }

    // A workflow node: concrete graph declared to contain exactly one resource.
    EntityId add_node(const EntityId& resource, EntityId id = {}) {
        if (id.empty()) id = fresh_id("n");
        require_unused(id);
        check_containable(resource, id);
        WorkflowGraph g;
        g.id = id;
        g.kind = GraphKind::Concrete;
        g.declared_node = true;
        g.contained = {resource};
        graphs_[id] = std::move(g);
        return id;
    }

    EntityId add_virtual_graph(const EntityId& instantiating_concrete,
                               Multiplicity multiplicity,
                               std::optional<long> count = {},
                               std::optional<std::string> termination = {},
                               EntityId id = {}) {
        if (id.empty()) id = fresh_id("v");
        require_unused(id);
        auto it = graphs_.find(instantiating_concrete);
        if (it == graphs_.end() || it->second.kind != GraphKind::Concrete)
            throw UnknownRefError("virtual graph " + id +
                                  " needs an instantiating concrete graph");
        WorkflowGraph g;
        g.id = id;
        g.kind = GraphKind::Virtual;
        g.instantiated_by = instantiating_concrete;
        g.multiplicity = multiplicity;
        g.instance_count = count;
        g.termination_condition = std::move(termination);
        graphs_[id] = std::move(g);
        return id;
    }

    // Containment mutation; preserves the node law and the containment forest.
    void add_to(const EntityId& graph, const EntityId& resource) {
        auto it = graphs_.find(graph);
        if (it == graphs_.end()) throw UnknownRefError("unknown graph " + graph);
        if (it->second.kind != GraphKind::Concrete)
            throw UnknownRefError("virtual graph " + graph + " cannot contain resources");
        if (it->second.declared_node && it->second.contained.size() >= 1)
            throw NodeCardinalityViolationError(
                "node " + graph + " already contains its single resource");
        check_containable(resource, graph);
        it->second.contained.push_back(resource);
    }

    void link(const EntityId& a, const EntityId& b) {
        if (a == b) throw SelfEdgeError("self causal edge on " + a);
        require_graph(a);
        require_graph(b);
        causal_.emplace_back(a, b);
    }

    void couple(const EntityId& a, const EntityId& b) {
        if (a == b) throw SelfEdgeError("self coupling on " + a);
        require_graph(a);
        require_graph(b);
        coupling_.emplace_back(a, b);
        coupling_.emplace_back(b, a);
    }

    void applies_to(const EntityId& section, const EntityId& graph) {
        if (!sections_.count(section))
            throw UnknownRefError("unknown section " + section);
        require_graph(graph);
        applies_to_.emplace_back(section, graph);
    }

    void set_starting_point(const EntityId& graph, const EntityId& node) {
        require_graph(graph);
        require_graph(node);
        graphs_[graph].starting_points.push_back(node);
    }

    void set_terminal_point(const EntityId& graph, const EntityId& node) {
        require_graph(graph);
        require_graph(node);
        graphs_[graph].terminal_points.push_back(node);
    }

    void set_simulation_outcome(const EntityId& node) {
        require_graph(node);
        outcome_.insert(node);
    }

    // --- queries ------------------------------------------------------------

    const std::map<EntityId, Section>& sections() const { return sections_; }
    const std::map<EntityId, LogicalResource>& resources() const { return resources_; }
    const std::map<EntityId, LogicalAccess>& accesses() const { return accesses_; }
    const std::map<EntityId, LogicalVariable>& variables() const { return variables_; }
    const std::map<EntityId, WorkflowGraph>& graphs() const { return graphs_; }
    const std::vector<std::pair<EntityId, EntityId>>& applies_to_edges() const {
        return applies_to_;
    }
    const std::vector<std::pair<EntityId, EntityId>>& causal_edges() const {
        return causal_;
    }
    const std::vector<std::pair<EntityId, EntityId>>& coupling_pairs() const {
        return coupling_;
    }
    const std::set<EntityId>& simulation_outcome() const { return outcome_; }

    Section& section(const EntityId& id) { return sections_.at(id); }
    const Section& section(const EntityId& id) const { return sections_.at(id); }
    WorkflowGraph& graph(const EntityId& id) { return graphs_.at(id); }
    const WorkflowGraph& graph(const EntityId& id) const { return graphs_.at(id); }
    LogicalResource& resource(const EntityId& id) { return resources_.at(id); }
    const LogicalResource& resource(const EntityId& id) const { return resources_.at(id); }

    bool is_graph(const EntityId& id) const { return graphs_.count(id) != 0; }

    bool is_workflow_node(const EntityId& id) const {
        auto it = graphs_.find(id);
        if (it == graphs_.end() || it->second.kind != GraphKind::Concrete) return false;
        return it->second.declared_node || it->second.contained.size() == 1;
    }

    bool is_logical_node(const EntityId& id) const {
        if (!is_workflow_node(id)) return false;
        const auto& c = graphs_.at(id).contained;
        return c.size() == 1 && resources_.count(c[0]) != 0;
    }

    // Derived, never stored.
    bool is_linked_to(const EntityId& a, const EntityId& b) const {
        for (const auto& [x, y] : causal_)
            if ((x == a && y == b) || (x == b && y == a)) return true;
        return false;
    }

    bool is_coupled(const EntityId& a, const EntityId& b) const {
        for (const auto& [x, y] : coupling_)
            if (x == a && y == b) return true;
        return false;
    }

    // Direct parent in the containment forest, if any.
    std::optional<EntityId> parent_of(const EntityId& id) const {
        for (const auto& [gid, g] : graphs_)
            for (const auto& r : g.contained)
                if (r == id) return gid;
        return std::nullopt;
    }

    bool contains_transitively(const EntityId& ancestor, const EntityId& id) const {
        std::optional<EntityId> cur = id;
        std::set<EntityId> seen;
        while ((cur = parent_of(*cur))) {
            if (*cur == ancestor) return true;
            if (!seen.insert(*cur).second) return false;
        }
        return false;
    }

    // The workflow node wrapping a section, if there is exactly one.
    std::optional<EntityId> node_of(const EntityId& entity) const {
        for (const auto& [gid, g] : graphs_)
            if (is_workflow_node(gid) && g.contained.size() == 1 &&
                g.contained[0] == entity)
                return gid;
        return std::nullopt;
    }

    friend bool operator==(const SimulationWorkflow& a, const SimulationWorkflow& b) {
        return a.id_ == b.id_ && a.sections_ == b.sections_ &&
               a.resources_ == b.resources_ && a.accesses_ == b.accesses_ &&
               a.variables_ == b.variables_ && a.graphs_ == b.graphs_ &&
               a.applies_to_ == b.applies_to_ && a.causal_ == b.causal_ &&
               a.coupling_ == b.coupling_ && a.outcome_ == b.outcome_;
    }

private:
    friend struct RawTables;

    EntityId fresh_id(const std::string& prefix) {
        EntityId id;
        do {
            id = prefix + std::to_string(++counter_);
        } while (used(id));
        return id;
    }

    bool used(const EntityId& id) const {
        return sections_.count(id) || resources_.count(id) || accesses_.count(id) ||
               variables_.count(id) || graphs_.count(id);
    }

    void require_unused(const EntityId& id) const {
        if (used(id)) throw DuplicateIdError("entity id already in use: " + id);
    }

    void require_graph(const EntityId& id) const {
        if (!graphs_.count(id)) throw UnknownRefError("unknown graph " + id);
    }

    void check_containable(const EntityId& r, const EntityId& graph) {
        if (!sections_.count(r) && !resources_.count(r) && !graphs_.count(r))
            throw UnknownRefError("unknown workflow resource " + r + " in " + graph);
        if (parent_of(r))
            throw UnknownRefError("resource " + r + " is already contained elsewhere");
    }

    void check_aspect(SectionKind kind, const Aspect& a) const {
        const ClassId cls = section_class(kind);
        const onto::AspectDef* def = vocab_->find_aspect(cls, a.aspect_class);
        if (!def)
            throw InvalidAspectForKindError("aspect " + a.aspect_class.str() +
                                            " not admissible for " + cls.str());
        if (!a.text && !a.object && !a.external)
            throw InvalidAspectForKindError("aspect " + a.aspect_class.str() +
                                            " carries no content");
        if (a.object) {
            if (def->object_content.empty())
                throw InvalidAspectForKindError(
                    "aspect " + a.aspect_class.str() +
                    " takes text or external-reference content only");
            bool ok = false;
            for (const auto& c : def->object_content) {
                if (vocab_->has_class(*a.object) && vocab_->is_subclass_of(*a.object, c))
                    ok = true;
                if (vocab_->individual_is_a(*a.object, c)) ok = true;
            }
            if (!ok)
                throw InvalidAspectForKindError("object content " + a.object->str() +
                                                " not admissible for " +
                                                a.aspect_class.str());
        }
    }

    void check_functional_aspects(SectionKind kind, const std::vector<Aspect>& aspects) const {
        const ClassId cls = section_class(kind);
        std::map<ClassId, int> counts;
        for (const auto& a : aspects) ++counts[a.aspect_class];
        for (const auto& [ac, n] : counts) {
            const onto::AspectDef* def = vocab_->find_aspect(cls, ac);
            if (def && def->functional && n > 1)
                throw InvalidAspectForKindError("functional aspect " + ac.str() +
                                                " appears " + std::to_string(n) +
                                                " times");
        }
    }

    EntityId id_;
    std::shared_ptr<const VocabularyStore> vocab_;
    std::map<EntityId, Section> sections_;
    std::map<EntityId, LogicalResource> resources_;
    std::map<EntityId, LogicalAccess> accesses_;
    std::map<EntityId, LogicalVariable> variables_;
    std::map<EntityId, WorkflowGraph> graphs_;
    std::vector<std::pair<EntityId, EntityId>> applies_to_;
    std::vector<std::pair<EntityId, EntityId>> causal_;
    std::vector<std::pair<EntityId, EntityId>> coupling_;  // stored both ways
    std::set<EntityId> outcome_;
    unsigned long counter_ = 0;
};

// Table-level access used by the TTL importer: documents may describe
// structures the builders would reject, and those must reach the validator
// so imports report the same findings as their source.
struct RawTables {
    static std::map<EntityId, Section>& sections(SimulationWorkflow& wf) {
        return wf.sections_;
    }
    static std::map<EntityId, LogicalResource>& resources(SimulationWorkflow& wf) {
        return wf.resources_;
    }
    static std::map<EntityId, LogicalAccess>& accesses(SimulationWorkflow& wf) {
        return wf.accesses_;
    }
    static std::map<EntityId, LogicalVariable>& variables(SimulationWorkflow& wf) {
        return wf.variables_;
    }
    static std::map<EntityId, WorkflowGraph>& graphs(SimulationWorkflow& wf) {
        return wf.graphs_;
    }
    static std::vector<std::pair<EntityId, EntityId>>& applies_to(SimulationWorkflow& wf) {
        return wf.applies_to_;
    }
    static std::vector<std::pair<EntityId, EntityId>>& causal(SimulationWorkflow& wf) {
        return wf.causal_;
    }
    static std::vector<std::pair<EntityId, EntityId>>& coupling(SimulationWorkflow& wf) {
        return wf.coupling_;
    }
    static std::set<EntityId>& outcome(SimulationWorkflow& wf) { return wf.outcome_; }
};

// ---------------------------------------------------------------------------
// Validation

namespace detail {

// Union-find over coupled children used for contraction.
struct UnionFind {
    std::map<EntityId, EntityId> parent;
    EntityId find(const EntityId& x) {
        auto it = parent.find(x);
        if (it == parent.end()) {
            parent[x] = x;
            return x;
        }
        if (it->second == x) return x;
        EntityId root = find(it->second);
        parent[x] = root;
        return root;
    }
    void unite(const EntityId& a, const EntityId& b) {
        EntityId ra = find(a), rb = find(b);
        if (ra != rb) parent[ra] = rb;
    }
};

// Condensed causal graph among the direct children of `g` with coupled
// components contracted. Returns component representative -> successors.
struct Condensed {
    std::map<EntityId, EntityId> component;               // child -> representative
    std::map<EntityId, std::vector<EntityId>> members;    // representative -> children
    std::map<EntityId, std::set<EntityId>> successors;    // rep -> reps
    std::vector<std::pair<EntityId, EntityId>> intra_component_causal;
};

inline Condensed condense_children(const SimulationWorkflow& wf, const EntityId& gid) {
    Condensed c;
    const auto& g = wf.graph(gid);
    std::set<EntityId> children;
    for (const auto& r : g.contained)
        if (wf.is_graph(r)) children.insert(r);

    UnionFind uf;
    for (const auto& ch : children) uf.find(ch);
    for (const auto& [a, b] : wf.coupling_pairs())
        if (children.count(a) && children.count(b)) uf.unite(a, b);

    for (const auto& ch : children) {
        EntityId rep = uf.find(ch);
        c.component[ch] = rep;
        c.members[rep].push_back(ch);
    }
    for (const auto& [a, b] : wf.causal_edges()) {
        if (!children.count(a) || !children.count(b)) continue;
        EntityId ra = c.component[a], rb = c.component[b];
        if (ra == rb)
            c.intra_component_causal.emplace_back(a, b);
        else
            c.successors[ra].insert(rb);
    }
    return c;
}

}  // namespace detail

inline ValidationReport validate_workflow(const SimulationWorkflow& wf) {
    ValidationReport report;

    // containment forest and reference integrity
    std::map<EntityId, int> container_count;
    for (const auto& [gid, g] : wf.graphs()) {
        for (const auto& r : g.contained) {
            if (!wf.sections().count(r) && !wf.resources().count(r) && !wf.is_graph(r))
                report.add_error("unknown_ref", gid, "contained entity " + r + " missing");
            ++container_count[r];
        }
        if (g.kind == GraphKind::Virtual) {
            if (!g.contained.empty())
                report.add_error("virtual_contains", gid,
                                 "virtual graph directly contains resources");
            if (!g.instantiated_by || !wf.is_graph(*g.instantiated_by) ||
                wf.graph(*g.instantiated_by).kind != GraphKind::Concrete)
                report.add_error("virtual_uninstantiated", gid,
                                 "virtual graph lacks an instantiating concrete graph");
            if (!g.multiplicity)
                report.add_error("virtual_multiplicity", gid,
                                 "virtual graph lacks a multiplicity declaration");
        } else if (g.declared_node && g.contained.size() != 1) {
            report.add_error("node_cardinality", gid,
                             "workflow node contains " +
                                 std::to_string(g.contained.size()) +
                                 " resources, expected exactly 1");
        }
    }
    for (const auto& [r, n] : container_count)
        if (n > 1)
            report.add_error("double_containment", r,
                             "entity directly contained in " + std::to_string(n) +
                                 " graphs");

    // applies_to subject kinds
    for (const auto& [sec, g] : wf.applies_to_edges()) {
        auto it = wf.sections().find(sec);
        if (it == wf.sections().end()) {
            report.add_error("unknown_ref", sec, "applies_to subject missing");
            continue;
        }
        if (it->second.kind != SectionKind::UseCase &&
            it->second.kind != SectionKind::MaterialsModel)
            report.add_error("applies_to_subject", sec,
                             "applies_to requires a use_case or materials_model subject");
        if (!wf.is_graph(g))
            report.add_error("unknown_ref", sec, "applies_to target " + g + " missing");
    }

    // coupling stored symmetrically, no self edges
    for (const auto& [a, b] : wf.coupling_pairs()) {
        if (a == b) report.add_error("self_edge", a, "graph coupled with itself");
        if (!wf.is_coupled(b, a))
            report.add_error("coupling_asymmetry", a + "/" + b,
                             "coupling pair stored in one direction only");
    }
    for (const auto& [a, b] : wf.causal_edges())
        if (a == b) report.add_error("self_edge", a, "graph causally precedes itself");

    // causal structure among the direct children of each concrete graph
    for (const auto& [gid, g] : wf.graphs()) {
        if (g.kind != GraphKind::Concrete) continue;
        auto condensed = detail::condense_children(wf, gid);
        for (const auto& [a, b] : condensed.intra_component_causal)
            report.add_error("coupled_causal", a + "->" + b,
                             "causal edge between mutually coupled graphs");
        // Kahn's algorithm on the condensed graph
        std::map<EntityId, int> indeg;
        for (const auto& [rep, _] : condensed.members) indeg[rep];
        for (const auto& [rep, succs] : condensed.successors)
            for (const auto& s : succs) ++indeg[s];
        std::vector<EntityId> queue;
        for (const auto& [rep, d] : indeg)
            if (d == 0) queue.push_back(rep);
        std::size_t seen = 0;
        while (!queue.empty()) {
            EntityId rep = queue.back();
            queue.pop_back();
            ++seen;
            for (const auto& s : condensed.successors[rep])
                if (--indeg[s] == 0) queue.push_back(s);
        }
        if (seen != condensed.members.size())
            report.add_error("causal_cycle", gid,
                             "causal cycle among the children of " + gid);
    }

    // starting and terminal points
    auto check_points = [&](const EntityId& gid, const std::vector<EntityId>& pts,
                            const std::string& which) {
        for (const auto& p : pts) {
            if (!wf.is_workflow_node(p)) {
                report.add_error("dangling_" + which, gid,
                                 which + " point " + p + " is not a workflow node");
            } else if (!wf.contains_transitively(gid, p)) {
                report.add_error("dangling_" + which, gid,
                                 which + " point " + p + " lies outside " + gid);
            }
        }
    };
    for (const auto& [gid, g] : wf.graphs()) {
        check_points(gid, g.starting_points, "start");
        check_points(gid, g.terminal_points, "terminal");
    }

    // accesses
    for (const auto& [aid, a] : wf.accesses()) {
        if (!wf.sections().count(a.access_point))
            report.add_error("unknown_ref", aid, "access point section missing");
        auto res = wf.resources().find(a.resource);
        if (res == wf.resources().end()) {
            report.add_error("unknown_ref", aid, "access resource missing");
            continue;
        }
        if (!a.flags.any())
            report.add_error("access_no_mode", aid, "no access mode flag set");
        for (const auto& v : a.carried_variables) {
            const auto& stored = res->second.stored_variables;
            if (std::find(stored.begin(), stored.end(), v) == stored.end())
                report.add_error("carried_not_stored", aid,
                                 "carried variable " + v + " not stored in " +
                                     a.resource);
        }
    }

    // resources: stored variables exist and are distinct
    for (const auto& [rid, r] : wf.resources()) {
        std::set<EntityId> seen;
        for (const auto& v : r.stored_variables) {
            if (!wf.variables().count(v))
                report.add_error("unknown_ref", rid, "stored variable " + v + " missing");
            if (!seen.insert(v).second)
                report.add_error("duplicate_stored", rid,
                                 "variable " + v + " stored twice");
        }
    }

    // simulation outcome nodes hold a logical resource; an outcome that is
    // not a declared terminal point anywhere is suspicious but admissible
    for (const auto& o : wf.simulation_outcome()) {
        if (!wf.is_logical_node(o)) {
            report.add_error("outcome_not_logical_node", o,
                             "simulation outcome must be a node containing a "
                             "logical resource");
            continue;
        }
        bool terminal_somewhere = false;
        for (const auto& [gid, g] : wf.graphs())
            if (std::find(g.terminal_points.begin(), g.terminal_points.end(), o) !=
                g.terminal_points.end())
                terminal_somewhere = true;
        if (!terminal_somewhere)
            report.add_warning("outcome_not_terminal", o,
                               "outcome node is not a terminal point of any graph");
    }

    return report;
}

// ---------------------------------------------------------------------------
// Execution-order extraction

// Stages over the direct children graphs of `g`: every causal predecessor
// appears in an earlier stage, mutually coupled graphs share a stage, ties
// broken by ascending id.
inline std::vector<std::vector<EntityId>> topo_order(const SimulationWorkflow& wf,
                                                     const EntityId& gid) {
    auto it = wf.graphs().find(gid);
    if (it == wf.graphs().end()) throw UnknownRefError("unknown graph " + gid);
    if (it->second.kind != GraphKind::Concrete)
        throw WrongKindError("topo_order requires a concrete graph");

    auto condensed = detail::condense_children(wf, gid);
    if (!condensed.intra_component_causal.empty())
        throw CyclicDependencyError("causal edge between coupled graphs in " + gid);

    std::map<EntityId, int> indeg;
    for (const auto& [rep, _] : condensed.members) indeg[rep];
    for (const auto& [rep, succs] : condensed.successors)
        for (const auto& s : succs) ++indeg[s];

    std::vector<std::vector<EntityId>> stages;
    std::set<EntityId> remaining;
    for (const auto& [rep, _] : condensed.members) remaining.insert(rep);

    while (!remaining.empty()) {
        std::vector<EntityId> level;
        for (const auto& rep : remaining)
            if (indeg[rep] == 0) level.push_back(rep);
        if (level.empty())
            throw CyclicDependencyError("causal cycle among the children of " + gid);
        std::vector<EntityId> stage;
        for (const auto& rep : level) {
            for (const auto& m : condensed.members[rep]) stage.push_back(m);
            remaining.erase(rep);
        }
        for (const auto& rep : level)
            for (const auto& s : condensed.successors[rep]) --indeg[s];
        std::sort(stage.begin(), stage.end());
        stages.push_back(std::move(stage));
    }
    return stages;
}

// ---------------------------------------------------------------------------
// Processor classification

inline ProcessorRole classify_processor(const SimulationWorkflow& wf,
                                        const EntityId& section_id) {
    auto it = wf.sections().find(section_id);
    if (it == wf.sections().end())
        throw UnknownRefError("unknown section " + section_id);
    if (it->second.kind != SectionKind::Processor)
        throw WrongKindError(section_id + " is not a processor");

    auto node = wf.node_of(section_id);
    if (!node) return ProcessorRole::Unclassified;

    for (const auto& [a, b] : wf.coupling_pairs())
        if (a == *node || b == *node) return ProcessorRole::CoupledProcessor;

    bool incoming = false;
    for (const auto& [a, b] : wf.causal_edges()) {
        if (a == *node) return ProcessorRole::Unclassified;  // outgoing edge
        if (b == *node) {
            incoming = true;
            // the predecessor must be a node holding a solver or processor
            const auto& src = wf.graph(a);
            bool solverish = false;
            if (wf.is_workflow_node(a) && src.contained.size() == 1) {
                auto sec = wf.sections().find(src.contained[0]);
                if (sec != wf.sections().end() &&
                    (sec->second.kind == SectionKind::Solver ||
                     sec->second.kind == SectionKind::Processor))
                    solverish = true;
            }
            if (!solverish) return ProcessorRole::Unclassified;
        }
    }
    return incoming ? ProcessorRole::Postprocessor : ProcessorRole::Unclassified;
}

// ---------------------------------------------------------------------------
// Virtual-graph expansion

namespace detail {

struct SubtreeCopy {
    std::map<EntityId, EntityId> rename;  // original -> copy
};

inline void collect_subtree(const SimulationWorkflow& wf, const EntityId& root,
                            std::set<EntityId>& graphs, std::set<EntityId>& sections,
                            std::set<EntityId>& resources) {
    if (!wf.is_graph(root)) return;
    graphs.insert(root);
    for (const auto& r : wf.graph(root).contained) {
        if (wf.is_graph(r)) {
            collect_subtree(wf, r, graphs, sections, resources);
        } else if (wf.sections().count(r)) {
            sections.insert(r);
        } else if (wf.resources().count(r)) {
            resources.insert(r);
        }
    }
}

}  // namespace detail

// Instantiates a virtual graph n times: concurrent instances are causally
// unordered copies, iterative loops are chained by is_direct_cause_of.
// Only new entities are added; the source structure is left untouched.
inline EntityId expand_virtual(SimulationWorkflow& wf, const EntityId& vid, long n) {
    auto it = wf.graphs().find(vid);
    if (it == wf.graphs().end()) throw UnknownRefError("unknown graph " + vid);
    const WorkflowGraph v = it->second;
    if (v.kind != GraphKind::Virtual)
        throw NotVirtualError(vid + " is not a virtual graph");
    if (n < 1) throw ZeroCountError("instance count must be >= 1");
    if (!v.instantiated_by || !wf.is_graph(*v.instantiated_by))
        throw UnknownRefError("virtual graph " + vid + " has no template");
    const EntityId tmpl = *v.instantiated_by;

    std::set<EntityId> graphs, sections, resources;
    detail::collect_subtree(wf, tmpl, graphs, sections, resources);
    std::set<EntityId> variables;
    for (const auto& r : resources)
        for (const auto& var : wf.resource(r).stored_variables) variables.insert(var);
    for (const auto& s : sections) {
        for (const auto& var : wf.section(s).internal_variables) variables.insert(var);
        for (const auto& var : wf.section(s).logical_io) variables.insert(var);
    }

    std::vector<EntityId> copy_roots;
    for (long k = 1; k <= n; ++k) {
        const std::string suffix = "_i" + std::to_string(k);
        auto renamed = [&suffix](const EntityId& id) { return id + suffix; };
        auto remap = [&](const EntityId& id) {
            if (graphs.count(id) || sections.count(id) || resources.count(id) ||
                variables.count(id))
                return renamed(id);
            return id;  // references outside the subtree stay shared
        };

        for (const auto& var : variables) {
            const auto& orig = wf.variables().at(var);
            wf.add_variable(orig.name, orig.value, renamed(var));
        }
        for (const auto& res : resources) {
            const auto& orig = wf.resource(res);
            std::vector<EntityId> stored;
            for (const auto& var : orig.stored_variables) stored.push_back(remap(var));
            wf.add_resource(orig.interactive, std::move(stored), renamed(res));
        }
        for (const auto& sec : sections) {
            const auto& orig = wf.section(sec);
            EntityId copy =
                wf.add_section(orig.kind, orig.aspects, renamed(sec));
            for (const auto& var : orig.internal_variables)
                wf.section(copy).internal_variables.push_back(remap(var));
            for (const auto& var : orig.logical_io)
                wf.section(copy).logical_io.push_back(remap(var));
        }
        // graphs bottom-up so contained copies exist before their parents
        std::vector<EntityId> order;
        {
            std::vector<EntityId> stack{tmpl};
            while (!stack.empty()) {
                EntityId g = stack.back();
                stack.pop_back();
                order.push_back(g);
                for (const auto& r : wf.graph(g).contained)
                    if (graphs.count(r)) stack.push_back(r);
            }
            std::reverse(order.begin(), order.end());
        }
        for (const auto& gid : order) {
            const WorkflowGraph orig = wf.graph(gid);
            std::vector<EntityId> contained;
            for (const auto& r : orig.contained) contained.push_back(remap(r));
            EntityId copy = orig.declared_node
                                ? wf.add_node(contained.at(0), renamed(gid))
                                : wf.add_graph(GraphKind::Concrete, contained,
                                               renamed(gid));
            for (const auto& p : orig.starting_points)
                wf.graph(copy).starting_points.push_back(remap(p));
            for (const auto& p : orig.terminal_points)
                wf.graph(copy).terminal_points.push_back(remap(p));
        }
        // accesses anchored at copied sections
        for (const auto& [aid, acc] : std::map<EntityId, LogicalAccess>(wf.accesses())) {
            if (!sections.count(acc.access_point)) continue;
            std::vector<EntityId> carried;
            for (const auto& var : acc.carried_variables) carried.push_back(remap(var));
            wf.add_access(remap(acc.access_point), remap(acc.resource), acc.flags,
                          std::move(carried), renamed(aid));
        }
        // internal causal and coupling edges
        for (const auto& [a, b] : std::vector<std::pair<EntityId, EntityId>>(
                 wf.causal_edges()))
            if (graphs.count(a) && graphs.count(b)) wf.link(renamed(a), renamed(b));
        std::set<std::pair<EntityId, EntityId>> coupled_done;
        for (const auto& [a, b] : std::vector<std::pair<EntityId, EntityId>>(
                 wf.coupling_pairs()))
            if (graphs.count(a) && graphs.count(b) &&
                coupled_done.insert({std::min(a, b), std::max(a, b)}).second)
                wf.couple(renamed(a), renamed(b));

        copy_roots.push_back(renamed(tmpl));
    }

    EntityId container = wf.add_graph(GraphKind::Concrete, copy_roots);
    if (v.multiplicity == Multiplicity::IterativeLoop)
        for (std::size_t k = 0; k + 1 < copy_roots.size(); ++k)
            wf.link(copy_roots[k], copy_roots[k + 1]);
    return container;
}

}  // namespace osmoflow::wf
