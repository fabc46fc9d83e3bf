#pragma once
// Bidirectional mapping between the workflow model and TTL documents:
// every entity becomes a typed subject, workflow relations become
// predicates, access flags become boolean data properties. Imported
// blank nodes for store-level assertion are skolemized deterministically.

#include <charconv>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "osmoflow/ontology.hpp"
#include "osmoflow/ttl.hpp"
#include "osmoflow/workflow.hpp"

namespace osmoflow::ttl {

struct VocabularyViolationError : Error { using Error::Error; };
struct StructuralError : Error { using Error::Error; };

inline std::map<std::string, std::string> standard_prefixes() {
    return {
        {"", "https://example.org/workflow#"},
        {"osmo", "https://example.org/osmo#"},
        {"viso", "https://example.org/viso#"},
        {"viso-el", "https://example.org/viso-el#"},
        {"viso-am", "https://example.org/viso-am#"},
        {"viso-co", "https://example.org/viso-co#"},
    };
}

namespace detail {

inline Name to_name(const onto::ClassId& c) { return {c.ns, c.name}; }
inline Name entity_name(const wf::EntityId& id) { return {"", id}; }
inline onto::ClassId to_class(const Name& n) { return {n.prefix, n.local}; }

inline Object osmo_ref(const char* local) {
    return Object::iri({"osmo", local});
}

inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Workflow -> triples

namespace detail {

inline Object aspect_blank(const wf::Aspect& a, const onto::VocabularyStore& vocab) {
    std::vector<PredObjects> contents;
    contents.push_back({Pred{true, {}}, {Object::iri(to_name(a.aspect_class))}});
    if (a.object) {
        // named individuals are referenced directly; classes become an
        // anonymous typed instance
        if (vocab.has_individual(*a.object)) {
            contents.push_back({Pred{false, {"osmo", "has_aspect_object_content"}},
                                {Object::iri(to_name(*a.object))}});
        } else {
            std::vector<PredObjects> nested;
            nested.push_back({Pred{true, {}}, {Object::iri(to_name(*a.object))}});
            contents.push_back({Pred{false, {"osmo", "has_aspect_object_content"}},
                                {Object::blank_node(std::move(nested))}});
        }
    } else if (a.external) {
        contents.push_back({Pred{false, {"osmo", "has_aspect_object_content"}},
                            {Object::str(*a.external)}});
    }
    if (a.text)
        contents.push_back({Pred{false, {"osmo", "has_aspect_text_content"}},
                            {Object::str(*a.text)}});
    return Object::blank_node(std::move(contents));
}

inline Object value_blank(const wf::LogicalValue& v) {
    std::vector<PredObjects> contents;
    contents.push_back({Pred{true, {}}, {osmo_ref("logical_value")}});
    if (const auto* d = std::get_if<double>(&v)) {
        contents.push_back({Pred{false, {"osmo", "has_numeric_value"}},
                            {Object::real_value(*d)}});
    } else if (const auto* s = std::get_if<std::string>(&v)) {
        contents.push_back({Pred{false, {"osmo", "has_string_value"}},
                            {Object::str(*s)}});
    } else if (const auto* vec = std::get_if<std::vector<double>>(&v)) {
        std::string joined;
        for (std::size_t i = 0; i < vec->size(); ++i) {
            if (i) joined += ' ';
            joined += format_double((*vec)[i]);
        }
        contents.push_back({Pred{false, {"osmo", "has_vector_value"}},
                            {Object::str(joined)}});
    } else if (const auto* q = std::get_if<wf::Quantity>(&v)) {
        contents.push_back({Pred{false, {"osmo", "has_numeric_value"}},
                            {Object::real_value(q->value)}});
        contents.push_back({Pred{false, {"osmo", "has_unit"}}, {Object::str(q->unit)}});
    }
    return Object::blank_node(std::move(contents));
}

}  // namespace detail

inline TtlDocument workflow_to_triples(const wf::SimulationWorkflow& wf) {
    using detail::entity_name;
    using detail::to_name;
    TtlDocument doc;
    doc.prefixes = standard_prefixes();

    auto statement = [&doc](const wf::EntityId& subject) -> Statement& {
        doc.statements.push_back({entity_name(subject), {}});
        return doc.statements.back();
    };
    auto add = [](Statement& st, Pred p, Object o) {
        st.preds.push_back({std::move(p), {std::move(o)}});
    };
    auto pred = [](const char* local) { return Pred{false, {"osmo", local}}; };

    for (const auto& [id, s] : wf.sections()) {
        Statement& st = statement(id);
        add(st, Pred{true, {}}, Object::iri(to_name(wf::section_class(s.kind))));
        for (const auto& a : s.aspects)
            add(st, Pred{false, {"osmo", "has_" + a.aspect_class.name}},
                detail::aspect_blank(a, wf.vocab()));
        for (const auto& v : s.internal_variables)
            add(st, pred("has_internal_lv"), Object::iri(entity_name(v)));
        for (const auto& v : s.logical_io)
            add(st, pred("has_logical_io"), Object::iri(entity_name(v)));
    }

    for (const auto& [id, v] : wf.variables()) {
        Statement& st = statement(id);
        add(st, Pred{true, {}}, detail::osmo_ref("logical_variable"));
        add(st, pred("has_name"), Object::str(v.name));
        if (v.value) add(st, pred("has_value"), detail::value_blank(*v.value));
    }

    for (const auto& [id, r] : wf.resources()) {
        Statement& st = statement(id);
        add(st, Pred{true, {}}, detail::osmo_ref("logical_resource"));
        if (r.interactive)
            add(st, pred("is_interactive"), Object::boolean_value(true));
        for (const auto& v : r.stored_variables)
            add(st, pred("has_stored_variable"), Object::iri(entity_name(v)));
    }

    for (const auto& [id, a] : wf.accesses()) {
        Statement& st = statement(id);
        add(st, Pred{true, {}}, detail::osmo_ref("logical_access"));
        add(st, pred("has_access_point"), Object::iri(entity_name(a.access_point)));
        add(st, pred("has_resource"), Object::iri(entity_name(a.resource)));
        for (const auto& v : a.carried_variables)
            add(st, pred("has_carried_variable"), Object::iri(entity_name(v)));
        if (a.flags.reads_initially)
            add(st, pred("reads_initially"), Object::boolean_value(true));
        if (a.flags.reads_parameters)
            add(st, pred("reads_parameters"), Object::boolean_value(true));
        if (a.flags.writes_finally)
            add(st, pred("writes_finally"), Object::boolean_value(true));
        if (a.flags.reads_during_execution)
            add(st, pred("reads_during_execution"), Object::boolean_value(true));
        if (a.flags.writes_during_execution)
            add(st, pred("writes_during_execution"), Object::boolean_value(true));
    }

    for (const auto& [id, g] : wf.graphs()) {
        Statement& st = statement(id);
        if (g.kind == wf::GraphKind::Virtual) {
            add(st, Pred{true, {}}, detail::osmo_ref("virtual_graph"));
            if (g.multiplicity)
                add(st, pred("has_multiplicity"),
                    Object::str(*g.multiplicity == wf::Multiplicity::ConcurrentInstances
                                    ? "concurrent_instances"
                                    : "iterative_loop"));
            if (g.instance_count)
                add(st, pred("has_instance_count"),
                    Object::integer_value(*g.instance_count));
            if (g.termination_condition)
                add(st, pred("has_termination_condition"),
                    Object::str(*g.termination_condition));
        } else {
            const char* type = "concrete_graph";
            if (id == wf.root()) type = "simulation_workflow";
            else if (wf.is_logical_node(id)) type = "logical_node";
            else if (wf.is_workflow_node(id)) type = "workflow_node";
            add(st, Pred{true, {}}, detail::osmo_ref(type));
            for (const auto& r : g.contained)
                add(st, pred("contains"), Object::iri(entity_name(r)));
        }
        for (const auto& p : g.starting_points)
            add(st, pred("has_starting_point"), Object::iri(entity_name(p)));
        for (const auto& p : g.terminal_points)
            add(st, pred("has_terminal_point"), Object::iri(entity_name(p)));
    }

    // instantiation (emitted on the concrete template side)
    for (const auto& [id, g] : wf.graphs())
        if (g.kind == wf::GraphKind::Virtual && g.instantiated_by) {
            Statement& st = statement(*g.instantiated_by);
            add(st, pred("instantiates"), Object::iri(entity_name(id)));
        }

    for (const auto& [sec, g] : wf.applies_to_edges()) {
        Statement& st = statement(sec);
        add(st, pred("applies_to"), Object::iri(entity_name(g)));
    }
    for (const auto& [a, b] : wf.causal_edges()) {
        Statement& st = statement(a);
        add(st, pred("is_direct_cause_of"), Object::iri(entity_name(b)));
    }
    for (const auto& [a, b] : wf.coupling_pairs()) {
        Statement& st = statement(a);
        add(st, pred("is_coupled_with"), Object::iri(entity_name(b)));
    }
    for (const auto& o : wf.simulation_outcome()) {
        Statement& st = statement(wf.root());
        add(st, pred("has_simulation_outcome"), Object::iri(entity_name(o)));
    }
    return doc;
}

// ---------------------------------------------------------------------------
// Triples -> workflow

namespace detail {

inline const Object& single_object(const PredObjects& po, const Name& subject) {
    if (po.objects.size() != 1)
        throw StructuralError("predicate " + po.predicate.str() + " on " +
                              subject.str() + " needs exactly one object");
    return po.objects[0];
}

inline wf::EntityId iri_object(const Object& o, const std::string& context) {
    if (o.kind != Object::Kind::Iri || !o.name.prefix.empty())
        throw StructuralError(context + ": expected a local entity reference");
    return o.name.local;
}

inline std::string string_object(const Object& o, const std::string& context) {
    if (o.kind != Object::Kind::String)
        throw StructuralError(context + ": expected a string literal");
    return o.text;
}

inline bool bool_object(const Object& o, const std::string& context) {
    if (o.kind != Object::Kind::Boolean)
        throw StructuralError(context + ": expected a boolean literal");
    return o.boolean;
}

inline wf::Aspect parse_aspect(const onto::ClassId& declared, const Object& o,
                               const onto::VocabularyStore& vocab,
                               const std::string& context) {
    if (o.kind != Object::Kind::Blank)
        throw StructuralError(context + ": aspect content must be a blank node");
    wf::Aspect a;
    a.aspect_class = declared;
    for (const auto& po : o.blank) {
        if (po.predicate.is_type) {
            auto cls = to_class(single_object(po, {"", context}).name);
            if (!vocab.has_class(cls))
                throw VocabularyViolationError("unknown aspect class " + cls.str());
            a.aspect_class = cls;
        } else if (po.predicate.name == Name{"osmo", "has_aspect_text_content"}) {
            a.text = string_object(single_object(po, {"", context}), context);
        } else if (po.predicate.name == Name{"osmo", "has_aspect_object_content"}) {
            const Object& content = single_object(po, {"", context});
            if (content.kind == Object::Kind::String) {
                a.external = content.text;
            } else if (content.kind == Object::Kind::Blank) {
                for (const auto& inner : content.blank)
                    if (inner.predicate.is_type)
                        a.object = to_class(single_object(inner, {"", context}).name);
                if (!a.object)
                    throw StructuralError(context + ": untyped aspect object content");
                if (!vocab.has_class(*a.object) && !vocab.has_individual(*a.object))
                    throw VocabularyViolationError("unknown aspect content " +
                                                   a.object->str());
            } else if (content.kind == Object::Kind::Iri) {
                auto cls = to_class(content.name);
                if (!vocab.has_class(cls) && !vocab.has_individual(cls))
                    throw VocabularyViolationError("unknown aspect content " + cls.str());
                a.object = cls;
            } else {
                throw StructuralError(context + ": malformed aspect object content");
            }
        } else {
            throw VocabularyViolationError("unexpected predicate " +
                                           po.predicate.str() + " inside aspect of " +
                                           context);
        }
    }
    return a;
}

inline wf::LogicalValue parse_value(const Object& o, const std::string& context) {
    if (o.kind != Object::Kind::Blank)
        throw StructuralError(context + ": logical value must be a blank node");
    std::optional<double> numeric;
    std::optional<std::string> str, vec, unit;
    for (const auto& po : o.blank) {
        if (po.predicate.is_type) continue;
        const Object& v = single_object(po, {"", context});
        if (po.predicate.name == Name{"osmo", "has_numeric_value"}) {
            numeric = v.kind == Object::Kind::Integer ? double(v.integer) : v.real;
        } else if (po.predicate.name == Name{"osmo", "has_string_value"}) {
            str = string_object(v, context);
        } else if (po.predicate.name == Name{"osmo", "has_vector_value"}) {
            vec = string_object(v, context);
        } else if (po.predicate.name == Name{"osmo", "has_unit"}) {
            unit = string_object(v, context);
        } else {
            throw VocabularyViolationError("unexpected predicate " +
                                           po.predicate.str() + " inside value of " +
                                           context);
        }
    }
    if (numeric && unit) return wf::Quantity{*numeric, *unit};
    if (numeric) return *numeric;
    if (str) return *str;
    if (vec) {
        std::vector<double> values;
        const char* p = vec->data();
        const char* end = p + vec->size();
        while (p < end) {
            while (p < end && *p == ' ') ++p;
            if (p >= end) break;
            double d = 0;
            auto res = std::from_chars(p, end, d);
            if (res.ec != std::errc{})
                throw StructuralError(context + ": malformed vector value");
            values.push_back(d);
            p = res.ptr;
        }
        return values;
    }
    throw StructuralError(context + ": logical value carries no content");
}

}  // namespace detail

inline bool has_simulation_workflow_subject(const TtlDocument& doc) {
    for (const auto& st : doc.statements)
        for (const auto& po : st.preds)
            if (po.predicate.is_type)
                for (const auto& o : po.objects)
                    if (o.kind == Object::Kind::Iri &&
                        o.name == Name{"osmo", "simulation_workflow"})
                        return true;
    return false;
}

inline wf::SimulationWorkflow triples_to_workflow(
    const TtlDocument& doc,
    std::shared_ptr<const onto::VocabularyStore> vocab =
        wf::shared_builtin_vocabulary()) {
    using detail::iri_object;
    using detail::single_object;
    using detail::to_class;

    auto statements = ttl::detail::canonical_statements(doc);

    // the root subject typed simulation_workflow identifies the workflow
    std::vector<wf::EntityId> roots;
    std::map<wf::EntityId, onto::ClassId> entity_type;
    for (const auto& st : statements) {
        if (!st.subject.prefix.empty())
            throw StructuralError("workflow entities must use the local prefix: " +
                                  st.subject.str());
        for (const auto& po : st.preds) {
            if (!po.predicate.is_type) continue;
            for (const auto& o : po.objects) {
                if (o.kind != Object::Kind::Iri)
                    throw StructuralError("type of " + st.subject.str() +
                                          " must be a class");
                auto cls = to_class(o.name);
                if (!vocab->has_class(cls))
                    throw VocabularyViolationError("unknown class " + cls.str());
                if (entity_type.count(st.subject.local))
                    throw StructuralError("entity " + st.subject.str() +
                                          " declared with two types");
                entity_type[st.subject.local] = cls;
                if (cls == onto::osmo("simulation_workflow"))
                    roots.push_back(st.subject.local);
            }
        }
        if (!entity_type.count(st.subject.local))
            throw StructuralError("entity " + st.subject.str() + " has no type");
    }
    if (roots.size() != 1)
        throw StructuralError("expected exactly one simulation_workflow subject, found " +
                              std::to_string(roots.size()));

    wf::SimulationWorkflow out(roots[0], vocab);

    auto is_a = [&](const onto::ClassId& t, const char* cls) {
        return vocab->is_subclass_of(t, onto::osmo(cls));
    };

    // create the entity shells
    for (const auto& [id, type] : entity_type) {
        if (id == roots[0]) continue;
        if (is_a(type, "section")) {
            wf::Section s;
            s.id = id;
            if (type == onto::osmo("use_case")) s.kind = wf::SectionKind::UseCase;
            else if (type == onto::osmo("materials_model"))
                s.kind = wf::SectionKind::MaterialsModel;
            else if (type == onto::osmo("solver")) s.kind = wf::SectionKind::Solver;
            else if (type == onto::osmo("processor")) s.kind = wf::SectionKind::Processor;
            else throw VocabularyViolationError("abstract section type " + type.str());
            wf::RawTables::sections(out)[id] = std::move(s);
        } else if (is_a(type, "logical_resource")) {
            wf::RawTables::resources(out)[id] = {id, false, {}};
        } else if (is_a(type, "logical_access")) {
            wf::RawTables::accesses(out)[id] = {id, "", "", {}, {}};
        } else if (is_a(type, "logical_variable")) {
            wf::RawTables::variables(out)[id] = {id, "", {}};
        } else if (is_a(type, "workflow_graph")) {
            wf::WorkflowGraph g;
            g.id = id;
            if (type == onto::osmo("virtual_graph")) {
                g.kind = wf::GraphKind::Virtual;
            } else {
                g.kind = wf::GraphKind::Concrete;
                g.declared_node = is_a(type, "workflow_node");
            }
            wf::RawTables::graphs(out)[id] = std::move(g);
        } else {
            throw VocabularyViolationError("type " + type.str() +
                                           " is not a workflow entity class");
        }
    }

    // fill fields
    for (const auto& st : statements) {
        const wf::EntityId id = st.subject.local;
        const onto::ClassId type = entity_type.at(id);
        const std::string ctx = st.subject.str();
        for (const auto& po : st.preds) {
            if (po.predicate.is_type) continue;
            const Name& p = po.predicate.name;
            if (p.prefix != "osmo")
                throw VocabularyViolationError("unexpected predicate " + p.str() +
                                               " on " + ctx);
            const std::string& n = p.local;
            if (!vocab->has_relation(onto::ClassId{"osmo", n}))
                throw VocabularyViolationError("unknown predicate " + p.str());

            if (n == "contains") {
                auto& g = wf::RawTables::graphs(out).at(id);
                for (const auto& o : po.objects)
                    g.contained.push_back(iri_object(o, ctx));
            } else if (n == "has_starting_point" || n == "has_terminal_point") {
                auto& g = wf::RawTables::graphs(out).at(id);
                auto& vecp = n == "has_starting_point" ? g.starting_points
                                                       : g.terminal_points;
                for (const auto& o : po.objects) vecp.push_back(iri_object(o, ctx));
            } else if (n == "instantiates") {
                for (const auto& o : po.objects) {
                    auto target = iri_object(o, ctx);
                    auto it = wf::RawTables::graphs(out).find(target);
                    if (it == wf::RawTables::graphs(out).end())
                        throw StructuralError(ctx + " instantiates unknown graph " +
                                              target);
                    if (it->second.instantiated_by)
                        throw StructuralError("virtual graph " + target +
                                              " instantiated twice");
                    it->second.instantiated_by = id;
                }
            } else if (n == "has_multiplicity") {
                auto s = detail::string_object(single_object(po, st.subject), ctx);
                auto& g = wf::RawTables::graphs(out).at(id);
                if (s == "concurrent_instances")
                    g.multiplicity = wf::Multiplicity::ConcurrentInstances;
                else if (s == "iterative_loop")
                    g.multiplicity = wf::Multiplicity::IterativeLoop;
                else
                    throw StructuralError(ctx + ": unknown multiplicity " + s);
            } else if (n == "has_instance_count") {
                const Object& o = single_object(po, st.subject);
                if (o.kind != Object::Kind::Integer)
                    throw StructuralError(ctx + ": instance count must be an integer");
                wf::RawTables::graphs(out).at(id).instance_count = o.integer;
            } else if (n == "has_termination_condition") {
                wf::RawTables::graphs(out).at(id).termination_condition =
                    detail::string_object(single_object(po, st.subject), ctx);
            } else if (n == "is_direct_cause_of") {
                for (const auto& o : po.objects)
                    wf::RawTables::causal(out).emplace_back(id, iri_object(o, ctx));
            } else if (n == "is_coupled_with") {
                for (const auto& o : po.objects)
                    wf::RawTables::coupling(out).emplace_back(id, iri_object(o, ctx));
            } else if (n == "applies_to") {
                for (const auto& o : po.objects)
                    wf::RawTables::applies_to(out).emplace_back(id, iri_object(o, ctx));
            } else if (n == "has_simulation_outcome") {
                for (const auto& o : po.objects)
                    wf::RawTables::outcome(out).insert(iri_object(o, ctx));
            } else if (n == "is_interactive") {
                wf::RawTables::resources(out).at(id).interactive =
                    detail::bool_object(single_object(po, st.subject), ctx);
            } else if (n == "has_stored_variable") {
                for (const auto& o : po.objects)
                    wf::RawTables::resources(out).at(id).stored_variables.push_back(
                        iri_object(o, ctx));
            } else if (n == "has_name") {
                wf::RawTables::variables(out).at(id).name =
                    detail::string_object(single_object(po, st.subject), ctx);
            } else if (n == "has_value") {
                wf::RawTables::variables(out).at(id).value =
                    detail::parse_value(single_object(po, st.subject), ctx);
            } else if (n == "has_access_point") {
                wf::RawTables::accesses(out).at(id).access_point =
                    iri_object(single_object(po, st.subject), ctx);
            } else if (n == "has_resource") {
                wf::RawTables::accesses(out).at(id).resource =
                    iri_object(single_object(po, st.subject), ctx);
            } else if (n == "has_carried_variable") {
                for (const auto& o : po.objects)
                    wf::RawTables::accesses(out).at(id).carried_variables.push_back(
                        iri_object(o, ctx));
            } else if (n == "reads_initially" || n == "reads_parameters" ||
                       n == "writes_finally" || n == "reads_during_execution" ||
                       n == "writes_during_execution") {
                bool v = detail::bool_object(single_object(po, st.subject), ctx);
                auto& f = wf::RawTables::accesses(out).at(id).flags;
                if (n == "reads_initially") f.reads_initially = v;
                else if (n == "reads_parameters") f.reads_parameters = v;
                else if (n == "writes_finally") f.writes_finally = v;
                else if (n == "reads_during_execution") f.reads_during_execution = v;
                else f.writes_during_execution = v;
            } else if (n == "has_internal_lv" || n == "has_logical_io") {
                auto& s = wf::RawTables::sections(out).at(id);
                auto& vecp = n == "has_internal_lv" ? s.internal_variables : s.logical_io;
                for (const auto& o : po.objects) vecp.push_back(iri_object(o, ctx));
            } else if (n.rfind("has_", 0) == 0 &&
                       vocab->has_class(onto::ClassId{"osmo", n.substr(4)}) &&
                       vocab->is_subclass_of(onto::ClassId{"osmo", n.substr(4)},
                                             onto::osmo("aspect"))) {
                for (const auto& o : po.objects)
                    wf::RawTables::sections(out).at(id).aspects.push_back(
                        detail::parse_aspect(onto::ClassId{"osmo", n.substr(4)}, o,
                                             *vocab, ctx));
            } else if (n == "has_aspect") {
                for (const auto& o : po.objects)
                    wf::RawTables::sections(out).at(id).aspects.push_back(
                        detail::parse_aspect(onto::osmo("aspect"), o, *vocab, ctx));
            } else {
                throw VocabularyViolationError("predicate " + p.str() +
                                               " not mapped to the workflow model");
            }
        }
    }

    // the node law is structural: a declared node must contain exactly one
    // workflow resource
    for (const auto& [gid, g] : out.graphs()) {
        if (g.kind == wf::GraphKind::Concrete && g.declared_node &&
            g.contained.size() != 1)
            throw StructuralError("workflow node " + gid + " contains " +
                                  std::to_string(g.contained.size()) +
                                  " resources, expected exactly 1");
        if (g.kind == wf::GraphKind::Virtual && !g.contained.empty())
            throw StructuralError("virtual graph " + gid + " may not contain resources");
    }
    return out;
}

// ---------------------------------------------------------------------------
// Generic store-level assertion of a document (used by validation): every
// statement is asserted into the store, blank nodes are skolemized with
// deterministic ids derived from parent subject, predicate, and ordinal.

namespace detail {

inline onto::Term literal_term(const Object& o) {
    switch (o.kind) {
        case Object::Kind::String:
            return onto::Literal{onto::LiteralType::String, o.text, ""};
        case Object::Kind::Integer:
            return onto::Literal{onto::LiteralType::Integer, o.lexical, ""};
        case Object::Kind::Real:
            return onto::Literal{onto::LiteralType::Real, o.lexical, ""};
        case Object::Kind::Boolean:
            return onto::Literal::boolean(o.boolean);
        default:
            throw StructuralError("not a literal");
    }
}

inline void assert_subject(onto::VocabularyStore& store, const onto::ClassId& subject,
                           const std::vector<PredObjects>& preds,
                           ValidationReport& findings);

inline void assert_object(onto::VocabularyStore& store, const onto::ClassId& subject,
                          const onto::ClassId& predicate, const Object& o,
                          int ordinal, ValidationReport& findings) {
    try {
        if (o.kind == Object::Kind::Iri) {
            store.assert_triple(subject, predicate, onto::ClassId{o.name.prefix,
                                                                  o.name.local});
        } else if (o.kind == Object::Kind::Blank) {
            onto::ClassId skolem{"", subject.name + "__" + predicate.name + "__" +
                                         std::to_string(ordinal)};
            store.declare_individual(skolem, {});
            assert_subject(store, skolem, o.blank, findings);
            store.assert_triple(subject, predicate, skolem);
        } else {
            store.assert_triple(subject, predicate, literal_term(o));
        }
    } catch (const Error& e) {
        findings.add_error("assertion_failed", subject.str(), e.what());
    }
}

inline void assert_subject(onto::VocabularyStore& store, const onto::ClassId& subject,
                           const std::vector<PredObjects>& preds,
                           ValidationReport& findings) {
    // types first so later domain checks see them
    for (const auto& po : preds) {
        if (!po.predicate.is_type) continue;
        for (const auto& o : po.objects) {
            if (o.kind != Object::Kind::Iri) {
                findings.add_error("assertion_failed", subject.str(),
                                   "type object must be a class");
                continue;
            }
            try {
                store.assert_triple(subject, onto::rdf_type(),
                                    onto::ClassId{o.name.prefix, o.name.local});
            } catch (const Error& e) {
                findings.add_error("assertion_failed", subject.str(), e.what());
            }
        }
    }
    if (!store.has_individual(subject) && !store.has_class(subject)) {
        try {
            store.declare_individual(subject, {});
        } catch (const Error& e) {
            findings.add_error("assertion_failed", subject.str(), e.what());
            return;
        }
    }
    std::map<std::string, int> ordinals;
    for (const auto& po : preds) {
        if (po.predicate.is_type) continue;
        onto::ClassId predicate{po.predicate.name.prefix, po.predicate.name.local};
        for (const auto& o : po.objects)
            assert_object(store, subject, predicate, o, ordinals[predicate.name]++,
                          findings);
    }
}

}  // namespace detail

// Asserts every statement of `doc` into `store`; import problems (unknown
// predicates or classes) are reported, not thrown.
inline ValidationReport assert_document(const TtlDocument& doc,
                                        onto::VocabularyStore& store) {
    ValidationReport findings;
    for (const auto& st : ttl::detail::canonical_statements(doc))
        detail::assert_subject(store, onto::ClassId{st.subject.prefix, st.subject.local},
                               st.preds, findings);
    return findings;
}

}  // namespace osmoflow::ttl
