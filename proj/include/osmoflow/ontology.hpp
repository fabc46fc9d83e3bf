#pragma once
// In-memory vocabulary store for the OSMO and VISO class hierarchies:
// class registration with multi-parent subclassing, relation definitions
// with domain/range, generic triple assertion, the physical-equation
// taxonomy, and store-level validation.

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "osmoflow/errors.hpp"

namespace osmoflow::onto {

// ---------------------------------------------------------------------------
// Identifiers and terms

struct ClassId {
    std::string ns;    // "osmo", "viso", "viso-el", "viso-am", "viso-co", "" (local)
    std::string name;

    std::string str() const { return ns + ":" + name; }

    auto operator<=>(const ClassId&) const = default;
};

inline ClassId osmo(std::string name) { return {"osmo", std::move(name)}; }
inline ClassId viso(std::string name) { return {"viso", std::move(name)}; }
inline ClassId viso_el(std::string name) { return {"viso-el", std::move(name)}; }
inline ClassId viso_am(std::string name) { return {"viso-am", std::move(name)}; }
inline ClassId viso_co(std::string name) { return {"viso-co", std::move(name)}; }
inline ClassId local(std::string name) { return {"", std::move(name)}; }

// Built-in predicates for typing and subclassing; reserved, always present.
inline ClassId rdf_type() { return {"rdf", "type"}; }
inline ClassId rdfs_subclass_of() { return {"rdfs", "subClassOf"}; }

enum class LiteralType { String, Boolean, Integer, Real, DateTime };

// Unit-bearing quantities are (real value, unit string) pairs; `unit` is
// empty for plain literals.
struct Literal {
    LiteralType type = LiteralType::String;
    std::string lexical;
    std::string unit;

    static Literal str(std::string s) { return {LiteralType::String, std::move(s), ""}; }
    static Literal boolean(bool b) { return {LiteralType::Boolean, b ? "true" : "false", ""}; }
    static Literal integer(long long v) { return {LiteralType::Integer, std::to_string(v), ""}; }
    static Literal real(double v, std::string unit = "");

    auto operator<=>(const Literal&) const = default;
};

using Term = std::variant<ClassId, Literal>;

inline std::string term_str(const Term& t) {
    if (const auto* c = std::get_if<ClassId>(&t)) return c->str();
    const auto& lit = std::get<Literal>(t);
    return lit.type == LiteralType::String ? "\"" + lit.lexical + "\"" : lit.lexical;
}

struct Triple {
    ClassId subject;
    ClassId predicate;
    Term object;

    friend bool operator==(const Triple&, const Triple&) = default;
};

// ---------------------------------------------------------------------------
// Relation and taxonomy definitions

struct RelationDef {
    ClassId id;
    std::vector<ClassId> domain;              // non-empty
    std::vector<ClassId> range;               // object ranges; may be empty for pure data properties
    std::vector<LiteralType> literal_range;   // allowed literal object types
    bool symmetric = false;
    bool functional = false;
};

enum class Granularity { Electronic, Atomistic, Mesoscopic, Continuum };

inline std::string to_string(Granularity g) {
    switch (g) {
        case Granularity::Electronic: return "ELECTRONIC";
        case Granularity::Atomistic: return "ATOMISTIC";
        case Granularity::Mesoscopic: return "MESOSCOPIC";
        case Granularity::Continuum: return "CONTINUUM";
    }
    return "";
}

struct PeTypeInfo {
    std::string pe_type_id;   // e.g. "A.3"
    Granularity granularity = Granularity::Atomistic;
    ClassId class_name;
    std::string description;
    std::optional<std::string> romm_no;
};

// One admissible aspect of a section kind. Functional aspects may appear
// at most once per section. `object_content` lists the classes admissible
// as object content; aspects without any take text or an opaque external
// reference only.
struct AspectDef {
    ClassId id;
    std::string moda_no;
    bool functional = false;
    std::vector<ClassId> object_content;
};

// ---------------------------------------------------------------------------
// Errors

struct DuplicateClassError : Error { using Error::Error; };
struct UnknownParentError : Error { using Error::Error; };
struct UnknownNamespaceError : Error { using Error::Error; };
struct CycleDetectedError : Error { using Error::Error; };
struct UnknownPredicateError : Error { using Error::Error; };
struct UnknownSubjectError : Error { using Error::Error; };
struct UnknownClassError : Error { using Error::Error; };
struct UnknownPeTypeError : Error { using Error::Error; };
struct DuplicateRelationError : Error { using Error::Error; };
struct InvalidRelationError : Error { using Error::Error; };
struct InvalidTwinError : Error { using Error::Error; };

// ---------------------------------------------------------------------------
// VocabularyStore

class VocabularyStore {
public:
    VocabularyStore() {
        namespaces_ = {"osmo", "viso", "viso-el", "viso-am", "viso-co", "",
                       "rdf", "rdfs"};
    }

    // --- classes -----------------------------------------------------------

    void register_class(const ClassId& id, const std::vector<ClassId>& parents) {
        if (!namespaces_.count(id.ns))
            throw UnknownNamespaceError("unregistered namespace: " + id.str());
        if (classes_.count(id))
            throw DuplicateClassError("class already registered: " + id.str());
        for (const auto& p : parents) {
            if (p == id)
                throw CycleDetectedError("class cannot subclass itself: " + id.str());
            if (!classes_.count(p))
                throw UnknownParentError("unknown parent " + p.str() + " for " + id.str());
        }
        auto sorted = parents;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        classes_[id] = std::move(sorted);
    }

    bool has_class(const ClassId& id) const { return classes_.count(id) != 0; }

    const std::vector<ClassId>& parents_of(const ClassId& id) const {
        auto it = classes_.find(id);
        if (it == classes_.end())
            throw UnknownClassError("unknown class: " + id.str());
        return it->second;
    }

    // Reflexive-transitive closure over subclass edges.
    bool is_subclass_of(const ClassId& a, const ClassId& b) const {
        if (!classes_.count(a)) throw UnknownClassError("unknown class: " + a.str());
        if (!classes_.count(b)) throw UnknownClassError("unknown class: " + b.str());
        return reaches(a, b);
    }

    // All ancestors of `id`, including itself, sorted.
    std::vector<ClassId> ancestors(const ClassId& id) const {
        if (!classes_.count(id)) throw UnknownClassError("unknown class: " + id.str());
        std::set<ClassId> seen;
        std::vector<ClassId> stack{id};
        while (!stack.empty()) {
            ClassId c = stack.back();
            stack.pop_back();
            if (!seen.insert(c).second) continue;
            for (const auto& p : classes_.at(c)) stack.push_back(p);
        }
        return {seen.begin(), seen.end()};
    }

    std::vector<ClassId> subclasses_of(const ClassId& id, bool direct_only = false) const {
        if (!classes_.count(id)) throw UnknownClassError("unknown class: " + id.str());
        std::vector<ClassId> out;
        for (const auto& [c, parents] : classes_) {
            if (c == id) continue;
            if (direct_only) {
                if (std::find(parents.begin(), parents.end(), id) != parents.end())
                    out.push_back(c);
            } else if (reaches(c, id)) {
                out.push_back(c);
            }
        }
        return out;
    }

    std::vector<ClassId> all_classes() const {
        std::vector<ClassId> out;
        out.reserve(classes_.size());
        for (const auto& [c, _] : classes_) out.push_back(c);
        return out;
    }

    // --- relations ----------------------------------------------------------

    void register_relation(RelationDef def) {
        if (relations_.count(def.id))
            throw DuplicateRelationError("relation already registered: " + def.id.str());
        if (def.domain.empty())
            throw InvalidRelationError("relation domain empty: " + def.id.str());
        if (def.range.empty() && def.literal_range.empty())
            throw InvalidRelationError("relation range empty: " + def.id.str());
        if (def.symmetric && def.domain != def.range)
            throw InvalidRelationError("symmetric relation must have domain = range: " +
                                       def.id.str());
        for (const auto& c : def.domain)
            if (!classes_.count(c))
                throw UnknownClassError("relation domain class unknown: " + c.str());
        for (const auto& c : def.range)
            if (!classes_.count(c))
                throw UnknownClassError("relation range class unknown: " + c.str());
        relations_[def.id] = std::move(def);
    }

    bool has_relation(const ClassId& id) const { return relations_.count(id) != 0; }

    const RelationDef& relation(const ClassId& id) const {
        auto it = relations_.find(id);
        if (it == relations_.end())
            throw UnknownPredicateError("unknown relation: " + id.str());
        return it->second;
    }

    // --- individuals ---------------------------------------------------------

    void declare_individual(const ClassId& id, const std::vector<ClassId>& types) {
        if (!namespaces_.count(id.ns))
            throw UnknownNamespaceError("unregistered namespace: " + id.str());
        for (const auto& t : types)
            if (!classes_.count(t))
                throw UnknownClassError("unknown type " + t.str() + " for " + id.str());
        auto& decl = individuals_[id];
        for (const auto& t : types)
            if (std::find(decl.begin(), decl.end(), t) == decl.end()) decl.push_back(t);
    }

    bool has_individual(const ClassId& id) const { return individuals_.count(id) != 0; }

    std::vector<ClassId> declared_types(const ClassId& id) const {
        auto it = individuals_.find(id);
        return it == individuals_.end() ? std::vector<ClassId>{} : it->second;
    }

    // True iff `id` has a declared type whose closure contains `cls`.
    bool individual_is_a(const ClassId& id, const ClassId& cls) const {
        for (const auto& t : declared_types(id))
            if (classes_.count(t) && classes_.count(cls) && reaches(t, cls)) return true;
        return false;
    }

    // --- triples -------------------------------------------------------------

    void assert_triple(const ClassId& subject, const ClassId& predicate, const Term& object) {
        if (predicate == rdf_type()) {
            const auto* cls = std::get_if<ClassId>(&object);
            if (!cls) throw UnknownClassError("type object must be a class");
            declare_individual(subject, {*cls});
            return;
        }
        if (predicate == rdfs_subclass_of()) {
            const auto* cls = std::get_if<ClassId>(&object);
            if (!cls) throw UnknownClassError("subclass object must be a class");
            add_subclass_edge(subject, *cls);
            return;
        }
        auto it = relations_.find(predicate);
        if (it == relations_.end())
            throw UnknownPredicateError("unknown predicate: " + predicate.str());
        if (!individuals_.count(subject) && !classes_.count(subject))
            throw UnknownSubjectError("unknown subject: " + subject.str());
        if (predicate == viso("is_modelling_twin_of")) {
            const auto* obj = std::get_if<ClassId>(&object);
            if (!obj || !individuals_.count(subject) || classes_.count(subject) ||
                !individuals_.count(*obj) || classes_.count(*obj))
                throw InvalidTwinError(
                    "is_modelling_twin_of holds between declared individuals only");
        }
        triples_.push_back({subject, predicate, object});
        if (it->second.symmetric) {
            const auto* obj = std::get_if<ClassId>(&object);
            if (obj && !(*obj == subject))
                triples_.push_back({*obj, predicate, Term{subject}});
        }
    }

    const std::vector<Triple>& triples() const { return triples_; }

    bool has_triple(const ClassId& s, const ClassId& p, const Term& o) const {
        for (const auto& t : triples_)
            if (t.subject == s && t.predicate == p && t.object == o) return true;
        return false;
    }

    std::vector<Triple> query(const std::optional<ClassId>& s,
                              const std::optional<ClassId>& p,
                              const std::optional<Term>& o = std::nullopt) const {
        std::vector<Triple> out;
        for (const auto& t : triples_) {
            if (s && !(t.subject == *s)) continue;
            if (p && !(t.predicate == *p)) continue;
            if (o && !(t.object == *o)) continue;
            out.push_back(t);
        }
        return out;
    }

    std::vector<std::pair<ClassId, ClassId>> twins() const {
        std::vector<std::pair<ClassId, ClassId>> out;
        for (const auto& t : triples_)
            if (t.predicate == viso("is_modelling_twin_of"))
                out.emplace_back(t.subject, std::get<ClassId>(t.object));
        return out;
    }

    // --- physical-equation taxonomy -------------------------------------------

    const PeTypeInfo& pe_type_lookup(const std::string& pe_type_id) const {
        if (!pe_id_syntax_ok(pe_type_id))
            throw UnknownPeTypeError("malformed PE type id: " + pe_type_id);
        auto it = pe_types_.find(pe_type_id);
        if (it == pe_types_.end())
            throw UnknownPeTypeError("unknown PE type id: " + pe_type_id);
        return it->second;
    }

    const std::map<std::string, PeTypeInfo>& pe_types() const { return pe_types_; }

    // Tab.-1 style association between a model type and its PE type ids.
    std::vector<std::string> pe_ids_for_model_type(const std::string& model_type) const {
        auto it = model_type_pe_.find(model_type);
        if (it == model_type_pe_.end())
            throw UnknownPeTypeError("no PE mapping for model type: " + model_type);
        return it->second;
    }

    // --- section aspects --------------------------------------------------------

    const std::vector<AspectDef>& aspects_for(const ClassId& section_class) const {
        static const std::vector<AspectDef> none;
        auto it = aspect_table_.find(section_class);
        return it == aspect_table_.end() ? none : it->second;
    }

    const AspectDef* find_aspect(const ClassId& section_class, const ClassId& aspect) const {
        for (const auto& a : aspects_for(section_class))
            if (a.id == aspect) return &a;
        return nullptr;
    }

    // --- validation ---------------------------------------------------------------

    // Diagnoses domain/range violations, functional-relation duplication, and
    // symmetric-storage gaps. Pure; two consecutive calls yield equal reports.
    ValidationReport validate() const {
        ValidationReport report;
        for (const auto& t : triples_) {
            auto rel_it = relations_.find(t.predicate);
            if (rel_it == relations_.end()) {
                report.add_error("unknown_predicate", triple_str(t),
                                 "predicate is not a registered relation");
                continue;
            }
            const RelationDef& rel = rel_it->second;
            check_domain(t, rel, report);
            check_range(t, rel, report);
            if (rel.symmetric) {
                const auto* obj = std::get_if<ClassId>(&t.object);
                if (obj && !has_triple(*obj, t.predicate, Term{t.subject}))
                    report.add_error("asymmetric_storage", triple_str(t),
                                     "symmetric relation stored in one direction only");
            }
        }
        check_functional(report);
        return report;
    }

    // Hooks used by the builtin loader; also available to extensions.
    void set_pe_type(PeTypeInfo info) { pe_types_[info.pe_type_id] = std::move(info); }
    void set_model_type_pe(const std::string& model_type, std::vector<std::string> ids) {
        model_type_pe_[model_type] = std::move(ids);
    }
    void set_aspects(const ClassId& section_class, std::vector<AspectDef> defs) {
        aspect_table_[section_class] = std::move(defs);
    }

private:
    bool reaches(const ClassId& from, const ClassId& to) const {
        if (from == to) return true;
        std::set<ClassId> seen;
        std::vector<ClassId> stack{from};
        while (!stack.empty()) {
            ClassId c = stack.back();
            stack.pop_back();
            if (!seen.insert(c).second) continue;
            auto it = classes_.find(c);
            if (it == classes_.end()) continue;
            for (const auto& p : it->second) {
                if (p == to) return true;
                stack.push_back(p);
            }
        }
        return false;
    }

    void add_subclass_edge(const ClassId& sub, const ClassId& super) {
        if (!classes_.count(sub)) throw UnknownClassError("unknown class: " + sub.str());
        if (!classes_.count(super)) throw UnknownClassError("unknown class: " + super.str());
        if (sub == super || reaches(super, sub))
            throw CycleDetectedError("subclass edge would create a cycle: " + sub.str() +
                                     " -> " + super.str());
        auto& parents = classes_[sub];
        if (std::find(parents.begin(), parents.end(), super) == parents.end()) {
            parents.push_back(super);
            std::sort(parents.begin(), parents.end());
        }
    }

    static bool pe_id_syntax_ok(const std::string& id) {
        // ^(EL|A|M|CO)\.[1-8]$
        std::size_t dot = id.find('.');
        if (dot == std::string::npos || dot + 2 != id.size()) return false;
        std::string prefix = id.substr(0, dot);
        char digit = id[dot + 1];
        if (digit < '1' || digit > '8') return false;
        return prefix == "EL" || prefix == "A" || prefix == "M" || prefix == "CO";
    }

    static std::string triple_str(const Triple& t) {
        return "(" + t.subject.str() + ", " + t.predicate.str() + ", " + term_str(t.object) + ")";
    }

    void check_domain(const Triple& t, const RelationDef& rel, ValidationReport& report) const {
        std::vector<ClassId> types = declared_types(t.subject);
        if (types.empty() && classes_.count(t.subject)) types = {t.subject};
        if (types.empty()) {
            report.add_warning("untyped_subject", triple_str(t),
                               "subject has no declared type");
            return;
        }
        for (const auto& ty : types)
            for (const auto& d : rel.domain)
                if (classes_.count(ty) && reaches(ty, d)) return;
        report.add_error("domain_violation", triple_str(t),
                         "subject type not within domain of " + rel.id.str() +
                             " (expected " + class_list(rel.domain) + ")");
    }

    void check_range(const Triple& t, const RelationDef& rel, ValidationReport& report) const {
        if (const auto* lit = std::get_if<Literal>(&t.object)) {
            if (rel.literal_range.empty()) {
                report.add_error("range_violation", triple_str(t),
                                 "literal object on object-valued relation " + rel.id.str());
            } else if (std::find(rel.literal_range.begin(), rel.literal_range.end(),
                                 lit->type) == rel.literal_range.end()) {
                report.add_error("range_violation", triple_str(t),
                                 "literal type not admissible for " + rel.id.str());
            }
            return;
        }
        const auto& obj = std::get<ClassId>(t.object);
        if (rel.range.empty()) {
            report.add_error("range_violation", triple_str(t),
                             "object-valued use of data relation " + rel.id.str());
            return;
        }
        std::vector<ClassId> types = declared_types(obj);
        if (types.empty() && classes_.count(obj)) types = {obj};
        if (types.empty()) {
            report.add_warning("untyped_object", triple_str(t),
                               "object has no declared type");
            return;
        }
        for (const auto& ty : types)
            for (const auto& r : rel.range)
                if (classes_.count(ty) && reaches(ty, r)) return;
        report.add_error("range_violation", triple_str(t),
                         "object type not within range of " + rel.id.str() +
                             " (expected " + class_list(rel.range) + ")");
    }

    void check_functional(ValidationReport& report) const {
        std::map<std::pair<ClassId, ClassId>, std::vector<Term>> seen;
        for (const auto& t : triples_) {
            auto rel_it = relations_.find(t.predicate);
            if (rel_it == relations_.end() || !rel_it->second.functional) continue;
            auto& objs = seen[{t.subject, t.predicate}];
            bool duplicate = false;
            for (const auto& o : objs)
                if (o == t.object) duplicate = true;
            if (!duplicate) objs.push_back(t.object);
        }
        for (const auto& [key, objs] : seen)
            if (objs.size() > 1)
                report.add_error("functional_violation",
                                 key.first.str() + " " + key.second.str(),
                                 "functional relation has " + std::to_string(objs.size()) +
                                     " distinct objects");
    }

    static std::string class_list(const std::vector<ClassId>& cs) {
        std::string out;
        for (std::size_t i = 0; i < cs.size(); ++i) {
            if (i) out += " or ";
            out += cs[i].str();
        }
        return out;
    }

    std::set<std::string> namespaces_;
    std::map<ClassId, std::vector<ClassId>> classes_;  // class -> direct parents
    std::map<ClassId, RelationDef> relations_;
    std::map<ClassId, std::vector<ClassId>> individuals_;  // individual -> declared types
    std::vector<Triple> triples_;
    std::map<std::string, PeTypeInfo> pe_types_;
    std::map<std::string, std::vector<std::string>> model_type_pe_;
    std::map<ClassId, std::vector<AspectDef>> aspect_table_;
};

inline Literal Literal::real(double v, std::string unit) {
    std::string s = std::to_string(v);
    // trim trailing zeros but keep one digit after the point
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        auto last = s.find_last_not_of('0');
        s.erase(std::max(last + 1, dot + 2));
    }
    return {LiteralType::Real, std::move(s), std::move(unit)};
}

// ---------------------------------------------------------------------------
// Builtin vocabulary

VocabularyStore load_builtin_vocabulary();

namespace detail {

inline void load_viso(VocabularyStore& s) {
    // upper level
    s.register_class(viso("software"), {});
    s.register_class(viso("software_tool"), {viso("software")});
    s.register_class(viso("agent"), {});
    s.register_class(viso("license"), {});
    s.register_class(viso("programming_language"), {});
    s.register_class(viso("modelling_related_entity"), {});
    s.register_class(viso("model_type"), {viso("modelling_related_entity")});
    s.register_class(viso("software_interface"), {});
    s.register_class(viso("software_update"), {});
    s.register_class(viso("model_feature"), {});
    s.register_class(viso("solver_feature"), {});

    // solver-feature branches
    s.register_class(viso_el("el_solver_feature"), {viso("solver_feature")});
    s.register_class(viso_am("am_solver_feature"), {viso("solver_feature")});
    s.register_class(viso_co("co_solver_feature"), {viso("solver_feature")});

    for (const char* n : {"basis_set", "electron_diagonalization", "electron_mixing",
                          "electron_smearing", "ionic_relaxation", "kpoint_mesh",
                          "symmetry_adapted_solver"})
        s.register_class(viso_el(n), {viso_el("el_solver_feature")});
    for (const char* n : {"barostat", "integrator", "electrostatic_solver",
                          "geometric_constraint_algorithm", "parallelization_scheme",
                          "sampling_algorithm", "thermostat"})
        s.register_class(viso_am(n), {viso_am("am_solver_feature")});
    for (const char* n : {"continuum_mesh", "divergence_scheme", "gradient_scheme",
                          "spatial_discretization_scheme", "temporal_discretization_scheme"})
        s.register_class(viso_co(n), {viso_co("co_solver_feature")});

    // model-feature split for the particle-based branch; the trait classes
    // are non-disjoint, hence plain multi-parentable siblings here
    s.register_class(viso_am("am_model_feature"), {viso("model_feature")});
    s.register_class(viso_am("physical_equation_trait"), {viso_am("am_model_feature")});
    s.register_class(viso_am("materials_relation_trait"), {viso_am("am_model_feature")});
    s.register_class(viso_am("external_condition_trait"), {viso_am("am_model_feature")});
    s.register_class(viso_am("force_field"), {viso_am("materials_relation_trait")});

    // relations with software_tool domain
    s.register_relation({viso("has_feature"),
                         {viso("software_tool")},
                         {viso("model_feature"), viso("solver_feature")},
                         {}});
    s.register_relation({viso("is_compatible_with"),
                         {viso("software_tool")},
                         {viso("software_tool")},
                         {},
                         /*symmetric=*/true});
    s.register_relation({viso("is_tool_for_model"),
                         {viso("software_tool")},
                         {viso("model_type")},
                         {}});
    s.register_relation({viso("requires"),
                         {viso("software_tool")},
                         {viso("software")},
                         {}});
    s.register_relation({viso("is_modelling_twin_of"),
                         {viso("modelling_related_entity")},
                         {viso("modelling_related_entity")},
                         {},
                         /*symmetric=*/true});

    // model types considered so far, with their PE type ids
    for (const char* n : {"DFT", "MD", "MC", "DPD", "CFD", "EOS"})
        s.declare_individual(local(n), {viso("model_type")});
    s.set_model_type_pe("DFT", {"EL.1"});
    s.set_model_type_pe("MD", {"A.3", "M.3"});
    s.set_model_type_pe("MC", {"A.4", "M.4"});
    s.set_model_type_pe("DPD", {"M.3"});
    s.set_model_type_pe("CFD", {"CO.2"});
    s.set_model_type_pe("EOS", {"CO.5"});
}

inline void load_osmo_classes(VocabularyStore& s) {
    s.register_class(osmo("section_entity"), {});
    s.register_class(osmo("workflow_resource"), {});
    s.register_class(osmo("section"), {osmo("section_entity"), osmo("workflow_resource")});
    s.register_class(osmo("aspect"), {osmo("section_entity")});
    s.register_class(osmo("use_case"), {osmo("section")});
    s.register_class(osmo("materials_model"), {osmo("section")});
    s.register_class(osmo("solver"), {osmo("section")});
    s.register_class(osmo("processor"), {osmo("section")});

    s.register_class(osmo("workflow_graph"), {osmo("workflow_resource")});
    s.register_class(osmo("concrete_graph"), {osmo("workflow_graph")});
    s.register_class(osmo("virtual_graph"), {osmo("workflow_graph")});
    s.register_class(osmo("workflow_node"), {osmo("concrete_graph")});
    s.register_class(osmo("logical_node"), {osmo("workflow_node")});
    s.register_class(osmo("simulation_workflow"), {osmo("concrete_graph")});

    s.register_class(osmo("logical_resource"), {osmo("workflow_resource")});
    s.register_class(osmo("logical_access"), {});
    s.register_class(osmo("logical_variable"), {});
    s.register_class(osmo("logical_value"), {});
    s.register_class(osmo("condition"), {});
    s.register_class(osmo("timespan_information"), {});
    s.register_class(osmo("material"), {});
    s.register_class(osmo("granularity_level"), {});
    s.register_class(osmo("physical_equation_type"), {});

    for (const char* g : {"ELECTRONIC", "ATOMISTIC", "MESOSCOPIC", "CONTINUUM"})
        s.declare_individual(osmo(g), {osmo("granularity_level")});
}

inline void load_osmo_relations(VocabularyStore& s) {
    const ClassId wfg = osmo("workflow_graph");
    s.register_relation({osmo("applies_to"),
                         {osmo("use_case"), osmo("materials_model")},
                         {wfg},
                         {}});
    s.register_relation({osmo("contains"), {osmo("concrete_graph")},
                         {osmo("workflow_resource")}, {}});
    s.register_relation({osmo("has_access_point"), {osmo("logical_access")},
                         {osmo("section")}, {}, false, true});
    s.register_relation({osmo("has_carried_variable"), {osmo("logical_access")},
                         {osmo("logical_variable")}, {}});
    s.register_relation({osmo("has_internal_lv"), {osmo("section")},
                         {osmo("logical_variable")}, {}});
    s.register_relation({osmo("has_logical_io"), {osmo("section")},
                         {osmo("logical_variable")}, {}});
    s.register_relation({osmo("has_resource"), {osmo("logical_access")},
                         {osmo("logical_resource")}, {}, false, true});
    s.register_relation({osmo("has_simulation_outcome"), {osmo("simulation_workflow")},
                         {osmo("logical_node")}, {}});
    s.register_relation({osmo("has_starting_point"), {wfg}, {osmo("workflow_node")}, {}});
    s.register_relation({osmo("has_stored_variable"), {osmo("logical_resource")},
                         {osmo("logical_variable")}, {}});
    s.register_relation({osmo("has_terminal_point"), {wfg}, {osmo("workflow_node")}, {}});
    s.register_relation({osmo("has_value"), {osmo("logical_variable")},
                         {osmo("logical_value")}, {}, false, true});
    s.register_relation({osmo("instantiates"), {osmo("concrete_graph")},
                         {osmo("virtual_graph")}, {}});
    s.register_relation({osmo("is_coupled_with"), {wfg}, {wfg}, {}, /*symmetric=*/true});
    s.register_relation({osmo("is_direct_cause_of"), {wfg}, {wfg}, {}});
    // derived from is_direct_cause_of; registered so documents naming it are
    // recognized, but never stored by the workflow mapping
    s.register_relation({osmo("is_linked_to"), {wfg}, {wfg}, {}, /*symmetric=*/true});

    // data properties
    for (const char* flag : {"reads_initially", "reads_parameters", "writes_finally",
                             "reads_during_execution", "writes_during_execution"})
        s.register_relation({osmo(flag), {osmo("logical_access")}, {},
                             {LiteralType::Boolean}, false, true});
    s.register_relation({osmo("is_interactive"), {osmo("logical_resource")}, {},
                         {LiteralType::Boolean}, false, true});
    s.register_relation({osmo("has_name"), {osmo("logical_variable")}, {},
                         {LiteralType::String}, false, true});
    s.register_relation({osmo("has_multiplicity"), {osmo("virtual_graph")}, {},
                         {LiteralType::String}, false, true});
    s.register_relation({osmo("has_instance_count"), {osmo("virtual_graph")}, {},
                         {LiteralType::Integer}, false, true});
    s.register_relation({osmo("has_termination_condition"), {osmo("virtual_graph")}, {},
                         {LiteralType::String}, false, true});
    s.register_relation({osmo("has_numeric_value"), {osmo("logical_value")}, {},
                         {LiteralType::Real, LiteralType::Integer}, false, true});
    s.register_relation({osmo("has_string_value"), {osmo("logical_value")}, {},
                         {LiteralType::String}, false, true});
    s.register_relation({osmo("has_vector_value"), {osmo("logical_value")}, {},
                         {LiteralType::String}, false, true});
    s.register_relation({osmo("has_unit"), {osmo("logical_value")}, {},
                         {LiteralType::String}, false, true});
    s.register_relation({osmo("has_pe_type_id"), {osmo("physical_equation_type")}, {},
                         {LiteralType::String}, false, true});
}

struct AspectSpec {
    const char* name;
    const char* moda;
    bool functional;
    std::vector<ClassId> object_content;  // admissible object-content classes
};

inline void load_osmo_aspects(VocabularyStore& s) {
    // Aspect content referencing ontologies outside this vocabulary (IAO
    // citation, QUDT time, VIVO accuracy_assertion) is carried as an opaque
    // external-reference string instead of an object class.
    const std::map<ClassId, std::vector<AspectSpec>> table = {
        {osmo("use_case"),
         {{"use_case_description", "1.1", true, {}},
          {"use_case_material", "1.2", false, {osmo("material")}},
          {"use_case_geometry", "1.3", false, {osmo("condition")}},
          {"use_case_timespan", "1.4", false, {osmo("timespan_information")}},
          {"use_case_boundary_condition", "1.5", false, {osmo("condition")}},
          {"use_case_literature", "1.6", false, {}}}},
        {osmo("materials_model"),
         {{"model_type", "2.1", false, {osmo("physical_equation_type")}},
          {"model_granularity", "2.2", true, {osmo("granularity_level")}},
          {"physical_equation", "2.3", false, {osmo("condition")}},
          {"materials_relation", "2.4", false, {osmo("condition")}},
          {"model_boundary_condition", "2.5", false, {osmo("condition")}}}},
        {osmo("solver"),
         {{"solver_method_type", "3.1", false, {viso("solver_feature")}},
          {"solver_software", "3.2", false, {viso("software_tool")}},
          {"solver_timestep", "3.3", true, {}},
          {"computational_representation", "3.4", false, {osmo("condition")}},
          {"solver_boundary_condition", "3.5", false, {osmo("condition")}},
          {"solver_parameter", "3.6", false, {osmo("logical_variable")}}}},
        {osmo("processor"),
         {{"processor_method_type", "4.2", true, {}},
          {"processor_error_statement", "4.3", false, {}}}},
    };

    std::vector<ClassId> all_content_classes;
    s.register_relation({osmo("has_aspect"), {osmo("section")}, {osmo("aspect")}, {}});
    for (const auto& [section_class, aspects] : table) {
        std::vector<AspectDef> defs;
        for (const auto& a : aspects) {
            s.register_class(osmo(a.name), {osmo("aspect")});
            defs.push_back({osmo(a.name), a.moda, a.functional, a.object_content});
            s.register_relation({osmo(std::string("has_") + a.name),
                                 {section_class},
                                 {osmo(a.name)},
                                 {},
                                 false,
                                 a.functional});
            for (const auto& c : a.object_content)
                if (std::find(all_content_classes.begin(), all_content_classes.end(), c) ==
                    all_content_classes.end())
                    all_content_classes.push_back(c);
        }
        s.set_aspects(section_class, std::move(defs));
    }
    s.register_relation({osmo("has_aspect_text_content"), {osmo("aspect")}, {},
                         {LiteralType::String}});
    // external references are opaque IRI strings (literal branch)
    s.register_relation({osmo("has_aspect_object_content"), {osmo("aspect")},
                         all_content_classes, {LiteralType::String}});
}

inline void load_pe_taxonomy(VocabularyStore& s) {
    struct Row {
        const char* id;
        Granularity g;
        const char* cls;
        const char* romm;  // nullptr when absent
        const char* desc;
    };
    const Row rows[] = {
        {"EL.1", Granularity::Electronic, "pe_type_electronic_qm_abinitio", "1.1",
         "ab-initio quantum mechanical and first-principle models"},
        {"EL.2", Granularity::Electronic, "pe_type_electronic_manybody_effective", "1.2",
         "electronic many-body and effective Hamiltonian models"},
        {"EL.3", Granularity::Electronic, "pe_type_electronic_time_dependent", "1.3",
         "QM modelling of the response to time-dependent fields"},
        {"EL.4", Granularity::Electronic, "pe_type_electronic_charge_transport", "1.4",
         "statistical charge transport models"},
        {"EL.5", Granularity::Electronic, "pe_type_electronic_spin_transport", "1.5",
         "statistical electronic spin transport models"},
        {"A.1", Granularity::Atomistic, "pe_type_atomistic_density_functional", "2.1",
         "classical-mechanical DFT"},
        {"M.1", Granularity::Mesoscopic, "pe_type_mesoscopic_density_functional", "3.1",
         "classical-mechanical DFT"},
        {"A.2", Granularity::Atomistic, "pe_type_atomistic_molecular_statics", "2.2",
         "energy minimization and molecular statics"},
        {"M.2", Granularity::Mesoscopic, "pe_type_mesoscopic_molecular_statics", nullptr,
         "energy minimization and molecular statics"},
        {"A.3", Granularity::Atomistic, "pe_type_atomistic_molecular_dynamics", "2.3",
         "MD based on classical equations of motion"},
        {"M.3", Granularity::Mesoscopic, "pe_type_mesoscopic_molecular_dynamics", "3.2",
         "MD based on classical equations of motion"},
        {"A.4", Granularity::Atomistic, "pe_type_atomistic_partition_function", "2.4",
         "molecular partition-function equations (e.g., for MC)"},
        {"M.4", Granularity::Mesoscopic, "pe_type_mesoscopic_partition_function", "3.3",
         "molecular partition-function equations (e.g., for MC)"},
        {"A.5", Granularity::Atomistic, "pe_type_atomistic_spin_model", "2.5",
         "atomistic spin models"},
        {"M.5", Granularity::Mesoscopic, "pe_type_mesoscopic_micromagnetism", "3.4",
         "micromagnetism models"},
        {"A.6", Granularity::Atomistic, "pe_type_atomistic_statistical_transport",
         "2.6, 2.7", "molecular-level statistical transport models"},
        {"M.6", Granularity::Mesoscopic, "pe_type_mesoscopic_statistical_transport", "3.5",
         "molecular-level statistical transport models"},
        {"CO.1", Granularity::Continuum, "pe_type_continuum_solid_mechanics", "4.1",
         "continuum solid mechanics"},
        {"CO.2", Granularity::Continuum, "pe_type_continuum_fluid_mechanics", "4.2",
         "continuum fluid mechanics"},
        {"CO.3", Granularity::Continuum, "pe_type_continuum_heat_transfer", "4.3",
         "thermomechanics and continuum modelling of heat transfer"},
        {"CO.4", Granularity::Continuum, "pe_type_continuum_phase_field", "4.4.2",
         "phase field models and density gradient theory"},
        {"CO.5", Granularity::Continuum, "pe_type_continuum_thermodynamics", "4.4.1",
         "continuum thermodynamics"},
        {"CO.6", Granularity::Continuum, "pe_type_continuum_reaction_kinetics", "4.5",
         "continuum modelling of chemical reaction kinetics"},
        {"CO.7", Granularity::Continuum, "pe_type_continuum_electromagnetism", "4.6",
         "continuum electromagnetism models, including optics"},
        {"CO.8", Granularity::Continuum, "pe_type_continuum_process_model", "4.7",
         "continuum process models, including flowchart models"},
    };
    for (const Row& r : rows) {
        s.register_class(osmo(r.cls), {osmo("physical_equation_type")});
        PeTypeInfo info;
        info.pe_type_id = r.id;
        info.granularity = r.g;
        info.class_name = osmo(r.cls);
        info.description = r.desc;
        if (r.romm) info.romm_no = r.romm;
        s.set_pe_type(std::move(info));
    }
}

}  // namespace detail

inline VocabularyStore load_builtin_vocabulary() {
    VocabularyStore s;
    detail::load_viso(s);
    detail::load_osmo_classes(s);
    detail::load_osmo_relations(s);
    detail::load_osmo_aspects(s);
    detail::load_pe_taxonomy(s);
    return s;
}

}  // namespace osmoflow::onto
