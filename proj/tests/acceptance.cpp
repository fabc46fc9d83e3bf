// Acceptance suite: one check per shipped guarantee, each printing a
// pass/fail line with its runtime and budget. Exit status is the number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "osmoflow/campaign.hpp"
#include "osmoflow/cli.hpp"
#include "osmoflow/dot.hpp"
#include "osmoflow/eos_workflow.hpp"
#include "osmoflow/ontology.hpp"
#include "osmoflow/perfmodel.hpp"
#include "osmoflow/scheduler.hpp"
#include "osmoflow/task.hpp"
#include "osmoflow/ttl.hpp"
#include "osmoflow/workflow_ttl.hpp"

using namespace osmoflow;

namespace {

struct Check {
    std::vector<std::string> failures;

    void expect(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
    template <typename A, typename B>
    void expect_eq(const A& a, const B& b, const std::string& what) {
        if (!(a == b)) {
            std::ostringstream ss;
            ss << what << " (got " << a << ", want " << b << ")";
            failures.push_back(ss.str());
        }
    }
    void expect_close(double a, double b, double rel, const std::string& what) {
        double denom = std::max(std::abs(b), 1e-300);
        if (!(std::abs(a - b) / denom <= rel)) {
            std::ostringstream ss;
            ss << what << " (got " << a << ", want " << b << " within rel " << rel << ")";
            failures.push_back(ss.str());
        }
    }
};

double gaussian(std::uint64_t& s) {
    auto next = [&s]() {
        s += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    };
    double u1 = (next() >> 11) * 0x1p-53 + 0x1p-54;
    double u2 = (next() >> 11) * 0x1p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

std::filesystem::path fresh_dir(const std::string& tag) {
    auto dir = std::filesystem::temp_directory_path() / ("osmoflow_acc_" + tag);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

// ---------------------------------------------------------------------------
// criterion 1: vocabulary fidelity

void criterion_vocabulary(Check& c) {
    using namespace osmoflow::onto;
    VocabularyStore s = load_builtin_vocabulary();

    struct Row {
        const char* id;
        Granularity g;
        const char* cls;
    };
    const Row expected[] = {
        {"EL.1", Granularity::Electronic, "pe_type_electronic_qm_abinitio"},
        {"EL.2", Granularity::Electronic, "pe_type_electronic_manybody_effective"},
        {"EL.3", Granularity::Electronic, "pe_type_electronic_time_dependent"},
        {"EL.4", Granularity::Electronic, "pe_type_electronic_charge_transport"},
        {"EL.5", Granularity::Electronic, "pe_type_electronic_spin_transport"},
        {"A.1", Granularity::Atomistic, "pe_type_atomistic_density_functional"},
        {"A.2", Granularity::Atomistic, "pe_type_atomistic_molecular_statics"},
        {"A.3", Granularity::Atomistic, "pe_type_atomistic_molecular_dynamics"},
        {"A.4", Granularity::Atomistic, "pe_type_atomistic_partition_function"},
        {"A.5", Granularity::Atomistic, "pe_type_atomistic_spin_model"},
        {"A.6", Granularity::Atomistic, "pe_type_atomistic_statistical_transport"},
        {"M.1", Granularity::Mesoscopic, "pe_type_mesoscopic_density_functional"},
        {"M.2", Granularity::Mesoscopic, "pe_type_mesoscopic_molecular_statics"},
        {"M.3", Granularity::Mesoscopic, "pe_type_mesoscopic_molecular_dynamics"},
        {"M.4", Granularity::Mesoscopic, "pe_type_mesoscopic_partition_function"},
        {"M.5", Granularity::Mesoscopic, "pe_type_mesoscopic_micromagnetism"},
        {"M.6", Granularity::Mesoscopic, "pe_type_mesoscopic_statistical_transport"},
        {"CO.1", Granularity::Continuum, "pe_type_continuum_solid_mechanics"},
        {"CO.2", Granularity::Continuum, "pe_type_continuum_fluid_mechanics"},
        {"CO.3", Granularity::Continuum, "pe_type_continuum_heat_transfer"},
        {"CO.4", Granularity::Continuum, "pe_type_continuum_phase_field"},
        {"CO.5", Granularity::Continuum, "pe_type_continuum_thermodynamics"},
        {"CO.6", Granularity::Continuum, "pe_type_continuum_reaction_kinetics"},
        {"CO.7", Granularity::Continuum, "pe_type_continuum_electromagnetism"},
        {"CO.8", Granularity::Continuum, "pe_type_continuum_process_model"},
    };
    c.expect_eq(s.pe_types().size(), std::size_t(25), "exactly 25 PE types");
    c.expect_eq(s.subclasses_of(osmo("physical_equation_type")).size(), std::size_t(25),
                "exactly 25 physical_equation_type subclasses");
    for (const Row& r : expected) {
        try {
            const PeTypeInfo& info = s.pe_type_lookup(r.id);
            c.expect(info.granularity == r.g, std::string(r.id) + " granularity");
            c.expect_eq(info.class_name.str(), "osmo:" + std::string(r.cls),
                        std::string(r.id) + " class name");
            c.expect(s.is_subclass_of(info.class_name, osmo("physical_equation_type")),
                     std::string(r.id) + " under physical_equation_type");
        } catch (const Error& e) {
            c.expect(false, std::string(r.id) + ": " + e.what());
        }
    }

    const std::map<std::string, std::vector<std::string>> mappings = {
        {"MD", {"A.3", "M.3"}}, {"MC", {"A.4", "M.4"}}, {"DFT", {"EL.1"}},
        {"CFD", {"CO.2"}},      {"EOS", {"CO.5"}},
    };
    for (const auto& [model, ids] : mappings) {
        try {
            c.expect(s.pe_ids_for_model_type(model) == ids, model + " PE mapping");
            for (const auto& id : ids) s.pe_type_lookup(id);
        } catch (const Error& e) {
            c.expect(false, model + ": " + e.what());
        }
    }

    const std::map<std::string, std::vector<std::string>> features = {
        {"viso-el",
         {"basis_set", "electron_diagonalization", "electron_mixing", "electron_smearing",
          "ionic_relaxation", "kpoint_mesh", "symmetry_adapted_solver"}},
        {"viso-am",
         {"barostat", "integrator", "electrostatic_solver",
          "geometric_constraint_algorithm", "parallelization_scheme",
          "sampling_algorithm", "thermostat"}},
        {"viso-co",
         {"continuum_mesh", "divergence_scheme", "gradient_scheme",
          "spatial_discretization_scheme", "temporal_discretization_scheme"}},
    };
    int total = 0;
    for (const auto& [ns, names] : features) {
        std::string branch = ns == "viso-el" ? "el_solver_feature"
                             : ns == "viso-am" ? "am_solver_feature"
                                               : "co_solver_feature";
        for (const auto& n : names) {
            ++total;
            ClassId cls{ns, n};
            try {
                c.expect(s.is_subclass_of(cls, ClassId{ns, branch}),
                         cls.str() + " under " + branch);
                c.expect(s.is_subclass_of(cls, viso("solver_feature")),
                         cls.str() + " under viso:solver_feature");
            } catch (const Error& e) {
                c.expect(false, cls.str() + ": " + e.what());
            }
        }
    }
    c.expect_eq(total, 19, "19 solver-feature classes checked");
}

// ---------------------------------------------------------------------------
// criterion 2: TTL fidelity

void criterion_ttl(Check& c) {
    using namespace osmoflow::ttl;

    const char* listing = R"(@prefix : <https://example.org/workflow#> .
@prefix osmo: <https://example.org/osmo#> .
@prefix viso-am: <https://example.org/viso-am#> .

:SX a osmo:solver;
   osmo:has_solver_method_type [
      a osmo:solver_method_type;
      osmo:has_aspect_object_content [
         a viso-am:sampling_algorithm
      ];
      osmo:has_aspect_text_content
         "Well-tempered metadynamics"
   ].
)";
    try {
        TtlDocument doc = parse_ttl(listing);
        c.expect_eq(doc.statements.size(), std::size_t(1), "one top-level subject");
        const auto& st = doc.statements.at(0);
        c.expect(st.subject == Name{"", "SX"}, "subject :SX");
        c.expect(st.preds.size() == 2 && st.preds[0].predicate.is_type &&
                     st.preds[0].objects[0].name == Name{"osmo", "solver"},
                 "typed osmo:solver");
        const auto& blank = st.preds.at(1).objects.at(0);
        c.expect(blank.kind == Object::Kind::Blank, "nested aspect blank node");
        bool text_found = false;
        for (const auto& po : blank.blank)
            for (const auto& o : po.objects)
                if (o.kind == Object::Kind::String &&
                    o.text == "Well-tempered metadynamics")
                    text_found = true;
        c.expect(text_found, "aspect text content");

        std::string once = emit_ttl(doc);
        c.expect(structurally_equal(doc, parse_ttl(once)), "listing round-trips");
        c.expect(emit_ttl(parse_ttl(once)) == once, "emission fixpoint");
    } catch (const Error& e) {
        c.expect(false, std::string("listing: ") + e.what());
    }

    // 100 generator-random documents
    std::mt19937_64 rng(20240801);
    auto rand_name = [&rng]() {
        static const char* words[] = {"alpha", "beta", "solver", "value"};
        return std::string(words[rng() % 4]) + std::to_string(rng() % 30);
    };
    std::function<Object(int)> rand_object = [&](int depth) -> Object {
        switch (rng() % (depth > 0 ? 6 : 5)) {
            case 0: return Object::iri({"", rand_name()});
            case 1: return Object::str("s_" + std::to_string(rng() % 50) + "\"q\"");
            case 2: return Object::integer_value((long long)(rng() % 999) - 500);
            case 3: return Object::real_value((double(rng() % 9999) - 5000.0) / 317.0);
            case 4: return Object::boolean_value(rng() % 2 == 0);
            default: {
                std::vector<PredObjects> inner;
                int k = 1 + int(rng() % 2);
                for (int i = 0; i < k; ++i)
                    inner.push_back({Pred{false, {"ex", rand_name()}},
                                     {rand_object(depth - 1)}});
                return Object::blank_node(std::move(inner));
            }
        }
    };
    for (int i = 0; i < 100; ++i) {
        TtlDocument doc;
        doc.prefixes[""] = "https://example.org/workflow#";
        doc.prefixes["ex"] = "https://example.org/ex#";
        int ns = 1 + int(rng() % 5);
        for (int sidx = 0; sidx < ns; ++sidx) {
            Statement st;
            st.subject = {"", rand_name()};
            int np = 1 + int(rng() % 3);
            for (int p = 0; p < np; ++p) {
                PredObjects po;
                if (rng() % 4 == 0) {
                    po.predicate.is_type = true;
                    po.objects.push_back(Object::iri({"ex", rand_name()}));
                } else {
                    po.predicate.name = {"ex", rand_name()};
                    int no = 1 + int(rng() % 3);
                    for (int o = 0; o < no; ++o) po.objects.push_back(rand_object(2));
                }
                st.preds.push_back(std::move(po));
            }
            doc.statements.push_back(std::move(st));
        }
        try {
            std::string text = emit_ttl(doc);
            if (!structurally_equal(doc, parse_ttl(text))) {
                c.expect(false, "random document " + std::to_string(i) + " round-trip");
                break;
            }
        } catch (const Error& e) {
            c.expect(false, "random document " + std::to_string(i) + ": " + e.what());
            break;
        }
    }

    // malformed corpus: every case fails with a positioned error
    const char* malformed[] = {
        ":s :p :o .",                                    // no prefix declared
        "@prefix : <urn:x#> .\n:s :p .",                // missing object
        "@prefix : <urn:x#> .\n:s .",                   // missing predicate
        "@prefix : <urn:x#> .\n:s :p :o",               // missing dot
        "@prefix : <urn:x#> .\n:s :p \"open",           // unterminated string
        "@prefix : <urn:x#> .\n:s :p \"a\nb\" .",       // newline in string
        "@prefix : <urn:x#> .\n:s :p [ :q :r .",        // unclosed bracket
        "@prefix : <urn:x#> .\n:s :p ] .",              // stray bracket
        "@prefix : <urn:x#> .\n:s :p :o ,, :q .",       // double comma
        "@prefix : <urn:x#> .\n:s :p ; .",              // dangling semicolon pair
        "@prefix foo <urn:x#> .",                       // missing colon
        "@prefix : urn:x .",                            // IRI without brackets
        "@prefix : <urn:x#>",                           // missing dot after IRI
        "@base <urn:x> .",                              // unsupported directive
        "@prefix : <urn:x#> .\n:s :p 1e .",             // broken exponent
        "@prefix : <urn:x#> .\n:s :p + .",              // bare sign
        "@prefix : <urn:x#> .\n:s :p <urn:y> .",        // IRIs only in @prefix
        "@prefix : <urn:x#> .\n:s :p :o . extra",       // trailing garbage
        "@prefix : <urn:x#> .\n$ :p :o .",              // invalid subject
        "@prefix : <urn:x#> .\n:s @prefix :o .",        // directive mid-statement
        "\"floating\" .",                                // literal subject
    };
    int malformed_count = 0;
    for (const char* text : malformed) {
        ++malformed_count;
        try {
            ttl::parse_ttl(text);
            c.expect(false, std::string("accepted malformed input: ") + text);
        } catch (const TtlError& e) {
            c.expect(e.line() >= 1 && e.col() >= 1,
                     std::string("position missing for: ") + text);
        } catch (...) {
            c.expect(false, std::string("wrong error type for: ") + text);
        }
    }
    c.expect(malformed_count >= 20, "at least 20 malformed cases exercised");
}

// ---------------------------------------------------------------------------
// criterion 3: LDT disambiguation

void criterion_ldt(Check& c) {
    auto b = fixtures::fig_ambiguity_b();
    auto cc = fixtures::fig_ambiguity_c();

    auto rb = wf::validate_workflow(b);
    auto rc = wf::validate_workflow(cc);
    c.expect(rb.empty(), "scenario (b) validates cleanly: " + rb.to_string());
    c.expect(rc.empty(), "scenario (c) validates cleanly: " + rc.to_string());

    try {
        c.expect(wf::classify_processor(b, "P1") == wf::ProcessorRole::Postprocessor,
                 "(b) processor is a postprocessor");
        c.expect(wf::classify_processor(cc, "P1") == wf::ProcessorRole::CoupledProcessor,
                 "(c) processor is a coupled processor");
    } catch (const Error& e) {
        c.expect(false, std::string("classification: ") + e.what());
    }

    // non-isomorphic triple sets: the (predicate, object-kind) multiset is
    // invariant under entity renaming, and it differs
    auto pattern = [](const wf::SimulationWorkflow& w) {
        std::multiset<std::string> out;
        for (const auto& st : ttl::workflow_to_triples(w).statements)
            for (const auto& po : st.preds)
                for (const auto& o : po.objects)
                    out.insert(po.predicate.str() + "#" +
                               std::to_string(static_cast<int>(o.kind)));
        return out;
    };
    c.expect(pattern(b) != pattern(cc), "triple patterns are non-isomorphic");
}

// ---------------------------------------------------------------------------
// criterion 4: the example workflow

void criterion_example_workflow(Check& c) {
    auto w = eos::build_eos_workflow();
    auto report = wf::validate_workflow(w);
    c.expect(report.empty(), "workflow validates cleanly: " + report.to_string());

    int uc = 0, mm = 0, sv = 0;
    for (const auto& [id, s] : w.sections()) {
        if (s.kind == wf::SectionKind::UseCase) ++uc;
        if (s.kind == wf::SectionKind::MaterialsModel) ++mm;
        if (s.kind == wf::SectionKind::Solver) ++sv;
    }
    c.expect_eq(uc, 1, "one use case");
    c.expect_eq(mm, 2, "two materials models");
    c.expect_eq(sv, 2, "two solvers");

    int virtuals = 0, concretes = 0;
    for (const auto& [gid, g] : w.graphs()) {
        if (g.kind == wf::GraphKind::Virtual) ++virtuals;
        else if (gid != w.root() && !w.is_workflow_node(gid)) ++concretes;
    }
    c.expect_eq(virtuals, 3, "three virtual graphs");
    c.expect_eq(concretes, 3, "three plain concrete graphs");

    try {
        auto doc = ttl::workflow_to_triples(w);
        auto back = ttl::triples_to_workflow(doc);
        c.expect_eq(back.sections().size(), w.sections().size(), "sections preserved");
        c.expect_eq(back.resources().size(), w.resources().size(), "resources preserved");
        c.expect_eq(back.accesses().size(), w.accesses().size(), "accesses preserved");
        c.expect_eq(back.variables().size(), w.variables().size(), "variables preserved");
        c.expect_eq(back.graphs().size(), w.graphs().size(), "graphs preserved");
        c.expect(wf::validate_workflow(back) == report, "round-trip validates identically");
    } catch (const Error& e) {
        c.expect(false, std::string("round-trip: ") + e.what());
    }

    try {
        auto stages = wf::topo_order(w, w.root());
        auto stage_of = [&stages](const std::string& id) -> int {
            for (std::size_t i = 0; i < stages.size(); ++i)
                for (const auto& g : stages[i])
                    if (g == id) return int(i);
            return -1;
        };
        c.expect(stage_of("V1") >= 0 && stage_of("V1") < stage_of("V2") &&
                     stage_of("V2") < stage_of("V3"),
                 "concurrent sampling block precedes the iterative blocks");
        // the expansion of the sampling block schedules before dependents too
        auto w2 = w;
        auto container = wf::expand_virtual(w2, "V1", 3);
        c.expect(wf::topo_order(w2, container).size() == 1,
                 "concurrent expansion is causally unordered");
    } catch (const Error& e) {
        c.expect(false, std::string("topo: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// criterion 5: task protocol

void criterion_task_protocol(Check& c) {
    using namespace osmoflow::wms;
    // the wire example, field for field
    const char* wire = R"({
  "ID": 53,
  "params": {
    "T": 1.5,
    "rho": 0.01,
    "step": 0
  },
  "taskdir": "workflow/results/T_1.5/rho_0.01/step_0",
  "deploy": {
    "NP": 4,
    "cmd": ["mpirun", "-np", "4", "./ms2", "EOS_phosgene.par"],
    "nodes": ["n0"]
  },
  "env": "cluster",
  "starttime": "2019-08-13T15:49:37.938883",
  "endtime": null,
  "returncode": null
})";
    try {
        TaskObject t = parse_task(wire);
        c.expect_eq(t.id, 53LL, "ID");
        c.expect(t.params.at("T") == 1.5, "params.T");
        c.expect(t.params.at("rho") == 0.01, "params.rho");
        c.expect(t.params.at("step") == 0.0, "params.step");
        c.expect_eq(t.taskdir, std::string("workflow/results/T_1.5/rho_0.01/step_0"),
                    "taskdir");
        c.expect_eq(t.deploy.np, 4, "deploy.NP");
        c.expect(t.deploy.cmd ==
                     std::vector<std::string>{"mpirun", "-np", "4", "./ms2",
                                              "EOS_phosgene.par"},
                 "deploy.cmd");
        c.expect(t.starttime == std::optional<std::string>("2019-08-13T15:49:37.938883"),
                 "starttime");
        c.expect(!t.endtime && !t.returncode, "unset optionals");

        std::string s1 = serialize_task(t);
        TaskObject t2 = parse_task(s1);
        c.expect(t2 == t, "parse-serialize-parse identity");
        c.expect(serialize_task(t2) == s1, "re-serialization is byte-stable");
        for (const char* needle :
             {"\"ID\": 53", "\"T\": 1.5", "\"rho\": 0.01", "\"step\": 0", "\"NP\": 4",
              "\"EOS_phosgene.par\""})
            c.expect(s1.find(needle) != std::string::npos,
                     std::string("serialized value ") + needle);
    } catch (const Error& e) {
        c.expect(false, std::string("task protocol: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// criterion 6: scheduler properties

void criterion_scheduler(Check& c) {
    using namespace osmoflow::wms;
    std::mt19937_64 rng(616);
    for (int trial = 0; trial < 200 && c.failures.empty(); ++trial) {
        int n = 2 + int(rng() % 29);             // up to 30 tasks
        int nodes = 1 + int(rng() % 8);          // up to 8 nodes
        int cores = 1 + int(rng() % 4);
        Cluster cluster = Cluster::uniform(nodes, cores);

        std::vector<DagModel::Spec> specs;
        std::map<long long, std::vector<long long>> deps;
        for (int i = 0; i < n; ++i) {
            std::vector<long long> d;
            for (int j = 0; j < i; ++j)
                if (rng() % 4 == 0) d.push_back(j);
            deps[i] = d;
            TaskObject t;
            t.id = i;
            t.deploy.np = 1 + int(rng() % cluster.total_cores());
            t.params["cost"] = 0.5 + double(rng() % 100) / 10.0;
            specs.push_back({t, d, t.params["cost"]});
        }

        SchedulerConfig cfg;
        cfg.seed = trial + 1;
        cfg.policy = trial % 2 == 0 ? Policy::Lpt : Policy::Fifo;
        cfg.noise_sigma = 0.05;

        RunReport r1, r2;
        try {
            DagModel m1("acc", specs);
            perf::ExtrapProvider p1;
            r1 = run_workflow(m1, cluster, &p1, cfg);
            DagModel m2("acc", specs);
            perf::ExtrapProvider p2;
            r2 = run_workflow(m2, cluster, &p2, cfg);

            // ACK completeness
            std::set<long long> acked(m1.acks().begin(), m1.acks().end());
            c.expect(int(m1.acks().size()) == n && int(acked.size()) == n,
                     "trial " + std::to_string(trial) + ": one ACK per task");
            // provider feedback: one observation per completed task
            c.expect(int(p1.observations().size()) == n,
                     "trial " + std::to_string(trial) + ": provider observations");
        } catch (const Error& e) {
            c.expect(false, "trial " + std::to_string(trial) + ": " + e.what());
            break;
        }

        // determinism
        c.expect(r1.to_jsonl() == r2.to_jsonl(),
                 "trial " + std::to_string(trial) + ": deterministic report");

        // dependency safety
        std::map<long long, std::pair<double, double>> span;
        for (const auto& rec : r1.records) span[rec.task.id] = {rec.start, rec.end};
        for (const auto& [id, d] : deps)
            for (long long pre : d)
                c.expect(span[pre].second <= span[id].first,
                         "trial " + std::to_string(trial) + ": dependency of task " +
                             std::to_string(id));

        // capacity safety: per-node exclusivity and total core usage
        std::map<std::string, std::vector<std::pair<double, double>>> node_busy;
        for (const auto& rec : r1.records)
            for (const auto& nid : rec.task.deploy.nodes)
                node_busy[nid].push_back({rec.start, rec.end});
        for (auto& [nid, iv] : node_busy) {
            std::sort(iv.begin(), iv.end());
            for (std::size_t i = 1; i < iv.size(); ++i)
                c.expect(iv[i].first >= iv[i - 1].second,
                         "trial " + std::to_string(trial) + ": node " + nid +
                             " double-booked");
        }
        for (const auto& rec : r1.records) {
            int used = 0;
            for (const auto& other : r1.records)
                if (other.start <= rec.start && rec.start < other.end)
                    used += other.task.deploy.np;
            c.expect(used <= cluster.total_cores(),
                     "trial " + std::to_string(trial) + ": core capacity");
        }

        // brute-force stage-validity oracle on small instances: the start
        // order must be a valid topological order of the dependency DAG
        if (n <= 8) {
            std::vector<long long> by_start;
            {
                std::vector<const TaskRecord*> recs;
                for (const auto& rec : r1.records) recs.push_back(&rec);
                std::sort(recs.begin(), recs.end(),
                          [](const TaskRecord* a, const TaskRecord* b) {
                              if (a->start != b->start) return a->start < b->start;
                              return a->task.id < b->task.id;
                          });
                for (const auto* rec : recs) by_start.push_back(rec->task.id);
            }
            std::vector<int> perm(n);
            for (int i = 0; i < n; ++i) perm[i] = i;
            std::set<std::vector<long long>> valid;
            do {
                std::vector<int> pos(n);
                for (int i = 0; i < n; ++i) pos[perm[i]] = i;
                bool ok = true;
                for (const auto& [id, d] : deps)
                    for (long long pre : d)
                        if (pos[std::size_t(pre)] > pos[std::size_t(id)]) ok = false;
                if (ok)
                    valid.insert(std::vector<long long>(perm.begin(), perm.end()));
            } while (std::next_permutation(perm.begin(), perm.end()));
            c.expect(valid.count(by_start) == 1,
                     "trial " + std::to_string(trial) +
                         ": start order within the brute-force valid set");
        }
    }
}

// ---------------------------------------------------------------------------
// criterion 7: performance-model recovery

void criterion_perf(Check& c) {
    using namespace osmoflow::perf;
    const std::vector<int> samples = {2, 3, 4, 6, 8, 12, 16, 24, 32, 48};
    FitConfig cfg;
    for (const auto& i : cfg.exponents) {
        for (int j : cfg.log_exponents) {
            std::vector<Observation> obs;
            for (int n : samples) {
                double x = std::pow(double(n), i.value()) *
                           std::pow(std::log2(double(n)), double(j));
                obs.push_back({{}, n, 3.0 + 2.0 * x});
            }
            std::string tag = "i=" + std::to_string(i.num) + "/" +
                              std::to_string(i.den) + " j=" + std::to_string(j);
            try {
                PerfModel m = fit(obs, cfg);
                if (i.num == 0 && j == 0) {
                    c.expect(m.terms.size() == 1, tag + ": constant model");
                    c.expect_close(m.terms[0].coefficient, 5.0, 1e-6, tag + ": level");
                    continue;
                }
                c.expect(m.terms.size() == 2, tag + ": two terms");
                if (m.terms.size() == 2) {
                    c.expect(m.terms[1].exponents[0].i == i && m.terms[1].exponents[0].j == j,
                             tag + ": exponents recovered exactly");
                    c.expect_close(m.terms[0].coefficient, 3.0, 1e-6, tag + ": c0");
                    c.expect_close(m.terms[1].coefficient, 2.0, 1e-6, tag + ": c1");
                }
                c.expect(m.stats.cv_error <= 1e-8, tag + ": cv_error below 1e-8");
            } catch (const Error& e) {
                c.expect(false, tag + ": " + e.what());
            }
        }
    }

    // noisy selection: 5% relative noise on t = 3 + 2 N^2, two measurements
    // per resource count spanning 1..64
    int hits = 0;
    for (int seed = 1; seed <= 100; ++seed) {
        std::uint64_t s = std::uint64_t(seed) * 0x9E3779B97F4A7C15ULL;
        std::vector<Observation> obs;
        for (int rep = 0; rep < 2; ++rep)
            for (int n : {1, 2, 4, 8, 16, 32, 64}) {
                double t = 3.0 + 2.0 * double(n) * double(n);
                obs.push_back({{}, n, t * (1.0 + 0.05 * gaussian(s))});
            }
        try {
            PerfModel m = fit(obs);
            if (m.terms.size() == 2 && m.terms[1].exponents[0].i == Frac{2, 1} &&
                m.terms[1].exponents[0].j == 0)
                ++hits;
        } catch (const Error&) {
        }
    }
    c.expect(hits >= 90, "correct exponent pair selected in " + std::to_string(hits) +
                             "/100 noisy fits (need >= 90)");
}

// ---------------------------------------------------------------------------
// criterion 8: the EOS campaign

void criterion_campaign(Check& c) {
    using namespace osmoflow::eos;

    // exact setting: sigma = 0, fit form = truth form
    {
        CampaignConfig cfg;
        cfg.sigma_rel = 0.0;
        cfg.scheduler_noise_sigma = 0.0;
        cfg.output_root = fresh_dir("c8_exact");
        CampaignReport report = run_eos_campaign(cfg);
        c.expect(report.converged, "exact campaign converges");
        c.expect(report.iterations.size() <= 3,
                 "exact campaign converges in <= 3 iterations (took " +
                     std::to_string(report.iterations.size()) + ")");
        auto truth = default_truth_coefficients();
        for (std::size_t k = 0; k < truth.size(); ++k)
            c.expect(std::abs(report.final_coefficients[k] - truth[k]) /
                             std::abs(truth[k]) <=
                         1e-8,
                     "exact coefficient " + std::to_string(k));

        // the emitted description validates with exit 0
        auto ttl_path = cfg.output_root / "emitted.ttl";
        std::ofstream(ttl_path) << report.workflow_ttl;
        std::ostringstream err;
        c.expect(cli::cmd_validate(ttl_path.string(), err) == cli::kOk,
                 "emitted TTL validates: " + err.str());
    }

    // noisy setting: relative error within 5e-2 for every seed, and the
    // fit residual within twice the injected noise floor
    auto truth_form = default_truth_form();
    auto truth = default_truth_coefficients();
    for (int seed = 1; seed <= 10; ++seed) {
        CampaignConfig cfg;
        cfg.sigma_rel = 0.01;
        cfg.seed = seed;
        cfg.output_root = fresh_dir("c8_seed" + std::to_string(seed));
        CampaignReport report = run_eos_campaign(cfg);
        for (std::size_t k = 0; k < truth.size(); ++k)
            c.expect(std::abs(report.final_coefficients[k] - truth[k]) /
                             std::abs(truth[k]) <=
                         5e-2,
                     "seed " + std::to_string(seed) + " coefficient " +
                         std::to_string(k));

        // noise floor: rms of the injected sigmas across sampled rows
        double floor_sq = 0;
        int rows = 0;
        for (const auto& rec : report.run.records) {
            StatePoint sp{rec.task.params.at("T"), rec.task.params.at("rho"),
                          int(rec.task.params.at("step"))};
            auto exact = truth_derivs(sp, truth_form, truth);
            for (const auto& [idx, v] : exact.values) {
                floor_sq += 0.01 * std::abs(v) * 0.01 * std::abs(v);
                ++rows;
            }
        }
        double floor = std::sqrt(floor_sq / std::max(1, rows));
        double rms = report.iterations.back().rms_residual;
        c.expect(rms <= 2.0 * floor,
                 "seed " + std::to_string(seed) + " rms residual " +
                     std::to_string(rms) + " within 2x noise floor " +
                     std::to_string(floor));
    }
}

// ---------------------------------------------------------------------------
// criterion 9: derivative oracle

void criterion_derivs(Check& c) {
    using namespace osmoflow::eos;
    std::mt19937_64 rng(909);
    auto uniform = [&rng](double lo, double hi) {
        return lo + (hi - lo) * double(rng() >> 11) * 0x1p-53;
    };
    EosForm form = default_truth_form();
    for (int cset = 0; cset < 5; ++cset) {
        std::vector<double> coeffs = {uniform(-2, 2), uniform(-2, 2), uniform(-2, 2)};
        for (int s = 0; s < 20; ++s) {
            double T = uniform(0.6, 2.0), rho = uniform(0.2, 1.5);
            double tau = 1.0 / T;
            auto d = truth_derivs({T, rho, 0}, form, coeffs);
            auto a = [&](double t, double dl) { return a_res(form, coeffs, t, dl); };
            for (const auto& [idx, analytic] : d.values) {
                auto [n, m] = idx;
                auto fd = [&](double h) {
                    double ht = h * std::max(tau, 1.0), hd = h * std::max(rho, 1.0);
                    double v = 0;
                    if (n == 0 && m == 1)
                        v = (a(tau, rho + hd) - a(tau, rho - hd)) / (2 * hd);
                    else if (n == 1 && m == 0)
                        v = (a(tau + ht, rho) - a(tau - ht, rho)) / (2 * ht);
                    else if (n == 0 && m == 2)
                        v = (a(tau, rho + hd) - 2 * a(tau, rho) + a(tau, rho - hd)) /
                            (hd * hd);
                    else if (n == 2 && m == 0)
                        v = (a(tau + ht, rho) - 2 * a(tau, rho) + a(tau - ht, rho)) /
                            (ht * ht);
                    else
                        v = (a(tau + ht, rho + hd) - a(tau + ht, rho - hd) -
                             a(tau - ht, rho + hd) + a(tau - ht, rho - hd)) /
                            (4 * ht * hd);
                    return std::pow(tau, n) * std::pow(rho, m) * v;
                };
                double richardson = (4.0 * fd(5e-4) - fd(1e-3)) / 3.0;
                double denom = std::max(std::abs(analytic), 1e-8);
                if (std::abs(richardson - analytic) / denom > 1e-6) {
                    std::ostringstream ss;
                    ss << "derivative (" << n << "," << m << ") at T=" << T
                       << " rho=" << rho << ": analytic " << analytic << " vs fd "
                       << richardson;
                    c.expect(false, ss.str());
                }
            }
        }
    }
}

}  // namespace

int main() {
    struct Criterion {
        int number;
        const char* title;
        void (*body)(Check&);
        double budget_s;
    };
    const Criterion criteria[] = {
        {1, "vocabulary fidelity", criterion_vocabulary, 1.0},
        {2, "TTL fidelity", criterion_ttl, 5.0},
        {3, "LDT disambiguation", criterion_ldt, 1.0},
        {4, "example-workflow encoding", criterion_example_workflow, 1.0},
        {5, "task protocol", criterion_task_protocol, 1.0},
        {6, "scheduler properties", criterion_scheduler, 60.0},
        {7, "performance-model recovery", criterion_perf, 60.0},
        {8, "EOS campaign", criterion_campaign, 120.0},
        {9, "derivative oracle", criterion_derivs, 5.0},
    };

    int failed = 0;
    for (const auto& criterion : criteria) {
        Check check;
        auto t0 = std::chrono::steady_clock::now();
        try {
            criterion.body(check);
        } catch (const std::exception& e) {
            check.failures.push_back(std::string("unexpected exception: ") + e.what());
        }
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (elapsed > criterion.budget_s)
            check.failures.push_back("runtime " + std::to_string(elapsed) +
                                     " s exceeds budget " +
                                     std::to_string(criterion.budget_s) + " s");
        bool pass = check.failures.empty();
        std::printf("criterion %d: %-28s %s (%.2f s, budget %.0f s)\n", criterion.number,
                    criterion.title, pass ? "PASS" : "FAIL", elapsed, criterion.budget_s);
        for (const auto& f : check.failures) std::printf("    - %s\n", f.c_str());
        if (!pass) ++failed;
    }
    return failed;
}
