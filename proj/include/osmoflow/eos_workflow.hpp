#pragma once
// The workflow description of the EOS-parameterization campaign: one use
// case, a molecular model solved by a sampling solver, an EOS model solved
// by a fitting solver, concurrent state-point simulation instances, and
// iterative fit/refine blocks.

#include "osmoflow/workflow.hpp"

namespace osmoflow::eos {

inline wf::SimulationWorkflow build_eos_workflow(
    std::shared_ptr<const onto::VocabularyStore> vocab =
        wf::shared_builtin_vocabulary()) {
    using namespace osmoflow::wf;
    using onto::osmo;

    SimulationWorkflow w("eos_workflow", std::move(vocab));

    auto u1 = w.add_section(
        SectionKind::UseCase,
        {{osmo("use_case_description"),
          "Parameterization of an equation of state for a model fluid from "
          "sampled state points",
          {}, {}}},
        "U1");
    auto m1 = w.add_section(
        SectionKind::MaterialsModel,
        {{osmo("model_type"), {}, osmo("pe_type_atomistic_partition_function"), {}},
         {osmo("model_granularity"), {}, osmo("ATOMISTIC"), {}},
         {osmo("materials_relation"), "Intermolecular pair potential", {}, {}}},
        "M1");
    auto m2 = w.add_section(
        SectionKind::MaterialsModel,
        {{osmo("model_type"), {}, osmo("pe_type_continuum_thermodynamics"), {}},
         {osmo("model_granularity"), {}, osmo("CONTINUUM"), {}},
         {osmo("physical_equation"), "Fundamental equation of state", {}, {}}},
        "M2");
    auto s1 = w.add_section(
        SectionKind::Solver,
        {{osmo("solver_method_type"), "Monte Carlo sampling",
          onto::viso_am("sampling_algorithm"), {}},
         {osmo("solver_software"), "state-point sampler", {}, {}}},
        "S1");
    auto s2 = w.add_section(
        SectionKind::Solver,
        {{osmo("solver_method_type"), "Weighted linear least squares", {}, {}},
         {osmo("solver_software"), "EOS fitter", {}, {}}},
        "S2");
    auto p1 = w.add_section(
        SectionKind::Processor,
        {{osmo("processor_method_type"),
          "Conversion of sampled derivatives into fitter input", {}, {}}},
        "P1");
    auto p2 = w.add_section(
        SectionKind::Processor,
        {{osmo("processor_method_type"),
          "State-point refinement around the critical point and the "
          "coexistence region",
          {}, {}}},
        "P2");

    auto v_points = w.add_variable("state_points", {}, "v_points");
    auto v_in = w.add_variable("solver_input", {}, "v_in");
    auto v_raw = w.add_variable("massieu_derivatives", {}, "v_raw");
    auto v_fitin = w.add_variable("fit_input", {}, "v_fitin");
    auto v_eos = w.add_variable("eos_coefficients", {}, "v_eos");
    auto v_crit = w.add_variable("critical_estimate", {}, "v_crit");

    auto l_points = w.add_resource(true, {v_points}, "L_points");
    auto l_in = w.add_resource(false, {v_in}, "L_in");
    auto l_raw = w.add_resource(false, {v_raw}, "L_raw");
    auto l_fitin = w.add_resource(false, {v_fitin}, "L_fitin");
    auto l_eos = w.add_resource(false, {v_eos}, "L_eos");
    auto l_crit = w.add_resource(false, {v_crit}, "L_crit");

    auto n_s1 = w.add_node(s1, "N_S1");
    auto n_l_in = w.add_node(l_in, "N_L_in");
    auto n_p1 = w.add_node(p1, "N_P1");
    auto n_s2 = w.add_node(s2, "N_S2");
    auto n_l_fitin = w.add_node(l_fitin, "N_L_fitin");
    auto n_p2 = w.add_node(p2, "N_P2");
    auto n_l_crit = w.add_node(l_crit, "N_L_crit");
    auto n_l_points = w.add_node(l_points, "N_L_points");
    auto n_l_raw = w.add_node(l_raw, "N_L_raw");
    auto n_l_eos = w.add_node(l_eos, "N_L_eos");

    auto c1 = w.add_graph(GraphKind::Concrete, {n_s1, n_l_in}, "C1");
    auto c2 = w.add_graph(GraphKind::Concrete, {n_p1, n_s2, n_l_fitin}, "C2");
    auto c3 = w.add_graph(GraphKind::Concrete, {n_p2, n_l_crit}, "C3");

    auto v1 = w.add_virtual_graph(c1, Multiplicity::ConcurrentInstances, {},
                                  std::string("one instance per pending state point"),
                                  "V1");
    auto v2 = w.add_virtual_graph(c2, Multiplicity::IterativeLoop, {},
                                  std::string("until relative coefficient change "
                                              "falls below tolerance"),
                                  "V2");
    auto v3 = w.add_virtual_graph(c3, Multiplicity::IterativeLoop, {},
                                  std::string("until relative coefficient change "
                                              "falls below tolerance"),
                                  "V3");

    for (const auto& e :
         {u1, m1, m2, v1, v2, v3, n_l_points, n_l_raw, n_l_eos})
        w.add_to(w.root(), e);

    w.add_access(s1, l_points, {.reads_parameters = true}, {v_points}, "A_s1_par");
    w.add_access(s1, l_in, {.reads_initially = true}, {v_in}, "A_s1_in");
    w.add_access(s1, l_raw, {.writes_finally = true}, {v_raw}, "A_s1_out");
    w.add_access(p1, l_raw, {.reads_initially = true}, {v_raw}, "A_p1_in");
    w.add_access(p1, l_fitin, {.writes_finally = true}, {v_fitin}, "A_p1_out");
    w.add_access(s2, l_fitin, {.reads_initially = true}, {v_fitin}, "A_s2_in");
    w.add_access(s2, l_eos, {.writes_finally = true}, {v_eos}, "A_s2_out");
    w.add_access(p2, l_eos, {.reads_initially = true}, {v_eos}, "A_p2_in");
    w.add_access(p2, l_crit, {.writes_finally = true}, {v_crit}, "A_p2_crit");
    w.add_access(p2, l_points, {.writes_finally = true}, {v_points}, "A_p2_out");

    w.link(n_p1, n_s2);
    w.link(v1, v2);
    w.link(v2, v3);

    w.applies_to(u1, w.root());
    w.applies_to(m1, v1);
    w.applies_to(m2, v2);

    w.set_starting_point(w.root(), n_l_points);
    w.set_terminal_point(w.root(), n_l_eos);
    w.set_simulation_outcome(n_l_eos);
    return w;
}

}  // namespace osmoflow::eos
