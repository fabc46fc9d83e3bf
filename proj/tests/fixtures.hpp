#pragma once
// Shared workflow encodings used across test suites: the two LDT
// disambiguation scenarios that collapse onto the same four-section
// rendering in plain MODA notation.

#include "osmoflow/workflow.hpp"

namespace fixtures {

using namespace osmoflow;
using namespace osmoflow::wf;

inline Aspect text_aspect(const char* cls, const char* text) {
    return {onto::osmo(cls), std::string(text), {}, {}};
}

// Scenario (b): the solver terminates, writes its raw output to L1, and a
// postprocessor picks it up and writes the simulation outcome to L2.
inline SimulationWorkflow fig_ambiguity_b() {
    SimulationWorkflow wf("wf_b");
    auto u1 = wf.add_section(SectionKind::UseCase,
                             {text_aspect("use_case_description",
                                          "Property prediction from raw solver output")},
                             "U1");
    auto m1 = wf.add_section(
        SectionKind::MaterialsModel,
        {text_aspect("physical_equation", "Classical equations of motion")}, "M1");
    auto s1 = wf.add_section(SectionKind::Solver,
                             {text_aspect("solver_method_type", "Molecular dynamics")},
                             "S1");
    auto p1 = wf.add_section(SectionKind::Processor,
                             {text_aspect("processor_method_type", "Statistical analysis")},
                             "P1");

    auto v_raw = wf.add_variable("raw_output", {}, "v_raw");
    auto v_out = wf.add_variable("processed_output", {}, "v_out");
    auto l1 = wf.add_resource(false, {v_raw}, "L1");
    auto l2 = wf.add_resource(false, {v_out}, "L2");

    auto ns = wf.add_node(s1, "N_S1");
    auto np = wf.add_node(p1, "N_P1");
    auto nl1 = wf.add_node(l1, "N_L1");
    auto nl2 = wf.add_node(l2, "N_L2");

    auto solve = wf.add_graph(GraphKind::Concrete, {ns, np}, "C_SP");
    wf.add_to(wf.root(), u1);
    wf.add_to(wf.root(), m1);
    wf.add_to(wf.root(), solve);
    wf.add_to(wf.root(), nl1);
    wf.add_to(wf.root(), nl2);

    wf.add_access(s1, l1, {.writes_finally = true}, {v_raw}, "A_s_w");
    wf.add_access(p1, l1, {.reads_initially = true}, {v_raw}, "A_p_r");
    wf.add_access(p1, l2, {.writes_finally = true}, {v_out}, "A_p_w");

    wf.link(ns, np);
    wf.applies_to(u1, wf.root());
    wf.applies_to(m1, solve);
    wf.set_starting_point(wf.root(), ns);
    wf.set_terminal_point(wf.root(), nl2);
    wf.set_simulation_outcome(nl2);
    return wf;
}

// Scenario (c): solver and processor run synchronized; the use case and the
// model read parameters from an interactive resource, and the two coupled
// sections exchange data mid-run.
inline SimulationWorkflow fig_ambiguity_c() {
    SimulationWorkflow wf("wf_c");
    auto u1 = wf.add_section(SectionKind::UseCase,
                             {text_aspect("use_case_description",
                                          "Steered on-the-fly evaluation")},
                             "U1");
    auto m1 = wf.add_section(
        SectionKind::MaterialsModel,
        {text_aspect("physical_equation", "Classical equations of motion")}, "M1");
    auto s1 = wf.add_section(SectionKind::Solver,
                             {text_aspect("solver_method_type", "Molecular dynamics")},
                             "S1");
    auto p1 = wf.add_section(SectionKind::Processor,
                             {text_aspect("processor_method_type", "On-the-fly analysis")},
                             "P1");

    auto v_par = wf.add_variable("parameters", {}, "v_par");
    auto v_x = wf.add_variable("exchange", {}, "v_x");
    auto l1 = wf.add_resource(true, {v_par}, "L1");
    auto l2 = wf.add_resource(false, {v_x}, "L2");

    auto ns = wf.add_node(s1, "N_S1");
    auto np = wf.add_node(p1, "N_P1");
    auto nl1 = wf.add_node(l1, "N_L1");
    auto nl2 = wf.add_node(l2, "N_L2");
    for (const auto& id : {u1, m1, ns, np, nl1, nl2}) wf.add_to(wf.root(), id);

    wf.add_access(u1, l1, {.reads_parameters = true}, {v_par}, "A_u_r");
    wf.add_access(m1, l1, {.reads_parameters = true}, {v_par}, "A_m_r");
    wf.add_access(s1, l1, {.reads_initially = true}, {v_par}, "A_s_r");
    wf.add_access(s1, l2, {.writes_during_execution = true}, {v_x}, "A_s_x");
    wf.add_access(p1, l2, {.reads_during_execution = true}, {v_x}, "A_p_x");
    wf.add_access(p1, l2, {.writes_finally = true}, {v_x}, "A_p_w");

    wf.couple(ns, np);
    wf.applies_to(u1, wf.root());
    wf.applies_to(m1, wf.root());
    wf.set_starting_point(wf.root(), ns);
    wf.set_terminal_point(wf.root(), nl2);
    wf.set_simulation_outcome(nl2);
    return wf;
}

}  // namespace fixtures
