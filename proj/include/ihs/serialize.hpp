#pragma once

#include "ihs/bench.hpp"
#include "ihs/concentration.hpp"
#include "ihs/solver.hpp"

#include <json.hpp>

#include <cmath>

namespace ihs {

using json = nlohmann::json;

inline const char* to_string(StepKind k) {
    switch (k) {
        case StepKind::Polyak: return "polyak";
        case StepKind::Gradient: return "gradient";
        case StepKind::Resketch: return "resketch";
    }
    return "?";
}

inline const char* to_string(SketchKind k) {
    return k == SketchKind::Gaussian ? "gaussian" : "srht";
}

inline json to_json(const CostCounters& c) {
    return json{{"sketch", c.sketch}, {"factor", c.factor}, {"solve", c.solve},
                {"matvec", c.matvec}, {"total", c.total()}};
}

inline json to_json(const SolveReport& rep) {
    json log = json::array();
    for (const auto& e : rep.log)
        log.push_back({{"t", e.t}, {"m", e.m}, {"r", e.r}, {"r_prev", e.r_prev},
                       {"branch", to_string(e.branch)}});
    json j{{"iterations", rep.iterations},
           {"rejected", rep.rejections},
           {"final_m", rep.final_m},
           {"r1", rep.r1},
           {"r_final", rep.r_final},
           {"converged", rep.converged},
           {"sketch_exhausted", rep.sketch_exhausted},
           {"wall_seconds", rep.wall_seconds},
           {"recompute_r_after_resketch", rep.recompute_r_after_resketch},
           {"tuning", {{"lam", rep.tuning.lam}, {"Lam", rep.tuning.Lam},
                       {"mu_gd", rep.tuning.mu_gd}, {"c_gd", rep.tuning.c_gd},
                       {"mu_p", rep.tuning.mu_p}, {"beta_p", rep.tuning.beta_p},
                       {"c_p", rep.tuning.c_p}}},
           {"counters", to_json(rep.counters)},
           {"log", std::move(log)},
           {"x", std::vector<double>(rep.x.data(), rep.x.data() + rep.x.size())}};
    return j;
}

inline json to_json(const ConcentrationReport& rep) {
    return json{{"kind", to_string(rep.kind)},
                {"m", rep.m},
                {"m_prescribed", rep.m_prescribed},
                {"d_e", rep.d_e},
                {"rho", rep.rho},
                {"eta", rep.eta},
                {"Dnorm2", rep.Dnorm2},
                {"trials", rep.trials},
                {"bound_lower", rep.bound_lower},
                {"bound_upper", rep.bound_upper},
                {"fail_prob", rep.fail_prob},
                {"gamma_min", rep.gamma_min},
                {"gamma_max", rep.gamma_max},
                {"violation_frequency", rep.violation_frequency},
                {"margin", rep.margin},
                {"pass", rep.pass},
                {"verdict", rep.verdict()},
                {"as_violations_lower", rep.as_violations_lower},
                {"as_violations_upper_srht", rep.as_violations_upper_srht},
                {"infeasible", rep.infeasible},
                {"precondition_unmet", rep.precondition_unmet},
                {"vacuous", rep.vacuous}};
}

inline json to_json(const RunSummary& s) {
    json j{{"solver", s.solver},     {"nu", s.nu},
           {"ok", s.ok},             {"converged", s.converged},
           {"iterations", s.iterations}, {"final_m", s.final_m},
           {"rejected", s.rejections},   {"wall_seconds", s.wall_seconds},
           {"flops", s.flops}};
    if (!s.error.empty()) j["error"] = s.error;
    if (std::isfinite(s.delta)) j["delta"] = s.delta;
    j["x"] = std::vector<double>(s.x.data(), s.x.data() + s.x.size());
    return j;
}

inline json to_json(const PathResult& path) {
    json entries = json::array();
    for (const auto& e : path.entries) entries.push_back(to_json(e));
    return json{{"nus", path.nus},
                {"cumulative_seconds", path.cumulative_seconds},
                {"entries", std::move(entries)}};
}

inline json to_json(const ComparisonReport& rep) {
    json aggs = json::array();
    for (const auto& a : rep.aggregates)
        aggs.push_back({{"solver", a.label},
                        {"mean_seconds", a.mean_seconds},
                        {"std_seconds", a.std_seconds},
                        {"mean_iterations", a.mean_iterations},
                        {"mean_final_m", a.mean_final_m},
                        {"max_final_m", a.max_final_m},
                        {"all_converged", a.all_converged},
                        {"mean_cumulative_seconds", a.mean_cumulative}});
    return json{{"nus", rep.nus}, {"repeats", rep.repeats}, {"eps", rep.eps},
                {"solvers", std::move(aggs)}};
}

} // namespace ihs
