#pragma once

#include <optional>
#include <variant>

#include "iforms/circle_model.hpp"

namespace iforms {

inline constexpr const char* kVersion = "0.1.0";

struct FiniteSpec {
    std::vector<Mat> generators;
};

struct CircleSpec {
    CircleWeights weights;
};

struct MoritaSpec {
    std::vector<Mat> subgroup_generators;
    std::vector<Mat> slice_action; // parallel images on V
};

struct ChartSpec {
    struct Space {
        int dim = 0;
        std::vector<Mat> components;
    };
    struct Transfer {
        int src = 0, dst = 0;
        Mat embedding; // src_dim x dst_dim
    };
    std::vector<Space> spaces;
    std::vector<Transfer> transfers;
    std::vector<std::pair<int, int>> independence_pairs;
    std::vector<std::array<int, 3>> cocycle_triples; // indices: (li, kl, ki)
};

struct Scenario {
    FieldPtr field; // null = plain rationals
    std::variant<FiniteSpec, CircleSpec> action;
    int cutoff = 4;
    std::optional<MoritaSpec> morita;
    std::optional<ChartSpec> charts;
    std::uint64_t seed = 1;
    int samples = 100;
    Json echo = Json::object(); // normalized config for the report header

    bool is_circle() const { return std::holds_alternative<CircleSpec>(action); }
    const FiniteSpec& finite() const { return std::get<FiniteSpec>(action); }
    const CircleSpec& circle() const { return std::get<CircleSpec>(action); }
};

Scenario parse_scenario(const Json& config);
Scenario load_scenario_file(const std::string& path);

Mat parse_matrix(const Json& rows, const FieldPtr& field);

/// Command payloads. Tables-only commands return a Report with no
/// assertions; verify-style commands carry pass/fail assertions.
Report run_loopspace(const Scenario& s);
Report run_dims(const Scenario& s);
Report run_cohomology(const Scenario& s);
Report run_verify(const Scenario& s, bool inject_fault);
Report run_homotopy_check(const Scenario& s, int samples, std::uint64_t seed);
Report run_morita(const Scenario& s);
Report run_chart_check(const Scenario& s);

/// Renders {scenario, tables, assertions, version} in the requested format
/// ("json", "csv" or "table"). Identical scenario and seed give
/// byte-identical output.
std::string render_report(const Scenario& s, const Report& report, const std::string& format);

} // namespace iforms
