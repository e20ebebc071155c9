#pragma once

#include "ghf/forms.hpp"
#include "ghf/operators.hpp"
#include "ghf/shrinkers.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace ghf {

struct CheckResult {
    std::string name;
    std::string statement;  // the identity or inequality being checked
    double lhs = 0.0;
    double rhs = 0.0;
    double tolerance = 0.0;
    double margin = 0.0;    // >= 0 iff pass, for assert checks
    std::string status;     // pass | fail | report-only | error
    std::string note;
    double runtime_ms = 0.0; // shown in the table; kept out of the canonical JSON
};

struct MeshProvenance {
    std::string generator = "file"; // sphere|disk|cylinder|angenent|flat-torus|file
    std::string parameters;
    std::uint64_t hash = 0;
    TopologySummary topology;
};

struct VerificationReport {
    int schema = 1;
    MeshProvenance provenance;
    std::vector<CheckResult> checks;
    std::map<std::string, double> measurements; // eta0, index, curvature sups, ...
    bool passed = true;
};

/// What to verify and how. When `generator` names one of the built-in
/// shapes, trend checks regenerate the mesh at `trend_levels` halved
/// resolutions and assert the decrease; for file input the trends are
/// reported on midpoint-subdivided copies without asserting (the subdivided
/// polyhedron is not the smooth surface).
struct RunConfig {
    std::uint64_t seed = 0;
    double tol_scale = 1.0;
    int trend_levels = 2;
    bool assert_shrinker_gate = true;

    std::string generator = "file";
    int sphere_level = 4;
    double disk_radius = 6.0;
    int disk_rings = 64;
    double cylinder_half_length = 4.0;
    int n_angular = 192; // cylinder and angenent
    int torus_m = 20, torus_n = 20;
    bool torus_synthetic_weight = false;
};

/// Build the configured mesh at full resolution (embedded generators; for
/// flat-torus the weight travels separately via flat_torus()).
TriMesh generate_mesh(const RunConfig& config);

/// Run every applicable named check on the mesh and collect the report.
VerificationReport run_checks(const TriMesh& mesh, const RunConfig& config);

/// Canonical JSON (sorted keys, no volatile fields): byte-identical across
/// runs at a fixed seed.
std::string report_json(const VerificationReport& report);

/// Human-readable table with one line per check.
std::string report_table(const VerificationReport& report);

/// Write JSON (and echo the table to stdout). Returns 0 when no assert check
/// failed, 1 otherwise.
int report_emit(const VerificationReport& report, const std::string& json_path);

/// Command line entry point (gen | geom | ghf | spectrum | verify).
int run_cli(int argc, const char* const* argv);

} // namespace ghf
