#pragma once

#include <json.hpp>

#include <optional>
#include <string>

#include "hypdelta/invariants.hpp"

namespace hypdelta {

using Json = nlohmann::ordered_json;

/// Run configuration shared by the CLI subcommands.
struct RunConfig {
    std::string curve_path;
    double theta_tol = 1e-12;
    double quad_tol = 1e-3;
    int precision_bits = 53;
    unsigned long seed = 12345;
    std::string cache_dir;         // empty: no cache
    std::string checks = "all";    // "all" | "fast"
    std::string method = "adaptive";
    long budget = 40000000;
    std::string out_path;          // empty: stdout

    ThetaConfig theta_config() const;
    QuadConfig quad_config() const;
};

Json cx_to_json(cx v);
Json mat_to_json(const MatC& m);
Json vec_to_json(const VecC& v);

/// Parse {"coefficients": [[re,im],...]} (full list, leading first) or
/// {"roots": [[re,im],...]}, plus optional "ordering" and
/// "separability_eps_rel"; "genus" is cross-checked when present.
CurveSpec curve_from_json(const Json& j);
CurveSpec curve_from_file(const std::string& path);

Json curve_to_json(const CurveSpec& c);
Json periods_to_json(const PeriodData& p);

/// One row of the residual table.
struct ResidualEntry {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    double error_estimate = 0.0;  // propagated first-order estimate, 0 if n/a
};

struct InvariantReport {
    Json config_echo;
    Json curve;
    Json periods;
    Json invariants;
    Json diagnostics;
    std::vector<ResidualEntry> residuals;

    bool all_pass() const;
    Json to_json() const;
};

/// Content hash for the period cache: curve bytes, ordering, quadrature
/// configuration and code version.
std::string periods_cache_key(const CurveSpec& c, const ContourQuadConfig& cfg);

/// Returns cached matrices on hit; nullopt (plus a warning on corrupt
/// entries) otherwise.
std::optional<std::pair<MatC, MatC>> load_periods_cache(const std::string& dir, const std::string& key,
                                                        std::string* warning);
void store_periods_cache(const std::string& dir, const std::string& key, const PeriodData& data);

}  // namespace hypdelta
