#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include <json.hpp>

#include "nimfa/bounds.hpp"
#include "nimfa/dynamics.hpp"
#include "nimfa/model.hpp"
#include "nimfa/monotonicity.hpp"
#include "nimfa/steady_state.hpp"

namespace nimfa::io {

using json = nlohmann::json;

json to_json(const Vector& v);
json to_json(const Matrix& m);
Vector vector_from_json(const json& j);
Matrix matrix_from_json(const json& j);

/// {"n", "q", "w"} plus {"beta", "delta", "t"} when the model has a
/// continuous source.
json model_to_json(const NetworkModel& m);

/// Accepts discrete fields, continuous fields, or both. With only the
/// continuous fields present the model is discretized. Throws
/// InvalidParameter on missing or inconsistent fields.
NetworkModel model_from_json(const json& j);

NetworkModel load_model(const std::filesystem::path& path);
Vector load_vector(const std::filesystem::path& path);

json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const json& j);

/// Header `k,v_1,...,v_N`, one row per stored state, 17 significant digits.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

json steady_state_to_json(const SteadyState& ss, double rho_r, double rho_f);

json monotonicity_to_json(const MonotonicityReport& report, const ConditionMargin& cond1,
                          const ConditionMargin& cond2);

/// Header `k,node,v,lb,ub,ub1,ub2`, one row per (k, node) for the listed
/// nodes (1-based in the file). ub is capped at 1; ub1 is reported raw.
void write_bounds_csv(std::ostream& os, const BoundsBundle& b, const Trajectory& reference,
                      const std::vector<std::size_t>& nodes);

}  // namespace nimfa::io
