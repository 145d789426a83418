#pragma once

// Executable reproductions of the finite-group statements. Each scenario
// returns a report of named checks with expected and computed values.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cohoforge/cohomology.hpp"
#include "cohoforge/resolution.hpp"

namespace cohoforge {

inline constexpr const char* kReportSchema = "cohoforge-report/1";

struct Check {
  std::string desc;
  std::string expected;
  std::string computed;
  bool pass = false;
};

struct ScenarioReport {
  std::string scenario;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::vector<Check> checks;
  double wall_ms = 0;
  /// Scenario-specific payload (tables, notes); may be null.
  nlohmann::ordered_json result;

  bool pass() const;
  std::size_t passed() const;
  void add(std::string desc, std::string expected, std::string computed);
  void add(std::string desc, bool expected, bool computed);
};

nlohmann::ordered_json to_json(const ScenarioReport& report, bool include_time = true);
std::string to_text(const ScenarioReport& report);

struct ScenarioOptions {
  /// Shared cache; resolutions are built directly when null.
  std::shared_ptr<ResolutionCache> cache;
  std::size_t threads = 1;
  /// Allows the order-729 tier of the metacyclic scenario.
  bool extended = false;
};

/// Minimal strategy for p-groups, greedy otherwise.
ResolutionPtr obtain_resolution(const ScenarioOptions& options, const GroupPtr& g, std::uint32_t p, std::size_t n);

std::string format_dims(const std::vector<std::size_t>& dims);

/// C_{p^n} onto C_{p^{n-1}}. With identity_control the quotient is replaced by
/// C_{p^n} itself and the map by the identity, so only the last check fails.
ScenarioReport scenario_cyclic_tower(std::uint32_t p, std::size_t n, const ScenarioOptions& options = {},
                                     bool identity_control = false);

/// A2(n;d) -> A2(n+1;d) for p = 2, B(p;n;d;k) -> B(p;n+1;d;k) for odd p.
/// Target orders above 256 need options.extended and raise BudgetError otherwise.
ScenarioReport scenario_metacyclic(std::uint32_t p, std::size_t n, std::size_t d, std::size_t k,
                                   const ScenarioOptions& options = {});

/// With trivial_control the map H x Z/2 -> Q8 is replaced by the trivial
/// homomorphism, which fails the decomposition check only.
ScenarioReport scenario_quaternion(const ScenarioOptions& options = {}, bool trivial_control = false);

ScenarioReport scenario_splitting_without_vanishing(const ScenarioOptions& options = {});

/// Degree-one classifier against the Dec ladder over the shipped catalog.
ScenarioReport scenario_census(std::uint32_t p, std::size_t n, const ScenarioOptions& options = {});

/// Scenario ids accepted by run_scenario.
const std::vector<std::string>& scenario_ids();

struct ScenarioParams {
  std::optional<std::uint32_t> p;
  std::optional<std::size_t> n;
  std::optional<std::size_t> d;
  std::optional<std::size_t> k;
  std::optional<std::size_t> max_degree;
};

/// Runs a scenario by id with defaults filled in; throws std::invalid_argument
/// for an unknown id.
ScenarioReport run_scenario(const std::string& id, const ScenarioParams& params, const ScenarioOptions& options);

}  // namespace cohoforge
