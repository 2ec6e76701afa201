#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "uppe/field.hpp"

namespace uppe {

/// How a residual is compared with its tolerance.
enum class Bound {
  at_most,       ///< residual ≤ tolerance
  greater_than,  ///< residual > tolerance
  less_than,     ///< residual < tolerance
  within,        ///< lower ≤ residual ≤ tolerance
};

const char* to_string(Bound b);

struct OracleReport {
  std::string name;
  int criterion = 0;  ///< acceptance criterion number, 0 for supporting invariants
  double residual = 0.0;
  double tolerance = 0.0;
  double lower = 0.0;  ///< used by Bound::within
  Bound bound = Bound::at_most;
  bool passed = false;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
  double runtime_s = 0.0;  ///< wall time, kept out of deterministic outputs
  /// The residual is itself a wall time; to_json leaves it out.
  bool timing = false;

  bool acceptance() const { return criterion > 0; }
  /// Sets `passed` from residual, tolerance and bound.
  void evaluate();
  /// Everything except wall-clock values.
  nlohmann::ordered_json to_json() const;
};

struct CheckOptions {
  std::uint64_t seed = 20240607;
  Exec exec = Exec::parallel;
  /// Skip the supporting invariants and run only the acceptance gates.
  bool acceptance_only = false;
};

/// One function per acceptance criterion; each may return several gates.
std::vector<OracleReport> check_theorem1(const CheckOptions& o);
std::vector<OracleReport> check_theorem2(const CheckOptions& o);
std::vector<OracleReport> check_projector_algebra(const CheckOptions& o);
std::vector<OracleReport> check_non_causality(const CheckOptions& o);
std::vector<OracleReport> check_forward_preservation(const CheckOptions& o);
std::vector<OracleReport> check_two_route(const CheckOptions& o);
std::vector<OracleReport> check_oracles(const CheckOptions& o);
std::vector<OracleReport> check_remark1(const CheckOptions& o);
/// Properties that are not acceptance gates (support, reality, consistency).
std::vector<OracleReport> check_invariants(const CheckOptions& o);

/// Every registered check in criterion order, invariants last. Failures are
/// recorded in the reports, never thrown; a check that throws becomes a
/// failed report carrying the message.
std::vector<OracleReport> run_all_checks(const CheckOptions& o = {});

/// True when every acceptance report passed.
bool acceptance_passed(const std::vector<OracleReport>& reports);

}  // namespace uppe
