#pragma once

// Scenario files: one metric, one boundary radius, a list of checks, the
// numerical settings and an optional one-parameter sweep.

#include <optional>
#include <string>
#include <vector>

#include "capmass/capacity.hpp"
#include "capmass/critical.hpp"
#include "capmass/geom_core.hpp"
#include "capmass/static_vacuum.hpp"

namespace capmass {

enum class CheckKind { kTheorem1, kTheorem2, kCorollary1, kConformalProof, kStaticVacuum, kAppendixA };

std::string to_string(CheckKind kind);
std::optional<CheckKind> check_kind_from_string(const std::string& name);
/// Capacity before criticality before the conformal proof.
const std::vector<CheckKind>& check_order();

struct MetricSpec {
  ProfileKind kind = ProfileKind::kSchwarzschild;
  double mass = 0.0;
  std::vector<BumpTerm> terms;
  std::vector<double> radii;   // tabulated profiles
  std::vector<double> values;

  ConformalProfile profile(Dimension n) const;
};

struct NumericsSpec {
  int grid_points = 2000;               // variational vertices
  double r_max_factor = 1e4;            // variational outer radius / r0
  double cut_factor = 1e4;              // quadrature split radius / r0
  double panel_width = 0.02;            // quadrature panel width in log r
  double adm_radius_factor = 1e3;
  double adm_tolerance = 1e-8;
  double equality_tolerance = 1e-8;
  double curvature_tolerance = 1e-10;
  int curvature_samples = 2000;
  double cross_check_tolerance = 1e-5;  // quadrature vs variational capacity
  double identity_tolerance = 1e-8;     // closed form vs direct geometry
  double mass_shift_tolerance = 1e-6;

  CriticalOptions critical() const;
  VariationalOptions variational() const;
  RigidityOptions rigidity() const;
};

struct SweepSpec {
  std::string parameter;  // boundary_r0, dimension or metric.mass
  std::vector<double> values;
};

struct Scenario {
  std::string name;
  std::string source;
  int dimension = 3;
  double boundary_r0 = 1.0;
  bool spin = true;
  std::optional<double> corollary_alpha;
  std::vector<CheckKind> checks;  // in dependency order, without duplicates
  MetricSpec metric;
  NumericsSpec numerics;
  std::optional<SweepSpec> sweep;

  /// One scenario per sweep value, or the scenario itself.
  std::vector<Scenario> expand() const;
};

std::vector<std::string> sweepable_parameters();

/// Throws ParseError on syntax errors, unknown keys and invalid values.
Scenario parse_scenario(const std::string& text, const std::string& source);
Scenario load_scenario(const std::string& path);

}  // namespace capmass
