#include "capmass/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "capmass/errors.hpp"
#include "capmass/toml_lite.hpp"

namespace capmass {

std::string to_string(CheckKind kind) {
  switch (kind) {
    case CheckKind::kTheorem1: return "Theorem1";
    case CheckKind::kTheorem2: return "Theorem2";
    case CheckKind::kCorollary1: return "Corollary1";
    case CheckKind::kConformalProof: return "ConformalProof";
    case CheckKind::kStaticVacuum: return "StaticVacuum";
    case CheckKind::kAppendixA: return "AppendixA";
  }
  return "Unknown";
}

const std::vector<CheckKind>& check_order() {
  static const std::vector<CheckKind> order = {CheckKind::kTheorem1,       CheckKind::kTheorem2,
                                               CheckKind::kCorollary1,     CheckKind::kConformalProof,
                                               CheckKind::kStaticVacuum,   CheckKind::kAppendixA};
  return order;
}

std::optional<CheckKind> check_kind_from_string(const std::string& name) {
  for (CheckKind k : check_order())
    if (to_string(k) == name) return k;
  return std::nullopt;
}

std::vector<std::string> sweepable_parameters() { return {"boundary_r0", "dimension", "metric.mass"}; }

ConformalProfile MetricSpec::profile(Dimension n) const {
  switch (kind) {
    case ProfileKind::kSchwarzschild: return ConformalProfile::schwarzschild(n, mass);
    case ProfileKind::kPerturbed: return ConformalProfile::perturbed(n, mass, terms);
    case ProfileKind::kTabulated: return ConformalProfile::tabulated(n, radii, values);
    case ProfileKind::kProduct: break;
  }
  throw Error(ErrorCode::kInvalidArgument, "product profiles cannot be declared in a scenario");
}

CriticalOptions NumericsSpec::critical() const {
  CriticalOptions o;
  o.equality_tolerance = equality_tolerance;
  o.curvature_tolerance = curvature_tolerance;
  o.curvature_samples = curvature_samples;
  o.quadrature.cut_factor = cut_factor;
  o.quadrature.panel_width = panel_width;
  o.adm.radius_factor = adm_radius_factor;
  o.adm.tolerance = adm_tolerance;
  return o;
}

VariationalOptions NumericsSpec::variational() const {
  VariationalOptions o;
  o.grid_points = grid_points;
  o.r_max_factor = r_max_factor;
  return o;
}

RigidityOptions NumericsSpec::rigidity() const {
  RigidityOptions o;
  o.equality_tolerance = equality_tolerance;
  o.quadrature = critical().quadrature;
  o.adm = critical().adm;
  return o;
}

std::vector<Scenario> Scenario::expand() const {
  if (!sweep) return {*this};
  std::vector<Scenario> points;
  for (double v : sweep->values) {
    Scenario s = *this;
    s.sweep.reset();
    if (sweep->parameter == "boundary_r0") s.boundary_r0 = v;
    else if (sweep->parameter == "dimension") s.dimension = int(v);
    else s.metric.mass = v;
    points.push_back(std::move(s));
  }
  return points;
}

namespace {

using Json = nlohmann::ordered_json;

class Schema {
 public:
  Schema(TomlDocument doc, std::string source) : doc_(std::move(doc)), source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& path, const std::string& message) const {
    throw ParseError(source_, doc_.line_of(path), path, message);
  }

  void only_keys(const Json& table, const std::string& path, std::initializer_list<const char*> allowed) const {
    for (const auto& [key, value] : table.items()) {
      (void)value;
      if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
        fail(join(path, key), "unknown key");
    }
  }

  static std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
  }

  const Json* find(const Json& table, const std::string& key) const {
    const auto it = table.find(key);
    return it == table.end() ? nullptr : &*it;
  }

  double number(const Json& table, const std::string& path, const std::string& key) const {
    const Json* v = find(table, key);
    if (!v) fail(join(path, key), "missing required key");
    return as_number(*v, join(path, key));
  }

  double as_number(const Json& v, const std::string& path) const {
    if (!v.is_number()) fail(path, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(path, "value must be finite");
    return x;
  }

  double number_or(const Json& table, const std::string& path, const std::string& key, double fallback) const {
    const Json* v = find(table, key);
    return v ? as_number(*v, join(path, key)) : fallback;
  }

  long long integer(const Json& v, const std::string& path) const {
    if (!v.is_number_integer()) fail(path, "expected an integer");
    return v.get<long long>();
  }

  int integer_or(const Json& table, const std::string& path, const std::string& key, int fallback) const {
    const Json* v = find(table, key);
    if (!v) return fallback;
    const long long x = integer(*v, join(path, key));
    if (x < 1 || x > 10'000'000) fail(join(path, key), "integer out of range");
    return int(x);
  }

  void positive(double v, const std::string& path) const {
    if (!(v > 0.0)) fail(path, "must be positive");
  }

  std::string string(const Json& table, const std::string& path, const std::string& key) const {
    const Json* v = find(table, key);
    if (!v) fail(join(path, key), "missing required key");
    if (!v->is_string()) fail(join(path, key), "expected a string");
    return v->get<std::string>();
  }

  const Json& table(const Json& parent, const std::string& key) const {
    const Json* v = find(parent, key);
    if (!v) fail(key, "missing required table");
    if (!v->is_object()) fail(key, "expected a table");
    return *v;
  }

  std::vector<double> numbers(const Json& table, const std::string& path, const std::string& key) const {
    const Json* v = find(table, key);
    if (!v) fail(join(path, key), "missing required key");
    if (!v->is_array()) fail(join(path, key), "expected an array");
    std::vector<double> out;
    for (std::size_t i = 0; i < v->size(); ++i) out.push_back(as_number((*v)[i], join(path, key)));
    return out;
  }

  Scenario build() const {
    const Json& root = doc_.root;
    only_keys(root, "", {"name", "dimension", "boundary_r0", "spin", "checks", "corollary_alpha", "metric",
                         "numerics", "sweep"});
    Scenario s;
    s.source = source_;
    s.name = string(root, "", "name");
    if (s.name.empty()) fail("name", "must not be empty");

    const Json* dim = find(root, "dimension");
    if (!dim) fail("dimension", "missing required key");
    const long long n = integer(*dim, "dimension");
    if (n < 3 || n > 64) fail("dimension", "dimension must lie in [3, 64]");
    s.dimension = int(n);

    s.boundary_r0 = number(root, "", "boundary_r0");
    positive(s.boundary_r0, "boundary_r0");

    if (const Json* spin = find(root, "spin")) {
      if (!spin->is_boolean()) fail("spin", "expected a boolean");
      s.spin = spin->get<bool>();
    }
    if (const Json* a = find(root, "corollary_alpha")) {
      const double alpha = as_number(*a, "corollary_alpha");
      if (!(alpha > 0.0 && alpha < 1.0)) fail("corollary_alpha", "must lie in (0, 1)");
      s.corollary_alpha = alpha;
    }

    const Json* checks = find(root, "checks");
    if (!checks) fail("checks", "missing required key");
    if (!checks->is_array() || checks->empty()) fail("checks", "expected a non-empty array of check names");
    std::set<CheckKind> requested;
    for (const auto& c : *checks) {
      if (!c.is_string()) fail("checks", "check names must be strings");
      const auto kind = check_kind_from_string(c.get<std::string>());
      if (!kind) fail("checks", "unknown check '" + c.get<std::string>() + "'");
      requested.insert(*kind);
    }
    for (CheckKind k : check_order())
      if (requested.count(k)) s.checks.push_back(k);

    s.metric = metric(table(root, "metric"));
    if (const Json* num = find(root, "numerics")) {
      if (!num->is_object()) fail("numerics", "expected a table");
      s.numerics = numerics(*num);
    }
    if (const Json* sw = find(root, "sweep")) {
      if (!sw->is_object()) fail("sweep", "expected a table");
      s.sweep = sweep(*sw, s);
    }
    return s;
  }

  MetricSpec metric(const Json& t) const {
    const std::string path = "metric";
    MetricSpec m;
    const std::string kind = string(t, path, "kind");
    if (kind == "schwarzschild") {
      only_keys(t, path, {"kind", "mass"});
      m.kind = ProfileKind::kSchwarzschild;
      m.mass = number(t, path, "mass");
    } else if (kind == "euclidean") {
      only_keys(t, path, {"kind"});
      m.kind = ProfileKind::kSchwarzschild;
      m.mass = 0.0;
    } else if (kind == "perturbed") {
      only_keys(t, path, {"kind", "mass", "terms"});
      m.kind = ProfileKind::kPerturbed;
      m.mass = number(t, path, "mass");
      const Json* terms = find(t, "terms");
      if (!terms || !terms->is_array() || terms->empty())
        fail("metric.terms", "perturbed metrics need at least one [[metric.terms]] table");
      for (std::size_t i = 0; i < terms->size(); ++i)
        m.terms.push_back(term((*terms)[i], "metric.terms[" + std::to_string(i) + "]"));
    } else if (kind == "tabulated") {
      only_keys(t, path, {"kind", "radii", "values"});
      m.kind = ProfileKind::kTabulated;
      m.radii = numbers(t, path, "radii");
      m.values = numbers(t, path, "values");
      if (m.radii.size() != m.values.size()) fail("metric.values", "radii and values differ in length");
    } else {
      fail("metric.kind", "unknown metric kind '" + kind + "'");
    }
    return m;
  }

  BumpTerm term(const Json& t, const std::string& path) const {
    if (!t.is_object()) fail(path, "expected a table");
    const std::string kind = string(t, path, "kind");
    BumpTerm b;
    if (kind == "power") {
      only_keys(t, path, {"kind", "coef", "exponent"});
      b = BumpTerm::power(number(t, path, "coef"), number(t, path, "exponent"));
    } else if (kind == "exponential") {
      only_keys(t, path, {"kind", "coef", "rate"});
      b = BumpTerm::exponential(number(t, path, "coef"), number(t, path, "rate"));
    } else if (kind == "screened") {
      only_keys(t, path, {"kind", "coef", "rate"});
      b = BumpTerm::screened(number(t, path, "coef"), number(t, path, "rate"));
    } else if (kind == "gaussian") {
      only_keys(t, path, {"kind", "coef", "center", "width"});
      b = BumpTerm::gaussian(number(t, path, "coef"), number(t, path, "center"), number(t, path, "width"));
      positive(b.width, join(path, "width"));
    } else {
      fail(join(path, "kind"), "unknown term kind '" + kind + "'");
    }
    return b;
  }

  NumericsSpec numerics(const Json& t) const {
    const std::string p = "numerics";
    only_keys(t, p, {"grid_points", "r_max_factor", "cut_factor", "panel_width", "adm_radius_factor",
                     "adm_tolerance", "equality_tolerance", "curvature_tolerance", "curvature_samples",
                     "cross_check_tolerance", "identity_tolerance", "mass_shift_tolerance"});
    NumericsSpec n;
    n.grid_points = integer_or(t, p, "grid_points", n.grid_points);
    if (n.grid_points < 3) fail("numerics.grid_points", "need at least 3 grid points");
    n.curvature_samples = integer_or(t, p, "curvature_samples", n.curvature_samples);
    const auto pos = [&](const char* key, double& field) {
      field = number_or(t, p, key, field);
      positive(field, join(p, key));
    };
    pos("r_max_factor", n.r_max_factor);
    pos("cut_factor", n.cut_factor);
    pos("panel_width", n.panel_width);
    pos("adm_radius_factor", n.adm_radius_factor);
    pos("adm_tolerance", n.adm_tolerance);
    pos("equality_tolerance", n.equality_tolerance);
    pos("curvature_tolerance", n.curvature_tolerance);
    pos("cross_check_tolerance", n.cross_check_tolerance);
    pos("identity_tolerance", n.identity_tolerance);
    pos("mass_shift_tolerance", n.mass_shift_tolerance);
    if (n.r_max_factor <= 1.0) fail("numerics.r_max_factor", "must exceed 1");
    if (n.cut_factor <= 1.0) fail("numerics.cut_factor", "must exceed 1");
    return n;
  }

  SweepSpec sweep(const Json& t, const Scenario& s) const {
    const std::string p = "sweep";
    only_keys(t, p, {"parameter", "values"});
    SweepSpec sw;
    sw.parameter = string(t, p, "parameter");
    const auto names = sweepable_parameters();
    if (std::find(names.begin(), names.end(), sw.parameter) == names.end())
      fail("sweep.parameter", "'" + sw.parameter + "' is not a sweepable scenario field");
    if (sw.parameter == "metric.mass" && s.metric.kind == ProfileKind::kTabulated)
      fail("sweep.parameter", "tabulated metrics have no mass parameter");
    sw.values = numbers(t, p, "values");
    if (sw.values.empty()) fail("sweep.values", "expected at least one value");
    const Json& raw = t.at("values");
    for (std::size_t i = 0; i < sw.values.size(); ++i) {
      if (sw.parameter == "dimension") {
        const long long n = integer(raw[i], "sweep.values");
        if (n < 3 || n > 64) fail("sweep.values", "dimension must lie in [3, 64]");
      }
      if (sw.parameter == "boundary_r0") positive(sw.values[i], "sweep.values");
    }
    return sw;
  }

 private:
  TomlDocument doc_;
  std::string source_;
};

}  // namespace

Scenario parse_scenario(const std::string& text, const std::string& source) {
  return Schema(parse_toml(text, source), source).build();
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, "", "cannot open scenario file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str(), path);
}

}  // namespace capmass
