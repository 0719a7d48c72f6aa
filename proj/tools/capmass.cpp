// capmass: runs scenario files and prints Schwarzschild closed forms.
//
//   capmass run <scenario.toml> [--format json|csv|text] [--out PATH] [--jobs N] [--timing]
//   capmass oracle schwarzschild --n N --m M --r0 R
//
// Without --out the report goes to $CAPMASS_OUTPUT_DIR/<name>.<ext> when
// that variable is set, otherwise to stdout.
// Exit status: 0 pass (hypothesis violations included), 1 failed check,
// 2 parse or numerical error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "capmass/errors.hpp"
#include "capmass/report.hpp"
#include "capmass/runner.hpp"
#include "capmass/schwarzschild.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitError = 2;

bool write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  return bool(out);
}

int run_command(const std::string& file, const std::string& format_name, const std::string& out_path, int jobs,
                bool timing) {
  const auto format = capmass::report_format_from_string(format_name);
  const capmass::Report report = capmass::run_scenario_file(file, {jobs, timing});
  const std::string text = capmass::emit(report, *format);

  std::filesystem::path target = out_path;
  if (target.empty()) {
    if (const char* dir = std::getenv("CAPMASS_OUTPUT_DIR"); dir && *dir)
      target = std::filesystem::path(dir) / (report.scenario + "." + capmass::extension(*format));
  }
  if (target.empty()) {
    std::cout << text << std::flush;
  } else if (!write_file(target, text)) {
    std::cerr << "capmass: cannot write " << target.string() << "\n";
    return kExitError;
  }
  return report.has_failure() ? kExitFailure : 0;
}

int oracle_command(int n, double m, double r0) {
  const capmass::SchwarzschildData data(capmass::Dimension(n), m, r0);
  const capmass::SchwarzschildReport r = capmass::schwarzschild_report(data);
  capmass::OrderedJson j = capmass::OrderedJson::object();
  j["n"] = n;
  j["m"] = capmass::real(m);
  j["r0"] = capmass::real(r0);
  j["x"] = capmass::real(data.mass_ratio());
  j["rho"] = capmass::real(r.rho);
  j["mean_curvature"] = capmass::real(r.mean_curvature);
  j["scalar_curvature"] = capmass::real(r.scalar_curvature);
  j["normal_derivative"] = capmass::real(r.normal_derivative);
  j["Lambda"] = capmass::real(r.lambda);
  j["capacity"] = capmass::real(r.capacity);
  j["c"] = capmass::real(r.c);
  j["alpha"] = capmass::real(r.alpha);
  j["boundary_potential"] = capmass::real(r.boundary_potential);
  std::cout << capmass::dump_json(j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mass-capacity checks for rotationally symmetric conformally flat metrics"};
  app.set_version_flag("--version", capmass::kToolVersion);
  app.require_subcommand(1);

  std::string file, format = "json", out;
  int jobs = 1;
  bool timing = false;
  auto* run = app.add_subcommand("run", "run a scenario file");
  run->add_option("scenario", file, "scenario file")->required();
  run->add_option("--format", format, "report format")->check(CLI::IsMember({"json", "csv", "text"}));
  run->add_option("--out", out, "output path");
  run->add_option("--jobs", jobs, "concurrent sweep points")->check(CLI::PositiveNumber);
  run->add_flag("--timing", timing, "record wall time in the report");

  int n = 3;
  double m = 1.0, r0 = 1.0;
  auto* oracle = app.add_subcommand("oracle", "closed-form references");
  oracle->require_subcommand(1);
  auto* schw = oracle->add_subcommand("schwarzschild", "closed-form boundary data of a Schwarzschild exterior");
  schw->add_option("--n", n, "dimension")->required();
  schw->add_option("--m", m, "mass")->required();
  schw->add_option("--r0", r0, "boundary radius")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*run) return run_command(file, format, out, jobs, timing);
    return oracle_command(n, m, r0);
  } catch (const capmass::ParseError& e) {
    std::cerr << "capmass: " << e.what() << "\n";
    return kExitError;
  } catch (const capmass::Error& e) {
    std::cerr << "capmass: " << e.what() << "\n";
    return e.code() == capmass::ErrorCode::kCheckFailure ? kExitFailure : kExitError;
  } catch (const std::exception& e) {
    std::cerr << "capmass: " << e.what() << "\n";
    return kExitError;
  }
}
