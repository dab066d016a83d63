#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "compresslab/acceptance.hpp"
#include "compresslab/errors.hpp"
#include "compresslab/julia.hpp"
#include "compresslab/parallel.hpp"
#include "compresslab/poincare.hpp"
#include "compresslab/report.hpp"
#include "compresslab/schroeder.hpp"
#include "compresslab/simulator.hpp"
#include "compresslab/version.hpp"

namespace fs = std::filesystem;
using namespace compresslab;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kAccuracy = 2, kCapacity = 3 };

struct UsageError : Error {
  using Error::Error;
};

struct Output {
  std::string path;  // empty = stdout

  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + path);
    f << text;
  }
};

void write_file(const fs::path& path, const std::string& text) { Output{path.string()}.write(text); }

fs::path prepare_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!fs::is_directory(dir)) throw ConfigError("cannot create output directory " + dir);
  return dir;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void write_manifest(const fs::path& dir, const std::string& command, json parameters,
                    const std::vector<std::string>& outputs, std::chrono::steady_clock::time_point t0) {
  RunManifest m{command, std::move(parameters), outputs, seconds_since(t0)};
  write_file(dir / "manifest.json", dump_json(manifest_to_json(m)));
}

// ---- simulate

struct SimulateArgs {
  std::string mode = "ordered";
  unsigned steps = 2;
  std::uint64_t length = std::uint64_t{1} << 22;
  double p = 1.0;
  double r = 0.5;
  std::uint64_t seed = 1;
  unsigned replicas = 1;
  std::string out = ".";
  std::string format = "csv";
  bool allow_large = false;
};

void add_simulate(CLI::App& app, SimulateArgs& a, std::function<int()>& action) {
  auto* sub = app.add_subcommand("simulate", "Monte Carlo compression of a cyclic chain");
  sub->add_option("--mode", a.mode, "ordered or disordered")->check(CLI::IsMember({"ordered", "disordered"}));
  sub->add_option("--steps", a.steps, "number of compression steps");
  sub->add_option("--length", a.length, "initial chain length");
  sub->add_option("--p", a.p, "initial fill probability");
  sub->add_option("--r", a.r, "probability of donating to the right");
  sub->add_option("--seed", a.seed);
  sub->add_option("--replicas", a.replicas, "independent chains, histograms are summed");
  sub->add_option("--out", a.out, "output directory");
  sub->add_option("--format", a.format)->check(CLI::IsMember({"csv", "json"}));
  sub->add_flag("--allow-large", a.allow_large, "lift the 2^28 cell limit");
  sub->callback([&] {
    action = [&a] {
      const auto t0 = std::chrono::steady_clock::now();
      SimConfig c;
      c.mode = parse_mode(a.mode);
      c.steps = a.steps;
      c.length = a.length;
      c.p = a.p;
      c.r = a.r;
      c.seed = a.seed;
      c.replicas = a.replicas;
      c.validate(a.allow_large);
      const RunReport report = run_experiment(c, a.allow_large);
      const fs::path dir = prepare_dir(a.out);
      std::string name;
      if (a.format == "csv") {
        name = "report.csv";
        std::ostringstream s;
        write_run_csv(s, report);
        write_file(dir / name, s.str());
      } else {
        name = "report.json";
        write_file(dir / name, dump_json(run_to_json(report)));
      }
      write_manifest(dir, "simulate", config_to_json(c), {name}, t0);
      return int(kOk);
    };
  });
}

// ---- taylor

struct TaylorArgs {
  std::size_t imax = 8;
  std::string out;
};

void add_taylor(CLI::App& app, TaylorArgs& a, std::function<int()>& action) {
  auto* sub = app.add_subcommand("taylor", "Taylor coefficients phi_i and their linear approximation");
  sub->add_option("--imax", a.imax, "largest index")->check(CLI::Range(std::size_t{1}, std::size_t{100000}));
  sub->add_option("--out", a.out, "CSV file (stdout if omitted)");
  sub->callback([&] {
    action = [&a] {
      const PowerSeries phi = phi_taylor(a.imax);
      const double theta0 = theta_extrema().theta0;
      std::ostringstream s;
      s << "i,phi_i,linear_approx,difference\n";
      for (std::size_t i = 1; i <= a.imax; ++i) {
        const double lin = phi_linear_approx(i, theta0);
        s << i << ',' << format_number(phi[i]) << ',' << format_number(lin) << ',' << format_number(phi[i] - lin)
          << '\n';
      }
      Output{a.out}.write(s.str());
      return int(kOk);
    };
  });
}

// ---- theta

struct ThetaArgs {
  double a = 0.5;
  std::size_t grid = 10000;
  std::string out;
};

void add_theta(CLI::App& app, ThetaArgs& a, std::function<int()>& action) {
  auto* sub = app.add_subcommand("theta", "extrema of Theta on one fundamental interval");
  sub->add_option("--a", a.a, "interval [P(a), a], 0 < a < 1");
  sub->add_option("--grid", a.grid, "grid points before refinement")->check(CLI::Range(std::size_t{16}, std::size_t{10000000}));
  sub->add_option("--out", a.out, "JSON file (stdout if omitted)");
  sub->callback([&] {
    if (!(a.a > 0.0 && a.a < 1.0)) throw CLI::ValidationError("--a", "must lie strictly between 0 and 1");
    action = [&a] {
      const ThetaStats st = theta_extrema(a.a, a.grid);
      json j = {{"theta_min", st.theta_min}, {"theta_max", st.theta_max}, {"theta0", st.theta0},
                {"a", st.a},                 {"grid", st.grid_points},    {"argmin", st.argmin},
                {"argmax", st.argmax}};
      Output{a.out}.write(dump_json(j));
      return int(kOk);
    };
  });
}

// ---- density

struct DensityArgs {
  double xmin = 0.0;
  double xmax = 8.0;
  double dx = 0.01;
  double p = 1.0;
  double radius = FourierGrid::density().radius;
  double step = FourierGrid::density().step;
  std::string out;
};

std::vector<double> abscissae(double lo, double hi, double dx) {
  if (!(dx > 0.0) || !(hi >= lo)) throw UsageError("need dx > 0 and xmax >= xmin");
  const double n = std::round((hi - lo) / dx);
  if (n > 1e7) throw CapacityError("more than 10^7 abscissae");
  std::vector<double> xs;
  for (std::size_t k = 0; k <= static_cast<std::size_t>(n); ++k) xs.push_back(lo + dx * static_cast<double>(k));
  return xs;
}

void add_density(CLI::App& app, DensityArgs& a, std::function<int()>& action) {
  auto* sub = app.add_subcommand("density", "rescaled weight densities, ordered and disordered");
  sub->add_option("--xmin", a.xmin)->check(CLI::NonNegativeNumber);
  sub->add_option("--xmax", a.xmax);
  sub->add_option("--dx", a.dx);
  sub->add_option("--p", a.p, "initial fill probability")->check(CLI::Range(0.0, 1.0));
  sub->add_option("--radius", a.radius, "frequency cutoff of the Fourier integral");
  sub->add_option("--step", a.step, "frequency step of the Fourier integral");
  sub->add_option("--out", a.out, "CSV file (stdout if omitted)");
  sub->callback([&] {
    if (!(a.p > 0.0)) throw CLI::ValidationError("--p", "must be positive");
    action = [&a] {
      const FourierGrid grid{a.radius, a.step};
      grid.validate();
      const auto xs = abscissae(a.xmin, a.xmax, a.dx);
      const auto ord = density_curve(xs, CompressionMode::ordered, a.p, grid);
      const auto dis = density_curve(xs, CompressionMode::disordered, a.p, grid);
      std::ostringstream s;
      s << "x,rho_ordered,rho_disordered\n";
      for (std::size_t k = 0; k < xs.size(); ++k) {
        s << format_number(xs[k]) << ',' << format_number(ord.values[k]) << ',' << format_number(dis.values[k])
          << '\n';
      }
      Output{a.out}.write(s.str());
      return int(kOk);
    };
  });
}

// ---- sigma

struct SigmaArgs {
  std::size_t points = 101;
  std::string out = ".";
};

void add_sigma(CLI::App& app, SigmaArgs& a, std::function<int()>& action) {
  auto* sub = app.add_subcommand("sigma", "periodic correction sigma(x), its averages and the B residual");
  sub->add_option("--points", a.points, "samples on [0, 1]")->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
  sub->add_option("--out", a.out, "output directory");
  sub->callback([&] {
    action = [&a] {
      const auto t0 = std::chrono::steady_clock::now();
      const std::size_t n = a.points;
      std::vector<double> xs(n), values(n), shifted(n);
      for (std::size_t k = 0; k < n; ++k) xs[k] = static_cast<double>(k) / static_cast<double>(n - 1);
      parallel_for(n, [&](std::size_t k) {
        values[k] = sigma(xs[k]);
        shifted[k] = sigma(xs[k] + 1.0);
      });
      double delta = 0.0;
      std::ostringstream s;
      s << "x,sigma\n";
      for (std::size_t k = 0; k < n; ++k) {
        delta = std::max(delta, std::abs(values[k] - shifted[k]));
        s << format_number(xs[k]) << ',' << format_number(values[k]) << '\n';
      }
      json averages = json::object();
      for (auto m : {AverageMethod::log_imag, AverageMethod::psi_integral, AverageMethod::left_axis,
                     AverageMethod::real_part}) {
        averages[to_string(m)] = sigma_average(m);
      }
      json j = {{"average_by_method", averages}, {"periodicity_delta", delta}, {"b_residual", check_B_zero()}};
      const fs::path dir = prepare_dir(a.out);
      write_file(dir / "sigma.csv", s.str());
      write_file(dir / "sigma.json", dump_json(j));
      write_manifest(dir, "sigma", {{"points", n}}, {"sigma.csv", "sigma.json"}, t0);
      return int(kOk);
    };
  });
}

// ---- julia

struct JuliaArgs {
  Bounds bounds;
  std::size_t width = 500;
  std::size_t height = 400;
  std::size_t max_iter = 256;
  double radius = 4.0;
  std::string out = ".";
};

void add_julia(CLI::App& app, JuliaArgs& a, std::function<int()>& action) {
  auto* sub = app.add_subcommand("julia", "filled Julia set of the merge polynomial");
  sub->add_option("--re-min", a.bounds.re_min);
  sub->add_option("--re-max", a.bounds.re_max);
  sub->add_option("--im-min", a.bounds.im_min);
  sub->add_option("--im-max", a.bounds.im_max);
  sub->add_option("--width", a.width)->check(CLI::Range(std::size_t{64}, std::size_t{20000}));
  sub->add_option("--height", a.height)->check(CLI::Range(std::size_t{64}, std::size_t{20000}));
  sub->add_option("--max-iter", a.max_iter)->check(CLI::PositiveNumber);
  sub->add_option("--radius", a.radius, "escape radius, at least 4");
  sub->add_option("--out", a.out, "output directory");
  sub->callback([&] {
    if (!(a.bounds.re_min < a.bounds.re_max) || !(a.bounds.im_min < a.bounds.im_max)) {
      throw CLI::ValidationError("bounds", "min must be below max");
    }
    if (!(a.radius >= 4.0)) throw CLI::ValidationError("--radius", "must be at least 4");
    action = [&a] {
      const auto t0 = std::chrono::steady_clock::now();
      const Raster raster = filled_julia(a.bounds, a.width, a.height, a.max_iter, a.radius);
      const fs::path dir = prepare_dir(a.out);
      std::ostringstream pgm, csv;
      write_pgm(pgm, raster);
      write_raster_csv(csv, raster);
      write_file(dir / "julia.pgm", pgm.str());
      write_file(dir / "julia.csv", csv.str());
      json params = {{"re_min", a.bounds.re_min}, {"re_max", a.bounds.re_max}, {"im_min", a.bounds.im_min},
                     {"im_max", a.bounds.im_max}, {"width", a.width},          {"height", a.height},
                     {"max_iter", a.max_iter},    {"escape_radius", a.radius}};
      write_manifest(dir, "julia", params, {"julia.pgm", "julia.csv"}, t0);
      return int(kOk);
    };
  });
}

// ---- report

struct ReportArgs {
  bool quick = false;
  std::string tolerances;
  std::vector<int> only;
  std::uint64_t seed = AcceptanceOptions{}.seed;
  std::string out;
  bool verbose = false;
};

void add_report(CLI::App& app, ReportArgs& a, std::function<int()>& action) {
  auto* sub = app.add_subcommand("report", "run the acceptance checks and bundle every measured quantity");
  sub->add_flag("--quick", a.quick, "analytic checks only");
  sub->add_option("--tolerances", a.tolerances, "JSON file overriding tolerances");
  sub->add_option("--only", a.only, "criterion ids to run")->check(CLI::Range(1, kCriteriaCount));
  sub->add_option("--seed", a.seed);
  sub->add_option("--out", a.out, "output directory (report.json to stdout if omitted)");
  sub->add_flag("-v,--verbose", a.verbose, "print one line per check to stderr");
  sub->callback([&] {
    action = [&a] {
      const auto t0 = std::chrono::steady_clock::now();
      AcceptanceOptions opt;
      if (!a.tolerances.empty()) opt.tol = load_tolerances(a.tolerances);
      opt.quick = a.quick;
      opt.only = a.only;
      opt.seed = a.seed;
      const bool verbose = a.verbose;
      const auto results = run_acceptance(opt, [verbose](const CheckResult& r) {
        if (verbose) {
          std::fprintf(stderr, "%s %2d %s -- %s\n", r.passed ? "PASS" : "FAIL", r.id, r.title.c_str(),
                       r.detail.c_str());
        }
      });
      const std::string text = dump_json(acceptance_to_json(results, opt));
      if (a.out.empty()) {
        std::cout << text;
      } else {
        const fs::path dir = prepare_dir(a.out);
        write_file(dir / "report.json", text);
        json params = {{"quick", a.quick}, {"only", a.only}, {"seed", a.seed}, {"tolerances", tolerances_to_json(opt.tol)}};
        write_manifest(dir, "report", params, {"report.json"}, t0);
      }
      for (const auto& r : results) {
        if (!r.passed) return int(kAccuracy);
      }
      return int(kOk);
    };
  });
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const CapacityError*>(&e)) return kCapacity;
  if (dynamic_cast<const AccuracyError*>(&e) || dynamic_cast<const NonFiniteError*>(&e) ||
      dynamic_cast<const AliasingError*>(&e) || dynamic_cast<const EscapeError*>(&e)) {
    return kAccuracy;
  }
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const DomainError*>(&e) ||
      dynamic_cast<const UsageError*>(&e)) {
    return kUsage;
  }
  return kAccuracy;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic compression of cyclic chains: simulation and analytic predictions", "compresslab"};
  app.set_version_flag("--version", std::string(kVersion));
  app.set_config("--config", "", "TOML/INI file of option defaults; command-line flags win");
  app.require_subcommand(1);
  std::size_t threads = 0;
  app.add_option("--threads", threads, "worker threads (default: hardware concurrency)")->check(CLI::PositiveNumber);

  std::function<int()> action;
  SimulateArgs simulate;
  TaylorArgs taylor;
  ThetaArgs theta;
  DensityArgs density;
  SigmaArgs sigma_args;
  JuliaArgs julia;
  ReportArgs report;
  add_simulate(app, simulate, action);
  add_taylor(app, taylor, action);
  add_theta(app, theta, action);
  add_density(app, density, action);
  add_sigma(app, sigma_args, action);
  add_julia(app, julia, action);
  add_report(app, report, action);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (threads > 0) set_thread_count(threads);
  try {
    return action();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e);
  }
}
