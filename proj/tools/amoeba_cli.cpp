// Command-line front end: solve systems, build/verify/minimize amoeba bases,
// mixed volumes, raster plots and single-point membership queries.
//
// Exit codes: 0 success / verified, 1 verification failed or point outside,
// 2 input error, 3 numeric failure.

#include <cmath>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "amoeba/basis.hpp"
#include "amoeba/io.hpp"
#include "amoeba/membership.hpp"
#include "amoeba/polytope.hpp"
#include "amoeba/solver.hpp"
#include "amoeba/verify.hpp"

namespace {

using namespace amoeba;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;

struct RunConfig {
  std::string system_path;
  std::string solutions_path;
  std::string basis_path;
  std::string out_path;
  std::string mode = "full";
  std::size_t grid_res = 0;  // 0: default for the dimension
  std::string box;
  double tol = kDefaultMembershipTol;
  double padding = 2.0;
  unsigned workers = 1;
  int generator = -1;
  std::string point;
};

std::vector<double> parse_numbers(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      double x = std::stod(item, &used);
      if (used != item.size() || !std::isfinite(x)) throw std::invalid_argument(item);
      out.push_back(x);
    } catch (const std::exception&) {
      throw InputError(std::string("cannot parse ") + what + " entry '" + item + "'");
    }
  }
  return out;
}

SolutionSet solutions_for(const RunConfig& cfg, std::vector<std::string>* notes) {
  if (!cfg.solutions_path.empty()) return io::load_solutions(cfg.solutions_path);
  if (!cfg.system_path.empty()) return solve_system(io::load_system(cfg.system_path), notes);
  throw InputError("need --solutions or --system");
}

GridSpec grid_for(const RunConfig& cfg, std::size_t n, const SolutionSet* sols) {
  if (cfg.tol <= 0.0) throw InputError("--tol must be positive");
  GridSpec grid;
  if (sols && !sols->empty()) grid = default_grid(*sols, cfg.padding);
  if (!cfg.box.empty()) {
    auto v = parse_numbers(cfg.box, "--box");
    if (v.size() == 2) {
      grid.box.assign(n, {v[0], v[1]});
    } else if (v.size() == 2 * n) {
      grid.box.clear();
      for (std::size_t k = 0; k < n; ++k) grid.box.emplace_back(v[2 * k], v[2 * k + 1]);
    } else {
      throw InputError("--box needs 2 or 2n comma-separated numbers");
    }
  }
  if (grid.box.empty()) throw InputError("no grid box: pass --box or --solutions");
  if (cfg.grid_res != 0) grid.resolution = cfg.grid_res;
  else if (!sols) grid.resolution = n <= 2 ? 201 : n == 3 ? 51 : 15;
  grid.tol = cfg.tol;
  grid.workers = cfg.workers;
  try {
    grid.validate();
  } catch (const DomainError& e) {
    throw InputError(e.what());
  }
  return grid;
}

void print_notes(const std::vector<std::string>& notes) {
  for (const auto& n : notes) std::cerr << "note: " << n << "\n";
}

void print_point(std::ostream& os, const TorusPoint& p) {
  os << "(";
  for (std::size_t k = 0; k < p.dim(); ++k) {
    if (k) os << ", ";
    os << p[k].real();
    if (p[k].imag() != 0.0) os << (p[k].imag() < 0 ? " - " : " + ") << std::abs(p[k].imag()) << "i";
  }
  os << ")";
}

int cmd_solve(const RunConfig& cfg) {
  std::vector<std::string> notes;
  const PolynomialSystem sys = io::load_system(cfg.system_path);
  const SolutionSet sols = solve_system(sys, &notes);
  print_notes(notes);
  std::cout << "solutions: " << sols.size() << " (total with multiplicity " << sols.total_count() << ")\n";
  if (sols.mixed_volume()) std::cout << "mixed volume: " << *sols.mixed_volume() << "\n";
  for (std::size_t i = 0; i < sols.size(); ++i) {
    std::cout << "  v" << i + 1 << " = ";
    print_point(std::cout, sols[i]);
    std::cout << "  mult " << sols[i].mult() << "\n";
  }
  const auto generic = check_generic(sys, sols);
  std::cout << "generic: " << (generic ? "yes" : "no") << "\n";
  for (const auto& d : generic.diagnostics) std::cout << "  " << d << "\n";
  if (!cfg.out_path.empty()) io::dump_solutions(sols, cfg.out_path);
  return kExitPass;
}

int cmd_build(const RunConfig& cfg) {
  std::vector<std::string> notes;
  const SolutionSet sols = solutions_for(cfg, &notes);
  print_notes(notes);
  const AmoebaBasis basis = build_basis(sols, parse_mode(cfg.mode));
  std::cout << "n = " << basis.n << ", l = " << basis.l << ", mode = " << to_string(basis.mode) << "\n"
            << "generators: " << basis.generators.size() << ", max degree " << basis.max_degree() << "\n";
  if (basis.mu_bound) std::cout << "length bound (n+1)(n^(l-1)+1) = " << *basis.mu_bound << "\n";
  const bool roots = root_check(basis, sols);
  std::cout << "root check: " << (roots ? "ok" : "FAILED") << "\n";
  if (!cfg.out_path.empty()) io::dump_basis(basis, cfg.out_path);
  return roots ? kExitPass : kExitNumeric;
}

int report_verification(const VerificationReport& r) {
  std::cout << std::setprecision(6) << "grid members: " << r.member_points.size() << ", max distance "
            << r.max_distance << " (radius " << r.radius << ")\n";
  for (std::size_t i = 0; i < r.solution_margins.size(); ++i)
    std::cout << "  margin at w" << i + 1 << ": " << r.solution_margins[i] << "\n";
  std::cout << (r.passed ? "PASS" : "FAIL") << "\n";
  return r.passed ? kExitPass : kExitFail;
}

int cmd_verify(const RunConfig& cfg) {
  const AmoebaBasis basis = io::load_basis(cfg.basis_path);
  const SolutionSet sols = solutions_for(cfg, nullptr);
  const GridSpec grid = grid_for(cfg, basis.n, &sols);
  try {
    return report_verification(verify_basis(basis, sols, grid));
  } catch (const DomainError& e) {
    throw InputError(e.what());
  }
}

int cmd_minimize(const RunConfig& cfg) {
  const AmoebaBasis basis = io::load_basis(cfg.basis_path);
  const SolutionSet sols = solutions_for(cfg, nullptr);
  const GridSpec grid = grid_for(cfg, basis.n, &sols);
  if (!verify_basis(basis, sols, grid).passed) {
    std::cerr << "error: input basis fails grid verification\n";
    return kExitFail;
  }
  const AmoebaBasis out = minimize_basis(basis, sols, grid);
  std::cout << "generators: " << basis.generators.size() << " -> " << out.generators.size() << "\n";
  for (const auto& g : out.generators) std::cout << "  " << g.label().str() << "\n";
  if (!cfg.out_path.empty()) io::dump_basis(out, cfg.out_path);
  return kExitPass;
}

int cmd_mixed_volume(const RunConfig& cfg) {
  const PolynomialSystem sys = io::load_system(cfg.system_path);
  std::vector<NewtonPolytope> polys;
  for (const auto& f : sys.polys()) polys.push_back(newton_polytope(f));
  const double raw = mixed_volume_raw(polys);
  const auto mv = mixed_volume(polys);
  std::cout << "mixed volume: " << mv << " (inclusion-exclusion value " << std::setprecision(17) << raw << ")\n";
  return kExitPass;
}

int cmd_plot(const RunConfig& cfg) {
  if (cfg.out_path.empty()) throw InputError("plot needs --out");
  std::optional<SolutionSet> sols;
  if (!cfg.solutions_path.empty() || !cfg.system_path.empty()) sols = solutions_for(cfg, nullptr);
  std::vector<ArrangementPoly> gens;
  std::size_t n = 0;
  if (!cfg.basis_path.empty()) {
    AmoebaBasis b = io::load_basis(cfg.basis_path);
    gens = b.generators;
    n = b.n;
  } else if (sols) {
    AmoebaBasis b = build_basis(*sols, parse_mode(cfg.mode));
    gens = b.generators;
    n = b.n;
  } else {
    throw InputError("plot needs --basis, --solutions or --system");
  }
  if (cfg.generator >= 0) {
    if (static_cast<std::size_t>(cfg.generator) >= gens.size()) throw InputError("--generator index out of range");
    gens = {gens[static_cast<std::size_t>(cfg.generator)]};
  }
  if (n != 2) throw InputError("plot needs n = 2");
  RunConfig local = cfg;
  if (local.grid_res == 0) local.grid_res = 401;
  const GridSpec grid = grid_for(local, n, sols ? &*sols : nullptr);
  std::vector<LogPoint> marks;
  if (sols)
    for (const auto& v : sols->points()) marks.push_back(log_map(v));
  io::write_ppm(io::render_amoeba_2d(gens, grid, marks), cfg.out_path);
  std::cout << "wrote " << cfg.out_path << " (" << grid.resolution << "x" << grid.resolution << ")\n";
  return kExitPass;
}

int cmd_check_point(const RunConfig& cfg) {
  const AmoebaBasis basis = io::load_basis(cfg.basis_path);
  LogPoint u{parse_numbers(cfg.point, "--point")};
  if (u.dim() != basis.n) throw InputError("--point needs " + std::to_string(basis.n) + " coordinates");
  if (basis.generators.empty()) throw InputError("basis has no generators");
  std::cout << std::setprecision(10);
  for (const auto& g : basis.generators)
    std::cout << "  " << std::setw(12) << std::left << g.label().str() << " margin " << arrangement_margin(g, u) << "\n";
  const double m = intersection_margin(basis, u);
  const bool member = m <= cfg.tol;
  std::cout << "intersection margin " << m << ": " << (member ? "member" : "not a member") << "\n";
  return member ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Amoeba bases for zero-dimensional varieties in the complex torus"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_grid = [&](CLI::App* sub) {
    sub->add_option("--grid-res", cfg.grid_res, "Grid nodes per axis")->check(CLI::Range(2, 100000));
    sub->add_option("--box", cfg.box, "lo,hi for every axis, or lo1,hi1,...,lon,hin");
    sub->add_option("--tol", cfg.tol, "Membership tolerance (log scale)");
    sub->add_option("--padding", cfg.padding, "Default box padding around solutions");
    sub->add_option("--workers", cfg.workers, "Worker threads for grid scans");
  };
  auto add_sources = [&](CLI::App* sub) {
    auto* s = sub->add_option("--solutions", cfg.solutions_path, "Solutions JSON file")->check(CLI::ExistingFile);
    sub->add_option("--system", cfg.system_path, "Polynomial system JSON file")->check(CLI::ExistingFile)->excludes(s);
  };

  auto* solve = app.add_subcommand("solve", "Solve a polynomial system with n <= 2");
  solve->add_option("system", cfg.system_path, "System JSON file")->required()->check(CLI::ExistingFile);
  solve->add_option("--out", cfg.out_path, "Write solutions JSON");

  auto* build = app.add_subcommand("build", "Construct the amoeba basis");
  add_sources(build);
  build->add_option("--mode", cfg.mode, "Tuple selection")->check(CLI::IsMember({"full", "distinct"}));
  build->add_option("--out", cfg.out_path, "Write basis JSON");

  auto* verify = app.add_subcommand("verify", "Grid-verify a basis against its solutions");
  verify->add_option("--basis", cfg.basis_path, "Basis JSON file")->required()->check(CLI::ExistingFile);
  add_sources(verify);
  add_grid(verify);

  auto* minimize = app.add_subcommand("minimize", "Greedily drop redundant generators");
  minimize->add_option("--basis", cfg.basis_path, "Basis JSON file")->required()->check(CLI::ExistingFile);
  add_sources(minimize);
  add_grid(minimize);
  minimize->add_option("--out", cfg.out_path, "Write minimized basis JSON");

  auto* mv = app.add_subcommand("mixed-volume", "Mixed volume of the Newton polytopes of a system");
  mv->add_option("system", cfg.system_path, "System JSON file")->required()->check(CLI::ExistingFile);

  auto* plot = app.add_subcommand("plot", "Render amoebas to a PPM image (n = 2)");
  plot->add_option("--basis", cfg.basis_path, "Basis JSON file")->check(CLI::ExistingFile);
  add_sources(plot);
  plot->add_option("--mode", cfg.mode, "Tuple selection when building")->check(CLI::IsMember({"full", "distinct"}));
  plot->add_option("--generator", cfg.generator, "Render a single generator by index");
  plot->add_option("--out", cfg.out_path, "Output .ppm path")->required();
  add_grid(plot);

  auto* check = app.add_subcommand("check-point", "Membership of a log-space point");
  check->add_option("--basis", cfg.basis_path, "Basis JSON file")->required()->check(CLI::ExistingFile);
  check->add_option("--point", cfg.point, "u1,...,un")->required();
  check->add_option("--tol", cfg.tol, "Membership tolerance (log scale)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*solve) return cmd_solve(cfg);
    if (*build) return cmd_build(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*minimize) return cmd_minimize(cfg);
    if (*mv) return cmd_mixed_volume(cfg);
    if (*plot) return cmd_plot(cfg);
    if (*check) return cmd_check_point(cfg);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const DomainError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitInput;
}
