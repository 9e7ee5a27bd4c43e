#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dicke/analytic.hpp"
#include "dicke/classifier.hpp"
#include "dicke/energy.hpp"
#include "dicke/errors.hpp"
#include "dicke/exact.hpp"
#include "dicke/oracle.hpp"
#include "dicke/symmetry.hpp"
#include "dicke/textio.hpp"

using json = nlohmann::ordered_json;
using namespace dicke;

namespace {

constexpr int kExitBadFlags = 2;
constexpr int kExitConvergence = 3;
constexpr int kExitCheckFailed = 4;
constexpr int kExitDimension = 5;

struct PointFlags {
  double omega = 1.0;
  double Omega = 1.0;
  double lambda = 0.0;
  double kappa = 0.0;
  double U = 0.0;
  std::uint64_t seed = kDefaultSeed;

  ModelParams params() const { return {omega, Omega, lambda, kappa, U}; }
};

void add_point_flags(CLI::App* cmd, PointFlags& f) {
  cmd->add_option("--omega", f.omega, "cavity frequency");
  cmd->add_option("--Omega", f.Omega, "atomic level splitting");
  cmd->add_option("--lambda", f.lambda, "corotating coupling");
  cmd->add_option("--kappa", f.kappa, "counterrotating coupling");
  cmd->add_option("--U", f.U, "nonlinear atom-field interaction");
  cmd->add_option("--seed", f.seed, "seed for sampled checks");
}

json params_json(const ModelParams& p) {
  json j;
  j["omega"] = round12(p.omega);
  j["Omega"] = round12(p.Omega);
  j["lambda"] = round12(p.lambda);
  j["kappa"] = round12(p.kappa);
  j["U"] = round12(p.U);
  const auto t = p.t();
  if (t) {
    j["t"] = round12(*t);
  } else {
    j["t"] = nullptr;
  }
  return j;
}

json manifest_json(const std::string& command, const ModelParams& p, std::uint64_t seed,
                   std::chrono::steady_clock::time_point start) {
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  json m;
  m["command"] = command;
  m["version"] = kToolVersion;
  m["params"] = params_json(p);
  m["seed"] = seed;
  m["tolerances"] = {{"refine_tol", 1e-10},
                     {"degeneracy_tol_scale", 1e-9},
                     {"angle_dedup_tol", 1e-4},
                     {"marginal_tol", round12(marginal_tolerance(p))}};
  m["wall_time_s"] = round12(wall);
  return m;
}

json report_json(const PhaseReport& r) {
  json doc;
  doc["params"] = params_json(r.params);
  doc["phase"] = std::string(to_string(r.label));

  json mins = json::array();
  for (const auto& s : r.minimizers.states) {
    mins.push_back({{"rho", round12(s.rho)},
                    {"mu", round12(s.mu)},
                    {"theta", round12(s.theta)},
                    {"eta", round12(s.eta)},
                    {"energy", round12(r.minimizers.ground_energy)}});
  }
  if (r.metastable_np) {
    mins.push_back({{"rho", 0.0},
                    {"mu", 0.0},
                    {"theta", 0.0},
                    {"eta", 0.0},
                    {"energy", round12(-0.5 * r.params.Omega)}});
  }
  doc["minimizers"] = mins;
  doc["order_parameters"] = {{"n_photon", round12(r.order_params.n_photon)},
                             {"jz", round12(r.order_params.jz)},
                             {"jx", round12(r.order_params.jx)},
                             {"jy", round12(r.order_params.jy)}};
  doc["hessian_eigenvalues"] = {round12(r.stability.m[0]), round12(r.stability.m[1]),
                                round12(r.stability.m[2]), round12(r.stability.m[3])};
  doc["stability"] = {{"class", std::string(to_string(r.stability.cls))},
                      {"rank_reduced", r.stability.rank_reduced},
                      {"degenerate_manifold", r.minimizers.degenerate_manifold}};
  doc["method"] = std::string(to_string(r.method));
  return doc;
}

// --axis flags use name:min:max:count
AxisSpec parse_axis(const std::string& text) {
  AxisSpec ax;
  std::stringstream ss(text);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(ss, part, ':')) parts.push_back(part);
  if (parts.size() != 4) throw AxisError("axis must be name:min:max:count, got '" + text + "'");
  ax.name = parts[0];
  try {
    ax.min = std::stod(parts[1]);
    ax.max = std::stod(parts[2]);
    ax.count = std::stoi(parts[3]);
  } catch (const std::exception&) {
    throw AxisError("axis has non-numeric fields: '" + text + "'");
  }
  return ax;
}

void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + tmp);
    out << content;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("cannot rename " + tmp + " to " + path);
  }
}

std::string manifest_comment(const json& manifest) {
  std::string out;
  for (const auto& [key, value] : manifest.items()) {
    out += "# " + key + ": " + value.dump() + "\n";
  }
  return out;
}

int cmd_solve(const PointFlags& f, bool force_oracle) {
  const auto start = std::chrono::steady_clock::now();
  const ModelParams p = f.params();
  const PhaseReport r = force_oracle ? classify_oracle(p) : classify(p);
  json doc = report_json(r);
  doc["manifest"] = manifest_json("solve", p, f.seed, start);
  std::cout << doc.dump(2) << "\n";
  return 0;
}

int cmd_sweep(const PointFlags& f, const std::string& ax1_text, const std::string& ax2_text,
              const std::string& out_path, std::optional<double> fixed_t, int verify_every,
              bool force_oracle) {
  const auto start = std::chrono::steady_clock::now();
  const AxisSpec ax1 = parse_axis(ax1_text);
  const AxisSpec ax2 = parse_axis(ax2_text);

  SweepOptions opts;
  opts.verify_every = verify_every;
  opts.force_oracle = force_oracle;
  opts.fixed_t = fixed_t;

  const SweepGrid grid = sweep(f.params(), ax1, ax2, opts);

  std::string csv;
  csv.reserve(grid.cells.size() * 160);
  for (const auto& cell : grid.cells) {
    const auto& p = cell.params;
    const auto t = p.t();
    csv += format_number(p.lambda) + "," + format_number(p.kappa) + "," +
           format_number(p.omega) + "," + format_number(p.Omega) + "," + format_number(p.U) +
           "," + (t ? format_number(*t) : "nan") + "," + std::string(to_string(cell.label)) +
           "," + format_number(cell.order_params.n_photon) + "," +
           format_number(cell.order_params.jz) + "," + format_number(cell.order_params.jx) +
           "," + format_number(cell.order_params.jy) + "," + format_number(cell.ground_energy) +
           "," + format_number(cell.stability.m[0]) + "," + format_number(cell.stability.m[1]) +
           "," + format_number(cell.stability.m[2]) + "," + format_number(cell.stability.m[3]) +
           "\n";
  }

  const json manifest = manifest_json("sweep", f.params(), f.seed, start);
  std::string content = manifest_comment(manifest);
  content += "lambda,kappa,omega,Omega,U,t,phase,n_photon,jz,jx,jy,energy,m1,m2,m3,m4\n";
  content += csv;
  write_atomic(out_path, content);
  std::cout << "wrote " << grid.cells.size() << " cells to " << out_path << "\n";
  return 0;
}

int cmd_boundaries(const PointFlags& f, const std::string& t_range, const std::string& out_path) {
  const auto start = std::chrono::steady_clock::now();
  AxisSpec ax{"t", -3.0, 3.0, 121};
  if (!t_range.empty()) {
    const AxisSpec parsed = parse_axis("t:" + t_range);
    ax.min = parsed.min;
    ax.max = parsed.max;
    ax.count = parsed.count;
  }
  if (ax.count < 1) throw AxisError("boundaries: count must be >= 1");

  const double sqw = std::sqrt(f.omega * f.Omega);
  std::string csv;
  for (int i = 0; i < ax.count; ++i) {
    const double t = ax.value(i);
    const auto row = [&](const char* curve, double value) {
      csv += std::string(curve) + "," + format_number(t) + "," + format_number(value) + "\n";
    };
    if (t != -1.0) row("np", sqw / std::fabs(1.0 + t));
    if (t >= 0.0) row("sp_x", sqw / std::fabs(1.0 + t));
    if (t <= 0.0 && t != 1.0) row("sp_p", sqw / std::fabs(1.0 - t));
    if (t < 0.0 && t != -1.0) {
      row("coex_lower_edge", sqw / std::fabs(1.0 - t));
      row("coex_upper_edge", sqw / std::fabs(1.0 + t));
    }
  }

  const json manifest = manifest_json("boundaries", f.params(), f.seed, start);
  std::string content = manifest_comment(manifest);
  content += "curve,t,lambda_critical\n";
  content += csv;
  write_atomic(out_path, content);
  std::cout << "wrote boundary curves to " << out_path << "\n";
  return 0;
}

int cmd_symmetry(const PointFlags& f, const std::string& check) {
  const auto start = std::chrono::steady_clock::now();
  const ModelParams p = f.params();
  const double inv_tol = 1e-12;

  json checks = json::array();
  bool all_pass = true;
  const auto add_check = [&](json c, bool pass) {
    c["pass"] = pass;
    checks.push_back(std::move(c));
    all_pass = all_pass && pass;
  };

  if (check == "relations" || check == "all") {
    add_check({{"name", "coxeter_W"}}, check_coxeter_relations(CoxeterGroup::W, f.seed));
    add_check({{"name", "coxeter_Wprime"}}, check_coxeter_relations(CoxeterGroup::Wprime, f.seed));
  }

  if (check == "invariance" || check == "all") {
    const std::vector<std::pair<std::string, Transform>> exact = {
        {"ParityPiS", ParityPiS{}}, {"Sx", Sx{}}, {"Sp", Sp{}},
        {"C2", C2{}},               {"V", V{}},   {"Vprime", Vprime{}}};
    for (const auto& [name, tr] : exact) {
      const double d = energy_invariance(tr, p, 1000, f.seed);
      add_check({{"name", "invariance_" + name}, {"max_abs_delta", round12(d)}}, d <= inv_tol);
    }
    // U(1) on the coupling lines (32 angles each)
    double worst0 = 0.0, worst1 = 0.0;
    const ModelParams tc{f.omega, f.Omega, std::max(1.0, std::fabs(f.lambda)), 0.0, 0.0};
    const ModelParams atc{f.omega, f.Omega, 0.0, std::max(1.0, std::fabs(f.kappa)), 0.0};
    for (int k = 0; k < 32; ++k) {
      const double phi = kTwoPi * k / 32;
      worst0 = std::max(worst0, energy_invariance(U1Rot{phi}, tc, 100, f.seed));
      worst1 = std::max(worst1, energy_invariance(U1Rot{phi}, atc, 100, f.seed));
    }
    add_check({{"name", "u1_kappa_zero_line"}, {"max_abs_delta", round12(worst0)}},
              worst0 <= inv_tol);
    add_check({{"name", "u1_lambda_zero_line"}, {"max_abs_delta", round12(worst1)}},
              worst1 <= inv_tol);
  }

  if (check == "table2" || check == "all") {
    const PhaseLabel phase = classify(p).label;
    const auto verdicts = table2_verdicts(p);
    json rows = json::array();
    bool table_pass = true;
    for (const auto& [kind, v] : verdicts) {
      const auto expected = table2_expected_state_fixed(phase, kind);
      std::string status = "ambiguous";
      if (expected) {
        status = (v.each_state_fixed == *expected) ? "ok" : "mismatch";
        table_pass = table_pass && v.each_state_fixed == *expected;
      }
      rows.push_back({{"transform", std::string(to_string(kind))},
                      {"energy_invariant", v.energy_invariant},
                      {"manifold_preserved", v.manifold_preserved},
                      {"each_state_fixed", v.each_state_fixed},
                      {"phase_image", std::string(to_string(v.phase_image))},
                      {"expected_state_fixed", expected ? json(*expected) : json(nullptr)},
                      {"status", status}});
    }
    add_check({{"name", "table2"}, {"phase", std::string(to_string(phase))}, {"rows", rows}},
              table_pass);
  }

  if (check == "exchange" || check == "all") {
    for (const auto& [name, tr] : std::vector<std::pair<std::string, Transform>>{
             {"St", St{}}, {"StPrime", StPrime{}}}) {
      const auto r = phase_exchange_check(tr, p);
      add_check({{"name", "exchange_" + name},
                 {"original", std::string(to_string(r.original))},
                 {"image", std::string(to_string(r.image))}},
                r.mapping_ok);
    }
  }

  json doc;
  doc["checks"] = checks;
  doc["pass"] = all_pass;
  doc["manifest"] = manifest_json("symmetry", p, f.seed, start);
  std::cout << doc.dump(2) << "\n";
  return all_pass ? 0 : kExitCheckFailed;
}

int cmd_exact(const PointFlags& f, std::optional<int> n_single, const std::string& n_list_text,
              int nmax) {
  const auto start = std::chrono::steady_clock::now();
  const ModelParams p = f.params();

  std::vector<int> atom_counts;
  if (n_single) atom_counts.push_back(*n_single);
  if (!n_list_text.empty()) {
    std::stringstream ss(n_list_text);
    std::string part;
    while (std::getline(ss, part, ',')) atom_counts.push_back(std::stoi(part));
  }
  if (atom_counts.empty()) {
    throw CLI::ValidationError("--N or --N-list is required");
  }

  const PhaseReport mf = classify(p);
  const double jperp2_mf = mf.order_params.jx * mf.order_params.jx +
                           mf.order_params.jy * mf.order_params.jy;

  EdConfig tmpl;
  tmpl.n_max = nmax;
  const auto scan = finite_size_scan(p, atom_counts, tmpl);

  json results = json::array();
  for (const auto& r : scan) {
    results.push_back({{"N", r.N},
                       {"e0_per_atom", round12(r.e0_per_atom)},
                       {"n_photon_per_atom", round12(r.n_photon_per_atom)},
                       {"jz_per_atom", round12(r.jz_per_atom)},
                       {"jperp2", round12(r.jperp2)},
                       {"parity", round12(r.parity)},
                       {"cutoff_used", r.cutoff_used},
                       {"top_level_weight", round12(r.top_level_weight)},
                       {"gap_to_mean_field", round12(std::fabs(r.e0_per_atom - mf.ground_energy))}});
  }

  json doc;
  doc["params"] = params_json(p);
  doc["mean_field"] = {{"phase", std::string(to_string(mf.label))},
                       {"energy", round12(mf.ground_energy)},
                       {"n_photon", round12(mf.order_params.n_photon)},
                       {"jz", round12(mf.order_params.jz)},
                       {"jperp2", round12(jperp2_mf)}};
  doc["results"] = results;
  doc["manifest"] = manifest_json("exact", p, f.seed, start);
  std::cout << doc.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ground-state atlas for the imbalanced Dicke model"};
  app.require_subcommand(1);

  PointFlags solve_f, sweep_f, bound_f, sym_f, exact_f;

  auto* solve = app.add_subcommand("solve", "classify a single parameter point");
  add_point_flags(solve, solve_f);
  bool solve_oracle = false;
  solve->add_flag("--oracle", solve_oracle, "force the variational-oracle path");

  auto* sw = app.add_subcommand("sweep", "classify a 2-D parameter grid into CSV");
  add_point_flags(sw, sweep_f);
  std::string ax1_text, ax2_text, sweep_out;
  double sweep_t = 0.0;
  bool sweep_has_t = false, sweep_oracle = false;
  int verify_every = 0;
  sw->add_option("--axis1", ax1_text, "name:min:max:count")->required();
  sw->add_option("--axis2", ax2_text, "name:min:max:count")->required();
  sw->add_option("--out", sweep_out, "output CSV path")->required();
  sw->add_option("--t", sweep_t, "fixed ratio t: rewrite kappa = t*lambda per cell")
      ->each([&](const std::string&) { sweep_has_t = true; });
  bool verify_default = false;
  sw->add_flag("--verify", verify_default, "oracle spot-check every 17th cell");
  sw->add_option("--verify-every", verify_every, "oracle spot-check stride (0 = off)");
  sw->add_flag("--oracle", sweep_oracle, "classify every cell with the oracle");

  auto* bd = app.add_subcommand("boundaries", "emit analytic critical lines as CSV");
  add_point_flags(bd, bound_f);
  std::string t_range, bound_out;
  bd->add_option("--t-range", t_range, "min:max:count (default -3:3:121)");
  bd->add_option("--out", bound_out, "output CSV path")->required();

  auto* sy = app.add_subcommand("symmetry", "run the symmetry audits");
  add_point_flags(sy, sym_f);
  std::string check = "all";
  sy->add_option("--check", check, "relations|invariance|table2|exchange|all")
      ->check(CLI::IsMember({"relations", "invariance", "table2", "exchange", "all"}));

  auto* ex = app.add_subcommand("exact", "finite-N exact diagonalization");
  add_point_flags(ex, exact_f);
  std::optional<int> n_single;
  std::string n_list_text;
  int nmax = 8;
  ex->add_option("--N", n_single, "atom count");
  ex->add_option("--N-list", n_list_text, "comma-separated atom counts");
  ex->add_option("--nmax", nmax, "initial photon cutoff (adaptively doubled)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitBadFlags;
  }

  try {
    if (solve->parsed()) return cmd_solve(solve_f, solve_oracle);
    if (sw->parsed()) {
      if (verify_default && verify_every == 0) verify_every = 17;
      return cmd_sweep(sweep_f, ax1_text, ax2_text, sweep_out,
                       sweep_has_t ? std::optional<double>(sweep_t) : std::nullopt, verify_every,
                       sweep_oracle);
    }
    if (bd->parsed()) return cmd_boundaries(bound_f, t_range, bound_out);
    if (sy->parsed()) return cmd_symmetry(sym_f, check);
    if (ex->parsed()) return cmd_exact(exact_f, n_single, n_list_text, nmax);
  } catch (const AxisError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadFlags;
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadFlags;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConvergence;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDimension;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadFlags;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
