#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <thread>

#include "fuzzy/dispersion.hpp"
#include "fuzzy/fock.hpp"
#include "fuzzy/moments.hpp"
#include "fuzzy/states.hpp"
#include "fuzzy/symmetry.hpp"
#include "fuzzy/verify.hpp"

namespace fuzzy::cli {

namespace {

using json = nlohmann::json;

struct RunConfig {
  std::string dist = "lorentzian";
  double zeta = 0.3;
  std::string table;
  int dim = 64;
  double rel_tol = kDefaultRelTol;
  double tail_tol = kDefaultTailTol;
  std::string format;  // json by default, text lines for verify
  std::string out;
  std::string config;
  bool compare_paper = false;
  bool parallel = false;
  bool force_quadrature = false;

  std::string grid = "-5:5:1001";
  std::string omega_grid = "0.01:10:1000";
  std::string gamma_model = "2,2,1";
  int n = 0;
  int levels = 8;
  double drive = 0.0;
  bool sharp = false;
  std::string z = "1,0";
  std::string mode = "displaced";
  double ratio = 0.0;
  std::string suite = "all";
};

struct Exit {
  int code;
};

// ---------------------------------------------------------------------------
// JSON emission: floats always with 17 significant digits.

void write_number(std::ostream& os, double v) {
  if (!std::isfinite(v)) {
    os << "null";
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << buf;
}

void write_json(std::ostream& os, const json& j, int indent = 0) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  const std::string inner(static_cast<std::size_t>(indent + 2), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << inner << json(it.key()).dump() << ": ";
        write_json(os, it.value(), indent + 2);
      }
      os << "\n" << pad << "}";
      return;
    }
    case json::value_t::array: {
      const bool flat = std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
      if (flat) {
        os << "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) os << ", ";
          write_json(os, j[i], indent + 2);
        }
        os << "]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << inner;
        write_json(os, j[i], indent + 2);
      }
      os << "\n" << pad << "]";
      return;
    }
    case json::value_t::number_float:
      write_number(os, j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

json cx(Complex c) { return json::array({c.real(), c.imag()}); }

std::string num17(double v) {
  std::ostringstream os;
  write_number(os, v);
  return os.str();
}

// ---------------------------------------------------------------------------

DistributionSpec make_spec(const RunConfig& cfg, std::ostream& err) {
  const DistKind kind = parse_dist_kind(cfg.dist);
  if (kind == DistKind::delta) return DistributionSpec::delta();
  if (kind == DistKind::tabulated) {
    if (cfg.table.empty()) throw Error(ErrorCode::InvalidSpec, "--dist tabulated needs --table PATH");
    auto spec = DistributionSpec::tabulated(read_table_csv(cfg.table));
    if (!looks_symmetric(spec)) err << "warning: tabulated density is not symmetric about x = 0\n";
    return spec;
  }
  return DistributionSpec::make(kind, cfg.zeta);
}

MomentPair compute_moments(const DistributionSpec& spec, const RunConfig& cfg) {
  if (cfg.force_quadrature && spec.kind() != DistKind::delta) return moments_quadrature(spec, cfg.rel_tol);
  if (spec.kind() == DistKind::gaussian || spec.kind() == DistKind::tabulated)
    return moments_quadrature(spec, cfg.rel_tol);
  return moments_analytic(spec);
}

json moments_payload(const DistributionSpec& spec, const MomentPair& m) {
  const auto c = commutation_function(m);
  json j;
  j["dist"] = to_string(spec.kind());
  j["zeta"] = spec.zeta();
  j["I0"] = cx(m.I0);
  j["I1"] = cx(m.I1);
  j["u"] = cx(c.u);
  j["v"] = cx(c.v);
  j["C"] = c.C;
  j["method"] = to_string(m.method);
  j["est_error"] = m.est_error;
  return j;
}

std::vector<double> parse_positive_grid(const std::string& text) {
  return Grid::parse(text).points();
}

Complex parse_complex(const std::string& text) {
  std::istringstream in(text);
  double re = 0.0, im = 0.0;
  char comma = 0;
  if (!(in >> re)) throw Error(ErrorCode::InvalidSpec, "bad complex '" + text + "', expected RE,IM");
  if (in >> comma) {
    if (comma != ',' || !(in >> im)) throw Error(ErrorCode::InvalidSpec, "bad complex '" + text + "'");
  }
  return {re, im};
}

template <typename T, typename F>
std::vector<T> chunked_map(std::size_t n, bool parallel, F&& f) {
  std::vector<T> out(n);
  if (!parallel || n < 64) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  const std::size_t workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  const std::size_t chunk = (n + workers - 1) / workers;
  std::vector<std::future<void>> jobs;
  for (std::size_t start = 0; start < n; start += chunk) {
    jobs.push_back(std::async(std::launch::async, [&, start] {
      for (std::size_t i = start; i < std::min(n, start + chunk); ++i) out[i] = f(i);
    }));
  }
  for (auto& j : jobs) j.get();
  return out;
}

// ---------------------------------------------------------------------------

struct Payload {
  json data;
  std::string csv;
  std::string text;
  int code = 0;
};

Payload cmd_moments(const RunConfig& cfg, std::ostream& err) {
  const auto spec = make_spec(cfg, err);
  Payload p;
  MomentPair m;
  try {
    m = compute_moments(spec, cfg);
  } catch (const QuadratureFailure& e) {
    m = e.partial();
    p.code = 2;
    p.data = moments_payload(spec, m);
    p.data["error"] = e.what();
  }
  if (p.code == 0) p.data = moments_payload(spec, m);
  if (spec.kind() != DistKind::delta && spec.kind() != DistKind::tabulated && spec.kind() != DistKind::gaussian) {
    p.data["normalization_residual"] = normalization_residual(spec);
  }
  if (cfg.compare_paper) {
    if (spec.kind() == DistKind::uniform) {
      const auto cmp = compare_uniform_commutation(spec.zeta());
      p.data["paper_eq20"] = cmp.printed;
      p.data["definitional"] = cmp.definitional;
      p.data["discrepancy"] = cmp.discrepancy;
      p.data["discrepancy_flagged"] = cmp.flagged;
    } else if (spec.kind() == DistKind::lorentzian) {
      const double closed = 1.0 / std::sqrt(1.0 + spec.zeta() * spec.zeta());
      p.data["paper_eq19"] = closed;
      p.data["definitional"] = p.data["C"];
      p.data["discrepancy"] = p.data["C"].get<double>() - closed;
      p.data["discrepancy_flagged"] = std::abs(p.data["C"].get<double>() - closed) > 1e-8;
    }
  }
  const auto c = commutation_function(m);
  std::ostringstream csv;
  csv << "I0_re,I0_im,I1_re,I1_im,C,method,est_error\n"
      << num17(m.I0.real()) << ',' << num17(m.I0.imag()) << ',' << num17(m.I1.real()) << ','
      << num17(m.I1.imag()) << ',' << num17(c.C) << ',' << to_string(m.method) << ',' << num17(m.est_error) << '\n';
  p.csv = csv.str();
  return p;
}

Payload cmd_commutator(const RunConfig& cfg, std::ostream& err) {
  const auto spec = make_spec(cfg, err);
  const auto c = commutation_function(compute_moments(spec, cfg));
  const auto ls = fuzzy_ladder(cfg.dim, c);
  const Matrix block = interior_block(commutator(ls.a_fuzzy, ls.a_fuzzy_dag), 1);
  const double dev = (block - c.C * Matrix::Identity(block.rows(), block.cols())).cwiseAbs().maxCoeff();
  Payload p;
  p.data["dist"] = to_string(spec.kind());
  p.data["zeta"] = spec.zeta();
  p.data["u"] = cx(c.u);
  p.data["v"] = cx(c.v);
  p.data["C"] = c.C;
  p.data["C_from_uv"] = c.c_from_uv();
  p.data["sub_bosonic"] = c.C > 0.0 && c.C <= 1.0;
  p.data["dim"] = cfg.dim;
  p.data["interior_deviation"] = dev;
  if (cfg.ratio != 0.0) {
    p.data["ratio"] = cfg.ratio;
    if (cfg.ratio > 0.0) p.data["cross_commutator"] = cross_commutator_value(cfg.ratio);
  }
  std::ostringstream csv;
  csv << "u_re,u_im,v_re,v_im,C\n"
      << num17(c.u.real()) << ',' << num17(c.u.imag()) << ',' << num17(c.v.real()) << ',' << num17(c.v.imag())
      << ',' << num17(c.C) << '\n';
  p.csv = csv.str();
  return p;
}

std::string state_csv(const FockVector& v) {
  std::ostringstream csv;
  csv << "n,re,im\n";
  for (int n = 0; n < v.dim(); ++n)
    csv << n << ',' << num17(v.coeffs(n).real()) << ',' << num17(v.coeffs(n).imag()) << '\n';
  return csv.str();
}

json state_json(const FockVector& v) {
  json arr = json::array();
  for (int n = 0; n < v.dim(); ++n) arr.push_back(cx(v.coeffs(n)));
  return arr;
}

Payload cmd_vacuum(const RunConfig& cfg, std::ostream& err) {
  const auto spec = make_spec(cfg, err);
  const auto c = commutation_function(compute_moments(spec, cfg));
  const auto vac = fuzzy_vacuum(c, cfg.dim, cfg.tail_tol);
  const auto ls = fuzzy_ladder(cfg.dim, c);
  Payload p;
  p.data["dist"] = to_string(spec.kind());
  p.data["zeta"] = spec.zeta();
  p.data["dim"] = cfg.dim;
  p.data["decay_ratio"] = vacuum_decay_ratio(c);
  p.data["overlap_with_sharp_vacuum"] = std::norm(vac.coeffs(0));
  p.data["annihilation_residual"] = (ls.a_fuzzy * vac.coeffs).norm();
  p.data["tail_weight"] = vac.tail_weight();
  p.data["coefficients"] = state_json(vac);
  p.csv = state_csv(vac);
  return p;
}

Payload cmd_spectrum(const RunConfig& cfg, std::ostream& err) {
  const auto spec = make_spec(cfg, err);
  const auto c = commutation_function(compute_moments(spec, cfg));
  const auto ls = fuzzy_ladder(cfg.dim, c);
  HamiltonianSpec h;
  h.drive = cfg.drive;
  h.fuzzy = !cfg.sharp;
  const auto levels = spectrum(hamiltonian(ls, h), cfg.levels);
  Payload p;
  p.data["dist"] = to_string(spec.kind());
  p.data["zeta"] = spec.zeta();
  p.data["dim"] = cfg.dim;
  p.data["C"] = c.C;
  p.data["fuzzy"] = h.fuzzy;
  p.data["drive"] = h.drive;
  p.data["levels"] = levels;
  std::ostringstream csv;
  csv << "n,energy\n";
  for (std::size_t i = 0; i < levels.size(); ++i) csv << i << ',' << num17(levels[i]) << '\n';
  p.csv = csv.str();
  return p;
}

Payload cmd_wavefunction(const RunConfig& cfg, std::ostream& err) {
  const auto spec = make_spec(cfg, err);
  const auto c = commutation_function(compute_moments(spec, cfg));
  const auto grid = Grid::parse(cfg.grid);
  const auto ls = fuzzy_ladder(cfg.dim, c);
  const auto vac = fuzzy_vacuum(c, cfg.dim, cfg.tail_tol);
  const auto state = fuzzy_fock_state(cfg.n, vac, ls);
  const auto sharp = basis_state(cfg.dim, cfg.n);
  const auto& xs = grid.points();
  const auto dens = chunked_map<std::pair<double, double>>(xs.size(), cfg.parallel, [&](std::size_t i) {
    const Grid one({xs[i]});
    return std::pair{position_density(state, one)(0), position_density(sharp, one)(0)};
  });
  RealVector fuzzy_d(static_cast<Eigen::Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) fuzzy_d(i) = dens[i].first;
  Payload p;
  json pts = json::array();
  std::ostringstream csv;
  csv << "xi,density\n";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    pts.push_back(json::array({xs[i], dens[i].first, dens[i].second}));
    csv << num17(xs[i]) << ',' << num17(dens[i].first) << '\n';
  }
  p.data["dist"] = to_string(spec.kind());
  p.data["zeta"] = spec.zeta();
  p.data["n"] = cfg.n;
  p.data["dim"] = cfg.dim;
  p.data["norm"] = grid_integral(fuzzy_d, grid);
  p.data["columns"] = json::array({"xi", "fuzzy_density", "sharp_density"});
  p.data["points"] = pts;
  p.csv = csv.str();
  return p;
}

Payload cmd_coherent(const RunConfig& cfg, std::ostream& err) {
  const auto spec = make_spec(cfg, err);
  const auto c = commutation_function(compute_moments(spec, cfg));
  const Complex z = parse_complex(cfg.z);
  if (cfg.mode != "displaced" && cfg.mode != "sum")
    throw Error(ErrorCode::InvalidSpec, "--mode must be displaced or sum");
  const auto arg = rescale_displacement(z, c);
  const auto displaced = coherent_displaced(z, c, cfg.dim);
  const auto summed = coherent_sum(z, c, cfg.dim);
  const auto& chosen = cfg.mode == "sum" ? summed : displaced;
  const Matrix q = fuzzy_ladder(cfg.dim, c).position();
  Payload p;
  p.data["dist"] = to_string(spec.kind());
  p.data["zeta"] = spec.zeta();
  p.data["z"] = cx(z);
  p.data["z_rescaled"] = cx(arg.z_rescaled);
  p.data["mode"] = cfg.mode;
  p.data["fidelity_displaced_vs_sum"] = fidelity(displaced, summed);
  p.data["mean_position"] = std::real(chosen.coeffs.dot(q * chosen.coeffs));
  p.data["coefficients"] = state_json(chosen);
  p.csv = state_csv(chosen);
  return p;
}

Payload cmd_dispersion(const RunConfig& cfg, std::ostream&) {
  const DistKind kind = parse_dist_kind(cfg.dist);
  const GammaModel model = parse_gamma_model(cfg.gamma_model, kind);
  const auto grid = parse_positive_grid(cfg.omega_grid);
  const auto pts = chunked_map<CurvePoint>(grid.size(), cfg.parallel, [&](std::size_t i) {
    return dispersion_curve(model, {grid[i]}).front();
  });
  const auto rep = constraint_report(model, grid);
  Payload p;
  p.data["model"] = {{"g", model.g}, {"mu", model.mu}, {"c", model.c}, {"kind", to_string(model.kind)}};
  json arr = json::array();
  std::ostringstream csv;
  csv << "omega,energy\n";
  for (const auto& pt : pts) {
    json row = json::array({pt.omega, pt.energy});
    if (std::isfinite(pt.printed_energy)) row.push_back(pt.printed_energy);
    arr.push_back(row);
    csv << num17(pt.omega) << ',' << num17(pt.energy) << '\n';
  }
  p.data["columns"] = kind == DistKind::uniform ? json::array({"omega", "energy", "printed_closed_form_energy"})
                                                : json::array({"omega", "energy"});
  p.data["points"] = arr;
  json viol = json::array();
  for (const auto& v : rep.violations) viol.push_back(json::array({v.omega, v.gamma, v.bound}));
  p.data["constraints"] = {{"finite_zero_limit", rep.finite_zero_limit},
                           {"zero_limit_energy", rep.zero_limit_energy},
                           {"large_omega_exponent_ok", rep.large_omega_exponent_ok},
                           {"monotonic_on_grid", rep.monotonic_on_grid},
                           {"violations", viol}};
  p.csv = csv.str();
  return p;
}

Payload cmd_verify(const RunConfig& cfg, std::ostream&) {
  const auto rep = run_verification(cfg.suite);
  Payload p;
  std::ostringstream text;
  json crit = json::array();
  for (const auto& r : rep.criteria) {
    text << format_line(r) << '\n';
    crit.push_back({{"id", r.id}, {"suite", r.suite}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail}});
  }
  json sym = json::array();
  for (const auto& s : rep.symmetry)
    sym.push_back({{"transform", s.transform}, {"system", s.system}, {"invariant", s.invariant},
                   {"deviation", s.deviation}});
  if (!rep.all_passed()) {
    text << "FAILED criteria:";
    for (int id : rep.failed_ids()) text << " AC" << (id < 10 ? "0" : "") << id;
    text << '\n';
    p.code = 3;
  }
  p.data["suite"] = cfg.suite;
  p.data["criteria"] = crit;
  p.data["symmetry"] = sym;
  p.data["all_passed"] = rep.all_passed();
  p.text = text.str();
  return p;
}

// ---------------------------------------------------------------------------

void apply_config_file(RunConfig& cfg, const CLI::App& sub) {
  if (cfg.config.empty()) return;
  std::ifstream in(cfg.config);
  if (!in) throw Error(ErrorCode::Io, "cannot open config '" + cfg.config + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidSpec, std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::InvalidSpec, "config must be a JSON object");
  auto unset = [&sub](const std::string& flag) {
    for (const auto* opt : sub.get_options())
      if (opt->check_lname(flag)) return opt->count() == 0;
    return false;
  };
  for (auto it = j.begin(); it != j.end(); ++it) {
    std::string key = it.key();
    std::replace(key.begin(), key.end(), '_', '-');
    static const char* const known[] = {"dist", "zeta", "table", "dim", "rel-tol", "tail-tol", "format", "out",
                                        "compare-paper", "parallel", "grid", "omega-grid", "gamma-model", "n",
                                        "levels", "drive", "z", "mode", "suite", "ratio", "sharp", "quadrature"};
    if (std::find(std::begin(known), std::end(known), key) == std::end(known))
      throw Error(ErrorCode::InvalidSpec, "unknown config key '" + it.key() + "'");
    if (!unset(key)) continue;
    const json& v = it.value();
    try {
      if (key == "dist") cfg.dist = v.get<std::string>();
      else if (key == "zeta") cfg.zeta = v.get<double>();
      else if (key == "table") cfg.table = v.get<std::string>();
      else if (key == "dim") cfg.dim = v.get<int>();
      else if (key == "rel-tol") cfg.rel_tol = v.get<double>();
      else if (key == "tail-tol") cfg.tail_tol = v.get<double>();
      else if (key == "format") cfg.format = v.get<std::string>();
      else if (key == "out") cfg.out = v.get<std::string>();
      else if (key == "compare-paper") cfg.compare_paper = v.get<bool>();
      else if (key == "parallel") cfg.parallel = v.get<bool>();
      else if (key == "grid") cfg.grid = v.get<std::string>();
      else if (key == "omega-grid") cfg.omega_grid = v.get<std::string>();
      else if (key == "gamma-model") cfg.gamma_model = v.get<std::string>();
      else if (key == "n") cfg.n = v.get<int>();
      else if (key == "levels") cfg.levels = v.get<int>();
      else if (key == "drive") cfg.drive = v.get<double>();
      else if (key == "z") cfg.z = v.get<std::string>();
      else if (key == "mode") cfg.mode = v.get<std::string>();
      else if (key == "suite") cfg.suite = v.get<std::string>();
      else if (key == "ratio") cfg.ratio = v.get<double>();
      else if (key == "sharp") cfg.sharp = v.get<bool>();
      else if (key == "quadrature") cfg.force_quadrature = v.get<bool>();
    } catch (const json::exception&) {
      throw Error(ErrorCode::InvalidSpec, "config key '" + it.key() + "' has the wrong type");
    }
  }
}

void check_ranges(const RunConfig& cfg) {
  if (cfg.dim < 3) throw Error(ErrorCode::DimTooSmall, "--dim must be >= 3");
  if (!cfg.format.empty() && cfg.format != "json" && cfg.format != "csv") throw Error(ErrorCode::InvalidSpec, "--format must be csv or json");
  if (!(cfg.rel_tol >= 1e-13 && cfg.rel_tol <= 1e-3))
    throw Error(ErrorCode::InvalidTolerance, "--rel-tol must lie in [1e-13, 1e-3]");
  if (!(cfg.tail_tol > 0.0)) throw Error(ErrorCode::InvalidTolerance, "--tail-tol must be > 0");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fuzzy ladder operators: moments, Fock-space matrices, states, dispersion"};
  app.require_subcommand(1);
  RunConfig cfg;

  using Handler = Payload (*)(const RunConfig&, std::ostream&);
  struct Command {
    const char* name;
    const char* help;
    Handler handler;
  };
  const Command commands[] = {
      {"moments", "Moment integrals I0, I1 and the commutation function", cmd_moments},
      {"commutator", "Fuzzy coefficients and the commutator as a matrix identity", cmd_commutator},
      {"vacuum", "Fuzzy vacuum coefficients on the sharp Fock basis", cmd_vacuum},
      {"spectrum", "Lowest levels of the (fuzzy) oscillator Hamiltonian", cmd_spectrum},
      {"wavefunction", "Position density of the n-th fuzzy Fock state", cmd_wavefunction},
      {"coherent", "Fuzzy coherent states (displaced vacuum or coherent sum)", cmd_coherent},
      {"dispersion", "Single-excitation energy curve for a width law Gamma = g omega^mu", cmd_dispersion},
      {"verify", "Run the acceptance criteria", cmd_verify},
  };

  std::vector<std::pair<CLI::App*, Handler>> subs;
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--dist", cfg.dist, "delta|lorentzian|uniform|gaussian|tabulated");
    sub->add_option("--zeta", cfg.zeta, "dimensionless width Gamma/(2 omega)");
    sub->add_option("--table", cfg.table, "CSV table (header x,f) for --dist tabulated");
    sub->add_option("--dim", cfg.dim, "Fock-space truncation");
    sub->add_option("--rel-tol", cfg.rel_tol, "quadrature relative tolerance");
    sub->add_option("--tail-tol", cfg.tail_tol, "vacuum truncation tail tolerance");
    sub->add_option("--format", cfg.format, "csv|json");
    sub->add_option("--out", cfg.out, "write payload to PATH");
    sub->add_option("--config", cfg.config, "JSON config with the same keys; flags override");
    sub->add_flag("--compare-paper", cfg.compare_paper, "report the printed closed forms alongside");
    sub->add_flag("--parallel", cfg.parallel, "evaluate grid sweeps concurrently");
    sub->add_flag("--quadrature", cfg.force_quadrature, "force the quadrature route for moments");
    sub->add_option("--grid", cfg.grid, "position grid A:B:N");
    sub->add_option("--omega-grid", cfg.omega_grid, "frequency grid A:B:N");
    sub->add_option("--gamma-model", cfg.gamma_model, "g,mu,c");
    sub->add_option("--n", cfg.n, "Fock level");
    sub->add_option("--levels", cfg.levels, "number of levels");
    sub->add_option("--drive", cfg.drive, "linear drive strength lambda");
    sub->add_flag("--sharp", cfg.sharp, "use sharp operators");
    sub->add_option("--z", cfg.z, "complex displacement RE,IM");
    sub->add_option("--mode", cfg.mode, "displaced|sum");
    sub->add_option("--ratio", cfg.ratio, "frequency ratio for the cross commutator");
    sub->add_option("--suite", cfg.suite, "all|moments|fock|states|symmetry|dispersion|limits");
    subs.emplace_back(sub, c.handler);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  for (const auto& [sub, handler] : subs) {
    if (!sub->parsed()) continue;
    Payload p;
    try {
      apply_config_file(cfg, *sub);
      check_ranges(cfg);
      p = handler(cfg, err);
    } catch (const QuadratureFailure& e) {
      err << "error: " << e.what() << '\n';
      return 2;
    } catch (const Error& e) {
      err << "error: " << e.what() << '\n';
      return e.code() == ErrorCode::QuadratureNonConvergence ? 2 : 1;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return 1;
    }

    std::ostringstream body;
    if (!p.text.empty() && cfg.format != "json") {
      body << p.text;
    } else if (cfg.format == "csv" && !p.csv.empty()) {
      body << p.csv;
    } else {
      write_json(body, p.data);
      body << '\n';
    }
    if (cfg.out.empty()) {
      out << body.str();
    } else {
      std::ofstream f(cfg.out, std::ios::binary);
      if (!f) {
        err << "error: cannot write '" << cfg.out << "'\n";
        return 1;
      }
      f << body.str();
      if (!p.text.empty()) out << p.text;
    }
    return p.code;
  }
  return 1;
}

}  // namespace fuzzy::cli
