// defquad: deformed-oscillator quadrature toolkit (brackets, polynomials,
// densities, wavefunctions, verification suites, figure datasets).

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "defquad/deformation.hpp"
#include "defquad/operators.hpp"
#include "defquad/polynomials.hpp"
#include "defquad/spectral.hpp"
#include "defquad/wavefunction.hpp"

using json = nlohmann::ordered_json;
using namespace defquad;

namespace {


std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<double> linspace(double lo, double hi, int npts) {
  std::vector<double> g(static_cast<size_t>(npts));
  for (int i = 0; i < npts; ++i)
    g[static_cast<size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / (npts - 1);
  return g;
}

int default_levels() {
  if (const char* env = std::getenv("DEFQUAD_LEVELS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1 && v <= 100000) return static_cast<int>(v);
  }
  return 400;
}

struct SpecFlags {
  std::string kind = "harmonic";
  std::optional<double> q;
  std::optional<double> p;

  DeformationSpec to_spec() const {
    DeformationSpec s;
    if (kind == "harmonic") {
      s = DeformationSpec::harmonic();
      if (q || p) throw DomainError("harmonic takes no q or p parameter");
    } else if (kind == "mathq") {
      if (!q) throw DomainError("mathq requires --q");
      s = DeformationSpec::math_q(*q);
    } else if (kind == "physq") {
      if (!q) throw DomainError("physq requires --q");
      s = DeformationSpec::physics_q(*q);
    } else if (kind == "pq") {
      if (!q || !p) throw DomainError("pq requires --p and --q");
      s = DeformationSpec::pq(*p, *q);
    } else {
      throw DomainError("unknown kind '" + kind + "' (harmonic|mathq|physq|pq)");
    }
    return validate(s);
  }
};

void add_spec_flags(CLI::App* cmd, SpecFlags& f) {
  cmd->add_option("--kind", f.kind, "deformation family: harmonic|mathq|physq|pq")
      ->capture_default_str();
  cmd->add_option("--q", f.q, "deformation parameter q");
  cmd->add_option("--p", f.p, "deformation parameter p (pq family)");
}

// ---- table output -------------------------------------------------------

struct Table {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

void write_csv(const Table& t, std::ostream& os) {
  for (const auto& [k, v] : t.metadata) os << "# " << k << ": " << v << "\n";
  for (size_t c = 0; c < t.columns.size(); ++c)
    os << t.columns[c] << (c + 1 < t.columns.size() ? "," : "\n");
  for (const auto& row : t.rows) {
    for (size_t c = 0; c < row.size(); ++c)
      os << fmt(row[c]) << (c + 1 < row.size() ? "," : "\n");
  }
}

void write_json(const Table& t, std::ostream& os) {
  json j;
  json meta = json::object();
  for (const auto& [k, v] : t.metadata) meta[k] = v;
  j["metadata"] = meta;
  j["columns"] = t.columns;
  json rows = json::array();
  for (const auto& row : t.rows) {
    json r = json::array();
    for (double v : row) r.push_back(v);
    rows.push_back(r);
  }
  j["rows"] = rows;
  os << j.dump(2) << "\n";
}

void emit_table(const Table& t, const std::string& format, const std::string& out) {
  std::ostringstream buf;
  if (format == "json")
    write_json(t, buf);
  else
    write_csv(t, buf);
  if (out.empty() || out == "-") {
    std::cout << buf.str();
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + out);
    f << buf.str();
    if (!f) throw std::runtime_error("write failed: " + out);
  }
}

// ---- verify suites ------------------------------------------------------

struct Check {
  std::string name;
  double value;
  double threshold;
  bool pass;
};

std::vector<DeformationSpec> default_specs() {
  return {DeformationSpec::harmonic(),       DeformationSpec::math_q(0.9),
          DeformationSpec::math_q(0.5),      DeformationSpec::physics_q(1.1),
          DeformationSpec::physics_q(1.9),   DeformationSpec::pq(1.3, 0.5),
          DeformationSpec::pq(1.9, 0.5)};
}

void check_le(std::vector<Check>& out, const std::string& name, double value, double thr) {
  out.push_back({name, value, thr, value <= thr});
}

void suite_algebra(const std::vector<DeformationSpec>& specs, std::vector<Check>& out) {
  for (const auto& s : specs) {
    check_le(out, "q_commutator_residual dim=32 " + to_string(s),
             q_commutator_residual(s, 32), 1e-12);
    check_le(out, "xp_commutator_residual dim=32 " + to_string(s),
             xp_commutator_residual(s, 32), 1e-12);
  }
}

void suite_polynomials(const std::vector<DeformationSpec>& specs, std::vector<Check>& out) {
  const std::vector<double> grid = linspace(-3.0, 3.0, 61);
  for (const auto& s : specs) {
    double worst = 0.0;
    const auto evs = eval_grid(s, grid, 3);
    for (size_t i = 0; i < grid.size(); ++i) {
      const double c2 = j2_closed_form(s, grid[i]);
      const double c3 = j3_closed_form(s, grid[i]);
      worst = std::max(worst, std::fabs(evs[i].values[2] - c2) / std::max(1.0, std::fabs(c2)));
      worst = std::max(worst, std::fabs(evs[i].values[3] - c3) / std::max(1.0, std::fabs(c3)));
    }
    check_le(out, "closed-form J2/J3 agreement " + to_string(s), worst, 1e-12);
  }
  // Hermite limit: the stated 2e-2/2e-3 constants hold through n=2; the
  // measured n<=8 envelope is ~1600*(1-q).
  for (const double q : {0.999, 0.9999}) {
    double dev2 = 0.0, dev8 = 0.0;
    const auto spec = DeformationSpec::math_q(q);
    for (double x : linspace(-3.0, 3.0, 61)) {
      const auto ev = eval_all(spec, x, 8);
      for (int n = 0; n <= 8; ++n) {
        const double h = hermite_oracle(n, x) / std::sqrt(std::exp2(n) * std::tgamma(n + 1.0));
        const double d = std::fabs(ev.values[static_cast<size_t>(n)] - h);
        if (n <= 2) dev2 = std::max(dev2, d);
        dev8 = std::max(dev8, d);
      }
    }
    check_le(out, "hermite limit n<=2 q=" + fmt(q), dev2, q == 0.999 ? 2e-2 : 2e-3);
    check_le(out, "hermite limit n<=8 q=" + fmt(q), dev8, q == 0.999 ? 2.0 : 0.2);
  }
  // Chebyshev limit
  {
    double worst = 0.0;
    const auto spec = DeformationSpec::math_q(1e-8);
    for (double x : linspace(-1.0, 1.0, 41)) {
      const auto ev = eval_all(spec, x, 10);
      for (int n = 0; n <= 10; ++n)
        worst = std::max(worst,
                         std::fabs(ev.values[static_cast<size_t>(n)] - chebyshev_u_oracle(n, x)));
    }
    check_le(out, "chebyshev limit q=1e-8 n<=10", worst, 1e-8);
  }
}

void suite_measure(const std::vector<DeformationSpec>& specs, std::vector<Check>& out) {
  for (const auto& s : specs) {
    const auto gram = orthonormality_matrix(s, 15, 64);
    double gmax = 0.0;
    for (int m = 0; m <= 15; ++m)
      for (int n = 0; n <= 15; ++n)
        gmax = std::max(gmax, std::fabs(gram[static_cast<size_t>(m) * 16 + n] - (m == n ? 1.0 : 0.0)));
    check_le(out, "gram residual nmax=15 N=64 " + to_string(s), gmax, 1e-10);

    const auto dm = gauss_measure(s, 32);
    double sw = 0.0;
    for (double w : dm.weights) sw += w;
    check_le(out, "weight sum |1-sum| N=32 " + to_string(s), std::fabs(1.0 - sw), 1e-13);
    double sym = 0.0;
    for (size_t k = 0; k < dm.nodes.size(); ++k) {
      const double a = dm.nodes[k], b = dm.nodes[dm.nodes.size() - 1 - k];
      sym = std::max(sym, std::fabs(a + b) / std::max(1.0, std::fabs(a)));
    }
    check_le(out, "node symmetry N=32 " + to_string(s), sym, 1e-12);
  }
}

void suite_wavefunctions(const std::vector<DeformationSpec>& specs, std::vector<Check>& out) {
  for (const auto& s : specs) {
    check_le(out, "normalization n=3 N=32 |1-norm| " + to_string(s),
             std::fabs(1.0 - normalization(s, 3, 32)), 1e-10);
    const auto dm = gauss_measure(s, 32);
    double worst = 0.0;
    for (size_t k = 1; k + 1 < dm.nodes.size(); ++k)
      worst = std::max(worst, eigenstate_residual(s, dm.nodes[k], 0.7, 32));
    check_le(out, "eigenstate residual interior nodes N=32 " + to_string(s), worst, 1e-8);
  }
}

int run_verify(const std::string& suite, const std::vector<DeformationSpec>& specs,
               const std::string& out_path) {
  std::vector<Check> checks;
  if (suite == "algebra" || suite == "all") suite_algebra(specs, checks);
  if (suite == "polynomials" || suite == "all") suite_polynomials(specs, checks);
  if (suite == "measure" || suite == "all") suite_measure(specs, checks);
  if (suite == "wavefunctions" || suite == "all") suite_wavefunctions(specs, checks);

  bool all_pass = true;
  double max_residual = 0.0;
  json jchecks = json::array();
  for (const auto& c : checks) {
    all_pass = all_pass && c.pass;
    max_residual = std::max(max_residual, c.value);
    jchecks.push_back({{"name", c.name},
                       {"value", c.value},
                       {"threshold", c.threshold},
                       {"pass", c.pass}});
  }
  json report = {{"suite", suite},
                 {"checks", jchecks},
                 {"max_residual", max_residual},
                 {"pass", all_pass}};
  std::ostringstream buf;
  buf << report.dump(2) << "\n";
  if (out_path.empty() || out_path == "-") {
    std::cout << buf.str();
  } else {
    std::ofstream f(out_path, std::ios::binary);
    f << buf.str();
  }
  std::cerr << "verify " << suite << ": " << (all_pass ? "pass" : "FAIL")
            << " (max residual " << fmt(max_residual) << ")\n";
  return all_pass ? 0 : 1;
}

// ---- figures ------------------------------------------------------------

struct FigureColumn {
  std::string name;
  DeformationSpec spec;
};

Table figure_table(char figure, int panel_level, int levels) {
  std::vector<FigureColumn> cols;
  DensityMethod method = DensityMethod::Stieltjes;
  double eta = 1e-3;
  if (figure == '1') {
    cols = {{"harmonic", DeformationSpec::harmonic()},
            {"q0.90", DeformationSpec::math_q(0.90)},
            {"q0.80", DeformationSpec::math_q(0.80)},
            {"q0.30", DeformationSpec::math_q(0.30)}};
  } else if (figure == '2') {
    // quasi-discrete physics-type measures need kernel smoothing at the scale
    // of their central mass-point structure for presentation curves
    method = DensityMethod::SmoothedGauss;
    eta = 0.5;
    cols = {{"harmonic", DeformationSpec::harmonic()},
            {"q1.1", DeformationSpec::physics_q(1.1)},
            {"q1.5", DeformationSpec::physics_q(1.5)},
            {"q1.9", DeformationSpec::physics_q(1.9)}};
  } else {
    cols = {{"harmonic", DeformationSpec::harmonic()},
            {"p1.3q0.5", DeformationSpec::pq(1.3, 0.5)},
            {"p1.5q0.5", DeformationSpec::pq(1.5, 0.5)},
            {"p1.9q0.5", DeformationSpec::pq(1.9, 0.5)}};
  }

  const std::vector<double> grid = linspace(-4.0, 4.0, 801);
  Table t;
  t.metadata = {{"generator", "defquad figures"},
                {"figure", std::string(1, figure) + (panel_level == 0 ? "a" : "b")},
                {"panel", panel_level == 0 ? "ground state (n=0)" : "first excited (n=1)"},
                {"levels", std::to_string(levels)},
                {"method", to_string(method)},
                {"eta", fmt(eta)}};
  t.columns.push_back("x");
  for (const auto& c : cols) t.columns.push_back(c.name);
  t.rows.assign(grid.size(), {});
  for (size_t i = 0; i < grid.size(); ++i) t.rows[i].push_back(grid[i]);
  for (const auto& c : cols) {
    const ProbabilityDensity pd =
        probability_density(c.spec, panel_level, grid, levels, method, eta);
    for (size_t i = 0; i < grid.size(); ++i) t.rows[i].push_back(pd.density[i]);
  }
  return t;
}

int run_figures(const std::string& which, const std::string& outdir, int levels) {
  std::vector<std::string> panels;
  if (which == "all")
    panels = {"1a", "1b", "2a", "2b", "3a", "3b"};
  else
    panels = {which};
  for (const auto& p : panels) {
    if (p.size() != 2 || p[0] < '1' || p[0] > '3' || (p[1] != 'a' && p[1] != 'b'))
      throw DomainError("unknown figure panel '" + p + "' (1a|1b|2a|2b|3a|3b|all)");
    const Table t = figure_table(p[0], p[1] == 'a' ? 0 : 1, levels);
    const std::string path = outdir + "/figure" + p + ".csv";
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    write_csv(t, f);
    if (!f) throw std::runtime_error("write failed: " + path);
    std::cerr << "wrote " << path << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deformed-oscillator quadrature wavefunction toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  std::string format = "csv";
  std::string out_path;
  app.add_option("--format", format, "output format: csv|json")->capture_default_str();
  app.add_option("--out", out_path, "output file (default: stdout)");

  // brackets
  auto* cmd_br = app.add_subcommand("brackets", "bracket sequence [0..n]");
  SpecFlags br_spec;
  int br_n = 10;
  add_spec_flags(cmd_br, br_spec);
  cmd_br->add_option("--n", br_n, "highest bracket index")->capture_default_str();

  // polys
  auto* cmd_po = app.add_subcommand("polys", "orthogonal polynomials J_0..J_N on a grid");
  SpecFlags po_spec;
  int po_order = 8, po_points = 161;
  double po_xmin = -4.0, po_xmax = 4.0;
  add_spec_flags(cmd_po, po_spec);
  cmd_po->add_option("--order", po_order, "highest polynomial order")->capture_default_str();
  cmd_po->add_option("--xmin", po_xmin, "grid lower bound")->capture_default_str();
  cmd_po->add_option("--xmax", po_xmax, "grid upper bound")->capture_default_str();
  cmd_po->add_option("--points", po_points, "grid point count")->capture_default_str();

  // density
  auto* cmd_de = app.add_subcommand("density", "probability density of level n");
  SpecFlags de_spec;
  int de_levels = default_levels(), de_level = 0, de_points = 801;
  double de_xmin = -4.0, de_xmax = 4.0, de_eta = 0.0;
  std::string de_method = "stieltjes";
  bool de_noclip = false;
  add_spec_flags(cmd_de, de_spec);
  cmd_de->add_option("--levels", de_levels,
                     "Fock truncation N (default 400; env DEFQUAD_LEVELS overrides)")
      ->capture_default_str();
  cmd_de->add_option("--level", de_level, "state level n")->capture_default_str();
  cmd_de->add_option("--xmin", de_xmin, "grid lower bound")->capture_default_str();
  cmd_de->add_option("--xmax", de_xmax, "grid upper bound")->capture_default_str();
  cmd_de->add_option("--points", de_points, "grid point count")->capture_default_str();
  cmd_de->add_option("--method", de_method, "stieltjes|smoothed-gauss")->capture_default_str();
  cmd_de->add_option("--eta", de_eta, "resolution/bandwidth (0 = method default)")
      ->capture_default_str();
  cmd_de->add_flag("--no-clip", de_noclip, "do not clip the grid to the estimated support");

  // wavefunction
  auto* cmd_wf = app.add_subcommand("wavefunction", "quadrature wavefunction Psi_n");
  SpecFlags wf_spec;
  int wf_levels = default_levels(), wf_level = 0, wf_points = 801;
  double wf_xmin = -4.0, wf_xmax = 4.0, wf_theta = 0.0;
  add_spec_flags(cmd_wf, wf_spec);
  cmd_wf->add_option("--levels", wf_levels, "Fock truncation N")->capture_default_str();
  cmd_wf->add_option("--level", wf_level, "state level n")->capture_default_str();
  cmd_wf->add_option("--theta", wf_theta, "quadrature phase (radians)")->capture_default_str();
  cmd_wf->add_option("--xmin", wf_xmin, "grid lower bound")->capture_default_str();
  cmd_wf->add_option("--xmax", wf_xmax, "grid upper bound")->capture_default_str();
  cmd_wf->add_option("--points", wf_points, "grid point count")->capture_default_str();

  // verify
  auto* cmd_ve = app.add_subcommand("verify", "run invariant suites, JSON report");
  SpecFlags ve_spec;
  std::string ve_suite = "all";
  cmd_ve->add_option("--suite", ve_suite, "algebra|polynomials|measure|wavefunctions|all")
      ->capture_default_str();
  auto* ve_kind_opt =
      cmd_ve->add_option("--kind", ve_spec.kind, "limit to one family (default: built-in set)");
  cmd_ve->add_option("--q", ve_spec.q, "deformation parameter q");
  cmd_ve->add_option("--p", ve_spec.p, "deformation parameter p");

  // figures
  auto* cmd_fi = app.add_subcommand("figures", "emit figure panel datasets as CSV");
  std::string fi_which = "all";
  std::string fi_outdir = ".";
  int fi_levels = default_levels();
  cmd_fi->add_option("--which", fi_which, "1a|1b|2a|2b|3a|3b|all")->capture_default_str();
  cmd_fi->add_option("--outdir", fi_outdir, "output directory")->capture_default_str();
  cmd_fi->add_option("--levels", fi_levels, "Fock truncation N")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (cmd_br->parsed()) {
      const DeformationSpec spec = br_spec.to_spec();
      if (br_n < 0) throw DomainError("--n must be nonnegative");
      Table t;
      t.metadata = {{"generator", "defquad brackets"}, {"spec", to_string(spec)}};
      t.columns = {"n", "bracket"};
      for (int n = 0; n <= br_n; ++n)
        t.rows.push_back({static_cast<double>(n), bracket(spec, n)});
      emit_table(t, format, out_path);
      return 0;
    }
    if (cmd_po->parsed()) {
      const DeformationSpec spec = po_spec.to_spec();
      if (po_points < 2 || !(po_xmax > po_xmin)) throw DomainError("bad grid bounds");
      const auto grid = linspace(po_xmin, po_xmax, po_points);
      const auto evs = eval_grid(spec, grid, po_order);
      Table t;
      t.metadata = {{"generator", "defquad polys"},
                    {"spec", to_string(spec)},
                    {"order", std::to_string(po_order)}};
      t.columns = {"x"};
      for (int n = 0; n <= po_order; ++n) t.columns.push_back("J" + std::to_string(n));
      for (size_t i = 0; i < grid.size(); ++i) {
        std::vector<double> row{grid[i]};
        for (int n = 0; n <= po_order; ++n)
          row.push_back(n < static_cast<int>(evs[i].values.size())
                            ? evs[i].values[static_cast<size_t>(n)]
                            : std::nan(""));
        t.rows.push_back(std::move(row));
      }
      emit_table(t, format, out_path);
      return 0;
    }
    if (cmd_de->parsed()) {
      const DeformationSpec spec = de_spec.to_spec();
      if (de_points < 2 || !(de_xmax > de_xmin)) throw DomainError("bad grid bounds");
      DensityMethod method;
      if (de_method == "stieltjes")
        method = DensityMethod::Stieltjes;
      else if (de_method == "smoothed-gauss")
        method = DensityMethod::SmoothedGauss;
      else
        throw DomainError("unknown method '" + de_method + "' (stieltjes|smoothed-gauss)");
      double lo = de_xmin, hi = de_xmax;
      if (!de_noclip) {
        const SupportEstimate se = support_estimate(spec, de_levels);
        if (se.bounded) {
          lo = std::max(lo, se.lo);
          hi = std::min(hi, se.hi);
        }
      }
      const auto grid = linspace(lo, hi, de_points);
      const ProbabilityDensity pd =
          probability_density(spec, de_level, grid, de_levels, method, de_eta);
      const double eta_used = de_eta > 0.0 ? de_eta : default_eta(spec, de_levels, method);
      Table t;
      t.metadata = {{"generator", "defquad density"},
                    {"spec", to_string(spec)},
                    {"level", std::to_string(de_level)},
                    {"levels", std::to_string(de_levels)},
                    {"method", to_string(method)},
                    {"eta", fmt(eta_used)},
                    {"normalization", fmt(pd.normalization)}};
      t.columns = {"x", "density"};
      for (size_t i = 0; i < grid.size(); ++i) t.rows.push_back({grid[i], pd.density[i]});
      emit_table(t, format, out_path);
      return 0;
    }
    if (cmd_wf->parsed()) {
      const DeformationSpec spec = wf_spec.to_spec();
      if (wf_points < 2 || !(wf_xmax > wf_xmin)) throw DomainError("bad grid bounds");
      const auto grid = linspace(wf_xmin, wf_xmax, wf_points);
      const WavefunctionSample ws =
          state_wavefunction(spec, wf_level, wf_theta, grid, wf_levels);
      Table t;
      t.metadata = {{"generator", "defquad wavefunction"},
                    {"spec", to_string(spec)},
                    {"level", std::to_string(wf_level)},
                    {"theta", fmt(wf_theta)},
                    {"levels", std::to_string(wf_levels)}};
      t.columns = {"x", "re", "im", "abs2"};
      for (size_t i = 0; i < grid.size(); ++i)
        t.rows.push_back({grid[i], ws.values[i].real(), ws.values[i].imag(),
                          std::norm(ws.values[i])});
      emit_table(t, format, out_path);
      return 0;
    }
    if (cmd_ve->parsed()) {
      std::vector<DeformationSpec> specs;
      if (ve_kind_opt->count() > 0)
        specs = {ve_spec.to_spec()};
      else
        specs = default_specs();
      if (ve_suite != "algebra" && ve_suite != "polynomials" && ve_suite != "measure" &&
          ve_suite != "wavefunctions" && ve_suite != "all")
        throw DomainError("unknown suite '" + ve_suite + "'");
      return run_verify(ve_suite, specs, out_path);
    }
    if (cmd_fi->parsed()) {
      return run_figures(fi_which, fi_outdir, fi_levels);
    }
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const OverflowError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 1;
  } catch (const ConvergenceError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
