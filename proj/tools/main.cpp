// Command-line front end: orchestrates enumeration, pair correlation,
// closed-form density, volume bodies, closed-geodesic arithmetic and the
// spectral transform, with deterministic CSV/JSON emission.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyperlat/ballenum.hpp"
#include "hyperlat/geodesics.hpp"
#include "hyperlat/io.hpp"
#include "hyperlat/modgroup.hpp"
#include "hyperlat/paircorr.hpp"
#include "hyperlat/selberg.hpp"
#include "hyperlat/volumes.hpp"

namespace {

using hyperlat::io::CsvDoc;
using hyperlat::io::JsonObj;
using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

struct GlobalOpts {
  std::string omega = "i";
  int threads = 1;
  std::string out = "-";
  std::uint64_t seed = 0;
  std::string config_path;
};

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read config file: " + path);
  json cfg = json::parse(f);
  if (!cfg.is_object())
    throw std::invalid_argument("config file must hold a JSON object");
  return cfg;
}

// Config keys mirror long flag names (without the leading dashes); a flag
// given on the command line overrides the config value.
template <class T>
void cfg_apply(const json& cfg, CLI::App* app, const std::string& flag,
               T& var) {
  const CLI::Option* opt = app->get_option(flag);
  if (opt->count() > 0) return;
  std::string key = flag.substr(2);
  auto it = cfg.find(key);
  if (it == cfg.end()) return;
  if constexpr (std::is_same_v<T, std::string>) {
    var = it->is_string() ? it->get<std::string>() : it->dump();
  } else {
    // Numbers may arrive as JSON numbers or as strings (mirroring how the
    // flag would be typed on the command line).
    if (it->is_string()) {
      std::istringstream ss(it->get<std::string>());
      ss >> var;
      if (ss.fail())
        throw std::invalid_argument("config value for " + key +
                                    " is not parseable");
    } else {
      var = it->get<T>();
    }
  }
}

void emit(const GlobalOpts& g, const std::string& content) {
  hyperlat::io::write_text_file(g.out, content);
}

void write_sidecar(const GlobalOpts& g, const JsonObj& config_echo,
                   const JsonObj& counts, double wall_seconds) {
  if (g.out == "-" || g.out.empty()) return;
  JsonObj meta;
  meta.str("tool", "hyperlat").str("version", kVersion);
  meta.raw("config", config_echo.line());
  meta.raw("counts", counts.line());
  meta.num("wall_time_s", wall_seconds, 6);
  hyperlat::io::write_text_file(g.out + ".meta.json", meta.line() + "\n");
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

hyperlat::GroupElement parse_matrix(const std::string& s) {
  std::istringstream is(s);
  long long a, b, c, d;
  char c1, c2, c3;
  if (!(is >> a >> c1 >> b >> c2 >> c >> c3 >> d) || c1 != ',' || c2 != ',' ||
      c3 != ',')
    throw std::invalid_argument("matrix must be given as a,b,c,d");
  return hyperlat::normalize(a, b, c, d);
}

// ---------------------------------------------------------------- enumerate

int run_enumerate(const GlobalOpts& g, const std::string& q_str,
                  const std::string& mode_str, const std::string& emit_kind) {
  Timer timer;
  hyperlat::BasePoint omega = hyperlat::BasePoint::parse(g.omega);
  hyperlat::Rat q = hyperlat::parse_decimal_or_rational(q_str);
  hyperlat::BallMode mode = hyperlat::parse_ball_mode(mode_str);
  hyperlat::BallSpec spec = hyperlat::BallSpec::make(omega, q, mode);

  JsonObj cfg;
  cfg.str("subcommand", "enumerate")
      .str("omega", omega.describe())
      .str("q", q_str)
      .str("mode", hyperlat::ball_mode_name(mode))
      .str("emit", emit_kind);

  if (emit_kind == "count") {
    std::uint64_t n = hyperlat::count_ball(spec, g.threads).b_total;
    JsonObj out;
    out.str("tool", "hyperlat")
        .str("version", kVersion)
        .str("omega", omega.describe())
        .str("q", q_str)
        .str("mode", hyperlat::ball_mode_name(mode))
        .num("count", n);
    emit(g, out.line() + "\n");
    JsonObj counts;
    counts.num("count", n);
    write_sidecar(g, cfg, counts, timer.seconds());
    return 0;
  }

  auto elems = hyperlat::enumerate_ball(spec, g.threads);
  JsonObj header;
  header.str("tool", "hyperlat")
      .str("version", kVersion)
      .str("subcommand", "enumerate")
      .str("omega", omega.describe())
      .str("q", q_str)
      .str("mode", hyperlat::ball_mode_name(mode))
      .num("count", static_cast<std::uint64_t>(elems.size()));
  CsvDoc doc(header.line(), {"a", "b", "c", "d", "T_num", "T_den"});
  for (const auto& e : elems) {
    hyperlat::OrbitCoords oc = hyperlat::coords(omega, e);
    doc.add_row({hyperlat::io::fmt_int(e.a), hyperlat::io::fmt_int(e.b),
                 hyperlat::io::fmt_int(e.c), hyperlat::io::fmt_int(e.d),
                 hyperlat::io::fmt_int(numerator(oc.T)),
                 hyperlat::io::fmt_int(denominator(oc.T))});
  }
  emit(g, doc.str());
  JsonObj counts;
  counts.num("count", static_cast<std::uint64_t>(elems.size()));
  write_sidecar(g, cfg, counts, timer.seconds());
  return 0;
}

// ------------------------------------------------- paircorr/density/compare

struct GridOpts {
  std::string q = "300";
  int elliptic = 1;
  double bin = 0.1;
  double xi_min = 0.1;
  double xi_max = 3.0;
  double t_cut = 1e5;
};

// Bin centers shared by the empirical and theoretical paths: identical
// arithmetic guarantees bit-identical xi columns.
std::vector<double> bin_centers(double xi_min, double xi_max, double bin) {
  std::size_t nbins =
      static_cast<std::size_t>(std::llround((xi_max - xi_min) / bin));
  if (nbins == 0) nbins = 1;
  std::vector<double> centers(nbins);
  for (std::size_t j = 0; j < nbins; ++j) {
    double lo = xi_min + static_cast<double>(j) * bin;
    double hi = xi_min + static_cast<double>(j + 1) * bin;
    centers[j] = 0.5 * (lo + hi);
  }
  return centers;
}

int run_corr(const GlobalOpts& g, const GridOpts& o, bool with_empirical,
             bool with_theory, const char* name) {
  Timer timer;
  hyperlat::BasePoint omega = hyperlat::BasePoint::parse(g.omega);

  JsonObj cfg;
  cfg.str("subcommand", name)
      .str("omega", omega.describe())
      .str("q", o.q)
      .num("elliptic", o.elliptic)
      .num("bin", o.bin)
      .num("xi_min", o.xi_min)
      .num("xi_max", o.xi_max)
      .num("t_cut", o.t_cut);

  std::unique_ptr<hyperlat::TheorySeries> theory;
  if (with_theory)
    theory = std::make_unique<hyperlat::TheorySeries>(
        hyperlat::TheorySeries::build(omega, o.t_cut, g.threads));

  JsonObj header;
  header.str("tool", "hyperlat")
      .str("version", kVersion)
      .str("subcommand", name)
      .str("omega", omega.describe())
      .num("elliptic", o.elliptic)
      .num("bin", o.bin)
      .num("xi_min", o.xi_min)
      .num("xi_max", o.xi_max);

  JsonObj counts;
  if (with_theory) {
    header.num("t_cut", o.t_cut);
    counts.num("theory_terms",
               static_cast<std::uint64_t>(theory->terms().size()));
  }

  if (with_empirical) {
    hyperlat::Rat q = hyperlat::parse_decimal_or_rational(o.q);
    hyperlat::CorrelationGrid grid =
        hyperlat::correlate(omega, q * q, o.elliptic, o.bin, o.xi_min,
                            o.xi_max, theory.get(), g.threads);
    header.str("q", o.q)
        .num("b_total", grid.b_total)
        .num("b_stabilizer", grid.b_stabilizer)
        .num("n_samples", grid.n_samples)
        .num("b_norm", grid.b_norm);
    counts.num("b_total", grid.b_total).num("n_samples", grid.n_samples);

    std::vector<std::string> cols = {"xi", "r2_emp", "g2_emp"};
    if (with_theory) {
      cols.push_back("g2_theory");
      cols.push_back("tail_bound");
    }
    CsvDoc doc(header.line(), cols);
    double max_tail = 0;
    for (std::size_t j = 0; j < grid.xi.size(); ++j) {
      std::vector<std::string> row = {hyperlat::io::fmt_double(grid.xi[j]),
                                      hyperlat::io::fmt_double(grid.r2_emp[j]),
                                      hyperlat::io::fmt_double(grid.g2_emp[j])};
      if (with_theory) {
        row.push_back(hyperlat::io::fmt_double(grid.g2_theory[j]));
        row.push_back(hyperlat::io::fmt_double(grid.tail[j]));
        max_tail = std::max(max_tail, grid.tail[j]);
      }
      doc.add_row(std::move(row));
    }
    emit(g, doc.str());
    counts.num("max_tail_bound", max_tail);
    write_sidecar(g, cfg, counts, timer.seconds());
    return 0;
  }

  // Theory only.
  CsvDoc doc(header.line(), {"xi", "g2_theory", "tail_bound"});
  double max_tail = 0;
  for (double xi : bin_centers(o.xi_min, o.xi_max, o.bin)) {
    hyperlat::TheoryEval ev = theory->g2(o.elliptic * xi);
    doc.add_row({hyperlat::io::fmt_double(xi),
                 hyperlat::io::fmt_double(ev.value),
                 hyperlat::io::fmt_double(ev.tail)});
    max_tail = std::max(max_tail, ev.tail);
  }
  emit(g, doc.str());
  counts.num("max_tail_bound", max_tail);
  write_sidecar(g, cfg, counts, timer.seconds());
  return 0;
}

// ------------------------------------------------------------------ volumes

int run_volumes(const GlobalOpts& g, const std::string& m_str, double xi,
                const std::string& method, std::uint64_t samples) {
  Timer timer;
  hyperlat::BasePoint omega = hyperlat::BasePoint::parse(g.omega);
  hyperlat::GroupElement m = parse_matrix(m_str);
  hyperlat::RegionSpec spec = hyperlat::RegionSpec::make(omega, m, xi);

  double identity = hyperlat::dbm_dxi(spec) -
                    std::numbers::pi /
                        (hyperlat::to_double(omega.delta) *
                         hyperlat::to_double(omega.delta) * xi * xi) *
                        hyperlat::f_xi(xi, spec.ell);

  JsonObj out;
  out.str("tool", "hyperlat")
      .str("version", kVersion)
      .str("omega", omega.describe())
      .str("m", m.describe())
      .num("xi", xi)
      .str("method", method);

  double value = 0, std_error = 0;
  if (method == "mc" || method == "both") {
    hyperlat::VolumeEstimate mc =
        hyperlat::vol_mc(spec, samples, g.seed, g.threads);
    out.num("mc_value", mc.value).num("mc_std_error", mc.std_error);
    out.num("samples", samples).num("seed", g.seed);
    value = mc.value;
    std_error = mc.std_error;
  }
  if (method == "closed" || method == "both") {
    hyperlat::VolumeEstimate cf = hyperlat::vol_closed(spec);
    out.num("closed_value", cf.value);
    value = cf.value;
    if (method == "closed") std_error = 0;
  }
  out.num("value", value)
      .num("std_error", std_error)
      .num("f_identity_residual", identity);
  emit(g, out.line() + "\n");

  JsonObj cfg;
  cfg.str("subcommand", "volumes")
      .str("omega", omega.describe())
      .str("m", m_str)
      .num("xi", xi)
      .str("method", method)
      .num("samples", samples)
      .num("seed", g.seed);
  JsonObj counts;
  counts.num("samples", method == "closed" ? 0 : samples);
  write_sidecar(g, cfg, counts, timer.seconds());
  return 0;
}

// ---------------------------------------------------------------- geodesics

std::string pairs_to_string(const std::vector<std::pair<hyperlat::Int, hyperlat::Int>>& ps) {
  std::string s;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (i) s += ";";
    s += "(" + ps[i].first.str() + " " + ps[i].second.str() + ")";
  }
  return s;
}

int run_geodesics(const GlobalOpts& g, long long delta, long long delta_max,
                  const std::string& emit_kind) {
  Timer timer;
  std::vector<hyperlat::DiscriminantRecord> recs;
  if (delta > 0) {
    recs.push_back(hyperlat::classify(delta));
  } else {
    for (long long d = 2; d <= delta_max; ++d)
      if (hyperlat::in_d_rho(d)) recs.push_back(hyperlat::classify(d));
  }

  JsonObj header;
  header.str("tool", "hyperlat")
      .str("version", kVersion)
      .str("subcommand", "geodesics")
      .num(delta > 0 ? "delta" : "delta_max",
           static_cast<std::int64_t>(delta > 0 ? delta : delta_max))
      .num("rows", static_cast<std::uint64_t>(recs.size()));

  std::string content;
  if (emit_kind == "csv") {
    CsvDoc doc(header.line(), {"delta", "pairs", "pell_t", "pell_k", "nine_t",
                               "nine_u", "class", "fibers", "num_classes"});
    for (const auto& r : recs) {
      doc.add_row({r.delta.str(), pairs_to_string(r.pairs), r.pell.t_big.str(),
                   r.pell.k_small.str(), r.nine ? r.nine->t.str() : "-",
                   r.nine ? r.nine->u.str() : "-",
                   "(" + std::to_string(r.eps1) + " " + std::to_string(r.eps2) +
                       ")",
                   std::to_string(r.fibers), std::to_string(r.num_classes)});
    }
    content = doc.str();
  } else {
    std::ostringstream os;
    os << "# " << header.line() << "\n";
    os << "delta | (T k) | (t u) | class | fibers | #classes | pairs\n";
    for (const auto& r : recs) {
      os << r.delta << " | (" << r.pell.t_big << " " << r.pell.k_small
         << ") | ";
      if (r.nine)
        os << "(" << r.nine->t << " " << r.nine->u << ")";
      else
        os << "-";
      os << " | (" << r.eps1 << " " << r.eps2 << ") | " << r.fibers << " | "
         << r.num_classes << " | " << pairs_to_string(r.pairs) << "\n";
    }
    content = os.str();
  }
  emit(g, content);

  JsonObj cfg;
  cfg.str("subcommand", "geodesics")
      .num("delta", static_cast<std::int64_t>(delta))
      .num("delta_max", static_cast<std::int64_t>(delta_max))
      .str("emit", emit_kind);
  JsonObj counts;
  counts.num("rows", static_cast<std::uint64_t>(recs.size()));
  write_sidecar(g, cfg, counts, timer.seconds());
  return 0;
}

// ------------------------------------------------------------------ selberg

int run_selberg(const GlobalOpts& g, double x, const std::string& grid_str) {
  Timer timer;
  double start, stop, step;
  {
    std::istringstream is(grid_str);
    char c1, c2;
    if (!(is >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':' ||
        step <= 0)
      throw std::invalid_argument("t-grid must be start:stop:step, step > 0");
  }
  hyperlat::KernelSpec ks = hyperlat::KernelSpec::make(x);

  JsonObj header;
  header.str("tool", "hyperlat")
      .str("version", kVersion)
      .str("subcommand", "selberg")
      .num("x", x)
      .str("t_grid", grid_str);
  CsvDoc doc(header.line(), {"t", "re_h", "im_h", "err"});
  std::uint64_t rows = 0;
  for (double t = start; t <= stop + 1e-12 * step; t += step) {
    hyperlat::TransformValue tv = hyperlat::h_transform(ks, t);
    doc.add_row({hyperlat::io::fmt_double(t),
                 hyperlat::io::fmt_double(tv.h.real()),
                 hyperlat::io::fmt_double(tv.h.imag()),
                 hyperlat::io::fmt_double(tv.est_abs_error)});
    ++rows;
  }
  emit(g, doc.str());

  JsonObj cfg;
  cfg.str("subcommand", "selberg").num("x", x).str("t-grid", grid_str);
  JsonObj counts;
  counts.num("rows", rows);
  write_sidecar(g, cfg, counts, timer.seconds());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hyperbolic lattice angle statistics"};
  app.require_subcommand(1);
  // Let the global options (--omega, --threads, --out, ...) appear after the
  // subcommand name as well.
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--omega", g.omega,
                 "base point: i, rho, or u=p/q,ksq=p/q");
  app.add_option("--threads", g.threads, "worker count")
      ->check(CLI::Range(1, 512));
  app.add_option("--out", g.out, "output path ('-' for stdout)");
  app.add_option("--seed", g.seed, "random seed (Monte Carlo)");
  app.add_option("--config", g.config_path,
                 "JSON config file mirroring the flags; flags override");

  // enumerate
  auto* sc_enum = app.add_subcommand("enumerate", "list or count ball elements");
  std::string q_str = "10", mode_str = "full", emit_enum = "count";
  sc_enum->add_option("--q", q_str, "ball radius parameter Q (rational or decimal)");
  sc_enum->add_option("--mode", mode_str, "full, half-inner or half-outer");
  sc_enum->add_option("--emit", emit_enum)->check(CLI::IsMember({"count", "csv"}));

  GridOpts go;
  auto add_grid = [&](CLI::App* sc, bool empirical, bool theory) {
    if (empirical) {
      sc->add_option("--q", go.q, "ball radius parameter Q");
      sc->add_option("--elliptic", go.elliptic,
                     "elliptic rescaling factor (stabilizer order or 1)");
    } else {
      sc->add_option("--elliptic", go.elliptic,
                     "evaluate the density at elliptic * xi");
    }
    sc->add_option("--bin", go.bin, "histogram bin width");
    sc->add_option("--xi-min", go.xi_min);
    sc->add_option("--xi-max", go.xi_max);
    if (theory) sc->add_option("--t-cut", go.t_cut, "spectrum truncation");
  };
  auto* sc_pair = app.add_subcommand("paircorr", "empirical pair correlation");
  add_grid(sc_pair, true, false);
  auto* sc_dens = app.add_subcommand("density", "closed-form density");
  add_grid(sc_dens, false, true);
  auto* sc_comp = app.add_subcommand("compare", "empirical vs closed form");
  add_grid(sc_comp, true, true);

  // volumes
  auto* sc_vol = app.add_subcommand("volumes", "displacement body volume");
  std::string m_str = "1,1,0,1", method = "both";
  double xi = 1.0;
  std::uint64_t samples = 1000000;
  sc_vol->add_option("--m", m_str, "matrix a,b,c,d");
  sc_vol->add_option("--xi", xi);
  sc_vol->add_option("--method", method)
      ->check(CLI::IsMember({"mc", "closed", "both"}));
  sc_vol->add_option("--samples", samples);

  // geodesics
  auto* sc_geo = app.add_subcommand("geodesics", "closed geodesic arithmetic");
  long long delta = 0, delta_max = 0;
  std::string emit_geo = "text";
  sc_geo->add_option("--delta", delta, "single discriminant");
  sc_geo->add_option("--delta-max", delta_max, "scan discriminants up to N");
  sc_geo->add_option("--emit", emit_geo)->check(CLI::IsMember({"csv", "text"}));

  // selberg
  auto* sc_sel = app.add_subcommand("selberg", "spectral transform h(t)");
  double x_param = 2.0;
  std::string t_grid = "0:10:0.5";
  sc_sel->add_option("--x", x_param, "kernel height X");
  sc_sel->add_option("--t-grid", t_grid, "start:stop:step");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    json cfg = load_config(g.config_path);
    cfg_apply(cfg, &app, "--omega", g.omega);
    cfg_apply(cfg, &app, "--threads", g.threads);
    cfg_apply(cfg, &app, "--out", g.out);
    cfg_apply(cfg, &app, "--seed", g.seed);

    if (sc_enum->parsed()) {
      cfg_apply(cfg, sc_enum, "--q", q_str);
      cfg_apply(cfg, sc_enum, "--mode", mode_str);
      cfg_apply(cfg, sc_enum, "--emit", emit_enum);
      return run_enumerate(g, q_str, mode_str, emit_enum);
    }
    for (auto* sc : {sc_pair, sc_dens, sc_comp}) {
      if (!sc->parsed()) continue;
      bool empirical = sc != sc_dens, theory = sc != sc_pair;
      if (empirical) cfg_apply(cfg, sc, "--q", go.q);
      cfg_apply(cfg, sc, "--elliptic", go.elliptic);
      cfg_apply(cfg, sc, "--bin", go.bin);
      cfg_apply(cfg, sc, "--xi-min", go.xi_min);
      cfg_apply(cfg, sc, "--xi-max", go.xi_max);
      if (theory) cfg_apply(cfg, sc, "--t-cut", go.t_cut);
      return run_corr(g, go, empirical, theory, sc->get_name().c_str());
    }
    if (sc_vol->parsed()) {
      cfg_apply(cfg, sc_vol, "--m", m_str);
      cfg_apply(cfg, sc_vol, "--xi", xi);
      cfg_apply(cfg, sc_vol, "--method", method);
      cfg_apply(cfg, sc_vol, "--samples", samples);
      return run_volumes(g, m_str, xi, method, samples);
    }
    if (sc_geo->parsed()) {
      cfg_apply(cfg, sc_geo, "--delta", delta);
      cfg_apply(cfg, sc_geo, "--delta-max", delta_max);
      cfg_apply(cfg, sc_geo, "--emit", emit_geo);
      if ((delta > 0) == (delta_max > 0))
        throw std::invalid_argument(
            "give exactly one of --delta and --delta-max");
      return run_geodesics(g, delta, delta_max, emit_geo);
    }
    if (sc_sel->parsed()) {
      cfg_apply(cfg, sc_sel, "--x", x_param);
      cfg_apply(cfg, sc_sel, "--t-grid", t_grid);
      return run_selberg(g, x_param, t_grid);
    }
  } catch (const hyperlat::capacity_error& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 3;
  } catch (const std::bad_alloc&) {
    std::cerr << "resource error: out of memory\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
