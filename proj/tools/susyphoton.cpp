// Command-line front end: parameter sweeps and self-checks for multiphoton
// coherent states of the oscillator and supercoherent states of its graded
// (SUSY) extension.  Tabular output is CSV with one '#'-prefixed JSON
// metadata line; grids and verification reports are JSON documents.  Output
// is byte-deterministic for a fixed configuration: floats are printed with
// 17 significant digits, rows are ordered by parameter index, and lines end
// with '\n'.
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "susyphoton/dynamics.hpp"
#include "susyphoton/fock.hpp"
#include "susyphoton/mcs.hpp"
#include "susyphoton/susy.hpp"
#include "susyphoton/verify.hpp"
#include "susyphoton/wigner.hpp"

namespace {

using json = nlohmann::json;
using namespace susyphoton;

constexpr const char* kToolVersion = "1.0.0";

// parameter mistakes that CLI11 validation cannot catch on its own
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Shared option set.  SUSY mode is selected by --susy or implied by any of
// the coupling/amplitude flags; everything else is scalar.
struct Opts {
  int m = 1;
  int j = 0;
  std::vector<double> z;         // single point: re [,im]
  std::vector<double> z_grid;    // min,max,step
  double k2 = 0.0;
  std::vector<double> k2_range;  // min,max[,step]
  std::vector<double> a{1.0, 0.0};
  std::vector<double> c{1.0, 0.0};
  double omega = 1.0;
  int trunc = 0;
  std::string out;
  std::string format;
  bool susy = false;
  bool find_root = false;

  CLI::Option* opt_z = nullptr;
  CLI::Option* opt_z_grid = nullptr;
  CLI::Option* opt_k2 = nullptr;
  CLI::Option* opt_k2_range = nullptr;
  CLI::Option* opt_a = nullptr;
  CLI::Option* opt_c = nullptr;

  bool susy_mode() const {
    return susy || opt_k2->count() || opt_k2_range->count() || opt_a->count() ||
           opt_c->count();
  }
  cplx z_point() const {
    return {z.empty() ? 0.0 : z[0], z.size() > 1 ? z[1] : 0.0};
  }
  cplx a_amp() const { return {a[0], a.size() > 1 ? a[1] : 0.0}; }
  cplx c_amp() const { return {c[0], c.size() > 1 ? c[1] : 0.0}; }
  TruncationPolicy policy() const {
    TruncationPolicy pol;
    if (trunc > 0) pol.base = trunc;
    return pol;
  }
  SusySpec susy_spec(cplx zv, double k2v) const {
    return {m, j, zv, k2v, a_amp(), c_amp()};
  }

  void validate() const {
    if (j >= m) throw UsageError("ladder index j must satisfy 0 <= j < m");
  }
};

void add_common(CLI::App* sub, Opts& o) {
  sub->add_option("--m", o.m, "annihilation power / number of ladders")
      ->check(CLI::PositiveNumber);
  sub->add_option("--j", o.j, "ladder index, 0 <= j < m")->check(CLI::NonNegativeNumber);
  o.opt_z = sub->add_option("--z", o.z, "complex label: re[,im]")
                ->delimiter(',')
                ->expected(1, 2);
  o.opt_z_grid =
      sub->add_option("--z-grid", o.z_grid, "sweep axis: min,max,step")
          ->delimiter(',')
          ->expected(3);
  o.opt_k2 = sub->add_option("--k2", o.k2, "SUSY coupling");
  o.opt_k2_range =
      sub->add_option("--k2-range", o.k2_range, "coupling interval: min,max[,step]")
          ->delimiter(',')
          ->expected(2, 3);
  o.opt_a = sub->add_option("--a", o.a, "upper amplitude a_j: re[,im]")
                ->delimiter(',')
                ->expected(1, 2);
  o.opt_c = sub->add_option("--c", o.c, "lower amplitude c_mj: re[,im]")
                ->delimiter(',')
                ->expected(1, 2);
  sub->add_flag("--susy", o.susy, "graded (SUSY) mode even with default coupling");
  sub->add_option("--omega", o.omega, "oscillator frequency")->check(CLI::PositiveNumber);
  sub->add_option("--trunc", o.trunc, "override the truncation base dimension")
      ->check(CLI::PositiveNumber);
  sub->add_option("--out", o.out, "output path (default: stdout)");
  sub->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
}

// The config file holds plain `key = value` lines naming the subcommand's
// flags.  CLI11 resolves config keys against the app owning the config
// option, so the file is rewrapped under a section named after the invoked
// subcommand before parsing; command-line flags override file values.
std::string wrap_config(int argc, char** argv, const std::vector<std::string>& subs) {
  std::string sub, path;
  int path_arg = -1;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (sub.empty()) {
      for (const auto& s : subs)
        if (arg == s) sub = s;
    }
    if (arg == "--config" && i + 1 < argc) {
      path = argv[i + 1];
      path_arg = i + 1;
    } else if (arg.rfind("--config=", 0) == 0) {
      path = arg.substr(9);
      path_arg = i;
    }
  }
  if (sub.empty() || path.empty()) return "";
  std::ifstream in(path);
  if (!in) return "";  // CLI11 reports the missing file itself
  std::ostringstream body;
  body << in.rdbuf();
  const std::string wrapped =
      (std::filesystem::temp_directory_path() /
       ("susyphoton-config-" + std::to_string(::getpid()) + ".ini"))
          .string();
  std::ofstream out(wrapped, std::ios::binary);
  if (!out) return "";
  out << "[" << sub << "]\n" << body.str();
  out.close();
  if (path_arg >= 0) {
    static std::string replacement;  // keeps the pointer alive for parsing
    replacement = argv[path_arg][0] == '-' ? "--config=" + wrapped : wrapped;
    argv[path_arg] = replacement.data();
  }
  return wrapped;
}

// inclusive linspace from a min,max,step triple; empty when max < min
std::vector<double> axis_points(const std::vector<double>& r) {
  if (r[2] <= 0.0) throw UsageError("sweep step must be positive");
  std::vector<double> pts;
  const int n = (int)std::floor((r[1] - r[0]) / r[2] + 1e-9);
  for (int i = 0; i <= n; ++i) pts.push_back(r[0] + i * r[2]);
  if (r[1] < r[0]) pts.clear();
  return pts;
}

json meta_complex(cplx v) { return json::array({v.real(), v.imag()}); }

json base_meta(const char* command, const std::string& format, const Opts& o) {
  json meta;
  meta["tool"] = "susyphoton";
  meta["version"] = kToolVersion;
  meta["command"] = command;
  meta["format"] = format;
  meta["m"] = o.m;
  meta["j"] = o.j;
  meta["mode"] = o.susy_mode() ? "susy" : "scalar";
  meta["trunc"] = o.policy().base;
  if (o.susy_mode()) {
    meta["a"] = meta_complex(o.a_amp());
    meta["c"] = meta_complex(o.c_amp());
  }
  return meta;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::fwrite(content.data(), 1, content.size(), stdout);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  f.write(content.data(), (std::streamsize)content.size());
}

// CSV assembly: metadata line, column header, precomputed rows
std::string csv_document(const json& meta, const std::string& header,
                         const std::vector<std::string>& rows) {
  std::string out = "# " + meta.dump() + "\n" + header + "\n";
  for (const auto& r : rows) out += r + "\n";
  return out;
}

std::string json_document(const json& meta, const std::vector<std::string>& columns,
                          const std::vector<std::vector<double>>& rows) {
  json doc;
  doc["meta"] = meta;
  doc["columns"] = columns;
  doc["rows"] = rows;
  return doc.dump() + "\n";
}

// Run a sweep body over [0, n) with the worker cap, keeping rows in
// parameter order.  The first exception aborts the sweep after the loop.
template <class F>
std::vector<std::string> sweep_rows(int n, F&& row_fn) {
  std::vector<std::string> rows((size_t)n);
  std::string err;
  int err_kind = 0;  // 1 numeric, 2 usage
#pragma omp parallel for num_threads(thread_limit()) schedule(static)
  for (int i = 0; i < n; ++i) {
    try {
      rows[(size_t)i] = row_fn(i);
    } catch (const std::exception& e) {
#pragma omp critical
      if (err_kind == 0) {
        err_kind = dynamic_cast<const std::invalid_argument*>(&e) ? 2 : 1;
        err = e.what();
      }
    }
  }
  if (err_kind == 2) throw UsageError(err);
  if (err_kind == 1) throw std::runtime_error(err);
  return rows;
}

std::string resolve_format(const Opts& o, const char* fallback) {
  return o.format.empty() ? fallback : o.format;
}

// complex z points of a sweep: the square grid over --z-grid when present,
// otherwise the single --z point
std::vector<cplx> z_points(const Opts& o, json& meta) {
  if (o.opt_z_grid->count()) {
    if (o.opt_z->count())
      throw UsageError("--z and --z-grid are mutually exclusive");
    meta["z_grid"] = o.z_grid;
    std::vector<cplx> pts;
    const auto axis = axis_points(o.z_grid);
    for (double re : axis)
      for (double im : axis) pts.push_back({re, im});
    return pts;
  }
  meta["z"] = meta_complex(o.z_point());
  return {o.z_point()};
}

int cmd_hur(const Opts& o) {
  o.validate();
  const std::string fmt = resolve_format(o, "csv");
  json meta = base_meta("hur", fmt, o);
  const std::vector<cplx> pts = z_points(o, meta);
  const bool susy = o.susy_mode();
  if (susy) meta["k2"] = o.k2;
  const TruncationPolicy pol = o.policy();

  std::vector<std::vector<double>> table((size_t)pts.size());
  sweep_rows((int)pts.size(), [&](int i) {
    const cplx z = pts[(size_t)i];
    const HurResult h = susy ? hur_susy(o.susy_spec(z, o.k2), pol) : hur({o.m, o.j, z});
    table[(size_t)i] = {z.real(), z.imag(), h.sigma_q, h.sigma_p, h.product};
    return std::string();
  });

  const std::vector<std::string> cols = {"re_z", "im_z", "sigma_q", "sigma_p", "product"};
  if (fmt == "json") {
    write_output(o.out, json_document(meta, cols, table));
    return 0;
  }
  std::vector<std::string> rows;
  for (const auto& r : table)
    rows.push_back(fmt17(r[0]) + "," + fmt17(r[1]) + "," + fmt17(r[2]) + "," +
                   fmt17(r[3]) + "," + fmt17(r[4]));
  write_output(o.out, csv_document(meta, "re_z,im_z,sigma_q,sigma_p,product", rows));
  return 0;
}

int cmd_mandel(const Opts& o) {
  o.validate();
  const std::string fmt = resolve_format(o, "csv");
  json meta = base_meta("mandel", fmt, o);
  const TruncationPolicy pol = o.policy();

  if (o.find_root) {
    // bracketing bisection for the Poissonian coupling on a user interval
    if (!o.susy_mode()) throw UsageError("--find-root applies to the graded mode only");
    if (o.opt_a->count() || o.opt_c->count())
      throw UsageError("--find-root assumes unit amplitudes");
    const cplx z = o.z_point();
    if (z.imag() != 0.0) throw UsageError("--find-root requires a real z");
    double lo = -5.0, hi = 5.0;
    if (o.opt_k2_range->count()) {
      lo = o.k2_range[0];
      hi = o.k2_range[1];
    }
    meta["z"] = meta_complex(z);
    meta["k2_range"] = json::array({lo, hi});
    const double root = mandel_root_k2(o.m, o.j, z, lo, hi, pol);
    if (fmt == "json") {
      write_output(o.out, json_document(meta, {"k2_root"}, {{root}}));
      return 0;
    }
    write_output(o.out, csv_document(meta, "k2_root", {fmt17(root)}));
    return 0;
  }

  std::vector<double> sweep;
  std::string var;
  cplx fixed_z;
  const bool susy = o.susy_mode();
  if (susy) {
    // coupling sweep at fixed real label
    if (!o.opt_k2_range->count() || o.k2_range.size() != 3)
      throw UsageError("graded mandel sweep needs --k2-range min,max,step");
    fixed_z = o.z_point();
    if (fixed_z.imag() != 0.0) throw UsageError("graded mandel sweep requires a real z");
    sweep = axis_points(o.k2_range);
    var = "k2";
    meta["z"] = meta_complex(fixed_z);
    meta["k2_range"] = o.k2_range;
  } else {
    // modulus sweep of the scalar family
    if (o.opt_z_grid->count()) {
      sweep = axis_points(o.z_grid);
      meta["z_grid"] = o.z_grid;
    } else {
      sweep = {std::abs(o.z_point())};
      meta["z"] = meta_complex(o.z_point());
    }
    var = "abs_z";
  }

  std::vector<std::vector<double>> table((size_t)sweep.size());
  sweep_rows((int)sweep.size(), [&](int i) {
    const double v = sweep[(size_t)i];
    const double q = susy ? mandel_q_susy(o.susy_spec(fixed_z, v), pol)
                          : mandel_q({o.m, o.j, cplx(v, 0.0)}, pol);
    table[(size_t)i] = {v, q};
    return std::string();
  });

  if (fmt == "json") {
    write_output(o.out, json_document(meta, {var, "Q"}, table));
    return 0;
  }
  std::vector<std::string> rows;
  for (const auto& r : table) rows.push_back(fmt17(r[0]) + "," + fmt17(r[1]));
  write_output(o.out, csv_document(meta, var + ",Q", rows));
  return 0;
}

int cmd_wigner(const Opts& o, const WignerGridSpec& gspec) {
  o.validate();
  const std::string fmt = resolve_format(o, "json");
  if (fmt != "json") throw UsageError("wigner output is json only");
  json meta = base_meta("wigner", fmt, o);
  meta["z"] = meta_complex(o.z_point());
  meta["grid"] = {{"q_min", gspec.q_min}, {"q_max", gspec.q_max},
                  {"p_min", gspec.p_min}, {"p_max", gspec.p_max},
                  {"nq", gspec.nq},       {"np", gspec.np}};
  const TruncationPolicy pol = o.policy();

  WignerGrid grid;
  if (o.susy_mode()) {
    meta["k2"] = o.k2;
    grid = wigner_susy(o.susy_spec(o.z_point(), o.k2), gspec, pol);
  } else {
    grid = wigner_scalar_mcs({o.m, o.j, o.z_point()}, gspec, pol);
  }

  const Negativity neg = negativity(grid);
  meta["normalization_residual"] = grid.norm_residual();
  meta["min_value"] = neg.min_value;
  meta["negative_volume"] = neg.negative_volume;

  json doc;
  doc["meta"] = meta;
  json axes;
  std::vector<double> qs, ps;
  for (int iq = 0; iq < grid.nq; ++iq) qs.push_back(grid.q_at(iq));
  for (int ip = 0; ip < grid.np; ++ip) ps.push_back(grid.p_at(ip));
  axes["q"] = qs;
  axes["p"] = ps;
  doc["axes"] = axes;
  doc["values"] = grid.values;
  write_output(o.out, doc.dump() + "\n");
  return 0;
}

int cmd_phase(const Opts& o) {
  o.validate();
  const std::string fmt = resolve_format(o, "csv");
  json meta = base_meta("phase", fmt, o);
  meta["omega"] = o.omega;
  const std::vector<cplx> pts = z_points(o, meta);
  const bool susy = o.susy_mode();
  std::vector<double> k2s = {susy ? o.k2 : 0.0};
  if (susy && o.opt_k2_range->count()) {
    if (o.k2_range.size() != 3)
      throw UsageError("phase coupling sweep needs --k2-range min,max,step");
    k2s = axis_points(o.k2_range);
    meta["k2_range"] = o.k2_range;
  } else if (susy) {
    meta["k2"] = o.k2;
  }
  const TruncationPolicy pol = o.policy();

  const int n = (int)(pts.size() * k2s.size());
  std::vector<std::vector<double>> table((size_t)n);
  sweep_rows(n, [&](int i) {
    const cplx z = pts[(size_t)i / k2s.size()];
    const double k2 = k2s[(size_t)i % k2s.size()];
    double phi, beta, fid;
    try {
      // a loop that fails to close is annotated on its row, not fatal
      const LoopReport r = susy ? loop_check(o.susy_spec(z, k2), o.omega, pol)
                                : loop_check(McsSpec{o.m, o.j, z}, pol);
      phi = r.total_phase;
      beta = r.geometric_phase;
      fid = r.fidelity;
    } catch (const std::runtime_error&) {
      phi = beta = fid = std::numeric_limits<double>::quiet_NaN();
    }
    table[(size_t)i] = {z.real(), z.imag(), k2, phi, beta, fid};
    return std::string();
  });

  const std::vector<std::string> cols = {"re_z", "im_z", "k2", "phi", "beta", "fidelity"};
  if (fmt == "json") {
    write_output(o.out, json_document(meta, cols, table));
    return 0;
  }
  std::vector<std::string> rows;
  for (const auto& r : table)
    rows.push_back(fmt17(r[0]) + "," + fmt17(r[1]) + "," + fmt17(r[2]) + "," +
                   fmt17(r[3]) + "," + fmt17(r[4]) + "," + fmt17(r[5]));
  write_output(o.out, csv_document(meta, "re_z,im_z,k2,phi,beta,fidelity", rows));
  return 0;
}

int cmd_decompose(const Opts& o) {
  o.validate();
  if (o.susy_mode())
    throw UsageError("decompose applies to scalar multiphoton states only");
  const std::string fmt = resolve_format(o, "csv");
  json meta = base_meta("decompose", fmt, o);
  meta["z"] = meta_complex(o.z_point());

  const auto comps = scs_decomposition({o.m, o.j, o.z_point()});
  std::vector<std::vector<double>> table;
  for (size_t k = 0; k < comps.size(); ++k)
    table.push_back({(double)k, comps[k].label.real(), comps[k].label.imag(),
                     comps[k].weight.real(), comps[k].weight.imag()});

  const std::vector<std::string> cols = {"k", "re_label", "im_label", "re_weight",
                                         "im_weight"};
  if (fmt == "json") {
    write_output(o.out, json_document(meta, cols, table));
    return 0;
  }
  std::vector<std::string> rows;
  for (const auto& r : table)
    rows.push_back(fmt17(r[0]) + "," + fmt17(r[1]) + "," + fmt17(r[2]) + "," +
                   fmt17(r[3]) + "," + fmt17(r[4]));
  write_output(o.out,
               csv_document(meta, "k,re_label,im_label,re_weight,im_weight", rows));
  return 0;
}

int cmd_verify(const Opts& o, const std::string& level) {
  const std::string fmt = resolve_format(o, "json");
  if (fmt != "json") throw UsageError("verify output is json only");
  const VerifyReport rep = run_verify(level == "full");

  json doc;
  json meta;
  meta["tool"] = "susyphoton";
  meta["version"] = kToolVersion;
  meta["command"] = "verify";
  meta["format"] = fmt;
  meta["level"] = level;
  doc["meta"] = meta;
  json checks = json::array();
  for (const auto& c : rep.checks) {
    json jc;
    jc["name"] = c.name;
    jc["measured"] = c.measured;
    jc["tolerance"] = c.tolerance;
    jc["passed"] = c.passed;
    jc["seconds"] = c.seconds;
    if (!c.note.empty()) jc["note"] = c.note;
    checks.push_back(jc);
  }
  doc["checks"] = checks;
  doc["all_passed"] = rep.all_passed();
  doc["total_seconds"] = rep.total_seconds();
  write_output(o.out, doc.dump(2) + "\n");
  return rep.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multiphoton coherent and supercoherent oscillator states"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kToolVersion);
  app.set_config("--config", "", "key=value defaults; flags override");
  const std::string wrapped = wrap_config(
      argc, argv, {"hur", "mandel", "wigner", "phase", "decompose", "verify"});

  Opts hur_o, mandel_o, wigner_o, phase_o, dec_o, verify_o;
  WignerGridSpec gspec;
  std::string level = "quick";

  CLI::App* hur = app.add_subcommand("hur", "uncertainty product over complex labels");
  add_common(hur, hur_o);
  CLI::App* mandel = app.add_subcommand("mandel", "Mandel Q sweeps and Poissonian roots");
  add_common(mandel, mandel_o);
  mandel->add_flag("--find-root", mandel_o.find_root,
                   "bisect Q(k2) = 0 on --k2-range (default [-5, 5])");
  CLI::App* wigner = app.add_subcommand("wigner", "Wigner quasi-probability grid");
  add_common(wigner, wigner_o);
  wigner->add_option("--q-min", gspec.q_min, "grid lower q bound");
  wigner->add_option("--q-max", gspec.q_max, "grid upper q bound");
  wigner->add_option("--p-min", gspec.p_min, "grid lower p bound");
  wigner->add_option("--p-max", gspec.p_max, "grid upper p bound");
  wigner->add_option("--nq", gspec.nq, "grid cells along q")->check(CLI::Range(2, 4096));
  wigner->add_option("--np", gspec.np, "grid cells along p")->check(CLI::Range(2, 4096));
  CLI::App* phase = app.add_subcommand("phase", "cyclic-evolution geometric phases");
  add_common(phase, phase_o);
  CLI::App* dec = app.add_subcommand("decompose", "coherent-circle decomposition");
  add_common(dec, dec_o);
  CLI::App* verify = app.add_subcommand("verify", "run the cross-validation suites");
  add_common(verify, verify_o);
  verify->add_option("level", level, "quick or full")
      ->check(CLI::IsMember({"quick", "full"}));

  int parse_status = -1;
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    parse_status = app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    parse_status = app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    parse_status = 2;
  }
  if (!wrapped.empty()) std::filesystem::remove(wrapped);
  if (parse_status >= 0) return parse_status;

  try {
    if (hur->parsed()) return cmd_hur(hur_o);
    if (mandel->parsed()) return cmd_mandel(mandel_o);
    if (wigner->parsed()) return cmd_wigner(wigner_o, gspec);
    if (phase->parsed()) return cmd_phase(phase_o);
    if (dec->parsed()) return cmd_decompose(dec_o);
    if (verify->parsed()) return cmd_verify(verify_o, level);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
