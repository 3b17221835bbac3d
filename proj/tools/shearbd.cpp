// Command-line front end: synth | transform | bounds | bench | check | export | gen.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "shearbd/approx.hpp"
#include "shearbd/cartoon.hpp"
#include "shearbd/error.hpp"
#include "shearbd/frames.hpp"
#include "shearbd/generators.hpp"
#include "shearbd/io.hpp"
#include "shearbd/parallel.hpp"
#include "shearbd/schema.hpp"
#include "shearbd/system.hpp"
#include "shearbd/theorycheck.hpp"

namespace fs = std::filesystem;
using namespace shearbd;
using io::json;

namespace {

enum Exit { kOk = 0, kConfig = 1, kModel = 2, kMismatch = 3, kNumerical = 4 };

int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::CurvatureBoundViolated:
    case ErrorCode::RadiusBoundViolated:
    case ErrorCode::NotInsideUnitSquare:
    case ErrorCode::NotClosed:
    case ErrorCode::NotSimple:
    case ErrorCode::SlopeTooSteep:
    case ErrorCode::InconsistentDerivative:
    case ErrorCode::CornerPoint:
    case ErrorCode::NotOnBoundary:
    case ErrorCode::NotNested:
    case ErrorCode::C2BoundExceeded:
    case ErrorCode::DomainTouchesUnitBoundary:
    case ErrorCode::SupportOutsideDomain:
    case ErrorCode::CornerInCube:
    case ErrorCode::NoCorners:
      return kModel;
    case ErrorCode::GridMismatch:
    case ErrorCode::IndexNotInSystem:
    case ErrorCode::FormatError:
      return kMismatch;
    case ErrorCode::NonConvergent:
    case ErrorCode::NotAFrame:
    case ErrorCode::EquivalenceViolated:
    case ErrorCode::CGNotConverged:
    case ErrorCode::InsufficientPoints:
      return kNumerical;
    case ErrorCode::InvalidGrid:
    case ErrorCode::InvalidFilterOrder:
    case ErrorCode::InvalidSystem:
    case ErrorCode::NOutOfRange:
    case ErrorCode::ConfigInvalid:
      return kConfig;
  }
  return kConfig;
}

// Flags shared by the subcommands; anything set here overrides the config file.
struct Flags {
  std::string config;
  std::string out;
  std::optional<int> n, j_max, supersample;
  std::optional<double> c;
  std::optional<std::uint64_t> seed;
  int threads = 0;
  std::string grid, generators, bounds;
};

struct Run {
  json cfg;
  fs::path base;  // directory the config came from; relative paths resolve against it
  fs::path out;
  std::uint64_t seed = 0;

  std::string path(const std::string& p) const { return fs::path(p).is_absolute() ? p : (base / p).string(); }
  const json& section(const char* key) const {
    static const json empty = json::object();
    return cfg.contains(key) ? cfg.at(key) : empty;
  }
};

Run load(const Flags& f) {
  Run r;
  r.cfg = json::object();
  r.base = fs::current_path();
  if (!f.config.empty()) {
    r.cfg = io::read_json(f.config);
    r.base = fs::absolute(f.config).parent_path();
  }
  require_valid("run", r.cfg, f.config.empty() ? "config" : f.config);
  if (f.n) r.cfg["system"]["n"] = *f.n;
  if (f.j_max) r.cfg["system"]["j_max"] = *f.j_max;
  if (f.c) r.cfg["system"]["c"] = *f.c;
  if (f.supersample) r.cfg["raster"]["supersample"] = *f.supersample;
  if (f.seed) r.cfg["seed"] = *f.seed;
  if (!f.grid.empty()) r.cfg["grid"] = fs::absolute(f.grid).string();
  if (!f.generators.empty()) r.cfg["generators"] = fs::absolute(f.generators).string();
  if (!f.bounds.empty()) r.cfg["bounds"] = fs::absolute(f.bounds).string();
  require_valid("run", r.cfg, "config after command-line overrides");
  r.seed = r.cfg.value("seed", std::uint64_t{0});
  if (!f.out.empty())
    r.out = f.out;
  else if (r.cfg.contains("output_dir"))
    r.out = r.path(r.cfg["output_dir"].get<std::string>());
  else
    r.out = "out";
  fs::create_directories(r.out);
  set_thread_limit(static_cast<unsigned>(f.threads > 0 ? f.threads : r.cfg.value("threads", 0)));
  return r;
}

SystemParams system_params(const Run& r) {
  const json& s = r.section("system");
  SystemParams p;
  p.c = s.value("c", 1.0);
  p.j_max = s.value("j_max", 4);
  p.n = s.value("n", 256);
  p.support_scale = s.value("support_scale", 1.0);
  p.subpixel_cap = s.value("subpixel_cap", 4);
  if (p.n < 8 || (p.n & (p.n - 1)) != 0)
    throw Error(ErrorCode::ConfigInvalid, "config at /system/n: " + std::to_string(p.n) + " is not a power of two");
  return p;
}

std::pair<int, int> m_flat(const Run& r) {
  const json& s = r.section("system");
  if (!s.contains("m_flat")) return {6, 5};
  return {s["m_flat"][0].get<int>(), s["m_flat"][1].get<int>()};
}

int gen_r(const Run& r) { return r.section("system").value("r", 10); }

std::shared_ptr<const GeneratorSet> generators(const Run& r) {
  auto [a, b] = m_flat(r);
  if (r.cfg.contains("generators")) {
    GeneratorSet g = io::read_generator_cache(r.path(r.cfg["generators"].get<std::string>()));
    if (g.m_flat_psi1 != a || g.m_flat_psi2 != b || g.r != gen_r(r))
      throw Error(ErrorCode::FormatError, "generator cache does not match /system/m_flat and /system/r");
    return std::make_shared<const GeneratorSet>(std::move(g));
  }
  return std::make_shared<const GeneratorSet>(build_generator_set(a, b, gen_r(r)));
}

json cartoon_json(const Run& r) {
  if (!r.cfg.contains("cartoon")) throw Error(ErrorCode::ConfigInvalid, "config at /cartoon: required for this command");
  const json& c = r.cfg["cartoon"];
  if (!c.is_string()) return c;
  std::string p = r.path(c.get<std::string>());
  json j = io::read_json(p);
  require_valid("cartoon", j, p);
  return j;
}

int supersample(const Run& r) { return r.section("raster").value("supersample", 4); }

BoundsOptions bounds_options(const Run& r) {
  const json& t = r.section("tolerances");
  BoundsOptions o;
  o.trials = t.value("bounds_trials", 1);
  o.tol = t.value("power", 1e-3);
  o.max_power_iterations = t.value("power_max_iterations", 500);
  o.max_inverse_iterations = t.value("inverse_max_iterations", 30);
  o.max_cg_iterations = t.value("bounds_cg_max_iterations", 500);
  o.seed = r.seed;
  return o;
}

void note(const std::string& msg) { std::cerr << msg << '\n'; }

int cmd_gen(const Flags& f) {
  Run r = load(f);
  auto gen = generators(r);
  std::string dir = (r.out / "generators").string();
  io::write_generator_cache(dir, *gen);
  DecayValidationReport rep = validate_decay(*gen);
  io::write_text(dir + "/decay.json", io::dump(io::to_json(rep)));
  std::cout << io::dump({{"cache", dir}, {"decay", io::to_json(rep)}});
  return kOk;
}

int cmd_synth(const Flags& f, bool pgm) {
  Run r = load(f);
  json cj = cartoon_json(r);
  io::CartoonParts parts = io::cartoon_parts_from_json(cj);
  CartoonCertificate cert = certify_cartoon(parts.omega, parts.b ? &*parts.b : nullptr, parts.f0, parts.f1);
  json cert_json = io::to_json(cert, parts.b.has_value());
  std::optional<CartoonFunction> fn;
  try {
    fn = parts.b ? make_cartoon(parts.omega, *parts.b, parts.f0, parts.f1) : make_smooth_cartoon(parts.omega, parts.f0);
  } catch (const Error& e) {
    std::cerr << io::dump({{"error", error_name(e.code())}, {"message", e.what()}, {"certificate", cert_json}});
    return exit_code(e.code());
  }
  SystemParams p = system_params(r);
  ImageGrid g = rasterize(*fn, p.n, supersample(r));
  write_grd1((r.out / "cartoon.grd").string(), g);
  if (pgm) write_pgm16((r.out / "cartoon.pgm").string(), g);
  io::write_text((r.out / "certificate.json").string(), io::dump(cert_json));
  io::write_text((r.out / "cartoon.json").string(), io::dump(io::to_json(*fn)));
  std::cout << io::dump({{"grid", (r.out / "cartoon.grd").string()}, {"certificate", cert_json}});
  return kOk;
}

ImageGrid input_grid(const Run& r, const SystemParams& p) {
  if (r.cfg.contains("grid")) return read_grd1(r.path(r.cfg["grid"].get<std::string>()));
  return rasterize(io::cartoon_from_json(cartoon_json(r)), p.n, supersample(r));
}

int cmd_transform(const Flags& f) {
  Run r = load(f);
  if (!r.cfg.contains("grid")) throw Error(ErrorCode::ConfigInvalid, "transform needs --grid or /grid");
  if (!r.cfg.contains("generators"))
    throw Error(ErrorCode::ConfigInvalid, "transform needs a generator cache: run `gen` and pass --generators");
  SystemParams p = system_params(r);
  ImageGrid g = read_grd1(r.path(r.cfg["grid"].get<std::string>()));
  if (g.n != p.n)
    throw Error(ErrorCode::GridMismatch, "grid is " + std::to_string(g.n) + "x" + std::to_string(g.n) +
                                             " but the system expects n = " + std::to_string(p.n));
  ShearletSystem sys(generators(r), p);
  std::vector<double> theta = sys.analyze_values(g);
  io::write_shc1((r.out / "coefficients.shc1").string(), sys, theta);
  json stats = io::coefficient_stats(sys, theta);
  stats["system"] = io::to_json(p, sys.generators());
  io::write_text((r.out / "coefficients.json").string(), io::dump(stats));
  std::cout << io::dump({{"file", (r.out / "coefficients.shc1").string()},
                         {"count", stats["count"]},
                         {"max_abs", stats["max_abs"]}});
  return kOk;
}

int cmd_bounds(const Flags& f) {
  Run r = load(f);
  SystemParams p = system_params(r);
  ShearletSystem sys(generators(r), p);
  FrameBounds b = estimate_bounds(view_of(sys), bounds_options(r));
  json j = io::bounds_json(b, p);
  io::write_text((r.out / "bounds.json").string(), io::dump(j));
  std::cout << io::dump(j);
  if (!b.converged) note("warning: bound iterations did not converge; A is an upper estimate of the lower bound");
  return kOk;
}

std::vector<std::size_t> n_list(const Run& r, std::size_t size) {
  const json& b = r.section("bench");
  std::vector<std::size_t> out;
  if (b.contains("N_list")) {
    out = b["N_list"].get<std::vector<std::size_t>>();
  } else {
    int lo = 6, hi = 12;
    if (b.contains("N_octaves")) {
      lo = b["N_octaves"][0].get<int>();
      hi = b["N_octaves"][1].get<int>();
    }
    out = dyadic_n_list(lo, hi, b.value("half_octaves", true));
  }
  std::erase_if(out, [&](std::size_t N) { return N > size; });
  return out;
}

int cmd_bench(const Flags& f) {
  Run r = load(f);
  SystemParams p = system_params(r);
  ShearletSystem sys(generators(r), p);
  ImageGrid g = input_grid(r, p);
  if (g.n != p.n) throw Error(ErrorCode::GridMismatch, "grid size differs from /system/n");
  const json& b = r.section("bench");
  const json& t = r.section("tolerances");
  DecayOptions opt;
  opt.cg_tol = t.value("cg", 1e-6);
  opt.cg_max_iterations = t.value("cg_max_iterations", 500);
  opt.reconstruct = b.value("reconstruct", true);

  double A = 0.0;
  json bounds;
  if (r.cfg.contains("bounds")) {
    bounds = io::read_json(r.path(r.cfg["bounds"].get<std::string>()));
    A = bounds.at("A").get<double>();
  } else if (b.contains("A")) {
    A = b["A"].get<double>();
  } else {
    FrameBounds fb = estimate_bounds(view_of(sys), bounds_options(r));
    bounds = io::bounds_json(fb, p);
    A = fb.A;
  }
  DecayReport rep = decay_curve(g, sys, n_list(r, sys.size()), A, opt);

  double lo = 64, hi = 4096;
  if (b.contains("fit_range")) {
    lo = b["fit_range"][0].get<double>();
    hi = b["fit_range"][1].get<double>();
  }
  int status = kOk;
  try {
    rep.tail_fit = fit_rate(rep, lo, hi, FitColumn::Tail);
    if (opt.reconstruct) rep.recon_fit = fit_rate(rep, lo, hi, FitColumn::Recon);
  } catch (const Error& e) {
    note(std::string("rate fit failed: ") + e.what());
    status = exit_code(e.code());
  }
  std::string stem = (r.out / "decay").string();
  io::write_decay_report(stem, rep);
  json summary = io::to_json(rep);
  if (!bounds.is_null()) summary["bounds"] = bounds;
  io::write_text(stem + ".json", io::dump(summary));
  std::cout << io::dump(summary);
  return status;
}

int cmd_check(const Flags& f) {
  Run r = load(f);
  SystemParams p = system_params(r);
  const json& c = r.section("check");
  int j_lo = 2, j_hi = std::min(6, p.j_max);
  if (c.contains("j_range")) {
    j_lo = c["j_range"][0].get<int>();
    j_hi = c["j_range"][1].get<int>();
  }
  if (j_hi > p.j_max || j_lo > j_hi)
    throw Error(ErrorCode::ConfigInvalid, "config at /check/j_range: must lie inside [0, j_max]");
  double spacing = c.value("edge_spacing", 1e-3);
  std::vector<std::string> tests = c.value("tests", std::vector<std::string>{"envelopes"});

  CartoonFunction fn = io::cartoon_from_json(cartoon_json(r));
  ShearletSystem sys(generators(r), p);
  ImageGrid g = rasterize(fn, p.n, supersample(r));
  std::vector<double> theta = sys.analyze_values(g);
  json summary = json::object();

  for (const std::string& test : tests) {
    if (test == "envelopes") {
      EdgeSet edges = sample_jump_set(fn, spacing);
      EnvelopeReport rep = check_decay_envelopes(theta, sys, edges, j_lo, j_hi);
      io::write_text((r.out / "envelopes.csv").string(), io::envelope_csv(rep));
      summary["envelopes"] = io::to_json(rep);
    } else if (test == "counts") {
      if (!fn.has_inner()) throw Error(ErrorCode::NoCorners, "counting needs an inner set B with corners");
      const DomainSpec& B = fn.inner();
      EdgeSet pieces = sample_pieces(B, spacing);
      json reports = json::array();
      std::string csv;
      int L = static_cast<int>(pieces.curves.size());
      for (int i = 0; i < L; ++i) {
        Point start = pieces.curves[i].samples.front().p;
        bool corner = std::any_of(B.corners().begin(), B.corners().end(),
                                  [&](Point q) { return std::hypot(q.x1 - start.x1, q.x2 - start.x2) < 1e-9; });
        if (!corner) continue;
        CountReport rep = count_intersections(sys, pieces, (i + L - 1) % L, i, start, j_lo, j_hi);
        json j = io::to_json(rep);
        j["corner"] = {start.x1, start.x2};
        reports.push_back(j);
        std::string part = io::count_csv(rep);
        csv += csv.empty() ? part : part.substr(part.find('\n') + 1);
      }
      if (reports.empty()) throw Error(ErrorCode::NoCorners, "B has no corner points");
      io::write_text((r.out / "counts.csv").string(), csv);
      summary["counts"] = reports;
    } else if (test == "corners") {
      EdgeSet edges = sample_jump_set(fn, spacing);
      double sup = 0.0;
      for (double v : g.data) sup = std::max(sup, std::abs(v));
      std::vector<double> eps = c.value("eps_list", std::vector<double>{});
      CornerReport rep = corner_scaling(theta, sys, edges, sup, j_lo, j_hi, eps);
      summary["corners"] = io::to_json(rep);
    }
  }
  io::write_text((r.out / "check.json").string(), io::dump(summary));
  std::cout << io::dump(summary);
  return kOk;
}

int cmd_export(const std::string& shc1, const std::string& grid, const std::string& out) {
  if (shc1.empty() == grid.empty()) throw Error(ErrorCode::ConfigInvalid, "export needs exactly one of --shc1 or --grid");
  if (!shc1.empty()) {
    io::Shc1File file = io::read_shc1(shc1);
    std::ostringstream csv;
    csv << "cone,j,k,m1,m2,value\n";
    char buf[32];
    for (std::size_t i = 0; i < file.values.size(); ++i) {
      const ShearletIndex& idx = file.indices[i];
      std::snprintf(buf, sizeof buf, "%.17g", file.values[i]);
      csv << cone_name(idx.cone) << ',' << idx.j << ',' << idx.k << ',' << idx.m1 << ',' << idx.m2 << ',' << buf << '\n';
    }
    io::write_text(out, csv.str());
  } else {
    write_pgm16(out, read_grd1(grid));
  }
  std::cout << out << '\n';
  return kOk;
}

void common(CLI::App* app, Flags& f) {
  app->add_option("--config", f.config, "run configuration JSON")->check(CLI::ExistingFile);
  app->add_option("--out", f.out, "output directory (default: /output_dir of the config, else ./out)");
  app->add_option("--n", f.n, "grid size override");
  app->add_option("--j-max", f.j_max, "finest scale override");
  app->add_option("--c", f.c, "sampling constant override");
  app->add_option("--supersample", f.supersample, "rasterization supersampling override");
  app->add_option("--seed", f.seed, "seed for randomized trials (default 0)");
  app->add_option("--threads", f.threads, "worker cap, 0 = all cores");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compactly supported shearlet frames on bounded domains"};
  app.require_subcommand(1);
  app.footer("Exit codes: 0 ok, 1 config, 2 model-class violation, 3 data mismatch, 4 numerical failure.");
  Flags f;
  bool pgm = false;
  std::string shc1, grid_in, export_out;

  auto* gen = app.add_subcommand("gen", "build the generators, write the cache and the decay validation report");
  common(gen, f);
  auto* synth = app.add_subcommand("synth", "certify and rasterize a cartoon (GRD1 grid + certificate JSON)");
  common(synth, f);
  synth->add_flag("--pgm", pgm, "also write a 16-bit PGM preview");
  auto* transform = app.add_subcommand("transform", "analyze a grid into an SHC1 coefficient file");
  common(transform, f);
  transform->add_option("--grid", f.grid, "GRD1 input grid")->check(CLI::ExistingFile);
  transform->add_option("--generators", f.generators, "generator cache directory written by `gen`");
  auto* bounds = app.add_subcommand("bounds", "estimate frame bounds A and B");
  common(bounds, f);
  bounds->add_option("--generators", f.generators, "generator cache directory");
  auto* bench = app.add_subcommand("bench", "N-term decay curve with rate fits (CSV, JSON, .dat)");
  common(bench, f);
  bench->add_option("--grid", f.grid, "GRD1 input grid instead of the config cartoon")->check(CLI::ExistingFile);
  bench->add_option("--bounds", f.bounds, "bounds JSON from `bounds`; estimated inline otherwise")->check(CLI::ExistingFile);
  bench->add_option("--generators", f.generators, "generator cache directory");
  auto* check = app.add_subcommand("check", "envelope, counting and corner checks on a cartoon");
  common(check, f);
  check->add_option("--generators", f.generators, "generator cache directory");
  auto* exp = app.add_subcommand("export", "convert an SHC1 file to CSV or a GRD1 grid to PGM");
  exp->add_option("--shc1", shc1, "SHC1 coefficient file")->check(CLI::ExistingFile);
  exp->add_option("--grid", grid_in, "GRD1 grid")->check(CLI::ExistingFile);
  exp->add_option("-o,--output", export_out, "output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    if (*gen) return cmd_gen(f);
    if (*synth) return cmd_synth(f, pgm);
    if (*transform) return cmd_transform(f);
    if (*bounds) return cmd_bounds(f);
    if (*bench) return cmd_bench(f);
    if (*check) return cmd_check(f);
    if (*exp) return cmd_export(shc1, grid_in, export_out);
  } catch (const Error& e) {
    std::cerr << io::dump({{"error", error_name(e.code())}, {"message", e.what()}});
    return exit_code(e.code());
  } catch (const json::exception& e) {
    std::cerr << io::dump({{"error", "ConfigInvalid"}, {"message", e.what()}});
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << io::dump({{"error", "Failure"}, {"message", e.what()}});
    return kNumerical;
  }
  return kOk;
}
