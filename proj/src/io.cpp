#include "shearbd/io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include "shearbd/error.hpp"

namespace shearbd::io {

static_assert(std::endian::native == std::endian::little, "binary formats assume a little-endian host");

namespace {

std::string number(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void emit(std::ostringstream& out, const json& j, int indent, int depth) {
  auto newline = [&](int d) {
    if (indent < 0) return;
    out << '\n' << std::string(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        return;
      }
      out << '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out << ',';
        first = false;
        newline(depth + 1);
        out << json(it.key()).dump() << (indent < 0 ? ":" : ": ");
        emit(out, it.value(), indent, depth + 1);
      }
      newline(depth);
      out << '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out << "[]";
        return;
      }
      // Arrays of scalars stay on one line; they are mostly coefficient lists.
      bool flat = std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
      out << '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out << (flat && indent >= 0 ? ", " : ",");
        if (!flat) newline(depth + 1);
        emit(out, j[i], indent, depth + 1);
      }
      if (!flat) newline(depth);
      out << ']';
      return;
    }
    case json::value_t::number_float:
      out << number(j.get<double>());
      return;
    default:
      out << j.dump();
  }
}

json point_json(Point p) { return json::array({p.x1, p.x2}); }

Point point_from(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

std::vector<double> doubles(const json& j, const char* key) {
  return j.contains(key) ? j.at(key).get<std::vector<double>>() : std::vector<double>{};
}

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::ConfigInvalid, what); }

// E(t - dt) + dv in closed form for every supported graph class.
GraphFunction shifted(GraphFunction g, double dt, double dv) {
  switch (g.kind) {
    case GraphFunction::Kind::Polynomial: {
      std::vector<double> c(g.coeffs.size(), 0.0);
      for (std::size_t i = 0; i < g.coeffs.size(); ++i) {
        double binom = 1.0;  // C(i, m) (-dt)^(i-m), built from m = i downwards
        for (std::size_t m = i + 1; m-- > 0;) {
          c[m] += g.coeffs[i] * binom;
          binom *= -dt * static_cast<double>(m) / static_cast<double>(i - m + 1);
        }
      }
      if (c.empty()) c.push_back(0.0);
      c[0] += dv;
      g.coeffs = c;
      return g;
    }
    case GraphFunction::Kind::Trigonometric: {
      g.a0 += dv;
      std::size_t m = std::max(g.a.size(), g.b.size());
      g.a.resize(m, 0.0);
      g.b.resize(m, 0.0);
      for (std::size_t i = 0; i < m; ++i) {
        double phase = static_cast<double>(i + 1) * g.omega * dt, c = std::cos(phase), s = std::sin(phase);
        double a = g.a[i], b = g.b[i];
        g.a[i] = a * c - b * s;
        g.b[i] = a * s + b * c;
      }
      return g;
    }
    case GraphFunction::Kind::CircularArc:
      g.center += dt;
      g.offset += dv;
      return g;
  }
  return g;
}

const char* orientation_name(BoundaryPiece::Orientation o) {
  return o == BoundaryPiece::Orientation::X2OfX1 ? "x2_of_x1" : "x1_of_x2";
}

}  // namespace

std::string dump(const json& j, int indent) {
  std::ostringstream out;
  emit(out, j, indent, 0);
  if (indent >= 0) out << '\n';
  return out.str();
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigInvalid, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ConfigInvalid, path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::FormatError, "cannot write " + path);
  out << text;
}

json to_json(const GraphFunction& g) {
  switch (g.kind) {
    case GraphFunction::Kind::Polynomial:
      return {{"kind", "polynomial"}, {"coeffs", g.coeffs}};
    case GraphFunction::Kind::Trigonometric:
      return {{"kind", "trigonometric"}, {"a0", g.a0}, {"a", g.a}, {"b", g.b}, {"omega", g.omega}};
    case GraphFunction::Kind::CircularArc:
      return {{"kind", "arc"}, {"center", g.center}, {"offset", g.offset}, {"radius", g.radius}, {"branch", g.branch}};
  }
  return {};
}

GraphFunction graph_from_json(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "polynomial") return GraphFunction::polynomial(doubles(j, "coeffs"));
  if (kind == "trigonometric") {
    GraphFunction g;
    g.kind = GraphFunction::Kind::Trigonometric;
    g.a0 = j.value("a0", 0.0);
    g.a = doubles(j, "a");
    g.b = doubles(j, "b");
    g.omega = j.value("omega", 1.0);
    return g;
  }
  if (kind == "arc")
    return GraphFunction::arc(j.at("center").get<double>(), j.at("offset").get<double>(),
                              j.at("radius").get<double>(), j.at("branch").get<int>());
  bad("unknown graph function kind '" + kind + "'");
}

json to_json(const DomainSpec& d) {
  if (d.kind() == DomainSpec::Kind::Star) {
    const RadiusCurve& r = d.radius();
    return {{"kind", "star"}, {"nu", r.nu},   {"rho0", r.rho0},
            {"a0", r.a0},     {"a", r.a},     {"b", r.b},
            {"translate", point_json(r.translate)}};
  }
  json pieces = json::array();
  for (const BoundaryPiece& p : d.pieces())
    pieces.push_back({{"orientation", orientation_name(p.orientation)},
                      {"interval", {p.a, p.b}},
                      {"reversed", p.reversed},
                      {"E", to_json(p.E)}});
  return {{"kind", "piecewise"}, {"nu", d.nu()}, {"pieces", pieces}, {"translate", {0.0, 0.0}}};
}

DomainSpec domain_from_json(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  Point t = j.contains("translate") ? point_from(j.at("translate")) : Point{0.0, 0.0};
  if (kind == "star") {
    RadiusCurve r;
    r.a0 = j.at("a0").get<double>();
    r.a = doubles(j, "a");
    r.b = doubles(j, "b");
    r.rho0 = j.at("rho0").get<double>();
    r.nu = j.at("nu").get<double>();
    r.translate = j.contains("translate") ? t : Point{0.5, 0.5};
    return make_star_domain(r);
  }
  if (kind != "piecewise") bad("unknown domain kind '" + kind + "'");
  std::vector<BoundaryPiece> pieces;
  for (const json& pj : j.at("pieces")) {
    BoundaryPiece p;
    std::string o = pj.at("orientation").get<std::string>();
    if (o == "x2_of_x1")
      p.orientation = BoundaryPiece::Orientation::X2OfX1;
    else if (o == "x1_of_x2")
      p.orientation = BoundaryPiece::Orientation::X1OfX2;
    else
      bad("unknown piece orientation '" + o + "'");
    p.a = pj.at("interval").at(0).get<double>();
    p.b = pj.at("interval").at(1).get<double>();
    p.reversed = pj.value("reversed", false);
    p.E = graph_from_json(pj.at("E"));
    if (t.x1 != 0.0 || t.x2 != 0.0) {
      bool over_x1 = p.orientation == BoundaryPiece::Orientation::X2OfX1;
      double dt = over_x1 ? t.x1 : t.x2, dv = over_x1 ? t.x2 : t.x1;
      p.E = shifted(p.E, dt, dv);
      p.a += dt;
      p.b += dt;
    }
    pieces.push_back(p);
  }
  return make_piecewise_domain(pieces, j.at("nu").get<double>());
}

json to_json(const SmoothSpec& s) {
  json terms = json::array();
  for (const BumpTerm& t : s.terms)
    terms.push_back({{"amplitude", t.amplitude}, {"center", {t.c1, t.c2}}, {"radius", {t.r1, t.r2}}});
  return {{"terms", terms}};
}

SmoothSpec smooth_from_json(const json& j) {
  SmoothSpec s;
  if (!j.contains("terms")) return s;
  for (const json& tj : j.at("terms")) {
    BumpTerm t;
    t.amplitude = tj.at("amplitude").get<double>();
    t.c1 = tj.at("center").at(0).get<double>();
    t.c2 = tj.at("center").at(1).get<double>();
    t.r1 = tj.at("radius").at(0).get<double>();
    t.r2 = tj.at("radius").at(1).get<double>();
    s.terms.push_back(t);
  }
  return s;
}

CartoonParts cartoon_parts_from_json(const json& j) {
  CartoonParts parts{domain_from_json(j.at("omega")), std::nullopt, {}, {}};
  if (j.contains("B") && !j.at("B").is_null()) parts.b = domain_from_json(j.at("B"));
  if (j.contains("f0")) parts.f0 = smooth_from_json(j.at("f0"));
  if (j.contains("f1")) parts.f1 = smooth_from_json(j.at("f1"));
  return parts;
}

CartoonFunction cartoon_from_json(const json& j) {
  CartoonParts p = cartoon_parts_from_json(j);
  return p.b ? make_cartoon(p.omega, *p.b, p.f0, p.f1) : make_smooth_cartoon(p.omega, p.f0);
}

json to_json(const CartoonFunction& f) {
  json j = {{"omega", to_json(f.omega())}, {"f0", to_json(f.f0())}};
  if (f.has_inner()) {
    j["B"] = to_json(f.inner());
    j["f1"] = to_json(f.f1());
  }
  return j;
}

json to_json(const CartoonCertificate& c, bool has_b) {
  auto flag = [](bool ok) { return ok ? "PASS" : "FAIL"; };
  json j = {{"nu_omega", c.nu_omega},
            {"L_omega", c.l_omega},
            {"corners_omega", c.corners_omega},
            {"c2_f0", c.c2_f0},
            {"c2_f1", c.c2_f1},
            {"margin_omega_in_unit", c.margin_omega_in_unit},
            {"valid", c.valid}};
  json flags = {{"omega_inside_unit_square", flag(c.margin_omega_in_unit >= 1e-4)},
                {"c2_f0", flag(c.c2_f0 <= 1.0)},
                {"c2_f1", flag(c.c2_f1 <= 1.0)}};
  if (has_b) {
    j["nu_B"] = c.nu_b;
    j["L_B"] = c.l_b;
    j["corners_B"] = c.corners_b;
    j["margin_B_in_omega"] = c.margin_b_in_omega;
    flags["B_nested_in_omega"] = flag(c.margin_b_in_omega >= 1e-4);
  }
  j["flags"] = flags;
  return j;
}

json to_json(const SystemParams& p, const GeneratorSet& gen) {
  return {{"c", p.c},
          {"j_max", p.j_max},
          {"n", p.n},
          {"support_scale", p.support_scale},
          {"subpixel_cap", p.subpixel_cap},
          {"m_flat", {gen.m_flat_psi1, gen.m_flat_psi2}},
          {"r", gen.r}};
}

json bounds_json(const FrameBounds& b, const SystemParams& p) {
  return {{"A", b.A},
          {"B", b.B},
          {"ratio", b.ratio()},
          {"tol", b.tol},
          {"n", p.n},
          {"j_max", p.j_max},
          {"c", p.c},
          {"support_scale", p.support_scale},
          {"trials", b.trials},
          {"iterations_A", b.iterations_A},
          {"iterations_B", b.iterations_B},
          {"cg_iterations", b.cg_iterations},
          {"converged", b.converged}};
}

void write_shc1(const std::string& path, const ShearletSystem& sys, const std::vector<double>& values) {
  if (values.size() != sys.size())
    throw Error(ErrorCode::GridMismatch, "coefficient count " + std::to_string(values.size()) + " does not match system size " +
                                             std::to_string(sys.size()));
  json blocks = json::array();
  for (const Slice& s : sys.slices())
    blocks.push_back({{"cone", cone_name(s.cone)}, {"j", s.j}, {"k", s.k}, {"offset", s.offset}, {"count", s.count}});
  json header = to_json(sys.params(), sys.generators());
  header["magic"] = "SHC1";
  header["count"] = sys.size();
  header["blocks"] = blocks;
  header["layout"] = "int32le m pairs, then float64le values, table order";
  std::string text = dump(header, -1);

  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::FormatError, "cannot write " + path);
  std::uint64_t len = text.size();
  out.write("SHC1", 4);
  out.write(reinterpret_cast<const char*>(&len), sizeof len);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  std::vector<std::int32_t> m(2 * sys.size());
  for (std::size_t i = 0; i < sys.size(); ++i) {
    m[2 * i] = sys.indices()[i].m1;
    m[2 * i + 1] = sys.indices()[i].m2;
  }
  out.write(reinterpret_cast<const char*>(m.data()), static_cast<std::streamsize>(m.size() * sizeof(std::int32_t)));
  out.write(reinterpret_cast<const char*>(values.data()), static_cast<std::streamsize>(values.size() * sizeof(double)));
  if (!out) throw Error(ErrorCode::FormatError, "short write to " + path);
}

Shc1File read_shc1(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FormatError, "cannot read " + path);
  char magic[4];
  std::uint64_t len = 0;
  if (!in.read(magic, 4) || std::string(magic, 4) != "SHC1" || !in.read(reinterpret_cast<char*>(&len), sizeof len) ||
      len > (1u << 30))
    throw Error(ErrorCode::FormatError, path + ": not an SHC1 file");
  std::string text(len, '\0');
  if (!in.read(text.data(), static_cast<std::streamsize>(len))) throw Error(ErrorCode::FormatError, path + ": truncated header");
  Shc1File f;
  try {
    f.header = json::parse(text);
    f.params.c = f.header.at("c").get<double>();
    f.params.j_max = f.header.at("j_max").get<int>();
    f.params.n = f.header.at("n").get<int>();
    f.params.support_scale = f.header.at("support_scale").get<double>();
    f.params.subpixel_cap = f.header.at("subpixel_cap").get<int>();
    f.m_flat_psi1 = f.header.at("m_flat").at(0).get<int>();
    f.m_flat_psi2 = f.header.at("m_flat").at(1).get<int>();
    f.r = f.header.at("r").get<int>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::FormatError, path + ": bad SHC1 header: " + e.what());
  }
  std::size_t count = f.header.at("count").get<std::size_t>();
  std::vector<std::int32_t> m(2 * count);
  f.values.resize(count);
  if (!in.read(reinterpret_cast<char*>(m.data()), static_cast<std::streamsize>(m.size() * sizeof(std::int32_t))) ||
      !in.read(reinterpret_cast<char*>(f.values.data()), static_cast<std::streamsize>(count * sizeof(double))))
    throw Error(ErrorCode::FormatError, path + ": truncated payload");
  f.indices.resize(count);
  std::size_t covered = 0;
  for (const json& b : f.header.at("blocks")) {
    std::string cone = b.at("cone").get<std::string>();
    Cone c = cone == "LOW" ? Cone::Low : cone == "H" ? Cone::H : cone == "V" ? Cone::V : throw Error(ErrorCode::FormatError, path + ": unknown cone " + cone);
    std::size_t off = b.at("offset").get<std::size_t>(), cnt = b.at("count").get<std::size_t>();
    if (off + cnt > count) throw Error(ErrorCode::FormatError, path + ": block outside the table");
    for (std::size_t i = off; i < off + cnt; ++i)
      f.indices[i] = {c, b.at("j").get<int>(), b.at("k").get<int>(), m[2 * i], m[2 * i + 1]};
    covered += cnt;
  }
  if (covered != count) throw Error(ErrorCode::FormatError, path + ": blocks do not cover the table");
  return f;
}

json coefficient_stats(const ShearletSystem& sys, const std::vector<double>& values) {
  json slices = json::array();
  double overall = 0.0, energy = 0.0;
  std::size_t nonzero = 0;
  for (const Slice& s : sys.slices()) {
    double mx = 0.0;
    for (std::size_t i = s.offset; i < s.offset + s.count; ++i) {
      mx = std::max(mx, std::abs(values[i]));
      energy += values[i] * values[i];
      nonzero += values[i] != 0.0;
    }
    overall = std::max(overall, mx);
    slices.push_back({{"cone", cone_name(s.cone)}, {"j", s.j}, {"k", s.k}, {"count", s.count}, {"max_abs", mx}});
  }
  return {{"count", values.size()}, {"max_abs", overall}, {"energy", energy}, {"nonzero", nonzero}, {"slices", slices}};
}

namespace {

// Tensor product of two sampled factors on [0, extent]^2.
ImageGrid tensor(const Sampled1D& f1, const Sampled1D& f2, double extent, int cells) {
  ImageGrid g(cells);
  std::vector<double> a(cells), b(cells);
  for (int i = 0; i < cells; ++i) {
    double t = extent * i / cells;
    a[i] = f1(t);
    b[i] = f2(t);
  }
  for (int i = 0; i < cells; ++i)
    for (int j = 0; j < cells; ++j) g.at(i, j) = a[i] * b[j];
  return g;
}

json sampled_json(const Sampled1D& s) { return {{"lo", s.lo}, {"hi", s.hi}, {"r", s.r}, {"values", s.values}}; }

}  // namespace

void write_generator_cache(const std::string& dir, const GeneratorSet& gen, int cells) {
  std::filesystem::create_directories(dir);
  double extent = std::ceil(std::max(gen.psi1.hi, gen.psi2.hi));
  write_grd1(dir + "/psi.grd", tensor(gen.psi1, gen.psi2, extent, cells));
  write_grd1(dir + "/psi_tilde.grd", tensor(gen.psi2, gen.psi1, extent, cells));
  write_grd1(dir + "/phi.grd", tensor(gen.psi2, gen.psi2, extent, cells));
  json j = {{"m_flat", {gen.m_flat_psi1, gen.m_flat_psi2}},
            {"r", gen.r},
            {"support", {{"psi1", {gen.psi1.lo, gen.psi1.hi}}, {"psi2", {gen.psi2.lo, gen.psi2.hi}}}},
            {"vanishing_moments", gen.vanishing_moments},
            {"grids", {{"psi", "psi.grd"}, {"psi_tilde", "psi_tilde.grd"}, {"phi", "phi.grd"}, {"extent", extent}, {"cells", cells}}},
            {"lowpass1", gen.lowpass1.taps},
            {"lowpass2", gen.lowpass2.taps},
            {"psi1", sampled_json(gen.psi1)},
            {"psi2", sampled_json(gen.psi2)}};
  write_text(dir + "/generators.json", dump(j));
}

GeneratorSet read_generator_cache(const std::string& dir) {
  if (!std::filesystem::exists(dir + "/generators.json"))
    throw Error(ErrorCode::FormatError, dir + " holds no generator cache");
  json j = read_json(dir + "/generators.json");
  GeneratorSet gen = build_generator_set(j.at("m_flat").at(0).get<int>(), j.at("m_flat").at(1).get<int>(),
                                         j.at("r").get<int>());
  auto same = [](const Sampled1D& s, const json& c) {
    return c.at("lo").get<double>() == s.lo && c.at("hi").get<double>() == s.hi &&
           c.at("values").get<std::vector<double>>() == s.values;
  };
  if (!same(gen.psi1, j.at("psi1")) || !same(gen.psi2, j.at("psi2")))
    throw Error(ErrorCode::FormatError, dir + ": cached generator samples differ from a fresh build");
  return gen;
}

json to_json(const DecayValidationReport& r) {
  return {{"alpha", r.alpha},
          {"gamma1", r.gamma1},
          {"gamma2", r.gamma2},
          {"C1", r.c1},
          {"wavelet_axis", r.wavelet_axis},
          {"envelope_mass", r.envelope_mass},
          {"envelope_tail_fraction", r.envelope_tail_fraction},
          {"flags",
           {{"alpha_gt_5", r.alpha_ok ? "PASS" : "FAIL"},
            {"gamma_ge_4", r.gamma_ok ? "PASS" : "FAIL"},
            {"condition_ii", r.condition_ii_ok ? "PASS" : "FAIL"}}}};
}

json to_json(const RateFit& f) {
  return {{"beta", f.beta},         {"C", f.C},   {"beta_log", f.beta_log}, {"C_log", f.C_log},
          {"residual", f.residual}, {"residual_log", f.residual_log},       {"points", f.points},
          {"N_min", f.N_min},       {"N_max", f.N_max}};
}

json to_json(const DecayReport& r) {
  json j = {{"A", r.A}, {"energy", r.energy}, {"coefficient_energy", r.coefficient_energy}, {"rows", r.rows.size()}};
  j["tail_fit"] = r.tail_fit ? to_json(*r.tail_fit) : json(nullptr);
  j["recon_fit"] = r.recon_fit ? to_json(*r.recon_fit) : json(nullptr);
  std::size_t failures = 0, violations = 0;
  for (const DecayRow& row : r.rows) {
    failures += !row.cg_converged;
    violations += row.recon_error > row.bound * 1.05;
  }
  j["cg_failures"] = failures;
  j["bound_violations"] = violations;
  return j;
}

void write_decay_report(const std::string& stem, const DecayReport& r) {
  std::ostringstream csv, dat;
  csv << "N,tail_energy,recon_error,bound,cg_iterations,cg_residual,cg_converged,note\n";
  dat << "# N tail_energy recon_error bound\n";
  for (const DecayRow& row : r.rows) {
    csv << row.N << ',' << number(row.tail_energy) << ',' << number(row.recon_error) << ',' << number(row.bound) << ','
        << row.cg_iterations << ',' << number(row.cg_residual) << ',' << (row.cg_converged ? 1 : 0) << ",\"" << row.note
        << "\"\n";
    dat << row.N << ' ' << number(row.tail_energy) << ' ' << number(row.recon_error) << ' ' << number(row.bound) << '\n';
  }
  write_text(stem + ".csv", csv.str());
  write_text(stem + ".dat", dat.str());
  write_text(stem + ".json", dump(to_json(r)));
}

std::string slope_string(const Slope& s) { return s.infinite ? "INF" : number(s.value); }

json to_json(const EnvelopeReport& r) {
  return {{"scales", r.scales},
          {"max_estimate1", r.max_estimate1},
          {"C_estimate1", r.C_estimate1},
          {"C_estimate2", r.C_estimate2},
          {"falloff", [&] {
             json a = json::array();
             for (double v : r.falloff) a.push_back(std::isfinite(v) ? json(v) : json(nullptr));
             return a;
           }()},
          {"vertical_slope", r.vertical_slope},
          {"C1_spread", r.C1_spread},
          {"C2_spread", r.C2_spread},
          {"C1_stable", r.C1_stable},
          {"C2_stable", r.C2_stable},
          {"corner_cubes_skipped", r.corner_cubes_skipped},
          {"rows", r.rows.size()}};
}

std::string envelope_csv(const EnvelopeReport& r) {
  std::ostringstream out;
  out << "j,k,p1,p2,slope,regime,atoms,max_coefficient,envelope,ratio,shear_distance\n";
  for (const EnvelopeRow& row : r.rows)
    out << row.cube.j << ',' << row.k << ',' << row.cube.p1 << ',' << row.cube.p2 << ',' << slope_string(row.s) << ','
        << static_cast<int>(row.regime) << ',' << row.atoms << ',' << number(row.max_coefficient) << ','
        << number(row.envelope) << ',' << number(row.ratio) << ',' << number(row.shear_distance) << '\n';
  return out.str();
}

json to_json(const CountReport& r) {
  json maxima = json::array();
  for (const auto& m : r.max_ratios) maxima.push_back(json(std::vector<double>(m.begin(), m.end())));
  return {{"scales", r.scales},
          {"max_ratios", maxima},
          {"ratio_columns", {"N1/2^(j/2)", "N2/2^(j/2)", "N1/(|2^(j/2)s1+k|+1)", "N2/(|2^(j/2)s2+k|+1)"}},
          {"spread", std::vector<double>(r.spread.begin(), r.spread.end())},
          {"inclusion_holds", r.inclusion_holds},
          {"s1", r.s1},
          {"s2", r.s2}};
}

std::string count_csv(const CountReport& r) {
  std::ostringstream out;
  out << "j,k,p1,p2,N1,N2,N,scale_ratio1,scale_ratio2,shear_ratio1,shear_ratio2\n";
  for (const CountRow& row : r.rows)
    out << row.j << ',' << row.k << ',' << row.cube.p1 << ',' << row.cube.p2 << ',' << row.N1 << ',' << row.N2 << ','
        << row.N << ',' << number(row.scale_ratio1) << ',' << number(row.scale_ratio2) << ','
        << number(row.shear_ratio1) << ',' << number(row.shear_ratio2) << '\n';
  return out.str();
}

json to_json(const CornerReport& r) {
  json corners = json::array();
  for (std::size_t c = 0; c < r.corners.size(); ++c)
    corners.push_back({{"point", point_json(r.corners[c])}, {"counts", r.counts[c]}, {"growth", r.growth[c]}});
  return {{"scales", r.scales},         {"epsilon", r.epsilon},       {"corners", corners},
          {"mean_growth", r.mean_growth}, {"eps_list", r.eps_list},   {"lambda_eps", r.lambda_eps},
          {"eps_exponent", r.eps_exponent}, {"max_normalized", r.max_normalized}};
}

}  // namespace shearbd::io
