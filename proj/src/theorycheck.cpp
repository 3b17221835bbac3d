#include "shearbd/theorycheck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "shearbd/error.hpp"
#include "shearbd/generators.hpp"
#include "shearbd/parallel.hpp"

namespace shearbd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Liang-Barsky: does the segment a-b meet the box [x0,x1] x [y0,y1]? On
// success t0, t1 bound the parameter interval inside the box.
bool clip_segment(double ax, double ay, double bx, double by, double x0, double x1, double y0, double y1, double& t0,
                  double& t1) {
  t0 = 0.0;
  t1 = 1.0;
  const double dx = bx - ax, dy = by - ay;
  const double p[4] = {-dx, dx, -dy, dy};
  const double q[4] = {ax - x0, x1 - ax, ay - y0, y1 - ay};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0.0) {
      if (q[i] < 0.0) return false;
      continue;
    }
    double r = q[i] / p[i];
    if (p[i] < 0.0)
      t0 = std::max(t0, r);
    else
      t1 = std::min(t1, r);
    if (t0 > t1) return false;
  }
  return true;
}

std::array<double, 4> cube_box(const DyadicCube& c) {
  Point m = c.center();
  double h = c.step();
  return {m.x1 - h, m.x1 + h, m.x2 - h, m.x2 + h};
}

bool boxes_overlap(const std::array<double, 4>& a, const std::array<double, 4>& b) {
  return a[0] <= b[1] && b[0] <= a[1] && a[2] <= b[3] && b[2] <= a[3];
}

// Thresholded support [lo, hi] of a sampled generator in its own coordinate.
std::pair<double, double> thresholded_support(const Sampled1D& g, double threshold) {
  double peak = 0.0;
  for (double v : g.values) peak = std::max(peak, std::abs(v));
  std::size_t first = g.values.size(), last = 0;
  for (std::size_t i = 0; i < g.values.size(); ++i)
    if (std::abs(g.values[i]) > threshold * peak) {
      first = std::min(first, i);
      last = i;
    }
  if (first == g.values.size()) return {0.0, 0.0};
  // Widen by one node so the interpolated tails are covered.
  double lo = g.lo + g.step() * (static_cast<double>(first) - 1.0);
  double hi = g.lo + g.step() * (static_cast<double>(last) + 1.0);
  return {std::max(lo, g.lo), std::min(hi, g.hi)};
}

double l1_norm(const Sampled1D& g) {
  double s = 0.0;
  for (double v : g.values) s += std::abs(v);
  return s * g.step();
}

template <typename Fn>
void for_each_segment(const EdgeCurve& c, Fn fn) {
  const std::size_t m = c.samples.size();
  if (m < 2) return;
  std::size_t count = c.open ? m - 1 : m;
  for (std::size_t i = 0; i < count; ++i) fn(c.samples[i], c.samples[(i + 1) % m]);
}

double slope_abs(const Slope& s) { return s.infinite ? kInf : std::abs(s.value); }

}  // namespace

double DyadicCube::step() const { return std::pow(2.0, -0.5 * j); }

bool DyadicCube::contains(Point x) const {
  Point m = center();
  double h = step();
  return std::abs(x.x1 - m.x1) <= h && std::abs(x.x2 - m.x2) <= h;
}

EdgeSet sample_edges(const std::vector<const DomainSpec*>& domains, double spacing) {
  EdgeSet out;
  for (std::size_t d = 0; d < domains.size(); ++d) {
    EdgeCurve c;
    c.domain = static_cast<int>(d);
    for (const BoundarySample& s : domains[d]->sample_boundary(spacing))
      c.samples.push_back({s.p, domains[d]->slope_at(s.piece, s.param), 1.0});
    out.curves.push_back(std::move(c));
    for (Point p : domains[d]->corners()) out.corners.push_back(p);
  }
  return out;
}

EdgeSet sample_pieces(const DomainSpec& d, double spacing) {
  EdgeSet out;
  out.corners = d.corners();
  auto samples = d.sample_boundary(spacing);
  if (d.kind() == DomainSpec::Kind::Star) {
    EdgeCurve c;
    for (const BoundarySample& s : samples) c.samples.push_back({s.p, d.slope_at(s.piece, s.param), 1.0});
    out.curves.push_back(std::move(c));
    return out;
  }
  for (int piece = 0; piece < d.piece_count(); ++piece) {
    EdgeCurve c;
    c.open = true;
    c.piece = piece;
    for (const BoundarySample& s : samples)
      if (s.piece == piece) c.samples.push_back({s.p, d.slope_at(s.piece, s.param), 1.0});
    const BoundaryPiece& bp = d.pieces()[piece];
    double t_end = bp.reversed ? bp.a : bp.b;
    c.samples.push_back({bp.end(), d.slope_at(piece, t_end), 1.0});
    out.curves.push_back(std::move(c));
  }
  return out;
}

EdgeSet sample_jump_set(const CartoonFunction& f, double spacing, double relative_threshold) {
  EdgeSet out;
  struct Source {
    const DomainSpec* d;
    const SmoothSpec* jump;
  };
  std::vector<Source> sources{{&f.omega(), &f.f0()}};
  if (f.has_inner()) sources.push_back({&f.inner(), &f.f1()});
  double peak = 0.0;
  std::vector<std::vector<EdgeSample>> loops;
  for (const Source& src : sources) {
    std::vector<EdgeSample> loop;
    for (const BoundarySample& s : src.d->sample_boundary(spacing)) {
      double jmp = std::abs(src.jump->value(s.p));
      peak = std::max(peak, jmp);
      loop.push_back({s.p, src.d->slope_at(s.piece, s.param), jmp});
    }
    loops.push_back(std::move(loop));
  }
  const double cut = relative_threshold * peak;
  for (std::size_t d = 0; d < loops.size(); ++d) {
    const auto& loop = loops[d];
    const std::size_t m = loop.size();
    std::size_t below = m;
    for (std::size_t i = 0; i < m; ++i)
      if (!(loop[i].jump > cut)) {
        below = i;
        break;
      }
    if (below == m) {
      EdgeCurve c;
      c.domain = static_cast<int>(d);
      c.samples = loop;
      out.curves.push_back(std::move(c));
    } else {
      // Walk once around starting just after a quiet sample and split into runs.
      EdgeCurve run;
      run.open = true;
      run.domain = static_cast<int>(d);
      for (std::size_t step = 1; step <= m; ++step) {
        const EdgeSample& s = loop[(below + step) % m];
        if (s.jump > cut) {
          run.samples.push_back(s);
        } else if (!run.samples.empty()) {
          out.curves.push_back(run);
          run.samples.clear();
        }
      }
      if (!run.samples.empty()) out.curves.push_back(run);
    }
    for (Point p : sources[d].d->corners())
      if (std::abs(sources[d].jump->value(p)) > cut) out.corners.push_back(p);
  }
  return out;
}

std::vector<DyadicCube> cubes_meeting(int j, const EdgeSet& edges) {
  std::set<DyadicCube> found;
  const double h = std::pow(2.0, -0.5 * j);
  const double spacing = h / 64.0;
  auto visit = [&](Point x) {
    int lo1 = static_cast<int>(std::ceil(x.x1 / h - 1.0)), hi1 = static_cast<int>(std::floor(x.x1 / h + 1.0));
    int lo2 = static_cast<int>(std::ceil(x.x2 / h - 1.0)), hi2 = static_cast<int>(std::floor(x.x2 / h + 1.0));
    for (int p1 = lo1; p1 <= hi1; ++p1)
      for (int p2 = lo2; p2 <= hi2; ++p2) found.insert({j, p1, p2});
  };
  for (const EdgeCurve& c : edges.curves) {
    if (c.samples.size() == 1) visit(c.samples[0].p);
    for_each_segment(c, [&](const EdgeSample& a, const EdgeSample& b) {
      double len = std::hypot(b.p.x1 - a.p.x1, b.p.x2 - a.p.x2);
      int pieces = std::max(1, static_cast<int>(std::ceil(len / spacing)));
      for (int i = 0; i <= pieces; ++i) {
        double t = static_cast<double>(i) / pieces;
        visit({a.p.x1 + t * (b.p.x1 - a.p.x1), a.p.x2 + t * (b.p.x2 - a.p.x2)});
      }
    });
  }
  return {found.begin(), found.end()};
}

std::vector<DyadicCube> cubes_meeting_boundary(int j, const std::vector<const DomainSpec*>& domains) {
  return cubes_meeting(j, sample_edges(domains, std::pow(2.0, -0.5 * j) / 64.0));
}

std::vector<ClippedSegment> clip_to_cube(const EdgeSet& edges, const DyadicCube& cube) {
  std::vector<ClippedSegment> out;
  auto box = cube_box(cube);
  for (std::size_t ci = 0; ci < edges.curves.size(); ++ci) {
    const EdgeCurve& c = edges.curves[ci];
    if (c.samples.size() == 1 && cube.contains(c.samples[0].p))
      out.push_back({c.samples[0].p, c.samples[0].p, c.samples[0].s, static_cast<int>(ci)});
    for_each_segment(c, [&](const EdgeSample& a, const EdgeSample& b) {
      double t0, t1;
      if (!clip_segment(a.p.x1, a.p.x2, b.p.x1, b.p.x2, box[0], box[1], box[2], box[3], t0, t1)) return;
      Point d = b.p - a.p;
      out.push_back({a.p + t0 * d, a.p + t1 * d, a.s, static_cast<int>(ci)});
    });
  }
  return out;
}

bool AtomSupport::meets_segment(Point a, Point b) const {
  auto frame = [&](Point x, double& w, double& v) {
    double X1 = (transposed ? x.x2 : x.x1) * n - 0.5;
    double X2 = (transposed ? x.x1 : x.x2) * n - 0.5;
    v = X2 - T2;
    w = X1 - T1 + kappa * v;
  };
  double wa, va, wb, vb, t0, t1;
  frame(a, wa, va);
  frame(b, wb, vb);
  return clip_segment(wa, va, wb, vb, w_lo, w_hi, v_lo, v_hi, t0, t1);
}

bool AtomSupport::meets_box(const std::array<double, 4>& box) const { return boxes_overlap(bbox, box); }

AtomSupport atom_support(const ShearletSystem& sys, std::size_t position, double threshold) {
  AtomGeometry g = sys.geometry(position);
  AtomSupport s;
  s.position = position;
  s.transposed = g.transposed;
  s.T1 = g.T1;
  s.T2 = g.T2;
  s.kappa = g.kappa;
  s.n = sys.n();
  auto [a1, b1] = thresholded_support(*g.first, threshold);
  auto [a2, b2] = thresholded_support(*g.second, threshold);
  // Half a pixel either way covers the 1/Q rounding of the shear lag.
  s.w_lo = a1 / g.alpha - 0.5;
  s.w_hi = b1 / g.alpha + 0.5;
  s.v_lo = a2 / g.gamma;
  s.v_hi = b2 / g.gamma;
  s.bbox = {kInf, -kInf, kInf, -kInf};
  for (double v : {s.v_lo, s.v_hi})
    for (double w : {s.w_lo, s.w_hi}) {
      double X2 = s.T2 + v, X1 = s.T1 - s.kappa * v + w;
      double u1 = (X1 + 0.5) / s.n, u2 = (X2 + 0.5) / s.n;
      if (s.transposed) std::swap(u1, u2);
      s.bbox[0] = std::min(s.bbox[0], u1);
      s.bbox[1] = std::max(s.bbox[1], u1);
      s.bbox[2] = std::min(s.bbox[2], u2);
      s.bbox[3] = std::max(s.bbox[3], u2);
    }
  return s;
}

ScaleSupports scale_supports(const ShearletSystem& sys, int j) {
  ScaleSupports out;
  out.j = j;
  for (const Slice& sl : sys.slices()) {
    if (sl.cone != Cone::H || sl.j != j) continue;
    out.shears.push_back(sl.k);
    std::vector<AtomSupport> v(sl.count);
    for (std::size_t t = 0; t < sl.count; ++t) v[t] = atom_support(sys, sl.offset + t);
    out.by_shear.push_back(std::move(v));
  }
  return out;
}

std::vector<std::size_t> lambda_jp(const ScaleSupports& supports, const DyadicCube& cube, const EdgeSet& edges) {
  std::vector<std::size_t> out;
  auto segs = clip_to_cube(edges, cube);
  if (segs.empty()) return out;
  auto box = cube_box(cube);
  for (const auto& shear : supports.by_shear)
    for (const AtomSupport& s : shear) {
      if (!s.meets_box(box)) continue;
      for (const ClippedSegment& seg : segs)
        if (s.meets_segment(seg.a, seg.b)) {
          out.push_back(s.position);
          break;
        }
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> lambda_jp(const ShearletSystem& sys, const DyadicCube& cube, const EdgeSet& edges) {
  return lambda_jp(scale_supports(sys, cube.j), cube, edges);
}

EnvelopeReport check_decay_envelopes(const std::vector<double>& coefficients, const ShearletSystem& sys,
                                     const EdgeSet& edges, int j_lo, int j_hi) {
  if (coefficients.size() != sys.size()) throw Error(ErrorCode::GridMismatch, "coefficients do not match the system");
  EnvelopeReport rep;
  for (int j = j_lo; j <= j_hi; ++j) {
    ScaleSupports sup = scale_supports(sys, j);
    auto cubes = cubes_meeting(j, edges);
    std::vector<std::vector<EnvelopeRow>> per_cube(cubes.size());
    std::vector<char> skipped(cubes.size(), 0);
    const double s2 = std::pow(2.0, 0.5 * j);
    parallel_for(cubes.size(), [&](std::size_t ci) {
      const DyadicCube& cube = cubes[ci];
      for (Point c : edges.corners)
        if (cube.contains(c)) {
          skipped[ci] = 1;
          return;
        }
      auto segs = clip_to_cube(edges, cube);
      if (segs.empty()) return;
      // Representative slope: the clipped segment closest to the cube centre.
      Point m = cube.center();
      const ClippedSegment* rep_seg = &segs[0];
      double best = kInf;
      for (const auto& sg : segs) {
        Point mid = 0.5 * (sg.a + sg.b);
        double d = std::hypot(mid.x1 - m.x1, mid.x2 - m.x2);
        if (d < best) {
          best = d;
          rep_seg = &sg;
        }
      }
      Slope s = rep_seg->s;
      double as = slope_abs(s);
      Regime regime = as > 3.0 ? Regime::Estimate1 : (as <= 1.5 ? Regime::Estimate2 : Regime::Overlap);
      auto box = cube_box(cube);
      for (std::size_t si = 0; si < sup.shears.size(); ++si) {
        EnvelopeRow row;
        row.cube = cube;
        row.k = sup.shears[si];
        row.s = s;
        row.regime = regime;
        for (const AtomSupport& a : sup.by_shear[si]) {
          if (!a.meets_box(box)) continue;
          bool hit = false;
          for (const auto& sg : segs)
            if (a.meets_segment(sg.a, sg.b)) {
              hit = true;
              break;
            }
          if (!hit) continue;
          ++row.atoms;
          row.max_coefficient = std::max(row.max_coefficient, std::abs(coefficients[a.position]));
        }
        if (row.atoms == 0) continue;
        double env1 = std::pow(2.0, -2.25 * j);
        row.shear_distance = s.infinite ? kInf : std::abs(row.k + s2 * s.value);
        double env2 = std::pow(2.0, -0.75 * j) / std::pow(std::max(1.0, row.shear_distance), 3.0);
        row.envelope = regime == Regime::Estimate1 ? env1 : (regime == Regime::Estimate2 ? env2 : std::min(env1, env2));
        row.ratio = row.max_coefficient / row.envelope;
        per_cube[ci].push_back(row);
      }
    });
    rep.scales.push_back(j);
    double m1 = 0.0, c1 = 0.0, c2 = 0.0;
    std::vector<std::pair<long, double>> bins;  // rounded shear distance -> max coefficient
    for (std::size_t ci = 0; ci < cubes.size(); ++ci) {
      rep.corner_cubes_skipped += skipped[ci];
      for (const EnvelopeRow& r : per_cube[ci]) {
        if (r.regime != Regime::Estimate2) {
          m1 = std::max(m1, r.max_coefficient);
          c1 = std::max(c1, r.max_coefficient / std::pow(2.0, -2.25 * j));
        }
        if (r.regime != Regime::Estimate1) {
          double env2 = std::pow(2.0, -0.75 * j) / std::pow(std::max(1.0, r.shear_distance), 3.0);
          c2 = std::max(c2, r.max_coefficient / env2);
          if (r.shear_distance >= 1.0 && r.max_coefficient > 0.0) {
            long b = std::lround(r.shear_distance);
            auto it = std::find_if(bins.begin(), bins.end(), [&](const auto& e) { return e.first == b; });
            if (it == bins.end())
              bins.push_back({b, r.max_coefficient});
            else
              it->second = std::max(it->second, r.max_coefficient);
          }
        }
        rep.rows.push_back(r);
      }
    }
    rep.max_estimate1.push_back(m1);
    rep.C_estimate1.push_back(c1);
    rep.C_estimate2.push_back(c2);
    if (bins.size() >= 3) {
      std::vector<double> x, y;
      for (const auto& [b, v] : bins) {
        x.push_back(std::log2(static_cast<double>(b)));
        y.push_back(std::log2(v));
      }
      rep.falloff.push_back(-fit_line(x, y).slope);
    } else {
      rep.falloff.push_back(std::nan(""));
    }
  }
  std::vector<double> xs, ys;
  auto spread = [](const std::vector<double>& v) {
    double lo = kInf, hi = 0.0;
    for (double x : v)
      if (x > 0.0) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
      }
    return hi > 0.0 ? hi / lo : kInf;
  };
  for (std::size_t i = 0; i < rep.scales.size(); ++i)
    if (rep.max_estimate1[i] > 0.0) {
      xs.push_back(rep.scales[i]);
      ys.push_back(std::log2(rep.max_estimate1[i]));
    }
  rep.vertical_slope = xs.size() >= 2 ? fit_line(xs, ys).slope : std::nan("");
  rep.C1_spread = spread(rep.C_estimate1);
  rep.C2_spread = spread(rep.C_estimate2);
  rep.C1_stable = rep.C1_spread <= 4.0;
  rep.C2_stable = rep.C2_spread <= 4.0;
  return rep;
}

std::vector<CountRow> count_intersections(const ScaleSupports& supports, const DyadicCube& cube,
                                          const EdgeSet& edges, int c1, int c2, double s1, double s2) {
  auto segs = clip_to_cube(edges, cube);
  auto box = cube_box(cube);
  const double r = std::pow(2.0, 0.5 * supports.j);
  std::vector<CountRow> out;
  for (std::size_t si = 0; si < supports.shears.size(); ++si) {
    CountRow row;
    row.j = supports.j;
    row.k = supports.shears[si];
    row.cube = cube;
    for (const AtomSupport& a : supports.by_shear[si]) {
      if (!a.meets_box(box)) continue;
      bool in1 = false, in2 = false;
      for (const auto& sg : segs) {
        if (sg.curve == c1 && !in1) in1 = a.meets_segment(sg.a, sg.b);
        if (sg.curve == c2 && !in2) in2 = a.meets_segment(sg.a, sg.b);
      }
      row.N1 += in1;
      row.N2 += in2;
      row.N += in1 && in2;
    }
    row.scale_ratio1 = row.N1 / r;
    row.scale_ratio2 = row.N2 / r;
    row.shear_ratio1 = row.N1 / (std::abs(r * s1 + row.k) + 1.0);
    row.shear_ratio2 = row.N2 / (std::abs(r * s2 + row.k) + 1.0);
    out.push_back(row);
  }
  return out;
}

CountReport count_intersections(const ShearletSystem& sys, const EdgeSet& edges, int c1, int c2, Point corner, int j_lo,
                                int j_hi) {
  CountReport rep;
  auto slope_near = [&](int c) {
    const EdgeCurve& cv = edges.curves[c];
    double best = kInf;
    Slope s;
    for (const EdgeSample& e : cv.samples) {
      double d = std::hypot(e.p.x1 - corner.x1, e.p.x2 - corner.x2);
      if (d < best) {
        best = d;
        s = e.s;
      }
    }
    return s;
  };
  Slope a = slope_near(c1), b = slope_near(c2);
  rep.s1 = a.infinite ? kInf : a.value;
  rep.s2 = b.infinite ? kInf : b.value;
  for (int j = j_lo; j <= j_hi; ++j) {
    ScaleSupports sup = scale_supports(sys, j);
    double h = std::pow(2.0, -0.5 * j);
    DyadicCube cube{j, static_cast<int>(std::lround(corner.x1 / h)), static_cast<int>(std::lround(corner.x2 / h))};
    auto rows = count_intersections(sup, cube, edges, c1, c2, rep.s1, rep.s2);
    std::array<double, 4> mx{};
    for (const CountRow& r : rows) {
      rep.inclusion_holds = rep.inclusion_holds && r.N <= std::min(r.N1, r.N2);
      mx[0] = std::max(mx[0], r.scale_ratio1);
      mx[1] = std::max(mx[1], r.scale_ratio2);
      mx[2] = std::max(mx[2], r.shear_ratio1);
      mx[3] = std::max(mx[3], r.shear_ratio2);
      rep.rows.push_back(r);
    }
    rep.scales.push_back(j);
    rep.max_ratios.push_back(mx);
  }
  for (int t = 0; t < 4; ++t) {
    double lo = kInf, hi = 0.0;
    for (const auto& m : rep.max_ratios) {
      lo = std::min(lo, m[t]);
      hi = std::max(hi, m[t]);
    }
    rep.spread[t] = lo > 0.0 ? hi / lo : kInf;
  }
  return rep;
}

CornerReport corner_scaling(const std::vector<double>& coefficients, const ShearletSystem& sys, const EdgeSet& edges,
                            double f_sup, int j_lo, int j_hi, std::vector<double> eps_list) {
  if (edges.corners.empty()) throw Error(ErrorCode::NoCorners, "the edge set has no corner points");
  if (coefficients.size() != sys.size()) throw Error(ErrorCode::GridMismatch, "coefficients do not match the system");
  CornerReport rep;
  rep.corners = edges.corners;
  const double norm = l1_norm(sys.generators().psi1) * l1_norm(sys.generators().psi2) * f_sup;
  const int j_top = sys.params().j_max;

  // Normalised coefficients of the corner-cube sets, per scale and corner.
  std::vector<std::vector<std::vector<double>>> sets(j_top + 1, std::vector<std::vector<double>>(edges.corners.size()));
  for (int j = 0; j <= j_top; ++j) {
    ScaleSupports sup = scale_supports(sys, j);
    double h = std::pow(2.0, -0.5 * j);
    for (std::size_t c = 0; c < edges.corners.size(); ++c) {
      Point p = edges.corners[c];
      DyadicCube cube{j, static_cast<int>(std::lround(p.x1 / h)), static_cast<int>(std::lround(p.x2 / h))};
      for (std::size_t pos : lambda_jp(sup, cube, edges)) sets[j][c].push_back(std::abs(coefficients[pos]) / norm);
    }
    for (const Slice& sl : sys.slices()) {
      if (sl.cone != Cone::H || sl.j != j) continue;
      for (std::size_t t = 0; t < sl.count; ++t)
        rep.max_normalized =
            std::max(rep.max_normalized, std::abs(coefficients[sl.offset + t]) / norm * std::pow(2.0, 0.75 * j));
    }
  }

  std::vector<double> pooled;
  for (int j = j_lo; j <= j_hi; ++j)
    for (const auto& v : sets[j]) pooled.insert(pooled.end(), v.begin(), v.end());
  if (pooled.empty()) throw Error(ErrorCode::NoCorners, "no atoms meet the corner cubes");
  std::nth_element(pooled.begin(), pooled.begin() + pooled.size() / 2, pooled.end());
  rep.epsilon = pooled[pooled.size() / 2];

  rep.counts.assign(edges.corners.size(), {});
  for (int j = j_lo; j <= j_hi; ++j) rep.scales.push_back(j);
  double total = 0.0;
  for (std::size_t c = 0; c < edges.corners.size(); ++c) {
    std::vector<double> x, y;
    for (int j = j_lo; j <= j_hi; ++j) {
      std::size_t cnt = std::count_if(sets[j][c].begin(), sets[j][c].end(), [&](double v) { return v > rep.epsilon; });
      rep.counts[c].push_back(cnt);
      if (cnt > 0) {
        x.push_back(j);
        y.push_back(std::log2(static_cast<double>(cnt)));
      }
    }
    double g = x.size() >= 2 ? fit_line(x, y).slope : std::nan("");
    rep.growth.push_back(g);
    total += g;
  }
  rep.mean_growth = total / static_cast<double>(edges.corners.size());

  if (eps_list.empty()) eps_list = log_spaced(4.0 * rep.epsilon, rep.epsilon / 4.0, 9);
  rep.eps_list = eps_list;
  std::vector<double> x, y;
  for (double eps : eps_list) {
    // Scales beyond (4/3) log2(1/eps) cannot carry normalised coefficients above eps.
    double cap = 4.0 / 3.0 * std::log2(1.0 / eps);
    std::size_t cnt = 0;
    for (int j = 0; j <= j_top && j <= cap; ++j)
      for (const auto& v : sets[j]) cnt += std::count_if(v.begin(), v.end(), [&](double a) { return a > eps; });
    rep.lambda_eps.push_back(cnt);
    if (cnt > 0) {
      x.push_back(std::log2(1.0 / eps));
      y.push_back(std::log2(static_cast<double>(cnt)));
    }
  }
  rep.eps_exponent = x.size() >= 2 ? fit_line(x, y).slope : std::nan("");
  return rep;
}

}  // namespace shearbd
