#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "shearbd/approx.hpp"
#include "shearbd/cartoon.hpp"
#include "shearbd/frames.hpp"
#include "shearbd/generators.hpp"
#include "shearbd/geometry.hpp"
#include "shearbd/system.hpp"
#include "shearbd/theorycheck.hpp"

namespace shearbd::io {

using json = nlohmann::json;

// Serializes with every floating point value printed as %.17g, so a file
// written here reads back to the same bits. Key order is sorted, which keeps
// the output byte-stable.
std::string dump(const json& j, int indent = 2);
json read_json(const std::string& path);
void write_text(const std::string& path, const std::string& text);

// Domains: {"kind": "star"|"piecewise", "nu", "rho0", "a0", "a", "b",
// "pieces", "translate"}. Piecewise translations are applied to the graph
// functions on read; the writer always emits translate [0, 0] for them.
json to_json(const GraphFunction& g);
GraphFunction graph_from_json(const json& j);
json to_json(const DomainSpec& d);
DomainSpec domain_from_json(const json& j);

json to_json(const SmoothSpec& s);
SmoothSpec smooth_from_json(const json& j);

// {"omega": domain, "B": domain (optional), "f0": smooth, "f1": smooth}
struct CartoonParts {
  DomainSpec omega;
  std::optional<DomainSpec> b;
  SmoothSpec f0, f1;
};
CartoonParts cartoon_parts_from_json(const json& j);
CartoonFunction cartoon_from_json(const json& j);
json to_json(const CartoonFunction& f);
json to_json(const CartoonCertificate& c, bool has_b);

json to_json(const SystemParams& p, const GeneratorSet& gen);
json bounds_json(const FrameBounds& b, const SystemParams& p);

// SHC1: "SHC1", u64 header length, JSON header, then the int32 (m1, m2)
// pairs of every index and the f64 values, both little-endian and in table
// order. Table order groups the (cone, j, k) slices into contiguous blocks,
// listed in the header.
void write_shc1(const std::string& path, const ShearletSystem& sys, const std::vector<double>& values);

struct Shc1File {
  json header;
  SystemParams params;
  int m_flat_psi1 = 6, m_flat_psi2 = 5, r = 10;
  std::vector<ShearletIndex> indices;
  std::vector<double> values;
};
Shc1File read_shc1(const std::string& path);

// Count and largest magnitude per (cone, j, k) plus overall totals.
json coefficient_stats(const ShearletSystem& sys, const std::vector<double>& values);

// Generator cache: psi.grd, psi_tilde.grd and phi.grd hold the tensor
// generators on [0, extent]^2 at `cells` samples per side; generators.json
// holds the parameters, supports and the exact one-dimensional samples.
void write_generator_cache(const std::string& dir, const GeneratorSet& gen, int cells = 512);
// Rebuilds the set from the cached parameters and checks the samples agree
// bit for bit; FormatError otherwise.
GeneratorSet read_generator_cache(const std::string& dir);

json to_json(const DecayValidationReport& r);

// stem.csv (N, tail_energy, recon_error, bound, cg columns), stem.json
// (summary with fits) and stem.dat (whitespace separated, for gnuplot).
void write_decay_report(const std::string& stem, const DecayReport& r);
json to_json(const RateFit& f);
json to_json(const DecayReport& r);

json to_json(const EnvelopeReport& r);
std::string envelope_csv(const EnvelopeReport& r);
json to_json(const CountReport& r);
std::string count_csv(const CountReport& r);
json to_json(const CornerReport& r);

std::string slope_string(const Slope& s);

}  // namespace shearbd::io
