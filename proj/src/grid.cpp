#include "shearbd/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <json.hpp>

#include "shearbd/error.hpp"

namespace shearbd {

static_assert(std::endian::native == std::endian::little, "binary formats assume a little-endian host");

double grid_dot(const ImageGrid& f, const ImageGrid& g) {
  if (f.n != g.n) throw Error(ErrorCode::GridMismatch, "grid sizes differ");
  double s = 0.0;
  for (std::size_t i = 0; i < f.data.size(); ++i) s += f.data[i] * g.data[i];
  return s / (static_cast<double>(f.n) * f.n);
}

double grid_norm(const ImageGrid& f) { return std::sqrt(grid_dot(f, f)); }

ImageGrid downsample(const ImageGrid& f) {
  ImageGrid out(f.n / 2);
  for (int i = 0; i < out.n; ++i)
    for (int j = 0; j < out.n; ++j)
      out.at(i, j) = 0.25 * (f.at(2 * i, 2 * j) + f.at(2 * i + 1, 2 * j) + f.at(2 * i, 2 * j + 1) +
                             f.at(2 * i + 1, 2 * j + 1));
  return out;
}

void write_grd1(const std::string& path, const ImageGrid& g) {
  std::string header = "{\"magic\":\"GRD1\",\"n\":" + std::to_string(g.n) + ",\"dtype\":\"f64le\"}";
  if (header.size() > 64) throw Error(ErrorCode::FormatError, "GRD1 header too long");
  header.resize(64, ' ');
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::FormatError, "cannot write " + path);
  out.write(header.data(), 64);
  out.write(reinterpret_cast<const char*>(g.data.data()), static_cast<std::streamsize>(g.data.size() * sizeof(double)));
}

ImageGrid read_grd1(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FormatError, "cannot read " + path);
  char header[64];
  if (!in.read(header, 64)) throw Error(ErrorCode::FormatError, path + ": truncated GRD1 header");
  nlohmann::json h;
  try {
    h = nlohmann::json::parse(std::string(header, 64));
  } catch (const std::exception& e) {
    throw Error(ErrorCode::FormatError, path + ": bad GRD1 header");
  }
  if (h.value("magic", "") != "GRD1" || h.value("dtype", "") != "f64le" || !h.contains("n"))
    throw Error(ErrorCode::FormatError, path + ": not a GRD1 f64le grid");
  ImageGrid g(h["n"].get<int>());
  if (!in.read(reinterpret_cast<char*>(g.data.data()), static_cast<std::streamsize>(g.data.size() * sizeof(double))))
    throw Error(ErrorCode::FormatError, path + ": truncated GRD1 payload");
  return g;
}

void write_pgm16(const std::string& path, const ImageGrid& g) {
  auto [lo, hi] = std::minmax_element(g.data.begin(), g.data.end());
  double a = g.data.empty() ? 0.0 : *lo, b = g.data.empty() ? 0.0 : *hi;
  double scale = b > a ? 65535.0 / (b - a) : 0.0;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::FormatError, "cannot write " + path);
  out << "P5\n" << g.n << " " << g.n << "\n65535\n";
  std::vector<unsigned char> bytes(g.data.size() * 2);
  for (std::size_t i = 0; i < g.data.size(); ++i) {
    auto v = static_cast<std::uint16_t>(std::lround((g.data[i] - a) * scale));
    bytes[2 * i] = static_cast<unsigned char>(v >> 8);  // PGM stores the high byte first
    bytes[2 * i + 1] = static_cast<unsigned char>(v & 0xff);
  }
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace shearbd
