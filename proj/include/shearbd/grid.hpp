#pragma once

#include <string>
#include <vector>

namespace shearbd {

// n x n samples, row-major; sample (i, j) belongs to the cell
// [i/n, (i+1)/n] x [j/n, (j+1)/n], so i runs along x1.
struct ImageGrid {
  int n = 0;
  std::vector<double> data;

  ImageGrid() = default;
  explicit ImageGrid(int size, double fill = 0.0) : n(size), data(static_cast<std::size_t>(size) * size, fill) {}

  double& at(int i, int j) { return data[static_cast<std::size_t>(i) * n + j]; }
  double at(int i, int j) const { return data[static_cast<std::size_t>(i) * n + j]; }
  std::size_t size() const { return data.size(); }
};

// Grid inner product h^2 sum f g with h = 1/n.
double grid_dot(const ImageGrid& f, const ImageGrid& g);
double grid_norm(const ImageGrid& f);

// Average over 2x2 blocks.
ImageGrid downsample(const ImageGrid& f);

void write_grd1(const std::string& path, const ImageGrid& g);
ImageGrid read_grd1(const std::string& path);
// 16-bit binary PGM, min -> 0 and max -> 65535.
void write_pgm16(const std::string& path, const ImageGrid& g);

}  // namespace shearbd
