#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "trapcert/errors.hpp"
#include "trapcert/geometry.hpp"

namespace trapcert {

namespace {

constexpr std::size_t kMaxCells = 64u << 20;

struct Raster {
  double x0 = 0.0, y0 = 0.0, res = 1.0;
  long cols = 0, rows = 0;
  std::vector<std::uint8_t> wall;

  // Cells whose closed extent meets [u0, u1]; a coordinate on a cell edge
  // marks both neighbours.
  std::pair<long, long> span(double u0, double u1, double origin, long limit) const {
    const long a = static_cast<long>(std::floor((u0 - origin) / res - 1e-9));
    const long b = static_cast<long>(std::floor((u1 - origin) / res + 1e-9));
    return {std::max(0L, a), std::min(limit - 1, b)};
  }

  void horizontal(double y, double xa, double xb) {
    const auto [r0, r1] = span(y, y, y0, rows);
    const auto [c0, c1] = span(xa, xb, x0, cols);
    for (long r = r0; r <= r1; ++r)
      for (long c = c0; c <= c1; ++c) wall[static_cast<std::size_t>(r * cols + c)] = 1;
  }

  void vertical(double x, double ya, double yb) {
    const auto [c0, c1] = span(x, x, x0, cols);
    const auto [r0, r1] = span(ya, yb, y0, rows);
    for (long r = r0; r <= r1; ++r)
      for (long c = c0; c <= c1; ++c) wall[static_cast<std::size_t>(r * cols + c)] = 1;
  }
};

}  // namespace

double min_feature_size(const std::vector<BoxSpec>& boxes) {
  double m = std::numeric_limits<double>::infinity();
  for (const BoxSpec& b : boxes)
    if (b.gap > 0.0) m = std::min(m, b.side * b.gap);
  for (std::size_t a = 0; a < boxes.size(); ++a) {
    for (std::size_t b = a + 1; b < boxes.size(); ++b) {
      double s = 0.0;
      for (int ax = 0; ax < static_cast<int>(boxes[a].translation.size()); ++ax) {
        const double sep =
            std::max({0.0, boxes[b].lo(ax) - boxes[a].hi(ax), boxes[a].lo(ax) - boxes[b].hi(ax)});
        s += sep * sep;
      }
      m = std::min(m, std::sqrt(s));
    }
  }
  return m;
}

bool flood_fill_oracle(const std::vector<BoxSpec>& boxes, double resolution) {
  if (boxes.empty()) return true;
  for (const BoxSpec& b : boxes)
    if (b.translation.size() != 2) throw DomainError("flood fill oracle is defined for n = 2 only");
  if (!(resolution > 0.0)) throw DomainError("resolution must be > 0");
  const double feature = min_feature_size(boxes);
  if (!(resolution < 0.25 * feature))
    throw DomainError("resolution too coarse: need < " + std::to_string(0.25 * feature));

  double xmin = boxes[0].lo(0), xmax = boxes[0].hi(0), ymin = boxes[0].lo(1), ymax = boxes[0].hi(1);
  double diameter = 0.0;
  for (const BoxSpec& b : boxes) {
    xmin = std::min(xmin, b.lo(0));
    xmax = std::max(xmax, b.hi(0));
    ymin = std::min(ymin, b.lo(1));
    ymax = std::max(ymax, b.hi(1));
    diameter = std::max(diameter, b.side * std::sqrt(2.0));
  }

  Raster r;
  r.res = resolution;
  r.x0 = xmin - diameter;
  r.y0 = ymin - diameter;
  r.cols = static_cast<long>(std::ceil((xmax - xmin + 2 * diameter) / resolution)) + 1;
  r.rows = static_cast<long>(std::ceil((ymax - ymin + 2 * diameter) / resolution)) + 1;
  const double cells = static_cast<double>(r.cols) * static_cast<double>(r.rows);
  if (cells > static_cast<double>(kMaxCells)) throw DomainError("flood fill raster too large");
  r.wall.assign(static_cast<std::size_t>(r.cols * r.rows), 0);

  for (const BoxSpec& b : boxes) {
    const double x = b.lo(0), y = b.lo(1), l = b.side;
    r.horizontal(y, x + l * b.gap, x + l);
    r.vertical(x + l, y, y + l);
    r.horizontal(y + l, x, x + l);
    r.vertical(x, y, y + l);
  }

  std::vector<std::uint8_t> seen(r.wall.size(), 0);
  std::deque<long> queue;
  auto push = [&](long c, long row) {
    const auto k = static_cast<std::size_t>(row * r.cols + c);
    if (r.wall[k] || seen[k]) return;
    seen[k] = 1;
    queue.push_back(row * r.cols + c);
  };
  for (long c = 0; c < r.cols; ++c) {
    push(c, 0);
    push(c, r.rows - 1);
  }
  for (long row = 0; row < r.rows; ++row) {
    push(0, row);
    push(r.cols - 1, row);
  }
  while (!queue.empty()) {
    const long k = queue.front();
    queue.pop_front();
    const long c = k % r.cols, row = k / r.cols;
    if (c > 0) push(c - 1, row);
    if (c + 1 < r.cols) push(c + 1, row);
    if (row > 0) push(c, row - 1);
    if (row + 1 < r.rows) push(c, row + 1);
  }
  for (std::size_t k = 0; k < r.wall.size(); ++k)
    if (!r.wall[k] && !seen[k]) return false;
  return true;
}

}  // namespace trapcert
