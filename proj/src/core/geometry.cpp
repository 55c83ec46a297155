#include "core/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "core/error.hpp"

namespace paperjson {

namespace {

bool coords_ok(double x0, double y0, double x1, double y1) {
  for (double v : {x0, y0, x1, y1}) {
    if (!std::isfinite(v) || v < 0.0) return false;
  }
  return true;
}

[[noreturn]] void reject(double x0, double y0, double x1, double y1) {
  std::ostringstream os;
  os << "degenerate box (" << x0 << ", " << y0 << ", " << x1 << ", " << y1 << ")";
  throw Error(ErrorCode::degenerate_box, os.str());
}

}  // namespace

BBox::BBox(double x0, double y0, double x1, double y1) : x0_(x0), y0_(y0), x1_(x1), y1_(y1) {
  if (!coords_ok(x0, y0, x1, y1) || !(x0 < x1) || !(y0 < y1)) reject(x0, y0, x1, y1);
}

BBox BBox::flat(double x0, double y0, double x1, double y1) {
  if (!coords_ok(x0, y0, x1, y1) || x1 < x0 || y1 < y0) reject(x0, y0, x1, y1);
  return BBox(Unchecked{}, x0, y0, x1, y1);
}

std::optional<BBox> BBox::try_make(double x0, double y0, double x1, double y1) {
  if (!coords_ok(x0, y0, x1, y1) || !(x0 < x1) || !(y0 < y1)) return std::nullopt;
  return BBox(Unchecked{}, x0, y0, x1, y1);
}

BBox BBox::united(const BBox& other) const {
  return BBox(Unchecked{}, std::min(x0_, other.x0_), std::min(y0_, other.y0_),
              std::max(x1_, other.x1_), std::max(y1_, other.y1_));
}

std::optional<BBox> BBox::clipped(double page_width, double page_height, bool allow_flat) const {
  const double cx0 = std::clamp(x0_, 0.0, page_width);
  const double cx1 = std::clamp(x1_, 0.0, page_width);
  const double cy0 = std::clamp(y0_, 0.0, page_height);
  const double cy1 = std::clamp(y1_, 0.0, page_height);
  if (allow_flat) {
    // A flat box entirely outside the page collapses onto its edge; drop it.
    if (x1_ < 0.0 || y1_ < 0.0 || x0_ > page_width || y0_ > page_height) return std::nullopt;
    if (cx1 < cx0 || cy1 < cy0) return std::nullopt;
    if (!(cx0 < cx1) && !(cy0 < cy1)) return std::nullopt;
    return BBox(Unchecked{}, cx0, cy0, cx1, cy1);
  }
  return try_make(cx0, cy0, cx1, cy1);
}

bool bbox_contains(const BBox& outer, const BBox& inner, double slack) {
  return inner.x0() >= outer.x0() - slack && inner.y0() >= outer.y0() - slack &&
         inner.x1() <= outer.x1() + slack && inner.y1() <= outer.y1() + slack;
}

double intersection_area(const BBox& a, const BBox& b) {
  const double w = std::min(a.x1(), b.x1()) - std::max(a.x0(), b.x0());
  const double h = std::min(a.y1(), b.y1()) - std::max(a.y0(), b.y0());
  if (w <= 0.0 || h <= 0.0) return 0.0;
  return w * h;
}

double overlap_ratio(const BBox& a, const BBox& b) {
  const double denom = std::min(a.area(), b.area());
  if (denom <= 0.0) return 0.0;
  return std::clamp(intersection_area(a, b) / denom, 0.0, 1.0);
}

double edge_distance(const BBox& a, const BBox& b) {
  const double dx = std::max({0.0, b.x0() - a.x1(), a.x0() - b.x1()});
  const double dy = std::max({0.0, b.y0() - a.y1(), a.y0() - b.y1()});
  return std::hypot(dx, dy);
}

double vertical_overlap_fraction(const BBox& a, const BBox& b) {
  const double shared = std::min(a.y1(), b.y1()) - std::max(a.y0(), b.y0());
  const double shorter = std::min(a.height(), b.height());
  if (shared <= 0.0 || shorter <= 0.0) return 0.0;
  return shared / shorter;
}

ReadingOrderKey reading_order_key(const BBox& box, std::size_t page, int column) {
  return ReadingOrderKey{page, column < 0 ? 0 : column, box.y0(), box.x0()};
}

}  // namespace paperjson
