#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <tuple>

namespace paperjson {

// Axis-aligned box in page points. Origin is the top-left corner of the page
// and y grows downward, so reading order is ascending y.
class BBox {
 public:
  // Throws Error(degenerate_box) unless x0 < x1, y0 < y1 and every coordinate
  // is finite and non-negative.
  BBox(double x0, double y0, double x1, double y1);

  // Like the checked constructor but tolerates zero width or zero height.
  // Used for stroked rules, which are legitimately flat.
  static BBox flat(double x0, double y0, double x1, double y1);

  static std::optional<BBox> try_make(double x0, double y0, double x1, double y1);

  double x0() const { return x0_; }
  double y0() const { return y0_; }
  double x1() const { return x1_; }
  double y1() const { return y1_; }

  double width() const { return x1_ - x0_; }
  double height() const { return y1_ - y0_; }
  double area() const { return width() * height(); }
  double center_x() const { return 0.5 * (x0_ + x1_); }
  double center_y() const { return 0.5 * (y0_ + y1_); }

  BBox united(const BBox& other) const;

  // Clips to [0,width]x[0,height]. Empty result when nothing is left or the
  // clipped box is degenerate (flat boxes stay flat when allow_flat is set).
  std::optional<BBox> clipped(double page_width, double page_height,
                              bool allow_flat = false) const;

  bool is_flat() const { return !(x0_ < x1_) || !(y0_ < y1_); }

  friend bool operator==(const BBox&, const BBox&) = default;

 private:
  struct Unchecked {};
  BBox(Unchecked, double x0, double y0, double x1, double y1)
      : x0_(x0), y0_(y0), x1_(x1), y1_(y1) {}

  double x0_;
  double y0_;
  double x1_;
  double y1_;
};

// True iff inner lies inside outer grown by slack on every side.
bool bbox_contains(const BBox& outer, const BBox& inner, double slack = 0.0);

double intersection_area(const BBox& a, const BBox& b);

// area(a ∩ b) / min(area(a), area(b)); 0 when disjoint or when either box is
// flat.
double overlap_ratio(const BBox& a, const BBox& b);

// Shortest distance between the two boxes' edges; 0 when they intersect.
double edge_distance(const BBox& a, const BBox& b);

// Fraction of the shorter vertical extent shared by both boxes.
double vertical_overlap_fraction(const BBox& a, const BBox& b);

struct ReadingOrderKey {
  std::size_t page;
  int column;
  double y0;
  double x0;

  friend auto operator<=>(const ReadingOrderKey&, const ReadingOrderKey&) = default;
};

ReadingOrderKey reading_order_key(const BBox& box, std::size_t page, int column);

}  // namespace paperjson
