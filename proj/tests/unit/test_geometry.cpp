#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "core/error.hpp"
#include "core/geometry.hpp"

using namespace paperjson;

TEST_CASE("bbox_contains") {
  const BBox outer(0, 0, 10, 10);
  CHECK(bbox_contains(outer, BBox(0, 0, 10, 10)));
  CHECK_FALSE(bbox_contains(outer, BBox(20, 20, 30, 30)));
  CHECK(bbox_contains(outer, BBox(9, 9, 12, 12), 2.0));
  CHECK_FALSE(bbox_contains(outer, BBox(9, 9, 12, 12), 1.9));
  CHECK_FALSE(bbox_contains(BBox(2, 2, 4, 4), outer));
}

TEST_CASE("overlap_ratio") {
  CHECK(overlap_ratio(BBox(0, 0, 10, 10), BBox(0, 0, 10, 10)) == doctest::Approx(1.0));
  CHECK(overlap_ratio(BBox(0, 0, 10, 10), BBox(10, 0, 20, 10)) == 0.0);
  CHECK(overlap_ratio(BBox(0, 0, 10, 10), BBox(5, 0, 15, 10)) == doctest::Approx(0.5));
  // Measured against the smaller box: a small box inside a large one is fully covered.
  CHECK(overlap_ratio(BBox(0, 0, 100, 100), BBox(10, 10, 20, 20)) == doctest::Approx(1.0));
  CHECK(overlap_ratio(BBox(0, 0, 10, 10), BBox::flat(0, 5, 10, 5)) == 0.0);
}

TEST_CASE("box construction rejects degenerate input") {
  CHECK_THROWS_AS(BBox(0, 0, 0, 10), Error);
  CHECK_THROWS_AS(BBox(5, 0, 1, 10), Error);
  CHECK_THROWS_AS(BBox(-1, 0, 1, 10), Error);
  CHECK_THROWS_AS(BBox(0, 0, std::numeric_limits<double>::infinity(), 10), Error);
  CHECK_THROWS_AS(BBox(0, 0, std::nan(""), 10), Error);
  try {
    BBox(0, 0, 0, 0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::degenerate_box);
  }
  CHECK_FALSE(BBox::try_make(0, 0, 0, 1).has_value());
  CHECK(BBox::try_make(0, 0, 1, 1).has_value());
  CHECK(BBox::flat(0, 5, 10, 5).is_flat());
  CHECK_FALSE(BBox(0, 0, 1, 1).is_flat());
}

TEST_CASE("box accessors and union") {
  const BBox b(10, 20, 40, 60);
  CHECK(b.width() == 30);
  CHECK(b.height() == 40);
  CHECK(b.area() == 1200);
  CHECK(b.center_x() == 25);
  CHECK(b.center_y() == 40);
  CHECK(b.united(BBox(0, 50, 15, 70)) == BBox(0, 20, 40, 70));
}

TEST_CASE("clipping to the page") {
  CHECK(BBox(600, 780, 650, 800).clipped(612, 792) == BBox(600, 780, 612, 792));
  CHECK_FALSE(BBox(700, 10, 720, 20).clipped(612, 792).has_value());
  CHECK(BBox(10, 10, 20, 20).clipped(612, 792) == BBox(10, 10, 20, 20));
  CHECK_FALSE(BBox(612, 10, 700, 20).clipped(612, 792).has_value());
  CHECK(BBox::flat(500, 10, 700, 10).clipped(612, 792, true) == BBox::flat(500, 10, 612, 10));
}

TEST_CASE("distances") {
  CHECK(edge_distance(BBox(0, 0, 10, 10), BBox(5, 5, 15, 15)) == 0.0);
  CHECK(edge_distance(BBox(0, 0, 10, 10), BBox(0, 20, 10, 30)) == doctest::Approx(10.0));
  CHECK(edge_distance(BBox(0, 0, 10, 10), BBox(13, 14, 20, 20)) == doctest::Approx(5.0));
  CHECK(intersection_area(BBox(0, 0, 10, 10), BBox(5, 5, 15, 15)) == doctest::Approx(25.0));
  CHECK(vertical_overlap_fraction(BBox(0, 100, 10, 112), BBox(50, 100, 60, 112)) == doctest::Approx(1.0));
  CHECK(vertical_overlap_fraction(BBox(0, 100, 10, 112), BBox(50, 130, 60, 142)) == 0.0);
  CHECK(vertical_overlap_fraction(BBox(0, 100, 10, 110), BBox(50, 105, 60, 125)) == doctest::Approx(0.5));
}

TEST_CASE("reading order key") {
  CHECK(reading_order_key(BBox(0, 100, 10, 110), 0, 0) < reading_order_key(BBox(0, 200, 10, 210), 0, 0));
  CHECK(reading_order_key(BBox(0, 700, 10, 710), 0, 1) < reading_order_key(BBox(0, 10, 10, 20), 1, 0));
  CHECK(reading_order_key(BBox(300, 500, 310, 510), 0, 0) < reading_order_key(BBox(0, 10, 10, 20), 0, 1));
  CHECK(reading_order_key(BBox(5, 100, 10, 110), 0, 0) < reading_order_key(BBox(6, 100, 10, 110), 0, 0));
}

TEST_CASE("six paragraphs on two columns sort like the exhaustive oracle") {
  struct Item {
    BBox box;
    std::size_t page;
    int column;
  };
  const std::vector<Item> items = {
      {BBox(320, 400, 550, 440), 0, 1}, {BBox(50, 100, 280, 150), 0, 0}, {BBox(320, 90, 550, 140), 0, 1},
      {BBox(50, 300, 280, 360), 0, 0},  {BBox(320, 200, 550, 260), 0, 1}, {BBox(50, 180, 280, 240), 0, 0},
  };
  std::vector<std::size_t> idx(items.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  // Oracle: the permutation whose consecutive pairs all satisfy the tuple order.
  std::vector<std::size_t> oracle;
  std::vector<std::size_t> perm = idx;
  do {
    bool ok = true;
    for (std::size_t i = 1; i < perm.size() && ok; ++i) {
      const Item& a = items[perm[i - 1]];
      const Item& b = items[perm[i]];
      ok = std::make_tuple(a.page, a.column, a.box.y0(), a.box.x0()) <
           std::make_tuple(b.page, b.column, b.box.y0(), b.box.x0());
    }
    if (ok) oracle = perm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return reading_order_key(items[a].box, items[a].page, items[a].column) <
           reading_order_key(items[b].box, items[b].page, items[b].column);
  });
  CHECK(idx == oracle);
  CHECK(oracle == std::vector<std::size_t>{1, 5, 3, 2, 4, 0});
}
