#include <doctest.h>

#include "assemble/assemble.hpp"
#include "core/error.hpp"
#include "testkit/fixtures.hpp"

using namespace paperjson;
using testkit::tok;
using testkit::words;

namespace {

std::vector<std::string> line_texts(const std::vector<Line>& lines) {
  std::vector<std::string> out;
  for (const auto& l : lines) out.push_back(l.text());
  return out;
}

std::vector<std::string> para_texts(const std::vector<Paragraph>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.text);
  return out;
}

std::vector<Token> concat(std::vector<std::vector<Token>> parts) {
  std::vector<Token> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

// A page of two columns at x in [50,280] and [320,550], three lines each.
std::vector<Token> column_line(const std::string& side, int n, double x0, double x1, double y, std::size_t id) {
  return {tok(id, side, x0, y, x0 + 40, y + 10), tok(id + 1, "line", x0 + 45, y, x0 + 80, y + 10),
          tok(id + 2, std::to_string(n), x1 - 10, y, x1, y + 10)};
}

PageData two_column_page() {
  std::size_t id = 1;
  std::vector<Token> toks;
  for (int i = 0; i < 3; ++i) {
    auto l = column_line("left", i, 50, 280, 200.0 + 14.0 * i, id);
    auto r = column_line("right", i, 320, 550, 200.0 + 14.0 * i, id + 10);
    id += 20;
    toks.insert(toks.end(), l.begin(), l.end());
    toks.insert(toks.end(), r.begin(), r.end());
  }
  return testkit::page(0, toks);
}

}  // namespace

TEST_CASE("line grouping by vertical overlap") {
  auto lines = build_lines({tok(2, "world", 50, 100, 80, 112), tok(1, "Hello", 10, 100, 40, 112)}, 0.5);
  CHECK(line_texts(lines) == std::vector<std::string>{"Hello world"});
  lines = build_lines({tok(1, "a", 10, 100, 40, 112), tok(2, "b", 10, 130, 40, 142)}, 0.5);
  CHECK(line_texts(lines) == std::vector<std::string>{"a", "b"});
  // A superscript overlapping half of the base line still belongs to it.
  lines = build_lines({tok(1, "x", 10, 100, 20, 112), tok(2, "2", 21, 96, 25, 104)}, 0.5);
  CHECK(lines.size() == 1);
}

TEST_CASE("forty tokens in ten lines") {
  std::vector<Token> toks;
  std::size_t id = 1;
  for (int i = 9; i >= 0; --i) {
    auto l = words("w" + std::to_string(i) + " a b c", 72, 100.0 + 14.0 * i, id);
    id += 4;
    toks.insert(toks.end(), l.begin(), l.end());
  }
  REQUIRE(toks.size() == 40);
  const auto lines = build_lines(toks, 0.5);
  REQUIRE(lines.size() == 10);
  for (int i = 0; i < 10; ++i) CHECK(lines[static_cast<std::size_t>(i)].text() == "w" + std::to_string(i) + " a b c");
}

TEST_CASE("column detection") {
  const auto two = detect_columns(two_column_page());
  REQUIRE(two.boundaries.size() == 1);
  CHECK(std::abs(two.boundaries[0] - 300) <= 10);

  std::vector<Token> full;
  for (int i = 0; i < 6; ++i) {
    auto l = words("a full width line of text that runs across the middle of the page", 72, 200.0 + 14 * i,
                   static_cast<std::size_t>(1 + 20 * i));
    full.insert(full.end(), l.begin(), l.end());
  }
  CHECK(detect_columns(testkit::page(0, full)).boundaries.empty());
  CHECK(detect_columns(testkit::page(0, {})).boundaries.empty());
}

TEST_CASE("extract_lines keeps columns apart") {
  Document d = testkit::document({two_column_page()});
  extract_lines(d);
  CHECK(d.has_stage("extract_lines"));
  REQUIRE(d.layouts.size() == 1);
  CHECK(d.lines.size() == 6);
  for (const auto& l : d.lines) CHECK((l.text().rfind("left", 0) == 0 || l.text().rfind("right", 0) == 0));
}

TEST_CASE("concat_columns orders left before right") {
  Document d = testkit::document({two_column_page()});
  extract_lines(d);
  concat_columns(d);
  CHECK(line_texts(d.lines) == std::vector<std::string>{"left line 0", "left line 1", "left line 2", "right line 0",
                                                         "right line 1", "right line 2"});
  CHECK(d.lines[0].column == 0);
  CHECK(d.lines[3].column == 1);
}

TEST_CASE("a full-width title leads the column streams") {
  PageData p = two_column_page();
  auto title = words("A Long Title That Spans Both Columns Of The Page Easily Here", 60, 120, 500, 18);
  p.tokens.insert(p.tokens.end(), title.begin(), title.end());
  Document d = testkit::document({p});
  extract_lines(d);
  concat_columns(d);
  REQUIRE(d.lines.size() == 7);
  CHECK(d.lines[0].text().rfind("A Long Title", 0) == 0);
  CHECK(d.lines[0].span_all);
  CHECK(d.lines[1].text() == "left line 0");
  CHECK(d.lines[4].text() == "right line 0");
}

TEST_CASE("concat_columns is the identity on one column") {
  Document d = testkit::document({testkit::page(0, concat({words("one", 72, 100, 1), words("two", 72, 114, 2)}))});
  extract_lines(d);
  const auto before = line_texts(d.lines);
  concat_columns(d);
  CHECK(line_texts(d.lines) == before);
}

TEST_CASE("paragraph breaks") {
  const Thresholds th;
  SUBCASE("regular pitch stays together") {
    const auto lines = build_lines(concat({words("first line", 72, 100, 1), words("second line", 72, 112, 3),
                                           words("third line.", 72, 124, 5)}),
                                   0.5);
    CHECK(group_paragraphs(lines, false, th, 12.0).size() == 1);
  }
  SUBCASE("font size change") {
    const auto lines = build_lines(concat({words("small", 72, 100, 1, 10), words("large", 72, 112, 2, 14)}), 0.5);
    CHECK(group_paragraphs(lines, true, th, 12.0).size() == 2);
    CHECK(group_paragraphs(lines, false, th, 12.0).size() == 1);
  }
  SUBCASE("large gap") {
    const auto lines = build_lines(concat({words("one", 72, 100, 1), words("two", 72, 124, 2)}), 0.5);
    CHECK(group_paragraphs(lines, false, th, 12.0).size() == 2);
  }
  SUBCASE("indent after a terminal line") {
    const auto lines = build_lines(concat({words("ends here.", 72, 100, 1), words("Indented start", 90, 112, 3),
                                           words("no stop", 72, 124, 5), words("indented but continuing", 90, 136, 7)}),
                                   0.5);
    CHECK(para_texts(group_paragraphs(lines, false, th, 12.0)) ==
          std::vector<std::string>{"ends here.", "Indented start no stop indented but continuing"});
  }
}

TEST_CASE("four paragraphs with double spacing") {
  std::vector<Token> toks;
  std::size_t id = 1;
  double y = 100;
  for (int p = 0; p < 4; ++p) {
    for (int l = 0; l < 3; ++l) {
      auto w = words("para " + std::to_string(p) + " line " + std::to_string(l) + (l == 2 ? "." : ""), 72, y, id);
      id += 4;
      toks.insert(toks.end(), w.begin(), w.end());
      y += 12;
    }
    y += 12;
  }
  Document d = testkit::document({testkit::page(0, toks)});
  extract_lines(d);
  extract_paragraphs(d, true);
  REQUIRE(d.paragraphs.size() == 4);
  CHECK(d.paragraphs[2].text == "para 2 line 0 para 2 line 1 para 2 line 2.");
  CHECK(d.lines.empty());
  CHECK(median_line_pitch(std::vector<Line>(d.paragraphs[0].lines)) == doctest::Approx(12));
}

TEST_CASE("de-hyphenation inside a paragraph") {
  Document d = testkit::document(
      {testkit::page(0, concat({words("we study optimi-", 72, 100, 1), words("zation problems.", 72, 112, 5)}))});
  extract_lines(d);
  extract_paragraphs(d, false);
  REQUIRE(d.paragraphs.size() == 1);
  CHECK(d.paragraphs[0].text == "we study optimization problems.");
}

TEST_CASE("concat_pages joins continuations") {
  auto make = [](const std::string& end, const std::string& start, double size2) {
    Document d = testkit::document({testkit::page(0, words(end, 72, 700, 1)),
                                    testkit::page(1, words(start, 72, 72, 100, size2, 1))});
    extract_lines(d);
    extract_paragraphs(d, true);
    concat_pages(d, true);
    return d;
  };
  Document merged = make("results as shown in", "the previous section.", 10);
  REQUIRE(merged.paragraphs.size() == 1);
  CHECK(merged.paragraphs[0].text == "results as shown in the previous section.");
  CHECK(merged.paragraphs[0].first_page == 0);
  CHECK(merged.paragraphs[0].last_page == 1);

  CHECK(make("in conclusion.", "Furthermore we go on.", 10).paragraphs.size() == 2);
  CHECK(make("as shown in", "the next part.", 14).paragraphs.size() == 2);
  CHECK(make("a hyphen-", "ated word.", 10).paragraphs.at(0).text == "a hyphenated word.");
}

TEST_CASE("concat_pages is the identity on one page") {
  Document d = testkit::document(
      {testkit::page(0, concat({words("First.", 72, 100, 1), words("second", 72, 130, 2)}))});
  extract_lines(d);
  extract_paragraphs(d, false);
  const auto before = para_texts(d.paragraphs);
  concat_pages(d, false);
  CHECK(para_texts(d.paragraphs) == before);
}

TEST_CASE("assembly steps check their prerequisites") {
  Document d = testkit::document({testkit::page(0, words("x", 72, 100, 1))});
  CHECK_THROWS_AS(extract_paragraphs(d, false), Error);
  CHECK_THROWS_AS(concat_columns(d), Error);
  CHECK_THROWS_AS(concat_pages(d, false), Error);
  Document empty;
  CHECK_THROWS_AS(extract_lines(empty), Error);
}
