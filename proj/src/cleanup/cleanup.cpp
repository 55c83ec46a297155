#include "cleanup/cleanup.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <regex>
#include <set>

#include "assemble/assemble.hpp"
#include "core/text.hpp"

namespace paperjson {

namespace {

constexpr double kBandFraction = 0.05;
constexpr double kRecurrenceFraction = 0.6;
constexpr double kRecurrenceSlack = 5.0;
constexpr std::size_t kMinPagesForRecurrence = 3;

}  // namespace

bool is_illegal_text(std::string_view s) {
  for (char32_t c : text::decode_utf8(s)) {
    if (!text::is_unprintable(c) && !text::is_whitespace(c)) return false;
  }
  return true;
}

bool is_page_number_text(std::string_view s) {
  if (s.empty()) return false;
  if (std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); })) return true;
  static const std::regex roman("(x{0,3})(ix|iv|v?i{0,3})", std::regex::icase);
  return std::regex_match(s.begin(), s.end(), roman);
}

void remove_illegal_tokens(Document& doc) {
  doc.require_stage("remove_illegal_tokens", "load_docs");
  remove_tokens(
      doc, [](const Token& t) { return is_illegal_text(t.text) || t.bbox.is_flat(); }, "remove_illegal_tokens");
  doc.mark_stage("remove_illegal_tokens");
}

void remove_meta(Document& doc) {
  doc.require_stage("remove_meta", "load_docs");
  std::set<std::size_t> drop;

  for (const auto& page : doc.pages) {
    const double band = kBandFraction * page.height;
    for (const auto& t : page.tokens) {
      const double cy = t.bbox.center_y();
      if ((cy <= band || cy >= page.height - band) && is_page_number_text(t.text)) drop.insert(t.id);
    }
  }

  if (doc.pages.size() >= kMinPagesForRecurrence) {
    struct Occurrence {
      std::size_t page;
      double y;
      std::vector<std::size_t> ids;
    };
    std::map<std::string, std::vector<Occurrence>> by_text;
    for (const auto& page : doc.pages) {
      for (const auto& line : build_lines(page.tokens, 0.5)) {
        Occurrence occ{page.index, line.bbox.y0(), {}};
        for (const auto& t : line.tokens) occ.ids.push_back(t.id);
        by_text[text::normalize_recurring(line.text())].push_back(std::move(occ));
      }
    }
    const auto needed = static_cast<std::size_t>(std::ceil(kRecurrenceFraction * doc.pages.size()));
    for (const auto& [key, occs] : by_text) {
      if (occs.size() < needed) continue;
      for (const auto& o : occs) {
        std::set<std::size_t> pages;
        for (const auto& other : occs) {
          if (std::abs(other.y - o.y) <= kRecurrenceSlack) pages.insert(other.page);
        }
        if (pages.size() >= needed) drop.insert(o.ids.begin(), o.ids.end());
      }
    }
  }

  remove_tokens(doc, [&](const Token& t) { return drop.count(t.id) > 0; }, "remove_meta");
  doc.mark_stage("remove_meta");
}

}  // namespace paperjson
