#pragma once

// Small builders shared by the unit tests.

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "core/model.hpp"
#include "engine/engine.hpp"

namespace testkit {

paperjson::Token tok(std::size_t id, std::string text, double x0, double y0, double x1, double y1,
                     double size = 10.0, std::size_t page = 0, std::string font = "Helvetica");

// Words of roughly 5 pt per character separated by `gap`, on the line whose
// top is `y0`. Ids continue from `first_id`.
std::vector<paperjson::Token> words(std::string_view text, double x, double y0, std::size_t first_id,
                                    double size = 10.0, std::size_t page = 0, double gap = 3.0);

paperjson::PageData page(std::size_t index, std::vector<paperjson::Token> tokens, double width = 612.0,
                         double height = 792.0);

// A document with load_docs recorded.
paperjson::Document document(std::vector<paperjson::PageData> pages, std::string source = "fixture.pdf");

paperjson::Document load_pdf(const std::string& bytes, std::string name = "fixture.pdf");

// The fourteen steps and four options of the documented example command, with
// concat_columns added after extract_lines when asked.
paperjson::Pipeline paper_command(bool with_concat_columns = false);

// A fresh, empty directory under the system temp dir.
std::filesystem::path scratch_dir(std::string_view tag);

void write_file(const std::filesystem::path& path, const std::string& bytes);
std::string read_file(const std::filesystem::path& path);

}  // namespace testkit
