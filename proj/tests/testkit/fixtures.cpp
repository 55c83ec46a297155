#include "testkit/fixtures.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

#include "ingest/ingest.hpp"

namespace testkit {

using namespace paperjson;

Token tok(std::size_t id, std::string text, double x0, double y0, double x1, double y1, double size,
          std::size_t page, std::string font) {
  return make_token(id, text, BBox(x0, y0, x1, y1), std::move(font), size, page);
}

std::vector<Token> words(std::string_view text, double x, double y0, std::size_t first_id, double size,
                         std::size_t page, double gap) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const std::size_t j = std::min(text.find(' ', i), text.size());
    if (j > i) {
      const double w = 0.5 * size * static_cast<double>(j - i);
      out.push_back(tok(first_id++, std::string(text.substr(i, j - i)), x, y0, x + w, y0 + size, size, page));
      x += w + gap;
    }
    i = j + 1;
  }
  return out;
}

PageData page(std::size_t index, std::vector<Token> tokens, double width, double height) {
  PageData p;
  p.index = index;
  p.width = width;
  p.height = height;
  p.tokens = std::move(tokens);
  return p;
}

Document document(std::vector<PageData> pages, std::string source) {
  RawDocument raw;
  raw.source_path = std::move(source);
  raw.pages = std::move(pages);
  return make_document(std::move(raw));
}

Document load_pdf(const std::string& bytes, std::string name) {
  return make_document(load_document_from_memory(bytes, std::move(name)));
}

Pipeline paper_command(bool with_concat_columns) {
  std::vector<std::string> steps = {"load_docs", "load_objects_with_ml", "remove_illegal_tokens", "remove_meta",
                                    "extract_lines", "extract_captions_with_ml", "remove_figures_with_ml",
                                    "remove_tables_with_ml", "remove_equations_with_ml",
                                    "extract_footnotes_with_ml", "extract_paragraphs", "detect_sections",
                                    "concat_pages", "dump_formatted_doc"};
  if (with_concat_columns) steps.insert(steps.begin() + 5, "concat_columns");
  const RawOptions raw = {{"preset_table_caption_pos", "below"},
                          {"preset_figure_caption_pos", "below"},
                          {"consider_font_size", "true"},
                          {"headline_names", "Abstract"}};
  return parse_pipeline(steps, raw);
}

std::filesystem::path scratch_dir(std::string_view tag) {
  static int counter = 0;
  const auto dir = std::filesystem::temp_directory_path() /
                   ("paperjson_" + std::string(tag) + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream f(path, std::ios::binary);
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw std::runtime_error("cannot write " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace testkit
