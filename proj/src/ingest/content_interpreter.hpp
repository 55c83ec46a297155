#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "core/model.hpp"
#include "ingest/pdf_fonts.hpp"
#include "ingest/pdf_object.hpp"

namespace paperjson::pdf {

class File;

struct Matrix {
  double a = 1, b = 0, c = 0, d = 1, e = 0, f = 0;

  // Row-vector convention: (x y 1) * M.
  Matrix then(const Matrix& next) const;
  void apply(double x, double y, double& ox, double& oy) const;
};

// One shown glyph, in default user space (PDF units, y up).
struct Glyph {
  std::u32string text;
  double x0, y0, x1, y1;
  double font_size;  // effective size after text and CTM scaling
  std::string font_name;
};

// One painted path segment group or image, in default user space.
struct Mark {
  DrawnKind kind;
  double x0, y0, x1, y1;
};

struct PageMarks {
  std::vector<Glyph> glyphs;
  std::vector<Mark> marks;
  std::size_t skipped = 0;  // malformed objects ignored
};

// Runs a page content stream and records every glyph and painted object.
class ContentInterpreter {
 public:
  explicit ContentInterpreter(const File& file) : file_(file) {}

  PageMarks run(const std::string& content, const Dict& resources);

 private:
  struct TextState {
    const Font* font = nullptr;
    double size = 0.0;
    double char_spacing = 0.0;
    double word_spacing = 0.0;
    double horizontal_scale = 1.0;
    double leading = 0.0;
    double rise = 0.0;
  };

  struct GraphicsState {
    Matrix ctm;
    TextState text;
  };

  struct SubPath {
    std::vector<std::pair<double, double>> points;  // already in user space
    bool has_curve = false;
    bool closed = false;
    bool is_rect = false;
  };

  void execute(const std::string& content, const Dict& resources, int depth);
  void show_text(const std::string& bytes);
  void paint_path();
  void emit_image(const Matrix& m);
  const Font* font_for(const Dict& resources, const std::string& name);

  const File& file_;
  PageMarks out_;
  GraphicsState gs_;
  std::vector<GraphicsState> stack_;
  Matrix text_matrix_;
  Matrix line_matrix_;
  std::vector<SubPath> path_;
  std::map<std::string, std::shared_ptr<Font>> font_cache_;  // keyed by object id or name
};

}  // namespace paperjson::pdf
