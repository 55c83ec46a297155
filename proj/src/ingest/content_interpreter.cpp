#include "ingest/content_interpreter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/error.hpp"
#include "ingest/pdf_file.hpp"
#include "ingest/pdf_lexer.hpp"

namespace paperjson::pdf {

namespace {

constexpr int kMaxFormDepth = 8;

double num(const std::vector<Object>& ops, std::size_t i) {
  return i < ops.size() ? ops[i].as_number() : 0.0;
}

Matrix matrix_from(const std::vector<Object>& ops) {
  return Matrix{num(ops, 0), num(ops, 1), num(ops, 2), num(ops, 3), num(ops, 4), num(ops, 5)};
}

Matrix translation(double tx, double ty) { return Matrix{1, 0, 0, 1, tx, ty}; }

}  // namespace

Matrix Matrix::then(const Matrix& n) const {
  return Matrix{a * n.a + b * n.c,       a * n.b + b * n.d,       c * n.a + d * n.c,
                c * n.b + d * n.d,       e * n.a + f * n.c + n.e, e * n.b + f * n.d + n.f};
}

void Matrix::apply(double x, double y, double& ox, double& oy) const {
  ox = x * a + y * c + e;
  oy = x * b + y * d + f;
}

PageMarks ContentInterpreter::run(const std::string& content, const Dict& resources) {
  out_ = PageMarks{};
  gs_ = GraphicsState{};
  stack_.clear();
  path_.clear();
  execute(content, resources, 0);
  return std::move(out_);
}

const Font* ContentInterpreter::font_for(const Dict& resources, const std::string& name) {
  const Object fonts = file_.resolve(lookup(resources, "Font"));
  std::string key = "missing:" + name;
  Object font_obj;
  if (fonts.is_dict()) {
    const Object& entry = lookup(fonts.dict(), name);
    if (entry.is_ref()) {
      key = "ref:" + std::to_string(entry.ref().num);
    } else if (!entry.is_null()) {
      key = "direct:" + std::to_string(reinterpret_cast<std::uintptr_t>(&fonts.dict())) + ":" + name;
    }
    font_obj = file_.resolve(entry);
  }
  auto it = font_cache_.find(key);
  if (it != font_cache_.end()) return it->second.get();
  auto font = std::make_shared<Font>(font_obj.is_dict() ? Font::load(file_, font_obj.dict()) : Font::fallback());
  const Font* raw = font.get();
  font_cache_[key] = std::move(font);
  return raw;
}

void ContentInterpreter::show_text(const std::string& bytes) {
  TextState& ts = gs_.text;
  if (!ts.font) ts.font = font_for(Dict{}, "");
  const Font& font = *ts.font;
  for (const CharCode& cc : font.split_codes(bytes)) {
    const double w = font.width(cc.code);
    const Matrix scale{ts.size * ts.horizontal_scale, 0, 0, ts.size, 0, ts.rise};
    const Matrix trm = scale.then(text_matrix_).then(gs_.ctm);
    double xs[4], ys[4];
    trm.apply(0, font.descent(), xs[0], ys[0]);
    trm.apply(w, font.descent(), xs[1], ys[1]);
    trm.apply(0, font.ascent(), xs[2], ys[2]);
    trm.apply(w, font.ascent(), xs[3], ys[3]);
    const Matrix tm_ctm = text_matrix_.then(gs_.ctm);
    const double eff = std::abs(ts.size) * std::hypot(tm_ctm.c, tm_ctm.d);
    Glyph g{font.to_unicode(cc.code),
            *std::min_element(xs, xs + 4),
            *std::min_element(ys, ys + 4),
            *std::max_element(xs, xs + 4),
            *std::max_element(ys, ys + 4),
            eff,
            font.name()};
    if (std::isfinite(g.x0) && std::isfinite(g.y0) && std::isfinite(g.x1) && std::isfinite(g.y1)) {
      out_.glyphs.push_back(std::move(g));
    } else {
      ++out_.skipped;
    }
    double advance = w * ts.size + ts.char_spacing;
    if (cc.bytes == 1 && cc.code == 32) advance += ts.word_spacing;
    text_matrix_ = translation(advance * ts.horizontal_scale, 0).then(text_matrix_);
  }
}

void ContentInterpreter::emit_image(const Matrix& m) {
  double xs[4], ys[4];
  m.apply(0, 0, xs[0], ys[0]);
  m.apply(1, 0, xs[1], ys[1]);
  m.apply(0, 1, xs[2], ys[2]);
  m.apply(1, 1, xs[3], ys[3]);
  out_.marks.push_back(Mark{DrawnKind::image, *std::min_element(xs, xs + 4), *std::min_element(ys, ys + 4),
                            *std::max_element(xs, xs + 4), *std::max_element(ys, ys + 4)});
}

void ContentInterpreter::paint_path() {
  constexpr double kThin = 0.01;
  for (const SubPath& sp : path_) {
    if (sp.points.empty()) continue;
    double x0 = std::numeric_limits<double>::max(), y0 = x0;
    double x1 = std::numeric_limits<double>::lowest(), y1 = x1;
    for (const auto& [x, y] : sp.points) {
      x0 = std::min(x0, x);
      y0 = std::min(y0, y);
      x1 = std::max(x1, x);
      y1 = std::max(y1, y);
    }
    if (!std::isfinite(x0) || !std::isfinite(y0) || !std::isfinite(x1) || !std::isfinite(y1)) {
      ++out_.skipped;
      continue;
    }
    const bool thin = (x1 - x0) < kThin || (y1 - y0) < kThin;
    if ((x1 - x0) < kThin && (y1 - y0) < kThin) {
      ++out_.skipped;  // a bare point
      continue;
    }
    DrawnKind kind;
    if (sp.is_rect) {
      kind = thin ? DrawnKind::line : DrawnKind::rectangle;
    } else if (sp.has_curve) {
      kind = DrawnKind::curve;
    } else {
      std::size_t n = sp.points.size();
      if (n >= 2 && sp.points.front() == sp.points.back()) --n;
      if (n <= 2 || thin) {
        kind = DrawnKind::line;
      } else if (n == 4) {
        bool axis_aligned = true;
        for (std::size_t i = 0; i < 4; ++i) {
          const auto& p = sp.points[i];
          const auto& q = sp.points[(i + 1) % 4];
          axis_aligned = axis_aligned && (std::abs(p.first - q.first) < kThin || std::abs(p.second - q.second) < kThin);
        }
        kind = axis_aligned ? DrawnKind::rectangle : DrawnKind::curve;
      } else {
        kind = DrawnKind::curve;
      }
    }
    out_.marks.push_back(Mark{kind, x0, y0, x1, y1});
  }
}

void ContentInterpreter::execute(const std::string& content, const Dict& resources, int depth) {
  Lexer lexer(content);
  Parser parser(lexer);
  std::vector<Object> ops;
  double cur_x = 0.0, cur_y = 0.0;  // current point in user space

  auto add_point = [&](double x, double y) {
    double ux, uy;
    gs_.ctm.apply(x, y, ux, uy);
    if (path_.empty()) path_.push_back(SubPath{});
    path_.back().points.emplace_back(ux, uy);
    cur_x = x;
    cur_y = y;
  };

  for (;;) {
    LexToken tok;
    try {
      tok = lexer.next();
    } catch (const Error&) {
      ++out_.skipped;
      break;
    }
    if (tok.kind == TokenKind::end) break;
    if (tok.kind != TokenKind::keyword || tok.text == "true" || tok.text == "false" || tok.text == "null") {
      try {
        ops.push_back(parser.parse_from(std::move(tok)));
      } catch (const Error&) {
        ++out_.skipped;
        ops.clear();
      }
      continue;
    }
    const std::string& op = tok.text;
    try {
      if (op == "q") {
        stack_.push_back(gs_);
      } else if (op == "Q") {
        if (!stack_.empty()) {
          gs_ = stack_.back();
          stack_.pop_back();
        }
      } else if (op == "cm") {
        if (ops.size() >= 6) gs_.ctm = matrix_from(ops).then(gs_.ctm);
      } else if (op == "BT") {
        text_matrix_ = Matrix{};
        line_matrix_ = Matrix{};
      } else if (op == "ET") {
      } else if (op == "Tf") {
        if (ops.size() >= 2 && ops[0].is_name()) {
          gs_.text.font = font_for(resources, ops[0].name());
          gs_.text.size = ops[1].as_number();
        }
      } else if (op == "Tc") {
        gs_.text.char_spacing = num(ops, 0);
      } else if (op == "Tw") {
        gs_.text.word_spacing = num(ops, 0);
      } else if (op == "Tz") {
        gs_.text.horizontal_scale = num(ops, 0) / 100.0;
      } else if (op == "TL") {
        gs_.text.leading = num(ops, 0);
      } else if (op == "Ts") {
        gs_.text.rise = num(ops, 0);
      } else if (op == "Td") {
        line_matrix_ = translation(num(ops, 0), num(ops, 1)).then(line_matrix_);
        text_matrix_ = line_matrix_;
      } else if (op == "TD") {
        gs_.text.leading = -num(ops, 1);
        line_matrix_ = translation(num(ops, 0), num(ops, 1)).then(line_matrix_);
        text_matrix_ = line_matrix_;
      } else if (op == "Tm") {
        if (ops.size() >= 6) {
          line_matrix_ = matrix_from(ops);
          text_matrix_ = line_matrix_;
        }
      } else if (op == "T*") {
        line_matrix_ = translation(0, -gs_.text.leading).then(line_matrix_);
        text_matrix_ = line_matrix_;
      } else if (op == "Tj") {
        if (!ops.empty() && ops[0].is_string()) show_text(ops[0].str());
      } else if (op == "'") {
        line_matrix_ = translation(0, -gs_.text.leading).then(line_matrix_);
        text_matrix_ = line_matrix_;
        if (!ops.empty() && ops.back().is_string()) show_text(ops.back().str());
      } else if (op == "\"") {
        if (ops.size() >= 3) {
          gs_.text.word_spacing = num(ops, 0);
          gs_.text.char_spacing = num(ops, 1);
        }
        line_matrix_ = translation(0, -gs_.text.leading).then(line_matrix_);
        text_matrix_ = line_matrix_;
        if (!ops.empty() && ops.back().is_string()) show_text(ops.back().str());
      } else if (op == "TJ") {
        if (!ops.empty() && ops[0].is_array()) {
          for (const auto& item : ops[0].array()) {
            if (item.is_string()) {
              show_text(item.str());
            } else if (item.is_number()) {
              const double tx = -item.as_number() / 1000.0 * gs_.text.size * gs_.text.horizontal_scale;
              text_matrix_ = translation(tx, 0).then(text_matrix_);
            }
          }
        }
      } else if (op == "m") {
        path_.push_back(SubPath{});
        add_point(num(ops, 0), num(ops, 1));
      } else if (op == "l") {
        add_point(num(ops, 0), num(ops, 1));
      } else if (op == "c") {
        add_point(num(ops, 0), num(ops, 1));
        add_point(num(ops, 2), num(ops, 3));
        add_point(num(ops, 4), num(ops, 5));
        path_.back().has_curve = true;
      } else if (op == "v" || op == "y") {
        add_point(num(ops, 0), num(ops, 1));
        add_point(num(ops, 2), num(ops, 3));
        path_.back().has_curve = true;
      } else if (op == "h") {
        if (!path_.empty()) path_.back().closed = true;
      } else if (op == "re") {
        const double x = num(ops, 0), y = num(ops, 1), w = num(ops, 2), h = num(ops, 3);
        path_.push_back(SubPath{});
        add_point(x, y);
        add_point(x + w, y);
        add_point(x + w, y + h);
        add_point(x, y + h);
        path_.back().closed = true;
        path_.back().is_rect = true;
        cur_x = x;
        cur_y = y;
      } else if (op == "S" || op == "s" || op == "f" || op == "F" || op == "f*" || op == "B" ||
                 op == "B*" || op == "b" || op == "b*") {
        paint_path();
        path_.clear();
      } else if (op == "n") {
        path_.clear();
      } else if (op == "Do") {
        if (!ops.empty() && ops[0].is_name()) {
          const Object xobjs = file_.resolve(lookup(resources, "XObject"));
          if (xobjs.is_dict()) {
            const Object x = file_.resolve(lookup(xobjs.dict(), ops[0].name()));
            if (x.is_stream()) {
              const Object sub = file_.resolve(lookup(x.dict(), "Subtype"));
              if (sub.is_name("Image")) {
                emit_image(gs_.ctm);
              } else if (sub.is_name("Form") && depth < kMaxFormDepth) {
                stack_.push_back(gs_);
                const Object m = file_.resolve(lookup(x.dict(), "Matrix"));
                if (m.is_array() && m.array().size() >= 6) {
                  std::vector<Object> mv(m.array().begin(), m.array().end());
                  for (auto& v : mv) v = file_.resolve(v);
                  gs_.ctm = matrix_from(mv).then(gs_.ctm);
                }
                const Object res = file_.resolve(lookup(x.dict(), "Resources"));
                const Matrix saved_tm = text_matrix_, saved_lm = line_matrix_;
                execute(decode_stream(x.stream(), &file_), res.is_dict() ? res.dict() : resources, depth + 1);
                text_matrix_ = saved_tm;
                line_matrix_ = saved_lm;
                gs_ = stack_.back();
                stack_.pop_back();
              }
            }
          }
        }
      } else if (op == "BI") {
        // Inline image: skip the parameter dict and binary payload.
        for (;;) {
          LexToken t = lexer.next();
          if (t.kind == TokenKind::end) break;
          if (t.kind == TokenKind::keyword && t.text == "ID") break;
        }
        std::string_view data = lexer.data();
        std::size_t p = lexer.position() + 1;
        std::size_t end = data.size();
        for (std::size_t i = p; i + 1 < data.size(); ++i) {
          if (data[i] == 'E' && data[i + 1] == 'I' && (i == 0 || is_pdf_whitespace(data[i - 1])) &&
              (i + 2 >= data.size() || is_pdf_whitespace(data[i + 2]) || is_pdf_delimiter(data[i + 2]))) {
            end = i + 2;
            break;
          }
        }
        lexer.seek(end);
        emit_image(gs_.ctm);
      }
      // Everything else (colour, line style, marked content, shading) does
      // not affect layout.
    } catch (const Error&) {
      ++out_.skipped;
    }
    ops.clear();
  }
  (void)cur_x;
  (void)cur_y;
}

}  // namespace paperjson::pdf
