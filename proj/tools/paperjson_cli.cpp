// Command-line front end. Talks to the library only through paperjson.h.

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "paperjson.h"

namespace {

constexpr int kUsageError = 1;

int fail(const char* what) {
  std::fprintf(stderr, "paperjson: %s: %s\n", what, pj_last_error());
  return kUsageError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convert academic-paper PDFs into section/paragraph JSON."};
  app.set_version_flag("--version", pj_version());

  std::string input, output_dir, paper_type;
  std::vector<std::string> steps, headline_names;
  bool consider_font_size = false, strict = false, verbose = false, dry_run = false;

  struct Valued {
    const char* key;
    std::string value;
  };
  std::vector<Valued> plain = {
      {"preset_table_caption_pos", {}}, {"preset_figure_caption_pos", {}}, {"external_annotations", {}},
      {"detector", {}}, {"indent", {}}, {"jobs", {}}, {"line_overlap", {}}, {"para_gap_factor", {}},
      {"indent_pt", {}}, {"size_tol_pt", {}},
  };

  app.add_option("input", input, "PDF file or directory of PDFs")->required();
  app.add_option("output_dir", output_dir, "Directory for the JSON files")->required();
  auto* pipe = app.add_option("--pipeline", steps, "Steps to run, in order");
  auto* recipe = app.add_option("--paper_type", paper_type, "Venue recipe (AAAI, ACL, ICML, ICLR, NeurIPS, ACM, IEEE, Springer)");
  pipe->excludes(recipe);
  for (auto& v : plain) app.add_option(std::string("--") + v.key, v.value);
  auto* names = app.add_option("--headline_names", headline_names, "Unnumbered section names");
  app.add_flag("--consider_font_size", consider_font_size, "Use font size when merging and sectioning");
  app.add_flag("--strict", strict, "Exit nonzero if any file fails");
  app.add_flag("--verbose", verbose, "Print per-file warnings");
  app.add_flag("--dry_run", dry_run, "Validate and print the resolved pipeline without running it");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  pj_pipeline* p = nullptr;
  if (!steps.empty()) {
    std::vector<const char*> step_ptrs;
    for (const auto& s : steps) step_ptrs.push_back(s.c_str());
    if (pj_pipeline_parse(step_ptrs.data(), step_ptrs.size(), nullptr, nullptr, 0, &p) != PJ_OK) {
      return fail("bad pipeline");
    }
  } else if (!paper_type.empty()) {
    if (pj_pipeline_from_recipe(paper_type.c_str(), &p) != PJ_OK) return fail("bad --paper_type");
  } else {
    std::fprintf(stderr, "paperjson: give either --pipeline or --paper_type\n");
    return kUsageError;
  }

  auto set = [&](const char* key, const std::string& value) {
    if (pj_pipeline_set_option(p, key, value.c_str()) != PJ_OK) {
      const int code = fail("bad option");
      pj_pipeline_free(p);
      std::exit(code);
    }
  };
  // The annotation path goes first so "--detector external" sees it.
  for (const auto& v : plain) {
    if (!v.value.empty() && std::string(v.key) == "external_annotations") set(v.key, v.value);
  }
  for (const auto& v : plain) {
    if (!v.value.empty() && std::string(v.key) != "external_annotations") set(v.key, v.value);
  }
  if (consider_font_size) set("consider_font_size", "true");
  if (strict) set("strict", "true");
  if (verbose) set("verbose", "true");
  if (names->count() > 0) {
    std::vector<const char*> ptrs;
    for (const auto& n : headline_names) ptrs.push_back(n.c_str());
    if (pj_pipeline_set_headline_names(p, ptrs.data(), ptrs.size()) != PJ_OK) {
      const int code = fail("bad --headline_names");
      pj_pipeline_free(p);
      return code;
    }
  }

  const size_t nviol = pj_pipeline_violation_count(p);
  if (nviol > 0) {
    std::fprintf(stderr, "paperjson: invalid pipeline:\n");
    for (size_t i = 0; i < nviol; ++i) std::fprintf(stderr, "  %s\n", pj_pipeline_violation(p, i));
    pj_pipeline_free(p);
    return kUsageError;
  }

  if (dry_run) {
    for (size_t i = 0; i < pj_pipeline_arg_count(p); ++i) std::printf("%s%s", i ? " " : "", pj_pipeline_arg(p, i));
    std::printf("\n");
    pj_pipeline_free(p);
    return 0;
  }

  pj_report* report = nullptr;
  if (pj_run(p, input.c_str(), output_dir.c_str(), &report) != PJ_OK) {
    const int code = fail("cannot run");
    pj_pipeline_free(p);
    return code;
  }

  const bool loud = pj_pipeline_verbose(p) != 0;
  const size_t n = pj_report_file_count(report);
  size_t ok = 0;
  for (size_t i = 0; i < n; ++i) {
    const size_t nwarn = pj_report_warning_count(report, i);
    if (pj_report_ok(report, i)) {
      ++ok;
      std::printf("ok    %s -> %s (%zu warnings, %.2fs)\n", pj_report_input(report, i), pj_report_output(report, i),
                  nwarn, pj_report_seconds(report, i));
    } else {
      std::printf("FAIL  %s: %s\n", pj_report_input(report, i), pj_report_error(report, i));
    }
    if (loud) {
      for (size_t j = 0; j < nwarn; ++j) std::printf("      warning: %s\n", pj_report_warning(report, i, j));
    }
  }
  std::fprintf(stderr, "%zu of %zu files converted\n", ok, n);
  const int code = pj_report_exit_code(report, pj_pipeline_strict(p));
  pj_report_free(report);
  pj_pipeline_free(p);
  return code;
}
