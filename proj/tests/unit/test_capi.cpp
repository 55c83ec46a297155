#include <algorithm>
#include <doctest.h>

#include <cstring>
#include <string>
#include <vector>

#include "paperjson.h"
#include "testkit/fixtures.hpp"
#include "testkit/paper_gen.hpp"

namespace {

const char* const kSteps[] = {"load_docs",
                              "load_objects_with_ml",
                              "remove_illegal_tokens",
                              "remove_meta",
                              "extract_lines",
                              "extract_captions_with_ml",
                              "remove_figures_with_ml",
                              "remove_tables_with_ml",
                              "remove_equations_with_ml",
                              "extract_footnotes_with_ml",
                              "extract_paragraphs",
                              "detect_sections",
                              "concat_pages",
                              "dump_formatted_doc"};
constexpr std::size_t kStepCount = sizeof(kSteps) / sizeof(kSteps[0]);

const char* const kKeys[] = {"preset_table_caption_pos", "preset_figure_caption_pos", "consider_font_size",
                             "headline_names"};
const char* const kValues[] = {"below", "below", "true", "Abstract"};

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::strlen(pj_version()) > 0);
  CHECK(std::string(pj_status_name(PJ_OK)) == "ok");
  CHECK(std::string(pj_status_name(PJ_ERR_UNKNOWN_VENUE)) == "unknown-venue");
}

TEST_CASE("parse, inspect and free a pipeline") {
  pj_pipeline* p = nullptr;
  REQUIRE(pj_pipeline_parse(kSteps, kStepCount, kKeys, kValues, 4, &p) == PJ_OK);
  REQUIRE(p != nullptr);
  CHECK(pj_pipeline_step_count(p) == kStepCount);
  for (std::size_t i = 0; i < kStepCount; ++i) CHECK(std::string(pj_pipeline_step(p, i)) == kSteps[i]);
  CHECK(pj_pipeline_step(p, kStepCount) == nullptr);
  CHECK(pj_pipeline_violation_count(p) == 0);
  CHECK(pj_pipeline_strict(p) == 0);
  CHECK(pj_pipeline_set_option(p, "strict", "true") == PJ_OK);
  CHECK(pj_pipeline_strict(p) == 1);
  CHECK(pj_pipeline_set_option(p, "indent", "x") == PJ_ERR_INVALID_OPTION);
  CHECK(std::strlen(pj_last_error()) > 0);
  const char* names[] = {"Abstract", "References"};
  CHECK(pj_pipeline_set_headline_names(p, names, 2) == PJ_OK);
  std::vector<std::string> args;
  for (std::size_t i = 0; i < pj_pipeline_arg_count(p); ++i) args.emplace_back(pj_pipeline_arg(p, i));
  REQUIRE_FALSE(args.empty());
  CHECK(args[0] == "--pipeline");
  CHECK(std::find(args.begin(), args.end(), "References") != args.end());
  pj_pipeline_free(p);
  pj_pipeline_free(nullptr);
}

TEST_CASE("parse errors come back as status codes") {
  const char* bad[] = {"load_docs", "frobnicate"};
  pj_pipeline* p = nullptr;
  CHECK(pj_pipeline_parse(bad, 2, nullptr, nullptr, 0, &p) == PJ_ERR_UNKNOWN_STEP);
  CHECK(p == nullptr);
  CHECK(std::string(pj_last_error()).find("frobnicate") != std::string::npos);
  CHECK(pj_pipeline_parse(kSteps, kStepCount, nullptr, nullptr, 0, nullptr) == PJ_ERR_INVALID_ARGUMENT);
  const char* key[] = {"jobs"};
  const char* val[] = {"0"};
  CHECK(pj_pipeline_parse(kSteps, kStepCount, key, val, 1, &p) == PJ_ERR_INVALID_OPTION);
}

TEST_CASE("invalid orders are reported as violations") {
  const char* steps[] = {"extract_lines", "load_docs", "dump_formatted_doc"};
  pj_pipeline* p = nullptr;
  REQUIRE(pj_pipeline_parse(steps, 3, nullptr, nullptr, 0, &p) == PJ_OK);
  CHECK(pj_pipeline_violation_count(p) > 0);
  CHECK(pj_pipeline_violation(p, 0) != nullptr);
  pj_report* r = nullptr;
  CHECK(pj_run(p, "/nonexistent", "/tmp", &r) == PJ_ERR_INVALID_PIPELINE);
  CHECK(r == nullptr);
  pj_pipeline_free(p);
}

TEST_CASE("recipes through the C interface") {
  CHECK(pj_recipe_count() == 8);
  for (std::size_t i = 0; i < pj_recipe_count(); ++i) {
    pj_pipeline* p = nullptr;
    REQUIRE(pj_pipeline_from_recipe(pj_recipe_venue(i), &p) == PJ_OK);
    CHECK(pj_pipeline_violation_count(p) == 0);
    pj_pipeline_free(p);
  }
  CHECK(pj_recipe_venue(8) == nullptr);
  pj_pipeline* p = nullptr;
  CHECK(pj_pipeline_from_recipe("EMNLP", &p) == PJ_ERR_UNKNOWN_VENUE);
  CHECK(std::string(pj_last_error()).find("NeurIPS") != std::string::npos);
}

TEST_CASE("run over a directory") {
  const auto in = testkit::scratch_dir("capi_in");
  const auto out = testkit::scratch_dir("capi_out");
  testkit::write_file(in / "good.pdf", testkit::generate_paper(testkit::random_config(80, true)).pdf);
  testkit::write_file(in / "junk.pdf", "not a pdf");
  pj_pipeline* p = nullptr;
  REQUIRE(pj_pipeline_from_recipe("ICML", &p) == PJ_OK);
  pj_report* r = nullptr;
  REQUIRE(pj_run(p, in.c_str(), out.c_str(), &r) == PJ_OK);
  REQUIRE(pj_report_file_count(r) == 2);
  CHECK(pj_report_ok(r, 0) == 1);
  CHECK(std::string(pj_report_output(r, 0)) == (out / "good.json").string());
  CHECK(pj_report_error_status(r, 0) == PJ_OK);
  CHECK(pj_report_ok(r, 1) == 0);
  CHECK(pj_report_output(r, 1) == nullptr);
  CHECK(pj_report_error_status(r, 1) == PJ_ERR_PDF_PARSE);
  CHECK(std::strlen(pj_report_error(r, 1)) > 0);
  CHECK(pj_report_seconds(r, 0) >= 0.0);
  CHECK(pj_report_exit_code(r, 0) == 0);
  CHECK(pj_report_exit_code(r, 1) == 2);
  pj_report_free(r);

  CHECK(pj_run(p, (in / "missing").c_str(), out.c_str(), &r) == PJ_ERR_PATH_NOT_FOUND);
  const auto empty = testkit::scratch_dir("capi_empty");
  CHECK(pj_run(p, empty.c_str(), out.c_str(), &r) == PJ_ERR_NO_PDFS);
  pj_pipeline_free(p);
}
