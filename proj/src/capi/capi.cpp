#include <exception>
#include <memory>
#include <string>
#include <vector>

#include "engine/engine.hpp"
#include "paperjson.h"

struct pj_pipeline {
  paperjson::Pipeline pipeline;
  std::vector<std::string> steps;       // cached names
  std::vector<std::string> violations;  // cached
  std::vector<std::string> args;        // cached

  void refresh() {
    steps.clear();
    for (auto s : pipeline.steps) steps.emplace_back(paperjson::to_string(s));
    violations = paperjson::validate_pipeline(pipeline);
    args = paperjson::render_arguments(pipeline);
  }
};

struct pj_report {
  paperjson::RunReport report;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
};

namespace {

thread_local std::string g_last_error;

pj_status status_of(paperjson::ErrorCode code) {
  using paperjson::ErrorCode;
  switch (code) {
    case ErrorCode::invalid_argument:
    case ErrorCode::degenerate_box: return PJ_ERR_INVALID_ARGUMENT;
    case ErrorCode::missing_stage: return PJ_ERR_MISSING_STAGE;
    case ErrorCode::path_not_found: return PJ_ERR_PATH_NOT_FOUND;
    case ErrorCode::no_pdfs_in_directory: return PJ_ERR_NO_PDFS;
    case ErrorCode::pdf_parse: return PJ_ERR_PDF_PARSE;
    case ErrorCode::pdf_encrypted: return PJ_ERR_PDF_ENCRYPTED;
    case ErrorCode::annotation_file: return PJ_ERR_ANNOTATION_FILE;
    case ErrorCode::unknown_page: return PJ_ERR_UNKNOWN_PAGE;
    case ErrorCode::unknown_label: return PJ_ERR_UNKNOWN_LABEL;
    case ErrorCode::unknown_step: return PJ_ERR_UNKNOWN_STEP;
    case ErrorCode::invalid_option: return PJ_ERR_INVALID_OPTION;
    case ErrorCode::invalid_pipeline: return PJ_ERR_INVALID_PIPELINE;
    case ErrorCode::unknown_venue: return PJ_ERR_UNKNOWN_VENUE;
    case ErrorCode::io: return PJ_ERR_IO;
  }
  return PJ_ERR_INTERNAL;
}

template <typename F>
pj_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return PJ_OK;
  } catch (const paperjson::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PJ_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return PJ_ERR_INTERNAL;
  }
}

pj_status null_argument(const char* what) {
  g_last_error = std::string(what) + " must not be null";
  return PJ_ERR_INVALID_ARGUMENT;
}

const paperjson::FileReport* file_at(const pj_report* r, size_t i) {
  if (!r || i >= r->report.files.size()) return nullptr;
  return &r->report.files[i];
}

}  // namespace

extern "C" {

const char* pj_version(void) { return "1.0.0"; }

const char* pj_status_name(pj_status s) {
  switch (s) {
    case PJ_OK: return "ok";
    case PJ_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case PJ_ERR_UNKNOWN_STEP: return "unknown-step";
    case PJ_ERR_INVALID_OPTION: return "invalid-option";
    case PJ_ERR_INVALID_PIPELINE: return "invalid-pipeline";
    case PJ_ERR_UNKNOWN_VENUE: return "unknown-venue";
    case PJ_ERR_PATH_NOT_FOUND: return "path-not-found";
    case PJ_ERR_NO_PDFS: return "no-pdfs-in-directory";
    case PJ_ERR_PDF_PARSE: return "pdf-parse";
    case PJ_ERR_PDF_ENCRYPTED: return "pdf-encrypted";
    case PJ_ERR_ANNOTATION_FILE: return "annotation-file";
    case PJ_ERR_UNKNOWN_PAGE: return "unknown-page";
    case PJ_ERR_UNKNOWN_LABEL: return "unknown-label";
    case PJ_ERR_MISSING_STAGE: return "missing-stage";
    case PJ_ERR_IO: return "io";
    case PJ_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* pj_last_error(void) { return g_last_error.c_str(); }

pj_status pj_pipeline_parse(const char* const* steps, size_t n_steps, const char* const* keys,
                            const char* const* values, size_t n_options, pj_pipeline** out) {
  if (!out) return null_argument("out");
  if (n_steps > 0 && !steps) return null_argument("steps");
  if (n_options > 0 && (!keys || !values)) return null_argument("keys/values");
  *out = nullptr;
  return guarded([&] {
    std::vector<std::string> names;
    for (size_t i = 0; i < n_steps; ++i) names.emplace_back(steps[i] ? steps[i] : "");
    paperjson::RawOptions raw;
    for (size_t i = 0; i < n_options; ++i) raw.emplace_back(keys[i] ? keys[i] : "", values[i] ? values[i] : "");
    auto p = std::make_unique<pj_pipeline>();
    p->pipeline = paperjson::parse_pipeline(names, raw);
    p->refresh();
    *out = p.release();
  });
}

pj_status pj_pipeline_from_recipe(const char* venue, pj_pipeline** out) {
  if (!out) return null_argument("out");
  if (!venue) return null_argument("venue");
  *out = nullptr;
  return guarded([&] {
    auto p = std::make_unique<pj_pipeline>();
    p->pipeline = paperjson::resolve_recipe(venue);
    p->refresh();
    *out = p.release();
  });
}

void pj_pipeline_free(pj_pipeline* p) { delete p; }

pj_status pj_pipeline_set_option(pj_pipeline* p, const char* key, const char* value) {
  if (!p) return null_argument("pipeline");
  if (!key || !value) return null_argument("key/value");
  return guarded([&] {
    auto [steps, raw] = paperjson::render_pipeline(p->pipeline);
    // Drop the old value so the override (or the detector/path pairing) is
    // checked against the rest.
    if (std::string(key) != "headline_names") {
      std::erase_if(raw, [&](const auto& kv) { return kv.first == key; });
    }
    raw.emplace_back(key, value);
    p->pipeline = paperjson::parse_pipeline(steps, raw);
    p->refresh();
  });
}

pj_status pj_pipeline_set_headline_names(pj_pipeline* p, const char* const* names, size_t n) {
  if (!p) return null_argument("pipeline");
  if (n > 0 && !names) return null_argument("names");
  return guarded([&] {
    auto [steps, raw] = paperjson::render_pipeline(p->pipeline);
    std::erase_if(raw, [](const auto& kv) { return kv.first == "headline_names"; });
    for (size_t i = 0; i < n; ++i) raw.emplace_back("headline_names", names[i] ? names[i] : "");
    p->pipeline = paperjson::parse_pipeline(steps, raw);
    p->refresh();
  });
}

size_t pj_pipeline_step_count(const pj_pipeline* p) { return p ? p->steps.size() : 0; }

const char* pj_pipeline_step(const pj_pipeline* p, size_t i) {
  return p && i < p->steps.size() ? p->steps[i].c_str() : nullptr;
}

int pj_pipeline_strict(const pj_pipeline* p) { return p && p->pipeline.options.strict ? 1 : 0; }
int pj_pipeline_verbose(const pj_pipeline* p) { return p && p->pipeline.options.verbose ? 1 : 0; }

size_t pj_pipeline_violation_count(const pj_pipeline* p) { return p ? p->violations.size() : 0; }

const char* pj_pipeline_violation(const pj_pipeline* p, size_t i) {
  return p && i < p->violations.size() ? p->violations[i].c_str() : nullptr;
}

size_t pj_pipeline_arg_count(const pj_pipeline* p) { return p ? p->args.size() : 0; }

const char* pj_pipeline_arg(const pj_pipeline* p, size_t i) {
  return p && i < p->args.size() ? p->args[i].c_str() : nullptr;
}

size_t pj_recipe_count(void) { return paperjson::recipe_table().size(); }

const char* pj_recipe_venue(size_t i) {
  const auto& t = paperjson::recipe_table();
  return i < t.size() ? t[i].venue.c_str() : nullptr;
}

pj_status pj_run(const pj_pipeline* p, const char* input, const char* output_dir, pj_report** out) {
  if (!p) return null_argument("pipeline");
  if (!input || !output_dir) return null_argument("input/output_dir");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    auto r = std::make_unique<pj_report>();
    r->report = paperjson::run_pipeline(p->pipeline, input, output_dir);
    for (const auto& f : r->report.files) {
      r->inputs.push_back(f.input.string());
      r->outputs.push_back(f.output ? f.output->string() : std::string());
    }
    *out = r.release();
  });
}

void pj_report_free(pj_report* r) { delete r; }

size_t pj_report_file_count(const pj_report* r) { return r ? r->report.files.size() : 0; }

const char* pj_report_input(const pj_report* r, size_t i) {
  return file_at(r, i) ? r->inputs[i].c_str() : nullptr;
}

int pj_report_ok(const pj_report* r, size_t i) {
  const auto* f = file_at(r, i);
  return f && f->ok ? 1 : 0;
}

const char* pj_report_output(const pj_report* r, size_t i) {
  const auto* f = file_at(r, i);
  return f && f->ok ? r->outputs[i].c_str() : nullptr;
}

const char* pj_report_error(const pj_report* r, size_t i) {
  const auto* f = file_at(r, i);
  return f ? f->error.c_str() : nullptr;
}

pj_status pj_report_error_status(const pj_report* r, size_t i) {
  const auto* f = file_at(r, i);
  if (!f) return PJ_ERR_INVALID_ARGUMENT;
  return f->ok ? PJ_OK : status_of(f->error_code);
}

size_t pj_report_warning_count(const pj_report* r, size_t i) {
  const auto* f = file_at(r, i);
  return f ? f->warnings.size() : 0;
}

const char* pj_report_warning(const pj_report* r, size_t i, size_t j) {
  const auto* f = file_at(r, i);
  return f && j < f->warnings.size() ? f->warnings[j].c_str() : nullptr;
}

double pj_report_seconds(const pj_report* r, size_t i) {
  const auto* f = file_at(r, i);
  return f ? f->seconds : 0.0;
}

int pj_report_exit_code(const pj_report* r, int strict) { return r ? r->report.exit_code(strict != 0) : 1; }

}  // extern "C"
