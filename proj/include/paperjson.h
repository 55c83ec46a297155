/* C interface to the paperjson PDF-to-JSON pipeline.
 *
 * Handles are opaque. Functions that can fail return a pj_status; on failure
 * pj_last_error() describes the problem for the calling thread. Strings
 * returned by accessors belong to the handle and stay valid until the handle
 * is modified or freed.
 */
#ifndef PAPERJSON_H
#define PAPERJSON_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(PAPERJSON_BUILDING)
#    define PJ_API __declspec(dllexport)
#  else
#    define PJ_API __declspec(dllimport)
#  endif
#else
#  define PJ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pj_status {
  PJ_OK = 0,
  PJ_ERR_INVALID_ARGUMENT = 1,
  PJ_ERR_UNKNOWN_STEP = 2,
  PJ_ERR_INVALID_OPTION = 3,
  PJ_ERR_INVALID_PIPELINE = 4,
  PJ_ERR_UNKNOWN_VENUE = 5,
  PJ_ERR_PATH_NOT_FOUND = 6,
  PJ_ERR_NO_PDFS = 7,
  PJ_ERR_PDF_PARSE = 8,
  PJ_ERR_PDF_ENCRYPTED = 9,
  PJ_ERR_ANNOTATION_FILE = 10,
  PJ_ERR_UNKNOWN_PAGE = 11,
  PJ_ERR_UNKNOWN_LABEL = 12,
  PJ_ERR_MISSING_STAGE = 13,
  PJ_ERR_IO = 14,
  PJ_ERR_INTERNAL = 15
} pj_status;

typedef struct pj_pipeline pj_pipeline;
typedef struct pj_report pj_report;

PJ_API const char* pj_version(void);
PJ_API const char* pj_status_name(pj_status status);
/* Message of the last failing call on this thread ("" if none). */
PJ_API const char* pj_last_error(void);

/* Builds a pipeline from step names and key/value option pairs. Keys are the
 * long option names without dashes, e.g. "consider_font_size" -> "true".
 * The pipeline is not validated here; see pj_pipeline_violation_count. */
PJ_API pj_status pj_pipeline_parse(const char* const* steps, size_t n_steps,
                                   const char* const* keys, const char* const* values,
                                   size_t n_options, pj_pipeline** out);
PJ_API pj_status pj_pipeline_from_recipe(const char* venue, pj_pipeline** out);
PJ_API void pj_pipeline_free(pj_pipeline* p);

/* Overrides one option. "headline_names" appends; use
 * pj_pipeline_set_headline_names to replace the list. */
PJ_API pj_status pj_pipeline_set_option(pj_pipeline* p, const char* key, const char* value);
PJ_API pj_status pj_pipeline_set_headline_names(pj_pipeline* p, const char* const* names, size_t n);

PJ_API size_t pj_pipeline_step_count(const pj_pipeline* p);
PJ_API const char* pj_pipeline_step(const pj_pipeline* p, size_t i);
PJ_API int pj_pipeline_strict(const pj_pipeline* p);
PJ_API int pj_pipeline_verbose(const pj_pipeline* p);

/* Dependency check. Zero violations means the pipeline can run. */
PJ_API size_t pj_pipeline_violation_count(const pj_pipeline* p);
PJ_API const char* pj_pipeline_violation(const pj_pipeline* p, size_t i);

/* The pipeline as command-line arguments ("--pipeline", steps, options). */
PJ_API size_t pj_pipeline_arg_count(const pj_pipeline* p);
PJ_API const char* pj_pipeline_arg(const pj_pipeline* p, size_t i);

PJ_API size_t pj_recipe_count(void);
PJ_API const char* pj_recipe_venue(size_t i);

/* Runs the pipeline over a PDF file or a directory of PDFs. Per-file
 * failures are reported through the report, not the return value. */
PJ_API pj_status pj_run(const pj_pipeline* p, const char* input, const char* output_dir, pj_report** out);
PJ_API void pj_report_free(pj_report* r);

PJ_API size_t pj_report_file_count(const pj_report* r);
PJ_API const char* pj_report_input(const pj_report* r, size_t i);
PJ_API int pj_report_ok(const pj_report* r, size_t i);
/* NULL when the file failed. */
PJ_API const char* pj_report_output(const pj_report* r, size_t i);
PJ_API const char* pj_report_error(const pj_report* r, size_t i);
PJ_API pj_status pj_report_error_status(const pj_report* r, size_t i);
PJ_API size_t pj_report_warning_count(const pj_report* r, size_t i);
PJ_API const char* pj_report_warning(const pj_report* r, size_t i, size_t j);
PJ_API double pj_report_seconds(const pj_report* r, size_t i);
/* 0 = success, 2 = every file failed (or any failed when strict != 0). */
PJ_API int pj_report_exit_code(const pj_report* r, int strict);

#ifdef __cplusplus
}
#endif

#endif /* PAPERJSON_H */
