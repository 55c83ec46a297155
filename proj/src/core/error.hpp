#pragma once

#include <stdexcept>
#include <string>

namespace paperjson {

enum class ErrorCode {
  invalid_argument,
  degenerate_box,
  missing_stage,
  path_not_found,
  no_pdfs_in_directory,
  pdf_parse,
  pdf_encrypted,
  annotation_file,
  unknown_page,
  unknown_label,
  unknown_step,
  invalid_option,
  invalid_pipeline,
  unknown_venue,
  io,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace paperjson
