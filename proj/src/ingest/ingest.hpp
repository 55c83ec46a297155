#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "core/error.hpp"
#include "core/model.hpp"

namespace paperjson {

struct RawDocument {
  std::string source_path;
  std::vector<PageData> pages;
  std::vector<std::string> warnings;
};

// Expands an input path into the PDFs it names, sorted by file name.
// Throws path_not_found or no_pdfs_in_directory.
std::vector<std::filesystem::path> list_pdfs(const std::filesystem::path& input);

// Reads one PDF. Throws pdf_parse / pdf_encrypted / io.
RawDocument load_document(const std::filesystem::path& file);
RawDocument load_document_from_memory(std::string bytes, std::string source_path);

struct LoadResult {
  std::filesystem::path path;
  std::optional<RawDocument> document;  // empty on failure
  std::string error;
  ErrorCode error_code = ErrorCode::io;
};

// The load_docs step over a file or directory. A bad file yields a failed
// entry but does not stop the others.
std::vector<LoadResult> load_docs(const std::filesystem::path& input);

// Drawn objects of a loaded page (already extracted during loading).
std::vector<DrawnObject> extract_drawn_objects(const PageData& page);

// Wraps a raw document into a pipeline Document with load_docs recorded.
Document make_document(RawDocument raw);

}  // namespace paperjson
