#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ingest/pdf_object.hpp"

namespace paperjson::pdf {

class File;

// Decodes a stream through its /Filter chain. Image codecs (DCT, JPX,
// CCITT, JBIG2) stop the chain and return the bytes undecoded.
std::string decode_stream(const StreamData& stream, const File* resolver = nullptr);

// Individual filters, exposed for testing.
std::string flate_decode(std::string_view in);
std::string ascii_hex_decode(std::string_view in);
std::string ascii85_decode(std::string_view in);
std::string lzw_decode(std::string_view in, int early_change = 1);
std::string run_length_decode(std::string_view in);
std::string apply_predictor(std::string data, const Dict& parms);

struct PageEntry {
  Dict dict;               // page dictionary with inherited attributes merged in
  double box[4] = {0, 0, 612, 792};  // crop box (or media box), normalised
  int rotate = 0;
};

// Random-access view of one PDF file held in memory.
class File {
 public:
  // Throws Error(pdf_parse) for unreadable files and Error(pdf_encrypted)
  // for encrypted ones.
  explicit File(std::string bytes);

  File(const File&) = delete;
  File& operator=(const File&) = delete;

  Object resolve(const Object& obj) const;
  Object get(int num) const;

  const Dict& trailer() const { return trailer_; }

  std::vector<PageEntry> pages() const;

  // Concatenated, decoded page content (the /Contents array is joined with
  // newlines).
  std::string page_content(const PageEntry& page) const;

  bool xref_was_rebuilt() const { return rebuilt_; }

 private:
  struct XrefEntry {
    enum class Type { free, offset, compressed } type = Type::free;
    std::size_t offset = 0;  // byte offset, or containing stream number
    int index = 0;           // index inside the object stream
  };

  void load_xref();
  bool read_xref_chain(std::size_t offset);
  bool read_xref_table(std::size_t offset, std::set<std::size_t>& seen);
  bool read_xref_stream(std::size_t offset, std::set<std::size_t>& seen);
  void rebuild_xref();
  Object load_object(int num) const;
  Object load_from_object_stream(int stream_num, int index, int num) const;

  std::string data_;
  std::map<int, XrefEntry> xref_;
  Dict trailer_;
  bool rebuilt_ = false;
  mutable std::map<int, Object> cache_;
  mutable std::set<int> resolving_;
};

}  // namespace paperjson::pdf
