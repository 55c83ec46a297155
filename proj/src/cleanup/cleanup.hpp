#pragma once

#include <string_view>

#include "core/model.hpp"

namespace paperjson {

// True for text made only of control/format characters, U+FFFD and
// whitespace.
bool is_illegal_text(std::string_view text);

// Bare integers and lowercase or uppercase roman numerals up to xxxix.
bool is_page_number_text(std::string_view text);

void remove_illegal_tokens(Document& doc);
void remove_meta(Document& doc);

}  // namespace paperjson
