#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace cmof {

// Decodes UTF-8 into codepoints. Invalid byte sequences decode to U+FFFD
// one byte at a time.
std::u32string utf8_decode(std::string_view text);
std::string utf8_encode(std::u32string_view codepoints);
std::string utf8_encode(char32_t codepoint);

// Unicode general categories P* and S*, with emoji carved out.
bool is_punct_or_symbol(char32_t cp);
bool is_emoji_codepoint(char32_t cp);
// Simple 1:1 lowercase mapping; codepoints without one map to themselves.
char32_t to_lower(char32_t cp);

bool is_ascii_word(std::string_view token);

}  // namespace cmof
