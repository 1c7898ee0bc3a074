#pragma once

// Small string helpers shared by the library sources. Not installed.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace factcheck::text_util {

// Splits on '\n', dropping a trailing '\r' from each line. A final newline
// does not start another line; empty input has no lines.
std::vector<std::string_view> split_lines(std::string_view text);

std::string_view trim(std::string_view s);

std::string to_lower_ascii(std::string_view s);

// Collapses runs of ASCII whitespace to a single space and trims the ends.
std::string collapse_whitespace(std::string_view s);

// Decodes %XX escapes; malformed escapes are kept verbatim.
std::string percent_decode(std::string_view s);

// Encodes everything outside the RFC 3986 unreserved set.
std::string percent_encode(std::string_view s);

// Splits UTF-8 into code points (each as its byte sequence). Invalid bytes
// become single-byte units.
std::vector<std::string_view> utf8_units(std::string_view s);

void append_utf8(std::string& out, std::uint32_t code_point);

std::string csv_field(std::string_view s);

std::string hex_lower(const unsigned char* data, std::size_t len);

// FNV-1a, 64 bit.
std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = 0);

}  // namespace factcheck::text_util
