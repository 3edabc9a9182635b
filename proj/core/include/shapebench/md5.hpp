#pragma once

#include <string>
#include <string_view>

namespace shapebench {

/// 32-character lowercase hex MD5 digest of `data`.
std::string md5_hex(std::string_view data);

/// MD5 of a file's bytes; throws std::runtime_error if it cannot be read.
std::string md5_file_hex(const std::string& path);

}  // namespace shapebench
