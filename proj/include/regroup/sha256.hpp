#pragma once

#include <string>
#include <string_view>

namespace regroup {

// Lowercase hex SHA-256 digest of a byte string.
std::string sha256_hex(std::string_view data);

} // namespace regroup
