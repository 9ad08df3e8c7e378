#pragma once

#include <string>

namespace logcap {

/// Lower-case hex SHA-256 of the given bytes.
std::string sha256_hex(const std::string& data);

}  // namespace logcap
