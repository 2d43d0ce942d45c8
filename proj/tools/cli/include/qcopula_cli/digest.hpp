#pragma once

#include <string>

namespace qcopula::cli {

/// "sha256:<hex>" of the given bytes.
std::string sha256_digest(const std::string& bytes);

}  // namespace qcopula::cli
