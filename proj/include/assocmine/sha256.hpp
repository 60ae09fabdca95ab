#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace assocmine {

// Minimal SHA-256, used for the input digests recorded in run manifests.
std::string sha256_hex(std::string_view data);
std::string sha256_file_hex(const std::string& path);

}  // namespace assocmine
