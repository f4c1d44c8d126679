// Self-contained SHA-256, used for the input digests in CLI reports.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace bellctx {

std::string sha256_hex(std::string_view data);

}  // namespace bellctx
