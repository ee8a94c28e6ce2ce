// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The litkg Authors

#pragma once

#include <string>
#include <string_view>

namespace litkg {

/// Lower-case hex SHA-256 of the given bytes.
std::string sha256_hex(std::string_view bytes);

}  // namespace litkg
