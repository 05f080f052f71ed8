//------------------------------------------------------------------------------
//
//   Copyright 2026 The tracespl Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------
#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace tracespl {

/// Lower-case hex SHA-256 of `data`.
std::string sha256_hex(std::string_view data);

/// `bytes` random bytes from the OpenSSL CSPRNG, base64url without padding.
std::string random_token(std::size_t bytes);

}  // namespace tracespl
