// Copyright 2026 The ESMC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "esmc/error.hpp"

namespace esmc {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidKey: return "invalid key";
    case ErrorCode::kMalformedCiphertext: return "malformed ciphertext";
    case ErrorCode::kPadding: return "bad padding";
    case ErrorCode::kInvalidPrime: return "invalid prime";
    case ErrorCode::kInvalidExponent: return "invalid exponent";
    case ErrorCode::kOutOfRange: return "value out of range";
    case ErrorCode::kModulusTooSmall: return "modulus too small";
    case ErrorCode::kCorruptCiphertext: return "corrupt RSA ciphertext";
    case ErrorCode::kAuthenticationFailed: return "authentication failed";
    case ErrorCode::kMalformedPackage: return "malformed package";
    case ErrorCode::kMalformedContainer: return "malformed container";
    case ErrorCode::kMalformedKeyFile: return "malformed key file";
  }
  return "unknown error";
}

}  // namespace esmc
