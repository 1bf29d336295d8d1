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

#ifndef ESMC_ERROR_HPP_
#define ESMC_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace esmc {

enum class ErrorCode {
  kInvalidKey,
  kMalformedCiphertext,
  kPadding,
  kInvalidPrime,
  kInvalidExponent,
  kOutOfRange,
  kModulusTooSmall,
  kCorruptCiphertext,
  kAuthenticationFailed,
  kMalformedPackage,
  kMalformedContainer,
  kMalformedKeyFile,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so
// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace esmc

#endif  // ESMC_ERROR_HPP_
