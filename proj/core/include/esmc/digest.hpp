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

// SHA-256 message digests and the key-masked digest (hmk) that travels in
// the envelope alongside the encrypted secret key.

#ifndef ESMC_DIGEST_HPP_
#define ESMC_DIGEST_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

#include "esmc/fset.hpp"

namespace esmc::digest {

inline constexpr std::size_t kDigestSize = 32;

struct MessageDigest {
  std::array<std::uint8_t, kDigestSize> bytes{};
  bool operator==(const MessageDigest&) const = default;
};

struct MaskedDigest {
  std::array<std::uint8_t, kDigestSize> bytes{};
  bool operator==(const MaskedDigest&) const = default;
};

MessageDigest hash_message(std::span<const std::uint8_t> message);

// hmk = hm XOR (Ks || Ks).
MaskedDigest compute_hmk(const MessageDigest& hm, const fset::SecretKey& ks);
MessageDigest recover_hm(const MaskedDigest& hmk, const fset::SecretKey& ks);

// Constant-time comparison of hash_message(message) against hm.
bool verify(std::span<const std::uint8_t> message, const MessageDigest& hm);

std::string to_hex(std::span<const std::uint8_t> bytes);

}  // namespace esmc::digest

#endif  // ESMC_DIGEST_HPP_
