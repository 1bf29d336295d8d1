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

#include "esmc/digest.hpp"

#include <openssl/crypto.h>
#include <openssl/sha.h>

namespace esmc::digest {

namespace {

std::array<std::uint8_t, kDigestSize> xor_with_key(
    const std::array<std::uint8_t, kDigestSize>& in, const fset::SecretKey& ks) {
  std::array<std::uint8_t, kDigestSize> out;
  for (std::size_t i = 0; i < kDigestSize; ++i) {
    out[i] = in[i] ^ ks[i % fset::kKeySize];
  }
  return out;
}

}  // namespace

MessageDigest hash_message(std::span<const std::uint8_t> message) {
  MessageDigest hm;
  SHA256(message.data(), message.size(), hm.bytes.data());
  return hm;
}

MaskedDigest compute_hmk(const MessageDigest& hm, const fset::SecretKey& ks) {
  return {xor_with_key(hm.bytes, ks)};
}

MessageDigest recover_hm(const MaskedDigest& hmk, const fset::SecretKey& ks) {
  return {xor_with_key(hmk.bytes, ks)};
}

bool verify(std::span<const std::uint8_t> message, const MessageDigest& hm) {
  const MessageDigest actual = hash_message(message);
  return CRYPTO_memcmp(actual.bytes.data(), hm.bytes.data(), kDigestSize) == 0;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  s.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    s.push_back(kDigits[b >> 4]);
    s.push_back(kDigits[b & 0xf]);
  }
  return s;
}

}  // namespace esmc::digest
