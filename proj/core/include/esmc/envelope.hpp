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

// Hybrid envelope: the message body is FSET-encrypted under a 16-byte
// secret key Ks, and Ks plus the masked digest hmk are RSA-encrypted under
// the recipient's public key.
//
// ESMC container, all integers big-endian:
//
//   offset  size        field
//   0       4           magic "ESMC"
//   4       1           version (0x01)
//   5       2           modulus_len L
//   7       2           enc_key chunk count K
//   9       K*L         enc_key chunks
//   ..      2           enc_hmk chunk count H
//   ..      H*L         enc_hmk chunks
//   ..      8           body length B
//   ..      B           body
//
// Trailing bytes are rejected.

#ifndef ESMC_ENVELOPE_HPP_
#define ESMC_ENVELOPE_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "esmc/fset.hpp"
#include "esmc/rsa.hpp"

namespace esmc::envelope {

inline constexpr std::array<std::uint8_t, 4> kMagic = {'E', 'S', 'M', 'C'};
inline constexpr std::uint8_t kVersion = 0x01;

struct EnvelopePackage {
  rsa::RsaCiphertext enc_key;
  rsa::RsaCiphertext enc_hmk;
  std::vector<std::uint8_t> body;
  bool operator==(const EnvelopePackage&) const = default;
};

EnvelopePackage seal(std::span<const std::uint8_t> message,
                     const fset::SecretKey& ks, const rsa::RsaPublicKey& pub);

// Recovers Ks before touching the body. Throws kAuthenticationFailed when
// the decrypted message does not match the carried digest; the plaintext
// is never returned in that case.
std::vector<std::uint8_t> open(const EnvelopePackage& pkg,
                               const rsa::RsaPrivateKey& priv);

std::vector<std::uint8_t> serialize(const EnvelopePackage& pkg);
// Throws kMalformedContainer with the failing offset in the message.
EnvelopePackage deserialize(std::span<const std::uint8_t> bytes);

}  // namespace esmc::envelope

#endif  // ESMC_ENVELOPE_HPP_
