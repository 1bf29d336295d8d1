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

// FSET: a 128-bit block cipher built from a key-shuffled 16x256
// substitution matrix followed by eight rounds of XOR translation and
// circular-shift transposition.
//
//   P --substitute--> CL1 --[translate(Kts_n), transpose(Ktp_n)] x 8--> C
//
// Messages are padded to a multiple of 16 bytes and blocks are processed
// independently, so equal plaintext blocks give equal ciphertext blocks.

#ifndef ESMC_FSET_HPP_
#define ESMC_FSET_HPP_

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace esmc::fset {

inline constexpr std::size_t kBlockSize = 16;
inline constexpr std::size_t kKeySize = 16;
inline constexpr std::size_t kRows = 16;
inline constexpr std::size_t kColumns = 256;
inline constexpr std::size_t kRounds = 8;

using Block = std::array<std::uint8_t, kBlockSize>;
using TranslationKey = std::array<std::uint8_t, kBlockSize>;
using TranspositionKey = std::array<std::uint8_t, 4>;

// The 128-bit secret key K(0)..K(15). Any byte value is legal.
class SecretKey {
 public:
  explicit SecretKey(const std::array<std::uint8_t, kKeySize>& bytes)
      : bytes_(bytes) {}

  // Throws Error(kInvalidKey) unless `bytes` is exactly 16 long.
  static SecretKey from_bytes(std::span<const std::uint8_t> bytes);

  // Parses exactly 32 hex digits. Throws Error(kInvalidKey) otherwise.
  static SecretKey from_hex(std::string_view hex);

  // Truncates long passphrases and zero-pads short ones to 16 bytes.
  static SecretKey from_passphrase(std::string_view passphrase);

  std::uint8_t operator[](std::size_t i) const { return bytes_[i]; }
  const std::array<std::uint8_t, kKeySize>& bytes() const { return bytes_; }

  bool operator==(const SecretKey&) const = default;

 private:
  std::array<std::uint8_t, kKeySize> bytes_;
};

// Per-row substitution table plus its inverse:
// inverse[i][forward[i][j]] == j for every row i and column j.
struct SubstitutionMatrix {
  std::array<std::array<std::uint8_t, kColumns>, kRows> forward;
  std::array<std::array<std::uint8_t, kColumns>, kRows> inverse;
};

struct SubKeySchedule {
  std::array<TranslationKey, kRounds> translation;      // Kts_0..Kts_7
  std::array<TranspositionKey, kRounds> transposition;  // Ktp_n0..Ktp_n3
};

// Circular shifts. Right by s moves element j to (j + s) mod size; the
// count is reduced mod size first.
inline void rotate_right(std::span<std::uint8_t> a, std::size_t s) {
  if (a.empty()) return;
  s %= a.size();
  std::rotate(a.begin(), a.end() - static_cast<std::ptrdiff_t>(s), a.end());
}

inline void rotate_left(std::span<std::uint8_t> a, std::size_t s) {
  if (a.empty()) return;
  s %= a.size();
  std::rotate(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(s), a.end());
}

// Identity rows, then two passes of right rotations: row i by K(i+1)
// (row 15 by K(0)), then row i by K(i).
SubstitutionMatrix init_matrix(const SecretKey& key);

// Translation sub-keys are columns 0..15 of rows 0..7; transposition
// sub-keys are columns 0..3 of the same rows.
SubKeySchedule derive_subkeys(const SubstitutionMatrix& matrix);

// CL1(i) = forward[i][P(i)].
Block substitute_block(const SubstitutionMatrix& matrix, const Block& p);
// P(i) = inverse[i][CL1(i)].
Block inverse_map(const SubstitutionMatrix& matrix, const Block& cl1);

Block round_translate(const Block& a1, const TranslationKey& kts);

// A1 >>= k0; A2 = A1[0..8) >>= k1; A3 = A1[8..16) <<= k2;
// A1 = A2 || A3; A1 >>= k3.
Block round_transpose(const Block& a1, const TranspositionKey& ktp);
// Exact inverse of round_transpose for the same ktp.
Block round_detranspose(const Block& a1, const TranspositionKey& ktp);

Block encrypt_block(const SubstitutionMatrix& matrix,
                    const SubKeySchedule& schedule, const Block& p);
Block decrypt_block(const SubstitutionMatrix& matrix,
                    const SubKeySchedule& schedule, const Block& c);

// Value-filled padding to the next multiple of 16; always adds 1..16 bytes.
std::vector<std::uint8_t> pad(std::span<const std::uint8_t> message);
// Throws Error(kPadding) on a bad trailer, Error(kMalformedCiphertext) if
// the length is not a positive multiple of 16.
std::vector<std::uint8_t> unpad(std::span<const std::uint8_t> padded);

// Holds the matrix and schedule for one key so repeated messages skip setup.
class Cipher {
 public:
  explicit Cipher(const SecretKey& key);

  Block encrypt_block(const Block& p) const;
  Block decrypt_block(const Block& c) const;

  // Pads and encrypts. With threads > 1 the blocks are split into
  // contiguous ranges; output is identical to the sequential path.
  std::vector<std::uint8_t> encrypt(std::span<const std::uint8_t> message,
                                    unsigned threads = 1) const;
  std::vector<std::uint8_t> decrypt(std::span<const std::uint8_t> ciphertext,
                                    unsigned threads = 1) const;

  const SubstitutionMatrix& matrix() const { return matrix_; }
  const SubKeySchedule& schedule() const { return schedule_; }

 private:
  SubstitutionMatrix matrix_;
  SubKeySchedule schedule_;
};

std::vector<std::uint8_t> encrypt_message(const SecretKey& key,
                                          std::span<const std::uint8_t> message);
std::vector<std::uint8_t> decrypt_message(
    const SecretKey& key, std::span<const std::uint8_t> ciphertext);

}  // namespace esmc::fset

#endif  // ESMC_FSET_HPP_
