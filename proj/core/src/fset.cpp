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

#include "esmc/fset.hpp"

#include <string>
#include <thread>

#include "esmc/error.hpp"

namespace esmc::fset {

namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

Block load_block(std::span<const std::uint8_t> in) {
  Block b;
  std::copy_n(in.begin(), kBlockSize, b.begin());
  return b;
}

// Applies `fn` to every 16-byte block of `in`, writing to `out`.
template <typename Fn>
void for_each_block(std::span<const std::uint8_t> in,
                    std::span<std::uint8_t> out, unsigned threads, Fn fn) {
  const std::size_t blocks = in.size() / kBlockSize;
  auto run = [&](std::size_t first, std::size_t last) {
    for (std::size_t b = first; b < last; ++b) {
      const Block r = fn(load_block(in.subspan(b * kBlockSize, kBlockSize)));
      std::copy(r.begin(), r.end(), out.begin() + b * kBlockSize);
    }
  };
  if (threads <= 1 || blocks < 2 * threads) {
    run(0, blocks);
    return;
  }
  std::vector<std::jthread> workers;
  workers.reserve(threads);
  const std::size_t per = (blocks + threads - 1) / threads;
  for (std::size_t first = 0; first < blocks; first += per) {
    workers.emplace_back(run, first, std::min(blocks, first + per));
  }
}

}  // namespace

SecretKey SecretKey::from_bytes(std::span<const std::uint8_t> bytes) {
  if (bytes.size() != kKeySize) {
    throw Error(ErrorCode::kInvalidKey,
                "secret key must be 16 bytes, got " +
                    std::to_string(bytes.size()));
  }
  std::array<std::uint8_t, kKeySize> k;
  std::copy(bytes.begin(), bytes.end(), k.begin());
  return SecretKey(k);
}

SecretKey SecretKey::from_hex(std::string_view hex) {
  if (hex.size() != 2 * kKeySize) {
    throw Error(ErrorCode::kInvalidKey,
                "hex key must be 32 digits, got " + std::to_string(hex.size()));
  }
  std::array<std::uint8_t, kKeySize> k;
  for (std::size_t i = 0; i < kKeySize; ++i) {
    const int hi = hex_value(hex[2 * i]);
    const int lo = hex_value(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) {
      throw Error(ErrorCode::kInvalidKey, "hex key contains a non-hex digit");
    }
    k[i] = static_cast<std::uint8_t>(hi << 4 | lo);
  }
  return SecretKey(k);
}

SecretKey SecretKey::from_passphrase(std::string_view passphrase) {
  std::array<std::uint8_t, kKeySize> k{};
  const std::size_t n = std::min(passphrase.size(), kKeySize);
  for (std::size_t i = 0; i < n; ++i) {
    k[i] = static_cast<std::uint8_t>(passphrase[i]);
  }
  return SecretKey(k);
}

SubstitutionMatrix init_matrix(const SecretKey& key) {
  SubstitutionMatrix m;
  for (std::size_t i = 0; i < kRows; ++i) {
    auto& row = m.forward[i];
    for (std::size_t j = 0; j < kColumns; ++j) {
      row[j] = static_cast<std::uint8_t>(j);
    }
    rotate_right(row, key[(i + 1) % kKeySize]);
    rotate_right(row, key[i]);
    for (std::size_t j = 0; j < kColumns; ++j) {
      m.inverse[i][row[j]] = static_cast<std::uint8_t>(j);
    }
  }
  return m;
}

SubKeySchedule derive_subkeys(const SubstitutionMatrix& matrix) {
  SubKeySchedule s;
  for (std::size_t n = 0; n < kRounds; ++n) {
    const auto& row = matrix.forward[n];
    std::copy_n(row.begin(), s.translation[n].size(), s.translation[n].begin());
    std::copy_n(row.begin(), s.transposition[n].size(),
                s.transposition[n].begin());
  }
  return s;
}

Block substitute_block(const SubstitutionMatrix& matrix, const Block& p) {
  Block cl1;
  for (std::size_t i = 0; i < kBlockSize; ++i) {
    cl1[i] = matrix.forward[i][p[i]];
  }
  return cl1;
}

Block inverse_map(const SubstitutionMatrix& matrix, const Block& cl1) {
  Block p;
  for (std::size_t i = 0; i < kBlockSize; ++i) {
    p[i] = matrix.inverse[i][cl1[i]];
  }
  return p;
}

Block round_translate(const Block& a1, const TranslationKey& kts) {
  Block out;
  for (std::size_t i = 0; i < kBlockSize; ++i) {
    out[i] = a1[i] ^ kts[i];
  }
  return out;
}

Block round_transpose(const Block& a1, const TranspositionKey& ktp) {
  Block a = a1;
  std::span<std::uint8_t> whole(a);
  rotate_right(whole, ktp[0]);
  rotate_right(whole.first(8), ktp[1]);
  rotate_left(whole.last(8), ktp[2]);
  rotate_right(whole, ktp[3]);
  return a;
}

Block round_detranspose(const Block& a1, const TranspositionKey& ktp) {
  Block a = a1;
  std::span<std::uint8_t> whole(a);
  rotate_left(whole, ktp[3]);
  rotate_left(whole.first(8), ktp[1]);
  rotate_right(whole.last(8), ktp[2]);
  rotate_left(whole, ktp[0]);
  return a;
}

Block encrypt_block(const SubstitutionMatrix& matrix,
                    const SubKeySchedule& schedule, const Block& p) {
  Block a = substitute_block(matrix, p);
  for (std::size_t n = 0; n < kRounds; ++n) {
    a = round_transpose(round_translate(a, schedule.translation[n]),
                        schedule.transposition[n]);
  }
  return a;
}

Block decrypt_block(const SubstitutionMatrix& matrix,
                    const SubKeySchedule& schedule, const Block& c) {
  Block a = c;
  for (std::size_t n = kRounds; n-- > 0;) {
    a = round_translate(round_detranspose(a, schedule.transposition[n]),
                        schedule.translation[n]);
  }
  return inverse_map(matrix, a);
}

std::vector<std::uint8_t> pad(std::span<const std::uint8_t> message) {
  const std::size_t v = kBlockSize - message.size() % kBlockSize;
  std::vector<std::uint8_t> out;
  out.reserve(message.size() + v);
  out.assign(message.begin(), message.end());
  out.insert(out.end(), v, static_cast<std::uint8_t>(v));
  return out;
}

std::vector<std::uint8_t> unpad(std::span<const std::uint8_t> padded) {
  if (padded.empty() || padded.size() % kBlockSize != 0) {
    throw Error(ErrorCode::kMalformedCiphertext,
                "padded length " + std::to_string(padded.size()) +
                    " is not a positive multiple of 16");
  }
  const std::uint8_t v = padded.back();
  if (v < 1 || v > kBlockSize) {
    throw Error(ErrorCode::kPadding,
                "padding byte " + std::to_string(v) + " out of range");
  }
  const auto tail = padded.last(v);
  if (!std::all_of(tail.begin(), tail.end(),
                   [v](std::uint8_t b) { return b == v; })) {
    throw Error(ErrorCode::kPadding, "inconsistent padding bytes");
  }
  return {padded.begin(), padded.end() - v};
}

Cipher::Cipher(const SecretKey& key)
    : matrix_(init_matrix(key)), schedule_(derive_subkeys(matrix_)) {}

Block Cipher::encrypt_block(const Block& p) const {
  return fset::encrypt_block(matrix_, schedule_, p);
}

Block Cipher::decrypt_block(const Block& c) const {
  return fset::decrypt_block(matrix_, schedule_, c);
}

std::vector<std::uint8_t> Cipher::encrypt(
    std::span<const std::uint8_t> message, unsigned threads) const {
  std::vector<std::uint8_t> out = pad(message);
  for_each_block(out, out, threads,
                 [this](const Block& b) { return encrypt_block(b); });
  return out;
}

std::vector<std::uint8_t> Cipher::decrypt(
    std::span<const std::uint8_t> ciphertext, unsigned threads) const {
  if (ciphertext.empty() || ciphertext.size() % kBlockSize != 0) {
    throw Error(ErrorCode::kMalformedCiphertext,
                "ciphertext length " + std::to_string(ciphertext.size()) +
                    " is not a positive multiple of 16");
  }
  std::vector<std::uint8_t> out(ciphertext.size());
  for_each_block(ciphertext, out, threads,
                 [this](const Block& b) { return decrypt_block(b); });
  return unpad(out);
}

std::vector<std::uint8_t> encrypt_message(
    const SecretKey& key, std::span<const std::uint8_t> message) {
  return Cipher(key).encrypt(message);
}

std::vector<std::uint8_t> decrypt_message(
    const SecretKey& key, std::span<const std::uint8_t> ciphertext) {
  return Cipher(key).decrypt(ciphertext);
}

}  // namespace esmc::fset
