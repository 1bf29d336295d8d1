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

// Textbook RSA over GMP integers: prime generation, key generation, the
// integer primitives c = m^e mod n / m = c^d mod n, and a length-prefixed
// chunk codec for byte strings. Deterministic, unpadded, and not secure
// for real use.

#ifndef ESMC_RSA_HPP_
#define ESMC_RSA_HPP_

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace esmc::rsa {

using BigInt = mpz_class;
using Rng = std::mt19937_64;

inline constexpr unsigned kMillerRabinRounds = 40;
inline constexpr unsigned long kDefaultExponent = 65537;
inline constexpr unsigned kDefaultModulusBits = 512;
// Smallest modulus the byte codec accepts (three-byte chunks).
inline constexpr std::size_t kMinModulusBits = 25;

struct RsaPublicKey {
  BigInt e;
  BigInt n;
  bool operator==(const RsaPublicKey& o) const { return e == o.e && n == o.n; }
};

struct RsaPrivateKey {
  BigInt d;
  BigInt n;
  bool operator==(const RsaPrivateKey& o) const { return d == o.d && n == o.n; }
};

struct RsaKeyPair {
  RsaPublicKey pub;
  RsaPrivateKey priv;
};

// One encrypted value per chunk, each < n; serialized at modulus_len bytes.
struct RsaCiphertext {
  std::size_t modulus_len = 0;
  std::vector<BigInt> chunks;
  bool operator==(const RsaCiphertext& o) const {
    return modulus_len == o.modulus_len && chunks == o.chunks;
  }
};

// Square-and-multiply, scanning the exponent from the top bit down.
BigInt mod_pow(const BigInt& base, const BigInt& exponent,
               const BigInt& modulus);

// Inverse of a mod m via the extended Euclidean algorithm, in [0, m).
// Returns false (and leaves `out` untouched) when gcd(a, m) != 1.
bool mod_inverse(const BigInt& a, const BigInt& m, BigInt& out);

// Uniform value with exactly `bits` random bits (top bit not forced).
BigInt random_bits(std::size_t bits, Rng& rng);

bool is_probable_prime(const BigInt& n, Rng& rng,
                       unsigned rounds = kMillerRabinRounds);

// A probable prime with exactly `bits` bits (top bit set, odd). bits >= 8.
BigInt generate_prime(std::size_t bits, Rng& rng);

// Keys from explicit primes and exponent. Throws kInvalidPrime when p == q
// or either is not prime, kInvalidExponent unless 1 < e < phi and
// gcd(e, phi) == 1.
RsaKeyPair keygen(const BigInt& p, const BigInt& q, const BigInt& e);

// 65537 when it is valid for phi, otherwise the smallest odd e >= 3 with
// gcd(e, phi) == 1. Throws kInvalidExponent when no e in (1, phi) works.
BigInt pick_exponent(const BigInt& phi);

// Two distinct random primes of bits/2 each with n of exactly `bits`
// bits, with e from pick_exponent.
RsaKeyPair generate_keypair(std::size_t bits, Rng& rng);

BigInt encrypt_int(const BigInt& m, const RsaPublicKey& pub);
BigInt decrypt_int(const BigInt& c, const RsaPrivateKey& priv);

std::size_t modulus_bytes(const BigInt& n);
// Bytes per encoded chunk, floor((bitlen(n) - 1) / 8). Each chunk is
// [length byte][payload][zero fill], so it carries chunk_width - 1 bytes.
std::size_t chunk_width(const BigInt& n);

RsaCiphertext encrypt_bytes(std::span<const std::uint8_t> data,
                            const RsaPublicKey& pub);
// Throws kCorruptCiphertext for chunks >= n, a bad length byte, nonzero
// fill, or a modulus_len that does not match the key.
std::vector<std::uint8_t> decrypt_bytes(const RsaCiphertext& ct,
                                        const RsaPrivateKey& priv);

// Big-endian import/export. export pads on the left to `width` bytes and
// throws kOutOfRange if the value does not fit.
BigInt from_bytes_be(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> to_bytes_be(const BigInt& v, std::size_t width);

// Key files: "ESMC-PUB v1\n<e>\n<n>\n" and "ESMC-PRV v1\n<d>\n<n>\n".
std::string format_public_key(const RsaPublicKey& pub);
std::string format_private_key(const RsaPrivateKey& priv);
RsaPublicKey parse_public_key(std::string_view text);
RsaPrivateKey parse_private_key(std::string_view text);

}  // namespace esmc::rsa

#endif  // ESMC_RSA_HPP_
