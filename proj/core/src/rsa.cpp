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

#include "esmc/rsa.hpp"

#include <algorithm>
#include <array>

#include "esmc/error.hpp"

namespace esmc::rsa {

namespace {

constexpr std::array<unsigned, 25> kSmallPrimes = {
    2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
    43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

std::size_t bit_length(const BigInt& v) {
  return v == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

// Uniform in [lo, hi] by rejection sampling.
BigInt random_range(const BigInt& lo, const BigInt& hi, Rng& rng) {
  const BigInt span = hi - lo + 1;
  const std::size_t bits = bit_length(span);
  BigInt r;
  do {
    r = random_bits(bits, rng);
  } while (r >= span);
  return lo + r;
}

// Deterministic source for primality checks on caller-supplied values.
Rng& validation_rng() {
  thread_local Rng rng(0x45534d43u);
  return rng;
}

bool is_decimal(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return c >= '0' && c <= '9';
  });
}

struct KeyFileFields {
  BigInt exponent;
  BigInt modulus;
};

KeyFileFields parse_key_file(std::string_view text, std::string_view magic) {
  auto fail = [](const std::string& why) {
    throw Error(ErrorCode::kMalformedKeyFile, why);
  };
  if (text.empty() || text.back() != '\n') fail("key file must end in a newline");
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t nl = text.find('\n', start);
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  if (lines.size() != 3) {
    fail("key file must have exactly 3 lines, found " +
         std::to_string(lines.size()));
  }
  if (lines[0] != magic) {
    fail("expected header '" + std::string(magic) + "', found '" +
         std::string(lines[0]) + "'");
  }
  for (std::size_t i = 1; i < 3; ++i) {
    if (!is_decimal(lines[i])) {
      fail("line " + std::to_string(i + 1) + " is not a decimal integer");
    }
  }
  KeyFileFields f{BigInt(std::string(lines[1]), 10),
                  BigInt(std::string(lines[2]), 10)};
  if (f.exponent <= 0) fail("exponent must be positive");
  if (f.modulus <= 1) fail("modulus must exceed 1");
  return f;
}

}  // namespace

BigInt mod_pow(const BigInt& base, const BigInt& exponent,
               const BigInt& modulus) {
  if (modulus == 1) return 0;
  BigInt b = base % modulus;
  if (b < 0) b += modulus;
  BigInt result = 1;
  const std::size_t bits = bit_length(exponent);
  for (std::size_t i = bits; i-- > 0;) {
    result = result * result % modulus;
    if (mpz_tstbit(exponent.get_mpz_t(), i)) {
      result = result * b % modulus;
    }
  }
  return result;
}

bool mod_inverse(const BigInt& a, const BigInt& m, BigInt& out) {
  BigInt old_r = a % m, r = m;
  if (old_r < 0) old_r += m;
  BigInt old_s = 1, s = 0;
  while (r != 0) {
    const BigInt q = old_r / r;
    BigInt t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) return false;
  out = old_s % m;
  if (out < 0) out += m;
  return true;
}

BigInt random_bits(std::size_t bits, Rng& rng) {
  BigInt v = 0;
  for (std::size_t got = 0; got < bits; got += 64) {
    v <<= 64;
    const std::uint64_t w = rng();
    v += BigInt(static_cast<unsigned long>(w >> 32)) << 32;
    v += static_cast<unsigned long>(w & 0xffffffffu);
  }
  const std::size_t excess = (64 - bits % 64) % 64;
  return v >> excess;
}

bool is_probable_prime(const BigInt& n, Rng& rng, unsigned rounds) {
  if (n < 2) return false;
  for (unsigned p : kSmallPrimes) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  BigInt d = n - 1;
  std::size_t s = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d >>= 1;
    ++s;
  }
  const BigInt n_minus_1 = n - 1;
  for (unsigned round = 0; round < rounds; ++round) {
    const BigInt a = random_range(2, n - 2, rng);
    BigInt x = mod_pow(a, d, n);
    if (x == 1 || x == n_minus_1) continue;
    bool witness = true;
    for (std::size_t r = 1; r < s; ++r) {
      x = x * x % n;
      if (x == n_minus_1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

BigInt generate_prime(std::size_t bits, Rng& rng) {
  if (bits < 8) {
    throw Error(ErrorCode::kOutOfRange, "prime size must be at least 8 bits");
  }
  const BigInt top = BigInt(1) << (bits - 1);
  for (;;) {
    BigInt candidate = random_bits(bits, rng) | top | 1;
    if (is_probable_prime(candidate, rng)) return candidate;
  }
}

RsaKeyPair keygen(const BigInt& p, const BigInt& q, const BigInt& e) {
  if (p == q) throw Error(ErrorCode::kInvalidPrime, "p and q must be distinct");
  for (const BigInt* v : {&p, &q}) {
    if (!is_probable_prime(*v, validation_rng())) {
      throw Error(ErrorCode::kInvalidPrime, v->get_str() + " is not prime");
    }
  }
  const BigInt n = p * q;
  const BigInt phi = (p - 1) * (q - 1);
  if (e <= 1 || e >= phi) {
    throw Error(ErrorCode::kInvalidExponent,
                "e = " + e.get_str() + " must satisfy 1 < e < " + phi.get_str());
  }
  BigInt d;
  if (!mod_inverse(e, phi, d)) {
    throw Error(ErrorCode::kInvalidExponent,
                "e = " + e.get_str() + " shares a factor with phi = " +
                    phi.get_str());
  }
  return {{e, n}, {d, n}};
}

BigInt pick_exponent(const BigInt& phi) {
  BigInt unused;
  const BigInt preferred = kDefaultExponent;
  if (preferred < phi && mod_inverse(preferred, phi, unused)) return preferred;
  for (BigInt e = 3; e < phi; e += 2) {
    if (mod_inverse(e, phi, unused)) return e;
  }
  throw Error(ErrorCode::kInvalidExponent,
              "no public exponent exists for phi = " + phi.get_str());
}

RsaKeyPair generate_keypair(std::size_t bits, Rng& rng) {
  if (bits < 16) {
    throw Error(ErrorCode::kOutOfRange, "modulus must be at least 16 bits");
  }
  for (;;) {
    const BigInt p = generate_prime(bits - bits / 2, rng);
    const BigInt q = generate_prime(bits / 2, rng);
    if (p == q || bit_length(p * q) != bits) continue;
    return keygen(p, q, pick_exponent((p - 1) * (q - 1)));
  }
}

BigInt encrypt_int(const BigInt& m, const RsaPublicKey& pub) {
  if (m < 0 || m >= pub.n) {
    throw Error(ErrorCode::kOutOfRange, "plaintext integer must be in [0, n)");
  }
  return mod_pow(m, pub.e, pub.n);
}

BigInt decrypt_int(const BigInt& c, const RsaPrivateKey& priv) {
  if (c < 0 || c >= priv.n) {
    throw Error(ErrorCode::kOutOfRange, "ciphertext integer must be in [0, n)");
  }
  return mod_pow(c, priv.d, priv.n);
}

std::size_t modulus_bytes(const BigInt& n) { return (bit_length(n) + 7) / 8; }

std::size_t chunk_width(const BigInt& n) {
  const std::size_t bits = bit_length(n);
  return bits == 0 ? 0 : (bits - 1) / 8;
}

BigInt from_bytes_be(std::span<const std::uint8_t> bytes) {
  BigInt v;
  if (!bytes.empty()) {
    mpz_import(v.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
  }
  return v;
}

std::vector<std::uint8_t> to_bytes_be(const BigInt& v, std::size_t width) {
  if (v < 0 || modulus_bytes(v) > width) {
    throw Error(ErrorCode::kOutOfRange,
                "integer does not fit in " + std::to_string(width) + " bytes");
  }
  std::vector<std::uint8_t> out(width, 0);
  std::size_t count = 0;
  std::vector<std::uint8_t> raw(modulus_bytes(v) + 1);
  mpz_export(raw.data(), &count, 1, 1, 1, 0, v.get_mpz_t());
  std::copy_n(raw.begin(), count, out.end() - static_cast<std::ptrdiff_t>(count));
  return out;
}

RsaCiphertext encrypt_bytes(std::span<const std::uint8_t> data,
                            const RsaPublicKey& pub) {
  if (bit_length(pub.n) < kMinModulusBits) {
    throw Error(ErrorCode::kModulusTooSmall,
                "modulus has " + std::to_string(bit_length(pub.n)) +
                    " bits; the byte codec needs at least " +
                    std::to_string(kMinModulusBits));
  }
  const std::size_t width = chunk_width(pub.n);
  const std::size_t payload = width - 1;
  RsaCiphertext ct;
  ct.modulus_len = modulus_bytes(pub.n);
  std::vector<std::uint8_t> encoded(width);
  for (std::size_t off = 0; off < data.size(); off += payload) {
    const std::size_t len = std::min(payload, data.size() - off);
    std::fill(encoded.begin(), encoded.end(), 0);
    encoded[0] = static_cast<std::uint8_t>(len);
    std::copy_n(data.begin() + off, len, encoded.begin() + 1);
    ct.chunks.push_back(encrypt_int(from_bytes_be(encoded), pub));
  }
  return ct;
}

std::vector<std::uint8_t> decrypt_bytes(const RsaCiphertext& ct,
                                        const RsaPrivateKey& priv) {
  auto corrupt = [](const std::string& why) {
    throw Error(ErrorCode::kCorruptCiphertext, why);
  };
  if (bit_length(priv.n) < kMinModulusBits) {
    throw Error(ErrorCode::kModulusTooSmall, "modulus too small for byte codec");
  }
  if (ct.modulus_len != modulus_bytes(priv.n)) {
    corrupt("chunk width " + std::to_string(ct.modulus_len) +
            " does not match the " + std::to_string(modulus_bytes(priv.n)) +
            "-byte modulus");
  }
  const std::size_t width = chunk_width(priv.n);
  const std::size_t payload = width - 1;
  std::vector<std::uint8_t> out;
  for (std::size_t i = 0; i < ct.chunks.size(); ++i) {
    const BigInt& c = ct.chunks[i];
    if (c < 0 || c >= priv.n) corrupt("chunk " + std::to_string(i) + " >= n");
    const BigInt m = decrypt_int(c, priv);
    if (modulus_bytes(m) > width) {
      corrupt("chunk " + std::to_string(i) + " decodes past the chunk width");
    }
    const std::vector<std::uint8_t> encoded = to_bytes_be(m, width);
    const std::size_t len = encoded[0];
    const bool last = i + 1 == ct.chunks.size();
    if (len == 0 || len > payload || (!last && len != payload)) {
      corrupt("chunk " + std::to_string(i) + " has invalid length byte " +
              std::to_string(len));
    }
    if (!std::all_of(encoded.begin() + 1 + len, encoded.end(),
                     [](std::uint8_t b) { return b == 0; })) {
      corrupt("chunk " + std::to_string(i) + " has nonzero fill");
    }
    out.insert(out.end(), encoded.begin() + 1, encoded.begin() + 1 + len);
  }
  return out;
}

std::string format_public_key(const RsaPublicKey& pub) {
  return "ESMC-PUB v1\n" + pub.e.get_str() + "\n" + pub.n.get_str() + "\n";
}

std::string format_private_key(const RsaPrivateKey& priv) {
  return "ESMC-PRV v1\n" + priv.d.get_str() + "\n" + priv.n.get_str() + "\n";
}

RsaPublicKey parse_public_key(std::string_view text) {
  auto f = parse_key_file(text, "ESMC-PUB v1");
  return {f.exponent, f.modulus};
}

RsaPrivateKey parse_private_key(std::string_view text) {
  auto f = parse_key_file(text, "ESMC-PRV v1");
  return {f.exponent, f.modulus};
}

}  // namespace esmc::rsa
