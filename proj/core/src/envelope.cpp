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

#include "esmc/envelope.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "esmc/digest.hpp"
#include "esmc/error.hpp"

namespace esmc::envelope {

namespace {

void put_be(std::vector<std::uint8_t>& out, std::uint64_t v, int width) {
  for (int i = width - 1; i >= 0; --i) {
    out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
}

void put_chunks(std::vector<std::uint8_t>& out, const rsa::RsaCiphertext& ct,
                std::size_t width) {
  if (ct.chunks.size() > std::numeric_limits<std::uint16_t>::max()) {
    throw Error(ErrorCode::kMalformedPackage, "too many RSA chunks");
  }
  put_be(out, ct.chunks.size(), 2);
  for (const auto& c : ct.chunks) {
    const auto bytes = rsa::to_bytes_be(c, width);
    out.insert(out.end(), bytes.begin(), bytes.end());
  }
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::kMalformedContainer,
                "at offset " + std::to_string(pos_) + ": " + why);
  }

  std::span<const std::uint8_t> take(std::uint64_t n, const char* what) {
    if (n > bytes_.size() - pos_) {
      fail(std::string("truncated ") + what + " (need " + std::to_string(n) +
           " bytes, " + std::to_string(bytes_.size() - pos_) + " remain)");
    }
    auto s = bytes_.subspan(pos_, static_cast<std::size_t>(n));
    pos_ += static_cast<std::size_t>(n);
    return s;
  }

  std::uint64_t be(int width, const char* what) {
    std::uint64_t v = 0;
    for (std::uint8_t b : take(static_cast<std::uint64_t>(width), what)) {
      v = v << 8 | b;
    }
    return v;
  }

  std::size_t pos() const { return pos_; }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

rsa::RsaCiphertext read_chunks(Reader& r, std::size_t width, const char* what) {
  rsa::RsaCiphertext ct;
  ct.modulus_len = width;
  const std::uint64_t count = r.be(2, what);
  ct.chunks.reserve(static_cast<std::size_t>(count));
  for (std::uint64_t i = 0; i < count; ++i) {
    ct.chunks.push_back(rsa::from_bytes_be(r.take(width, what)));
  }
  return ct;
}

}  // namespace

EnvelopePackage seal(std::span<const std::uint8_t> message,
                     const fset::SecretKey& ks, const rsa::RsaPublicKey& pub) {
  const digest::MessageDigest hm = digest::hash_message(message);
  EnvelopePackage pkg;
  pkg.body = fset::encrypt_message(ks, message);
  const digest::MaskedDigest hmk = digest::compute_hmk(hm, ks);
  pkg.enc_key = rsa::encrypt_bytes(ks.bytes(), pub);
  pkg.enc_hmk = rsa::encrypt_bytes(hmk.bytes, pub);
  return pkg;
}

std::vector<std::uint8_t> open(const EnvelopePackage& pkg,
                               const rsa::RsaPrivateKey& priv) {
  const std::vector<std::uint8_t> key_bytes =
      rsa::decrypt_bytes(pkg.enc_key, priv);
  if (key_bytes.size() != fset::kKeySize) {
    throw Error(ErrorCode::kMalformedPackage,
                "decrypted secret key has " + std::to_string(key_bytes.size()) +
                    " bytes, expected 16");
  }
  const fset::SecretKey ks = fset::SecretKey::from_bytes(key_bytes);

  const std::vector<std::uint8_t> hmk_bytes =
      rsa::decrypt_bytes(pkg.enc_hmk, priv);
  if (hmk_bytes.size() != digest::kDigestSize) {
    throw Error(ErrorCode::kMalformedPackage,
                "decrypted hmk has " + std::to_string(hmk_bytes.size()) +
                    " bytes, expected 32");
  }
  digest::MaskedDigest hmk;
  std::copy(hmk_bytes.begin(), hmk_bytes.end(), hmk.bytes.begin());
  const digest::MessageDigest hm = digest::recover_hm(hmk, ks);

  std::vector<std::uint8_t> message = fset::decrypt_message(ks, pkg.body);
  if (!digest::verify(message, hm)) {
    throw Error(ErrorCode::kAuthenticationFailed,
                "message digest does not match");
  }
  return message;
}

std::vector<std::uint8_t> serialize(const EnvelopePackage& pkg) {
  if (pkg.enc_key.modulus_len != pkg.enc_hmk.modulus_len) {
    throw Error(ErrorCode::kMalformedPackage,
                "enc_key and enc_hmk disagree on modulus length");
  }
  const std::size_t width = pkg.enc_key.modulus_len;
  if (width == 0 || width > std::numeric_limits<std::uint16_t>::max()) {
    throw Error(ErrorCode::kMalformedPackage,
                "modulus length " + std::to_string(width) + " out of range");
  }
  std::vector<std::uint8_t> out(kMagic.begin(), kMagic.end());
  out.push_back(kVersion);
  put_be(out, width, 2);
  put_chunks(out, pkg.enc_key, width);
  put_chunks(out, pkg.enc_hmk, width);
  put_be(out, pkg.body.size(), 8);
  out.insert(out.end(), pkg.body.begin(), pkg.body.end());
  return out;
}

EnvelopePackage deserialize(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  const auto magic = r.take(kMagic.size(), "magic");
  if (!std::equal(magic.begin(), magic.end(), kMagic.begin())) {
    throw Error(ErrorCode::kMalformedContainer, "at offset 0: bad magic");
  }
  if (r.be(1, "version") != kVersion) {
    throw Error(ErrorCode::kMalformedContainer,
                "at offset 4: unsupported version");
  }
  const std::size_t width = static_cast<std::size_t>(r.be(2, "modulus length"));
  if (width == 0) r.fail("zero modulus length");

  EnvelopePackage pkg;
  pkg.enc_key = read_chunks(r, width, "enc_key");
  pkg.enc_hmk = read_chunks(r, width, "enc_hmk");
  const std::uint64_t body_len = r.be(8, "body length");
  if (body_len == 0 || body_len % fset::kBlockSize != 0) {
    r.fail("body length " + std::to_string(body_len) +
           " is not a positive multiple of 16");
  }
  const auto body = r.take(body_len, "body");
  pkg.body.assign(body.begin(), body.end());
  if (r.remaining() != 0) {
    r.fail(std::to_string(r.remaining()) + " trailing bytes");
  }
  return pkg;
}

}  // namespace esmc::envelope
