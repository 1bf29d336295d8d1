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

#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <set>

#include "esmc/error.hpp"
#include "reference_oracle.hpp"
#include "test_util.hpp"

namespace esmc::fset {
namespace {

using testing::Bytes;
using testing::OracleCipher;

Bytes to_bytes(const Block& b) { return Bytes(b.begin(), b.end()); }

Block to_block(const Bytes& b) {
  Block out;
  std::copy_n(b.begin(), kBlockSize, out.begin());
  return out;
}

SecretKey filled_key(std::uint8_t v) {
  std::array<std::uint8_t, kKeySize> k;
  k.fill(v);
  return SecretKey(k);
}

Block iota_block() {
  Block b;
  std::iota(b.begin(), b.end(), 0);
  return b;
}

unsigned row_shift(const SecretKey& k, std::size_t i) {
  return (k[(i + 1) % kKeySize] + k[i]) % 256;
}

TEST(SecretKeyTest, RejectsWrongLength) {
  std::vector<std::uint8_t> short_key(15), long_key(17);
  EXPECT_THROW(SecretKey::from_bytes(short_key), Error);
  EXPECT_THROW(SecretKey::from_bytes(long_key), Error);
  try {
    SecretKey::from_bytes(short_key);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidKey);
  }
  std::vector<std::uint8_t> zeros(16, 0);
  EXPECT_EQ(SecretKey::from_bytes(zeros), filled_key(0));
}

TEST(SecretKeyTest, HexParsing) {
  const auto k = SecretKey::from_hex("00112233445566778899AABBccddeeff");
  EXPECT_EQ(k[0], 0x00);
  EXPECT_EQ(k[10], 0xaa);
  EXPECT_EQ(k[15], 0xff);
  EXPECT_THROW(SecretKey::from_hex(std::string(30, '0')), Error);
  EXPECT_THROW(SecretKey::from_hex(std::string(31, '0') + "g"), Error);
}

TEST(SecretKeyTest, PassphraseTruncatesAndPads) {
  const auto k = SecretKey::from_passphrase("encryption algorithm");
  EXPECT_EQ(k, SecretKey::from_passphrase("encryption algor"));
  EXPECT_EQ(k[15], 'r');
  const auto short_k = SecretKey::from_passphrase("ab");
  EXPECT_EQ(short_k[0], 'a');
  EXPECT_EQ(short_k[1], 'b');
  for (std::size_t i = 2; i < kKeySize; ++i) EXPECT_EQ(short_k[i], 0);
}

TEST(RotateTest, ShiftCountIsReducedModLength) {
  std::mt19937_64 rng(1);
  for (std::size_t len : {8u, 16u, 256u}) {
    for (int trial = 0; trial < 50; ++trial) {
      const auto v = testing::random_bytes(rng, len);
      const std::size_t s = rng() % 1000;
      auto a = v, b = v;
      rotate_right(a, s);
      rotate_right(b, s % len);
      EXPECT_EQ(a, b);
      a = v;
      b = v;
      rotate_left(a, s);
      rotate_left(b, s % len);
      EXPECT_EQ(a, b);
    }
  }
}

TEST(RotateTest, MatchesOneStepShifts) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const auto v = testing::random_bytes(rng, 16);
    const unsigned s = rng() % 40;
    auto lib = v;
    auto ref = v;
    rotate_right(lib, s);
    testing::shift_right_times(ref, s);
    EXPECT_EQ(lib, ref);
    lib = v;
    ref = v;
    rotate_left(lib, s);
    testing::shift_left_times(ref, s);
    EXPECT_EQ(lib, ref);
  }
}

TEST(InitMatrixTest, ZeroKeyIsIdentity) {
  const auto m = init_matrix(filled_key(0));
  for (std::size_t i = 0; i < kRows; ++i) {
    for (std::size_t j = 0; j < kColumns; ++j) {
      ASSERT_EQ(m.forward[i][j], j);
      ASSERT_EQ(m.inverse[i][j], j);
    }
  }
}

TEST(InitMatrixTest, AllOnesKeyShiftsEveryRowByTwo) {
  const auto m = init_matrix(filled_key(1));
  EXPECT_EQ(m.forward[0][0], 254);
  const OracleCipher oracle(Bytes(16, 1));
  for (std::size_t i = 0; i < kRows; ++i) {
    for (std::size_t j = 0; j < kColumns; ++j) {
      ASSERT_EQ(m.forward[i][j], oracle.m[i][j]);
      ASSERT_EQ(m.forward[i][j], (j + 256 - 2) % 256);
    }
  }
}

TEST(InitMatrixTest, FirstPassUsesNextKeyByte) {
  // K(1) = 'a' shifts row 0 right 97 times in the first pass; K(0) = 0
  // leaves it there in the second.
  std::array<std::uint8_t, kKeySize> k{};
  k[1] = 'a';
  const auto m = init_matrix(SecretKey(k));
  EXPECT_EQ(m.forward[0][97], 0);
  Bytes row0(256);
  std::iota(row0.begin(), row0.end(), 0);
  testing::shift_right_times(row0, 97);
  EXPECT_EQ(Bytes(m.forward[0].begin(), m.forward[0].end()), row0);
  // Row 15 takes K(0) in pass 1 and K(15) in pass 2: both zero here.
  EXPECT_EQ(m.forward[15][0], 0);
  // Row 1 takes K(2) = 0 then K(1) = 97.
  EXPECT_EQ(m.forward[1][97], 0);
}

TEST(InitMatrixTest, ClosedFormAndOracleAgreeForRandomKeys) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto key = testing::random_key(rng);
    const auto m = init_matrix(key);
    const OracleCipher oracle(Bytes(key.bytes().begin(), key.bytes().end()));
    for (std::size_t i = 0; i < kRows; ++i) {
      const unsigned s = row_shift(key, i);
      std::set<unsigned> seen;
      for (std::size_t j = 0; j < kColumns; ++j) {
        ASSERT_EQ(m.forward[i][j], (j + 256 - s) % 256);
        ASSERT_EQ(m.forward[i][j], oracle.m[i][j]);
        ASSERT_EQ(m.inverse[i][m.forward[i][j]], j);
        ASSERT_EQ(m.forward[i][m.inverse[i][j]], j);
        seen.insert(m.forward[i][j]);
      }
      ASSERT_EQ(seen.size(), kColumns);
    }
  }
}

TEST(DeriveSubkeysTest, ZeroKey) {
  const auto s = derive_subkeys(init_matrix(filled_key(0)));
  for (std::size_t n = 0; n < kRounds; ++n) {
    for (std::size_t j = 0; j < 16; ++j) EXPECT_EQ(s.translation[n][j], j);
    EXPECT_EQ(s.transposition[n], (TranspositionKey{0, 1, 2, 3}));
  }
}

TEST(DeriveSubkeysTest, AllOnesKey) {
  const auto s = derive_subkeys(init_matrix(filled_key(1)));
  const TranslationKey expect = {254, 255, 0, 1, 2,  3,  4,  5,
                                 6,   7,   8, 9, 10, 11, 12, 13};
  EXPECT_EQ(s.translation[0], expect);
  EXPECT_EQ(s.transposition[0], (TranspositionKey{254, 255, 0, 1}));
}

TEST(DeriveSubkeysTest, ReadsRowsZeroThroughSeven) {
  std::mt19937_64 rng(4);
  const auto key = testing::random_key(rng);
  const auto m = init_matrix(key);
  const auto s = derive_subkeys(m);
  const OracleCipher oracle(Bytes(key.bytes().begin(), key.bytes().end()));
  for (unsigned n = 0; n < kRounds; ++n) {
    EXPECT_EQ(to_bytes(s.translation[n]), oracle.kts(n));
    EXPECT_EQ(Bytes(s.transposition[n].begin(), s.transposition[n].end()),
              oracle.ktp(n));
  }
}

TEST(SubstituteTest, ZeroKeyIsIdentity) {
  const auto m = init_matrix(filled_key(0));
  const Block p = iota_block();
  EXPECT_EQ(substitute_block(m, p), p);
  EXPECT_EQ(inverse_map(m, p), p);
}

TEST(SubstituteTest, AllOnesKeyExamples) {
  const auto m = init_matrix(filled_key(1));
  Block p{};
  p[0] = 65;
  p[5] = 0;
  const Block cl1 = substitute_block(m, p);
  EXPECT_EQ(cl1[0], 63);
  EXPECT_EQ(cl1[5], 254);
  Block c{};
  c[0] = 63;
  EXPECT_EQ(inverse_map(m, c)[0], 65);
}

TEST(SubstituteTest, InverseMapIsExhaustiveInverse) {
  std::mt19937_64 rng(5);
  const auto key = testing::random_key(rng);
  const auto m = init_matrix(key);
  const OracleCipher oracle(Bytes(key.bytes().begin(), key.bytes().end()));
  for (std::size_t pos = 0; pos < kBlockSize; ++pos) {
    for (unsigned v = 0; v < 256; ++v) {
      Block p{};
      p[pos] = static_cast<std::uint8_t>(v);
      const Block cl1 = substitute_block(m, p);
      ASSERT_EQ(to_bytes(cl1), oracle.substitute(to_bytes(p)));
      ASSERT_EQ(inverse_map(m, cl1), p);
      ASSERT_EQ(oracle.inverse_map(to_bytes(cl1)), to_bytes(p));
    }
  }
}

TEST(SubstituteTest, PolyAlphabeticPositionsDiffer) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    const auto key = testing::random_key(rng);
    const auto m = init_matrix(key);
    Block p;
    p.fill(0x41);
    const Block cl1 = substitute_block(m, p);
    for (std::size_t i = 0; i < kBlockSize; ++i) {
      for (std::size_t j = i + 1; j < kBlockSize; ++j) {
        if (row_shift(key, i) != row_shift(key, j)) {
          ASSERT_NE(cl1[i], cl1[j]);
        } else {
          ASSERT_EQ(cl1[i], cl1[j]);
        }
      }
    }
  }
}

TEST(RoundTranslateTest, Examples) {
  const Block a = iota_block();
  EXPECT_EQ(round_translate(a, TranslationKey{}), a);
  EXPECT_EQ(round_translate(a, a), Block{});
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto x = testing::random_array<16>(rng);
    const auto k = testing::random_array<16>(rng);
    ASSERT_EQ(round_translate(round_translate(x, k), k), x);
  }
}

TEST(RoundTransposeTest, Examples) {
  const Block a = iota_block();
  EXPECT_EQ(round_transpose(a, {0, 0, 0, 0}), a);
  EXPECT_EQ(round_transpose(a, {0, 1, 2, 3}), testing::kZeroKeyRound0);
  EXPECT_EQ(round_transpose(a, {16, 8, 8, 16}), a);
  EXPECT_EQ(round_detranspose(testing::kZeroKeyRound0, {0, 1, 2, 3}), a);
  EXPECT_EQ(round_detranspose(a, {0, 0, 0, 0}), a);
}

TEST(RoundTransposeTest, MatchesStepOracle) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto a = testing::random_array<16>(rng);
    const auto k = testing::random_array<4>(rng);
    const Bytes kb(k.begin(), k.end());
    ASSERT_EQ(to_bytes(round_transpose(a, k)),
              OracleCipher::transpose(to_bytes(a), kb));
    ASSERT_EQ(to_bytes(round_detranspose(a, k)),
              OracleCipher::detranspose(to_bytes(a), kb));
  }
}

TEST(RoundTransposeTest, InverseForAllEqualTuplesAndRandom) {
  std::mt19937_64 rng(9);
  for (unsigned v = 0; v < 256; ++v) {
    const auto b = static_cast<std::uint8_t>(v);
    const TranspositionKey k{b, b, b, b};
    const auto a = testing::random_array<16>(rng);
    ASSERT_EQ(round_detranspose(round_transpose(a, k), k), a);
  }
  for (int trial = 0; trial < 10000; ++trial) {
    const auto a = testing::random_array<16>(rng);
    const auto k = testing::random_array<4>(rng);
    ASSERT_EQ(round_detranspose(round_transpose(a, k), k), a);
  }
}

TEST(RoundTransposeTest, IsAPermutation) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 500; ++trial) {
    const auto k = testing::random_array<4>(rng);
    const Block out = round_transpose(iota_block(), k);
    std::set<std::uint8_t> seen(out.begin(), out.end());
    ASSERT_EQ(seen.size(), kBlockSize);
  }
}

TEST(BlockCipherTest, ZeroKeyGoldenVector) {
  const auto m = init_matrix(filled_key(0));
  const auto s = derive_subkeys(m);
  const Block zero{};
  // Round 0 alone, by hand: XOR with 0..15 then transpose by (0,1,2,3).
  EXPECT_EQ(round_transpose(round_translate(substitute_block(m, zero),
                                            s.translation[0]),
                            s.transposition[0]),
            testing::kZeroKeyRound0);
  EXPECT_EQ(encrypt_block(m, s, zero), testing::kZeroKeyZeroBlockGolden);
  EXPECT_EQ(decrypt_block(m, s, testing::kZeroKeyZeroBlockGolden), zero);

  const OracleCipher oracle(Bytes(16, 0));
  const auto trace = oracle.encrypt_trace(Bytes(16, 0));
  EXPECT_EQ(trace.front(), to_bytes(testing::kZeroKeyRound0));
  EXPECT_EQ(trace.back(), to_bytes(testing::kZeroKeyZeroBlockGolden));
}

TEST(BlockCipherTest, SingleRoundInverseOfRound0Trace) {
  const auto m = init_matrix(filled_key(0));
  const auto s = derive_subkeys(m);
  const Block undone = round_translate(
      round_detranspose(testing::kZeroKeyRound0, s.transposition[0]),
      s.translation[0]);
  EXPECT_EQ(inverse_map(m, undone), Block{});
}

TEST(BlockCipherTest, MatchesReferenceModel) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const auto key = testing::random_key(rng);
    const Cipher cipher(key);
    const OracleCipher oracle(Bytes(key.bytes().begin(), key.bytes().end()));
    const auto p = testing::random_array<16>(rng);
    const Block c = cipher.encrypt_block(p);
    ASSERT_EQ(to_bytes(c), oracle.encrypt_trace(to_bytes(p)).back());
    ASSERT_EQ(oracle.decrypt(to_bytes(c)), to_bytes(p));
  }
}

TEST(BlockCipherTest, RoundTripRandomKeysAndBlocks) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10000; ++trial) {
    const Cipher cipher(testing::random_key(rng));
    const auto p = testing::random_array<16>(rng);
    ASSERT_EQ(cipher.decrypt_block(cipher.encrypt_block(p)), p);
  }
  const Cipher zero(filled_key(0));
  for (int trial = 0; trial < 1000; ++trial) {
    const auto p = testing::random_array<16>(rng);
    ASSERT_EQ(zero.decrypt_block(zero.encrypt_block(p)), p);
  }
}

TEST(BlockCipherTest, InjectiveInEveryPosition) {
  std::mt19937_64 rng(13);
  const Cipher cipher(testing::random_key(rng));
  const auto base = testing::random_array<16>(rng);
  for (std::size_t pos = 0; pos < kBlockSize; ++pos) {
    std::set<Block> outputs;
    for (unsigned v = 0; v < 256; ++v) {
      Block p = base;
      p[pos] = static_cast<std::uint8_t>(v);
      const Block c = cipher.encrypt_block(p);
      ASSERT_EQ(cipher.decrypt_block(c), p);
      outputs.insert(c);
    }
    ASSERT_EQ(outputs.size(), 256u);
  }
}

TEST(PaddingTest, Examples) {
  EXPECT_EQ(pad({}), std::vector<std::uint8_t>(16, 16));
  std::vector<std::uint8_t> fifteen(15, 0xaa);
  auto padded = pad(fifteen);
  ASSERT_EQ(padded.size(), 16u);
  EXPECT_EQ(padded.back(), 0x01);
  std::vector<std::uint8_t> sixteen(16, 0xbb);
  padded = pad(sixteen);
  ASSERT_EQ(padded.size(), 32u);
  EXPECT_EQ(std::vector<std::uint8_t>(padded.begin() + 16, padded.end()),
            std::vector<std::uint8_t>(16, 16));
}

TEST(PaddingTest, RoundTripLengths) {
  std::mt19937_64 rng(14);
  for (std::size_t len = 0; len <= 64; ++len) {
    const auto x = testing::random_bytes(rng, len);
    const auto padded = pad(x);
    ASSERT_EQ(padded.size() % 16, 0u);
    ASSERT_GT(padded.size(), x.size());
    ASSERT_EQ(unpad(padded), x);
  }
}

TEST(PaddingTest, RejectsBadTrailers) {
  auto expect_code = [](std::vector<std::uint8_t> v, ErrorCode code) {
    try {
      unpad(v);
      FAIL() << "expected an error";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), code);
    }
  };
  std::vector<std::uint8_t> block(16, 3);
  block.back() = 0;
  expect_code(block, ErrorCode::kPadding);
  block.back() = 17;
  expect_code(block, ErrorCode::kPadding);
  block.assign(16, 0);
  block[15] = 2;
  block[14] = 1;
  expect_code(block, ErrorCode::kPadding);
  expect_code({}, ErrorCode::kMalformedCiphertext);
  expect_code(std::vector<std::uint8_t>(17, 1), ErrorCode::kMalformedCiphertext);
}

TEST(MessageTest, RoundTripRandomLengths) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 300; ++trial) {
    const auto key = testing::random_key(rng);
    const auto m = testing::random_bytes(rng, rng() % 4097);
    const auto c = encrypt_message(key, m);
    ASSERT_EQ(c.size(), pad(m).size());
    ASSERT_EQ(decrypt_message(key, c), m);
  }
}

TEST(MessageTest, IdenticalBlocksEncryptIdentically) {
  std::mt19937_64 rng(16);
  const auto key = testing::random_key(rng);
  const auto block = testing::random_bytes(rng, 16);
  std::vector<std::uint8_t> m;
  for (int i = 0; i < 3; ++i) {
    m.insert(m.end(), block.begin(), block.end());
    const auto filler = testing::random_bytes(rng, 16);
    m.insert(m.end(), filler.begin(), filler.end());
  }
  const auto c = encrypt_message(key, m);
  for (int i = 1; i < 3; ++i) {
    EXPECT_TRUE(std::equal(c.begin(), c.begin() + 16, c.begin() + 32 * i));
  }
  EXPECT_EQ(encrypt_message(key, m), c);
}

TEST(MessageTest, DecryptRejectsBadLengths) {
  const auto key = filled_key(7);
  try {
    decrypt_message(key, std::vector<std::uint8_t>(17));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedCiphertext);
  }
  EXPECT_THROW(decrypt_message(key, {}), Error);
}

TEST(MessageTest, WrongKeyNeverCrashes) {
  std::mt19937_64 rng(17);
  int padding_errors = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto m = testing::random_bytes(rng, rng() % 100);
    const auto c = encrypt_message(testing::random_key(rng), m);
    try {
      const auto out = decrypt_message(testing::random_key(rng), c);
      EXPECT_LE(out.size(), c.size());
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kPadding);
      ++padding_errors;
    }
  }
  EXPECT_GT(padding_errors, 0);
}

TEST(MessageTest, ParallelMatchesSequential) {
  std::mt19937_64 rng(18);
  const Cipher cipher(testing::random_key(rng));
  const auto m = testing::random_bytes(rng, 100003);
  const auto seq = cipher.encrypt(m, 1);
  for (unsigned threads : {2u, 3u, 8u}) {
    EXPECT_EQ(cipher.encrypt(m, threads), seq);
    EXPECT_EQ(cipher.decrypt(seq, threads), m);
  }
}

}  // namespace
}  // namespace esmc::fset
