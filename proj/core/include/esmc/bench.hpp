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

// Throughput harness for the FSET cipher. Only the encrypt/decrypt calls
// are timed; matrix and sub-key setup happen before the clock starts.

#ifndef ESMC_BENCH_HPP_
#define ESMC_BENCH_HPP_

#include <cstddef>
#include <cstdint>
#include <string>

#include "esmc/fset.hpp"

namespace esmc::bench {

inline constexpr const char* kCsvHeader = "size,iters,enc_bps,dec_bps";

struct BenchReport {
  std::size_t payload_size = 0;
  std::size_t iterations = 0;
  unsigned threads = 1;
  double encrypt_seconds = 0;
  double decrypt_seconds = 0;
  double encrypt_throughput = 0;  // plaintext bytes per second
  double decrypt_throughput = 0;
  std::string timer_note;
};

struct BenchOptions {
  std::size_t size = 1 << 20;
  std::size_t iterations = 5;
  unsigned threads = 1;
  std::uint64_t seed = 0;
};

// Encrypts then decrypts a random payload `iterations` times each. Throws
// std::runtime_error if the round trip fails, or if a parallel run's
// ciphertext differs from the sequential one. Requires size >= 16 and
// iterations >= 1 (std::invalid_argument otherwise).
BenchReport run_bench(const BenchOptions& options, const fset::SecretKey& key);

// "size,iters,enc_bps,dec_bps" values, no trailing newline.
std::string to_csv(const BenchReport& report);
std::string to_summary(const BenchReport& report);

}  // namespace esmc::bench

#endif  // ESMC_BENCH_HPP_
