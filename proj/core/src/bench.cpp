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

#include "esmc/bench.hpp"

#include <chrono>
#include <algorithm>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace esmc::bench {

namespace {

using Clock = std::chrono::steady_clock;
static_assert(Clock::is_steady);

std::string timer_note() {
  std::ostringstream os;
  os << "std::chrono::steady_clock, tick = "
     << 1e9 * Clock::period::num / Clock::period::den << " ns";
  return os.str();
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double safe_rate(double bytes, double seconds) {
  // Sub-tick runs are clamped to one tick.
  const double tick =
      static_cast<double>(Clock::period::num) / Clock::period::den;
  return bytes / std::max(seconds, tick);
}

}  // namespace

BenchReport run_bench(const BenchOptions& options, const fset::SecretKey& key) {
  if (options.size < fset::kBlockSize) {
    throw std::invalid_argument("bench payload must be at least 16 bytes");
  }
  if (options.iterations < 1) {
    throw std::invalid_argument("bench needs at least one iteration");
  }
  const unsigned threads = std::max(1u, options.threads);

  std::mt19937_64 rng(options.seed);
  std::vector<std::uint8_t> payload(options.size);
  for (auto& b : payload) b = static_cast<std::uint8_t>(rng());

  const fset::Cipher cipher(key);
  std::vector<std::uint8_t> ciphertext;
  std::vector<std::uint8_t> recovered;

  auto start = Clock::now();
  for (std::size_t i = 0; i < options.iterations; ++i) {
    ciphertext = cipher.encrypt(payload, threads);
  }
  const double enc_s = seconds_since(start);

  start = Clock::now();
  for (std::size_t i = 0; i < options.iterations; ++i) {
    recovered = cipher.decrypt(ciphertext, threads);
  }
  const double dec_s = seconds_since(start);

  if (recovered != payload) {
    throw std::runtime_error("bench round trip failed");
  }
  if (threads > 1 && cipher.encrypt(payload, 1) != ciphertext) {
    throw std::runtime_error("parallel ciphertext differs from sequential");
  }

  const double total =
      static_cast<double>(options.size) * static_cast<double>(options.iterations);
  BenchReport r;
  r.payload_size = options.size;
  r.iterations = options.iterations;
  r.threads = threads;
  r.encrypt_seconds = enc_s;
  r.decrypt_seconds = dec_s;
  r.encrypt_throughput = safe_rate(total, enc_s);
  r.decrypt_throughput = safe_rate(total, dec_s);
  r.timer_note = timer_note();
  return r;
}

std::string to_csv(const BenchReport& report) {
  std::ostringstream os;
  os << report.payload_size << ',' << report.iterations << ','
     << std::llround(report.encrypt_throughput) << ','
     << std::llround(report.decrypt_throughput);
  return os.str();
}

std::string to_summary(const BenchReport& report) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2);
  os << "FSET throughput: " << report.payload_size << " bytes x "
     << report.iterations << " iterations, " << report.threads
     << (report.threads == 1 ? " thread\n" : " threads\n");
  os << "  encrypt: " << report.encrypt_throughput / 1e6 << " MB/s ("
     << report.encrypt_seconds << " s)\n";
  os << "  decrypt: " << report.decrypt_throughput / 1e6 << " MB/s ("
     << report.decrypt_seconds << " s)\n";
  os << "  round trip: ok\n";
  os << "  timer: " << report.timer_note << "\n";
  return os.str();
}

}  // namespace esmc::bench
