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

// esmc: key generation, envelope encrypt/decrypt, raw FSET, and the
// throughput benchmark.
//
// Exit codes: 0 success, 1 usage error, 2 crypto or authentication
// failure, 3 I/O error. ESMC_SEED (decimal u64) seeds all randomness.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "esmc/bench.hpp"
#include "esmc/envelope.hpp"
#include "esmc/error.hpp"
#include "esmc/fset.hpp"
#include "esmc/rsa.hpp"

namespace {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kCrypto = 2,
  kIo = 3,
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)),
                                 std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("error reading '" + path + "'");
  return data;
}

std::string read_text(const std::string& path) {
  const auto bytes = read_file(path);
  return {bytes.begin(), bytes.end()};
}

void write_file(const std::string& path, std::span<const std::uint8_t> data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size()));
  if (!out) throw IoError("error writing '" + path + "'");
}

void write_text(const std::string& path, const std::string& text) {
  write_file(path, {reinterpret_cast<const std::uint8_t*>(text.data()),
                    text.size()});
}

std::optional<std::uint64_t> env_seed() {
  const char* s = std::getenv("ESMC_SEED");
  if (s == nullptr) return std::nullopt;
  try {
    std::size_t used = 0;
    const std::string str(s);
    const unsigned long long v = std::stoull(str, &used, 10);
    if (used != str.size() || str.empty() || str[0] == '-') throw 0;
    return v;
  } catch (...) {
    throw UsageError("ESMC_SEED must be a decimal u64, got '" +
                     std::string(s) + "'");
  }
}

esmc::rsa::Rng make_rng() {
  if (auto seed = env_seed()) return esmc::rsa::Rng(*seed);
  std::random_device rd;
  std::seed_seq seq{rd(), rd(), rd(), rd(), rd(), rd(), rd(), rd()};
  return esmc::rsa::Rng(seq);
}

esmc::rsa::BigInt parse_decimal(const std::string& flag,
                                const std::string& value) {
  esmc::rsa::BigInt v;
  if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos ||
      v.set_str(value, 10) != 0) {
    throw UsageError(flag + " must be a positive decimal integer");
  }
  return v;
}

esmc::fset::SecretKey parse_hex_key(const std::string& hex) {
  try {
    return esmc::fset::SecretKey::from_hex(hex);
  } catch (const esmc::Error& e) {
    throw UsageError(std::string("--key: ") + e.what());
  }
}

struct KeygenArgs {
  unsigned bits = esmc::rsa::kDefaultModulusBits;
  std::string p, q, e, pub, priv;
};

int cmd_keygen(const KeygenArgs& a) {
  using esmc::rsa::BigInt;
  esmc::rsa::RsaKeyPair kp;
  if (!a.p.empty() || !a.q.empty()) {
    if (a.p.empty() || a.q.empty()) {
      throw UsageError("--p and --q must be given together");
    }
    const BigInt p = parse_decimal("--p", a.p);
    const BigInt q = parse_decimal("--q", a.q);
    try {
      const BigInt e = a.e.empty() ? esmc::rsa::pick_exponent((p - 1) * (q - 1))
                                   : parse_decimal("--e", a.e);
      kp = esmc::rsa::keygen(p, q, e);
    } catch (const esmc::Error& err) {
      if (err.code() == esmc::ErrorCode::kInvalidPrime ||
          err.code() == esmc::ErrorCode::kInvalidExponent) {
        throw UsageError(err.what());
      }
      throw;
    }
  } else {
    if (!a.e.empty()) throw UsageError("--e requires --p and --q");
    if (a.bits < 32) throw UsageError("--bits must be at least 32");
    auto rng = make_rng();
    kp = esmc::rsa::generate_keypair(a.bits, rng);
  }
  write_text(a.pub, esmc::rsa::format_public_key(kp.pub));
  write_text(a.priv, esmc::rsa::format_private_key(kp.priv));
  std::cout << "e = " << kp.pub.e.get_str() << "\nd = " << kp.priv.d.get_str()
            << "\nn = " << kp.pub.n.get_str() << "\n";
  return kOk;
}

struct EncryptArgs {
  std::string pub, in, out, key, passphrase;
};

int cmd_encrypt(const EncryptArgs& a) {
  std::optional<esmc::fset::SecretKey> ks;
  if (!a.key.empty()) {
    ks = parse_hex_key(a.key);
  } else if (!a.passphrase.empty()) {
    ks = esmc::fset::SecretKey::from_passphrase(a.passphrase);
  } else {
    std::array<std::uint8_t, esmc::fset::kKeySize> k;
    if (auto seed = env_seed()) {
      std::mt19937_64 rng(*seed);
      for (auto& b : k) b = static_cast<std::uint8_t>(rng());
    } else {
      std::random_device rd;
      for (auto& b : k) b = static_cast<std::uint8_t>(rd());
    }
    ks.emplace(k);
  }
  const auto pub = esmc::rsa::parse_public_key(read_text(a.pub));
  const auto message = read_file(a.in);
  const auto pkg = esmc::envelope::seal(message, *ks, pub);
  write_file(a.out, esmc::envelope::serialize(pkg));
  return kOk;
}

struct DecryptArgs {
  std::string priv, in, out;
};

int cmd_decrypt(const DecryptArgs& a) {
  const auto priv = esmc::rsa::parse_private_key(read_text(a.priv));
  const auto container = read_file(a.in);
  const auto message =
      esmc::envelope::open(esmc::envelope::deserialize(container), priv);
  write_file(a.out, message);
  return kOk;
}

struct FsetArgs {
  std::string mode, key, in, out;
};

int cmd_fset(const FsetArgs& a) {
  const auto ks = parse_hex_key(a.key);
  const auto data = read_file(a.in);
  const auto result = a.mode == "enc" ? esmc::fset::encrypt_message(ks, data)
                                      : esmc::fset::decrypt_message(ks, data);
  write_file(a.out, result);
  return kOk;
}

struct BenchArgs {
  std::size_t size = 1 << 20;
  std::size_t iters = 5;
  unsigned threads = 1;
  bool csv = false;
  std::string key;
};

int cmd_bench(const BenchArgs& a) {
  if (a.size < esmc::fset::kBlockSize) throw UsageError("--size must be >= 16");
  if (a.iters < 1) throw UsageError("--iters must be >= 1");
  esmc::bench::BenchOptions opts;
  opts.size = a.size;
  opts.iterations = a.iters;
  opts.threads = a.threads;
  opts.seed = env_seed().value_or(0);
  const esmc::fset::SecretKey key =
      a.key.empty() ? esmc::fset::SecretKey::from_passphrase("bench")
                    : parse_hex_key(a.key);
  const auto report = esmc::bench::run_bench(opts, key);
  if (a.csv) {
    std::cout << esmc::bench::kCsvHeader << "\n";
  } else {
    std::cout << esmc::bench::to_summary(report);
  }
  std::cout << esmc::bench::to_csv(report) << "\n";
  return kOk;
}

int exit_code_for(esmc::ErrorCode code) {
  switch (code) {
    case esmc::ErrorCode::kInvalidKey:
      return kUsage;
    default:
      return kCrypto;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid FSET/RSA secure message tool"};
  app.require_subcommand(1);

  KeygenArgs keygen;
  auto* kg = app.add_subcommand("keygen", "Generate an RSA key pair");
  kg->add_option("--bits", keygen.bits, "Modulus size in bits")
      ->capture_default_str();
  kg->add_option("--p", keygen.p, "First prime (explicit key generation)");
  kg->add_option("--q", keygen.q, "Second prime (explicit key generation)");
  kg->add_option("--e", keygen.e, "Public exponent");
  kg->add_option("--pub", keygen.pub, "Public key output file")->required();
  kg->add_option("--priv", keygen.priv, "Private key output file")->required();

  EncryptArgs encrypt;
  auto* enc = app.add_subcommand("encrypt", "Seal a file into an ESMC container");
  enc->add_option("--pub", encrypt.pub, "Recipient public key")->required();
  enc->add_option("--in", encrypt.in, "Plaintext input")->required();
  enc->add_option("--out", encrypt.out, "Container output")->required();
  auto* key_opt = enc->add_option("--key", encrypt.key, "Secret key, 32 hex digits");
  enc->add_option("--passphrase", encrypt.passphrase,
                  "Secret key text, truncated or zero-padded to 16 bytes")
      ->excludes(key_opt);

  DecryptArgs decrypt;
  auto* dec = app.add_subcommand("decrypt", "Open and authenticate a container");
  dec->add_option("--priv", decrypt.priv, "Recipient private key")->required();
  dec->add_option("--in", decrypt.in, "Container input")->required();
  dec->add_option("--out", decrypt.out, "Plaintext output")->required();

  FsetArgs fset;
  auto* fs = app.add_subcommand("fset", "Raw FSET cipher, no envelope");
  fs->add_option("--mode", fset.mode, "enc or dec")
      ->required()
      ->check(CLI::IsMember({"enc", "dec"}));
  fs->add_option("--key", fset.key, "Secret key, 32 hex digits")->required();
  fs->add_option("--in", fset.in, "Input file")->required();
  fs->add_option("--out", fset.out, "Output file")->required();

  BenchArgs bench;
  auto* bn = app.add_subcommand("bench", "Measure FSET throughput");
  bn->add_option("--size", bench.size, "Payload bytes")->capture_default_str();
  bn->add_option("--iters", bench.iters, "Iterations")->capture_default_str();
  bn->add_option("--threads", bench.threads, "Worker threads")
      ->capture_default_str();
  bn->add_option("--key", bench.key, "Secret key, 32 hex digits");
  bn->add_flag("--csv", bench.csv, "Print only the CSV header and row");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*kg) return cmd_keygen(keygen);
    if (*enc) return cmd_encrypt(encrypt);
    if (*dec) return cmd_decrypt(decrypt);
    if (*fs) return cmd_fset(fset);
    if (*bn) return cmd_bench(bench);
  } catch (const UsageError& e) {
    std::cerr << "esmc: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "esmc: " << e.what() << "\n";
    return kIo;
  } catch (const esmc::Error& e) {
    std::cerr << "esmc: " << esmc::to_string(e.code()) << ": " << e.what()
              << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "esmc: " << e.what() << "\n";
    return kCrypto;
  }
  return kUsage;
}
