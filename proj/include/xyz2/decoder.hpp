#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "xyz2/code.hpp"
#include "xyz2/gf2.hpp"
#include "xyz2/noise.hpp"
#include "xyz2/pauli.hpp"
#include "xyz2/rng.hpp"

namespace xyz2 {

// One parity bit per stabilizer generator, in the code's generator order.
struct Syndrome {
  BitVec bits;

  bool operator==(const Syndrome& o) const { return bits == o.bits; }
  std::string str() const { return bits.str(); }
};

Syndrome syndrome_of(const StabilizerCode& code, const PauliOperator& chain);

// Deterministic chain realizing a given syndrome, via a precomputed GF(2)
// factorization of the code's syndrome map.
class PureErrorSolver {
 public:
  explicit PureErrorSolver(const StabilizerCode& code);

  PauliOperator solve(const Syndrome& s) const;

  // Basis of {chains with zero syndrome} = stabilizer group + logicals,
  // dimension n + 1; used by exhaustive oracles.
  std::vector<BitVec> coset_nullspace() const { return matrix_.nullspace(); }

 private:
  std::size_t n_;
  BitMatrix matrix_;
  Gf2Solver solver_;
};

enum class LogicalClass : uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char class_char(LogicalClass c);

// Classifies actual * recovery by its commutation with the logicals.
// Requires syndrome(actual) == syndrome(recovery).
LogicalClass logical_class(const StabilizerCode& code, const PauliOperator& actual,
                           const PauliOperator& recovery);

// p_sample tuning ranges quoted for the EWD decoder, by bias regime.
struct PSampleRange {
  double lo, hi;
};
inline constexpr PSampleRange kPSampleDepolarizing{0.05, 0.6};
inline constexpr PSampleRange kPSampleXBiased{0.14, 0.37};
inline constexpr PSampleRange kPSampleZYBiased{0.26, 0.41};

// Default: the physical rate clamped to [0.05, 0.6].
double default_p_sample(const NoiseParams& physical);
// Preset: the physical rate clamped to the range matching the bias regime.
double preset_p_sample(const NoiseParams& physical);

struct DecoderConfig {
  double p_sample = 0.0;
  NoiseParams sample_bias;  // (p_sample, physical eta, physical axis)
  std::size_t steps_per_class = 0;
  std::size_t burn_in = 0;
  std::size_t unique_chain_cap = std::size_t(1) << 16;
  bool paranoid_checks = false;  // re-verify the syndrome of every visited chain

  static DecoderConfig defaults(const StabilizerCode& code, const NoiseParams& physical);
  static DecoderConfig with_p_sample(const StabilizerCode& code, const NoiseParams& physical,
                                     double p_sample);
  void check() const;
};

struct DecodeDiagnostics {
  uint64_t proposals_attempted = 0;
  uint64_t proposals_accepted = 0;
  std::array<uint64_t, 4> unique_chains{};  // per class I, X, Y, Z
  std::array<uint8_t, 4> saturated{};
};

struct DecodeResult {
  std::array<double, 4> class_scores{};   // log domain, order I, X, Y, Z
  std::array<double, 4> linear_scores{};  // exact decoder only; zero otherwise
  LogicalClass chosen = LogicalClass::I;
  DecodeDiagnostics diagnostics;

  std::string to_json() const;
};

// Approximate maximum-likelihood decoding: one Metropolis walk per
// equivalence class, deforming a syndrome-matching seed chain by random
// stabilizer generators at sampling rate p_sample, scoring each class by the
// summed physical-noise probability of the distinct chains visited.
class EwdDecoder {
 public:
  EwdDecoder(const StabilizerCode& code, DecoderConfig cfg);

  DecodeResult decode(const Syndrome& s, const NoiseParams& physical,
                      const SplitStream& rng) const;

  const DecoderConfig& config() const { return cfg_; }

 private:
  struct GenSupport {
    std::vector<std::pair<uint32_t, uint8_t>> letters;  // (qubit, letter)
    PauliOperator op;
  };

  const StabilizerCode& code_;
  DecoderConfig cfg_;
  PureErrorSolver solver_;
  std::vector<GenSupport> gens_;
  std::array<PauliOperator, 4> class_reps_;
};

// Exact maximum-likelihood decoding by exhaustive enumeration of the
// stabilizer group (2^(n-1) elements per class); n <= 20.
class ExactMldDecoder {
 public:
  explicit ExactMldDecoder(const StabilizerCode& code);

  DecodeResult decode(const Syndrome& s, const NoiseParams& physical) const;

 private:
  const StabilizerCode& code_;
  PureErrorSolver solver_;
  std::vector<std::vector<std::pair<uint32_t, uint8_t>>> support_;
  std::array<PauliOperator, 4> class_reps_;
};

DecodeResult ewd_decode(const StabilizerCode& code, const Syndrome& s,
                        const NoiseParams& physical, const DecoderConfig& cfg,
                        const SplitStream& rng);
DecodeResult exact_mld_decode(const StabilizerCode& code, const Syndrome& s,
                              const NoiseParams& physical);

}  // namespace xyz2
