#include "xyz2/decoder.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <unordered_set>

#include "xyz2/errors.hpp"

namespace xyz2 {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::size_t kExactQubitCap = 20;

// Streaming log-sum-exp.
struct LogSum {
  double m = kNegInf;
  double acc = 0.0;
  void add(double x) {
    if (x == kNegInf) return;
    if (m == kNegInf) {
      m = x;
      acc = 1.0;
    } else if (x <= m) {
      acc += std::exp(x - m);
    } else {
      acc = acc * std::exp(m - x) + 1.0;
      m = x;
    }
  }
  double value() const { return m == kNegInf ? m : m + std::log(acc); }
};

struct Kahan {
  double sum = 0.0, comp = 0.0;
  void add(double x) {
    double y = x - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

// Log probability of a chain split into a finite part and a count of
// zero-probability letters, so pure-noise limits stay exact.
struct SplitLogProb {
  double finite = 0.0;
  int64_t zeros = 0;
  double value() const { return zeros ? kNegInf : finite; }
};

SplitLogProb split_log_prob(const std::array<double, 4>& lp, const PauliOperator& chain) {
  SplitLogProb r;
  for (std::size_t q = 0; q < chain.num_qubits(); ++q) {
    double v = lp[chain.letter(q)];
    if (v == kNegInf)
      ++r.zeros;
    else
      r.finite += v;
  }
  return r;
}

struct ChainKey {
  std::array<uint64_t, 8> w{};
  bool operator==(const ChainKey& o) const { return w == o.w; }
};

struct ChainKeyHash {
  std::size_t operator()(const ChainKey& k) const {
    uint64_t h = 0x9e3779b97f4a7c15ull;
    for (uint64_t x : k.w) {
      h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 0xbf58476d1ce4e5b9ull;
      h ^= h >> 27;
    }
    return std::size_t(h);
  }
};

ChainKey chain_key(const PauliOperator& p) {
  ChainKey k;
  const auto& xw = p.xbits().words();
  const auto& zw = p.zbits().words();
  for (std::size_t i = 0; i < xw.size(); ++i) k.w[i] = xw[i];
  for (std::size_t i = 0; i < zw.size(); ++i) k.w[4 + i] = zw[i];
  return k;
}

std::array<PauliOperator, 4> class_representatives(const StabilizerCode& code) {
  return {PauliOperator(code.n), code.logical_x, code.logical_y(), code.logical_z};
}

LogicalClass argmax_class(const std::array<double, 4>& scores) {
  std::size_t best = 0;
  for (std::size_t c = 1; c < 4; ++c)
    if (scores[c] > scores[best]) best = c;
  return LogicalClass(best);
}

std::string json_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Syndrome syndrome_of(const StabilizerCode& code, const PauliOperator& chain) {
  if (chain.num_qubits() != code.n)
    throw std::invalid_argument("syndrome_of: chain qubit count does not match the code");
  Syndrome s{BitVec(code.generators.size())};
  for (std::size_t g = 0; g < code.generators.size(); ++g)
    s.bits.set(g, !commutes(code.generators[g].op, chain));
  return s;
}

PureErrorSolver::PureErrorSolver(const StabilizerCode& code)
    : n_(code.n), matrix_(code.syndrome_matrix()), solver_(matrix_) {}

PauliOperator PureErrorSolver::solve(const Syndrome& s) const {
  if (s.bits.size() != matrix_.rows())
    throw std::invalid_argument("pure_error: syndrome length does not match generator count");
  auto x = solver_.solve(s.bits);
  if (!x)
    throw std::logic_error("pure_error: unrealizable syndrome (code construction bug)");
  return PauliOperator::from_symplectic_row(*x);
}

char class_char(LogicalClass c) {
  static constexpr char table[4] = {'I', 'X', 'Y', 'Z'};
  return table[uint8_t(c) & 3u];
}

LogicalClass logical_class(const StabilizerCode& code, const PauliOperator& actual,
                           const PauliOperator& recovery) {
  if (!(syndrome_of(code, actual) == syndrome_of(code, recovery)))
    throw std::invalid_argument("logical_class: actual and recovery have different syndromes");
  PauliOperator diff = pauli_mul(actual, recovery);
  bool cz = commutes(diff, code.logical_z);
  bool cx = commutes(diff, code.logical_x);
  if (cz && cx) return LogicalClass::I;
  if (!cz && cx) return LogicalClass::X;
  if (cz && !cx) return LogicalClass::Z;
  return LogicalClass::Y;
}

double default_p_sample(const NoiseParams& physical) {
  return std::clamp(physical.p, kPSampleDepolarizing.lo, kPSampleDepolarizing.hi);
}

double preset_p_sample(const NoiseParams& physical) {
  PSampleRange r = kPSampleDepolarizing;
  if (physical.eta > 0.5) r = physical.axis == Axis::X ? kPSampleXBiased : kPSampleZYBiased;
  return std::clamp(physical.p, r.lo, r.hi);
}

DecoderConfig DecoderConfig::defaults(const StabilizerCode& code, const NoiseParams& physical) {
  return with_p_sample(code, physical, default_p_sample(physical));
}

DecoderConfig DecoderConfig::with_p_sample(const StabilizerCode& code,
                                           const NoiseParams& physical, double p_sample) {
  DecoderConfig cfg;
  cfg.p_sample = p_sample;
  cfg.sample_bias = make_noise(p_sample, physical.eta, physical.axis);
  cfg.steps_per_class = 200 * code.n;
  cfg.burn_in = 10 * code.n;
  cfg.check();
  return cfg;
}

void DecoderConfig::check() const {
  if (!(p_sample > 0.0 && p_sample < 1.0))
    throw std::invalid_argument("DecoderConfig: p_sample must be in (0, 1)");
  if (steps_per_class < burn_in)
    throw std::invalid_argument("DecoderConfig: steps_per_class must be >= burn_in");
  if (unique_chain_cap < 1)
    throw std::invalid_argument("DecoderConfig: unique_chain_cap must be >= 1");
}

std::string DecodeResult::to_json() const {
  std::string s = "{\"class_scores\":[";
  for (std::size_t c = 0; c < 4; ++c) {
    if (c) s += ',';
    s += json_double(class_scores[c]);
  }
  s += "],\"chosen\":\"";
  s += class_char(chosen);
  s += "\",\"diagnostics\":{\"proposals_attempted\":";
  s += std::to_string(diagnostics.proposals_attempted);
  s += ",\"proposals_accepted\":";
  s += std::to_string(diagnostics.proposals_accepted);
  s += ",\"unique_chains\":[";
  for (std::size_t c = 0; c < 4; ++c) {
    if (c) s += ',';
    s += std::to_string(diagnostics.unique_chains[c]);
  }
  s += "],\"saturated\":[";
  for (std::size_t c = 0; c < 4; ++c) {
    if (c) s += ',';
    s += diagnostics.saturated[c] ? "true" : "false";
  }
  s += "]}}";
  return s;
}

EwdDecoder::EwdDecoder(const StabilizerCode& code, DecoderConfig cfg)
    : code_(code), cfg_(cfg), solver_(code), class_reps_(class_representatives(code)) {
  cfg_.check();
  if (code.n > 256) throw CapabilityError("EwdDecoder: more than 256 qubits unsupported");
  gens_.reserve(code.generators.size());
  for (const Generator& g : code.generators) {
    GenSupport s;
    s.op = g.op;
    for (std::size_t q = 0; q < code.n; ++q)
      if (uint8_t l = g.op.letter(q); l != letter::I) s.letters.push_back({uint32_t(q), l});
    gens_.push_back(std::move(s));
  }
}

DecodeResult EwdDecoder::decode(const Syndrome& s, const NoiseParams& physical,
                                const SplitStream& rng) const {
  const std::array<double, 4> lp_sample = cfg_.sample_bias.log_letter_probs();
  const std::array<double, 4> lp_phys = physical.log_letter_probs();
  const PauliOperator seed = solver_.solve(s);
  const uint32_t num_gens = uint32_t(gens_.size());

  DecodeResult result;
  for (std::size_t c = 0; c < 4; ++c) {
    PauliOperator chain = pauli_mul(seed, class_reps_[c]);
    SplitLogProb lps = split_log_prob(lp_sample, chain);
    SplitLogProb lpp = split_log_prob(lp_phys, chain);

    SplitStream walk = rng.child(c);
    std::unordered_set<ChainKey, ChainKeyHash> seen;
    seen.reserve(std::min<std::size_t>(cfg_.unique_chain_cap, cfg_.steps_per_class) + 1);
    LogSum score;
    bool saturated = false;

    auto record = [&] {
      ChainKey key = chain_key(chain);
      if (seen.find(key) != seen.end()) return;
      if (seen.size() >= cfg_.unique_chain_cap) {
        saturated = true;
        return;
      }
      seen.insert(key);
      score.add(lpp.value());
    };

    for (std::size_t step = 0; step < cfg_.steps_per_class; ++step) {
      ++result.diagnostics.proposals_attempted;
      const GenSupport& g = gens_[walk.next_below(num_gens)];

      double d_sample = 0.0, d_phys = 0.0;
      int64_t dz_sample = 0, dz_phys = 0;
      for (auto [q, l] : g.letters) {
        uint8_t cur = chain.letter(q);
        uint8_t nxt = cur ^ l;
        if (lp_sample[nxt] == kNegInf) ++dz_sample; else d_sample += lp_sample[nxt];
        if (lp_sample[cur] == kNegInf) --dz_sample; else d_sample -= lp_sample[cur];
        if (lp_phys[nxt] == kNegInf) ++dz_phys; else d_phys += lp_phys[nxt];
        if (lp_phys[cur] == kNegInf) --dz_phys; else d_phys -= lp_phys[cur];
      }

      // Proposals that introduce a zero-probability letter under the
      // sampling noise are rejected outright; ones that remove such letters
      // are always taken. Otherwise standard Metropolis on the finite part.
      bool accept;
      if (dz_sample > 0)
        accept = false;
      else if (dz_sample < 0)
        accept = true;
      else if (d_sample >= 0)
        accept = true;
      else
        accept = std::log(walk.next_uniform()) < d_sample;

      if (accept) {
        chain.mul_inplace(g.op);
        lps.finite += d_sample;
        lps.zeros += dz_sample;
        lpp.finite += d_phys;
        lpp.zeros += dz_phys;
        ++result.diagnostics.proposals_accepted;
      }
      if (cfg_.paranoid_checks && !(syndrome_of(code_, chain) == s))
        throw std::logic_error("ewd_decode: walk left the syndrome coset");
      if (step >= cfg_.burn_in) record();
    }

    result.class_scores[c] = score.value();
    result.diagnostics.unique_chains[c] = seen.size();
    result.diagnostics.saturated[c] = saturated;
  }
  result.chosen = argmax_class(result.class_scores);
  return result;
}

ExactMldDecoder::ExactMldDecoder(const StabilizerCode& code)
    : code_(code), solver_(code), class_reps_(class_representatives(code)) {
  if (code.n > kExactQubitCap)
    throw CapabilityError("exact_mld_decode enumerates 2^(n-1) group elements, capped at n <= " +
                          std::to_string(kExactQubitCap) + "; code has n = " +
                          std::to_string(code.n));
  support_.resize(code.generators.size());
  for (std::size_t g = 0; g < code.generators.size(); ++g)
    for (std::size_t q = 0; q < code.n; ++q)
      if (uint8_t l = code.generators[g].op.letter(q); l != letter::I)
        support_[g].push_back({uint32_t(q), l});
}

DecodeResult ExactMldDecoder::decode(const Syndrome& s, const NoiseParams& physical) const {
  const std::size_t n = code_.n;
  const std::size_t m = code_.generators.size();
  const PauliOperator seed = solver_.solve(s);

  // pow[l][k] = P(letter l)^k; a zero-probability letter zeroes every term
  // it appears in, which realizes the pure-noise limit exactly.
  std::array<std::vector<double>, 4> pow;
  for (uint8_t l = 0; l < 4; ++l) {
    pow[l].resize(n + 1);
    pow[l][0] = 1.0;
    double base = physical.letter_prob(l);
    for (std::size_t k = 1; k <= n; ++k) pow[l][k] = pow[l][k - 1] * base;
  }

  DecodeResult result;
  std::vector<uint8_t> letters(n);
  for (std::size_t c = 0; c < 4; ++c) {
    PauliOperator start = pauli_mul(seed, class_reps_[c]);
    std::array<std::size_t, 4> counts{};
    for (std::size_t q = 0; q < n; ++q) {
      letters[q] = start.letter(q);
      ++counts[letters[q]];
    }

    Kahan sum;
    auto visit = [&] {
      sum.add(pow[0][counts[0]] * pow[1][counts[1]] * pow[2][counts[2]] * pow[3][counts[3]]);
    };
    visit();
    for (uint64_t k = 1, end = uint64_t(1) << m; k < end; ++k) {
      std::size_t g = std::size_t(std::countr_zero(k));
      for (auto [q, l] : support_[g]) {
        --counts[letters[q]];
        letters[q] ^= l;
        ++counts[letters[q]];
      }
      visit();
    }

    result.linear_scores[c] = sum.sum;
    result.class_scores[c] = sum.sum > 0 ? std::log(sum.sum) : kNegInf;
  }
  result.chosen = argmax_class(result.class_scores);
  result.diagnostics.unique_chains = {uint64_t(1) << m, uint64_t(1) << m, uint64_t(1) << m,
                                      uint64_t(1) << m};
  return result;
}

DecodeResult ewd_decode(const StabilizerCode& code, const Syndrome& s,
                        const NoiseParams& physical, const DecoderConfig& cfg,
                        const SplitStream& rng) {
  return EwdDecoder(code, cfg).decode(s, physical, rng);
}

DecodeResult exact_mld_decode(const StabilizerCode& code, const Syndrome& s,
                              const NoiseParams& physical) {
  return ExactMldDecoder(code).decode(s, physical);
}

}  // namespace xyz2
