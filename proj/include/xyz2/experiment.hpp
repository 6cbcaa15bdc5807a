#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "xyz2/code.hpp"
#include "xyz2/decoder.hpp"
#include "xyz2/noise.hpp"
#include "xyz2/rng.hpp"

namespace xyz2 {

enum class DecoderChoice : uint8_t { Ewd, Exact, Analytic };

std::string decoder_choice_name(DecoderChoice c);
DecoderChoice decoder_choice_from_name(const std::string& name);

struct DecoderSpec {
  DecoderChoice choice = DecoderChoice::Ewd;
  std::optional<double> p_sample;         // explicit value
  bool p_sample_preset = false;           // clamp to the bias-matched preset range
  std::optional<uint64_t> steps_per_class, burn_in;

  double resolve_p_sample(const NoiseParams& physical) const;
  DecoderConfig resolve_config(const StabilizerCode& code, const NoiseParams& physical) const;
};

struct ExperimentSpec {
  std::string name;  // section label, provenance only
  CodeFamily family = CodeFamily::Xyz2;
  std::vector<int> distances;
  std::vector<double> p_values;
  double eta = 0.5;
  Axis axis = Axis::Z;
  DecoderSpec decoder;
  uint64_t trials = 10000;
  uint64_t master_seed = 0;

  void check() const;
};

struct PointResult {
  CodeFamily family;
  int d = 0;
  std::size_t n = 0;
  double p = 0, eta = 0;
  Axis axis = Axis::Z;
  std::string decoder_label;
  double p_sample = 0;  // NaN for exact / analytic
  uint64_t trials = 0, failures = 0;
  double pf = 0, std_err = 0;
  DecodeDiagnostics diag_total;
  uint64_t master_seed = 0;
};

struct ExperimentResult {
  ExperimentSpec spec;
  std::vector<PointResult> points;
  std::map<int, uint64_t> code_checksums;  // by distance
};

// Monte-Carlo failure estimate at one grid point. Trial t derives its random
// stream purely from (point_stream, t): the output is byte-identical for any
// worker count. Exact class-score ties are broken by a fair draw from a
// dedicated per-trial substream, which scores the pure-noise marginal chains
// as failures half of the time.
PointResult run_trials(const StabilizerCode& code, const NoiseParams& noise,
                       const DecoderSpec& decoder, uint64_t trials,
                       const SplitStream& point_stream, unsigned workers,
                       uint64_t master_seed_echo);

// Cartesian product of (d, p); point index keys the per-point substream.
ExperimentResult sweep(const ExperimentSpec& spec, unsigned workers);

struct ThresholdEstimate {
  double p_th = 0;
  double lo = 0, hi = 0;  // bracketing grid cell widened by propagated stderr
};

// Crossing of the failure curves of two distances on a common p grid, by
// linear interpolation at the first sign change of pf(d_large) - pf(d_small).
ThresholdEstimate estimate_threshold(const std::vector<PointResult>& points, int d_small,
                                     int d_large);

std::string results_csv_header();
std::string results_csv(const std::vector<PointResult>& points);

// Worker count from the environment (XYZ2SIM_WORKERS) or hardware.
unsigned default_workers();

}  // namespace xyz2
