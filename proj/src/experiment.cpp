#include "xyz2/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <memory>
#include <stdexcept>
#include <thread>

#include "xyz2/analytic.hpp"
#include "xyz2/errors.hpp"

namespace xyz2 {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(const char* f, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

StabilizerCode build_family(CodeFamily family, int d) {
  switch (family) {
    case CodeFamily::Xyz2: return build_xyz2(d);
    case CodeFamily::Xzzx: return build_xzzx(d);
    case CodeFamily::RotatedSurface: return build_rotated_surface(d);
  }
  throw std::invalid_argument("unknown family");
}

// Classes tied with the maximum score, compared exactly; ties are real only
// at exact symmetry points (pure noise at p = 0.5 and the marginal chains).
std::vector<std::size_t> tied_max_classes(const std::array<double, 4>& scores) {
  std::size_t best = 0;
  for (std::size_t c = 1; c < 4; ++c)
    if (scores[c] > scores[best]) best = c;
  std::vector<std::size_t> tied;
  for (std::size_t c = 0; c < 4; ++c)
    if (scores[c] == scores[best]) tied.push_back(c);
  return tied;
}

}  // namespace

std::string decoder_choice_name(DecoderChoice c) {
  switch (c) {
    case DecoderChoice::Ewd: return "ewd";
    case DecoderChoice::Exact: return "exact";
    case DecoderChoice::Analytic: return "analytic";
  }
  return "?";
}

DecoderChoice decoder_choice_from_name(const std::string& name) {
  if (name == "ewd") return DecoderChoice::Ewd;
  if (name == "exact") return DecoderChoice::Exact;
  if (name == "analytic") return DecoderChoice::Analytic;
  throw std::invalid_argument("unknown decoder '" + name + "'");
}

double DecoderSpec::resolve_p_sample(const NoiseParams& physical) const {
  if (p_sample) return *p_sample;
  if (p_sample_preset) return preset_p_sample(physical);
  return default_p_sample(physical);
}

DecoderConfig DecoderSpec::resolve_config(const StabilizerCode& code,
                                          const NoiseParams& physical) const {
  DecoderConfig cfg = DecoderConfig::with_p_sample(code, physical, resolve_p_sample(physical));
  if (steps_per_class) cfg.steps_per_class = *steps_per_class;
  if (burn_in) cfg.burn_in = *burn_in;
  cfg.check();
  return cfg;
}

void ExperimentSpec::check() const {
  if (trials < 1) throw std::invalid_argument("experiment: trials must be >= 1");
  if (distances.empty()) throw std::invalid_argument("experiment: at least one distance");
  if (p_values.empty()) throw std::invalid_argument("experiment: at least one p value");
  for (double p : p_values)
    if (!(p >= 0.0 && p < 1.0))
      throw std::invalid_argument("experiment: p values must be in [0, 1)");
  for (int d : distances)
    if (d < 3 || d % 2 == 0)
      throw std::invalid_argument("experiment: distances must be odd and >= 3");
  if (decoder.choice == DecoderChoice::Exact) {
    for (int d : distances) {
      std::size_t n = family == CodeFamily::Xyz2 ? 2 * std::size_t(d) * d : std::size_t(d) * d;
      if (n > 20)
        throw CapabilityError("exact decoder is capped at n <= 20 qubits; " + family_name(family) +
                              " d=" + std::to_string(d) + " has n=" + std::to_string(n));
    }
  }
}

PointResult run_trials(const StabilizerCode& code, const NoiseParams& noise,
                       const DecoderSpec& decoder, uint64_t trials,
                       const SplitStream& point_stream, unsigned workers,
                       uint64_t master_seed_echo) {
  PointResult out;
  out.family = code.family;
  out.d = code.distance;
  out.n = code.n;
  out.p = noise.p;
  out.eta = noise.eta;
  out.axis = noise.axis;
  out.decoder_label = decoder_choice_name(decoder.choice);
  out.master_seed = master_seed_echo;

  if (decoder.choice == DecoderChoice::Analytic) {
    if (!noise.pure())
      throw std::invalid_argument("analytic decoder requires pure noise (eta = inf)");
    out.p_sample = kNaN;
    out.pf = analytic_pf_pure(code.family, code.distance, noise.p, noise.axis);
    out.trials = 0;
    out.failures = 0;
    out.std_err = 0;
    return out;
  }

  PureErrorSolver pure_solver(code);
  std::unique_ptr<EwdDecoder> ewd;
  std::unique_ptr<ExactMldDecoder> exact;
  if (decoder.choice == DecoderChoice::Ewd) {
    ewd = std::make_unique<EwdDecoder>(code, decoder.resolve_config(code, noise));
    out.p_sample = ewd->config().p_sample;
  } else {
    exact = std::make_unique<ExactMldDecoder>(code);
    out.p_sample = kNaN;
  }

  unsigned nw = std::max(1u, workers);
  if (uint64_t(nw) > trials) nw = unsigned(trials);

  std::vector<uint64_t> fail_count(nw, 0);
  std::vector<DecodeDiagnostics> diag(nw);

  auto work = [&](unsigned w) {
    for (uint64_t t = w; t < trials; t += nw) {
      SplitStream st = point_stream.child(t);
      PauliOperator chain = sample_chain(noise, code.n, st.child(0));
      Syndrome s = syndrome_of(code, chain);

      DecodeResult dec = ewd ? ewd->decode(s, noise, st.child(1)) : exact->decode(s, noise);

      LogicalClass chosen = dec.chosen;
      std::vector<std::size_t> tied = tied_max_classes(dec.class_scores);
      if (tied.size() > 1) {
        SplitStream coin = st.child(2);
        chosen = LogicalClass(tied[coin.next_below(uint32_t(tied.size()))]);
      }

      LogicalClass truth = logical_class(code, chain, pure_solver.solve(s));
      if (chosen != truth) ++fail_count[w];

      diag[w].proposals_attempted += dec.diagnostics.proposals_attempted;
      diag[w].proposals_accepted += dec.diagnostics.proposals_accepted;
      for (std::size_t c = 0; c < 4; ++c) {
        diag[w].unique_chains[c] += dec.diagnostics.unique_chains[c];
        diag[w].saturated[c] |= dec.diagnostics.saturated[c];
      }
    }
  };

  if (nw == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (unsigned w = 0; w < nw; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }

  out.trials = trials;
  for (unsigned w = 0; w < nw; ++w) {
    out.failures += fail_count[w];
    out.diag_total.proposals_attempted += diag[w].proposals_attempted;
    out.diag_total.proposals_accepted += diag[w].proposals_accepted;
    for (std::size_t c = 0; c < 4; ++c) {
      out.diag_total.unique_chains[c] += diag[w].unique_chains[c];
      out.diag_total.saturated[c] |= diag[w].saturated[c];
    }
  }
  out.pf = double(out.failures) / double(trials);
  out.std_err = std::sqrt(out.pf * (1.0 - out.pf) / double(trials));
  return out;
}

ExperimentResult sweep(const ExperimentSpec& spec, unsigned workers) {
  spec.check();
  ExperimentResult result;
  result.spec = spec;
  SplitStream root(spec.master_seed);

  uint64_t point_index = 0;
  for (int d : spec.distances) {
    StabilizerCode code = build_family(spec.family, d);
    result.code_checksums[d] = code.checksum();
    for (double p : spec.p_values) {
      NoiseParams noise = make_noise(p, spec.eta, spec.axis);
      result.points.push_back(run_trials(code, noise, spec.decoder, spec.trials,
                                         root.child(point_index), workers, spec.master_seed));
      ++point_index;
    }
  }
  return result;
}

ThresholdEstimate estimate_threshold(const std::vector<PointResult>& points, int d_small,
                                     int d_large) {
  std::vector<const PointResult*> small, large;
  for (const PointResult& pt : points) {
    if (pt.d == d_small) small.push_back(&pt);
    if (pt.d == d_large) large.push_back(&pt);
  }
  if (small.size() < 2 || small.size() != large.size())
    throw std::invalid_argument("estimate_threshold: need both distances on a common p grid");
  for (std::size_t i = 0; i < small.size(); ++i)
    if (small[i]->p != large[i]->p)
      throw std::invalid_argument("estimate_threshold: p grids differ between distances");

  for (std::size_t i = 0; i + 1 < small.size(); ++i) {
    double d0 = large[i]->pf - small[i]->pf;
    double d1 = large[i + 1]->pf - small[i + 1]->pf;
    if (d0 < 0 && d1 >= 0) {
      double p0 = small[i]->p, p1 = small[i + 1]->p;
      double frac = -d0 / (d1 - d0);
      ThresholdEstimate est;
      est.p_th = p0 + frac * (p1 - p0);
      double slope = (d1 - d0) / (p1 - p0);
      double sigma0 = std::hypot(small[i]->std_err, large[i]->std_err);
      double sigma1 = std::hypot(small[i + 1]->std_err, large[i + 1]->std_err);
      double widen = slope != 0 ? std::max(sigma0, sigma1) / std::abs(slope) : 0.0;
      est.lo = p0 - widen;
      est.hi = p1 + widen;
      return est;
    }
  }
  throw NotBracketedError(
      "estimate_threshold: pf(d_large) - pf(d_small) has no sign change on the grid");
}

std::string results_csv_header() {
  return "family,d,n,p,eta,axis,decoder,p_sample,trials,failures,pf,stderr,seed\n";
}

std::string results_csv(const std::vector<PointResult>& points) {
  std::string out = results_csv_header();
  for (const PointResult& pt : points) {
    out += family_name(pt.family);
    out += ',' + std::to_string(pt.d);
    out += ',' + std::to_string(pt.n);
    out += ',' + fmt("%.10g", pt.p);
    out += ',';
    out += std::isinf(pt.eta) ? "inf" : fmt("%.10g", pt.eta);
    out += ',';
    out += axis_char(pt.axis);
    out += ',' + pt.decoder_label;
    out += ',';
    out += std::isnan(pt.p_sample) ? "-" : fmt("%.10g", pt.p_sample);
    out += ',' + std::to_string(pt.trials);
    out += ',' + std::to_string(pt.failures);
    out += ',' + fmt("%.12g", pt.pf);
    out += ',' + fmt("%.8g", pt.std_err);
    out += ',' + std::to_string(pt.master_seed);
    out += '\n';
  }
  return out;
}

unsigned default_workers() {
  if (const char* env = std::getenv("XYZ2SIM_WORKERS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return unsigned(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

}  // namespace xyz2
