#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "xyz2/analytic.hpp"
#include "xyz2/code.hpp"
#include "xyz2/errors.hpp"
#include "xyz2/experiment.hpp"

using namespace xyz2;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

ExperimentSpec base_spec() {
  ExperimentSpec spec;
  spec.name = "test";
  spec.family = CodeFamily::Xyz2;
  spec.distances = {3};
  spec.p_values = {0.1};
  spec.eta = 0.5;
  spec.axis = Axis::Z;
  spec.decoder.choice = DecoderChoice::Exact;
  spec.trials = 200;
  spec.master_seed = 99;
  return spec;
}

}  // namespace

TEST_CASE("no errors means no failures") {
  StabilizerCode code = build_xyz2(3);
  NoiseParams noise = make_noise(0.0, 0.5, Axis::Z);
  DecoderSpec dec;
  dec.choice = DecoderChoice::Ewd;
  PointResult r = run_trials(code, noise, dec, 50, SplitStream(5).child(0), 2, 5);
  CHECK(r.failures == 0);
  CHECK(r.pf == 0.0);
  CHECK(r.std_err == 0.0);
}

TEST_CASE("results are byte-identical for any worker count") {
  ExperimentSpec spec = base_spec();
  spec.p_values = {0.08, 0.12};
  ExperimentResult a = sweep(spec, 1);
  ExperimentResult b = sweep(spec, 2);
  ExperimentResult c = sweep(spec, 7);
  CHECK(results_csv(a.points) == results_csv(b.points));
  CHECK(results_csv(a.points) == results_csv(c.points));
  // And a different seed changes the outcome.
  spec.master_seed = 100;
  ExperimentResult d = sweep(spec, 2);
  CHECK(results_csv(a.points) != results_csv(d.points));
}

TEST_CASE("sweep emits the full (d, p) product with provenance") {
  ExperimentSpec spec = base_spec();
  spec.decoder.choice = DecoderChoice::Ewd;
  spec.distances = {3, 5};
  spec.p_values = {0.05, 0.1, 0.15};
  spec.trials = 20;
  ExperimentResult r = sweep(spec, 2);
  REQUIRE(r.points.size() == 6);
  CHECK(r.code_checksums.at(3) == build_xyz2(3).checksum());
  CHECK(r.code_checksums.at(5) == build_xyz2(5).checksum());
  for (const PointResult& pt : r.points) {
    CHECK(pt.trials == 20);
    CHECK(pt.master_seed == 99);
    CHECK(pt.failures <= pt.trials);
  }
  std::string csv = results_csv(r.points);
  CHECK(csv.find("family,d,n,p,eta,axis,decoder,p_sample,trials,failures,pf,stderr,seed") == 0);
  CHECK(csv.find("xyz2,5,50,") != std::string::npos);
}

TEST_CASE("analytic sweeps are exact with zero statistical error") {
  ExperimentSpec spec = base_spec();
  spec.decoder.choice = DecoderChoice::Analytic;
  spec.eta = kInf;
  spec.axis = Axis::Z;
  spec.distances = {3, 5, 7};
  spec.p_values = {0.1, 0.3, 0.5};
  ExperimentResult r = sweep(spec, 2);
  REQUIRE(r.points.size() == 9);
  for (const PointResult& pt : r.points) {
    CHECK(pt.std_err == 0.0);
    CHECK(pt.trials == 0);
    CHECK(pt.pf == analytic_pf_pure(CodeFamily::Xyz2, pt.d, pt.p, Axis::Z));
  }
}

TEST_CASE("the analytic decoder refuses finite bias") {
  ExperimentSpec spec = base_spec();
  spec.decoder.choice = DecoderChoice::Analytic;
  spec.eta = 10.0;
  CHECK_THROWS_AS(sweep(spec, 1), std::invalid_argument);
}

TEST_CASE("the exact decoder is size-capped through the spec check") {
  ExperimentSpec spec = base_spec();
  spec.distances = {5};
  CHECK_THROWS_AS(spec.check(), CapabilityError);
}

TEST_CASE("spec validation rejects malformed experiments") {
  ExperimentSpec spec = base_spec();
  spec.trials = 0;
  CHECK_THROWS_AS(spec.check(), std::invalid_argument);
  spec = base_spec();
  spec.p_values = {1.2};
  CHECK_THROWS_AS(spec.check(), std::invalid_argument);
  spec = base_spec();
  spec.distances = {4};
  CHECK_THROWS_AS(spec.check(), std::invalid_argument);
}

TEST_CASE("threshold estimation on exact analytic curves lands on 0.5") {
  ExperimentSpec spec = base_spec();
  spec.decoder.choice = DecoderChoice::Analytic;
  spec.eta = kInf;
  spec.distances = {3, 5};
  spec.p_values = {0.3, 0.35, 0.4, 0.45, 0.5};
  ExperimentResult r = sweep(spec, 1);
  ThresholdEstimate est = estimate_threshold(r.points, 3, 5);
  CHECK(est.p_th == 0.5);
  CHECK(est.lo <= est.p_th);
  CHECK(est.hi >= est.p_th);
}

TEST_CASE("threshold estimation fails cleanly when not bracketed") {
  ExperimentSpec spec = base_spec();
  spec.decoder.choice = DecoderChoice::Analytic;
  spec.eta = kInf;
  spec.distances = {3, 5};
  spec.p_values = {0.1, 0.2, 0.3};
  ExperimentResult r = sweep(spec, 1);
  CHECK_THROWS_AS(estimate_threshold(r.points, 3, 5), NotBracketedError);

  // Mismatched grids are a usage error.
  r.points.pop_back();
  CHECK_THROWS_AS(estimate_threshold(r.points, 3, 5), std::invalid_argument);
}

TEST_CASE("Z-biased and Y-biased runs fail on exactly the same trials") {
  ExperimentSpec spec = base_spec();
  spec.eta = 10.0;
  spec.p_values = {0.18};
  spec.trials = 1500;
  spec.axis = Axis::Z;
  ExperimentResult rz = sweep(spec, 2);
  spec.axis = Axis::Y;
  ExperimentResult ry = sweep(spec, 2);
  CHECK(rz.points[0].failures == ry.points[0].failures);
}

TEST_CASE("sub-threshold depolarizing failure rates fall with distance") {
  ExperimentSpec spec = base_spec();
  spec.decoder.choice = DecoderChoice::Ewd;
  spec.decoder.p_sample = 0.3;
  spec.distances = {3, 5};
  spec.p_values = {0.10};
  spec.trials = 1500;
  ExperimentResult r = sweep(spec, 2);
  REQUIRE(r.points.size() == 2);
  CHECK(r.points[1].pf < r.points[0].pf);
}

TEST_CASE("exact Monte Carlo matches the analytic pure-Z curve" * doctest::timeout(3000)) {
  // 1e5 exact-MLD trials at (xyz2 d=3, pure Z, p=0.3) against the closed form.
  StabilizerCode code = build_xyz2(3);
  NoiseParams noise = make_noise(0.3, kInf, Axis::Z);
  DecoderSpec dec;
  dec.choice = DecoderChoice::Exact;
  const uint64_t trials = 100000;
  PointResult r = run_trials(code, noise, dec, trials, SplitStream(2024).child(0),
                             default_workers(), 2024);
  double expect = analytic_pf_pure(CodeFamily::Xyz2, 3, 0.3, Axis::Z);
  double sigma = std::sqrt(expect * (1 - expect) / double(trials));
  CHECK(std::abs(r.pf - expect) < 3 * sigma);
}
