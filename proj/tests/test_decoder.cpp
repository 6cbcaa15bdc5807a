#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "xyz2/code.hpp"
#include "xyz2/decoder.hpp"
#include "xyz2/errors.hpp"
#include "xyz2/noise.hpp"
#include "xyz2/rng.hpp"

using namespace xyz2;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Flagged-generator counts by kind.
struct FlagCount {
  std::size_t plaquettes = 0, links = 0, halves = 0;
};

FlagCount flag_count(const StabilizerCode& code, const Syndrome& s) {
  FlagCount f;
  for (std::size_t g = 0; g < code.generators.size(); ++g) {
    if (!s.bits.get(g)) continue;
    switch (code.generators[g].kind) {
      case GeneratorKind::Plaquette: ++f.plaquettes; break;
      case GeneratorKind::Link: ++f.links; break;
      default: ++f.halves; break;
    }
  }
  return f;
}

PauliOperator random_pauli(std::size_t n, SplitStream& rng) {
  PauliOperator p(n);
  for (std::size_t q = 0; q < n; ++q) p.set_letter(q, uint8_t(rng.next_below(4)));
  return p;
}

}  // namespace

TEST_CASE("syndromes of isolated bulk errors on d = 5") {
  StabilizerCode code = build_xyz2(5);
  // Bulk qubits: both halves of the central link (r, c) = (2, 2).
  std::size_t bottom = 2 * (2 * 5 + 2), top = bottom + 1;
  for (std::size_t q : {bottom, top}) {
    FlagCount fx = flag_count(code, syndrome_of(code, PauliOperator::single(code.n, q, letter::X)));
    CHECK(fx.plaquettes == 2);
    CHECK(fx.links == 0);
    CHECK(fx.halves == 0);

    FlagCount fz = flag_count(code, syndrome_of(code, PauliOperator::single(code.n, q, letter::Z)));
    CHECK(fz.plaquettes == 2);
    CHECK(fz.links == 1);

    FlagCount fy = flag_count(code, syndrome_of(code, PauliOperator::single(code.n, q, letter::Y)));
    CHECK(fy.plaquettes == 2);
    CHECK(fy.links == 1);
  }
}

TEST_CASE("syndrome basics and linearity") {
  StabilizerCode code = build_xyz2(3);
  CHECK_FALSE(syndrome_of(code, PauliOperator(code.n)).bits.any());
  CHECK_THROWS_AS(syndrome_of(code, PauliOperator(5)), std::invalid_argument);

  SplitStream rng(3);
  for (int iter = 0; iter < 200; ++iter) {
    PauliOperator a = random_pauli(code.n, rng);
    PauliOperator b = random_pauli(code.n, rng);
    BitVec lhs = syndrome_of(code, pauli_mul(a, b)).bits;
    BitVec rhs = syndrome_of(code, a).bits;
    rhs.xor_with(syndrome_of(code, b).bits);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("pure_error realizes every syndrome it is given") {
  StabilizerCode code = build_xyz2(3);
  PureErrorSolver solver(code);

  CHECK(solver.solve(Syndrome{BitVec(17)}).is_identity());

  SplitStream rng(11);
  for (int iter = 0; iter < 1000; ++iter) {
    Syndrome s = syndrome_of(code, random_pauli(code.n, rng));
    PauliOperator e = solver.solve(s);
    CHECK(syndrome_of(code, e) == s);
  }

  // A syndrome with exactly one link bit set is still realizable.
  for (std::size_t g = 0; g < code.generators.size(); ++g) {
    if (code.generators[g].kind != GeneratorKind::Link) continue;
    Syndrome s{BitVec(17)};
    s.bits.set(g, true);
    CHECK(syndrome_of(code, solver.solve(s)) == s);
    break;
  }

  CHECK_THROWS_AS(solver.solve(Syndrome{BitVec(5)}), std::invalid_argument);
}

TEST_CASE("logical_class identities") {
  StabilizerCode code = build_xyz2(3);
  SplitStream rng(17);
  PauliOperator e = random_pauli(code.n, rng);

  CHECK(logical_class(code, e, e) == LogicalClass::I);
  CHECK(logical_class(code, e, pauli_mul(e, code.logical_x)) == LogicalClass::X);
  CHECK(logical_class(code, e, pauli_mul(e, code.logical_z)) == LogicalClass::Z);
  CHECK(logical_class(code, e, pauli_mul(e, code.logical_y())) == LogicalClass::Y);

  // Multiplying the recovery by stabilizers never changes the class.
  PauliOperator deformed = e;
  for (std::size_t g = 0; g < code.generators.size(); ++g)
    if (rng.next_below(2)) deformed.mul_inplace(code.generators[g].op);
  CHECK(logical_class(code, e, deformed) == LogicalClass::I);

  CHECK_THROWS_AS(logical_class(code, e, pauli_mul(e, PauliOperator::single(code.n, 0, letter::X))),
                  std::invalid_argument);
}

TEST_CASE("exact decoder picks I for the zero syndrome at low rates") {
  StabilizerCode code = build_xyz2(3);
  NoiseParams noise = make_noise(0.05, 0.5, Axis::Z);
  DecodeResult r = exact_mld_decode(code, Syndrome{BitVec(17)}, noise);
  CHECK(r.chosen == LogicalClass::I);
  CHECK(r.class_scores[0] > r.class_scores[1]);
  CHECK(r.class_scores[0] > r.class_scores[2]);
  CHECK(r.class_scores[0] > r.class_scores[3]);
}

TEST_CASE("exact decoder rejects codes over the qubit cap") {
  CHECK_THROWS_AS(ExactMldDecoder(build_xyz2(5)), CapabilityError);
}

TEST_CASE("under pure Z noise at p = 0.5 the two reachable classes tie exactly") {
  StabilizerCode code = build_xyz2(3);
  NoiseParams noise = make_noise(0.5, kInf, Axis::Z);
  ExactMldDecoder dec(code);
  SplitStream rng(23);
  for (int t = 0; t < 20; ++t) {
    PauliOperator chain = sample_chain(noise, code.n, rng.child(t));
    DecodeResult r = dec.decode(syndrome_of(code, chain), noise);
    int finite = 0, tied = 0;
    double best = -kInf;
    for (double sc : r.class_scores) best = std::max(best, sc);
    for (double sc : r.class_scores) {
      if (sc != -kInf) ++finite;
      if (sc == best) ++tied;
    }
    CHECK(finite == 2);
    CHECK(tied == 2);  // bitwise equal scores
    // Tie-break picks the lower class index.
    for (int c = 0; c < int(r.chosen); ++c) CHECK(r.class_scores[c] < best);
  }
}

TEST_CASE("exact class sums match an independent affine-coset enumeration") {
  StabilizerCode code = build_xyz2(3);
  PureErrorSolver solver(code);
  ExactMldDecoder dec(code);
  NoiseParams noise = make_noise(0.12, 3.0, Axis::Z);
  auto basis = solver.coset_nullspace();
  REQUIRE(basis.size() == code.n + 1);  // stabilizers + logicals

  SplitStream rng(29);
  for (int t = 0; t < 3; ++t) {
    PauliOperator chain = sample_chain(noise, code.n, rng.child(t));
    Syndrome s = syndrome_of(code, chain);
    DecodeResult r = dec.decode(s, noise);

    // Enumerate the whole coset {pure_error(s) + nullspace} chain by chain.
    PauliOperator seed = solver.solve(s);
    double sums[4] = {0, 0, 0, 0};
    std::size_t count = std::size_t(1) << basis.size();
    for (std::size_t mask = 0; mask < count; ++mask) {
      BitVec row = seed.symplectic_row();
      for (std::size_t i = 0; i < basis.size(); ++i)
        if ((mask >> i) & 1u) row.xor_with(basis[i]);
      PauliOperator member = PauliOperator::from_symplectic_row(row);
      LogicalClass cls = logical_class(code, member, seed);
      sums[int(cls)] += std::exp(chain_log_prob(noise, member));
    }
    for (int c = 0; c < 4; ++c)
      CHECK(r.linear_scores[c] == doctest::Approx(sums[c]).epsilon(1e-10));
  }
}

TEST_CASE("exact class sums over all syndromes add to one (xzzx d = 3)") {
  StabilizerCode code = build_xzzx(3);
  ExactMldDecoder dec(code);
  NoiseParams noise = make_noise(0.17, 2.0, Axis::Y);
  double total = 0;
  for (std::size_t bits = 0; bits < 256; ++bits) {
    Syndrome s{BitVec(8)};
    for (std::size_t g = 0; g < 8; ++g) s.bits.set(g, (bits >> g) & 1u);
    DecodeResult r = dec.decode(s, noise);
    for (double v : r.linear_scores) total += v;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("EWD decodes trivial and single-error syndromes like the oracle") {
  StabilizerCode code = build_xyz2(3);
  NoiseParams noise = make_noise(0.05, 0.5, Axis::Z);
  EwdDecoder ewd(code, DecoderConfig::defaults(code, noise));
  SplitStream rng(31);

  DecodeResult zero = ewd.decode(Syndrome{BitVec(17)}, noise, rng.child(0));
  CHECK(zero.chosen == LogicalClass::I);

  // A single bulk X error: class I both for EWD and the exact oracle.
  std::size_t bulk_bottom = 2 * (1 * 3 + 1);
  Syndrome s = syndrome_of(code, PauliOperator::single(code.n, bulk_bottom, letter::X));
  DecodeResult r = ewd.decode(s, noise, rng.child(1));
  CHECK(r.chosen == LogicalClass::I);
  CHECK(exact_mld_decode(code, s, noise).chosen == LogicalClass::I);
  CHECK(r.diagnostics.proposals_attempted == 4 * ewd.config().steps_per_class);
}

TEST_CASE("EWD agrees with the exact oracle on sampled syndromes") {
  StabilizerCode code = build_xyz2(3);
  NoiseParams noise = make_noise(0.10, 0.5, Axis::Z);
  ExactMldDecoder exact(code);
  EwdDecoder ewd(code, DecoderConfig::with_p_sample(code, noise, 0.3));
  SplitStream rng(12345);

  const int trials = 300;
  int agree = 0;
  for (int t = 0; t < trials; ++t) {
    SplitStream st = rng.child(t);
    Syndrome s = syndrome_of(code, sample_chain(noise, code.n, st.child(0)));
    if (ewd.decode(s, noise, st.child(1)).chosen == exact.decode(s, noise).chosen) ++agree;
  }
  CHECK(double(agree) / trials >= 0.95);
}

TEST_CASE("EWD agreement with the oracle grows with the step budget") {
  StabilizerCode code = build_xyz2(3);
  NoiseParams noise = make_noise(0.10, 0.5, Axis::Z);
  ExactMldDecoder exact(code);
  SplitStream rng(777);

  const int trials = 200;
  std::vector<Syndrome> syndromes;
  std::vector<LogicalClass> truth;
  for (int t = 0; t < trials; ++t) {
    Syndrome s = syndrome_of(code, sample_chain(noise, code.n, rng.child(t).child(0)));
    truth.push_back(exact.decode(s, noise).chosen);
    syndromes.push_back(std::move(s));
  }

  double rates[3];
  std::size_t budgets[3] = {10 * code.n, 100 * code.n, 1000 * code.n};
  for (int b = 0; b < 3; ++b) {
    DecoderConfig cfg = DecoderConfig::with_p_sample(code, noise, 0.2);
    cfg.steps_per_class = budgets[b];
    cfg.burn_in = std::min<std::size_t>(cfg.burn_in, budgets[b] / 2);
    EwdDecoder ewd(code, cfg);
    int agree = 0;
    for (int t = 0; t < trials; ++t)
      if (ewd.decode(syndromes[t], noise, rng.child(t).child(1)).chosen == truth[t]) ++agree;
    rates[b] = double(agree) / trials;
  }
  CHECK(rates[0] <= rates[1]);
  CHECK(rates[1] <= rates[2]);
}

TEST_CASE("Metropolis walks never leave the syndrome coset") {
  StabilizerCode code = build_xyz2(3);
  NoiseParams noise = make_noise(0.15, 0.5, Axis::Z);
  DecoderConfig cfg = DecoderConfig::defaults(code, noise);
  cfg.paranoid_checks = true;
  EwdDecoder ewd(code, cfg);
  SplitStream rng(41);
  for (int t = 0; t < 5; ++t) {
    Syndrome s = syndrome_of(code, sample_chain(noise, code.n, rng.child(t).child(0)));
    CHECK_NOTHROW(ewd.decode(s, noise, rng.child(t).child(1)));
  }
}

TEST_CASE("pure-noise walks keep the chosen class at finite score") {
  StabilizerCode code = build_xyz2(3);
  NoiseParams noise = make_noise(0.3, kInf, Axis::Z);
  EwdDecoder ewd(code, DecoderConfig::defaults(code, noise));
  SplitStream rng(43);
  PauliOperator chain = sample_chain(noise, code.n, rng.child(0).child(0));
  Syndrome s = syndrome_of(code, chain);
  DecodeResult r = ewd.decode(s, noise, rng.child(0).child(1));
  CHECK(r.class_scores[int(r.chosen)] != -kInf);
}

TEST_CASE("unique-chain cap saturates and is reported") {
  StabilizerCode code = build_xyz2(3);
  NoiseParams noise = make_noise(0.3, 0.5, Axis::Z);
  DecoderConfig cfg = DecoderConfig::with_p_sample(code, noise, 0.5);
  cfg.unique_chain_cap = 4;
  EwdDecoder ewd(code, cfg);
  SplitStream rng(47);
  DecodeResult r = ewd.decode(Syndrome{BitVec(17)}, noise, rng);
  for (int c = 0; c < 4; ++c) {
    CHECK(r.diagnostics.unique_chains[c] <= 4);
    CHECK(r.diagnostics.saturated[c]);
  }
}

TEST_CASE("decoder config invariants are enforced") {
  StabilizerCode code = build_xyz2(3);
  NoiseParams noise = make_noise(0.1, 0.5, Axis::Z);
  DecoderConfig cfg = DecoderConfig::defaults(code, noise);
  cfg.burn_in = cfg.steps_per_class + 1;
  CHECK_THROWS_AS(cfg.check(), std::invalid_argument);
  cfg = DecoderConfig::defaults(code, noise);
  cfg.unique_chain_cap = 0;
  CHECK_THROWS_AS(cfg.check(), std::invalid_argument);
  CHECK_THROWS_AS(DecoderConfig::with_p_sample(code, noise, 0.0), std::invalid_argument);
}

TEST_CASE("p_sample defaults and presets") {
  CHECK(default_p_sample(make_noise(0.01, 0.5, Axis::Z)) == 0.05);
  CHECK(default_p_sample(make_noise(0.3, 0.5, Axis::Z)) == 0.3);
  CHECK(default_p_sample(make_noise(0.7, 0.5, Axis::Z)) == 0.6);
  CHECK(preset_p_sample(make_noise(0.1, 10.0, Axis::Z)) == 0.26);
  CHECK(preset_p_sample(make_noise(0.35, 10.0, Axis::Z)) == 0.35);
  CHECK(preset_p_sample(make_noise(0.5, 10.0, Axis::Z)) == 0.41);
  CHECK(preset_p_sample(make_noise(0.1, 10.0, Axis::X)) == 0.14);
  CHECK(preset_p_sample(make_noise(0.1, 10.0, Axis::Y)) == 0.26);
  CHECK(preset_p_sample(make_noise(0.1, 0.5, Axis::Z)) == 0.1);
}

TEST_CASE("decode result serializes to the documented JSON shape") {
  StabilizerCode code = build_xyz2(3);
  NoiseParams noise = make_noise(0.05, 0.5, Axis::Z);
  DecodeResult r = exact_mld_decode(code, Syndrome{BitVec(17)}, noise);
  std::string j = r.to_json();
  CHECK(j.find("\"class_scores\":[") != std::string::npos);
  CHECK(j.find("\"chosen\":\"I\"") != std::string::npos);
  CHECK(j.find("\"diagnostics\":{") != std::string::npos);
  CHECK(j.find("\"unique_chains\":[") != std::string::npos);
}
