#pragma once

#include <array>
#include <string>

#include "xyz2/pauli.hpp"
#include "xyz2/rng.hpp"

namespace xyz2 {

enum class Axis : uint8_t { X = 0, Y = 1, Z = 2 };

char axis_char(Axis a);
Axis axis_from_char(char c);
uint8_t axis_letter(Axis a);  // bit-encoded letter code of the axis

// Biased i.i.d. Pauli channel. eta is the ratio of the axis-letter
// probability to the sum of the other two (which are equal); eta = 0.5 is
// depolarizing, eta = inf is pure noise and is represented exactly.
struct NoiseParams {
  double p = 0;
  double eta = 0.5;
  Axis axis = Axis::Z;
  double px = 0, py = 0, pz = 0;

  bool pure() const;
  double letter_prob(uint8_t letter_code) const;  // includes I
  // log probabilities indexed by bit-encoded letter; zero-probability
  // letters map to -infinity.
  std::array<double, 4> log_letter_probs() const;
};

NoiseParams make_noise(double p, double eta, Axis axis);

// One i.i.d. sample over n qubits. The draw for qubit q uses the stream's
// value at index q, so it is a pure function of (stream key, q).
PauliOperator sample_chain(const NoiseParams& noise, std::size_t n,
                           const SplitStream& trial_stream);

// Sum over qubits of the log probability of each letter; -infinity when the
// chain contains a zero-probability letter.
double chain_log_prob(const NoiseParams& noise, const PauliOperator& chain);

// "p=<float>,eta=<float|inf>,axis=<X|Y|Z>"
NoiseParams parse_noise_spec(const std::string& spec);
std::string noise_spec_string(const NoiseParams& noise);

}  // namespace xyz2
