#include "xyz2/noise.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace xyz2 {

char axis_char(Axis a) {
  switch (a) {
    case Axis::X: return 'X';
    case Axis::Y: return 'Y';
    case Axis::Z: return 'Z';
  }
  return '?';
}

Axis axis_from_char(char c) {
  switch (c) {
    case 'X': case 'x': return Axis::X;
    case 'Y': case 'y': return Axis::Y;
    case 'Z': case 'z': return Axis::Z;
    default: throw std::invalid_argument(std::string("invalid axis '") + c + "'");
  }
}

uint8_t axis_letter(Axis a) {
  switch (a) {
    case Axis::X: return letter::X;
    case Axis::Y: return letter::Y;
    case Axis::Z: return letter::Z;
  }
  return letter::I;
}

bool NoiseParams::pure() const { return std::isinf(eta); }

double NoiseParams::letter_prob(uint8_t code) const {
  switch (code) {
    case letter::I: return 1.0 - p;
    case letter::X: return px;
    case letter::Y: return py;
    case letter::Z: return pz;
    default: throw std::invalid_argument("letter_prob: invalid letter code");
  }
}

std::array<double, 4> NoiseParams::log_letter_probs() const {
  std::array<double, 4> lp{};
  for (uint8_t c = 0; c < 4; ++c) {
    double v = letter_prob(c);
    lp[c] = v > 0 ? std::log(v) : -std::numeric_limits<double>::infinity();
  }
  return lp;
}

NoiseParams make_noise(double p, double eta, Axis axis) {
  if (!(p >= 0.0 && p < 1.0))
    throw std::invalid_argument("make_noise: total error probability must satisfy 0 <= p < 1");
  if (std::isnan(eta) || !(eta > 0.0))
    throw std::invalid_argument("make_noise: bias eta must be positive (or inf)");

  NoiseParams n;
  n.p = p;
  n.eta = eta;
  n.axis = axis;

  double ax, off;
  if (std::isinf(eta)) {
    ax = p;
    off = 0.0;
  } else if (eta == 0.5) {
    ax = p / 3.0;  // depolarizing: all three letters share one value exactly
    off = ax;
  } else {
    ax = p * (eta / (1.0 + eta));
    off = (p - ax) / 2.0;
  }
  switch (axis) {
    case Axis::X: n.px = ax; n.py = off; n.pz = off; break;
    case Axis::Y: n.py = ax; n.px = off; n.pz = off; break;
    case Axis::Z: n.pz = ax; n.px = off; n.py = off; break;
  }
  return n;
}

PauliOperator sample_chain(const NoiseParams& noise, std::size_t n,
                           const SplitStream& trial_stream) {
  // Threshold layout: [0, p_axis) -> axis letter, then the two off-axis
  // letters in fixed X < Y < Z order, then identity. Keeping the off-axis
  // slots in global letter order makes runs with relabeled bias axes sample
  // relabeled chains at identical stream values.
  uint8_t ax = axis_letter(noise.axis);
  uint8_t off1, off2;
  switch (noise.axis) {
    case Axis::X: off1 = letter::Y; off2 = letter::Z; break;
    case Axis::Y: off1 = letter::X; off2 = letter::Z; break;
    default:      off1 = letter::X; off2 = letter::Y; break;
  }
  double t0 = noise.letter_prob(ax);
  double t1 = t0 + noise.letter_prob(off1);

  PauliOperator chain(n);
  for (std::size_t q = 0; q < n; ++q) {
    double u = trial_stream.uniform_at(q);
    if (u >= noise.p) continue;
    chain.set_letter(q, u < t0 ? ax : (u < t1 ? off1 : off2));
  }
  return chain;
}

double chain_log_prob(const NoiseParams& noise, const PauliOperator& chain) {
  auto lp = noise.log_letter_probs();
  double total = 0.0;
  for (std::size_t q = 0; q < chain.num_qubits(); ++q) {
    double v = lp[chain.letter(q)];
    if (v == -std::numeric_limits<double>::infinity()) return v;
    total += v;
  }
  return total;
}

NoiseParams parse_noise_spec(const std::string& spec) {
  double p = -1.0, eta = -1.0;
  bool have_axis = false;
  Axis axis = Axis::Z;

  std::size_t pos = 0;
  while (pos < spec.size()) {
    std::size_t end = spec.find(',', pos);
    if (end == std::string::npos) end = spec.size();
    std::string field = spec.substr(pos, end - pos);
    std::size_t eq = field.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("noise spec field '" + field + "' is not key=value");
    std::string key = field.substr(0, eq);
    std::string val = field.substr(eq + 1);
    if (key == "p") {
      try {
        p = std::stod(val);
      } catch (const std::exception&) {
        throw std::invalid_argument("noise spec: bad value for p: '" + val + "'");
      }
    } else if (key == "eta") {
      if (val == "inf" || val == "Inf" || val == "INF") {
        eta = std::numeric_limits<double>::infinity();
      } else {
        try {
          eta = std::stod(val);
        } catch (const std::exception&) {
          throw std::invalid_argument("noise spec: bad value for eta: '" + val + "'");
        }
      }
    } else if (key == "axis") {
      if (val.size() != 1)
        throw std::invalid_argument("noise spec: bad value for axis: '" + val + "'");
      axis = axis_from_char(val[0]);
      have_axis = true;
    } else {
      throw std::invalid_argument("noise spec: unknown key '" + key + "'");
    }
    pos = end + 1;
  }
  if (p < 0) throw std::invalid_argument("noise spec: missing p");
  if (eta < 0 && !std::isinf(eta)) throw std::invalid_argument("noise spec: missing eta");
  if (!have_axis) throw std::invalid_argument("noise spec: missing axis");
  return make_noise(p, eta, axis);
}

std::string noise_spec_string(const NoiseParams& noise) {
  char buf[96];
  if (noise.pure())
    std::snprintf(buf, sizeof buf, "p=%.17g,eta=inf,axis=%c", noise.p, axis_char(noise.axis));
  else
    std::snprintf(buf, sizeof buf, "p=%.17g,eta=%.17g,axis=%c", noise.p, noise.eta,
                  axis_char(noise.axis));
  return buf;
}

}  // namespace xyz2
