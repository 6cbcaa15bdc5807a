// Command-line workbench for the XYZ^2 hexagonal stabilizer code and its
// square-lattice baselines: build and validate codes, evaluate analytic
// pure-noise failure curves, decode single syndromes, run seeded Monte-Carlo
// failure-rate sweeps, and estimate thresholds from curve crossings.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "xyz2/analytic.hpp"
#include "xyz2/code.hpp"
#include "xyz2/decoder.hpp"
#include "xyz2/errors.hpp"
#include "xyz2/experiment.hpp"
#include "xyz2/validate.hpp"

using nlohmann::json;
using namespace xyz2;

namespace {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kValidationFailed = 3,
  kCapability = 4,
  kNotBracketed = 5,
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t end = s.find(sep, pos);
    if (end == std::string::npos) end = s.size();
    out.push_back(s.substr(pos, end - pos));
    pos = end + 1;
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  for (const std::string& tok : split(s, ',')) out.push_back(std::stoi(tok));
  return out;
}

// "0.1,0.2,0.3" or "lo:hi:step"
std::vector<double> parse_grid(const std::string& s) {
  std::vector<double> out;
  if (s.find(':') != std::string::npos) {
    auto parts = split(s, ':');
    if (parts.size() != 3) throw std::invalid_argument("grid must be lo:hi:step");
    double lo = std::stod(parts[0]), hi = std::stod(parts[1]), step = std::stod(parts[2]);
    if (step <= 0) throw std::invalid_argument("grid step must be positive");
    for (int i = 0;; ++i) {
      double v = lo + i * step;
      if (v > hi + step * 1e-9) break;
      out.push_back(v);
    }
  } else {
    for (const std::string& tok : split(s, ',')) out.push_back(std::stod(tok));
  }
  if (out.empty()) throw std::invalid_argument("empty grid");
  return out;
}

double parse_eta(const std::string& s) {
  if (s == "inf" || s == "Inf" || s == "INF") return std::numeric_limits<double>::infinity();
  return std::stod(s);
}

// p_sample option: a number, "default", or "preset".
void apply_p_sample(DecoderSpec& dec, const std::string& value) {
  if (value.empty() || value == "default") return;
  if (value == "preset") {
    dec.p_sample_preset = true;
    return;
  }
  dec.p_sample = std::stod(value);
}

json decoder_spec_json(const DecoderSpec& d) {
  json j;
  j["choice"] = decoder_choice_name(d.choice);
  if (d.p_sample) j["p_sample"] = *d.p_sample;
  if (d.p_sample_preset) j["p_sample_preset"] = true;
  if (d.steps_per_class) j["steps_per_class"] = *d.steps_per_class;
  if (d.burn_in) j["burn_in"] = *d.burn_in;
  return j;
}

json spec_json(const ExperimentSpec& s) {
  json j;
  j["name"] = s.name;
  j["family"] = family_name(s.family);
  j["d"] = s.distances;
  j["p"] = s.p_values;
  j["eta"] = std::isinf(s.eta) ? json("inf") : json(s.eta);
  j["axis"] = std::string(1, axis_char(s.axis));
  j["decoder"] = decoder_spec_json(s.decoder);
  j["trials"] = s.trials;
  j["master_seed"] = s.master_seed;
  return j;
}

void write_sidecar(const std::string& out_path, const json& j) {
  write_file(out_path + ".json", j.dump(2) + "\n");
}

// --- experiment config file -------------------------------------------------
//
// Flat key = value lines with one [section] per sweep; keys before the first
// section set defaults. Malformed lines are reported with their line number.

struct ConfigDefaults {
  uint64_t seed = 0;
  std::optional<unsigned> workers;
  uint64_t trials = 10000;
};

struct ParsedConfig {
  ConfigDefaults defaults;
  std::vector<ExperimentSpec> sweeps;
};

[[noreturn]] void config_error(const std::string& path, int line, const std::string& msg) {
  throw std::invalid_argument(path + ":" + std::to_string(line) + ": " + msg);
}

ParsedConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");

  ParsedConfig cfg;
  ExperimentSpec* cur = nullptr;
  std::string raw;
  int lineno = 0;
  std::string p_sample_value;

  auto finish_section = [&]() {
    if (cur) {
      apply_p_sample(cur->decoder, p_sample_value);
      p_sample_value.clear();
    }
  };

  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    auto notspace = [](unsigned char c) { return !std::isspace(c); };
    line.erase(line.begin(), std::find_if(line.begin(), line.end(), notspace));
    line.erase(std::find_if(line.rbegin(), line.rend(), notspace).base(), line.end());
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') config_error(path, lineno, "unterminated section header");
      finish_section();
      cfg.sweeps.emplace_back();
      cur = &cfg.sweeps.back();
      cur->name = line.substr(1, line.size() - 2);
      cur->master_seed = cfg.defaults.seed;
      cur->trials = cfg.defaults.trials;
      continue;
    }

    auto eq = line.find('=');
    if (eq == std::string::npos) config_error(path, lineno, "expected key = value");
    std::string key = line.substr(0, eq);
    std::string val = line.substr(eq + 1);
    key.erase(std::find_if(key.rbegin(), key.rend(), notspace).base(), key.end());
    val.erase(val.begin(), std::find_if(val.begin(), val.end(), notspace));

    try {
      if (!cur) {
        if (key == "seed")
          cfg.defaults.seed = std::stoull(val);
        else if (key == "workers")
          cfg.defaults.workers = unsigned(std::stoul(val));
        else if (key == "trials")
          cfg.defaults.trials = std::stoull(val);
        else
          config_error(path, lineno, "unknown global key '" + key + "'");
        continue;
      }
      if (key == "family")
        cur->family = family_from_name(val);
      else if (key == "d")
        cur->distances = parse_int_list(val);
      else if (key == "p")
        cur->p_values = parse_grid(val);
      else if (key == "eta")
        cur->eta = parse_eta(val);
      else if (key == "axis")
        cur->axis = axis_from_char(val.empty() ? '?' : val[0]);
      else if (key == "decoder")
        cur->decoder.choice = decoder_choice_from_name(val);
      else if (key == "p_sample")
        p_sample_value = val;
      else if (key == "steps_per_class")
        cur->decoder.steps_per_class = std::stoull(val);
      else if (key == "burn_in")
        cur->decoder.burn_in = std::stoull(val);
      else if (key == "trials")
        cur->trials = std::stoull(val);
      else if (key == "seed")
        cur->master_seed = std::stoull(val);
      else
        config_error(path, lineno, "unknown key '" + key + "' in section [" + cur->name + "]");
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception& e) {
      config_error(path, lineno, "bad value for '" + key + "': " + e.what());
    }
  }
  finish_section();
  if (cfg.sweeps.empty()) throw std::invalid_argument(path + ": no [sweep] sections found");
  return cfg;
}

// --- CSV re-parsing for the threshold command --------------------------------

struct CsvRow {
  std::string family;
  int d;
  double p, pf, std_err;
  std::string eta, axis, decoder;
};

std::vector<CsvRow> parse_results_csv(const std::string& text) {
  std::vector<CsvRow> rows;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty CSV");
  if (line != "family,d,n,p,eta,axis,decoder,p_sample,trials,failures,pf,stderr,seed")
    throw std::invalid_argument("unrecognized CSV header: " + line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto f = split(line, ',');
    if (f.size() != 13) throw std::invalid_argument("bad CSV row: " + line);
    CsvRow r;
    r.family = f[0];
    r.d = std::stoi(f[1]);
    r.p = std::stod(f[3]);
    r.eta = f[4];
    r.axis = f[5];
    r.decoder = f[6];
    r.pf = std::stod(f[10]);
    r.std_err = std::stod(f[11]);
    rows.push_back(std::move(r));
  }
  return rows;
}

StabilizerCode build_family_code(CodeFamily family, int d) {
  switch (family) {
    case CodeFamily::Xyz2: return build_xyz2(d);
    case CodeFamily::Xzzx: return build_xzzx(d);
    case CodeFamily::RotatedSurface: return build_rotated_surface(d);
  }
  throw std::invalid_argument("unknown family");
}

// --- subcommands --------------------------------------------------------------

struct BuildArgs {
  std::string family;
  int d = 3;
  std::string out;
  bool distances = false;
};

int cmd_build(const BuildArgs& a) {
  StabilizerCode code = build_family_code(family_from_name(a.family), a.d);
  ValidationReport report = validate_code(code, a.distances);
  std::string text = code.save_text();
  if (!a.out.empty()) {
    write_file(a.out, text);
    json side;
    side["subcommand"] = "build";
    side["family"] = a.family;
    side["d"] = a.d;
    side["distances"] = a.distances;
    side["checksum"] = code.checksum();
    write_sidecar(a.out, side);
    std::cout << "wrote " << a.out << " (" << code.generators.size() << " generators, n=" << code.n
              << ")\n";
  } else {
    std::cout << text;
  }
  std::ostream& rep_out = a.out.empty() ? std::cerr : std::cout;
  rep_out << report.summary();
  return report.all_ok() ? kOk : kValidationFailed;
}

struct ValidateArgs {
  std::string code_file;
  bool distances = false;
};

int cmd_validate(const ValidateArgs& a) {
  StabilizerCode code = StabilizerCode::load_text(read_file(a.code_file));
  ValidationReport report = validate_code(code, a.distances);
  std::cout << report.summary();
  return report.all_ok() ? kOk : kValidationFailed;
}

struct AnalyticArgs {
  std::string family = "xyz2";
  std::string d_list = "3,5,7";
  std::string axis = "Z";
  std::string p_grid = "0.05:0.5:0.05";
  std::string out;
};

int cmd_analytic(const AnalyticArgs& a) {
  CodeFamily family = family_from_name(a.family);
  Axis axis = axis_from_char(a.axis.empty() ? '?' : a.axis[0]);
  std::vector<double> ps = parse_grid(a.p_grid);
  for (double p : ps)
    if (!(p >= 0.0 && p <= 0.5))
      throw std::invalid_argument("analytic curves require p in [0, 0.5]");

  DecoderSpec dec;
  dec.choice = DecoderChoice::Analytic;
  std::vector<PointResult> points;
  SplitStream root(0);
  for (int d : parse_int_list(a.d_list)) {
    StabilizerCode code = build_family_code(family, d);
    for (double p : ps) {
      NoiseParams np = make_noise(p, std::numeric_limits<double>::infinity(), axis);
      points.push_back(run_trials(code, np, dec, 0, root, 1, 0));
    }
  }
  std::string csv = results_csv(points);
  if (a.out.empty()) {
    std::cout << csv;
  } else {
    write_file(a.out, csv);
    json side;
    side["subcommand"] = "analytic";
    side["family"] = a.family;
    side["d"] = a.d_list;
    side["axis"] = a.axis;
    side["p"] = a.p_grid;
    write_sidecar(a.out, side);
    std::cout << "wrote " << a.out << " (" << points.size() << " points)\n";
  }
  return kOk;
}

struct DecodeArgs {
  std::string code_file, syndrome, noise, decoder = "exact";
  std::string p_sample;
  uint64_t steps = 0, burn_in_steps = 0;
  bool have_burn_in = false;
  uint64_t seed = 0;
  std::string out;
};

int cmd_decode(const DecodeArgs& a) {
  StabilizerCode code = StabilizerCode::load_text(read_file(a.code_file));
  NoiseParams noise = parse_noise_spec(a.noise);
  if (a.syndrome.size() != code.generators.size())
    throw std::invalid_argument("syndrome length " + std::to_string(a.syndrome.size()) +
                                " does not match generator count " +
                                std::to_string(code.generators.size()));
  Syndrome s{BitVec::from_string(a.syndrome)};

  DecodeResult result;
  DecoderChoice choice = decoder_choice_from_name(a.decoder);
  if (choice == DecoderChoice::Exact) {
    result = exact_mld_decode(code, s, noise);
  } else if (choice == DecoderChoice::Ewd) {
    DecoderSpec dec;
    dec.choice = DecoderChoice::Ewd;
    apply_p_sample(dec, a.p_sample);
    if (a.steps) dec.steps_per_class = a.steps;
    if (a.have_burn_in) dec.burn_in = a.burn_in_steps;
    DecoderConfig cfg = dec.resolve_config(code, noise);
    result = ewd_decode(code, s, noise, cfg, SplitStream(a.seed));
  } else {
    throw std::invalid_argument("decode subcommand supports 'ewd' or 'exact'");
  }
  std::string out_json = result.to_json() + "\n";
  if (a.out.empty()) {
    std::cout << out_json;
  } else {
    write_file(a.out, out_json);
    json side;
    side["subcommand"] = "decode";
    side["code"] = a.code_file;
    side["code_checksum"] = code.checksum();
    side["syndrome"] = a.syndrome;
    side["noise"] = noise_spec_string(noise);
    side["decoder"] = a.decoder;
    side["seed"] = a.seed;
    if (!a.p_sample.empty()) side["p_sample"] = a.p_sample;
    write_sidecar(a.out, side);
  }
  return kOk;
}

struct ExperimentArgs {
  std::string config, out;
  std::optional<uint64_t> seed;
  std::optional<uint64_t> trials;
  std::optional<unsigned> workers;
  std::string p_sample;
  std::string format = "csv";
};

int cmd_experiment(const ExperimentArgs& a) {
  ParsedConfig cfg = parse_config(a.config);
  unsigned workers =
      a.workers ? *a.workers : (cfg.defaults.workers ? *cfg.defaults.workers : default_workers());

  std::vector<PointResult> all_points;
  json sweeps_json = json::array();
  for (ExperimentSpec& spec : cfg.sweeps) {
    if (a.seed) spec.master_seed = *a.seed;
    if (a.trials) spec.trials = *a.trials;
    if (!a.p_sample.empty()) {
      spec.decoder.p_sample.reset();
      spec.decoder.p_sample_preset = false;
      apply_p_sample(spec.decoder, a.p_sample);
    }
    ExperimentResult r = sweep(spec, workers);
    json sj = spec_json(spec);
    sj["code_checksums"] = json::object();
    for (auto& [d, sum] : r.code_checksums) sj["code_checksums"][std::to_string(d)] = sum;
    sweeps_json.push_back(sj);
    for (PointResult& pt : r.points) all_points.push_back(std::move(pt));
  }

  if (a.format == "json") {
    json rows = json::array();
    for (const PointResult& pt : all_points) {
      json row;
      row["family"] = family_name(pt.family);
      row["d"] = pt.d;
      row["n"] = pt.n;
      row["p"] = pt.p;
      row["eta"] = std::isinf(pt.eta) ? json("inf") : json(pt.eta);
      row["axis"] = std::string(1, axis_char(pt.axis));
      row["decoder"] = pt.decoder_label;
      row["trials"] = pt.trials;
      row["failures"] = pt.failures;
      row["pf"] = pt.pf;
      row["stderr"] = pt.std_err;
      rows.push_back(row);
    }
    write_file(a.out, rows.dump(2) + "\n");
  } else if (a.format == "csv") {
    write_file(a.out, results_csv(all_points));
  } else {
    throw std::invalid_argument("unknown format '" + a.format + "' (csv or json)");
  }

  json side;
  side["subcommand"] = "experiment";
  side["config_file"] = a.config;
  side["workers_hint"] = workers;
  side["format"] = a.format;
  side["sweeps"] = sweeps_json;
  write_sidecar(a.out, side);
  std::cout << "wrote " << a.out << " (" << all_points.size() << " points)\n";
  return kOk;
}

struct ThresholdArgs {
  std::string csv_file;
  int d_small = 3, d_large = 5;
  std::string family, axis, out;
  std::string eta;
};

int cmd_threshold(const ThresholdArgs& a) {
  std::vector<CsvRow> rows = parse_results_csv(read_file(a.csv_file));
  std::vector<PointResult> points;
  for (const CsvRow& r : rows) {
    if (!a.family.empty() && r.family != a.family) continue;
    if (!a.axis.empty() && r.axis != a.axis) continue;
    if (!a.eta.empty() && r.eta != a.eta) continue;
    PointResult pt;
    pt.family = family_from_name(r.family);
    pt.d = r.d;
    pt.p = r.p;
    pt.pf = r.pf;
    pt.std_err = r.std_err;
    points.push_back(pt);
  }
  ThresholdEstimate est = estimate_threshold(points, a.d_small, a.d_large);
  json j;
  j["p_th"] = est.p_th;
  j["interval"] = {est.lo, est.hi};
  j["d_pair"] = {a.d_small, a.d_large};
  std::string text = j.dump() + "\n";
  std::cout << text;
  if (!a.out.empty()) {
    write_file(a.out, text);
    json side;
    side["subcommand"] = "threshold";
    side["csv"] = a.csv_file;
    side["d_small"] = a.d_small;
    side["d_large"] = a.d_large;
    write_sidecar(a.out, side);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"XYZ^2 stabilizer-code simulation and decoding workbench"};
  app.require_subcommand(1);

  BuildArgs build_args;
  auto* build = app.add_subcommand("build", "construct a code and validate it");
  build->add_option("family", build_args.family, "xyz2 | xzzx | rotated_surface")->required();
  build->add_option("d", build_args.d, "odd code distance >= 3")->required();
  build->add_option("--out", build_args.out, "output code file");
  build->add_flag("--distances", build_args.distances, "run exhaustive distance searches");

  ValidateArgs validate_args;
  auto* validate = app.add_subcommand("validate", "validate a serialized code file");
  validate->add_option("--code", validate_args.code_file, "code file")->required();
  validate->add_flag("--distances", validate_args.distances, "run exhaustive distance searches");

  AnalyticArgs analytic_args;
  auto* analytic = app.add_subcommand("analytic", "closed-form pure-noise failure curves");
  analytic->add_option("--family", analytic_args.family, "xyz2 | xzzx");
  analytic->add_option("--d", analytic_args.d_list, "comma-separated distances");
  analytic->add_option("--axis", analytic_args.axis, "X | Y | Z");
  analytic->add_option("--p", analytic_args.p_grid, "p grid: list or lo:hi:step");
  analytic->add_option("--out", analytic_args.out, "output CSV");

  DecodeArgs decode_args;
  auto* decode = app.add_subcommand("decode", "decode one syndrome");
  decode->add_option("--code", decode_args.code_file, "code file")->required();
  decode->add_option("--syndrome", decode_args.syndrome, "bit string, one bit per generator")
      ->required();
  decode->add_option("--noise", decode_args.noise, "p=<f>,eta=<f|inf>,axis=<X|Y|Z>")->required();
  decode->add_option("--decoder", decode_args.decoder, "ewd | exact");
  decode->add_option("--p-sample", decode_args.p_sample, "number, 'default' or 'preset'");
  decode->add_option("--steps", decode_args.steps, "EWD proposals per class");
  auto* burn_opt = decode->add_option("--burn-in", decode_args.burn_in_steps, "EWD burn-in");
  decode->add_option("--seed", decode_args.seed, "random seed");
  decode->add_option("--out", decode_args.out, "output JSON file");

  ExperimentArgs exp_args;
  auto* experiment = app.add_subcommand("experiment", "run configured Monte-Carlo sweeps");
  experiment->add_option("--config", exp_args.config, "experiment config file")->required();
  experiment->add_option("--out", exp_args.out, "output table")->required();
  uint64_t seed_override = 0, trials_override = 0;
  unsigned workers_override = 0;
  auto* seed_opt = experiment->add_option("--seed", seed_override, "master seed override");
  auto* trials_opt = experiment->add_option("--trials", trials_override, "trials override");
  auto* workers_opt = experiment->add_option("--workers", workers_override, "worker threads");
  experiment->add_option("--p-sample", exp_args.p_sample, "p_sample override for all sweeps");
  experiment->add_option("--format", exp_args.format, "csv | json");

  ThresholdArgs th_args;
  auto* threshold = app.add_subcommand("threshold", "estimate threshold from a results CSV");
  threshold->add_option("--csv", th_args.csv_file, "results CSV")->required();
  threshold->add_option("--d-small", th_args.d_small, "smaller distance")->required();
  threshold->add_option("--d-large", th_args.d_large, "larger distance")->required();
  threshold->add_option("--family", th_args.family, "filter by family");
  threshold->add_option("--axis", th_args.axis, "filter by axis");
  threshold->add_option("--eta", th_args.eta, "filter by eta column text (e.g. 0.5 or inf)");
  threshold->add_option("--out", th_args.out, "also write the JSON result here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*build) return cmd_build(build_args);
    if (*validate) return cmd_validate(validate_args);
    if (*analytic) return cmd_analytic(analytic_args);
    if (*decode) {
      decode_args.have_burn_in = burn_opt->count() > 0;
      return cmd_decode(decode_args);
    }
    if (*experiment) {
      if (seed_opt->count()) exp_args.seed = seed_override;
      if (trials_opt->count()) exp_args.trials = trials_override;
      if (workers_opt->count()) exp_args.workers = workers_override;
      return cmd_experiment(exp_args);
    }
    if (*threshold) return cmd_threshold(th_args);
  } catch (const CapabilityError& e) {
    std::cerr << "capability error: " << e.what() << "\n";
    return kCapability;
  } catch (const NotBracketedError& e) {
    std::cerr << "threshold not bracketed: " << e.what() << "\n";
    return kNotBracketed;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
