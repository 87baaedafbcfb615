#include "cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "asymcap/asymcap.hpp"

namespace asymcap::cli {
namespace {

using io::json;

constexpr int kOk = 0;
constexpr int kIoError = 1;
constexpr int kInvalid = 2;

json round_numbers(json j) {
  if (j.is_number_float()) return io::round_significant(j.get<double>());
  if (j.is_array() || j.is_object()) {
    for (auto& v : j) v = round_numbers(v);
  }
  return j;
}

json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

json witness(const std::optional<int>& q) { return q ? json(*q) : json(nullptr); }

DensityMatrix<double> job_state(const JobSpec& job, const BlockStructure<double>& structure, bool covariant) {
  if (job.params.state) return io::state_from_json(io::read_json_file(*job.params.state));
  return covariant ? optimal_covariant_state(structure) : optimal_state(structure);
}

void check_state_dim(const DensityMatrix<double>& rho, int dim) {
  if (rho.dim() != dim) throw MalformedInput("state", "dimension " + std::to_string(rho.dim()) + " does not match the representation dimension " + std::to_string(dim));
}

json run_validate(const io::LoadedSource& src) {
  const auto& rep = src.rep;
  json r;
  r["order"] = rep.order();
  r["dim"] = rep.dim();
  r["group_abelian"] = rep.group().is_abelian();
  r["generators"] = std::vector<int>(rep.group().generators().begin(), rep.group().generators().end());
  r["unitarity_residual"] = rep.unitarity_residual();
  r["homomorphism_residual"] = rep.homomorphism_residual();
  return r;
}

std::string block_shapes(const BlockStructure<double>& s) {
  std::string out;
  for (const auto& b : s.shapes) {
    if (!out.empty()) out += ";";
    out += std::to_string(b.d_left) + "x" + std::to_string(b.d_right);
  }
  return out;
}

json run_decompose(const Decomposition<double>& dec, const JobSpec& job) {
  json r;
  r["dim"] = dec.dim();
  r["block_count"] = dec.block_count();
  r["block_shapes"] = block_shapes(dec);
  json blocks = json::array();
  json characters = json::array();
  int commutant = 0, algebra = 0;
  for (const auto& b : dec.blocks) {
    blocks.push_back({{"q", b.label}, {"d_L", b.d_left}, {"d_R", b.d_right}});
    json chi = json::array();
    for (const auto& z : b.character) chi.push_back(complex_json(z));
    characters.push_back(std::move(chi));
    commutant += b.d_right * b.d_right;
    algebra += b.d_left * b.d_left;
  }
  r["blocks"] = std::move(blocks);
  r["character_table"] = std::move(characters);
  r["multiplicity_sum"] = multiplicity_sum(dec);
  r["commutant_dimension"] = commutant;
  r["algebra_dimension"] = algebra;
  r["generator_residual"] = dec.generator_residual;
  r["reconstruction_residual"] = dec.reconstruction_residual;
  r["alignment_residual"] = dec.alignment_residual;
  r["attempts"] = dec.attempts;
  if (job.params.basis_out) {
    io::write_basis_binary(*job.params.basis_out, dec.basis_change);
    r["basis_file"] = *job.params.basis_out;
  }
  return r;
}

json run_classify(const Decomposition<double>& dec) {
  const Classification c = classify(dec);
  json r;
  r["abelian"] = c.abelian;
  r["irreducible"] = c.irreducible;
  r["superdense_possible"] = c.superdense_possible;
  r["covariant_sufficient"] = c.covariant_sufficient;
  r["non_abelian_block"] = witness(c.non_abelian_block);
  r["covariant_block"] = witness(c.covariant_block);
  r["c_sym_bits"] = capacity_symmetric(dec);
  r["c_max_bits"] = capacity_max(dec);
  r["covariant_bound_bits"] = covariant_capacity_bound(dec);
  r["block_shapes"] = block_shapes(dec);
  return r;
}

json run_capacity(const Decomposition<double>& dec, const JobSpec& job) {
  const DensityMatrix<double> rho = job_state(job, dec, false);
  check_state_dim(rho, dec.dim());
  const auto report = capacity_report(dec, rho);
  json r;
  r["state"] = job.params.state ? *job.params.state : std::string("optimal_state");
  r["c_sym_bits"] = report.c_sym;
  r["c_max_bits"] = report.c_max;
  r["lower_bound_bits"] = report.lower_bound;
  r["lower_bound_clamped_bits"] = report.lower_bound_clamped;
  r["covariant_lower_bound_bits"] = report.covariant_lower_bound;
  r["covariant_lower_bound_clamped_bits"] = report.covariant_lower_bound_clamped;
  r["p"] = report.p;
  return r;
}

json run_codebook(const Decomposition<double>& dec) {
  const Codebook<double> sym = symmetric_codebook(dec);
  const ErrorStats sym_err = simulate_error(sym, projective_decoder(sym));
  json r;
  r["symmetric_size"] = sym.size();
  r["symmetric_rate_bits"] = std::log2(double(sym.size()));
  r["symmetric_max_error"] = sym_err.max_error;
  r["symmetric_avg_error"] = sym_err.avg_error;
  json bells = json::array();
  double best = 0.0;
  for (int q = 0; q < dec.block_count(); ++q) {
    const auto& s = dec.shape(q);
    if (s.d_left != s.d_right || s.d_left < 2) continue;
    const Codebook<double> bell = bell_codebook(dec, q);
    check_codebook(dec, bell);
    const ErrorStats err = simulate_error(bell, pgm_decoder(bell));
    const double rate = std::log2(double(bell.size()));
    best = std::max(best, rate);
    bells.push_back({{"q", q}, {"d", s.d_left}, {"size", bell.size()}, {"rate_bits", rate},
                     {"max_error", err.max_error}, {"avg_error", err.avg_error}});
  }
  r["bell_codebooks"] = std::move(bells);
  r["best_bell_rate_bits"] = best;
  r["c_sym_bits"] = capacity_symmetric(dec);
  return r;
}

json run_simulate(const Decomposition<double>& dec, const JobSpec& job) {
  const bool covariant = job.params.encoder == EncoderKind::covariant_unitary;
  const DensityMatrix<double> rho = job_state(job, dec, covariant);
  check_state_dim(rho, dec.dim());
  const RateTestResult res =
      monte_carlo_rate_test(dec, rho, job.params.n, job.params.rate, job.params.trials, job.params.seed, job.params.encoder);
  json r;
  r["state"] = job.params.state ? *job.params.state : std::string(covariant ? "optimal_covariant_state" : "optimal_state");
  r["n"] = res.n;
  r["rate"] = res.rate;
  r["trials"] = res.trials;
  r["messages"] = res.messages;
  r["encoder_kind"] = std::string(asymcap::to_string(res.encoder_kind));
  r["mean_error"] = res.mean_error;
  r["min_error"] = res.min_error;
  r["max_error"] = res.max_error;
  r["trial_errors"] = res.avg_errors;
  return r;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_value(const json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
  if (v.is_number_float()) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v.get<double>());
    return buf;
  }
  if (v.is_string()) return csv_escape(v.get<std::string>());
  return csv_escape(v.dump());
}

std::string csv_header(Command command) {
  std::string line = "source";
  for (const auto& c : csv_columns(command)) line += "," + c;
  return line + ",error\n";
}

const json* problem(const json& report) {
  for (const char* key : {"violation", "error"}) {
    if (report.contains(key)) return &report[key];
  }
  return nullptr;
}

std::string problem_text(const json& report) {
  const json* p = problem(report);
  if (p == nullptr) return "";
  return p->value("kind", std::string()) + ": " + p->value("message", std::string());
}

std::string csv_line(const json& report, Command command) {
  std::string line = csv_escape(report.value("source", std::string()));
  const bool ok = report.value("status", std::string()) == "ok";
  for (const auto& c : csv_columns(command)) line += "," + (ok && report.contains(c) ? csv_value(report[c]) : std::string());
  return line + "," + csv_escape(problem_text(report)) + "\n";
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
  static const std::map<std::string_view, Command> names = {
      {"validate", Command::validate}, {"decompose", Command::decompose}, {"classify", Command::classify},
      {"capacity", Command::capacity}, {"codebook", Command::codebook},   {"simulate", Command::simulate}};
  const auto it = names.find(name);
  if (it == names.end()) return std::nullopt;
  return it->second;
}

std::string_view to_string(Command command) {
  switch (command) {
    case Command::validate: return "validate";
    case Command::decompose: return "decompose";
    case Command::classify: return "classify";
    case Command::capacity: return "capacity";
    case Command::codebook: return "codebook";
    case Command::simulate: return "simulate";
  }
  return "unknown";
}

std::optional<Format> parse_format(std::string_view name) {
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  return std::nullopt;
}

std::optional<EncoderKind> parse_encoder(std::string_view name) {
  if (name == "symmetric" || name == "symmetric_unitary") return EncoderKind::symmetric_unitary;
  if (name == "covariant" || name == "covariant_unitary") return EncoderKind::covariant_unitary;
  return std::nullopt;
}

const std::vector<std::string>& csv_columns(Command command) {
  static const std::map<Command, std::vector<std::string>> columns = {
      {Command::validate, {"order", "dim", "group_abelian", "unitarity_residual", "homomorphism_residual"}},
      {Command::decompose, {"dim", "block_count", "block_shapes", "multiplicity_sum", "commutant_dimension",
                            "algebra_dimension", "reconstruction_residual"}},
      {Command::classify, {"abelian", "irreducible", "superdense_possible", "covariant_sufficient", "c_sym_bits",
                           "c_max_bits", "covariant_bound_bits", "block_shapes"}},
      {Command::capacity, {"c_sym_bits", "c_max_bits", "lower_bound_bits", "lower_bound_clamped_bits",
                           "covariant_lower_bound_bits", "covariant_lower_bound_clamped_bits"}},
      {Command::codebook, {"symmetric_size", "symmetric_rate_bits", "symmetric_max_error", "best_bell_rate_bits",
                           "c_sym_bits"}},
      {Command::simulate, {"n", "rate", "trials", "messages", "encoder_kind", "mean_error", "min_error", "max_error"}},
  };
  return columns.at(command);
}

RunOutcome execute(const JobSpec& job) {
  RunOutcome out;
  json& r = out.report;
  r["tool"] = "asymcap";
  r["tool_version"] = std::string(tool_version);
  r["command"] = std::string(to_string(job.command));
  r["source"] = job.source;
  r["seed"] = job.params.seed;
  try {
    const io::LoadedSource src = io::load_source(job.source);
    r["input_digest"] = src.digest;
    json body;
    if (job.command == Command::validate) {
      body = run_validate(src);
    } else {
      const Decomposition<double> dec = decompose(src.rep, job.params.tol, job.params.seed);
      switch (job.command) {
        case Command::decompose: body = run_decompose(dec, job); break;
        case Command::classify: body = run_classify(dec); break;
        case Command::capacity: body = run_capacity(dec, job); break;
        case Command::codebook: body = run_codebook(dec); break;
        case Command::simulate: body = run_simulate(dec, job); break;
        case Command::validate: break;
      }
    }
    r.update(body);
    r["status"] = "ok";
    out.exit_code = kOk;
  } catch (const ValidationError& e) {
    r["status"] = "invalid";
    r["violation"] = {{"kind", e.kind()}, {"message", e.what()}};
    out.exit_code = kInvalid;
  } catch (const Error& e) {
    r["status"] = "error";
    r["error"] = {{"kind", e.kind()}, {"message", e.what()}};
    out.exit_code = kIoError;
  } catch (const std::exception& e) {
    r["status"] = "error";
    r["error"] = {{"kind", "IoError"}, {"message", e.what()}};
    out.exit_code = kIoError;
  }
  r = round_numbers(std::move(r));
  return out;
}

std::string render(const RunOutcome& outcome, Command command, Format format) {
  if (format == Format::json) return outcome.report.dump(2) + "\n";
  return csv_header(command) + csv_line(outcome.report, command);
}

int run(const JobSpec& job) {
  RunOutcome outcome = execute(job);
  if (outcome.exit_code != kOk) std::cerr << "asymcap: " << problem_text(outcome.report) << "\n";
  const std::string text = render(outcome, job.command, job.format);
  if (job.output.empty()) {
    std::cout << text;
    return outcome.exit_code;
  }
  std::ofstream file(job.output, std::ios::binary);
  if (!file) {
    std::cerr << "asymcap: cannot write " << job.output << "\n";
    return kIoError;
  }
  file << text;
  return outcome.exit_code;
}

SweepOutcome sweep(const std::vector<JobSpec>& jobs) {
  SweepOutcome out;
  const Command command = jobs.empty() ? Command::classify : jobs.front().command;
  out.csv = csv_header(command);
  bool any_ok = false;
  for (const auto& job : jobs) {
    RunOutcome row;
    if (job.command != command) {
      row.report = {{"source", job.source}, {"status", "error"},
                    {"error", {{"kind", "MalformedInput"}, {"message", "sweep jobs must share one command"}}}};
      row.exit_code = kIoError;
    } else {
      row = execute(job);
    }
    any_ok = any_ok || row.exit_code == kOk;
    out.csv += csv_line(row.report, command);
  }
  out.exit_code = any_ok ? kOk : kInvalid;
  return out;
}

}  // namespace asymcap::cli
