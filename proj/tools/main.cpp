#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "asymcap/catalog.hpp"
#include "cli.hpp"

int main(int argc, char** argv) {
  using namespace asymcap;

  CLI::App app{"Decompose finite-group representations and evaluate symmetry-restricted capacities"};
  app.set_version_flag("--version", std::string(cli::tool_version));

  std::vector<std::string> inputs;
  std::vector<std::string> catalog_ids;
  std::string command_name;
  std::string format_name = "json";
  std::string encoder_name = "symmetric";
  std::optional<std::string> state;
  std::optional<std::string> basis_out;
  cli::JobParams params;
  std::string output;

  app.add_option("--input", inputs, "Representation JSON file (repeatable)");
  app.add_option("--catalog", catalog_ids, "Catalog id <group>/<rep>, or 'all' for every builtin fixture (repeatable)");
  app.add_option("--command", command_name, "validate | decompose | classify | capacity | codebook | simulate")->required();
  app.add_option("--state", state, "Density matrix JSON file (capacity, simulate)");
  app.add_option("--n", params.n, "Number of copies (simulate)")->check(CLI::PositiveNumber);
  app.add_option("--rate", params.rate, "Rate in bits per copy (simulate)")->check(CLI::NonNegativeNumber);
  app.add_option("--trials", params.trials, "Monte Carlo trials (simulate)")->check(CLI::PositiveNumber);
  app.add_option("--seed", params.seed, "Random seed");
  app.add_option("--tol", params.tol, "Decomposition tolerance")->check(CLI::PositiveNumber);
  app.add_option("--encoder", encoder_name, "symmetric | covariant (simulate)");
  app.add_option("--basis-out", basis_out, "Write the basis change as binary row-major (re, im) doubles (decompose)");
  app.add_option("--out", output, "Report path (default: stdout)");
  app.add_option("--format", format_name, "json | csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  const auto command = cli::parse_command(command_name);
  if (!command) {
    std::cerr << "asymcap: unknown command '" << command_name << "'\n";
    return 1;
  }
  const auto format = cli::parse_format(format_name);
  if (!format) {
    std::cerr << "asymcap: unknown format '" << format_name << "'\n";
    return 1;
  }
  const auto encoder = cli::parse_encoder(encoder_name);
  if (!encoder) {
    std::cerr << "asymcap: unknown encoder '" << encoder_name << "'\n";
    return 1;
  }
  params.encoder = *encoder;
  params.state = state;
  params.basis_out = basis_out;

  bool expanded = false;
  std::vector<std::string> sources;
  for (const auto& id : catalog_ids) {
    if (id == "all") {
      expanded = true;
      for (const auto& f : builtin_fixtures()) sources.push_back("catalog:" + f);
    } else {
      sources.push_back("catalog:" + std::string(strip_catalog_prefix(id)));
    }
  }
  sources.insert(sources.end(), inputs.begin(), inputs.end());
  if (sources.empty()) {
    std::cerr << "asymcap: give --input or --catalog\n";
    return 1;
  }

  std::vector<cli::JobSpec> jobs;
  for (const auto& s : sources) jobs.push_back({s, *command, params, output, *format});
  if (jobs.size() == 1 && !expanded) return cli::run(jobs.front());

  const cli::SweepOutcome result = cli::sweep(jobs);
  if (output.empty()) {
    std::cout << result.csv;
  } else {
    std::ofstream file(output, std::ios::binary);
    if (!file) {
      std::cerr << "asymcap: cannot write " << output << "\n";
      return 1;
    }
    file << result.csv;
  }
  return result.exit_code;
}
