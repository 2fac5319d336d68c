#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cli_core.hpp"

namespace {

bool read_all(const std::string& path, std::string& text) {
  if (path.empty() || path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    return true;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  using ptorsion::cli::RunOptions;
  CLI::App app{"p-adic torsion toolkit: batch JSON front end"};
  std::string command;
  std::string input_path;
  std::string output_path;
  RunOptions opt;

  std::string names;
  for (const auto& n : ptorsion::cli::command_names()) names += (names.empty() ? "" : ", ") + n;
  app.add_option("command", command, "Subcommand: " + names)->required();
  app.add_option("--input", input_path, "Input JSON file (default: stdin)")->envname("PTORSION_INPUT");
  app.add_option("--output", output_path, "Output file (default: stdout)")->envname("PTORSION_OUTPUT");
  app.add_option("--precision", opt.precision, "Working p-adic precision")
      ->envname("PTORSION_PRECISION")
      ->capture_default_str();
  app.add_option("--order-bound", opt.order_bound, "Torsion order bound M")
      ->envname("PTORSION_ORDER_BOUND")
      ->capture_default_str();
  app.add_option("--seed", opt.seed, "Seed for sampled checks")->envname("PTORSION_SEED")->capture_default_str();
  app.add_option("--jobs", opt.jobs, "Worker threads for scans")->envname("PTORSION_JOBS")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return ptorsion::cli::kInvalid;
  }

  nlohmann::json input = nlohmann::json::object();
  if (command != "demo" || !input_path.empty()) {
    std::string text;
    if (!read_all(input_path, text)) {
      std::cerr << "cannot read input: " << input_path << "\n";
      return ptorsion::cli::kInvalid;
    }
    try {
      input = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      std::cerr << "invalid input: malformed JSON: " << e.what() << "\n";
      return ptorsion::cli::kInvalid;
    }
  }

  const auto result = ptorsion::cli::run_command(command, input, opt);
  if (!result.diagnostic.empty()) std::cerr << result.diagnostic << "\n";
  if (!result.output) return result.exit_code;
  const std::string text = ptorsion::cli::render(*result.output);
  if (output_path.empty() || output_path == "-") {
    std::cout << text << std::flush;
  } else {
    std::ofstream out(output_path, std::ios::binary);
    out << text;
    if (!out) {
      std::cerr << "cannot write output: " << output_path << "\n";
      return ptorsion::cli::kInvalid;
    }
  }
  return result.exit_code;
}
