#include "heis/json_io.hpp"
#include "heis/orbit.hpp"
#include "heis/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using heis::io::json;
using heis::io::ScalarMode;

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open input file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& err) {
    throw std::invalid_argument(std::string("malformed JSON: ") + err.what());
  }
}

ScalarMode choose_mode(const json& doc) {
  if (const auto forced = heis::io::mode_from_env()) return *forced;
  return heis::io::infer_mode(doc);
}

void emit(const json& doc, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << doc.dump(2) << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
  out << doc.dump(2) << "\n";
}

template <class S>
json classify_document(const json& doc, ScalarMode mode) {
  const auto f = heis::io::dual_from_json<S>(doc);
  const auto form = heis::SympForm<S>::standard(f.n());
  const auto descriptor = classify_dual(form, f);
  bool verified = false;
  if (descriptor.normalizer) {
    const S tol = heis::scalar_traits<S>::is_exact ? S(0) : S(1e-10);
    const auto moved = coadjoint(form, *descriptor.normalizer, f);
    verified = heis::near_zero(moved.mu - descriptor.representative.mu, tol);
    for (std::size_t i = 0; verified && i < f.n(); ++i) {
      verified = verified && heis::near_zero(moved.lambda.cx[i], tol) &&
                 heis::near_zero(moved.lambda.cy[i], tol);
    }
  }
  return heis::io::orbit_to_json(descriptor, mode, verified);
}

template <class S>
json reduce_document(const json& doc, ScalarMode mode) {
  const std::size_t n = heis::io::dimension_of(doc);
  const auto E = heis::extended_form<S>(n);
  const S tol = heis::scalar_traits<S>::is_exact ? S(0) : S(1e-10);
  const auto Y = heis::io::tuple_from_json<S>(E, doc, tol);
  return heis::io::reduction_to_json(reduce_tuple(E, Y, tol), mode);
}

int cmd_classify(const std::string& input, const std::string& output) {
  const json doc = parse_document(read_input(input));
  const ScalarMode mode = choose_mode(doc);
  const json result = mode == ScalarMode::exact
                          ? classify_document<heis::Rational>(doc, mode)
                          : classify_document<double>(doc, mode);
  emit(result, output);
  return 0;
}

int cmd_reduce(const std::string& input, const std::string& output) {
  const json doc = parse_document(read_input(input));
  const ScalarMode mode = choose_mode(doc);
  const json result = mode == ScalarMode::exact
                          ? reduce_document<heis::Rational>(doc, mode)
                          : reduce_document<double>(doc, mode);
  emit(result, output);
  return 0;
}

int cmd_verify(const std::string& suite, heis::verify::CheckConfig cfg,
               const std::string& grid_flag, const std::string& output) {
  if (!grid_flag.empty()) {
    const auto comma = grid_flag.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("--grid expects N,L");
    cfg.grid = heis::GridSpec(1, std::stod(grid_flag.substr(comma + 1)),
                              std::stoul(grid_flag.substr(0, comma)));
  }
  if (const auto forced = heis::io::mode_from_env())
    cfg.exact = (*forced == ScalarMode::exact);

  std::vector<heis::verify::SuiteResult> results;
  if (suite == "all") {
    for (const std::string& name : heis::verify::suite_names())
      results.push_back(heis::verify::run_suite(name, cfg));
  } else {
    if (!heis::verify::is_suite(suite))
      throw std::invalid_argument("unknown suite: " + suite);
    results.push_back(heis::verify::run_suite(suite, cfg));
  }
  const json report = heis::verify::report_json(results);
  emit(report, output);
  return report["pass"].get<bool>() ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heisenberg group coadjoint orbits, momentum maps and "
               "geometric quantization: classification and verification"};
  app.require_subcommand(1);

  std::string classify_input = "-";
  std::string classify_output;
  auto* classify =
      app.add_subcommand("classify", "Classify a dual element into its coadjoint orbit");
  classify->add_option("--input", classify_input, "JSON file or - for stdin");
  classify->add_option("--out", classify_output, "output file (default stdout)");

  std::string reduce_input = "-";
  std::string reduce_output;
  auto* reduce =
      app.add_subcommand("reduce", "Reduce a tuple to its cotype normal form");
  reduce->add_option("--input", reduce_input, "JSON file or - for stdin");
  reduce->add_option("--out", reduce_output, "output file (default stdout)");

  std::string suite;
  std::string grid_flag;
  std::string verify_output;
  heis::verify::CheckConfig cfg;
  long trials = 0;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("--suite", suite, "group|momentum|cotype|quantization|all")
      ->required();
  verify->add_option("--n", cfg.n, "symplectic half-dimension (default 2)");
  verify->add_option("--seed", cfg.seed, "RNG seed (default 42)");
  verify->add_option("--trials", trials,
                     "instances per check (default 1000; 20 for quantization)");
  verify->add_option("--tol", cfg.tol_override,
                     "tolerance override for every check in the suite");
  verify->add_option("--grid", grid_flag, "quantization grid as N,L (default 2048,8)");
  verify->add_option("--out", verify_output, "report file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    return app.exit(help);
  } catch (const CLI::ParseError& err) {
    std::cerr << err.what() << "\n";
    return kExitUsage;
  }

  try {
    if (classify->parsed()) return cmd_classify(classify_input, classify_output);
    if (reduce->parsed()) return cmd_reduce(reduce_input, reduce_output);
    if (trials > 0) {
      cfg.trials = trials;
      cfg.functions = trials;
    }
    return cmd_verify(suite, cfg, grid_flag, verify_output);
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  }
}
