// dgrefl: command-line front end. See README.md for commands and flags.

#include <openssl/evp.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dgrefl/report.hpp"

#ifndef DGREFL_CATALOGUE_DIR
#define DGREFL_CATALOGUE_DIR "catalogue"
#endif

namespace fs = std::filesystem;
using namespace dgrefl;

namespace {

enum Exit { kOk = 0, kUsage = 1, kParse = 2, kPrecondition = 3, kInvariant = 4 };

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw InvariantViolation("SHA-256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

/// A path as given, else a catalogue file by path or by entry name.
fs::path resolve_input(const std::string& arg) {
  if (fs::exists(arg)) return arg;
  const fs::path dir(DGREFL_CATALOGUE_DIR);
  for (const fs::path& p : {dir / arg, dir / (arg + ".alg"), dir / fs::path(arg).filename()})
    if (fs::exists(p)) return p;
  throw PreconditionError("cannot open input '" + arg + "'");
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw PreconditionError("cannot open input '" + p.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw PreconditionError("cannot write '" + path + "'");
    out << content;
  }
  fs::rename(tmp, path);
}

std::pair<int, int> parse_degrees(const std::string& s) {
  const auto dots = s.find("..");
  if (dots == std::string::npos) throw ParseError("--degrees expects lo..hi, got '" + s + "'");
  try {
    std::size_t a = 0, b = 0;
    const std::string lo = s.substr(0, dots), hi = s.substr(dots + 2);
    int l = std::stoi(lo, &a), h = std::stoi(hi, &b);
    if (a != lo.size() || b != hi.size()) throw std::invalid_argument("");
    return {l, h};
  } catch (const std::exception&) {
    throw ParseError("--degrees expects lo..hi, got '" + s + "'");
  }
}

std::string usage() {
  std::string s = "usage: dgrefl <command> [options] [input.alg]\ncommands:";
  for (const auto& c : report::command_names()) s += " " + c;
  return s + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << usage();
    return kUsage;
  }
  const std::string cmd = argv[1];
  const auto& names = report::command_names();
  if (std::find(names.begin(), names.end(), cmd) == names.end()) {
    std::cerr << "unknown command '" << cmd << "'\n" << usage();
    return kUsage;
  }

  CLI::App app{"dgrefl " + cmd};
  app.name("dgrefl " + cmd);
  int max_weight = 6;
  std::string degrees = "-4..4", field, out_path, input;
  std::uint64_t seed = 7;
  int trials = 50;
  bool json = false;
  app.add_option("--max-weight", max_weight, "weight cutoff N");
  app.add_option("--degrees", degrees, "degree window lo..hi");
  app.add_option("--field", field, "override the input field: Q, F<p> or Fp<p>");
  app.add_option("--seed", seed, "random seed (monoidal-selftest)");
  app.add_option("--trials", trials, "number of random trials (monoidal-selftest)");
  app.add_option("--out", out_path, "write the report to this path");
  app.add_flag("--json", json, "structured JSON output");
  if (report::needs_input(cmd)) app.add_option("input", input, "algebra file or catalogue name")->required();
  try {
    app.parse(argc - 1, argv + 1);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    report::Params p;
    auto [lo, hi] = parse_degrees(degrees);
    p.policy = TruncationPolicy(max_weight, lo, hi);
    p.seed = seed;
    if (trials < 0) throw PreconditionError("--trials must be nonnegative");
    p.trials = trials;
    p.field = field;
    std::string text, name, digest;
    if (report::needs_input(cmd)) {
      const fs::path path = resolve_input(input);
      text = read_file(path);
      name = path.filename().string();
      digest = sha256_hex(text);
    }
    const report::Json doc = report::make_document(cmd, name, digest, text, p);
    const std::string rendered = json ? doc.dump(2) + "\n" : report::render_text(doc);
    if (out_path.empty())
      std::cout << rendered;
    else
      write_atomic(out_path, rendered);
    if (cmd == "monoidal-selftest" && !doc["result"]["pass"].get<bool>()) return kInvariant;
    return kOk;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const ArithmeticError& e) {
    std::cerr << "arithmetic error: " << e.what() << "\n";
    return kParse;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition error: " << e.what() << "\n";
    return kPrecondition;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kInvariant;
  }
}
