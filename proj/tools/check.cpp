// Command-line driver for the easytype checker.
//
// Checks one file (two-pass: the classic algorithm first, then a re-check
// of the first failing definition with the bias-reduced algorithm), or runs
// a golden-file corpus.

#include <unistd.h>

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "easytype/easytype.hpp"
#include "easytype/render_json.hpp"

namespace {

constexpr int kUsageError = 64;

bool color_enabled(const std::string& flag, FILE* stream) {
  if (flag == "always") return true;
  if (flag == "never") return false;
  return isatty(fileno(stream)) != 0;
}

void print_diag(const easytype::Diagnostic& d, const easytype::FileCheck& fc,
                bool json, bool color) {
  if (json)
    std::cout << easytype::render_json(d) << "\n";
  else
    std::cerr << easytype::render_text(d, fc.source, color);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Type checker for a small ML-like language with readable "
               "error reports"};
  app.name("check");

  std::string input;
  std::string corpus_dir;
  std::string color_flag = "auto";
  bool flag_easy = false;
  bool flag_classic = false;
  bool flag_both = false;
  bool flag_json = false;
  bool flag_update = false;

  app.add_option("file", input, "source file to check");
  app.add_flag("--easy-type-errors", flag_easy,
               "report errors with the bias-reduced algorithm (default)");
  app.add_flag("--classic", flag_classic,
               "report errors with the traditional algorithm only");
  app.add_flag("--both", flag_both, "report both messages, labeled");
  app.add_flag("--json", flag_json, "print diagnostics as JSON on stdout");
  app.add_option("--color", color_flag, "color output: auto|always|never")
      ->check(CLI::IsMember({"auto", "always", "never"}));
  app.add_option("--corpus", corpus_dir,
                 "run all .src files under DIR against their goldens");
  app.add_flag("--update-goldens", flag_update,
               "rewrite golden files instead of checking them");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  if (flag_classic + flag_both + flag_easy > 1) {
    std::cerr << "error: --easy-type-errors, --classic and --both are "
                 "mutually exclusive\n";
    return kUsageError;
  }

  if (!corpus_dir.empty()) {
    if (!input.empty()) {
      std::cerr << "error: --corpus does not take a file argument\n";
      return kUsageError;
    }
    easytype::CorpusReport report =
        easytype::run_corpus(corpus_dir, flag_update);
    std::cout << report.to_string();
    return report.all_passed() ? 0 : 1;
  }

  if (input.empty()) {
    std::cerr << app.help();
    return kUsageError;
  }

  easytype::CheckMode mode = easytype::CheckMode::Easy;
  if (flag_classic) mode = easytype::CheckMode::Classic;
  if (flag_both) mode = easytype::CheckMode::Both;

  easytype::FileCheck fc = easytype::check_file(input, mode);
  bool color = color_enabled(color_flag, stderr);

  switch (fc.status) {
    case easytype::FileCheck::Status::WellTyped:
      if (!flag_json) std::cout << easytype::scheme_listing(fc.schemes);
      return 0;
    case easytype::FileCheck::Status::ParseFailed:
      print_diag(*fc.classic_diag, fc, flag_json, color);
      return 2;
    case easytype::FileCheck::Status::IoFailed:
      std::cerr << "error: " << fc.io_error << "\n";
      return 3;
    case easytype::FileCheck::Status::IllTyped:
      break;
  }

  switch (mode) {
    case easytype::CheckMode::Easy:
      print_diag(*fc.easy_diag, fc, flag_json, color);
      break;
    case easytype::CheckMode::Classic:
      print_diag(*fc.classic_diag, fc, flag_json, color);
      break;
    case easytype::CheckMode::Both:
      if (!flag_json) std::cerr << "[classic]\n";
      print_diag(*fc.classic_diag, fc, flag_json, color);
      if (!flag_json) std::cerr << "[easy]\n";
      print_diag(*fc.easy_diag, fc, flag_json, color);
      break;
  }
  return 1;
}
