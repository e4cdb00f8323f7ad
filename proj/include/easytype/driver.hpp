#pragma once

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "easytype/diagnostic.hpp"
#include "easytype/infer_classic.hpp"
#include "easytype/infer_easy.hpp"
#include "easytype/parser.hpp"
#include "easytype/render.hpp"

namespace easytype {

enum class CheckMode { Easy, Classic, Both };

/// Result of checking one file with the two-pass strategy.
struct FileCheck {
  enum class Status { WellTyped, IllTyped, ParseFailed, IoFailed };
  Status status = Status::WellTyped;

  std::vector<std::pair<std::string, DisplayTy>> schemes;  // WellTyped

  std::optional<Diagnostic> classic_diag;  // IllTyped / ParseFailed
  std::optional<Diagnostic> easy_diag;     // IllTyped (modes easy/both)
  int def_index = 0;                       // 1-based failing definition

  std::string io_error;  // IoFailed

  std::string source;  // file contents, for rendering

  double classic_seconds = 0;
  double easy_seconds = 0;
  int easy_defs_checked = 0;  // pass-two execution count
  bool easy_fell_back = false;  // pass two unexpectedly accepted

  int exit_code() const {
    switch (status) {
      case Status::WellTyped: return 0;
      case Status::IllTyped: return 1;
      case Status::ParseFailed: return 2;
      case Status::IoFailed: return 3;
    }
    return 3;
  }
};

inline std::string scheme_listing(
    const std::vector<std::pair<std::string, DisplayTy>>& schemes) {
  std::string out;
  for (auto& [name, ty] : schemes) {
    out += "val " + name + " : " + to_string(ty) + "\n";
  }
  return out;
}

namespace detail {

inline DisplayTy display_scheme(const Scheme& sc) {
  NamingContext naming;  // names are per value, like a toplevel printer
  return snapshot(sc.body, naming);
}

}  // namespace detail

/// Checks a parsed program with the two-pass strategy: the classic pass
/// runs over the whole program first; only when it fails is the failing
/// definition re-checked in easy mode, in a fresh session seeded with the
/// schemes accumulated before it.
inline FileCheck check_program(const Program& prog, std::string source,
                               CheckMode mode) {
  using clock = std::chrono::steady_clock;
  FileCheck out;
  out.source = std::move(source);

  TyStore store;
  TyEnv env = initial_env(store);
  auto t0 = clock::now();
  ProgramCheck classic = check_program_classic(env, prog);
  out.classic_seconds = std::chrono::duration<double>(clock::now() - t0).count();

  if (classic.ok()) {
    out.status = FileCheck::Status::WellTyped;
    for (auto& [name, sc] : classic.schemes)
      out.schemes.emplace_back(name, detail::display_scheme(sc));
    return out;
  }

  out.status = FileCheck::Status::IllTyped;
  out.def_index = classic.failure->def_index;
  out.classic_diag = std::move(classic.failure->diag);

  if (mode == CheckMode::Classic) return out;

  // Pass two: a fresh store isolates the easy re-check from the unification
  // side effects of pass one.
  auto t1 = clock::now();
  TyStore store2;
  TyEnv env2 = initial_env(store2);
  for (auto& [name, sc] : classic.schemes)
    env2.bind(name, transfer_scheme(sc, store2));
  const TopDef& failing = prog.defs[out.def_index - 1];
  out.easy_defs_checked = 1;
  std::optional<Diagnostic> easy = check_def_easy(env2, failing);
  out.easy_seconds = std::chrono::duration<double>(clock::now() - t1).count();
  // Classic and easy mode agree on acceptance, so the re-check must fail;
  // fall back to the classic diagnostic if it somehow does not.
  out.easy_fell_back = !easy.has_value();
  out.easy_diag = easy ? std::move(easy) : out.classic_diag;
  return out;
}

inline FileCheck check_source(std::string source, const std::string& file,
                              CheckMode mode) {
  auto parsed = parse_program(source, file);
  if (auto* err = std::get_if<ParseError>(&parsed)) {
    FileCheck out;
    out.source = std::move(source);
    out.status = FileCheck::Status::ParseFailed;
    Diagnostic d;
    d.kind = DiagParseError{err->message};
    d.span = err->span;
    out.classic_diag = std::move(d);
    return out;
  }
  return check_program(std::get<Program>(parsed), std::move(source), mode);
}

inline FileCheck check_file(const std::string& path, CheckMode mode) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    FileCheck out;
    out.status = FileCheck::Status::IoFailed;
    out.io_error = "cannot open file: " + path;
    return out;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return check_source(buf.str(), path, mode);
}

/// The text a golden file freezes: the easy-mode diagnostic for an
/// ill-typed program, the scheme listing for a well-typed one.
inline std::string golden_text(const FileCheck& fc) {
  switch (fc.status) {
    case FileCheck::Status::WellTyped:
      return scheme_listing(fc.schemes);
    case FileCheck::Status::IllTyped:
      return render_text(*fc.easy_diag, fc.source, false);
    case FileCheck::Status::ParseFailed:
      return render_text(*fc.classic_diag, fc.source, false);
    case FileCheck::Status::IoFailed:
      return "io error: " + fc.io_error + "\n";
  }
  return "";
}

inline std::string classic_golden_text(const FileCheck& fc) {
  if (fc.status == FileCheck::Status::IllTyped)
    return render_text(*fc.classic_diag, fc.source, false);
  return golden_text(fc);
}

// ---------------------------------------------------------------------------
// Corpus runner

struct CorpusEntry {
  std::string name;
  bool passed = false;
  std::string detail;  // failure explanation
};

struct CorpusReport {
  std::vector<CorpusEntry> entries;
  int passed = 0;
  int failed = 0;

  bool all_passed() const { return failed == 0; }

  std::string to_string() const {
    std::string out;
    for (auto& e : entries) {
      out += (e.passed ? "ok   " : "FAIL ") + e.name + "\n";
      if (!e.passed && !e.detail.empty()) out += e.detail;
    }
    out += std::to_string(passed) + " passed, " + std::to_string(failed) +
           " failed\n";
    return out;
  }
};

namespace detail {

inline std::optional<std::string> read_file(
    const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::string first_diff(const std::string& expected,
                              const std::string& actual) {
  std::size_t i = 0;
  while (i < expected.size() && i < actual.size() &&
         expected[i] == actual[i])
    ++i;
  std::size_t line = 1;
  for (std::size_t j = 0; j < i && j < expected.size(); ++j)
    if (expected[j] == '\n') ++line;
  return "  first difference at line " + std::to_string(line) + "\n";
}

}  // namespace detail

/// Runs every NAME.src under `dir` against its frozen golden at
/// dir/expected/NAME.expected (plus NAME.classic.expected when present).
/// With `update` set, rewrites the goldens instead.
inline CorpusReport run_corpus(const std::string& dir, bool update) {
  namespace fs = std::filesystem;
  CorpusReport report;

  std::vector<fs::path> sources;
  std::error_code ec;
  for (auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.path().extension() == ".src") sources.push_back(entry.path());
  }
  std::sort(sources.begin(), sources.end());

  fs::path expected_dir = fs::path(dir) / "expected";
  if (update) fs::create_directories(expected_dir);

  for (const fs::path& src : sources) {
    CorpusEntry entry;
    entry.name = src.filename().string();
    FileCheck fc = check_file(src.string(), CheckMode::Both);
    std::string actual = golden_text(fc);
    fs::path golden = expected_dir / (src.stem().string() + ".expected");
    fs::path classic_golden =
        expected_dir / (src.stem().string() + ".classic.expected");

    if (update) {
      std::ofstream out(golden, std::ios::binary);
      out << actual;
      if (fc.status == FileCheck::Status::IllTyped) {
        std::ofstream cout_(classic_golden, std::ios::binary);
        cout_ << classic_golden_text(fc);
      }
      entry.passed = true;
      report.entries.push_back(std::move(entry));
      ++report.passed;
      continue;
    }

    auto expected = detail::read_file(golden);
    if (!expected) {
      entry.passed = false;
      entry.detail = "  missing golden: " + golden.string() + "\n";
    } else if (*expected != actual) {
      entry.passed = false;
      entry.detail = detail::first_diff(*expected, actual);
    } else {
      entry.passed = true;
      if (fs::exists(classic_golden)) {
        auto classic_expected = detail::read_file(classic_golden);
        std::string classic_actual = classic_golden_text(fc);
        if (!classic_expected || *classic_expected != classic_actual) {
          entry.passed = false;
          entry.detail = "  classic golden mismatch\n";
        }
      }
    }
    report.entries.push_back(entry);
    if (entry.passed)
      ++report.passed;
    else
      ++report.failed;
  }
  return report;
}

}  // namespace easytype
