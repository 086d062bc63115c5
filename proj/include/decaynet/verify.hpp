#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace decaynet {

struct VerifyOptions {
  std::uint64_t seed = 1;
  /// Empty: the built-in generated corpus. Otherwise space or system files.
  std::vector<std::filesystem::path> files;
};

/// Outcome of one invariant on one corpus item.
struct Verdict {
  std::string suite;
  std::string invariant;
  std::string item;
  bool passed = true;
  std::size_t cases = 0;  ///< individual checks performed
  std::string witness;    ///< first failing case, empty when passed
};

/// A measured quantity that is reported but not asserted.
struct Observation {
  std::string item;
  std::string name;
  double value = 0.0;
};

struct VerifyReport {
  std::string corpus;
  std::uint64_t seed = 0;
  std::vector<Verdict> verdicts;          ///< sorted by (suite, invariant, item)
  std::vector<Observation> observations;  ///< sorted by (item, name)
  double seconds = 0.0;                   ///< wall time; kept out of to_json

  bool all_passed() const;
  std::size_t failures() const;
};

/// Runs every invariant suite over the corpus. Deterministic in `seed`.
/// Unreadable files throw io::FormatError.
VerifyReport run_verify(const VerifyOptions& options);

/// Verdicts and observations only; timing is excluded so that two runs with
/// the same seed serialize identically.
nlohmann::json to_json(const VerifyReport& report);

}  // namespace decaynet
