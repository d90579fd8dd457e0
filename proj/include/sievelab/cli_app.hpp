#pragma once

#include <string>
#include <utility>
#include <vector>

namespace sievelab {

/// A fully resolved invocation: the subcommand plus every flag that was set,
/// as strings. Serializes to a flat key=value file and back; save -> load ->
/// save is byte-stable.
struct RunConfig {
  std::string command;
  std::vector<std::pair<std::string, std::string>> kv;

  std::string serialize() const;
  static RunConfig parse_text(const std::string& text);
  static RunConfig load(const std::string& path);
  void save(const std::string& path) const;

  /// Command-line form: command --key value ...
  std::vector<std::string> to_args() const;
};

/// Entry point behind main(). Returns the process exit code:
/// 0 success, 2 precondition violation, 3 resource/IO failure,
/// 4 internal invariant failure, 64 unknown flag / usage error.
int run(const std::vector<std::string>& args);
int run(int argc, char** argv);

}  // namespace sievelab
