#ifndef DELTAKIN_CLI_HPP
#define DELTAKIN_CLI_HPP

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace CLI {
class App;
}

namespace deltakin {

/// Command-line front end. Subcommands: models, ik, dk, sing det,
/// sing project, sing sample, scan. Exit codes: 0 success (an unreachable
/// pose is a success with an empty solution list), 1 domain error, 2
/// malformed input.
class Cli {
 public:
  Cli();
  ~Cli();

  /// Parses and executes one command line (program name excluded).
  /// Output goes to `out`, diagnostics to `err`.
  int run(const std::vector<std::string>& args, std::ostream& out,
          std::ostream& err);

  /// The configured parser, for integration tests over the flag registry.
  CLI::App& app();

 private:
  struct State;
  std::unique_ptr<State> state_;
};

/// Convenience wrapper around Cli for a main() entry point.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace deltakin

#endif
