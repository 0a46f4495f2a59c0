#pragma once

#include <stdexcept>
#include <string>

namespace i4vlab {

// Exit codes used by the CLI. Tests assert codes, not message text.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,          // bad subcommand / flags
  kExitConfigMissing = 3,  // config file not found
  kExitConfigValue = 4,    // config value out of range / malformed
  kExitConfigKey = 5,      // unknown or duplicate config key
  kExitStageFailure = 6,   // numeric failure inside a pipeline stage
  kExitIoFailure = 7,      // artifact read/write failure
};

struct ConfigMissingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigValueError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigKeyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numeric or contract failure inside a pipeline stage (non-finite values,
// shape mismatch reached at runtime, divergence).
struct StageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace i4vlab
