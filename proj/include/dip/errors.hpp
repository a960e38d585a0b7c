#pragma once

#include <stdexcept>
#include <string>

namespace dip {

// Error taxonomy mirrored by the CLI exit codes:
//   0 ok, 2 config, 3 ingest, 4 infeasible, 5 iteration/sample cap.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const noexcept { return 1; }
};

// Bad parameters: out-of-range thresholds, invalid distributions, malformed flags.
class ConfigError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 2; }
};

// Input files that cannot be read or parsed.
class IngestError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 3; }
};

// Structurally unsatisfiable requirements (required count exceeds ground set, ...).
class InfeasibleError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 4; }
};

// A doubling or search loop hit its configured cap before converging.
class CapExceededError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 5; }
};

}  // namespace dip
