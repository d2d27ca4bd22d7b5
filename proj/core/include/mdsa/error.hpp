#pragma once

#include <stdexcept>
#include <string>

namespace mdsa {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument is outside the domain of an operation.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// A configuration file or flag set could not be turned into a valid SimConfig.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// The simulator reached a state its invariants forbid (e.g. delivery to a dead node).
class SimulationError : public Error {
 public:
  using Error::Error;
};

// Encoded symbols contradict each other.
class DataCorruptionError : public Error {
 public:
  using Error::Error;
};

// Fewer alive nodes than a recovery query asks for. Sweeps skip the trial.
class InsufficientNodesError : public Error {
 public:
  using Error::Error;
};

}  // namespace mdsa
