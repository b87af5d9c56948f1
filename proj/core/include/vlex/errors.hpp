#pragma once

#include <stdexcept>
#include <string>

namespace vlex {

/// Error taxonomy mirrored by the CLI exit-code contract: every Error kind
/// maps to exit code 2 (bad input / unusable request); certificate failures
/// are *not* errors — they are reports with pass=false and map to exit code 1.
class Error : public std::runtime_error {
public:
  enum class Kind {
    Validation,    // malformed space description or function
    Parameter,     // out-of-range tolerance, sample count, step size, ...
    Reference,     // unknown region/family id or out-of-range member index
    Precondition,  // operation requested on a space that cannot support it
    Construction,  // builder cannot realize the requested object
    Io,            // file / JSON parse problems
  };

  Error(Kind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  Kind kind() const { return kind_; }

  const char* kind_name() const {
    switch (kind_) {
      case Kind::Validation: return "validation";
      case Kind::Parameter: return "parameter";
      case Kind::Reference: return "reference";
      case Kind::Precondition: return "precondition";
      case Kind::Construction: return "construction";
      case Kind::Io: return "io";
    }
    return "unknown";
  }

private:
  Kind kind_;
};

[[noreturn]] inline void fail_validation(const std::string& msg) {
  throw Error(Error::Kind::Validation, msg);
}
[[noreturn]] inline void fail_parameter(const std::string& msg) {
  throw Error(Error::Kind::Parameter, msg);
}
[[noreturn]] inline void fail_reference(const std::string& msg) {
  throw Error(Error::Kind::Reference, msg);
}
[[noreturn]] inline void fail_precondition(const std::string& msg) {
  throw Error(Error::Kind::Precondition, msg);
}
[[noreturn]] inline void fail_construction(const std::string& msg) {
  throw Error(Error::Kind::Construction, msg);
}
[[noreturn]] inline void fail_io(const std::string& msg) {
  throw Error(Error::Kind::Io, msg);
}

}  // namespace vlex
