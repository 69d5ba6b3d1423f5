#pragma once

#include <stdexcept>
#include <string>

namespace robench {

// Base for all harness errors. Subtypes exist so callers can catch the
// class of failure they can actually handle.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// corruption engine
struct UnknownAugmentation : Error {
  explicit UnknownAugmentation(const std::string& id)
      : Error("unknown augmentation: " + id) {}
};
struct SeverityMissing : Error {
  explicit SeverityMissing(const std::string& id)
      : Error("augmentation requires a severity: " + id) {}
};
struct SeverityNotApplicable : Error {
  explicit SeverityNotApplicable(const std::string& id)
      : Error("binary augmentation takes no severity: " + id) {}
};
struct EncodeFailure : Error {
  using Error::Error;
};

// dataset
struct ParseError : Error {
  ParseError(int line, const std::string& what)
      : Error("manifest line " + std::to_string(line) + ": " + what), line(line) {}
  int line;
};
struct ValidationError : Error {
  using Error::Error;
};

// model client
struct TransportError : Error {
  using Error::Error;
};
struct HttpError : Error {
  HttpError(int status, const std::string& body)
      : Error("http status " + std::to_string(status) + ": " + body), status(status) {}
  int status;
};
struct Timeout : Error {
  using Error::Error;
};
struct RetriesExhausted : Error {
  using Error::Error;
};

// orchestrator
struct ConfigMismatch : Error {
  using Error::Error;
};

// metrics
struct EmptyConfig : Error {
  using Error::Error;
};
struct NonPositiveVG : Error {
  using Error::Error;
};
struct ZeroReferenceError : Error {
  using Error::Error;
};
struct PartialResults : Error {
  using Error::Error;
};

}  // namespace robench
