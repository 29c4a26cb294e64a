#pragma once
#include <stdexcept>
#include <string>

namespace drapekit {

// Base for all toolkit errors; carries a stable kind string so CLI reports
// and tests can dispatch without RTTI.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& msg)
      : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

#define DRAPEKIT_DEFINE_ERROR(Name)                        \
  class Name : public Error {                              \
   public:                                                 \
    explicit Name(const std::string& msg = "")             \
        : Error(#Name, msg) {}                             \
  }

DRAPEKIT_DEFINE_ERROR(InvalidMesh);
DRAPEKIT_DEFINE_ERROR(InvalidContour);
DRAPEKIT_DEFINE_ERROR(OutOfBounds);
DRAPEKIT_DEFINE_ERROR(NotWatertight);
DRAPEKIT_DEFINE_ERROR(DomainError);
DRAPEKIT_DEFINE_ERROR(EmptyDatabase);
DRAPEKIT_DEFINE_ERROR(LabelMismatch);
DRAPEKIT_DEFINE_ERROR(SimDiverged);
DRAPEKIT_DEFINE_ERROR(CalibrationFailed);
DRAPEKIT_DEFINE_ERROR(IcpDiverged);
DRAPEKIT_DEFINE_ERROR(DegenerateMesh);
DRAPEKIT_DEFINE_ERROR(DegenerateRestShape);
DRAPEKIT_DEFINE_ERROR(DegenerateTask);
DRAPEKIT_DEFINE_ERROR(NumericalFailure);
DRAPEKIT_DEFINE_ERROR(InvalidNoiseSpec);
DRAPEKIT_DEFINE_ERROR(CategoryMismatch);
DRAPEKIT_DEFINE_ERROR(SignalTooShort);
DRAPEKIT_DEFINE_ERROR(ValidationError);
DRAPEKIT_DEFINE_ERROR(NoData);

#undef DRAPEKIT_DEFINE_ERROR

// OBJ parsing failure; remembers the offending 1-based line.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& msg)
      : Error("ParseError", "line " + std::to_string(line) + ": " + msg),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace drapekit
