#pragma once

#include <stdexcept>
#include <string>

namespace jetvar {

/// Machine-readable error category, surfaced by the CLI as `error.code`.
enum class ErrorCode {
  Context,       // coordinate or symbol outside the jet context
  Order,         // jet order exceeds the context cap
  Substitution,  // missing binding
  Degree,        // form degree precondition
  Domain,        // operation precondition on the input object
  Structure,     // input does not have the required polynomial structure
  Horizontality, // form contains forbidden basis covectors
  Dimension,     // tensor type / fiber dimension mismatch
  Evaluation,    // numeric evaluation could not ground an atom
  Internal,      // a postcondition check failed
  Parse,         // model file syntax or semantic error
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ContextError : public Error {
 public:
  explicit ContextError(const std::string& what) : Error(ErrorCode::Context, what) {}
};

class OrderError : public Error {
 public:
  explicit OrderError(const std::string& what) : Error(ErrorCode::Order, what) {}
};

class SubstitutionError : public Error {
 public:
  explicit SubstitutionError(const std::string& what) : Error(ErrorCode::Substitution, what) {}
};

class DegreeError : public Error {
 public:
  explicit DegreeError(const std::string& what) : Error(ErrorCode::Degree, what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorCode::Domain, what) {}
};

class StructureError : public Error {
 public:
  explicit StructureError(const std::string& what) : Error(ErrorCode::Structure, what) {}
};

class HorizontalityError : public Error {
 public:
  explicit HorizontalityError(const std::string& what) : Error(ErrorCode::Horizontality, what) {}
};

class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& what) : Error(ErrorCode::Dimension, what) {}
};

class EvaluationError : public Error {
 public:
  explicit EvaluationError(const std::string& what) : Error(ErrorCode::Evaluation, what) {}
};

class InternalError : public Error {
 public:
  explicit InternalError(const std::string& what) : Error(ErrorCode::Internal, what) {}
};

}  // namespace jetvar
