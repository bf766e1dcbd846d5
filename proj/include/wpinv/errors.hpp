#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wpinv {

enum class ErrorKind {
  InvalidArgument,
  DimensionMismatch,
  NotHermitian,
  NotPositiveDefinite,
  ConvergenceFailure,
  CriterionMismatch,
  VerificationFailure,
  InconsistentProjectors,
  SingularCore,
  PreconditionUnmet,
  WitnessFailure,
  Defective,
  NotInvariant,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Base of every error raised by the library. Callers that only care about
/// the category can catch this and switch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), detail_(what) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// Message without the kind prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

template <ErrorKind K>
class KindedError : public Error {
 public:
  explicit KindedError(const std::string& what) : Error(K, what) {}
};

using InvalidArgument = KindedError<ErrorKind::InvalidArgument>;
using DimensionMismatch = KindedError<ErrorKind::DimensionMismatch>;
using NotHermitian = KindedError<ErrorKind::NotHermitian>;
using NotPositiveDefinite = KindedError<ErrorKind::NotPositiveDefinite>;
using ConvergenceFailure = KindedError<ErrorKind::ConvergenceFailure>;
using CriterionMismatch = KindedError<ErrorKind::CriterionMismatch>;
using VerificationFailure = KindedError<ErrorKind::VerificationFailure>;
using InconsistentProjectors = KindedError<ErrorKind::InconsistentProjectors>;
using SingularCore = KindedError<ErrorKind::SingularCore>;
using PreconditionUnmet = KindedError<ErrorKind::PreconditionUnmet>;
using WitnessFailure = KindedError<ErrorKind::WitnessFailure>;
using Defective = KindedError<ErrorKind::Defective>;
using NotInvariant = KindedError<ErrorKind::NotInvariant>;
using ParseError = KindedError<ErrorKind::ParseError>;

}  // namespace wpinv
