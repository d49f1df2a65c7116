#ifndef OPERT_ERROR_HPP
#define OPERT_ERROR_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace opert {

enum class ErrorKind {
  FavardViolation,
  InsufficientMoments,
  QuasiDefinitenessFailure,
  DivisionByZero,
  InconsistentModification,
  Breakdown,
  BreakdownDenominator,
  NotConstant,
  DegenerateScale,
  ZeroMu,
  NotIterative,
  ZeroChristoffel,
  SingularLeadingBlock,
  BandProfileViolation,
  FactorizationBreakdown,
  NotSymmetric,
  NotSymmetricRelation,
  InvalidParameter,
  Precondition,
  ParseError,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::FavardViolation: return "FavardViolation";
    case ErrorKind::InsufficientMoments: return "InsufficientMoments";
    case ErrorKind::QuasiDefinitenessFailure: return "QuasiDefinitenessFailure";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::InconsistentModification: return "InconsistentModification";
    case ErrorKind::Breakdown: return "Breakdown";
    case ErrorKind::BreakdownDenominator: return "BreakdownDenominator";
    case ErrorKind::NotConstant: return "NotConstant";
    case ErrorKind::DegenerateScale: return "DegenerateScale";
    case ErrorKind::ZeroMu: return "ZeroMu";
    case ErrorKind::NotIterative: return "NotIterative";
    case ErrorKind::ZeroChristoffel: return "ZeroChristoffel";
    case ErrorKind::SingularLeadingBlock: return "SingularLeadingBlock";
    case ErrorKind::BandProfileViolation: return "BandProfileViolation";
    case ErrorKind::FactorizationBreakdown: return "FactorizationBreakdown";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::NotSymmetricRelation: return "NotSymmetricRelation";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::Precondition: return "Precondition";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Domain failure carrying a machine-readable kind and, when meaningful, the
/// index at which it occurred.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::optional<std::size_t> index = std::nullopt)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), index_(index) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> index_;
};

/// Outcome of a scan that looks for the first index violating a condition.
struct FirstFailure {
  std::optional<std::size_t> index;

  bool ok() const noexcept { return !index.has_value(); }
  static FirstFailure success() { return {}; }
  static FirstFailure at(std::size_t n) { return {n}; }
};

}  // namespace opert

#endif  // OPERT_ERROR_HPP
