#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace msplot {

enum class Errc {
  // input / configuration errors
  InvalidGrid,
  NonFiniteValue,
  ShapeMismatch,
  DuplicateId,
  RaggedGrid,
  ParseError,
  UnknownModel,
  UseClosedForm,
  ArrayNeedsMultivariate,
  NoBoundaryGeometry,
  DomainError,
  // numerical degeneracy
  DegenerateCrossSection,
  DegenerateSample,
  SingularScatter,
  InsufficientData,
  NotPositiveDefinite,
};

std::string_view to_string(Errc code) noexcept;

/// True for failures caused by the data being numerically degenerate, as
/// opposed to malformed input or configuration.
bool is_numerical(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, std::optional<std::int64_t> index = std::nullopt)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), index_(index) {}

  Errc code() const noexcept { return code_; }

  /// Offending grid index, curve index or replication, when one applies.
  std::optional<std::int64_t> index() const noexcept { return index_; }

 private:
  Errc code_;
  std::optional<std::int64_t> index_;
};

}  // namespace msplot
