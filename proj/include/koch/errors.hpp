#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace koch {

// Base of all library errors; `kind()` is a stable machine-readable tag.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

// Argument outside its mathematical domain.
struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error("domain", w) {}
};

// Structural level/index outside the supported range.
struct BoundsError : Error {
  explicit BoundsError(const std::string& w) : Error("bounds", w) {}
};

// Inconsistent truncation/configuration choices.
struct ConfigError : Error {
  explicit ConfigError(const std::string& w) : Error("config", w) {}
};

// A numerical tolerance that must hold internally failed to.
struct AccuracyError : Error {
  explicit AccuracyError(const std::string& w) : Error("accuracy", w) {}
};

}  // namespace koch
