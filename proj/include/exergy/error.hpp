#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace exergy {

// Base for everything the engine throws.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input data is well-formed but physically or structurally inconsistent
// (dangling ids, mass imbalance, second-law violations, ...).
class data_error : public error {
 public:
  using error::error;
};

// A balance whose efficiency is undefined (non-positive denominator) or
// above 1. The exergy flows themselves are still well defined.
class efficiency_error : public data_error {
 public:
  using data_error::data_error;
};

// The input could not be read as a plant file at all.
class parse_error : public error {
 public:
  using error::error;
};

// Bad command-line or API usage (unknown format name, bad sweep range, ...).
class usage_error : public error {
 public:
  using error::error;
};

// A data_error raised while evaluating one component.
class component_error : public data_error {
 public:
  component_error(std::string component_id, const std::string& what)
      : data_error("component '" + component_id + "': " + what),
        component_id_(std::move(component_id)) {}

  const std::string& component_id() const noexcept { return component_id_; }

 private:
  std::string component_id_;
};

}  // namespace exergy
