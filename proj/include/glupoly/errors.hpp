#pragma once

#include <stdexcept>
#include <string>

namespace glupoly {

/// Input data failed a structural invariant (bad gluing data, mark clash, ...).
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// A configured size/degree budget would be exceeded.
struct BudgetError : std::runtime_error {
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

/// A safety assertion tripped; indicates an encoding bug, not bad user input.
struct InternalError : std::logic_error {
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace glupoly
