#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace ttp2 {

// Raised for malformed or inconsistent input data. Carries the matrix cell
// (or text row/column) where the problem was found, when there is one.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& message, std::optional<int> row = {},
                      std::optional<int> column = {})
      : std::runtime_error(message), row_(row), column_(column) {}

  std::optional<int> row() const { return row_; }
  std::optional<int> column() const { return column_; }

 private:
  std::optional<int> row_;
  std::optional<int> column_;
};

// Raised when the constructor cannot produce a schedule it can stand behind,
// e.g. the flip budget cannot be met. Should never happen for supported n.
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ttp2
