#pragma once

#include <stdexcept>
#include <string>

namespace tslv {

// t is not a point of the time scale (within the membership tolerance).
struct PointNotInScale : std::runtime_error {
  explicit PointNotInScale(const std::string& msg) : std::runtime_error(msg) {}
};

// 1 + mu*p vanished: the regressivity condition fails, e_p is undefined.
struct NotRegressive : std::runtime_error {
  explicit NotRegressive(const std::string& msg) : std::runtime_error(msg) {}
};

// An enumeration or simulation budget ran out before the requested horizon.
struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

// A region family or check was requested for a regime that does not define it.
struct RegimeMismatch : std::runtime_error {
  explicit RegimeMismatch(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed parameters, scenario, or suite configuration.
struct ConfigInvalid : std::runtime_error {
  explicit ConfigInvalid(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace tslv
