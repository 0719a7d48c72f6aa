#pragma once

#include <optional>

#include "capmass/errors.hpp"

// Code of the capmass::Error thrown by f, or nullopt if it returns.
template <class F>
std::optional<capmass::ErrorCode> error_code_of(F&& f) {
  try {
    f();
  } catch (const capmass::Error& e) {
    return e.code();
  }
  return std::nullopt;
}
