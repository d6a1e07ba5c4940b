#pragma once

#include "omt/exactline.hpp"

inline omt::Rat Q(long p, long d = 1) {
  omt::Rat r(p, d);
  r.canonicalize();
  return r;
}

#include <optional>

#include "omt/error.hpp"

// kind of the omt::Error thrown by f, if any
template <class F>
std::optional<omt::ErrorKind> thrown_kind(F&& f) {
  try {
    f();
  } catch (const omt::Error& e) {
    return e.kind();
  }
  return std::nullopt;
}
