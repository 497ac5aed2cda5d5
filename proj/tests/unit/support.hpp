#pragma once

#include <doctest.h>

#include "dnt/error.hpp"

// Checks that `expr` throws dnt::Error carrying `errc`.
#define CHECK_ERRC(expr, errc)                     \
  do {                                             \
    try {                                          \
      (void)(expr);                                \
      FAIL_CHECK("expected " #errc);               \
    } catch (const dnt::Error& caught_) {          \
      CHECK_EQ(caught_.code(), (errc));            \
    }                                              \
  } while (0)

namespace doctest {
template <>
struct StringMaker<dnt::Errc> {
  static String convert(dnt::Errc c) { return String(dnt::errc_name(c).data(), static_cast<unsigned>(dnt::errc_name(c).size())); }
};
}  // namespace doctest
