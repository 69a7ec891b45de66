#pragma once

#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "plic/error.hpp"
#include "plic/pl_map.hpp"

namespace plic::testing {

inline Rational R(const char* s) { return Rational::parse(s); }

inline PLMap sym(std::vector<std::pair<const char*, const char*>> pts) {
  std::vector<Breakpoint> b;
  for (auto [x, y] : pts) b.push_back({R(x), R(y)});
  return PLMap(Domain::Symmetric, std::move(b));
}

inline PLMap unit(std::vector<std::pair<const char*, const char*>> pts) {
  std::vector<Breakpoint> b;
  for (auto [x, y] : pts) b.push_back({R(x), R(y)});
  return PLMap(Domain::Unit, std::move(b));
}

inline FiniteGrid grid(std::vector<const char*> pts) {
  std::vector<Rational> v;
  for (auto p : pts) v.push_back(R(p));
  return FiniteGrid(std::move(v));
}

inline PLMap z1() { return unit({{"0", "0"}, {"1/4", "1/2"}, {"1/2", "-3/4"}, {"1", "1"}}); }

/// The mixed-census zigzag used for the pipeline runs.
inline PLMap zigzag() { return sym({{"-1", "1"}, {"-1/2", "-1/2"}, {"0", "0"}, {"1/2", "1/2"}, {"1", "-1"}}); }

}  // namespace plic::testing

#define EXPECT_PLIC_ERROR(stmt, expected_kind)                                           \
  do {                                                                                   \
    try {                                                                                \
      stmt;                                                                              \
      ADD_FAILURE() << "expected " << plic::to_string(expected_kind) << ", nothing thrown"; \
    } catch (const plic::Error& e__) {                                                   \
      EXPECT_EQ(e__.kind(), expected_kind) << e__.what();                                \
    }                                                                                    \
  } while (0)
