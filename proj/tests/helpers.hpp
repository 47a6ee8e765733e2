#ifndef FDP_TESTS_HELPERS_HPP_
#define FDP_TESTS_HELPERS_HPP_

#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <string>

#include <gtest/gtest.h>

#include "fdp/error.hpp"

namespace testing_util {

// Fresh scratch directory under the build tree.
inline std::filesystem::path scratch(const std::string& name) {
  const auto p = std::filesystem::path(FDP_TEST_TMP) / name;
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void spit(const std::filesystem::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary);
  out << s;
}

// Runs f and returns the kind of the fdp::Error it throws.
template <typename F>
std::optional<fdp::ErrorKind> error_kind(F&& f) {
  try {
    f();
  } catch (const fdp::Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

}  // namespace testing_util

#define EXPECT_FDP_ERROR(stmt, k) \
  EXPECT_EQ(testing_util::error_kind([&] { (void)(stmt); }), std::optional<fdp::ErrorKind>(k))

#endif  // FDP_TESTS_HELPERS_HPP_
