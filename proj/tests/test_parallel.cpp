#include <gtest/gtest.h>

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "floquet3/parallel.hpp"

namespace floquet3 {
namespace {

TEST(Parallel, VisitsEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  parallel_for(0, [](std::size_t) { FAIL(); });
}

TEST(Parallel, RethrowsLowestFailingIndex) {
  try {
    parallel_for(100, [](std::size_t i) {
      if (i == 17 || i == 60) throw std::runtime_error(std::to_string(i));
    });
    FAIL() << "expected exception";
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "17");
  }
}

TEST(Parallel, NestedCallsRun) {
  std::atomic<int> total{0};
  parallel_for(8, [&](std::size_t) { parallel_for(8, [&](std::size_t) { total++; }); });
  EXPECT_EQ(total.load(), 64);
}

TEST(Parallel, ThreadCapFromEnvironment) {
  ::setenv("FLOQUET3_THREADS", "3", 1);
  EXPECT_EQ(worker_count(), 3u);
  ::setenv("FLOQUET3_THREADS", "0", 1);
  EXPECT_GE(worker_count(), 1u);
  ::setenv("FLOQUET3_THREADS", "junk", 1);
  EXPECT_GE(worker_count(), 1u);
  ::unsetenv("FLOQUET3_THREADS");
  EXPECT_GE(worker_count(), 1u);
}

}  // namespace
}  // namespace floquet3
