#include <doctest.h>

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "nlrc/parallel.hpp"

using namespace nlrc;

TEST_SUITE("parallel") {

TEST_CASE("every index runs exactly once") {
  for (unsigned jobs : {1u, 2u, 5u, 64u}) {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), jobs, [&](std::size_t i) { hits[i].fetch_add(1); });
    for (const auto& h : hits) CHECK(h.load() == 1);
  }
  parallel_for(0, 4, [](std::size_t) { FAIL("no work expected"); });
}

TEST_CASE("exceptions reach the caller") {
  CHECK_THROWS_AS(parallel_for(100, 4,
                               [](std::size_t i) {
                                 if (i == 37) throw std::runtime_error("boom");
                               }),
                  std::runtime_error);
}

TEST_CASE("worker count from the environment") {
  setenv("NLRC_JOBS", "3", 1);
  CHECK(default_worker_count() == 3);
  setenv("NLRC_JOBS", "zero", 1);
  CHECK(default_worker_count() >= 1);
  unsetenv("NLRC_JOBS");
  CHECK(default_worker_count() >= 1);
}

}  // TEST_SUITE
