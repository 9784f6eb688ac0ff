#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"
#include "scde/sweep.hpp"

using namespace scde;

namespace {

SweepPoint make_point(std::vector<double> params, double threshold, double rate_loss) {
  SweepPoint p;
  p.params = std::move(params);
  p.threshold = threshold;
  p.rate_loss = rate_loss;
  return p;
}

}  // namespace

TEST_SUITE("sweep") {

TEST_CASE("selection by threshold") {
  std::vector<SweepPoint> entries = {
      make_point({0.1}, 0.40, 0.9),
      make_point({0.2}, 0.45, 0.9),
      make_point({0.3}, 0.42, 0.1),
  };
  std::string sel;
  CHECK(select_best(entries, 2e-4, sel) == 1);
  CHECK(sel == "threshold");
}

TEST_CASE("ties fall back to the rate loss") {
  std::vector<SweepPoint> entries = {
      make_point({0.1}, 0.45000, 0.9),
      make_point({0.2}, 0.44995, 0.2),
      make_point({0.3}, 0.40000, 0.1),
  };
  std::string sel;
  CHECK(select_best(entries, 2e-4, sel) == 1);
  CHECK(sel == "rate-loss");
}

TEST_CASE("full ties fall back to the smallest parameters") {
  std::vector<SweepPoint> entries = {
      make_point({0.3}, 0.45, 0.5),
      make_point({0.2}, 0.45, 0.5),
      make_point({0.4}, 0.45, 0.5 + 1e-13),  // inside the rate slop
  };
  std::string sel;
  CHECK(select_best(entries, 2e-4, sel) == 1);
  CHECK(sel == "lexicographic");
}

TEST_CASE("selection rejects an empty sweep") {
  std::vector<SweepPoint> entries;
  std::string sel;
  CHECK_THROWS_AS(select_best(entries, 2e-4, sel), std::invalid_argument);
}

TEST_CASE("alpha sweep smoke") {
  SweepOptions opts;
  opts.grid_step = 0.1;
  opts.sweep_tol = 1e-3;
  opts.final_tol = 1e-3;
  const auto res = optimize_alpha(3, 6, 8, opts);
  CHECK(res.param_names == std::vector<std::string>{"alpha"});
  CHECK(res.grid_step == 0.1);
  CHECK(res.tie_window == 2e-3);

  int coarse = 0, refined = 0;
  for (const auto& e : res.entries) {
    CHECK(e.status == "ok");
    CHECK(e.params[0] >= 0.0);
    CHECK(e.params[0] <= 0.5);
    (e.stage == 0 ? coarse : refined) += 1;
  }
  CHECK(coarse == 6);
  CHECK(refined > 0);
  CHECK(refined <= 10);

  // The refinement points surround the coarse pick at a tenth of the step.
  for (const auto& e : res.entries) {
    if (e.stage == 1) {
      CHECK(std::fabs(e.params[0] - res.coarse_best.params[0]) <= 0.5 * 0.1 + 1e-12);
    }
  }

  // alpha = 0 is the uncoupled chain.
  CHECK(res.entries[0].params[0] == 0.0);
  CHECK(std::fabs(res.entries[0].threshold - 0.4294) <= 2e-3);

  // The winner sits inside the tie window of the sweep maximum and carries
  // the smallest rate loss among the tied entries.
  double max_thr = 0.0;
  for (const auto& e : res.entries) max_thr = std::max(max_thr, e.threshold);
  CHECK(res.best.sweep_threshold >= max_thr - res.tie_window - 1e-15);
  for (const auto& e : res.entries) {
    if (e.threshold >= max_thr - res.tie_window) {
      CHECK(res.best.rate_loss <= e.rate_loss + 1e-12);
    }
  }
  CHECK(res.best.threshold == doctest::Approx(res.best.sweep_threshold).epsilon(5e-3));
}

TEST_CASE("alpha sweep is deterministic across worker counts") {
  SweepOptions opts;
  opts.grid_step = 0.1;
  opts.sweep_tol = 1e-2;
  opts.final_tol = 1e-2;
  opts.refine = false;
  opts.workers = 1;
  const auto a = optimize_alpha(3, 6, 8, opts);
  opts.workers = 3;
  const auto b = optimize_alpha(3, 6, 8, opts);
  REQUIRE(a.entries.size() == b.entries.size());
  for (unsigned i = 0; i < a.entries.size(); ++i) {
    CHECK(a.entries[i].params == b.entries[i].params);
    CHECK(a.entries[i].threshold == b.entries[i].threshold);
  }
  CHECK(a.best.params == b.best.params);
}

TEST_CASE("width-3 sweep grid") {
  SweepOptions opts;
  opts.grid_step = 1.0 / 6.0;
  opts.sweep_tol = 1e-2;
  opts.final_tol = 1e-2;
  opts.refine = false;
  const auto res = optimize_nu3(3, 6, 8, opts);
  CHECK(res.param_names == std::vector<std::string>{"nu0", "nu1", "nu2"});
  CHECK(res.entries.size() == 28);
  for (const auto& e : res.entries) {
    REQUIRE(e.params.size() == 3);
    CHECK(e.params[0] + e.params[1] + e.params[2] == doctest::Approx(1.0).epsilon(1e-12));
    for (double v : e.params) CHECK(v >= 0.0);
    CHECK(e.stage == 0);
  }
  // The all-mass-at-one-end corners decouple the chain.
  CHECK(std::fabs(res.entries[0].threshold - 0.4294) <= 2e-2);
}

TEST_CASE("two-type sweep canonical grid") {
  SweepOptions opts;
  opts.grid_step = 0.25;
  opts.sweep_tol = 1e-2;
  opts.final_tol = 1e-2;
  opts.refine = false;
  const auto res = optimize_two_type(3, 8, opts);
  CHECK(res.param_names == std::vector<std::string>{"alpha_upper", "alpha_lower"});
  CHECK(res.entries.size() == 13);
  std::set<std::pair<double, double>> seen;
  for (const auto& e : res.entries) {
    const double a = e.params[0];
    const double b = e.params[1];
    // Canonical side of the (a,b) ~ (1-a,1-b) reflection.
    CHECK(a + b <= 1.0 + 1e-12);
    if (std::fabs(a + b - 1.0) <= 1e-12) CHECK(a <= 0.5 + 1e-12);
    seen.insert({a, b});
  }
  CHECK(seen.size() == res.entries.size());
}

TEST_CASE("protograph search enumerates the segment classes") {
  SweepOptions opts;
  opts.sweep_tol = 1e-2;
  opts.final_tol = 1e-2;
  const auto res = protograph_search_one(3, 8, opts);
  CHECK(res.param_names == std::vector<std::string>{"b1", "b2"});
  std::set<std::pair<int, int>> classes;
  for (const auto& e : res.entries) {
    classes.insert({static_cast<int>(e.params[0]), static_cast<int>(e.params[1])});
    CHECK(e.stage == 0);
  }
  const std::set<std::pair<int, int>> expect = {{0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 1}, {1, 2}};
  CHECK(classes == expect);

  const auto family = protograph_search(3, 4, 8, opts);
  REQUIRE(family.size() == 2);
  CHECK(family[1].entries.size() > family[0].entries.size());
}

TEST_CASE("final tolerance re-evaluation tightens the best point") {
  SweepOptions opts;
  opts.grid_step = 0.1;
  opts.sweep_tol = 1e-2;
  opts.final_tol = 1e-4;
  opts.refine = false;
  const auto res = optimize_alpha(5, 10, 12, opts);
  CHECK(std::fabs(res.best.threshold - res.best.sweep_threshold) <= 1e-2 + 1e-4);
  CHECK(res.final_tol == 1e-4);
  CHECK(res.sweep_tol == 1e-2);
}

TEST_CASE("sweep options are validated") {
  SweepOptions opts;
  opts.sweep_tol = 0.0;
  CHECK_THROWS_AS(optimize_alpha(3, 6, 8, opts), std::invalid_argument);
  SweepOptions opts2;
  opts2.max_iters = 0;
  CHECK_THROWS_AS(optimize_nu3(3, 6, 8, opts2), std::invalid_argument);
}

}  // TEST_SUITE
