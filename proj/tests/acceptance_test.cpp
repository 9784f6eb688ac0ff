// Release gate: reproduces the published operating points and the qualitative
// behaviors the library is built around. One [PASS]/[FAIL] line per criterion;
// nonzero exit if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "scde/de_kernel.hpp"
#include "scde/ensemble.hpp"
#include "scde/protograph.hpp"
#include "scde/protograph_de.hpp"
#include "scde/reference_tables.hpp"
#include "scde/smoothing.hpp"
#include "scde/speed.hpp"
#include "scde/sweep.hpp"
#include "scde/threshold.hpp"
#include "scde/two_type.hpp"
#include "scde/window.hpp"
#include "test_support.hpp"

using namespace scde;

namespace {

int g_failed_criteria = 0;

std::string strf(const char* fmt, ...) {
  char buf[256];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, ap);
  va_end(ap);
  return buf;
}

class Criterion {
 public:
  void expect(bool ok, const std::string& detail) {
    if (!ok) {
      ok_ = false;
      details_.push_back(detail);
    }
  }
  void note(const std::string& text) { notes_.push_back(text); }
  bool ok() const { return ok_; }
  const std::vector<std::string>& details() const { return details_; }
  const std::vector<std::string>& notes() const { return notes_; }

 private:
  bool ok_ = true;
  std::vector<std::string> notes_;
  std::vector<std::string> details_;
};

void run_criterion(int id, const char* title, const std::function<void(Criterion&)>& body) {
  Criterion c;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("unexpected exception: ") + e.what());
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("[%s] %d: %s (%.0fs)\n", c.ok() ? "PASS" : "FAIL", id, title, secs);
  for (const auto& n : c.notes()) std::printf("        note: %s\n", n.c_str());
  for (const auto& d : c.details()) std::printf("        failed: %s\n", d.c_str());
  std::fflush(stdout);
  if (!c.ok()) ++g_failed_criteria;
}

// Bisection settings used for every published-value reproduction. The default
// 50000-iteration cap biases near-threshold brackets low by about 1e-3 at
// L = 100 because the decoding front needs a whole chain transit to finish;
// 400000 shrinks that bias an order of magnitude below the 1e-3 gates.
double table_threshold(const DeSystem& sys) {
  ThresholdOptions opts;
  opts.tol = 1e-5;
  opts.run.max_iters = 400000;
  return bp_threshold(sys, opts).threshold;
}

double unit_memory_threshold(int dv, double alpha) {
  SingleTypeSystem sys(
      CoupledEnsembleSpec(dv, 2 * dv, SmoothingDistribution::unit_memory(alpha), 100));
  return table_threshold(sys);
}

void criterion_1(Criterion& c) {
  for (const auto& row : reftab::unit_memory_rows()) {
    const double unc = unit_memory_threshold(row.dv, 0.0);
    const double uni = unit_memory_threshold(row.dv, 0.5);
    const double opt = unit_memory_threshold(row.dv, row.alpha_star);
    c.expect(std::abs(unc - row.eps_bp_uncoupled) <= 1e-3,
             strf("dv=%d uncoupled %.5f vs %.5f", row.dv, unc, row.eps_bp_uncoupled));
    c.expect(std::abs(uni - row.eps_bp_uniform) <= 1e-3,
             strf("dv=%d alpha=1/2 %.5f vs %.5f", row.dv, uni, row.eps_bp_uniform));
    c.expect(std::abs(opt - row.eps_bp_alpha_star) <= 1e-3,
             strf("dv=%d alpha=%.4f %.5f vs %.5f", row.dv, row.alpha_star, opt,
                  row.eps_bp_alpha_star));
  }
}

void criterion_2(Criterion& c) {
  for (const auto& row : reftab::width3_rows()) {
    const int dc = 2 * row.dv;
    const SmoothingDistribution uni = SmoothingDistribution::uniform(3);
    const SmoothingDistribution star{
        {row.nu0_star, row.nu1_star, 1.0 - row.nu0_star - row.nu1_star}};

    SingleTypeSystem sys_uni(CoupledEnsembleSpec(row.dv, dc, uni, 100));
    SingleTypeSystem sys_star(CoupledEnsembleSpec(row.dv, dc, star, 100));
    const double t_uni = table_threshold(sys_uni);
    const double t_star = table_threshold(sys_star);
    c.expect(std::abs(t_uni - row.eps_bp_uniform) <= 1e-3,
             strf("dv=%d uniform %.5f vs %.5f", row.dv, t_uni, row.eps_bp_uniform));
    c.expect(std::abs(t_star - row.eps_bp_star) <= 1e-3,
             strf("dv=%d optimized %.5f vs %.5f", row.dv, t_star, row.eps_bp_star));

    const double d_uni = rate_loss_delta(row.dv, dc, uni);
    const double d_star = rate_loss_delta(row.dv, dc, star);
    c.expect(std::abs(d_uni - row.delta_uniform) <= 5e-4,
             strf("dv=%d delta uniform %.4f vs %.3f", row.dv, d_uni, row.delta_uniform));
    c.expect(std::abs(d_star - row.delta_star) <= 5e-4,
             strf("dv=%d delta optimized %.4f vs %.3f", row.dv, d_star, row.delta_star));
  }
}

void criterion_3(Criterion& c) {
  for (const auto& row : reftab::two_type_rows()) {
    TwoTypeSystem sys(TwoTypeSpec(row.dv, row.alpha_upper_star, row.alpha_lower_star, 100));
    const double t = table_threshold(sys);
    c.expect(std::abs(t - row.eps_bp) <= 1e-3,
             strf("dv=%d (%.3f,%.3f) %.5f vs %.4f", row.dv, row.alpha_upper_star,
                  row.alpha_lower_star, t, row.eps_bp));
  }
}

void criterion_4(Criterion& c) {
  for (const auto& row : reftab::protograph_rows()) {
    ProtographSystem sys(ProtographChain(row.dv, row.b1, row.b2, 100));
    const double t = table_threshold(sys);
    c.expect(std::abs(t - row.eps_bp) <= 1e-3,
             strf("dv=%d (%d,%d) %.5f vs %.5f", row.dv, row.b1, row.b2, t, row.eps_bp));
  }
}

void criterion_5(Criterion& c) {
  SweepOptions so;
  so.sweep_tol = 1e-5;
  so.final_tol = 1e-5;
  so.max_iters = 400000;

  for (int dv : {3, 5, 10}) {
    const auto& rows = reftab::unit_memory_rows();
    const auto row =
        std::find_if(rows.begin(), rows.end(), [dv](const auto& r) { return r.dv == dv; });
    const auto r = optimize_alpha(dv, 2 * dv, 100, so);
    const double a = r.best.params[0];
    c.expect(std::abs(a - row->alpha_star) <= 0.01,
             strf("dv=%d best alpha %.4f vs %.4f +-0.01", dv, a, row->alpha_star));
    c.expect(std::abs(r.best.threshold - row->eps_bp_alpha_star) <= 1e-3,
             strf("dv=%d best threshold %.5f vs %.5f", dv, r.best.threshold,
                  row->eps_bp_alpha_star));
  }

  SweepOptions so3 = so;
  so3.refine = false;  // the claim under test is the coarse-grid argmax
  for (int dv : {3, 4}) {
    const auto& rows = reftab::width3_rows();
    const auto row =
        std::find_if(rows.begin(), rows.end(), [dv](const auto& r) { return r.dv == dv; });
    const int want0 = static_cast<int>(std::lround(row->nu0_star * 38));
    const int want1 = static_cast<int>(std::lround(row->nu1_star * 38));
    const int want2 = 38 - want0 - want1;
    const auto r = optimize_nu3(dv, 2 * dv, 100, so3);
    const auto& p = r.coarse_best.params;
    const bool exact = std::lround(p[0] * 38) == want0 && std::lround(p[1] * 38) == want1 &&
                       std::lround(p[2] * 38) == want2 && std::abs(p[0] * 38 - want0) < 1e-6 &&
                       std::abs(p[1] * 38 - want1) < 1e-6;
    c.expect(exact, strf("dv=%d coarse best (%.0f,%.0f,%.0f)/38 vs (%d,%d,%d)/38", dv,
                         p[0] * 38, p[1] * 38, p[2] * 38, want0, want1, want2));
  }

  if (!c.ok()) {
    c.note(
        "the optimum plateaus are flatter than the 2*tol tie window, so the "
        "rate-loss tie-break selects a cheaper design than the published one; "
        "converged probes put lower-rate-loss neighbors inside the window at "
        "any iteration cap (see the selection-rule section of the README)");
  }
}

void criterion_6(Criterion& c) {
  // Monotone in the state and range-preserving.
  {
    CoupledEnsembleSpec spec(4, 8, SmoothingDistribution{{0.25, 0.5, 0.25}}, 30);
    SingleTypeSystem sys(spec);
    std::mt19937_64 rng(7041u);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double eps = 0.45;
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> lo(sys.state_size()), hi(sys.state_size());
      for (unsigned i = 0; i < lo.size(); ++i) {
        const double a = u(rng), b = u(rng);
        lo[i] = std::min(a, b);
        hi[i] = std::max(a, b);
      }
      // Positions past L stay zero in any reachable state; the update
      // carries them through as-is, so only seed the live range.
      for (unsigned i = static_cast<unsigned>(spec.L); i < lo.size(); ++i) lo[i] = hi[i] = 0.0;
      std::vector<double> lo2(lo.size()), hi2(hi.size());
      sys.step(lo, lo2, eps);
      sys.step(hi, hi2, eps);
      bool mono = true, range = true;
      for (unsigned i = 0; i < lo2.size(); ++i) {
        mono = mono && lo2[i] <= hi2[i];
        range = range && lo2[i] >= 0.0 && lo2[i] <= eps;
      }
      c.expect(mono, strf("update not monotone (trial %d)", trial));
      c.expect(range, strf("update left [0,eps] (trial %d)", trial));
    }
  }

  // Reversing the smoothing changes nothing observable.
  {
    const SmoothingDistribution nu{{0.2, 0.3, 0.5}};
    c.expect(rate_loss_delta(5, 10, nu) == rate_loss_delta(5, 10, nu.reversed()),
             "rate loss changed under reversal");
    SingleTypeSystem fwd(CoupledEnsembleSpec(5, 10, nu, 60));
    SingleTypeSystem rev(CoupledEnsembleSpec(5, 10, nu.reversed(), 60));
    ThresholdOptions to;
    to.tol = 1e-5;
    const double tf = bp_threshold(fwd, to).threshold;
    const double tr = bp_threshold(rev, to).threshold;
    c.expect(std::abs(tf - tr) <= 2e-5, strf("reversal thresholds %.7f vs %.7f", tf, tr));
  }

  // Uniform smoothing reduces to the classical one-sided recursion.
  {
    const int L = 15, w = 3;
    CoupledEnsembleSpec spec(3, 6, SmoothingDistribution::uniform(w), L);
    SingleTypeSystem sys(spec);
    std::vector<double> state(sys.state_size());
    sys.init_state(state, 0.46);
    std::vector<double> next(state.size());
    std::vector<double> oracle(L + w - 1, 0.0);
    for (int z = 1; z <= L; ++z) oracle[z - 1] = 0.46;
    bool agree = true;
    for (int t = 0; t < 25; ++t) {
      sys.step(state, next, 0.46);
      state.swap(next);
      oracle = testsup::classical_uniform_step(oracle, 3, 6, w, L, 0.46);
      for (int z = 1; z <= L; ++z) {
        agree = agree && std::abs(sys.position_value(state, z) - oracle[z - 1]) <= 1e-15;
      }
    }
    c.expect(agree, "uniform smoothing deviates from the classical recursion oracle");
  }

  // Windowed feasibility is dominated by full BP, monotonically in budget.
  {
    SingleTypeSystem sys(CoupledEnsembleSpec(5, 10, SmoothingDistribution::unit_memory(0.3), 40));
    ThresholdOptions to;
    to.tol = 1e-3;
    const double t_full = bp_threshold(sys, to).threshold;
    auto wt = [&](int W, int I) {
      return windowed_threshold(sys, WindowConfig{W, I}, to).threshold;
    };
    const double t103 = wt(10, 3), t109 = wt(10, 9), t203 = wt(20, 3), t209 = wt(20, 9);
    c.expect(t103 <= t109 && t109 <= t209 && t103 <= t203 && t203 <= t209,
             strf("window budget order broken: %.4f %.4f %.4f %.4f", t103, t109, t203, t209));
    c.expect(t209 <= t_full, strf("windowed %.4f above full BP %.4f", t209, t_full));
  }

  // Wave speed decreases toward the threshold and vanishes near it.
  {
    SingleTypeSystem sys(
        CoupledEnsembleSpec(5, 10, SmoothingDistribution::unit_memory(0.359), 100));
    const double v43 = estimate_speed(sys, 0.43).speed;
    const double v45 = estimate_speed(sys, 0.45).speed;
    const double v47 = estimate_speed(sys, 0.47).speed;
    c.expect(v43 >= v45 && v45 >= v47,
             strf("speed order broken: %.5f %.5f %.5f", v43, v45, v47));
    SpeedOptions deep;
    deep.max_iters = 200000;
    const double near = estimate_speed(sys, 0.4985, deep).speed;
    c.expect(near > 0.0 && near < 0.01, strf("near-threshold speed %.5f not small", near));
  }
}

void criterion_7(Criterion& c) {
  // (a) Tilted coupling forms a single wave that outruns the balanced pair.
  {
    const double eps = 0.48;
    auto decoded = [&](double alpha) {
      SingleTypeSystem sys(
          CoupledEnsembleSpec(5, 10, SmoothingDistribution::unit_memory(alpha), 100));
      std::vector<double> state(sys.state_size());
      sys.init_state(state, eps);
      std::vector<double> next(state.size());
      for (int t = 0; t < 600; ++t) {
        sys.step(state, next, eps);
        state.swap(next);
      }
      int left = 0;
      while (left < 100 && sys.position_value(state, left + 1) < eps / 2) ++left;
      int right = 0;
      while (right < 100 - left && sys.position_value(state, 100 - right) < eps / 2) ++right;
      return std::pair<int, int>(left, right);
    };
    const auto tilted = decoded(0.35);
    const auto balanced = decoded(0.5);
    c.expect(tilted.second == 0,
             strf("tilted profile not one-sided: right frontier %d", tilted.second));
    c.expect(balanced.first == balanced.second,
             strf("balanced profile asymmetric: %d vs %d", balanced.first, balanced.second));
    c.expect(tilted.first > balanced.first,
             strf("tilted front %d not ahead of balanced front %d", tilted.first,
                  balanced.first));
  }

  // (b) The speed-maximizing coupling fraction sits next to the
  // threshold-maximizing one.
  {
    auto argmax_alpha = [&](int dv, double eps, double lo, double hi) {
      std::vector<double> alphas;
      for (double a = lo; a <= hi + 1e-9; a += 0.01) alphas.push_back(a);
      const auto grid = speed_contours(
          [dv](double a) -> std::unique_ptr<DeSystem> {
            return std::make_unique<SingleTypeSystem>(
                CoupledEnsembleSpec(dv, 2 * dv, SmoothingDistribution::unit_memory(a), 100));
          },
          alphas, {eps});
      double best_a = -1.0, best_v = -1.0;
      for (const auto& e : grid) {
        if (e.has_wave && e.speed > best_v) {
          best_v = e.speed;
          best_a = e.param;
        }
      }
      return best_a;
    };
    const double a5 = argmax_alpha(5, 0.48, 0.28, 0.44);
    c.expect(std::abs(a5 - 0.359) <= 0.03, strf("speed argmax %.2f far from 0.359", a5));
    const double a10 = argmax_alpha(10, 0.44, 0.17, 0.31);
    c.expect(std::abs(a10 - 0.2368) <= 0.03, strf("speed argmax %.2f far from 0.2368", a10));
  }

  // (c) Window/iteration budget ordering holds across coupling tilts.
  {
    ThresholdOptions to;
    to.tol = 1e-4;
    for (double alpha : {0.1, 0.3, 0.5}) {
      SingleTypeSystem sys(
          CoupledEnsembleSpec(5, 10, SmoothingDistribution::unit_memory(alpha), 100));
      auto wt = [&](int W, int I) {
        return windowed_threshold(sys, WindowConfig{W, I}, to).threshold;
      };
      const double t103 = wt(10, 3), t109 = wt(10, 9), t203 = wt(20, 3), t209 = wt(20, 9);
      const bool ordered = t103 <= t109 && t109 <= t209 && t103 <= t203 && t203 <= t209;
      c.expect(ordered, strf("alpha=%.2f order broken: %.4f %.4f %.4f %.4f", alpha, t103, t109,
                             t203, t209));
    }
  }
}

void criterion_8(Criterion& c) {
  // Frozen values from the first validated runs; D = 10, default caps.
  {
    SingleTypeSystem sys(
        CoupledEnsembleSpec(5, 10, SmoothingDistribution::unit_memory(0.359), 100));
    const auto est = estimate_speed(sys, 0.45);
    c.expect(est.iterations == 133 && est.burn_in == 82,
             strf("single-type timing %d/%d vs 133/82", est.iterations, est.burn_in));
    c.expect(std::abs(est.speed - 10.0 / 133.0) <= 1e-12,
             strf("single-type speed %.15f vs 10/133", est.speed));

    // Independent frontier oracle: displacement per iteration of the eps/2
    // crossing of a naively stepped profile, averaged over iterations 150
    // through 450 (after the transient, long before the chain ends).
    CoupledEnsembleSpec spec(5, 10, SmoothingDistribution::unit_memory(0.359), 100);
    std::vector<double> prof(101, 0.0);
    for (int z = 1; z <= 100; ++z) prof[z - 1] = 0.45;
    auto frontier = [&](const std::vector<double>& p) {
      int z = 0;
      while (z < 100 && p[z] < 0.225) ++z;
      return z;
    };
    int f150 = 0, f450 = 0;
    for (int t = 1; t <= 450; ++t) {
      prof = testsup::naive_coupled_step(prof, spec, 0.45);
      if (t == 150) f150 = frontier(prof);
      if (t == 450) f450 = frontier(prof);
    }
    const double oracle = (f450 - f150) / 300.0;
    c.note(strf("frontier oracle %.5f, timed estimate %.5f", oracle, est.speed));
    c.expect(std::abs(est.speed - oracle) <= 0.15 * oracle,
             strf("speed %.5f disagrees with frontier oracle %.5f", est.speed, oracle));

    // Doubling the timed displacement barely moves the estimate.
    SpeedOptions so20;
    so20.displacement = 20;
    const double v20 = estimate_speed(sys, 0.45, so20).speed;
    c.expect(std::abs(est.speed - v20) <= 0.1 * v20,
             strf("displacement doubling %.5f vs %.5f", est.speed, v20));

    // Delaying the reference snapshot by 50 iterations changes timing
    // bookkeeping but not the measured speed.
    SpeedOptions so_settle;
    so_settle.settle_iters = 50;
    const auto est2 = estimate_speed(sys, 0.45, so_settle);
    c.expect(est2.burn_in == est.burn_in + 50,
             strf("settled burn-in %d vs %d+50", est2.burn_in, est.burn_in));
    c.expect(std::abs(est2.speed - est.speed) <= 0.1 * est.speed,
             strf("settled speed %.5f vs %.5f", est2.speed, est.speed));
  }

  {
    ProtographSystem sys(ProtographChain(5, 1, 1, 100));
    const auto est = estimate_speed(sys, 0.48);
    c.expect(est.iterations == 222 && est.burn_in == 142,
             strf("protograph timing %d/%d vs 222/142", est.iterations, est.burn_in));
    c.expect(std::abs(est.speed - 10.0 / 222.0) <= 1e-12,
             strf("protograph speed %.15f vs 10/222", est.speed));
  }

  {
    TwoTypeSystem sys(TwoTypeSpec(6, 0.278, 0.375, 100));
    const auto est = estimate_speed(sys, 0.47);
    c.expect(est.iterations == 269 && est.burn_in == 165,
             strf("two-type timing %d/%d vs 269/165", est.iterations, est.burn_in));
    c.expect(std::abs(est.speed - 10.0 / 269.0) <= 1e-12,
             strf("two-type speed %.15f vs 10/269", est.speed));
  }
}

}  // namespace

int main() {
  std::printf("acceptance gates: published tables, optimizer recovery, dynamics\n");
  run_criterion(1, "unit-memory threshold table, L=100, gate 1e-3", criterion_1);
  run_criterion(2, "width-3 smoothing table, thresholds 1e-3 and rate loss 5e-4", criterion_2);
  run_criterion(3, "two-population coupling table, gate 1e-3", criterion_3);
  run_criterion(4, "protograph segment table, gate 1e-3", criterion_4);
  run_criterion(5, "grid search recovers the published optima", criterion_5);
  run_criterion(6, "order, symmetry, reduction, and window/speed properties", criterion_6);
  run_criterion(7, "figure shapes: one-sided wave, speed-optimal alpha, window order",
                criterion_7);
  run_criterion(8, "frozen wave-speed regressions and the frontier oracle", criterion_8);
  if (g_failed_criteria == 0) {
    std::printf("all criteria passed\n");
    return 0;
  }
  std::printf("%d criteria failed\n", g_failed_criteria);
  return 1;
}
