// Runs the acceptance criteria at their stated tolerances and prints one
// PASS/FAIL line per criterion. Optional argument: a file that receives the
// same report.
//
// The exit status is 0 when every criterion ran to completion, whatever its
// verdict, and 2 when a criterion threw.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mln/baselines.hpp"
#include "mln/bench/generators.hpp"
#include "mln/bench/runner.hpp"
#include "mln/diagnostics.hpp"
#include "mln/linalg.hpp"
#include "mln/matrix_sketch.hpp"
#include "mln/mln.hpp"
#include "oracles.hpp"

using namespace mln;
using namespace mln::bench;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

double rel_error(const DenseTensor& a, const TuckerTensor& t) {
  return frobenius_distance(a, densify(t)) / frobenius_norm(a);
}

MlnParams uniform_params(std::size_t d, std::size_t r, std::optional<std::size_t> ell, std::uint64_t seed) {
  MlnParams p;
  p.ranks.assign(d, r);
  if (ell) p.oversample = std::vector<std::size_t>(d, *ell);
  p.seed = seed;
  return p;
}

struct Verdict {
  bool pass = false;
  std::string detail;
};

Verdict exact_rank_recovery() {
  double worst_err = 0.0, worst_time = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const DenseTensor a = random_lowrank({40, 40, 40}, {5, 5, 5}, seed);
    const auto t0 = Clock::now();
    const TuckerTensor t = mln_approximate(a, uniform_params(3, 5, 2, seed));
    worst_time = std::max(worst_time, seconds_since(t0));
    worst_err = std::max(worst_err, rel_error(a, t));
  }
  return {worst_err <= 1e-9 && worst_time < 1.0,
          "20 runs, max rel_error " + sci(worst_err) + " (<= 1e-9), max time " + sci(worst_time) + " s (< 1 s)"};
}

Verdict stabilization() {
  const auto t0 = Clock::now();
  const DenseTensor a = cp_superdiag(70, 3, Decay::exponential(0.1), 0);
  std::vector<double> l0, l3, s3, l0_plain;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    l0.push_back(rel_error(a, mln_approximate(a, uniform_params(3, 30, 0, seed))));
    l3.push_back(rel_error(a, mln_approximate(a, uniform_params(3, 30, 3, seed))));
    MlnParams s = uniform_params(3, 30, 3, seed);
    s.stabilized = true;
    s3.push_back(rel_error(a, mln_approximate(a, s)));
    MlnParams plain = uniform_params(3, 30, 0, seed);
    plain.fallback = false;
    l0_plain.push_back(rel_error(a, mln_approximate(a, plain)));
  }
  const double elapsed = seconds_since(t0);
  const double ratio = median(l0) / median(l3);
  const bool pass = ratio >= 1e3 && max_of(l3) <= 1e-10 && max_of(s3) <= 1e-10 && elapsed < 120.0;
  return {pass, "median l=0 / median l=3 = " + sci(ratio) + " (>= 1e3); max MLN l=3 " + sci(max_of(l3)) +
                    ", max SMLN-10 l=3 " + sci(max_of(s3)) + " (<= 1e-10); median l=0 without fallback " +
                    sci(median(l0_plain)) + " (ratio " + sci(median(l0_plain) / median(l3)) + "); " +
                    sci(elapsed) + " s (< 120 s)"};
}

// Worst ratio of the median MLN error to the HOSVD error over a rank sweep,
// with RHOSVD (same X sketches, no oversampling) alongside for reference.
struct SweepWorst {
  double mln = 0.0;
  double rhosvd = 0.0;
  std::string at;

  void add(double mln_ratio, double rhosvd_ratio, const std::string& where) {
    if (mln_ratio > mln) {
      mln = mln_ratio;
      at = where;
    }
    rhosvd = std::max(rhosvd, rhosvd_ratio);
  }
  std::string describe(const std::string& name) const {
    return name + ": MLN " + sci(mln) + " at " + at + ", RHOSVD " + sci(rhosvd);
  }
};

SweepWorst sweep(const DenseTensor& a, std::size_t d, std::size_t rmax, std::size_t step, std::size_t first,
                 bool& clamped) {
  SweepWorst w;
  for (std::size_t r = first; r <= rmax; r += step) {
    const std::size_t n = a.dim(0);
    // ceil(r/2) oversampling, reduced where r + l would exceed n.
    const std::size_t ell = std::min(default_oversample(r), n - r);
    clamped |= ell != default_oversample(r);
    const double h = rel_error(a, hosvd(a, Dims(d, r)));
    std::vector<double> errs, rerrs;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      errs.push_back(rel_error(a, mln_approximate(a, uniform_params(d, r, ell, seed))));
      rerrs.push_back(rel_error(a, rhosvd(a, Dims(d, r), seed)));
    }
    w.add(median(errs) / h, median(rerrs) / h,
          "r=" + std::to_string(r) + " (" + sci(median(errs)) + " vs " + sci(h) + ")");
  }
  return w;
}

Verdict near_optimality() {
  const auto t0 = Clock::now();
  const std::vector<std::pair<std::string, Decay>> decays = {{"1/i", Decay::polynomial(1.0)},
                                                             {"1/i^2", Decay::polynomial(2.0)},
                                                             {"1/i^3", Decay::polynomial(3.0)},
                                                             {"0.5^i", Decay::exponential(0.5)}};
  double worst = 0.0;
  std::string detail;
  bool clamped = false;
  for (const auto& [name, decay] : decays) {
    const SweepWorst w = sweep(cp_superdiag(100, 3, decay, 0), 3, 30, 5, 5, clamped);
    worst = std::max(worst, w.mln);
    detail += w.describe(name) + "; ";
  }
  const double elapsed = seconds_since(t0);
  return {worst <= 10.0 && elapsed < 600.0, "worst median error / HOSVD (<= 10 for MLN) per decay: " + detail +
                                                sci(elapsed) + " s (< 600 s)"};
}

Verdict hilbert_curves() {
  bool clamped = false;
  const SweepWorst w3 = sweep(hilbert(3, 40), 3, 20, 1, 1, clamped);
  const SweepWorst w4 = sweep(hilbert(4, 20), 4, 15, 1, 1, clamped);
  return {std::max(w3.mln, w4.mln) <= 10.0,
          "worst median error / HOSVD (<= 10 for MLN): " + w3.describe("3D n=40") + "; " + w4.describe("4D n=20") +
              (clamped ? "; l reduced to n - r where ceil(r/2) did not fit" : "")};
}

Verdict error_bound() {
  const std::vector<Decay> decays = {Decay::polynomial(1.0), Decay::polynomial(2.0), Decay::exponential(0.7),
                                     Decay::exponential(0.5), Decay::polynomial(1.5)};
  int clean = 0, flagged = 0, bad = 0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    const std::size_t n = 20 + (i * 7) % 41;
    const std::size_t r = 3 + i % 6;
    const DenseTensor a = cp_superdiag(n, 3, decays[i % decays.size()], i);
    const MlnRun run = mln_run(a, uniform_params(3, r, std::nullopt, 1000 + i));
    const BoundReport rep = evaluate_bound(a, run);
    if (rep.flagged()) {
      ++flagged;
      continue;
    }
    ++clean;
    if (!(rep.satisfied && rep.decomposition.sum_bound_holds && rep.single_mode_holds)) ++bad;
  }
  return {bad == 0 && clean > 0, std::to_string(clean) + " non-flagged runs, " + std::to_string(bad) +
                                     " violating the bound, the sum bound or a single-mode bound; " + std::to_string(flagged) + " flagged"};
}

Verdict matrix_consistency() {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    std::mt19937_64 gen(seed);
    const DenseTensor a = oracle::random_tensor({40, 30}, gen);
    const Matrix m = mode_unfold(a, 0);
    const double eps = 10.0 * unit_roundoff * m.norm();
    const Matrix x = oracle::gaussian(30, 8, gen);

    const Matrix y = oracle::gaussian(40, 11, gen);
    const std::vector<Matrix> xs = {x, y}, ys = {y, x};
    const Matrix mln_stab = mode_unfold(densify(mln_run_with_sketches(a, xs, ys, true, eps).tucker), 0);
    worst = std::max(worst, oracle::rel_diff(mln_stab, gn_from_sketches(m, x, y, true, eps).approx.dense()));

    const Matrix y0 = oracle::gaussian(40, 8, gen);
    const std::vector<Matrix> xs0 = {x, y0}, ys0 = {y0, x};
    const Matrix mln_plain = mode_unfold(densify(mln_run_with_sketches(a, xs0, ys0, false, eps).tucker), 0);
    worst = std::max(worst, oracle::rel_diff(mln_plain, gn_from_sketches(m, x, y0).approx.dense()));

    const Matrix x1 = oracle::gaussian(40, 8, gen);
    const std::vector<Matrix> single = {x1, x};
    const Matrix ax2 = m * x;
    const Matrix nystrom = oracle::times_pinv_jacobi(ax2, x1.transpose() * ax2) * (x1.transpose() * m);
    worst = std::max(worst, oracle::rel_diff(mode_unfold(densify(mln_single_sketch_with(a, single)), 0), nystrom));
  }
  return {worst <= 1e-12, "max relative difference " + sci(worst) + " over 5 seeds x 3 checks (<= 1e-12)"};
}

Verdict oracle_suites() {
  std::mt19937_64 gen(7);
  double pinv_worst = 0.0;
  for (int c = 0; c < 200; ++c) {
    const oracle::PinvCase pc = oracle::pinv_case(gen);
    const double scale = std::max(pc.expected.norm(), 1.0);
    pinv_worst = std::max(pinv_worst, (eps_pseudoinverse(pc.a, pc.eps) - pc.expected).norm() / scale);
  }

  int unfold_mismatch = 0, shapes = 0;
  for (std::size_t d = 1; d <= 4; ++d) {
    Dims dims(d, 1);
    while (true) {
      const DenseTensor t = oracle::random_tensor(dims, gen);
      for (std::size_t k = 0; k < d; ++k) unfold_mismatch += !(mode_unfold(t, k) == oracle::unfold_by_index(t, k));
      ++shapes;
      std::size_t j = 0;
      while (j < d && dims[j] == 3) dims[j++] = 1;
      if (j == d) break;
      ++dims[j];
    }
  }

  double apply_worst = 0.0;
  for (auto kind : {SketchKind::kron_subsampled, SketchKind::khatri_rao}) {
    for (std::size_t k = 0; k < 4; ++k) {
      std::vector<Matrix> us;
      for (Eigen::Index i = 0; i < 4; ++i) us.push_back(oracle::gaussian(3 + i, 2 + i, gen));
      SketchSpec s{kind, 1, 5, 20 + k, 1, {}};
      s.rows = 1;
      for (std::size_t i = 0; i < 4; ++i) {
        if (i == k) continue;
        s.factor_dims.push_back(us[i].cols());
        s.rows *= us[i].cols();
      }
      const Matrix ref = kron_chain_excluding(us, k) * draw_sketch(s);
      apply_worst = std::max(apply_worst, oracle::rel_diff(apply_structured_sketch(us, s, k), ref));
    }
  }
  return {pinv_worst <= 1e-12 && unfold_mismatch == 0 && apply_worst <= 1e-11,
          "eps-pseudoinverse max error " + sci(pinv_worst) + " over 200 cases (<= 1e-12); unfolding " +
              std::to_string(unfold_mismatch) + " mismatches over " + std::to_string(shapes) +
              " shapes (bitwise); structured apply max error " + sci(apply_worst) + " (<= 1e-11)"};
}

Verdict adversarial_amplification() {
  int amplified = 0, satisfied = 0, flagged = 0;
  std::string ratios;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const AdversarialCase c = adversarial(seed);
    const std::vector<Matrix> xs(4, draw_sketch(c.x)), ys(4, draw_sketch(c.y));
    const MlnRun run = mln_run_with_sketches(c.tensor, xs, ys, false, 10.0 * unit_roundoff * frobenius_norm(c.tensor));
    const BoundReport rep = evaluate_bound(c.tensor, run);
    const double ratio = rep.decomposition.terms[3] / rep.decomposition.terms[0];
    amplified += ratio > 1e2;
    satisfied += rep.satisfied;
    flagged += rep.flagged();
    ratios += (seed ? ", " : "") + sci(ratio);
  }
  return {amplified >= 4 && satisfied == 5, "E_4/E_1 = " + ratios + "; " + std::to_string(amplified) +
                                                "/5 above 1e2 (>= 4); bound satisfied in " +
                                                std::to_string(satisfied) + "/5; " + std::to_string(flagged) +
                                                "/5 runs flagged"};
}

Verdict determinism() {
  const DenseTensor a = cp_superdiag(20, 3, Decay::polynomial(1.0), 0);
  CompareConfig cfg;
  cfg.methods = {Method::mln, Method::smln, Method::mln1, Method::hosvd, Method::rhosvd, Method::rsthosvd};
  cfg.ranks = {3, 6};
  cfg.seeds = 3;
  std::vector<std::string> csvs;
  for (std::size_t threads : {0, 0, 1, 3}) {
    cfg.threads = threads;
    std::ostringstream out;
    write_compare_csv(out, run_compare(a, cfg));
    csvs.push_back(out.str());
  }
  const bool same = std::all_of(csvs.begin(), csvs.end(), [&](const std::string& s) { return s == csvs[0]; });
  return {same, std::to_string(csvs.size()) + " compare runs (thread counts default, default, 1, 3), " +
                    (same ? "byte-identical" : "CSV differs")};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<int, std::function<Verdict()>>> criteria = {
      {1, exact_rank_recovery}, {2, stabilization}, {3, near_optimality},
      {4, hilbert_curves},      {5, error_bound}, {6, matrix_consistency},
      {7, oracle_suites},       {8, adversarial_amplification}, {9, determinism}};

  std::ostringstream report;
  int passed = 0, errors = 0;
  for (const auto& [id, run] : criteria) {
    std::string line;
    try {
      const auto t0 = Clock::now();
      const Verdict v = run();
      passed += v.pass;
      line = "criterion " + std::to_string(id) + ": " + (v.pass ? "PASS" : "FAIL") + " | " + v.detail + " [" +
             sci(seconds_since(t0)) + " s]";
    } catch (const std::exception& e) {
      ++errors;
      line = "criterion " + std::to_string(id) + ": FAIL | threw: " + e.what();
    }
    std::cout << line << std::endl;
    report << line << '\n';
  }
  const std::string summary = std::to_string(passed) + "/" + std::to_string(criteria.size()) + " criteria pass";
  std::cout << summary << std::endl;
  report << summary << '\n';
  if (argc > 1) std::ofstream(argv[1]) << report.str();
  return errors ? 2 : 0;
}
