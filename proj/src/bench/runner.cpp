#include "mln/bench/runner.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include "mln/baselines.hpp"
#include "mln/errors.hpp"
#include "mln/linalg.hpp"
#include "mln/rng.hpp"

namespace mln::bench {

namespace {

constexpr Method kAllMethods[] = {Method::mln, Method::smln, Method::mln1,
                                  Method::hosvd, Method::rhosvd, Method::rsthosvd};

bool uses_oversampling(Method m) { return m == Method::mln || m == Method::smln; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

std::string_view method_name(Method m) {
  switch (m) {
    case Method::mln: return "mln";
    case Method::smln: return "smln";
    case Method::mln1: return "mln1";
    case Method::hosvd: return "hosvd";
    case Method::rhosvd: return "rhosvd";
    case Method::rsthosvd: return "rsthosvd";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  for (Method m : kAllMethods) {
    if (method_name(m) == name) return m;
  }
  return std::nullopt;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_ranks(const std::vector<std::size_t>& ranks) {
  if (!ranks.empty() && std::all_of(ranks.begin(), ranks.end(), [&](std::size_t r) { return r == ranks[0]; })) {
    return std::to_string(ranks[0]);
  }
  std::string out;
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    if (i) out += 'x';
    out += std::to_string(ranks[i]);
  }
  return out;
}

MlnParams mln_params(const RunSpec& spec, std::size_t order) {
  MlnParams p;
  p.ranks = spec.ranks;
  if (spec.oversample) p.oversample = std::vector<std::size_t>(order, *spec.oversample);
  p.seed = spec.seed;
  p.stabilized = spec.method == Method::smln;
  p.eps = spec.eps;
  p.fallback = spec.fallback;
  return p;
}

TuckerTensor approximate(const DenseTensor& a, const RunSpec& spec, std::vector<std::string>* warnings) {
  switch (spec.method) {
    case Method::mln:
    case Method::smln: {
      MlnRun run = mln_run(a, mln_params(spec, a.order()));
      if (warnings) warnings->insert(warnings->end(), run.warnings.begin(), run.warnings.end());
      return std::move(run.tucker);
    }
    case Method::mln1: return mln_single_sketch(a, spec.ranks, spec.seed);
    case Method::hosvd: return hosvd(a, spec.ranks);
    case Method::rhosvd: return rhosvd(a, spec.ranks, spec.seed);
    case Method::rsthosvd: return rsthosvd(a, spec.ranks, spec.seed);
  }
  throw Error("unknown method");
}

ApproxReport run_method(const DenseTensor& a, const RunSpec& spec, bool timing) {
  ApproxReport rep;
  rep.method = std::string(method_name(spec.method));
  rep.ranks = spec.ranks;
  rep.seed = spec.seed;
  if (uses_oversampling(spec.method)) {
    const MlnParams p = mln_params(spec, a.order());
    for (std::size_t k = 0; k < a.order() && k < p.ranks.size(); ++k) rep.oversample.push_back(p.oversample_for(k));
    rep.oversample_spec = spec.oversample ? std::to_string(*spec.oversample) : "r/2";
  } else {
    rep.oversample_spec = "-";
  }

  const auto start = std::chrono::steady_clock::now();
  const TuckerTensor t = approximate(a, spec, &rep.warnings);
  const auto stop = std::chrono::steady_clock::now();
  if (timing) rep.time_s = std::chrono::duration<double>(stop - start).count();

  const double norm = frobenius_norm(a);
  const double err = frobenius_distance(a, densify(t));
  rep.rel_error = norm > 0.0 ? err / norm : err;
  return rep;
}

std::vector<ApproxReport> run_compare(const DenseTensor& a, const CompareConfig& cfg) {
  struct Job {
    Method method;
    std::size_t rank;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (Method m : cfg.methods) {
    for (std::size_t r : cfg.ranks) {
      for (std::uint64_t s = 0; s < cfg.seeds; ++s) jobs.push_back({m, r, s});
    }
  }
  std::sort(jobs.begin(), jobs.end(), [](const Job& x, const Job& y) {
    const auto xn = method_name(x.method), yn = method_name(y.method);
    if (xn != yn) return xn < yn;
    if (x.rank != y.rank) return x.rank < y.rank;
    return x.seed < y.seed;
  });

  std::vector<ApproxReport> reports(jobs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        RunSpec spec;
        spec.method = jobs[i].method;
        spec.ranks.assign(a.order(), jobs[i].rank);
        spec.oversample = cfg.oversample;
        spec.eps = cfg.eps;
        spec.fallback = cfg.fallback;
        spec.seed = jobs[i].seed;
        reports[i] = run_method(a, spec, cfg.timing);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = jobs.size();
      }
    }
  };

  std::size_t threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  // Timing runs are sequential so they do not compete for cores.
  if (cfg.timing) threads = 1;
  threads = std::min(threads, std::max<std::size_t>(jobs.size(), 1));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return reports;
}

void write_compare_csv(std::ostream& out, const std::vector<ApproxReport>& reports) {
  out << "method,rank_spec,oversample_spec,seed,rel_error,time_s,warnings\n";
  for (const ApproxReport& r : reports) {
    out << r.method << ',' << format_ranks(r.ranks) << ',' << r.oversample_spec << ',' << r.seed << ','
        << format_double(r.rel_error) << ',' << (r.time_s ? format_double(*r.time_s) : "NA") << ','
        << csv_field(join(r.warnings, "; ")) << '\n';
  }
}

void write_text_file(const std::string& path, const std::string& contents) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out << contents;
    out.flush();
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) throw Error("cannot move " + tmp.string() + " to " + path + ": " + ec.message());
}

BoundsResult run_bounds(const DenseTensor& a, const BoundsConfig& cfg) {
  MlnParams p;
  p.ranks = cfg.ranks;
  if (cfg.oversample) p.oversample = std::vector<std::size_t>(a.order(), *cfg.oversample);
  p.seed = cfg.seed;
  validate(p, a.dims());
  const double eps = p.eps.resolve(frobenius_norm(a));

  BoundsResult res;
  if (cfg.sketch == BoundSketch::gaussian) {
    res.run = mln_run(a, p);
  } else {
    const Dims& dims = a.dims();
    if (!std::all_of(dims.begin(), dims.end(), [&](std::size_t n) { return n == dims[0]; }) ||
        !std::all_of(p.ranks.begin(), p.ranks.end(), [&](std::size_t r) { return r == p.ranks[0]; })) {
      throw DimensionError("shared sketches need equal dims and equal ranks on every mode");
    }
    SketchSpec xs{SketchKind::srht, product_excluding(dims, 0), p.ranks[0], cfg.seed,
                  stream_id(StreamRole::sketch_x, 0), {}};
    SketchSpec ys{SketchKind::srht, dims[0], p.ranks[0] + p.oversample_for(0), cfg.seed,
                  stream_id(StreamRole::sketch_y, 0), {}};
    const std::vector<Matrix> x(a.order(), draw_sketch(xs));
    const std::vector<Matrix> y(a.order(), draw_sketch(ys));
    res.run = mln_run_with_sketches(a, x, y, false, eps);
  }
  res.report = evaluate_bound(a, res.run);
  return res;
}

void write_bounds_csv(std::ostream& out, const BoundReport& rep) {
  out << "row,mode,tau,rho,tail,hmt_error,E_k,cumulative_error,ratio_next,single_mode_error,single_mode_bound,"
         "sequential_bound,bound,measured_error,satisfied,flags\n";
  const ErrorDecomposition& dec = rep.decomposition;
  for (std::size_t k = 0; k < rep.modes.size(); ++k) {
    const ModeBound& m = rep.modes[k];
    out << "mode," << k << ',' << format_double(m.tau) << ',' << format_double(m.rho) << ','
        << format_double(m.tail) << ',' << format_double(m.hmt_error) << ',' << format_double(dec.terms[k]) << ','
        << format_double(dec.cumulative[k]) << ',' << (k < dec.ratios.size() ? format_double(dec.ratios[k]) : "NA")
        << ',' << format_double(m.single_mode_error) << ',' << format_double(m.single_mode_bound) << ','
        << format_double(m.sequential_bound) << ",NA,NA,NA,\n";
  }
  out << "total,NA," << format_double(rep.tau) << ',' << format_double(rep.rho) << ',' << format_double(rep.eps)
      << ",NA,NA," << format_double(dec.total) << ",NA,NA,NA,NA," << format_double(rep.bound_value) << ','
      << format_double(rep.measured_error) << ',' << (rep.satisfied ? "true" : "false") << ','
      << csv_field(join(rep.flags, "; ")) << '\n';
}

}  // namespace mln::bench
