#pragma once

// Evaluation of the deterministic error analysis of MLN on a realized run:
// the telescoping decomposition E_k, per-mode factors tau_k and rho_k, the
// tail epsilon and the resulting bound eps * rho * ((1 + tau)^d - 1).

#include <span>
#include <string>
#include <vector>

#include "mln/mln.hpp"

namespace mln {

struct ErrorDecomposition {
  std::vector<double> terms;       // E_k = ||A x_{i<k} P_i - A x_{i<=k} P_i||_F
  std::vector<double> cumulative;  // ||A - A x_{i<=k} P_i||_F
  std::vector<double> ratios;      // E_{k+1} / E_k
  double total = 0.0;              // ||A - A x_{all} P_i||_F
  double norm = 0.0;               // ||A||_F
  bool sum_bound_holds = false;       // total <= sum E_k (factor 1 + 1e-8)
};

ErrorDecomposition error_decomposition(const DenseTensor& a, const MlnRun& run);

struct ModeBound {
  double tau = 1.0;
  double rho = 1.0;
  double tail = 0.0;                // sqrt(sum_{j > rhat_k} sigma_j(A_k)^2)
  double hmt_error = 0.0;           // ||Q_perp^T A_k||_F
  double ytq_pinv_norm = 0.0;       // ||(Y^T Q)^+||_2
  double ytq_perp_norm = 0.0;       // ||Y^T Q_perp||_2
  double vx_pinv_norm = 0.0;        // ||(V^T X)^+||_2
  double vperp_x_norm = 0.0;        // ||V_perp^T X||_2
  double single_mode_error = 0.0;   // ||A - A x_k P_k||_F
  double single_mode_bound = 0.0;        // hmt_error * tau
  double sequential_bound = 0.0;        // (hmt_error + cumulative_{k-1}) * tau
  bool ytq_full_rank = false;
  bool vx_full_rank = false;
};

struct BoundReport {
  std::vector<ModeBound> modes;
  double tau = 1.0;
  double rho = 1.0;
  double eps = 0.0;
  double bound_value = 0.0;
  double measured_error = 0.0;
  bool satisfied = false;      // measured_error <= bound_value * (1 + 1e-8)
  bool single_mode_holds = false;   // every mode
  bool sequential_holds = false;   // every mode
  ErrorDecomposition decomposition;
  // Reasons the bound's preconditions are not met; empty for a clean run.
  std::vector<std::string> flags;

  bool flagged() const { return !flags.empty(); }
};

// Largest mode size for which orthogonal complements are materialized.
inline constexpr std::size_t kMaxDiagnosticsDim = 512;

// rhat defaults to the column counts of the X sketches. Throws
// DiagnosticsScaleError when some n_k exceeds kMaxDiagnosticsDim and
// DimensionError when the run carries no X sketches (Tucker recompression).
BoundReport evaluate_bound(const DenseTensor& a, const MlnRun& run, std::span<const std::size_t> rhat = {});

// ||P_k||_2 of the realized projector.
double projector_norm(const MlnRun& run, std::size_t k);

}  // namespace mln
