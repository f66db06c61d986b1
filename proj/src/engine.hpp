#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "linalg.hpp"

// Normal-form engine.  Three pipelines share one grade/level sweep driver and
// differ only in which generator kinds they may use:
//   state      -- near-identity coordinate changes only
//   orbital    -- coordinate changes plus time rescalings
//   parametric -- coordinate changes, time rescalings and parameter
//                 substitutions, with the reweighting/linearization phase in
//                 the middle
// The engine works on the Euler part; an input rotation coefficient is set
// aside at the start and restored on the result.

namespace hznf {

enum class Mode { State, Orbital, Parametric };

// Raised for inputs the pipelines cannot normalize (zero quadratic part, no
// detectable singularity order, degenerate parameter dependence).
struct DegenerateError : std::runtime_error {
  explicit DegenerateError(const std::string& msg) : std::runtime_error(msg) {}
};

// One group element applied to the field, in application order.  replay()
// reproduces the normalization by applying the recorded steps to the input.
struct Step {
  enum class Kind {
    ConstantRescale,   // multiply the Euler part by `constant`
    StateTransform,    // exp(ad_S) with S = state_gen
    TimeRescale,       // multiply by (1 + time_gen)
    ParamSubstitution, // mu_j <- mu_j + param_gen_j
    LinearParamChange, // mu_i <- sum_j linear[i][j] * mu_j
    Reweight           // switch to the parameter weights in `alpha`
  };

  Kind kind;
  Rat constant = 0;
  Field state_gen;
  Scalar time_gen;
  ParamSubst param_gen;
  std::vector<std::vector<Rat>> linear;
  std::vector<int> alpha;
  int level = 0;  // elimination level that produced the step (0 = setup)
  int grade = 0;  // grade being cleared (0 = setup)
};

struct Options {
  int max_grade = 12;
  int max_param_deg = 4;
};

struct Result {
  Field normalized;
  Mode mode = Mode::State;
  int r = -1;                   // detected singularity order, -1 if none
  std::string case_tag;
  std::vector<Step> log;
  int levels_run = 0;           // highest elimination level swept
  std::vector<int> alpha;       // parameter weights in effect at the end
  Options options;
};

Result normalize(const Field& input, Mode mode, const Options& opt);

// Applies a recorded step log to `input` under the same truncation window,
// reproducing the normalized field exactly.
Field replay(const Field& input, const std::vector<Step>& log, const Options& opt);

// Order of the singularity and the matrix of linear parameter coefficients
// of a field in second-level parametric normal form.  A has r+1 rows (the
// E^0_k mu_j coefficients for k = 0..r) and q columns.  Throws
// DegenerateError when no order is detectable or the parameter dependence is
// degenerate.
struct NondegeneracyData {
  int r = 0;
  lin::Matrix A;
};

NondegeneracyData nondegeneracy_data(const Field& v, int max_grade);

// Solves [S, u] + T u = -Z^l_k u for a parameter-free field u in orbital
// normal form, with S, T supported on grades 1..max_grade-1 and the equation
// enforced up to grade max_grade.  Returns std::nullopt when the truncated
// linear system has no solution.
struct SymmetrySolution {
  Field S;
  Scalar T;
};

std::optional<SymmetrySolution> solve_symmetry(const Field& u, int l, int k,
                                               int max_grade);

}  // namespace hznf
