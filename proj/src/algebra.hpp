// Sparse exact-rational model of the vector-field algebra used by the
// normal-form engine.
//
// Objects live over three commuting generators: x, R (short for y^2+z^2) and
// the parameters mu_1..mu_q.  A Field is
//
//     rot * Theta  +  sum  c_{l,k,m} * x^l R^(k-l) mu^m * E,
//
// where Theta = z d/dy - y d/dz is the rotation and E = x d/dx + y/2 d/dy +
// z/2 d/dz is the weighted radial field.  The slot (l,k) is written E^l_k
// below; (0,0) stands for E itself and is admitted only together with a
// nonzero mu part.  A Scalar is a polynomial in x, R, mu without constant
// term (one distinguished constructor admits constants for the one-time
// rescaling the pipelines perform), acting on Fields by multiplication.
// A ParamSubst is a q-tuple of pure-mu Scalars acting by substitution
// mu_j <- mu_j + P_j.
//
// Grades: E^l_k mu^m has grade 2k - l + alpha.m for a per-session weight
// vector alpha; x^m R^(n-m) mu^p has grade 2n - m + alpha.p.  All operations
// are grade-additive, which the engine relies on throughout.
#pragma once

#include "rational.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace hznf {

using MuExp = std::vector<int>;

int mu_total(const MuExp& m);
int mu_cmp(const MuExp& a, const MuExp& b);  // lexicographic; equal sizes

struct ContractError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// term keys
// ---------------------------------------------------------------------------

struct ETerm {
  int l = 0, k = 0;
  MuExp mu;  // size q

  bool valid() const {
    if (l < 0 || k < 0 || l > k) return false;
    for (int e : mu)
      if (e < 0) return false;
    if (l == 0 && k == 0 && mu_total(mu) == 0) return false;  // constant multiple of E
    return true;
  }
  bool operator==(const ETerm& o) const { return l == o.l && k == o.k && mu == o.mu; }
  // canonical order: l asc, k asc, mu lex asc
  bool operator<(const ETerm& o) const {
    if (l != o.l) return l < o.l;
    if (k != o.k) return k < o.k;
    return mu_cmp(mu, o.mu) < 0;
  }
};

struct ZTerm {
  int m = 0, n = 0;  // x^m R^(n-m), 0 <= m <= n
  MuExp mu;

  bool valid() const {
    if (m < 0 || n < 0 || m > n) return false;
    for (int e : mu)
      if (e < 0) return false;
    return true;
  }
  bool is_constant() const { return n == 0 && mu_total(mu) == 0; }
  bool operator==(const ZTerm& o) const { return m == o.m && n == o.n && mu == o.mu; }
  bool operator<(const ZTerm& o) const {
    if (m != o.m) return m < o.m;
    if (n != o.n) return n < o.n;
    return mu_cmp(mu, o.mu) < 0;
  }
};

// ---------------------------------------------------------------------------
// grading
// ---------------------------------------------------------------------------

class Grading {
 public:
  Grading() = default;
  explicit Grading(std::vector<int> alpha) : alpha_(std::move(alpha)) {}
  static Grading ones(int q) { return Grading(std::vector<int>(q, 1)); }

  int q() const { return static_cast<int>(alpha_.size()); }
  const std::vector<int>& alpha() const { return alpha_; }

  int mu_grade(const MuExp& m) const {
    int g = 0;
    for (std::size_t i = 0; i < m.size(); ++i) g += alpha_[i] * m[i];
    return g;
  }
  int grade(const ETerm& t) const { return 2 * t.k - t.l + mu_grade(t.mu); }
  int grade(const ZTerm& t) const { return 2 * t.n - t.m + mu_grade(t.mu); }

 private:
  std::vector<int> alpha_;
};

// Two-dimensional truncation window: keep a term iff its grade is at most
// max_grade and (when parameters are present) its total mu-degree is at most
// max_param_deg.  The mu cap keeps slices finite once a weight drops to zero.
struct Window {
  int max_grade = 0;
  int max_param_deg = 0;  // ignored when q == 0
  Grading alpha;

  bool keeps(int grade, int mu_deg) const {
    if (grade > max_grade) return false;
    if (alpha.q() > 0 && mu_deg > max_param_deg) return false;
    return true;
  }
};

// ---------------------------------------------------------------------------
// Field
// ---------------------------------------------------------------------------

class Field {
 public:
  explicit Field(int q = 0) : q_(q) {}

  int q() const { return q_; }
  const Rat& rotation() const { return rot_; }
  void set_rotation(const Rat& r) { rot_ = r; }

  const std::map<ETerm, Rat>& terms() const { return terms_; }
  bool is_zero() const { return rot_ == 0 && terms_.empty(); }
  bool euler_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Rat coeff(const ETerm& t) const {
    auto it = terms_.find(t);
    return it == terms_.end() ? Rat(0) : it->second;
  }
  Rat coeff(int l, int k) const { return coeff(ETerm{l, k, MuExp(q_, 0)}); }

  // adds c * E^l_k mu^m; erases the slot if the sum vanishes
  void add(const ETerm& t, const Rat& c);
  void set(const ETerm& t, const Rat& c);

  void add_field(const Field& o);        // this += o (rotation included)
  void sub_field(const Field& o);        // this -= o
  void scale(const Rat& c);              // rotation included
  void scale_euler(const Rat& c);        // E-part only, rotation untouched

  Field slice(int grade, const Grading& g) const;    // E-part slice, rotation dropped
  int min_euler_grade(const Grading& g) const;       // INT_MAX when empty
  int max_euler_grade(const Grading& g) const;       // INT_MIN when empty
  void truncate(const Window& w);

  bool operator==(const Field& o) const {
    return q_ == o.q_ && rot_ == o.rot_ && terms_ == o.terms_;
  }

  std::string str() const;  // debug form

 private:
  int q_;
  Rat rot_ = 0;
  std::map<ETerm, Rat> terms_;
};

// ---------------------------------------------------------------------------
// Scalar
// ---------------------------------------------------------------------------

class Scalar {
 public:
  explicit Scalar(int q = 0) : q_(q) {}
  // the one-time constant rescaling bypasses the no-constant-term rule
  static Scalar constant(int q, const Rat& c);

  int q() const { return q_; }
  const std::map<ZTerm, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rat coeff(const ZTerm& t) const {
    auto it = terms_.find(t);
    return it == terms_.end() ? Rat(0) : it->second;
  }

  void add(const ZTerm& t, const Rat& c, bool allow_constant = false);
  void scale(const Rat& c);
  void add_scalar(const Scalar& o);

  bool pure_mu() const;  // no x/R dependence in any term
  bool operator==(const Scalar& o) const { return q_ == o.q_ && terms_ == o.terms_; }

  std::string str() const;

 private:
  int q_;
  std::map<ZTerm, Rat> terms_;
};

// ---------------------------------------------------------------------------
// ParamSubst: q pure-mu components without constant term
// ---------------------------------------------------------------------------

class ParamSubst {
 public:
  explicit ParamSubst(int q = 0) : q_(q), comps_(q, Scalar(q)) {}

  int q() const { return q_; }
  const Scalar& comp(int j) const { return comps_[j]; }
  bool is_zero() const;

  // adds c * mu^m to component j; m must be nonzero and pure mu
  void add(int j, const MuExp& m, const Rat& c);
  void add_component(int j, const Scalar& s);
  void scale(const Rat& c);

  bool operator==(const ParamSubst& o) const { return q_ == o.q_ && comps_ == o.comps_; }

 private:
  int q_;
  std::vector<Scalar> comps_;
};

// ---------------------------------------------------------------------------
// operations
// ---------------------------------------------------------------------------

// [a, b]: bilinear over [E^l_k mu^p, E^m_n mu^r] = (n-k) E^(l+m)_(k+n) mu^(p+r);
// Theta commutes with everything, so the result has rotation 0.
Field bracket(const Field& a, const Field& b);

// T * v by monomial multiplication; requires v.rotation() == 0.
Field scalar_action(const Scalar& T, const Field& v);

Scalar scalar_mul(const Scalar& a, const Scalar& b);

// sum_j (dv/dmu_j) * P_j
Field mu_derivative_action(const ParamSubst& P, const Field& v);

// group elements -----------------------------------------------------------

// exp(ad_S)(v) = v + [S,v] + [S,[S,v]]/2 + ..., truncated to the window;
// S must have rotation 0 and all terms of grade >= 1.
Field apply_state_transform(const Field& S, const Field& v, const Window& w);

// (1 + T) * v truncated; T without constant term, v.rotation() == 0.
Field apply_time_rescaling(const Scalar& T, const Field& v, const Window& w);

// substitution mu_j <- mu_j + P_j, expanded and truncated.
Field apply_param_subst(const ParamSubst& P, const Field& v, const Window& w);

// substitution mu_j <- sum_t M[j][t] mu_t (invertible linear reparametrization;
// degree-preserving, no truncation needed).
Field apply_linear_param_subst(const std::vector<std::vector<Rat>>& M, const Field& v);

}  // namespace hznf
