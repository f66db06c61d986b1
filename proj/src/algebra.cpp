#include "algebra.hpp"

#include <climits>
#include <sstream>

namespace hznf {

int mu_total(const MuExp& m) {
  int t = 0;
  for (int e : m) t += e;
  return t;
}

int mu_cmp(const MuExp& a, const MuExp& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

namespace {

MuExp mu_add(const MuExp& a, const MuExp& b) {
  MuExp r(a);
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

void check_q(int a, int b) {
  if (a != b) throw ContractError("parameter count mismatch");
}

}  // namespace

// --------------------------------------------------------------------------
// Field
// --------------------------------------------------------------------------

void Field::add(const ETerm& t, const Rat& c) {
  if (c == 0) return;
  if (static_cast<int>(t.mu.size()) != q_) throw ContractError("parameter count mismatch");
  if (!t.valid()) throw ContractError("invalid field term (l=" + std::to_string(t.l) +
                                      ", k=" + std::to_string(t.k) + ")");
  auto it = terms_.find(t);
  if (it == terms_.end()) {
    terms_.emplace(t, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Field::set(const ETerm& t, const Rat& c) {
  auto it = terms_.find(t);
  if (it != terms_.end()) terms_.erase(it);
  add(t, c);
}

void Field::add_field(const Field& o) {
  check_q(q_, o.q_);
  rot_ += o.rot_;
  for (const auto& [t, c] : o.terms_) add(t, c);
}

void Field::sub_field(const Field& o) {
  check_q(q_, o.q_);
  rot_ -= o.rot_;
  for (const auto& [t, c] : o.terms_) add(t, -c);
}

void Field::scale(const Rat& c) {
  if (c == 0) {
    rot_ = 0;
    terms_.clear();
    return;
  }
  rot_ *= c;
  for (auto& [t, v] : terms_) v *= c;
}

void Field::scale_euler(const Rat& c) {
  if (c == 0) {
    terms_.clear();
    return;
  }
  for (auto& [t, v] : terms_) v *= c;
}

Field Field::slice(int grade, const Grading& g) const {
  Field out(q_);
  for (const auto& [t, c] : terms_)
    if (g.grade(t) == grade) out.add(t, c);
  return out;
}

int Field::min_euler_grade(const Grading& g) const {
  int best = INT_MAX;
  for (const auto& [t, c] : terms_) best = std::min(best, g.grade(t));
  return best;
}

int Field::max_euler_grade(const Grading& g) const {
  int best = INT_MIN;
  for (const auto& [t, c] : terms_) best = std::max(best, g.grade(t));
  return best;
}

void Field::truncate(const Window& w) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (!w.keeps(w.alpha.grade(it->first), mu_total(it->first.mu)))
      it = terms_.erase(it);
    else
      ++it;
  }
}

std::string Field::str() const {
  std::ostringstream os;
  bool first = true;
  if (rot_ != 0) {
    os << rat_str(rot_) << "*Theta";
    first = false;
  }
  for (const auto& [t, c] : terms_) {
    if (!first) os << " + ";
    os << rat_str(c) << "*E(" << t.l << "," << t.k << ")";
    for (std::size_t i = 0; i < t.mu.size(); ++i)
      for (int e = 0; e < t.mu[i]; ++e) os << "*u" << (i + 1);
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

// --------------------------------------------------------------------------
// Scalar
// --------------------------------------------------------------------------

Scalar Scalar::constant(int q, const Rat& c) {
  Scalar s(q);
  s.add(ZTerm{0, 0, MuExp(q, 0)}, c, /*allow_constant=*/true);
  return s;
}

void Scalar::add(const ZTerm& t, const Rat& c, bool allow_constant) {
  if (c == 0) return;
  if (static_cast<int>(t.mu.size()) != q_) throw ContractError("parameter count mismatch");
  if (!t.valid()) throw ContractError("invalid scalar term");
  if (!allow_constant && t.is_constant())
    throw ContractError("constant term in scalar ring element");
  auto it = terms_.find(t);
  if (it == terms_.end()) {
    terms_.emplace(t, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Scalar::scale(const Rat& c) {
  if (c == 0) {
    terms_.clear();
    return;
  }
  for (auto& [t, v] : terms_) v *= c;
}

void Scalar::add_scalar(const Scalar& o) {
  check_q(q_, o.q_);
  for (const auto& [t, c] : o.terms_) {
    auto it = terms_.find(t);
    if (it == terms_.end()) {
      terms_.emplace(t, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
}

bool Scalar::pure_mu() const {
  for (const auto& [t, c] : terms_)
    if (t.n != 0) return false;
  return true;
}

std::string Scalar::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [t, c] : terms_) {
    if (!first) os << " + ";
    os << rat_str(c) << "*Z(" << t.m << "," << t.n << ")";
    for (std::size_t i = 0; i < t.mu.size(); ++i)
      for (int e = 0; e < t.mu[i]; ++e) os << "*u" << (i + 1);
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

// --------------------------------------------------------------------------
// ParamSubst
// --------------------------------------------------------------------------

bool ParamSubst::is_zero() const {
  for (const auto& c : comps_)
    if (!c.is_zero()) return false;
  return true;
}

void ParamSubst::add(int j, const MuExp& m, const Rat& c) {
  if (j < 0 || j >= q_) throw ContractError("parameter index out of range");
  if (mu_total(m) == 0) throw ContractError("constant term in parameter change");
  comps_[j].add(ZTerm{0, 0, m}, c);
}

void ParamSubst::add_component(int j, const Scalar& s) {
  if (j < 0 || j >= q_) throw ContractError("parameter index out of range");
  if (!s.pure_mu()) throw ContractError("parameter change depends on state variables");
  for (const auto& [t, c] : s.terms()) {
    if (t.is_constant()) throw ContractError("constant term in parameter change");
    comps_[j].add(t, c);
  }
}

void ParamSubst::scale(const Rat& c) {
  for (auto& s : comps_) s.scale(c);
}

// --------------------------------------------------------------------------
// bracket and actions
// --------------------------------------------------------------------------

Field bracket(const Field& a, const Field& b) {
  check_q(a.q(), b.q());
  Field out(a.q());
  for (const auto& [s, cs] : a.terms()) {
    for (const auto& [t, ct] : b.terms()) {
      const int factor = t.k - s.k;
      if (factor == 0) continue;
      out.add(ETerm{s.l + t.l, s.k + t.k, mu_add(s.mu, t.mu)}, cs * ct * factor);
    }
  }
  return out;
}

Field scalar_action(const Scalar& T, const Field& v) {
  check_q(T.q(), v.q());
  if (v.rotation() != 0)
    throw ContractError("scalar action requires zero rotation part");
  Field out(v.q());
  for (const auto& [z, cz] : T.terms()) {
    for (const auto& [t, ct] : v.terms()) {
      out.add(ETerm{z.m + t.l, z.n + t.k, mu_add(z.mu, t.mu)}, cz * ct);
    }
  }
  return out;
}

Scalar scalar_mul(const Scalar& a, const Scalar& b) {
  check_q(a.q(), b.q());
  Scalar out(a.q());
  for (const auto& [s, cs] : a.terms())
    for (const auto& [t, ct] : b.terms())
      out.add(ZTerm{s.m + t.m, s.n + t.n, mu_add(s.mu, t.mu)}, cs * ct,
              /*allow_constant=*/true);
  return out;
}

Field mu_derivative_action(const ParamSubst& P, const Field& v) {
  check_q(P.q(), v.q());
  Field out(v.q());
  for (int j = 0; j < P.q(); ++j) {
    const Scalar& pj = P.comp(j);
    if (pj.is_zero()) continue;
    for (const auto& [t, ct] : v.terms()) {
      if (t.mu[j] == 0) continue;
      ETerm dt = t;
      dt.mu[j] -= 1;
      const Rat dc = ct * t.mu[j];
      // (d v / d mu_j) * P_j, term by term
      for (const auto& [z, cz] : pj.terms())
        out.add(ETerm{dt.l + z.m, dt.k + z.n, mu_add(dt.mu, z.mu)}, dc * cz);
    }
  }
  return out;
}

Field apply_state_transform(const Field& S, const Field& v, const Window& w) {
  check_q(S.q(), v.q());
  if (S.rotation() != 0) throw ContractError("state generator has a rotation part");
  if (!S.euler_zero() && S.min_euler_grade(w.alpha) < 1)
    throw ContractError("state generator has a grade-0 term");
  Field out = v;
  Field cur = v;
  cur.set_rotation(0);
  // each bracket with S raises the grade by at least one, so the series stops
  for (int i = 1; i <= w.max_grade + 1; ++i) {
    cur = bracket(S, cur);
    cur.scale(Rat(1, i));
    cur.truncate(w);
    if (cur.euler_zero()) break;
    out.add_field(cur);
  }
  return out;
}

Field apply_time_rescaling(const Scalar& T, const Field& v, const Window& w) {
  if (v.rotation() != 0)
    throw ContractError("time rescaling requires zero rotation part");
  for (const auto& [t, c] : T.terms())
    if (t.is_constant()) throw ContractError("constant term in time rescaling");
  Field out = v;
  Field tv = scalar_action(T, v);
  tv.truncate(w);
  out.add_field(tv);
  return out;
}

Field apply_param_subst(const ParamSubst& P, const Field& v, const Window& w) {
  check_q(P.q(), v.q());
  if (P.is_zero()) return v;
  const int q = v.q();

  // shifted parameters as scalar-ring elements: mu_j + P_j
  std::vector<Scalar> shifted;
  shifted.reserve(q);
  for (int j = 0; j < q; ++j) {
    Scalar s = P.comp(j);
    MuExp e(q, 0);
    e[j] = 1;
    s.add(ZTerm{0, 0, e}, 1);
    shifted.push_back(std::move(s));
  }

  auto prune = [&](Scalar& s, int base_grade) {
    Scalar kept(q);
    for (const auto& [t, c] : s.terms())
      if (w.keeps(base_grade + w.alpha.grade(t), mu_total(t.mu)))
        kept.add(t, c, /*allow_constant=*/true);
    s = kept;
  };

  Field out(v.q());
  out.set_rotation(v.rotation());
  for (const auto& [t, c] : v.terms()) {
    const int base = 2 * t.k - t.l;  // mu-free part of the grade
    Scalar acc = Scalar::constant(q, c);
    for (int j = 0; j < q; ++j) {
      for (int e = 0; e < t.mu[j]; ++e) {
        acc = scalar_mul(acc, shifted[j]);
        prune(acc, base);
      }
    }
    for (const auto& [z, cz] : acc.terms())
      out.add(ETerm{t.l, t.k, z.mu}, cz);
  }
  out.truncate(w);
  return out;
}

Field apply_linear_param_subst(const std::vector<std::vector<Rat>>& M, const Field& v) {
  const int q = v.q();
  if (static_cast<int>(M.size()) != q) throw ContractError("parameter count mismatch");

  std::vector<Scalar> images;  // mu_j -> sum_t M[j][t] mu_t
  images.reserve(q);
  for (int j = 0; j < q; ++j) {
    Scalar s(q);
    for (int t = 0; t < q; ++t) {
      if (M[j][t] == 0) continue;
      MuExp e(q, 0);
      e[t] = 1;
      s.add(ZTerm{0, 0, e}, M[j][t]);
    }
    images.push_back(std::move(s));
  }

  Field out(q);
  out.set_rotation(v.rotation());
  for (const auto& [t, c] : v.terms()) {
    Scalar acc = Scalar::constant(q, c);
    for (int j = 0; j < q; ++j)
      for (int e = 0; e < t.mu[j]; ++e) acc = scalar_mul(acc, images[j]);
    for (const auto& [z, cz] : acc.terms())
      out.add(ETerm{t.l, t.k, z.mu}, cz);
  }
  return out;
}

}  // namespace hznf
