#include "engine.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace hznf {

namespace {

// ---------------------------------------------------------------------------
// generators
// ---------------------------------------------------------------------------

// One elementary transformation generator: a coordinate-change monomial, a
// time-rescaling monomial, or a one-parameter shift mu_j <- mu_j + mu^m.
struct Gen {
  enum class Kind { State, Time, Param };
  Kind kind = Kind::State;
  ETerm e{0, 0, {}};
  ZTerm z{0, 0, {}};
  int j = -1;
  MuExp m;
};

// Aggregated generator content at one grade.  Applied to the field as
// exp(ad_S), then multiplication by (1 + T), then the shift mu_j <- mu_j + P_j.
struct GenVal {
  Field S;
  Scalar T;
  ParamSubst P;

  explicit GenVal(int q = 0) : S(q), T(q), P(q) {}

  bool is_zero() const { return S.euler_zero() && T.is_zero() && P.is_zero(); }

  void add_gen(const Gen& g, const Rat& c) {
    switch (g.kind) {
      case Gen::Kind::State: S.add(g.e, c); break;
      case Gen::Kind::Time: T.add(g.z, c); break;
      case Gen::Kind::Param: P.add(g.j, g.m, c); break;
    }
  }

  void add_scaled(const GenVal& o, const Rat& c) {
    Field fs = o.S;
    fs.scale(c);
    S.add_field(fs);
    Scalar ts = o.T;
    ts.scale(c);
    T.add_scalar(ts);
    ParamSubst ps = o.P;
    ps.scale(c);
    for (int j = 0; j < P.q(); ++j) P.add_component(j, ps.comp(j));
  }
};

// A kernel tuple of one elimination map: slot grade -> generator content.
// Slots are applied in descending grade order.
using Tuple = std::map<int, GenVal>;

// ---------------------------------------------------------------------------
// the normalizer
// ---------------------------------------------------------------------------

class Normalizer {
 public:
  Normalizer(const Field& input, Mode mode, const Options& opt)
      : mode_(mode), opt_(opt), q_(input.q()), v_(input) {
    rot_ = v_.rotation();
    v_.set_rotation(0);
    win_.max_grade = opt_.max_grade;
    win_.max_param_deg = opt_.max_param_deg;
    win_.alpha = Grading::ones(q_);
    v_.truncate(win_);
    ver_.assign(opt_.max_grade + 1, 1);
    build_mu_monomials();
  }

  Result run() {
    if (mode_ != Mode::Parametric && q_ > 0)
      throw ContractError("state and orbital pipelines take parameter-free fields");
    Rat beta = v_.coeff(1, 1);  // mu-free quadratic coefficient
    if (beta == 0) throw DegenerateError("degenerate: zero quadratic part");
    switch (mode_) {
      case Mode::State:
        level_loop();
        break;
      case Mode::Orbital:
        if (beta != 1) constant_rescale(Rat(1) / beta);
        level_loop();
        break;
      case Mode::Parametric:
        run_parametric(beta);
        break;
    }
    Result res;
    res.mode = mode_;
    res.r = r_;
    res.case_tag = make_case_tag();
    res.log = std::move(log_);
    res.levels_run = levels_run_;
    res.alpha = win_.alpha.alpha();
    res.options = opt_;
    v_.set_rotation(rot_);
    res.normalized = std::move(v_);
    return res;
  }

 private:
  // ---- bookkeeping -------------------------------------------------------

  struct ColRef {
    int gen = -1;   // index into MapCache::gens
    int tup = -1;   // index into the lower grade's harvested tuples
    int unit = -1;  // basis index of a unit column (solve caches only)
  };

  // Incrementally built elimination data for the level maps targeting one
  // grade.  Stage k means the image columns of the level-k map have been fed:
  // the free generators one grade below plus, for every level 3..k, the
  // kernel tuples of the previous level's map one grade below.  Dependent
  // columns are harvested as kernel tuples of this map.
  struct MapCache {
    std::vector<long> vers;  // slice versions when (re)built / last extended
    int stage = 1;
    std::vector<ETerm> basis;
    std::vector<Gen> gens;
    lin::Eliminator elim{0};
    std::vector<ColRef> meta;
    std::vector<Tuple> tuples;
    std::vector<int> tuple_stage;
  };

  // The image eliminator of MapCache extended with unit columns in basis
  // order; unit pivots form the kept set.
  struct SolveCache {
    std::vector<long> vers;
    int level = 0;
    lin::Eliminator elim{0};
    std::vector<ColRef> meta;
    std::vector<char> kept;
  };

  // ---- basis and generator enumeration -----------------------------------

  void build_mu_monomials() {
    mus_.clear();
    int cap = q_ > 0 ? opt_.max_param_deg : 0;
    MuExp cur(q_, 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
      if (pos == q_) {
        mus_.push_back(cur);
        return;
      }
      for (int e = 0; e <= left; ++e) {
        cur[pos] = e;
        rec(pos + 1, left - e);
      }
      cur[pos] = 0;
    };
    rec(0, cap);
  }

  std::vector<ETerm> slice_basis(int n) const {
    std::vector<ETerm> out;
    for (const auto& m : mus_) {
      int s = n - win_.alpha.mu_grade(m);
      if (s < 0) continue;
      for (int k = (s + 1) / 2; k <= s; ++k) {
        ETerm t{2 * k - s, k, m};
        if (t.l == 0 && t.k == 0 && mu_total(m) == 0) continue;
        out.push_back(std::move(t));
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<Gen> generators(int g) const {
    std::vector<Gen> st, tm, pm;
    for (const auto& m : mus_) {
      int mg = win_.alpha.mu_grade(m);
      int s = g - mg;
      if (s >= 0) {
        for (int k = (s + 1) / 2; k <= s; ++k) {
          ETerm t{2 * k - s, k, m};
          if (t.l == 0 && t.k == 0 && mu_total(m) == 0) continue;
          Gen gen;
          gen.kind = Gen::Kind::State;
          gen.e = std::move(t);
          st.push_back(std::move(gen));
        }
        if (mode_ != Mode::State) {
          for (int n = (s + 1) / 2; n <= s; ++n) {
            ZTerm zt{2 * n - s, n, m};
            if (zt.is_constant()) continue;
            Gen gen;
            gen.kind = Gen::Kind::Time;
            gen.z = std::move(zt);
            tm.push_back(std::move(gen));
          }
        }
      }
      if (mode_ == Mode::Parametric && mu_total(m) >= 1) {
        for (int j = 0; j < q_; ++j) {
          if (mg - win_.alpha.alpha()[j] != g) continue;
          Gen gen;
          gen.kind = Gen::Kind::Param;
          gen.j = j;
          gen.m = m;
          pm.push_back(std::move(gen));
        }
      }
    }
    std::sort(st.begin(), st.end(), [](const Gen& a, const Gen& b) { return a.e < b.e; });
    std::sort(tm.begin(), tm.end(), [](const Gen& a, const Gen& b) { return a.z < b.z; });
    std::sort(pm.begin(), pm.end(), [](const Gen& a, const Gen& b) {
      if (a.j != b.j) return a.j < b.j;
      return mu_cmp(a.m, b.m) < 0;
    });
    std::vector<Gen> out;
    out.reserve(st.size() + tm.size() + pm.size());
    for (auto& g2 : st) out.push_back(std::move(g2));
    for (auto& g2 : tm) out.push_back(std::move(g2));
    for (auto& g2 : pm) out.push_back(std::move(g2));
    return out;
  }

  // ---- actions ------------------------------------------------------------

  Field gen_act(const Gen& g, const Field& u) const {
    switch (g.kind) {
      case Gen::Kind::State: {
        Field S(q_);
        S.add(g.e, 1);
        return bracket(S, u);
      }
      case Gen::Kind::Time: {
        Scalar T(q_);
        T.add(g.z, 1);
        return scalar_action(T, u);
      }
      case Gen::Kind::Param: {
        ParamSubst P(q_);
        P.add(g.j, g.m, 1);
        return mu_derivative_action(P, u);
      }
    }
    return Field(q_);
  }

  Field genval_act(const GenVal& gv, const Field& u) const {
    Field out = bracket(gv.S, u);
    out.add_field(scalar_action(gv.T, u));
    out.add_field(mu_derivative_action(gv.P, u));
    return out;
  }

  // first-order contribution of a kernel tuple's slots at the target grade
  Field tuple_image(const Tuple& t, int n) {
    Field out(q_);
    for (const auto& [g, gv] : t) {
      int i = n - g;
      if (i < 1) continue;
      const Field& vi = get_slice(i);
      if (vi.euler_zero()) continue;
      out.add_field(genval_act(gv, vi));
    }
    return out;
  }

  lin::SparseVec coords(const Field& f, const std::vector<ETerm>& basis) const {
    lin::SparseVec out;
    for (const auto& [t, c] : f.terms()) {
      if (q_ > 0 && mu_total(t.mu) > opt_.max_param_deg) continue;
      auto it = std::lower_bound(basis.begin(), basis.end(), t);
      if (it == basis.end() || !(*it == t)) continue;
      out[static_cast<int>(it - basis.begin())] = c;
    }
    return out;
  }

  // ---- slice version tracking ---------------------------------------------

  const Field& get_slice(int g) {
    auto& entry = slice_cache_[g];
    if (entry.first != ver_[g]) entry = {ver_[g], v_.slice(g, win_.alpha)};
    return entry.second;
  }

  void bump_changed(const Field& before) {
    std::set<int> changed;
    auto ai = before.terms().begin(), ae = before.terms().end();
    auto bi = v_.terms().begin(), be = v_.terms().end();
    while (ai != ae || bi != be) {
      if (bi == be || (ai != ae && ai->first < bi->first)) {
        changed.insert(win_.alpha.grade(ai->first));
        ++ai;
      } else if (ai == ae || bi->first < ai->first) {
        changed.insert(win_.alpha.grade(bi->first));
        ++bi;
      } else {
        if (ai->second != bi->second) changed.insert(win_.alpha.grade(ai->first));
        ++ai;
        ++bi;
      }
    }
    for (int g : changed)
      if (g >= 0 && g <= opt_.max_grade) ++ver_[g];
  }

  void bump_all() {
    for (auto& x : ver_) ++x;
  }

  bool prefix_ok(const std::vector<long>& vers, int upto) const {
    if (vers.size() != ver_.size()) return false;
    for (int g = 1; g <= upto && g <= opt_.max_grade; ++g)
      if (vers[g] != ver_[g]) return false;
    return true;
  }

  // ---- elimination caches --------------------------------------------------

  // materialize the domain element of a fed column into a tuple
  void add_domain(Tuple& t, const MapCache& mc, int m, const ColRef& ref, const Rat& c) {
    if (ref.gen >= 0) {
      auto it = t.try_emplace(m - 1, GenVal(q_)).first;
      it->second.add_gen(mc.gens[ref.gen], c);
    } else {
      const Tuple& lt = map_cache_.at(m - 1).tuples[ref.tup];
      for (const auto& [g, gv] : lt) {
        auto it = t.try_emplace(g, GenVal(q_)).first;
        it->second.add_scaled(gv, c);
      }
    }
  }

  void feed_column(MapCache& mc, int m, const lin::SparseVec& col, const ColRef& ref,
                   int stage) {
    lin::SparseVec combo;
    bool pivot = mc.elim.add_column(col, &combo);
    mc.meta.push_back(ref);
    if (pivot) return;
    Tuple t;
    add_domain(t, mc, m, ref, Rat(1));
    for (const auto& [i, c] : combo) add_domain(t, mc, m, mc.meta[i], -c);
    for (auto it = t.begin(); it != t.end();) {
      if (it->second.is_zero())
        it = t.erase(it);
      else
        ++it;
    }
    if (t.empty()) return;  // distinct domain elements cannot cancel exactly
    mc.tuples.push_back(std::move(t));
    mc.tuple_stage.push_back(stage);
  }

  MapCache& ensure_map(int m, int k) {
    k = std::min(k, m);
    MapCache& mc = map_cache_[m];
    if (mc.stage >= 2 && !prefix_ok(mc.vers, mc.stage - 1)) mc = MapCache{};
    if (mc.stage < 2 && k >= 2) {
      mc.basis = slice_basis(m);
      mc.gens = generators(m - 1);
      mc.elim = lin::Eliminator(static_cast<int>(mc.basis.size()));
      const Field v1 = get_slice(1);
      for (int i = 0; i < static_cast<int>(mc.gens.size()); ++i) {
        ColRef ref;
        ref.gen = i;
        feed_column(mc, m, coords(gen_act(mc.gens[i], v1), mc.basis), ref, 2);
      }
      mc.stage = 2;
      mc.vers = ver_;
    }
    while (mc.stage < k) {
      int s = mc.stage + 1;
      // the lower cache's dependencies are a strict subset of ours, so this
      // call extends it without rebuilding and existing tuple indices hold
      MapCache& lower = ensure_map(m - 1, s - 1);
      int count = static_cast<int>(lower.tuples.size());
      for (int t = 0; t < count; ++t) {
        if (lower.tuple_stage[t] != s - 1) continue;
        Field img = tuple_image(lower.tuples[t], m);
        ColRef ref;
        ref.tup = t;
        feed_column(mc, m, coords(img, mc.basis), ref, s);
      }
      mc.stage = s;
      mc.vers = ver_;
    }
    return mc;
  }

  SolveCache& ensure_solve(int n, int k) {
    SolveCache& sc = solve_cache_[{n, k}];
    if (sc.level == k && prefix_ok(sc.vers, k - 1)) return sc;
    MapCache& mc = ensure_map(n, k);
    sc.elim = mc.elim;
    sc.meta = mc.meta;
    sc.kept.assign(mc.basis.size(), 0);
    for (int i = 0; i < static_cast<int>(mc.basis.size()); ++i) {
      lin::SparseVec unit;
      unit[i] = 1;
      bool pivot = sc.elim.add_column(unit, nullptr);
      ColRef ref;
      ref.unit = i;
      sc.meta.push_back(ref);
      if (pivot) sc.kept[i] = 1;
    }
    sc.level = k;
    sc.vers = ver_;
    return sc;
  }

  // ---- the sweep -----------------------------------------------------------

  void apply_slot(const GenVal& gv, int level, int grade) {
    if (!gv.S.euler_zero()) {
      Step st;
      st.kind = Step::Kind::StateTransform;
      st.state_gen = gv.S;
      st.level = level;
      st.grade = grade;
      v_ = apply_state_transform(gv.S, v_, win_);
      log_.push_back(std::move(st));
    }
    if (!gv.T.is_zero()) {
      Step st;
      st.kind = Step::Kind::TimeRescale;
      st.time_gen = gv.T;
      st.level = level;
      st.grade = grade;
      v_ = apply_time_rescaling(gv.T, v_, win_);
      log_.push_back(std::move(st));
    }
    if (!gv.P.is_zero()) {
      Step st;
      st.kind = Step::Kind::ParamSubstitution;
      st.param_gen = gv.P;
      st.level = level;
      st.grade = grade;
      v_ = apply_param_subst(gv.P, v_, win_);
      log_.push_back(std::move(st));
    }
  }

  bool clear_grade(int n, int level) {
    int k = std::min(n, level);
    if (k < 2) return false;
    {
      const Field& vn = get_slice(n);
      if (vn.euler_zero()) return false;
    }
    MapCache& mc = ensure_map(n, k);
    SolveCache& sc = ensure_solve(n, k);
    lin::SparseVec b = coords(get_slice(n), mc.basis);
    if (b.empty()) return false;
    bool all_kept = true;
    for (const auto& [i, c] : b) {
      if (!sc.kept[i]) {
        all_kept = false;
        break;
      }
    }
    if (all_kept) return false;
    lin::SparseVec sol;
    if (!sc.elim.solve(b, &sol))
      throw ContractError("grade elimination lost track of its column span");
    std::map<int, GenVal> slots;
    for (const auto& [ci, c] : sol) {
      const ColRef& ref = sc.meta[ci];
      if (ref.unit >= 0) continue;
      if (ref.gen >= 0) {
        auto it = slots.try_emplace(n - 1, GenVal(q_)).first;
        it->second.add_gen(mc.gens[ref.gen], -c);
      } else {
        const Tuple& lt = map_cache_.at(n - 1).tuples[ref.tup];
        for (const auto& [g, gv] : lt) {
          auto it = slots.try_emplace(g, GenVal(q_)).first;
          it->second.add_scaled(gv, -c);
        }
      }
    }
    bool any = false;
    for (const auto& [g, gv] : slots)
      if (!gv.is_zero()) any = true;
    if (!any) return false;
    Field before = v_;
    for (auto it = slots.rbegin(); it != slots.rend(); ++it)
      if (!it->second.is_zero()) apply_slot(it->second, level, n);
    bump_changed(before);
    return true;
  }

  bool sweep_level(int k) {
    bool any = false;
    for (int pass = 0;; ++pass) {
      if (pass > opt_.max_grade + 1)
        throw ContractError("level sweep failed to stabilize");
      bool changed = false;
      for (int n = 2; n <= opt_.max_grade; ++n)
        if (clear_grade(n, k)) changed = true;
      if (!changed) break;
      any = true;
    }
    return any;
  }

  // ---- order detection and the level loop ----------------------------------

  // Discriminating combination of the low-grade radial coefficients, written
  // so that it vanishes iff it vanishes after the quadratic coefficient is
  // dilated to one (coefficients scale by powers of b11 under x -> lambda x).
  Rat state_expr() const {
    Rat b11 = v_.coeff(1, 1);
    Rat b01 = v_.coeff(0, 1);
    Rat b22 = v_.coeff(2, 2);
    Rat b12 = v_.coeff(1, 2);
    Rat b02 = v_.coeff(0, 2);
    return b11 * b11 * b02 - b11 * b01 * b12 + b01 * b01 * b22;
  }

  void detect_r() {
    if (r_locked_) return;
    if (mode_ == Mode::State) {
      if (state_expr() != 0) {
        r_ = 2;
        return;
      }
      for (int k = 3; 2 * k <= opt_.max_grade; ++k)
        if (v_.coeff(0, k) != 0) {
          r_ = k;
          return;
        }
      r_ = -1;
    } else {
      for (int k = 2; 2 * k <= opt_.max_grade; ++k)
        if (v_.coeff(0, k) != 0) {
          r_ = k;
          return;
        }
      r_ = -1;
    }
  }

  void level_loop() {
    for (int k = 2;; ++k) {
      if (k > opt_.max_grade + 2) throw ContractError("level loop failed to stabilize");
      bool changed = sweep_level(k);
      levels_run_ = std::max(levels_run_, k);
      if (k == 2) {
        // the order of the singularity is read off the second-level form
        detect_r();
        r_locked_ = true;
      }
      int floor_level = r_ >= 0 ? 2 * r_ + 2 : 3;
      if (!changed && k >= floor_level) break;
    }
  }

  // ---- pipeline setup steps -------------------------------------------------

  void constant_rescale(const Rat& c) {
    Step st;
    st.kind = Step::Kind::ConstantRescale;
    st.constant = c;
    v_.scale_euler(c);
    log_.push_back(std::move(st));
    bump_all();
  }

  void run_parametric(const Rat& beta) {
    if (q_ == 0) throw DegenerateError("parametric mode requires parameters");
    if (beta != 1) constant_rescale(Rat(1) / beta);
    sweep_level(2);
    levels_run_ = 2;
    NondegeneracyData nd = nondegeneracy_data(v_, opt_.max_grade);
    r_ = nd.r;
    r_locked_ = true;

    // complete the linear coefficient rows to an invertible parameter change;
    // substituting its inverse turns the linear block into [I | 0]
    std::vector<lin::SparseVec> rows;
    for (int i = 0; i <= r_; ++i) {
      lin::SparseVec row;
      for (int j = 0; j < q_; ++j)
        if (nd.A.at(i, j) != 0) row[j] = nd.A.at(i, j);
      rows.push_back(std::move(row));
    }
    std::vector<int> extra = lin::select_complement(rows, q_);
    lin::Matrix M(q_, q_);
    for (int i = 0; i <= r_; ++i)
      for (int j = 0; j < q_; ++j) M.at(i, j) = nd.A.at(i, j);
    for (int i = 0; i < static_cast<int>(extra.size()); ++i)
      M.at(r_ + 1 + i, extra[i]) = 1;
    auto Minv = lin::inverse(M);
    if (!Minv) throw ContractError("parameter change not invertible");
    std::vector<std::vector<Rat>> L(q_, std::vector<Rat>(q_, Rat(0)));
    for (int i = 0; i < q_; ++i)
      for (int j = 0; j < q_; ++j) L[i][j] = Minv->at(i, j);
    Step st;
    st.kind = Step::Kind::LinearParamChange;
    st.linear = L;
    v_ = apply_linear_param_subst(L, v_);
    v_.truncate(win_);
    log_.push_back(std::move(st));

    // reweight the parameters so every unfolding term sits at an even grade
    std::vector<int> nalpha(q_, 1);
    for (int j = 0; j <= r_ && j < q_; ++j) nalpha[j] = 2 * (r_ - j);
    Step rw;
    rw.kind = Step::Kind::Reweight;
    rw.alpha = nalpha;
    win_.alpha = Grading(std::move(nalpha));
    v_.truncate(win_);
    log_.push_back(std::move(rw));
    map_cache_.clear();
    solve_cache_.clear();
    slice_cache_.clear();
    bump_all();

    level_loop();
    parameter_cleanup();
  }

  // With the unit unfolding block in place, a leftover E^0_k mu^m term with
  // |m| >= 2 and k <= r is removed by the near-identity substitution
  // mu_{k+1} <- mu_{k+1} - beta mu^m.  These substitutions can lower the
  // parameter-weighted grade (weights may be zero), so the level sweeps never
  // attempt them; instead one pass over ascending mu-degrees suffices, since
  // every correction term lands at strictly higher mu-degree and keeps l = 0,
  // k <= r.
  void parameter_cleanup() {
    for (int deg = 2; deg <= opt_.max_param_deg; ++deg) {
      ParamSubst P(q_);
      bool any = false;
      for (const auto& [t, c] : v_.terms()) {
        if (t.l != 0 || t.k > r_ || mu_total(t.mu) != deg) continue;
        MuExp unit(q_, 0);
        unit[t.k] = 1;
        Rat u = v_.coeff(ETerm{0, t.k, unit});
        if (u == 0) continue;  // no unfolding partner; leave the term visible
        P.add(t.k, t.mu, -c / u);
        any = true;
      }
      if (!any) continue;
      Step st;
      st.kind = Step::Kind::ParamSubstitution;
      st.param_gen = P;
      st.level = 2 * r_ + 1;
      v_ = apply_param_subst(P, v_, win_);
      v_.truncate(win_);
      log_.push_back(std::move(st));
      bump_all();
    }
  }

  std::string make_case_tag() const {
    switch (mode_) {
      case Mode::State:
        if (r_ == 2) return "form-11";
        if (r_ >= 3) return "form-12";
        return "already-normal";
      case Mode::Orbital:
        return r_ >= 0 ? "orbital" : "already-normal";
      case Mode::Parametric:
        return "parametric";
    }
    return "already-normal";
  }

  // ---- data -----------------------------------------------------------------

  Mode mode_;
  Options opt_;
  int q_;
  Field v_;
  Rat rot_;
  Window win_;
  std::vector<long> ver_;
  std::vector<MuExp> mus_;
  std::vector<Step> log_;
  int r_ = -1;
  bool r_locked_ = false;
  int levels_run_ = 1;
  std::map<int, std::pair<long, Field>> slice_cache_;
  std::map<int, MapCache> map_cache_;
  std::map<std::pair<int, int>, SolveCache> solve_cache_;
};

}  // namespace

// ---------------------------------------------------------------------------
// public surface
// ---------------------------------------------------------------------------

Result normalize(const Field& input, Mode mode, const Options& opt) {
  Normalizer n(input, mode, opt);
  return n.run();
}

Field replay(const Field& input, const std::vector<Step>& log, const Options& opt) {
  Field v = input;
  Rat rot = v.rotation();
  v.set_rotation(0);
  Window w;
  w.max_grade = opt.max_grade;
  w.max_param_deg = opt.max_param_deg;
  w.alpha = Grading::ones(v.q());
  v.truncate(w);
  for (const Step& st : log) {
    switch (st.kind) {
      case Step::Kind::ConstantRescale:
        v.scale_euler(st.constant);
        break;
      case Step::Kind::StateTransform:
        v = apply_state_transform(st.state_gen, v, w);
        break;
      case Step::Kind::TimeRescale:
        v = apply_time_rescaling(st.time_gen, v, w);
        break;
      case Step::Kind::ParamSubstitution:
        v = apply_param_subst(st.param_gen, v, w);
        break;
      case Step::Kind::LinearParamChange:
        v = apply_linear_param_subst(st.linear, v);
        v.truncate(w);
        break;
      case Step::Kind::Reweight:
        w.alpha = Grading(st.alpha);
        v.truncate(w);
        break;
    }
  }
  v.set_rotation(rot);
  return v;
}

NondegeneracyData nondegeneracy_data(const Field& v, int max_grade) {
  const int q = v.q();
  int r = -1;
  for (int k = 2; 2 * k <= max_grade; ++k) {
    if (v.coeff(0, k) != 0) {
      r = k;
      break;
    }
  }
  if (r < 0) throw DegenerateError("flat: no E⁰_k (k>1) term");
  if (q < r + 1) throw DegenerateError("degenerate perturbation (too few parameters)");
  lin::Matrix A(r + 1, q);
  for (int i = 0; i <= r; ++i) {
    for (int j = 0; j < q; ++j) {
      MuExp m(q, 0);
      m[j] = 1;
      A.at(i, j) = v.coeff(ETerm{0, i, std::move(m)});
    }
  }
  if (lin::rank(A) != r + 1) throw DegenerateError("degenerate perturbation");
  return {r, A};
}

std::optional<SymmetrySolution> solve_symmetry(const Field& u, int l, int k,
                                               int max_grade) {
  if (u.q() != 0) throw ContractError("symmetry solver needs a parameter-free field");
  if (l < 1 || k < 2 || l > k)
    throw ContractError("time monomial must satisfy 1 <= l <= k with k >= 2");

  Field uu = u;
  uu.set_rotation(0);
  if (uu.coeff(1, 1) == 0) throw ContractError("field is not an orbital normal form");
  std::set<int> tails;
  for (const auto& [t, c] : uu.terms()) {
    bool quad = (t.l == 1 && t.k == 1);
    bool radial = (t.l == 0 && t.k >= 1);
    if (!quad && !radial) throw ContractError("field is not an orbital normal form");
    if (radial && t.k > 1) tails.insert(t.k);
  }
  if (tails.size() > 1) throw ContractError("field is not an orbital normal form");

  Grading ones = Grading::ones(0);
  Window w;
  w.max_grade = max_grade;
  w.max_param_deg = 0;
  w.alpha = ones;

  // rows: all monomials of grades 2..max_grade in canonical order
  std::vector<int> offset(max_grade + 2, 0);
  std::vector<std::vector<ETerm>> bases(max_grade + 1);
  int total = 0;
  for (int g = 2; g <= max_grade; ++g) {
    offset[g] = total;
    for (int kk = (g + 1) / 2; kk <= g; ++kk) bases[g].push_back(ETerm{2 * kk - g, kk, {}});
    std::sort(bases[g].begin(), bases[g].end());
    total += static_cast<int>(bases[g].size());
  }
  auto coords_all = [&](const Field& f) {
    lin::SparseVec out;
    for (const auto& [t, c] : f.terms()) {
      int g = ones.grade(t);
      if (g < 2 || g > max_grade) continue;
      const auto& basis = bases[g];
      auto it = std::lower_bound(basis.begin(), basis.end(), t);
      if (it == basis.end() || !(*it == t)) continue;
      out[offset[g] + static_cast<int>(it - basis.begin())] = c;
    }
    return out;
  };

  lin::Eliminator elim(total);
  struct Unknown {
    bool state;
    ETerm e;
    ZTerm z;
  };
  std::vector<Unknown> unknowns;
  for (int g = 1; g < max_grade; ++g) {
    for (int kk = (g + 1) / 2; kk <= g; ++kk) {
      ETerm t{2 * kk - g, kk, {}};
      Field S(0);
      S.add(t, 1);
      Field col = bracket(S, uu);
      col.truncate(w);
      elim.add_column(coords_all(col));
      unknowns.push_back({true, t, {}});
    }
    for (int nn = (g + 1) / 2; nn <= g; ++nn) {
      ZTerm zt{2 * nn - g, nn, {}};
      Scalar T(0);
      T.add(zt, 1);
      Field col = scalar_action(T, uu);
      col.truncate(w);
      elim.add_column(coords_all(col));
      unknowns.push_back({false, {}, zt});
    }
  }

  Scalar zmon(0);
  zmon.add(ZTerm{l, k, {}}, 1);
  Field rhs = scalar_action(zmon, uu);
  rhs.truncate(w);
  rhs.scale(-1);

  lin::SparseVec sol;
  if (!elim.solve(coords_all(rhs), &sol)) return std::nullopt;
  SymmetrySolution out{Field(0), Scalar(0)};
  for (const auto& [ci, c] : sol) {
    const Unknown& un = unknowns[ci];
    if (un.state)
      out.S.add(un.e, c);
    else
      out.T.add(un.z, c);
  }
  return out;
}

}  // namespace hznf
