#include "algebra.hpp"

#include "doctest.h"
#include "test_util.hpp"

using namespace hznf;
using testutil::Rng;

namespace {

ETerm et(int l, int k, MuExp mu = {}) { return ETerm{l, k, std::move(mu)}; }
ZTerm zt(int m, int n, MuExp mu = {}) { return ZTerm{m, n, std::move(mu)}; }

Field mono(int q, int l, int k, const Rat& c, MuExp mu = {}) {
  Field f(q);
  if (mu.empty()) mu.assign(q, 0);
  f.add(ETerm{l, k, mu}, c);
  return f;
}

Window window(int max_grade, int q = 0, int max_param_deg = 8) {
  return Window{max_grade, max_param_deg, Grading::ones(q)};
}

}  // namespace

TEST_CASE("term validity rules") {
  CHECK(et(1, 1, {}).valid());
  CHECK(et(0, 3, {}).valid());
  CHECK_FALSE(et(2, 1, {}).valid());
  CHECK_FALSE(et(-1, 1, {}).valid());
  CHECK_FALSE(et(0, 0, {}).valid());           // bare radial field
  CHECK(et(0, 0, {1, 0}).valid());             // ... but fine with a mu part
  CHECK_FALSE(et(0, 1, {-1}).valid());
  CHECK(zt(0, 0, {}).is_constant());
  CHECK_FALSE(zt(0, 0, {1}).is_constant());
  CHECK_FALSE(zt(1, 1, {}).is_constant());
}

TEST_CASE("field add/set drops zero slots and rejects invalid keys") {
  Field f(0);
  f.add(et(1, 1), Rat(2));
  f.add(et(1, 1), Rat(-2));
  CHECK(f.is_zero());
  f.set(et(0, 2), Rat(1, 3));
  CHECK(f.coeff(0, 2) == Rat(1, 3));
  f.set(et(0, 2), Rat(0));
  CHECK(f.size() == 0);
  CHECK_THROWS_AS(f.add(et(2, 1), Rat(1)), ContractError);
  CHECK_THROWS_AS(f.add(et(0, 0), Rat(1)), ContractError);
}

TEST_CASE("bracket structure constants") {
  // [E^l_k, E^m_n] = (n-k) E^(l+m)_(k+n)
  Field a = mono(0, 1, 1, Rat(1));
  CHECK(bracket(a, a).is_zero());

  Field b01 = mono(0, 0, 1, Rat(1));
  Field b12 = mono(0, 1, 2, Rat(1));
  Field r = bracket(b01, b12);
  CHECK(r.coeff(1, 3) == Rat(1));
  CHECK(r.size() == 1);

  Field e22 = mono(0, 2, 2, Rat(1));
  Field e11 = mono(0, 1, 1, Rat(1));
  r = bracket(e22, e11);
  CHECK(r.coeff(3, 3) == Rat(-1));
  CHECK(r.size() == 1);

  // the rotation commutes with everything
  Field theta(0);
  theta.set_rotation(Rat(1));
  CHECK(bracket(e11, theta).is_zero());
  Field mixed = theta;
  mixed.add(et(0, 1), Rat(2));
  Field s = bracket(mixed, b12);  // only the E-part acts
  CHECK(s.rotation() == 0);
  CHECK(s.coeff(1, 3) == Rat(2));
}

TEST_CASE("bracket on parametric monomials adds exponents") {
  Field a = mono(2, 0, 1, Rat(1), {1, 0});
  Field b = mono(2, 1, 2, Rat(3), {0, 2});
  Field r = bracket(a, b);
  CHECK(r.coeff(et(1, 3, {1, 2})) == Rat(3));
  CHECK(r.size() == 1);
}

TEST_CASE("bracket requires matching parameter counts") {
  Field a(0), b(2);
  a.add(et(1, 1), Rat(1));
  b.add(et(1, 1, {0, 0}), Rat(1));
  CHECK_THROWS_AS(bracket(a, b), ContractError);
}

TEST_CASE("scalar action is the index-adding module action") {
  Scalar z11(0);
  z11.add(zt(1, 1), Rat(1));
  Field e11 = mono(0, 1, 1, Rat(1));
  Field r = scalar_action(z11, e11);
  CHECK(r.coeff(2, 2) == Rat(1));
  CHECK(r.size() == 1);

  Scalar z01(0);
  z01.add(zt(0, 1), Rat(1));
  r = scalar_action(z01, e11);
  CHECK(r.coeff(1, 2) == Rat(1));
  CHECK(r.size() == 1);

  CHECK(scalar_action(Scalar(0), e11).is_zero());

  Field rot(0);
  rot.set_rotation(Rat(1));
  CHECK_THROWS_AS(scalar_action(z11, rot), ContractError);
}

TEST_CASE("mu derivative action implements the product rule") {
  // v = E^0_1 mu1, P = (mu1^2, 0, 0)  ->  E^0_1 mu1^2
  Field v = mono(3, 0, 1, Rat(1), {1, 0, 0});
  ParamSubst p(3);
  p.add(0, {2, 0, 0}, Rat(1));
  Field r = mu_derivative_action(p, v);
  CHECK(r.coeff(et(0, 1, {2, 0, 0})) == Rat(1));
  CHECK(r.size() == 1);

  // mu-independent input -> 0
  Field w = mono(3, 1, 2, Rat(5), {0, 0, 0});
  CHECK(mu_derivative_action(p, w).is_zero());

  // v = E^0_2 mu2^2, P = (0, mu1, 0)  ->  2 E^0_2 mu1 mu2
  Field u = mono(3, 0, 2, Rat(1), {0, 2, 0});
  ParamSubst p2(3);
  p2.add(1, {1, 0, 0}, Rat(1));
  r = mu_derivative_action(p2, u);
  CHECK(r.coeff(et(0, 2, {1, 1, 0})) == Rat(2));
  CHECK(r.size() == 1);
}

TEST_CASE("grades") {
  Grading g0 = Grading::ones(0);
  CHECK(g0.grade(et(1, 1)) == 1);
  CHECK(g0.grade(et(0, 1)) == 2);
  CHECK(g0.grade(et(2, 2)) == 2);
  CHECK(g0.grade(et(0, 2)) == 4);
  CHECK(g0.grade(zt(1, 1)) == 1);
  CHECK(g0.grade(zt(0, 1)) == 2);

  // weights 2(r-i+1) for r = 2: alpha = (4, 2, 0)
  Grading ga(std::vector<int>{4, 2, 0});
  CHECK(ga.grade(et(0, 1, {0, 1, 0})) == 4);  // = 2r
  CHECK(ga.grade(et(0, 2, {0, 0, 5})) == 4);  // zero-weight slot
  CHECK(ga.mu_grade({1, 1, 1}) == 6);
}

TEST_CASE("window keeps by grade and parameter degree") {
  Window w{6, 2, Grading::ones(3)};
  CHECK(w.keeps(6, 2));
  CHECK_FALSE(w.keeps(7, 0));
  CHECK_FALSE(w.keeps(3, 3));
  Window nw{6, 0, Grading::ones(0)};  // no parameters: mu cap ignored
  CHECK(nw.keeps(6, 0));
}

TEST_CASE("state transform examples") {
  Field v(0);
  v.set_rotation(Rat(1));
  v.add(et(1, 1), Rat(1));

  CHECK(apply_state_transform(Field(0), v, window(9)) == v);
  CHECK(apply_state_transform(mono(0, 1, 1, Rat(1)), v, window(9)) == v);

  // S = E^2_2 kills nothing of v but spawns -E^3_3 at first order
  Field r = apply_state_transform(mono(0, 2, 2, Rat(1)), v, window(4));
  Field expect = v;
  expect.add(et(3, 3), Rat(-1));
  CHECK(r == expect);

  Field bad(0);
  bad.set_rotation(Rat(1));
  CHECK_THROWS_AS(apply_state_transform(bad, v, window(4)), ContractError);
}

TEST_CASE("state transform with -S inverts up to truncation") {
  Rng rng(7101);
  for (int trial = 0; trial < 25; ++trial) {
    Field v = testutil::rand_field(rng, 0, 6, 5);
    Field s = testutil::rand_field(rng, 0, 3, 4);
    Window w = window(10);
    Field fwd = apply_state_transform(s, v, w);
    Field back = s;
    back.scale(Rat(-1));
    Field round = apply_state_transform(back, fwd, w);
    round.truncate(w);
    Field vt = v;
    vt.truncate(w);
    CHECK(round == vt);
  }
}

TEST_CASE("time rescaling examples") {
  Field e11 = mono(0, 1, 1, Rat(1));
  CHECK(apply_time_rescaling(Scalar(0), e11, window(9)) == e11);

  Scalar t(0);
  t.add(zt(1, 1), Rat(1));
  Field r = apply_time_rescaling(t, e11, window(9));
  Field expect = e11;
  expect.add(et(2, 2), Rat(1));
  CHECK(r == expect);

  Scalar t2(0);
  t2.add(zt(0, 1), Rat(1));
  Field v = e11;
  v.add(et(0, 1), Rat(1));
  r = apply_time_rescaling(t2, v, window(9));
  expect = v;
  expect.add(et(1, 2), Rat(1));
  expect.add(et(0, 2), Rat(1));
  CHECK(r == expect);

  CHECK_THROWS_AS(Scalar(0).add(zt(0, 0), Rat(1)), ContractError);
  Scalar ok = Scalar::constant(0, Rat(2));  // distinguished constructor
  CHECK(ok.coeff(zt(0, 0)) == Rat(2));
}

TEST_CASE("parameter substitution examples") {
  Window w{12, 4, Grading::ones(3)};

  Field v = mono(3, 0, 0, Rat(1), {1, 0, 0});
  CHECK(apply_param_subst(ParamSubst(3), v, w) == v);

  ParamSubst p(3);
  p.add(0, {0, 2, 0}, Rat(1));  // mu1 <- mu1 + mu2^2
  Field r = apply_param_subst(p, v, w);
  Field expect = v;
  expect.add(et(0, 0, {0, 2, 0}), Rat(1));
  CHECK(r == expect);

  // v = E^0_1 mu1^2 under mu1 <- mu1 + mu1 mu2: binomial expansion
  Field u = mono(3, 0, 1, Rat(1), {2, 0, 0});
  ParamSubst p2(3);
  p2.add(0, {1, 1, 0}, Rat(1));
  r = apply_param_subst(p2, u, w);
  expect = u;
  expect.add(et(0, 1, {2, 1, 0}), Rat(2));
  expect.add(et(0, 1, {2, 2, 0}), Rat(1));
  CHECK(r == expect);
}

TEST_CASE("linear parameter substitution composes exactly") {
  // mu1 <- mu1 + mu2, mu2 <- mu2 (unipotent)
  std::vector<std::vector<Rat>> m{{Rat(1), Rat(1)}, {Rat(0), Rat(1)}};
  Field v = mono(2, 0, 1, Rat(1), {2, 0});
  Field r = apply_linear_param_subst(m, v);
  CHECK(r.coeff(et(0, 1, {2, 0})) == Rat(1));
  CHECK(r.coeff(et(0, 1, {1, 1})) == Rat(2));
  CHECK(r.coeff(et(0, 1, {0, 2})) == Rat(1));
  CHECK(r.size() == 3);
}

TEST_CASE("antisymmetry and Jacobi on random elements") {
  Rng rng(4242);
  for (int trial = 0; trial < 60; ++trial) {
    int q = trial % 3 == 0 ? 2 : 0;
    Field a = testutil::rand_field(rng, q, 5, 5);
    Field b = testutil::rand_field(rng, q, 5, 5);
    Field c = testutil::rand_field(rng, q, 5, 5);

    Field ab = bracket(a, b);
    Field ba = bracket(b, a);
    ba.scale(Rat(-1));
    CHECK(ab == ba);

    Field jac = bracket(a, bracket(b, c));
    jac.add_field(bracket(b, bracket(c, a)));
    jac.add_field(bracket(c, bracket(a, b)));
    CHECK(jac.is_zero());
  }
}

TEST_CASE("grading additivity of bracket and scalar action") {
  Rng rng(515);
  Grading g = Grading::ones(2);
  for (int trial = 0; trial < 80; ++trial) {
    ETerm a = testutil::rand_eterm(rng, 2, 5);
    ETerm b = testutil::rand_eterm(rng, 2, 5);
    Field fa = mono(2, a.l, a.k, Rat(1), a.mu);
    Field fb = mono(2, b.l, b.k, Rat(1), b.mu);
    Field br = bracket(fa, fb);
    if (!br.is_zero()) {
      CHECK(br.min_euler_grade(g) == g.grade(a) + g.grade(b));
      CHECK(br.max_euler_grade(g) == g.grade(a) + g.grade(b));
    }
    ZTerm z = testutil::rand_zterm(rng, 2, 4);
    if (!z.is_constant()) {
      Scalar s(2);
      s.add(z, Rat(1));
      Field sa = scalar_action(s, fa);
      CHECK(sa.min_euler_grade(g) == g.grade(z) + g.grade(a));
    }
  }
}

TEST_CASE("scalar multiplication makes scalar_action a module action") {
  Rng rng(8818);
  for (int trial = 0; trial < 40; ++trial) {
    Scalar t1 = testutil::rand_scalar(rng, 2, 3, 4);
    Scalar t2 = testutil::rand_scalar(rng, 2, 3, 4);
    Field v = testutil::rand_field(rng, 2, 4, 4);
    Field lhs = scalar_action(t1, scalar_action(t2, v));
    Field rhs = scalar_action(scalar_mul(t1, t2), v);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("slices and truncation") {
  Grading g = Grading::ones(0);
  Field v(0);
  v.set_rotation(Rat(3));
  v.add(et(1, 1), Rat(1));   // grade 1
  v.add(et(0, 1), Rat(2));   // grade 2
  v.add(et(2, 2), Rat(4));   // grade 2
  v.add(et(0, 3), Rat(5));   // grade 6

  Field s2 = v.slice(2, g);
  CHECK(s2.rotation() == 0);
  CHECK(s2.size() == 2);
  CHECK(s2.coeff(0, 1) == Rat(2));
  CHECK(v.min_euler_grade(g) == 1);
  CHECK(v.max_euler_grade(g) == 6);

  Field t = v;
  t.truncate(Window{2, 0, g});
  CHECK(t.rotation() == Rat(3));
  CHECK(t.size() == 3);
  CHECK(t.coeff(0, 3) == Rat(0));
}
