#include "verify.hpp"

#include "linalg.hpp"

#include <utility>
#include <vector>

namespace hznf {

namespace {

void xp_add(XyzPoly& p, const XyzMon& m, const Rat& c) {
  if (c == 0) return;
  auto [it, fresh] = p.try_emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) p.erase(it);
  }
}

// binomial coefficients for expanding R^j = (y^2 + z^2)^j
std::vector<Rat> binomial_row(int j) {
  std::vector<Rat> row(static_cast<std::size_t>(j) + 1);
  row[0] = 1;
  for (int i = 1; i <= j; ++i) row[i] = row[i - 1] * (j - i + 1) / i;
  return row;
}

// adds c * x^xp * y^yp * z^zp * R^j * mu^m to p
void add_with_radial(XyzPoly& p, int xp, int yp, int zp, int j, const MuExp& m,
                     const Rat& c) {
  std::vector<Rat> bin = binomial_row(j);
  for (int i = 0; i <= j; ++i)
    xp_add(p, XyzMon{xp, yp + 2 * i, zp + 2 * (j - i), m}, c * bin[static_cast<std::size_t>(i)]);
}

XyzPoly xp_mul(const XyzPoly& a, const XyzPoly& b) {
  XyzPoly out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      MuExp mu = ma.mu;
      if (mu.size() < mb.mu.size()) mu.resize(mb.mu.size(), 0);
      for (std::size_t i = 0; i < mb.mu.size(); ++i) mu[i] += mb.mu[i];
      xp_add(out, XyzMon{ma.x + mb.x, ma.y + mb.y, ma.z + mb.z, std::move(mu)}, ca * cb);
    }
  }
  return out;
}

XyzPoly xp_mono(int x, int y, int z, const Rat& c = 1) {
  XyzPoly p;
  p[XyzMon{x, y, z, MuExp{}}] = c;
  return p;
}

}  // namespace

std::array<XyzPoly, 3> expand_system(const Field& v) {
  XyzPoly xdot, ydot, zdot;
  const int q = v.q();
  if (v.rotation() != 0) {
    MuExp none(q, 0);
    xp_add(ydot, XyzMon{0, 0, 1, none}, v.rotation());
    xp_add(zdot, XyzMon{0, 1, 0, none}, -v.rotation());
  }
  for (const auto& [t, c] : v.terms()) {
    int j = t.k - t.l;
    add_with_radial(xdot, t.l + 1, 0, 0, j, t.mu, c);
    add_with_radial(ydot, t.l, 1, 0, j, t.mu, c / 2);
    add_with_radial(zdot, t.l, 0, 1, j, t.mu, c / 2);
  }
  return {std::move(xdot), std::move(ydot), std::move(zdot)};
}

XyzPoly cone_residual(const XyzPoly& xdot, const XyzPoly& ydot, const XyzPoly& zdot) {
  XyzPoly radial;
  radial[XyzMon{0, 2, 0, MuExp{}}] = 1;
  radial[XyzMon{0, 0, 2, MuExp{}}] = 1;
  XyzPoly out = xp_mul(radial, xdot);
  XyzPoly inner = xp_mul(xp_mono(0, 1, 0), ydot);
  for (const auto& [m, c] : xp_mul(xp_mono(0, 0, 1), zdot)) xp_add(inner, m, c);
  for (const auto& [m, c] : xp_mul(xp_mono(1, 0, 0, -2), inner)) xp_add(out, m, c);
  return out;
}

bool cone_invariance_check(const Field& v) {
  auto sys = expand_system(v);
  return cone_residual(sys[0], sys[1], sys[2]).empty();
}

int first_integral_obstruction(const Field& v, int max_deg) {
  if (v.q() != 0) throw ContractError("first-integral check takes a parameter-free field");
  if (v.rotation() != 0) throw ContractError("first-integral check takes a rotation-free field");
  if (v.euler_zero()) throw ContractError("first-integral check needs a nonzero field");
  if (max_deg < 1) throw ContractError("first-integral check needs max_deg >= 1");

  auto sys = expand_system(v);

  // one column per candidate monomial f = x^a y^b z^c: the column is
  // f_x*xdot + f_y*ydot + f_z*zdot
  std::vector<XyzPoly> cols;
  for (int deg = 1; deg <= max_deg; ++deg) {
    for (int a = deg; a >= 0; --a) {
      for (int b = deg - a; b >= 0; --b) {
        int c = deg - a - b;
        XyzPoly col;
        if (a > 0)
          for (const auto& [m, cf] : xp_mul(xp_mono(a - 1, b, c, Rat(a)), sys[0]))
            xp_add(col, m, cf);
        if (b > 0)
          for (const auto& [m, cf] : xp_mul(xp_mono(a, b - 1, c, Rat(b)), sys[1]))
            xp_add(col, m, cf);
        if (c > 0)
          for (const auto& [m, cf] : xp_mul(xp_mono(a, b, c - 1, Rat(c)), sys[2]))
            xp_add(col, m, cf);
        cols.push_back(std::move(col));
      }
    }
  }

  std::map<XyzMon, int> row_index;
  for (const XyzPoly& col : cols)
    for (const auto& [m, cf] : col) row_index.try_emplace(m, 0);
  int next = 0;
  for (auto& [m, idx] : row_index) idx = next++;

  lin::Eliminator elim(next);
  int dependent = 0;
  for (const XyzPoly& col : cols) {
    lin::SparseVec sv;
    for (const auto& [m, cf] : col) sv[row_index.at(m)] = cf;
    if (!elim.add_column(sv)) ++dependent;
  }
  return dependent;
}

Field example_family(const Rat& a, const Rat& b, const Rat& c, const Rat& d,
                     const Rat& e) {
  auto et = [](int l, int k, MuExp mu) { return ETerm{l, k, std::move(mu)}; };
  MuExp none(3, 0), m1({1, 0, 0}), m2({0, 1, 0}), m3({0, 0, 1});
  MuExp m11({2, 0, 0}), m22({0, 2, 0});
  Field w(3);
  w.set_rotation(1);
  w.add(et(0, 0, m1), 2);
  w.add(et(1, 1, none), 2 * a);
  w.add(et(1, 1, m1), 2);
  w.add(et(1, 1, m2), 2);
  w.add(et(0, 1, none), 2 * b);
  w.add(et(0, 1, m2), 2);
  w.add(et(2, 2, none), 2 * c);
  w.add(et(2, 2, m11), 2);
  w.add(et(2, 2, m22), 2);
  w.add(et(0, 2, m3), 2);
  w.add(et(3, 3, none), 2 * e);
  w.add(et(1, 2, none), 2 * d);
  w.add(et(1, 2, m11), 2);
  return w;
}

ExampleReport example_trial(const Rat& a, const Rat& b, const Rat& c,
                            const Rat& d, const Rat& e, const Options& opt) {
  if (a * b * (d * a - c * b) == 0)
    throw DegenerateError("example trial requires ab(da - cb) != 0");

  ExampleReport rep;
  rep.expected_beta1 = b / a;
  rep.expected_beta2 = b * (d * a - c * b) / (a * a * a);

  Field w = example_family(a, b, c, d, e);
  Result res;
  try {
    res = normalize(w, Mode::Parametric, opt);
  } catch (const std::exception& ex) {
    rep.error = ex.what();
    return rep;
  }

  auto coeff = [&](int l, int k, MuExp mu) {
    return res.normalized.coeff(ETerm{l, k, std::move(mu)});
  };
  MuExp none(3, 0);
  rep.computed_beta1 = coeff(0, 1, none);
  rep.computed_beta2 = coeff(0, 2, none);
  rep.unit_quadratic = coeff(1, 1, none) == 1;
  rep.unit_unfolding = coeff(0, 0, MuExp({1, 0, 0})) == 1 &&
                       coeff(0, 1, MuExp({0, 1, 0})) == 1 &&
                       coeff(0, 2, MuExp({0, 0, 1})) == 1;
  rep.pass = rep.unit_quadratic && rep.unit_unfolding &&
             rep.computed_beta1 == rep.expected_beta1 &&
             rep.computed_beta2 == rep.expected_beta2;
  return rep;
}

}  // namespace hznf
