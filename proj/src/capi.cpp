#include "hznf.h"

#include "engine.hpp"
#include "io.hpp"
#include "verify.hpp"

#include "json.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>
#include <utility>

using nlohmann::ordered_json;

struct hznf_field {
  hznf::Field f;
};

struct hznf_result {
  hznf::Result res;
  bool emit_transforms = false;
  bool verify_ran = false;
  bool cone_input = false;
  bool cone_output = false;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
hznf_status wrap(Fn&& fn) {
  try {
    fn();
    return HZNF_OK;
  } catch (const hznf::io::ParseError& e) {
    g_last_error = e.what();
    return HZNF_ERR_PARSE;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return HZNF_ERR_PARSE;
  } catch (const hznf::DegenerateError& e) {
    g_last_error = e.what();
    return HZNF_ERR_DEGENERATE;
  } catch (const hznf::ContractError& e) {
    g_last_error = e.what();
    return HZNF_ERR_CONTRACT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return HZNF_ERR_INTERNAL;
  }
}

void require(bool cond, const char* msg) {
  if (!cond) throw hznf::ContractError(msg);
}

ordered_json field_to_json(const hznf::Field& f) {
  ordered_json terms = ordered_json::array();
  for (const auto& [t, c] : f.terms()) {
    ordered_json jt;
    jt["l"] = t.l;
    jt["k"] = t.k;
    jt["mu"] = t.mu;
    jt["coeff"] = hznf::rat_str(c);
    terms.push_back(std::move(jt));
  }
  ordered_json out;
  out["params"] = f.q();
  out["rotation"] = hznf::rat_str(f.rotation());
  out["terms"] = std::move(terms);
  return out;
}

ordered_json scalar_to_json(const hznf::Scalar& s) {
  ordered_json terms = ordered_json::array();
  for (const auto& [t, c] : s.terms()) {
    ordered_json jt;
    jt["m"] = t.m;
    jt["n"] = t.n;
    jt["mu"] = t.mu;
    jt["coeff"] = hznf::rat_str(c);
    terms.push_back(std::move(jt));
  }
  return terms;
}

ordered_json step_to_json(const hznf::Step& st) {
  ordered_json j;
  switch (st.kind) {
    case hznf::Step::Kind::ConstantRescale:
      j["kind"] = "constant-rescale";
      j["constant"] = hznf::rat_str(st.constant);
      break;
    case hznf::Step::Kind::StateTransform:
      j["kind"] = "state-transform";
      j["generator"] = field_to_json(st.state_gen);
      break;
    case hznf::Step::Kind::TimeRescale:
      j["kind"] = "time-rescale";
      j["generator"] = scalar_to_json(st.time_gen);
      break;
    case hznf::Step::Kind::ParamSubstitution: {
      j["kind"] = "param-substitution";
      ordered_json comps = ordered_json::array();
      for (int i = 0; i < st.param_gen.q(); ++i)
        comps.push_back(scalar_to_json(st.param_gen.comp(i)));
      j["components"] = std::move(comps);
      break;
    }
    case hznf::Step::Kind::LinearParamChange: {
      j["kind"] = "linear-param-change";
      ordered_json rows = ordered_json::array();
      for (const auto& row : st.linear) {
        ordered_json jr = ordered_json::array();
        for (const auto& c : row) jr.push_back(hznf::rat_str(c));
        rows.push_back(std::move(jr));
      }
      j["matrix"] = std::move(rows);
      break;
    }
    case hznf::Step::Kind::Reweight:
      j["kind"] = "reweight";
      j["alpha"] = st.alpha;
      break;
  }
  j["level"] = st.level;
  j["grade"] = st.grade;
  return j;
}

const char* mode_name(hznf::Mode m) {
  switch (m) {
    case hznf::Mode::State:
      return "state";
    case hznf::Mode::Orbital:
      return "orbital";
    case hznf::Mode::Parametric:
      return "parametric";
  }
  return "state";
}

ordered_json report_to_json(const hznf::ExampleReport& rep) {
  ordered_json j;
  j["expected"] = {{"beta1", hznf::rat_str(rep.expected_beta1)},
                   {"beta2", hznf::rat_str(rep.expected_beta2)}};
  j["computed"] = {{"beta1", hznf::rat_str(rep.computed_beta1)},
                   {"beta2", hznf::rat_str(rep.computed_beta2)}};
  j["unitQuadratic"] = rep.unit_quadratic;
  j["unitUnfolding"] = rep.unit_unfolding;
  j["pass"] = rep.pass;
  if (!rep.error.empty()) j["error"] = rep.error;
  return j;
}

}  // namespace

extern "C" {

const char* hznf_version(void) { return "1.0.0"; }

const char* hznf_last_error(void) { return g_last_error.c_str(); }

void hznf_string_free(char* s) { std::free(s); }

void hznf_field_free(hznf_field* f) { delete f; }

void hznf_result_free(hznf_result* r) { delete r; }

hznf_status hznf_parse(const char* text, hznf_field** out) {
  return wrap([&] {
    require(text != nullptr && out != nullptr, "null argument");
    auto* h = new hznf_field{hznf::io::parse_field(text)};
    *out = h;
  });
}

hznf_status hznf_serialize(const hznf_field* f, char** out) {
  return wrap([&] {
    require(f != nullptr && out != nullptr, "null argument");
    *out = dup_string(hznf::io::serialize_field(f->f));
  });
}

hznf_status hznf_field_from_example(const char* a, const char* b, const char* c,
                                    const char* d, const char* e,
                                    hznf_field** out) {
  return wrap([&] {
    require(a && b && c && d && e && out, "null argument");
    *out = new hznf_field{hznf::example_family(
        hznf::rat_parse(a), hznf::rat_parse(b), hznf::rat_parse(c),
        hznf::rat_parse(d), hznf::rat_parse(e))};
  });
}

hznf_status hznf_bracket(const hznf_field* a, const hznf_field* b,
                         hznf_field** out) {
  return wrap([&] {
    require(a != nullptr && b != nullptr && out != nullptr, "null argument");
    *out = new hznf_field{hznf::bracket(a->f, b->f)};
  });
}

hznf_status hznf_normalize(const hznf_field* f, hznf_mode mode, int max_grade,
                           int max_param_deg, unsigned flags,
                           hznf_result** out) {
  return wrap([&] {
    require(f != nullptr && out != nullptr, "null argument");
    require(max_grade >= 2, "max_grade must be at least 2");
    require(max_param_deg >= 0, "max_param_deg must be nonnegative");
    hznf::Mode m;
    switch (mode) {
      case HZNF_MODE_STATE:
        m = hznf::Mode::State;
        break;
      case HZNF_MODE_ORBITAL:
        m = hznf::Mode::Orbital;
        break;
      case HZNF_MODE_PARAMETRIC:
        m = hznf::Mode::Parametric;
        break;
      default:
        throw hznf::ContractError("unknown mode");
    }
    hznf::Options opt;
    opt.max_grade = max_grade;
    opt.max_param_deg = max_param_deg;
    auto* h = new hznf_result;
    try {
      h->res = hznf::normalize(f->f, m, opt);
      h->emit_transforms = (flags & HZNF_EMIT_TRANSFORMS) != 0;
      if ((flags & HZNF_RUN_VERIFY) != 0) {
        h->verify_ran = true;
        h->cone_input = hznf::cone_invariance_check(f->f);
        h->cone_output = hznf::cone_invariance_check(h->res.normalized);
      }
    } catch (...) {
      delete h;
      throw;
    }
    *out = h;
  });
}

hznf_status hznf_result_field(const hznf_result* r, hznf_field** out) {
  return wrap([&] {
    require(r != nullptr && out != nullptr, "null argument");
    *out = new hznf_field{r->res.normalized};
  });
}

hznf_status hznf_result_json(const hznf_result* r, char** out) {
  return wrap([&] {
    require(r != nullptr && out != nullptr, "null argument");
    ordered_json j;
    j["mode"] = mode_name(r->res.mode);
    j["caseTag"] = r->res.case_tag;
    j["r"] = r->res.r;
    j["levels"] = r->res.levels_run;
    j["maxGrade"] = r->res.options.max_grade;
    if (r->res.normalized.q() > 0) {
      j["maxParamDeg"] = r->res.options.max_param_deg;
      j["alpha"] = r->res.alpha;
    }
    j["field"] = field_to_json(r->res.normalized);
    if (r->emit_transforms) {
      ordered_json steps = ordered_json::array();
      for (const auto& st : r->res.log) steps.push_back(step_to_json(st));
      j["transforms"] = std::move(steps);
    }
    if (r->verify_ran)
      j["verify"] = {{"coneInput", r->cone_input}, {"coneOutput", r->cone_output}};
    *out = dup_string(j.dump(2));
  });
}

hznf_status hznf_result_text(const hznf_result* r, char** out) {
  return wrap([&] {
    require(r != nullptr && out != nullptr, "null argument");
    std::string s;
    s += "mode: ";
    s += mode_name(r->res.mode);
    s += "\ncase: " + r->res.case_tag;
    s += "\nr: " + std::to_string(r->res.r);
    s += "\nlevels: " + std::to_string(r->res.levels_run);
    s += "\ntransform steps: " + std::to_string(r->res.log.size());
    if (r->verify_ran) {
      s += "\ncone identity (input): ";
      s += r->cone_input ? "ok" : "FAILED";
      s += "\ncone identity (output): ";
      s += r->cone_output ? "ok" : "FAILED";
    }
    s += "\n\n" + hznf::io::serialize_field(r->res.normalized);
    *out = dup_string(s);
  });
}

hznf_status hznf_check_integral(const hznf_field* f, int max_deg,
                                int* dimension) {
  return wrap([&] {
    require(f != nullptr && dimension != nullptr, "null argument");
    *dimension = hznf::first_integral_obstruction(f->f, max_deg);
  });
}

hznf_status hznf_cone_check(const hznf_field* f, int* holds) {
  return wrap([&] {
    require(f != nullptr && holds != nullptr, "null argument");
    *holds = hznf::cone_invariance_check(f->f) ? 1 : 0;
  });
}

hznf_status hznf_example_trial(const char* a, const char* b, const char* c,
                               const char* d, const char* e, int max_grade,
                               int max_param_deg, char** json_report,
                               int* pass) {
  return wrap([&] {
    require(a && b && c && d && e && json_report && pass, "null argument");
    hznf::Options opt;
    opt.max_grade = max_grade;
    opt.max_param_deg = max_param_deg;
    hznf::ExampleReport rep = hznf::example_trial(
        hznf::rat_parse(a), hznf::rat_parse(b), hznf::rat_parse(c),
        hznf::rat_parse(d), hznf::rat_parse(e), opt);
    *json_report = dup_string(report_to_json(rep).dump(2));
    *pass = rep.pass ? 1 : 0;
  });
}

hznf_status hznf_solve_symmetry(const hznf_field* u, int l, int k,
                                int max_grade, char** json_solution,
                                int* found) {
  return wrap([&] {
    require(u != nullptr && json_solution != nullptr && found != nullptr,
            "null argument");
    auto sol = hznf::solve_symmetry(u->f, l, k, max_grade);
    ordered_json j;
    j["l"] = l;
    j["k"] = k;
    j["maxGrade"] = max_grade;
    j["found"] = sol.has_value();
    if (sol) {
      j["stateGenerator"] = field_to_json(sol->S);
      j["timeGenerator"] = scalar_to_json(sol->T);
    }
    *json_solution = dup_string(j.dump(2));
    *found = sol.has_value() ? 1 : 0;
  });
}

}  // extern "C"
