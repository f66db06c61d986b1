// Command-line front end.  Talks to the engine exclusively through the C API.
//
// Exit codes: 0 success, 1 the math rejected the input (degenerate or
// precondition failure), 2 parse or usage errors.
#include "hznf.h"

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMath = 1;
constexpr int kExitUsage = 2;

struct FieldGuard {
  hznf_field* f = nullptr;
  ~FieldGuard() { hznf_field_free(f); }
};

struct ResultGuard {
  hznf_result* r = nullptr;
  ~ResultGuard() { hznf_result_free(r); }
};

struct StrGuard {
  char* s = nullptr;
  ~StrGuard() { hznf_string_free(s); }
};

int status_to_exit(hznf_status st) {
  switch (st) {
    case HZNF_OK:
      return kExitOk;
    case HZNF_ERR_PARSE:
      return kExitUsage;
    default:
      return kExitMath;
  }
}

int fail(hznf_status st) {
  std::fprintf(stderr, "error: %s\n", hznf_last_error());
  return status_to_exit(st);
}

int load_field(const std::string& path, hznf_field** out) {
  std::ifstream in(path);
  if (!in) {
    std::fprintf(stderr, "error: cannot read '%s'\n", path.c_str());
    return kExitUsage;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  hznf_status st = hznf_parse(buf.str().c_str(), out);
  if (st != HZNF_OK) return fail(st);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact normal forms for Hopf-zero vector fields"};
  app.require_subcommand(1);

  std::string input, input2, mode = "state", format = "text";
  int max_grade = 12, max_param_deg = 4, max_deg = 8;
  int sym_l = 1, sym_k = 2;
  unsigned seed = 1;
  int trials = 20;
  bool emit_transforms = false, run_verify = false;

  CLI::App* normalize = app.add_subcommand("normalize", "run a normal-form pipeline");
  normalize->add_option("--input", input, "field file")->required();
  normalize->add_option("--mode", mode, "state|orbital|parametric")
      ->check(CLI::IsMember({"state", "orbital", "parametric"}));
  normalize->add_option("--max-grade", max_grade, "truncation grade");
  normalize->add_option("--max-param-degree", max_param_deg,
                        "parameter degree cap");
  normalize->add_option("--format", format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));
  normalize->add_flag("--emit-transforms", emit_transforms,
                      "include the transform log");
  normalize->add_flag("--verify", run_verify,
                      "check the cone identity on input and output");

  CLI::App* bracket = app.add_subcommand("bracket", "Lie bracket of two fields");
  bracket->add_option("--input", input, "left field file")->required();
  bracket->add_option("--with", input2, "right field file")->required();
  bracket->add_option("--format", format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));

  CLI::App* integral =
      app.add_subcommand("check-integral", "polynomial first-integral obstruction");
  integral->add_option("--input", input, "field file")->required();
  integral->add_option("--max-deg", max_deg, "candidate degree cap");

  CLI::App* example =
      app.add_subcommand("example", "worked-example trials against the closed forms");
  example->add_option("--seed", seed, "random seed");
  example->add_option("--trials", trials, "number of tuples");
  example->add_option("--max-grade", max_grade, "truncation grade")
      ->default_val(12);
  example->add_option("--max-param-degree", max_param_deg,
                      "parameter degree cap")
      ->default_val(3);

  CLI::App* symmetry = app.add_subcommand("symmetry", "solve for a time symmetry");
  symmetry->add_option("--input", input, "orbital normal form file")->required();
  symmetry->add_option("--l", sym_l, "x exponent of the time monomial");
  symmetry->add_option("--k", sym_k, "radial index of the time monomial");
  symmetry->add_option("--max-grade", max_grade, "equation grade cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (normalize->parsed()) {
    FieldGuard f;
    int rc = load_field(input, &f.f);
    if (rc != kExitOk) return rc;
    hznf_mode m = mode == "orbital"     ? HZNF_MODE_ORBITAL
                  : mode == "parametric" ? HZNF_MODE_PARAMETRIC
                                         : HZNF_MODE_STATE;
    unsigned flags = 0;
    if (emit_transforms) flags |= HZNF_EMIT_TRANSFORMS;
    if (run_verify) flags |= HZNF_RUN_VERIFY;
    ResultGuard res;
    hznf_status st = hznf_normalize(f.f, m, max_grade, max_param_deg, flags, &res.r);
    if (st != HZNF_OK) return fail(st);
    StrGuard out;
    st = format == "json" ? hznf_result_json(res.r, &out.s)
                          : hznf_result_text(res.r, &out.s);
    if (st != HZNF_OK) return fail(st);
    std::printf("%s\n", out.s);
    return kExitOk;
  }

  if (bracket->parsed()) {
    FieldGuard a, b, out;
    int rc = load_field(input, &a.f);
    if (rc != kExitOk) return rc;
    rc = load_field(input2, &b.f);
    if (rc != kExitOk) return rc;
    hznf_status st = hznf_bracket(a.f, b.f, &out.f);
    if (st != HZNF_OK) return fail(st);
    StrGuard text;
    st = hznf_serialize(out.f, &text.s);
    if (st != HZNF_OK) return fail(st);
    std::printf("%s", text.s);
    return kExitOk;
  }

  if (integral->parsed()) {
    FieldGuard f;
    int rc = load_field(input, &f.f);
    if (rc != kExitOk) return rc;
    int dim = -1;
    hznf_status st = hznf_check_integral(f.f, max_deg, &dim);
    if (st != HZNF_OK) return fail(st);
    std::printf("dimension: %d\n", dim);
    return kExitOk;
  }

  if (example->parsed()) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 9);
    auto rand_rat = [&] {
      return std::to_string(num(rng)) + "/" + std::to_string(den(rng));
    };
    int passed = 0;
    for (int t = 0; t < trials; ++t) {
      StrGuard rep;
      int pass = 0;
      hznf_status st = HZNF_OK;
      for (int attempt = 0; attempt < 1000; ++attempt) {
        std::string a = rand_rat(), b = rand_rat(), c = rand_rat(),
                    d = rand_rat(), e = rand_rat();
        st = hznf_example_trial(a.c_str(), b.c_str(), c.c_str(), d.c_str(),
                                e.c_str(), max_grade, max_param_deg, &rep.s,
                                &pass);
        if (st != HZNF_ERR_DEGENERATE) break;  // admissible tuple found
      }
      if (st != HZNF_OK) return fail(st);
      std::printf("trial %d: %s\n%s\n", t + 1, pass ? "pass" : "FAIL", rep.s);
      if (pass) ++passed;
    }
    std::printf("passed %d/%d\n", passed, trials);
    return passed == trials ? kExitOk : kExitMath;
  }

  if (symmetry->parsed()) {
    FieldGuard u;
    int rc = load_field(input, &u.f);
    if (rc != kExitOk) return rc;
    StrGuard js;
    int found = 0;
    hznf_status st = hznf_solve_symmetry(u.f, sym_l, sym_k, max_grade, &js.s, &found);
    if (st != HZNF_OK) return fail(st);
    std::printf("%s\n", js.s);
    return kExitOk;
  }

  return kExitUsage;
}
