// C boundary: status codes, error messages, JSON output, handle lifecycle.
#include "doctest.h"

#include "hznf.h"

#include "json.hpp"

#include <string>

namespace {

struct FieldHandle {
  hznf_field* f = nullptr;
  ~FieldHandle() { hznf_field_free(f); }
};

struct ResultHandle {
  hznf_result* r = nullptr;
  ~ResultHandle() { hznf_result_free(r); }
};

struct CStr {
  char* s = nullptr;
  ~CStr() { hznf_string_free(s); }
  std::string str() const { return s ? s : ""; }
};

constexpr const char* kOrbitalInput =
    "hznf 1\n"
    "rotation 1\n"
    "E 1 1 [] 2\n"
    "E 0 1 [] 1\n"
    "E 0 3 [] 1\n";

}  // namespace

TEST_CASE("version and error strings are always available") {
  CHECK(std::string(hznf_version()).size() > 0);
  CHECK(hznf_last_error() != nullptr);
}

TEST_CASE("parse, normalize, and serialize round trip through the C API") {
  FieldHandle in;
  REQUIRE(hznf_parse(kOrbitalInput, &in.f) == HZNF_OK);

  ResultHandle res;
  REQUIRE(hznf_normalize(in.f, HZNF_MODE_ORBITAL, 12, 4,
                         HZNF_EMIT_TRANSFORMS | HZNF_RUN_VERIFY,
                         &res.r) == HZNF_OK);

  FieldHandle out;
  REQUIRE(hznf_result_field(res.r, &out.f) == HZNF_OK);
  CStr text;
  REQUIRE(hznf_serialize(out.f, &text.s) == HZNF_OK);
  CHECK(text.str().find("E 1 1 [] 1") != std::string::npos);
  CHECK(text.str().find("E 0 1 [] 1/2") != std::string::npos);

  // the serialized output parses back to the same field
  FieldHandle again;
  REQUIRE(hznf_parse(text.str().c_str(), &again.f) == HZNF_OK);
  CStr text2;
  REQUIRE(hznf_serialize(again.f, &text2.s) == HZNF_OK);
  CHECK(text.str() == text2.str());
}

TEST_CASE("result JSON carries the documented keys") {
  FieldHandle in;
  REQUIRE(hznf_parse(kOrbitalInput, &in.f) == HZNF_OK);
  ResultHandle res;
  REQUIRE(hznf_normalize(in.f, HZNF_MODE_ORBITAL, 12, 4,
                         HZNF_EMIT_TRANSFORMS | HZNF_RUN_VERIFY,
                         &res.r) == HZNF_OK);
  CStr js;
  REQUIRE(hznf_result_json(res.r, &js.s) == HZNF_OK);
  auto j = nlohmann::json::parse(js.str());
  CHECK(j["mode"] == "orbital");
  CHECK(j["caseTag"] == "orbital");
  CHECK(j["r"] == 3);
  CHECK(j["field"]["rotation"] == "1");
  CHECK(j["field"]["terms"].is_array());
  CHECK(j["transforms"].is_array());
  CHECK(j["transforms"].size() > 0);
  CHECK(j["verify"]["coneInput"] == true);
  CHECK(j["verify"]["coneOutput"] == true);

  CStr txt;
  REQUIRE(hznf_result_text(res.r, &txt.s) == HZNF_OK);
  CHECK(txt.str().find("mode: orbital") != std::string::npos);
  CHECK(txt.str().find("cone identity (output): ok") != std::string::npos);
}

TEST_CASE("status codes distinguish parse, contract, and degenerate failures") {
  FieldHandle bad;
  CHECK(hznf_parse("hznf 1\nE 2 1 [] 1\n", &bad.f) == HZNF_ERR_PARSE);
  CHECK(std::string(hznf_last_error()).size() > 0);

  FieldHandle param;
  REQUIRE(hznf_parse("hznf 1\nparams 2\nE 1 1 [0,0] 1\n", &param.f) == HZNF_OK);
  ResultHandle r1;
  CHECK(hznf_normalize(param.f, HZNF_MODE_STATE, 8, 4, 0, &r1.r) ==
        HZNF_ERR_CONTRACT);
  CHECK(std::string(hznf_last_error()).find("parameter-free") !=
        std::string::npos);

  FieldHandle flat;
  REQUIRE(hznf_parse("hznf 1\nE 0 1 [] 1\n", &flat.f) == HZNF_OK);
  ResultHandle r2;
  CHECK(hznf_normalize(flat.f, HZNF_MODE_STATE, 8, 4, 0, &r2.r) ==
        HZNF_ERR_DEGENERATE);
  CHECK(std::string(hznf_last_error()) == "degenerate: zero quadratic part");

  ResultHandle r3;
  CHECK(hznf_normalize(param.f, HZNF_MODE_STATE, 1, 4, 0, &r3.r) ==
        HZNF_ERR_CONTRACT);
  CHECK(hznf_normalize(nullptr, HZNF_MODE_STATE, 8, 4, 0, &r3.r) ==
        HZNF_ERR_CONTRACT);
}

TEST_CASE("bracket through the C API matches the serialized expectation") {
  FieldHandle a, b, out;
  REQUIRE(hznf_parse("hznf 1\nE 1 1 [] 1\n", &a.f) == HZNF_OK);
  REQUIRE(hznf_parse("hznf 1\nE 0 2 [] 1\n", &b.f) == HZNF_OK);
  REQUIRE(hznf_bracket(a.f, b.f, &out.f) == HZNF_OK);
  CStr s;
  REQUIRE(hznf_serialize(out.f, &s.s) == HZNF_OK);
  CHECK(s.str().find("E 1 3 [] 1") != std::string::npos);
}

TEST_CASE("integral and cone checks cross the boundary") {
  FieldHandle f;
  REQUIRE(hznf_parse("hznf 1\nE 1 1 [] 1\n", &f.f) == HZNF_OK);
  int dim = -1;
  REQUIRE(hznf_check_integral(f.f, 6, &dim) == HZNF_OK);
  CHECK(dim == 0);

  int holds = 0;
  REQUIRE(hznf_cone_check(f.f, &holds) == HZNF_OK);
  CHECK(holds == 1);

  FieldHandle rot;
  REQUIRE(hznf_parse("hznf 1\nrotation 1\nE 1 1 [] 1\n", &rot.f) == HZNF_OK);
  CHECK(hznf_check_integral(rot.f, 6, &dim) == HZNF_ERR_CONTRACT);
}

TEST_CASE("example helpers work through the C API") {
  FieldHandle fam;
  REQUIRE(hznf_field_from_example("2", "3", "1", "1", "5", &fam.f) == HZNF_OK);
  CStr s;
  REQUIRE(hznf_serialize(fam.f, &s.s) == HZNF_OK);
  CHECK(s.str().find("params 3") != std::string::npos);

  CStr rep;
  int pass = -1;
  REQUIRE(hznf_example_trial("2", "3", "1", "1", "5", 12, 3, &rep.s, &pass) ==
          HZNF_OK);
  auto j = nlohmann::json::parse(rep.str());
  CHECK(j["computed"]["beta1"] == "3/2");
  CHECK(j["expected"]["beta2"] == "-3/8");
  CHECK(j["computed"]["beta2"] == "3/8");
  CHECK(pass == 0);

  CStr rep2;
  CHECK(hznf_example_trial("1", "1", "1", "1", "0", 12, 3, &rep2.s, &pass) ==
        HZNF_ERR_DEGENERATE);
  CHECK(hznf_example_trial("x", "1", "1", "1", "1", 12, 3, &rep2.s, &pass) ==
        HZNF_ERR_PARSE);
}

TEST_CASE("symmetry solver crosses the boundary") {
  FieldHandle u;
  REQUIRE(hznf_parse("hznf 1\nE 1 1 [] 1\n", &u.f) == HZNF_OK);
  CStr js;
  int found = 0;
  REQUIRE(hznf_solve_symmetry(u.f, 1, 2, 12, &js.s, &found) == HZNF_OK);
  CHECK(found == 1);
  auto j = nlohmann::json::parse(js.str());
  CHECK(j["found"] == true);
  CHECK(j["stateGenerator"].is_object());

  CHECK(hznf_solve_symmetry(u.f, 0, 2, 12, &js.s, &found) == HZNF_ERR_CONTRACT);
}
