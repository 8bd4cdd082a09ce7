#include "doctest.h"
#include "oracles.hpp"

#include <cstdlib>

#include "gammalg/commands.hpp"
#include "gammalg/error.hpp"

using namespace gammalg;
using oracle::corpus;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

Word w01(const std::string& s) {
  Word w;
  for (char c : s) w.push_back(static_cast<Letter>(c - '0'));
  return w;
}

}  // namespace

TEST_CASE("spec parsing") {
  const auto spec = parse_spec(Json::parse(R"J({"alphabet":["b","a"],"type":"sft_matrix","matrix":[[1,1],[1,0]]})J"));
  // Rows follow the JSON order: b→b, b→a allowed, a→b allowed, a→a forbidden.
  const auto aut = compile(spec);
  const Alphabet& ab = spec.alphabet;
  CHECK_FALSE(word_in_language(aut, ab.parse_word("aa")));
  CHECK(word_in_language(aut, ab.parse_word("bb")));
  CHECK(parse_spec(spec_to_json(spec)).alphabet == spec.alphabet);
  CHECK(compile(parse_spec(spec_to_json(spec))).dfa() == aut.dfa());

  const auto multi = parse_spec(Json::parse(R"J({"alphabet":["ab","c"],"type":"sft_forbidden","forbidden":["ab ab"]})J"));
  CHECK_FALSE(multi.alphabet.single_char());
  CHECK_FALSE(word_in_language(compile(multi), multi.alphabet.parse_word("c ab ab")));

  for (const char* bad : {R"J({"alphabet":["0"],"type":"full","forbidden":["0"]})J",
                          R"J({"alphabet":["0","1"],"type":"sft_forbidden","forbidden":["2"]})J",
                          R"J({"alphabet":["0","1"],"type":"sft_forbidden","forbidden":["11"],"matrix":[[1]]})J",
                          R"J({"alphabet":["0","1"],"type":"sft_matrix","matrix":[[1,1]]})J",
                          R"J({"alphabet":["0","1"],"type":"sft_matrix","matrix":[[1,2],[1,1]]})J",
                          R"J({"alphabet":["0","0"],"type":"full"})J",
                          R"J({"alphabet":[],"type":"full"})J",
                          R"J({"alphabet":["0"],"type":"cellular"})J",
                          R"J({"alphabet":["0"],"type":"sofic","graph":{"vertices":["a"],"edges":[{"from":"a","to":"b","label":"0"}]}})J",
                          R"J([1,2])J"})
    CHECK_MESSAGE(kind_of([&] { parse_spec(Json::parse(bad)); }) == ErrorKind::InvalidSpec, bad);
}

TEST_CASE("element JSON round trip") {
  for (const auto& name : oracle::kCorpus) {
    const Algebra alg(corpus(name));
    oracle::Gen gen(alg, 53);
    for (int i = 0; i < 25; ++i) {
      const Element e = gen.element();
      const Json j = element_to_json(alg, e);
      const Element back = parse_element(alg, Json::parse(j.dump()));
      CHECK(approx_equal(back, e, 1e-12));
      CHECK(element_to_json(alg, back) == j);
    }
  }
  const Algebra gm(corpus("golden_mean"));
  const Element e = parse_element(gm, Json::parse(R"J({"sum":[
      {"coef":[2,0],"term":{"u":"0","v":"","tail":"F(1)"}},
      {"coef":1.5,"point":{"transient":"","period":"01","k":2}},
      {"gen":"t_u","u":"01"},
      {"coef":[0,1],"named":"p_2"}]})J"));
  CHECK(approx_equal(e, 2.0 * gm.term(w01("0"), Word{}, gm.lattice().follower(w01("1"))) +
                            gm.point(Arrow{UPPoint({}, w01("01")), 2, UPPoint({}, w01("01"))}, 1.5) + gm.t(w01("01")) +
                            Scalar(0.0, 1.0) * gm.p(2),
                     0.0));
  CHECK(kind_of([&] { parse_element(gm, Json::parse(R"J({"sum":[{"coef":1,"point":{"period":"1","k":1}}]})J")); }) == ErrorKind::NotAnArrow);
  CHECK(kind_of([&] { parse_element(gm, Json::parse(R"J({"sum":[{"coef":1}]})J")); }) == ErrorKind::ParseError);
  CHECK(kind_of([&] { parse_element(gm, Json::parse(R"J({"terms":[]})J")); }) == ErrorKind::ParseError);
}

TEST_CASE("expression grammar") {
  const Algebra full(corpus("full2"));
  auto ex = [&](const char* s) { return parse_expression(full, s); };
  CHECK(approx_equal(ex("t_0 * adjoint(t_0)"), full.a_uv(w01("0"), w01("0")), 0.0));
  CHECK(approx_equal(ex("t_0 * t_0^*"), full.a_uv(w01("0"), w01("0")), 0.0));
  CHECK(approx_equal(ex("adj(v) * v - one"), full.zero(), 1e-12));
  CHECK(approx_equal(ex("2*t_{01} - i*t_1 + 0.5"), 2.0 * full.t(w01("01")) - Scalar(0.0, 1.0) * full.t(w01("1")) + 0.5 * full.one(), 0.0));
  CHECK(approx_equal(ex("-(t_0 + t_1)^*"), -1.0 * adjoint(full.t(w01("0")) + full.t(w01("1"))), 0.0));
  CHECK_THROWS(ex("P(t_0 t_0^*)"));
  CHECK(approx_equal(ex("P(t_0 * t_0^*) + Q(t_1)"), full.a_uv(w01("0"), w01("0")) + isotropy_expectation(full.t(w01("1"))), 0.0));
  CHECK(approx_equal(ex("phi_hat(one)"), full.phi_hat(full.one()), 0.0));
  CHECK(approx_equal(ex("m - 2*p_2"), full.zero(), 0.0));
  CHECK(approx_equal(ex("3"), 3.0 * full.one(), 0.0));
  for (const char* bad : {"t_0 *", "t_2", "foo", "(t_0", "t_0 ^ 2", "P t_0", "1e", "p_x", ""})
    CHECK_MESSAGE(kind_of([&] { parse_expression(full, bad); }) == ErrorKind::ParseError, bad);
  CHECK(approx_equal(parse_element_source(full, R"J({"sum":[{"gen":"one"}]})J"), full.one(), 0.0));
}

TEST_CASE("points") {
  const Alphabet ab({"0", "1"});
  CHECK(parse_point(ab, ",01") == UPPoint({}, w01("01")));
  CHECK(parse_point(ab, "1,0") == UPPoint(w01("1"), w01("0")));
  CHECK(kind_of([&] { parse_point(ab, "01"); }) == ErrorKind::ParseError);
  CHECK(kind_of([&] { parse_point(ab, "0,"); }) == ErrorKind::ParseError);
  CHECK(kind_of([&] { parse_point(ab, "2,0"); }) == ErrorKind::ParseError);
}

TEST_CASE("config and reports") {
  RunConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.tolerance = 1e-13;
  CHECK_THROWS(cfg.validate());
  cfg = RunConfig{};
  setenv("GAMMALG_SEED", "42", 1);
  cfg.apply_environment();
  CHECK(cfg.seed == 42);
  unsetenv("GAMMALG_SEED");
  const Json spec = spec_to_json(oracle::corpus_spec("golden_mean"));
  CHECK(spec_hash(spec).size() == 16);
  CHECK(spec_hash(spec) != spec_hash(spec_to_json(oracle::corpus_spec("golden_mean_matrix"))));
  const auto r1 = run_info(oracle::shift_path("golden_mean").string(), RunConfig{});
  const auto r2 = run_info(oracle::shift_path("golden_mean").string(), RunConfig{});
  CHECK(r1.report.dump() == r2.report.dump());
  const Json& body = r1.report["result"];
  CHECK(body["states"] == 2);
  CHECK(body["word_counts"][5] == 13);
  CHECK(body["periodic_point_counts"]["2"] == 3);
  CHECK(body["aperiodic"] == true);
  CHECK(r1.report["version"] == kVersion);
}

TEST_CASE("exit codes") {
  CHECK(exit_code_for(ErrorKind::InvalidSpec) == 2);
  CHECK(exit_code_for(ErrorKind::EmptyShift) == 3);
  CHECK(exit_code_for(ErrorKind::ParseError) == 4);
  CHECK(exit_code_for(ErrorKind::NotApplicable) == 12);
  CHECK(exit_code_for(ErrorKind::NotAnArrow) == 5);
  const std::string f10 = oracle::shift_path("forbidden10").string();
  CHECK(run_check_simple(f10, AlgebraKind::OS, RunConfig{}).exit_code == 10);
  CHECK(run_check_simple(oracle::shift_path("full2").string(), AlgebraKind::OS, RunConfig{}).exit_code == 0);
  RunConfig tight;
  tight.class_cap = 2;
  CHECK(run_check_simple(oracle::shift_path("golden_mean").string(), AlgebraKind::AF, tight).exit_code == 11);
}
