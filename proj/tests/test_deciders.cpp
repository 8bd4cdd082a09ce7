#include "doctest.h"
#include "oracles.hpp"

#include "gammalg/error.hpp"

using namespace gammalg;
using oracle::corpus;
using oracle::corpus_spec;

namespace {

Word w01(const std::string& s) {
  Word w;
  for (char c : s) w.push_back(static_cast<Letter>(c - '0'));
  return w;
}

UPPoint pt(const std::string& t, const std::string& p) { return UPPoint(w01(t), w01(p)); }

std::set<TailSet> tails(const ClassFamily& fam) {
  std::set<TailSet> out;
  for (const auto& c : fam.classes) out.insert(c.tail);
  return out;
}

const std::vector<std::string> kDecided{"full2", "full3", "golden_mean", "even", "forbidden10", "two_full"};

}  // namespace

TEST_CASE("realized classes") {
  const auto full = realized_classes(corpus("full2"));
  REQUIRE(full.classes.size() == 1);
  CHECK(full.classes[0].u == w01("0"));
  CHECK(full.classes[0].F.empty());
  const CylinderLattice fl(corpus("full2"));
  CHECK(full.classes[0].tail == fl.full());

  const CylinderLattice gm(corpus("golden_mean"));
  CHECK(tails(realized_classes(gm.automaton())) == std::set<TailSet>{gm.full(), gm.follower(w01("1"))});

  const CylinderLattice f10(corpus("forbidden10"));
  bool found = false;
  for (const auto& c : realized_classes(f10.automaton()).classes)
    if (c.tail == f10.follower(w01("1"))) {
      found = true;
      CHECK(c.u == w01("1"));
    }
  CHECK(found);

  for (const auto& name : kDecided) {
    const auto aut = corpus(name);
    const CylinderLattice lat(aut);
    for (const auto& c : realized_classes(aut).classes) {
      CHECK(c.u.size() == c.length);
      for (const auto& v : c.F) CHECK(v.size() == c.length);
      CHECK(lat.gen_cylinder(c.u, c.F).tail == c.tail);
    }
  }
}

TEST_CASE("covering index") {
  const CylinderLattice even(corpus("even"));
  CHECK(covering_index(even, even.full()) == std::optional<std::size_t>(0));
  CHECK(covering_index(even, even.follower(w01("1"))) == std::optional<std::size_t>(1));
  CHECK(onto_index(even, even.follower(w01("1"))) == std::optional<std::size_t>(1));
  const CylinderLattice f10(corpus("forbidden10"));
  CHECK_FALSE(covering_index(f10, f10.follower(w01("1"))).has_value());
  CHECK_FALSE(onto_index(f10, f10.follower(w01("1"))).has_value());
}

TEST_CASE("verdicts") {
  const Verdict full = decide_gamma_simple(corpus("full2"));
  CHECK(full.status == Status::Simple);
  REQUIRE(full.classes.size() == 1);
  CHECK(full.classes[0].m == std::optional<std::size_t>(0));
  CHECK(decide_af_simple(corpus("full2")).status == Status::Simple);
  CHECK(decide_gamma_simple(corpus("full3")).status == Status::Simple);
  CHECK(decide_gamma_simple(corpus("golden_mean")).status == Status::Simple);
  CHECK(decide_af_simple(corpus("golden_mean")).status == Status::Simple);

  const Verdict f10 = decide_gamma_simple(corpus("forbidden10"));
  CHECK(f10.status == Status::NotSimple);
  REQUIRE(f10.witness.has_value());
  CHECK(f10.witness->u == w01("1"));
  CHECK(verify_witness(corpus("forbidden10"), *f10.witness, AlgebraKind::OS));
  const Verdict f10af = decide_af_simple(corpus("forbidden10"));
  CHECK(f10af.status == Status::NotSimple);
  CHECK(verify_witness(corpus("forbidden10"), *f10af.witness, AlgebraKind::AF));

  const Verdict two = decide_gamma_simple(corpus("two_full"));
  CHECK(two.status == Status::NotSimple);
  CHECK(verify_witness(corpus("two_full"), *two.witness, AlgebraKind::OS));

  // C(01;{10}) = {010^∞} has a finite orbit in the even shift.
  for (const Verdict& v : {decide_gamma_simple(corpus("even")), decide_af_simple(corpus("even"))}) {
    CHECK(v.status == Status::NotSimple);
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->u == w01("01"));
    CHECK(v.witness->F == std::vector<Word>{w01("10")});
    CHECK(enumerate_if_finite(v.witness->tail).value() == std::vector<UPPoint>{pt("", "0")});
    CHECK(verify_witness(corpus("even"), *v.witness, v.algebra));
  }

  Witness bad = *f10.witness;
  bad.u = w01("0");
  CHECK_FALSE(verify_witness(corpus("forbidden10"), bad, AlgebraKind::OS));
}

TEST_CASE("not applicable") {
  const Alphabet ab({"0", "1"});
  const auto finite = compile(SubshiftSpec{ab, SftForbidden{{w01("01"), w01("10")}}});
  for (int which = 0; which < 2; ++which) {
    try {
      if (which == 0)
        decide_gamma_simple(finite);
      else
        decide_af_simple(finite);
      FAIL("expected NotApplicable");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotApplicable);
    }
  }
}

TEST_CASE("class cap degrades to sampled mode") {
  try {
    realized_classes(corpus("even"), 2);
    FAIL("expected ClassExplosion");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ClassExplosion);
  }
  DeciderConfig cfg;
  cfg.class_cap = 2;
  const Verdict gm = decide_gamma_simple(corpus("golden_mean"), cfg);
  CHECK(gm.sampled);
  CHECK(gm.status == Status::Unknown);
  CHECK(decide_af_simple(corpus("golden_mean"), cfg).status == Status::Unknown);
  CHECK(decide_gamma_simple(corpus("even"), cfg).status == Status::NotSimple);
}

TEST_CASE("verdicts agree with brute-force covering at length 10") {
  const std::size_t L = 10;
  for (const auto& name : kDecided) {
    const auto spec = corpus_spec(name);
    const auto aut = compile(spec);
    const auto words = oracle::raw_words(spec, L);
    const std::set<Word> all(words.begin(), words.end());
    for (const Verdict& v : {decide_gamma_simple(aut), decide_af_simple(aut)}) {
      for (const auto& c : v.classes) {
        if (!c.m) continue;
        // The index is counted on the tail, i.e. after the |u| prefix letters.
        const std::size_t m = c.cls.u.size() + *c.m;
        const auto cyl = oracle::raw_cylinder_words(spec, c.cls.u, c.cls.F, L + m + 2);
        if (v.algebra == AlgebraKind::OS) {
          CHECK_MESSAGE(oracle::windows(cyl, L, m) == all, name);
        } else {
          std::set<Word> at;
          for (const auto& w : cyl) at.emplace(w.begin() + static_cast<std::ptrdiff_t>(m), w.begin() + static_cast<std::ptrdiff_t>(m + L));
          CHECK_MESSAGE(at == all, name);
        }
      }
      if (v.status == Status::NotSimple) {
        const std::size_t J = 4;
        const auto cyl = oracle::raw_cylinder_words(spec, v.witness->u, v.witness->F, L + J + 2);
        CHECK_MESSAGE(oracle::windows(cyl, L, J) != all, name);
        if (v.algebra == AlgebraKind::AF)
          for (std::size_t j = 0; j <= J; ++j) {
            std::set<Word> at;
            for (const auto& w : cyl) at.emplace(w.begin() + static_cast<std::ptrdiff_t>(j), w.begin() + static_cast<std::ptrdiff_t>(j + L));
            CHECK(at != all);
          }
      }
    }
  }
}

TEST_CASE("shifted tail unions agree with brute force at length 8") {
  for (const std::string name : {"full2", "golden_mean", "even", "forbidden10", "two_full"}) {
    const auto spec = corpus_spec(name);
    const auto aut = compile(spec);
    for (const auto& c : realized_classes(aut).classes) {
      TailSet acc = TailSet::empty(aut.letters()), cur = c.tail;
      std::vector<Word> tails_brute;
      for (const auto& w : oracle::raw_cylinder_words(spec, c.u, c.F, c.u.size() + 8 + 3 + 4))
        tails_brute.emplace_back(w.begin() + static_cast<std::ptrdiff_t>(c.u.size()), w.end());
      for (std::size_t j = 0; j <= 3; ++j) {
        acc = unite(acc, cur);
        cur = shift_image(cur);
        CHECK_MESSAGE(oracle::prefixes(acc, 8) == oracle::windows(tails_brute, 8, j), name << " j=" << j);
      }
    }
  }
}

TEST_CASE("AF simple implies O_S not NotSimple; verdicts deterministic") {
  for (const auto& name : kDecided) {
    const auto aut = corpus(name);
    const Verdict af = decide_af_simple(aut);
    const Verdict os = decide_gamma_simple(aut);
    if (af.status == Status::Simple) CHECK(os.status != Status::NotSimple);
    CHECK(verdict_to_json(aut.alphabet(), os) == verdict_to_json(aut.alphabet(), decide_gamma_simple(aut)));
  }
}
