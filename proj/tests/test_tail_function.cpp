#include "doctest.h"
#include "oracles.hpp"

using namespace gammalg;
using oracle::corpus;

TEST_CASE("tail functions agree with their defining combinations") {
  for (const auto& name : oracle::kCorpus) {
    const Algebra alg(corpus(name));
    oracle::Gen gen(alg, 23);
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<std::pair<Scalar, TailSet>> parts;
      TailFunction f = TailFunction::zero(alg.letters());
      const int n = gen.uniform(1, 4);
      for (int i = 0; i < n; ++i) {
        parts.emplace_back(gen.coef(), gen.tail());
        f = f + TailFunction::indicator(parts.back().second, parts.back().first);
      }
      const TailFunction g = TailFunction::indicator(gen.tail(), gen.coef());
      const auto pieces = f.decompose();
      for (int s = 0; s < 25; ++s) {
        const UPPoint y = gen.point();
        Scalar want = 0.0;
        for (const auto& [c, e] : parts)
          if (e.contains(y)) want += c;
        CHECK(std::abs(f(y) - want) < 1e-12);
        Scalar back = 0.0;
        for (const auto& [c, e] : pieces)
          if (e.contains(y)) back += c;
        CHECK(std::abs(back - want) < 1e-12);
        CHECK(std::abs((f * g)(y) - f(y) * g(y)) < 1e-12);
        CHECK(std::abs((f - g)(y) - (f(y) - g(y))) < 1e-12);
        CHECK(std::abs(conj(f)(y) - std::conj(f(y))) < 1e-12);
        const Word w = gen.word(2);
        if (alg.lattice().follower(w).contains(y)) CHECK(std::abs(f.derivative(w)(y) - f(y.prepend(w))) < 1e-12);
      }
      CHECK((f - f).is_zero());
      CHECK(approx_equal(f + g, g + f, 1e-12));
    }
  }
}

TEST_CASE("minimal form is canonical") {
  const Algebra alg(corpus("golden_mean"));
  const TailSet s = alg.lattice().full();
  const TailSet f1 = alg.lattice().follower(Word{1});
  const TailFunction a = TailFunction::indicator(s, 2.0) - TailFunction::indicator(f1, 1.0);
  const TailFunction b = TailFunction::indicator(f1, 1.0) + TailFunction::indicator(relative_complement(s, f1), 2.0) -
                         TailFunction::indicator(intersect(f1, relative_complement(s, f1)), 2.0);
  CHECK(a.dfa() == b.dfa());
  CHECK(a.sup_abs() == doctest::Approx(2.0));
  CHECK(TailFunction::indicator(s, 3.0).support() == s);
  CHECK(TailFunction::indicator(f1).restrict_to(s).dfa() == TailFunction::indicator(f1).dfa());
}

TEST_CASE("regions") {
  const Algebra alg(corpus("forbidden10"));
  const TailFunction f = TailFunction::indicator(alg.lattice().follower(Word{1}), 5.0);
  const auto regions = f.regions();
  REQUIRE(regions.size() == 1);
  CHECK_FALSE(regions[0].infinite);
  CHECK(regions[0].points.size() == 1);
  const TailFunction g = TailFunction::indicator(alg.lattice().full(), 1.0);
  bool infinite = false;
  for (const auto& r : g.regions()) infinite = infinite || r.infinite;
  CHECK(infinite);
}
