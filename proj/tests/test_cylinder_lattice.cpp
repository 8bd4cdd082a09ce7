#include "doctest.h"
#include "oracles.hpp"

#include "gammalg/error.hpp"

using namespace gammalg;
using oracle::corpus;
using oracle::corpus_spec;
using oracle::prefixes;

namespace {

Word w01(const std::string& s) {
  Word w;
  for (char c : s) w.push_back(static_cast<Letter>(c - '0'));
  return w;
}

UPPoint pt(const std::string& t, const std::string& p) { return UPPoint(w01(t), w01(p)); }

bool no_dead_ends(const TailSet& e) {
  const Dfa& d = e.dfa();
  for (int s = 0; s < d.size(); ++s) {
    bool any = false;
    for (int a = 0; a < d.letters; ++a) any = any || d.step(s, static_cast<Letter>(a)) != kNoState;
    if (!any) return false;
  }
  return true;
}

// Tails (length n) of legal words of length n+extra after the first extra letters.
std::set<Word> brute_shift_prefixes(const SubshiftSpec& spec, const Word& start, std::size_t n, std::size_t drop) {
  std::set<Word> out;
  for (const auto& w : oracle::raw_cylinder_words(spec, start, {}, start.size() + n + 4))
    out.emplace(w.begin() + static_cast<std::ptrdiff_t>(drop), w.begin() + static_cast<std::ptrdiff_t>(drop + n));
  return out;
}

}  // namespace

TEST_CASE("set algebra examples") {
  const CylinderLattice gm(corpus("golden_mean"));
  const TailSet f0 = gm.follower(w01("0")), f1 = gm.follower(w01("1"));
  CHECK(f0 == gm.full());
  CHECK(intersect(f0, f1) == f1);
  for (std::size_t n = 0; n <= 6; ++n) {
    std::set<Word> brute;
    for (const auto& w : oracle::raw_words(corpus_spec("golden_mean"), n))
      if (oracle::raw_legal(corpus_spec("golden_mean"), concat(w01("1"), w))) brute.insert(w);
    CHECK(prefixes(intersect(f0, f1), n) == brute);
  }
  CHECK(unite(f1, TailSet::empty(2)) == f1);
  CHECK(unite(TailSet::empty(2), f1) == f1);
  CHECK(intersect(f1, TailSet::empty(2)).is_empty());
  CHECK(is_subset(f1, f0));
  CHECK_FALSE(is_subset(f0, f1));
}

TEST_CASE("shift images") {
  const auto even_spec = corpus_spec("even");
  const CylinderLattice even(compile(even_spec));
  CHECK(shift_image(even.full()) == even.full());
  const TailSet f1 = even.follower(w01("1"));
  CHECK(shift_image(f1) == even.full());
  CHECK(prefixes(shift_image(f1), 10) == brute_shift_prefixes(even_spec, w01("1"), 10, 2));
  const CylinderLattice f10(corpus("forbidden10"));
  const TailSet ones = f10.follower(w01("1"));
  CHECK(shift_image(ones) == ones);
  CHECK(ones.contains(pt("", "1")));
  CHECK(enumerate_if_finite(ones).value() == std::vector<UPPoint>{pt("", "1")});
  for (const auto& name : oracle::kCorpus) {
    const CylinderLattice lat(corpus(name));
    CHECK(shift_image(lat.full()) == lat.full());
  }
}

TEST_CASE("derivatives and membership") {
  const CylinderLattice gm(corpus("golden_mean"));
  CHECK(derivative(gm.full(), w01("0")) == gm.full());
  CHECK(derivative(gm.full(), w01("1")) == gm.follower(w01("1")));
  CHECK(derivative(gm.follower(w01("1")), Word{}) == gm.follower(w01("1")));
  CHECK(derivative(gm.full(), w01("11")).is_empty());
  CHECK(gm.full().contains(pt("", "01")));
  CHECK(gm.follower(w01("1")).contains(pt("", "0")));
  CHECK_FALSE(gm.follower(w01("1")).contains(pt("", "10")));
}

TEST_CASE("generalized cylinders") {
  const CylinderLattice full(corpus("full2"));
  const auto c = full.gen_cylinder(w01("0"), {w01("1")});
  CHECK(c.prefix == w01("0"));
  CHECK(c.tail == full.full());
  const CylinderLattice gm(corpus("golden_mean"));
  CHECK(gm.gen_cylinder(w01("0"), {w01("1")}).tail == gm.follower(w01("1")));
  const CylinderLattice f10(corpus("forbidden10"));
  const auto one = f10.gen_cylinder(w01("1"), {});
  CHECK(enumerate_if_finite(one.tail).value() == std::vector<UPPoint>{pt("", "1")});
  try {
    gm.gen_cylinder(w01("0"), {w01("01")});
    FAIL("expected BadLength");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BadLength);
  }
  CHECK(gm.gen_cylinder_unrestricted(w01("0"), {w01("01")}).tail == gm.follower(w01("01")));
  const CylinderLattice even(corpus("even"));
  const auto iso = even.gen_cylinder(w01("01"), {w01("10")});
  CHECK(enumerate_if_finite(iso.tail).value() == std::vector<UPPoint>{pt("", "0")});
}

TEST_CASE("preimage-count partition") {
  const CylinderLattice full(corpus("full2"));
  const auto p = full.skl_tail_partition(1);
  REQUIRE(p.size() == 1);
  CHECK(p.begin()->first == 2);
  CHECK(approx_equal(p.begin()->second, TailFunction::indicator(full.full()), 0.0));

  const CylinderLattice gm(corpus("golden_mean"));
  const auto q = gm.skl_tail_partition(1);
  REQUIRE(q.size() == 2);
  CHECK(q.at(2)(pt("", "01")) == Scalar(1.0));
  CHECK(q.at(1)(pt("", "10")) == Scalar(1.0));
  CHECK(q.at(2)(pt("", "10")) == Scalar(0.0));

  for (const auto& name : oracle::kCorpus) {
    const auto spec = corpus_spec(name);
    const CylinderLattice lat(compile(spec));
    for (std::size_t k = 1; k <= 4; ++k) {
      const auto part = lat.skl_tail_partition(k);
      TailFunction sum = TailFunction::zero(lat.automaton().letters());
      for (const auto& [l, f] : part) {
        sum = sum + f;
        for (const auto& [l2, g] : part)
          if (l != l2) CHECK((f * g).is_zero());
      }
      CHECK(approx_equal(sum, TailFunction::indicator(lat.full()), 1e-12));
      const TailFunction count = lat.preimage_count_function(k);
      for (const auto& y : default_samples(lat.automaton(), 99, 12)) {
        // Brute count: words w of length k with w·y legal on a long prefix.
        std::size_t brute = 0;
        for (const auto& w : oracle::raw_words(spec, k))
          if (oracle::raw_legal(spec, concat(w, y.prefix(40)))) ++brute;
        CHECK_MESSAGE(count(y) == Scalar(static_cast<double>(brute)), name << " k=" << k);
        CHECK(part.at(BigInt(brute))(y) == Scalar(1.0));
      }
    }
  }
}

TEST_CASE("lattice laws on generated families") {
  for (const auto& name : oracle::kCorpus) {
    const Algebra alg(corpus(name));
    oracle::Gen gen(alg, 17);
    for (int i = 0; i < 40; ++i) {
      const TailSet e = gen.tail(), g = gen.tail();
      CHECK(intersect(e, g) == intersect(g, e));
      CHECK(unite(e, g) == unite(g, e));
      CHECK(is_subset(intersect(e, g), e));
      CHECK(unite(e, intersect(e, g)) == e);
      CHECK(intersect(e, unite(e, g)) == e);
      CHECK(no_dead_ends(e));
      CHECK(no_dead_ends(shift_image(e)));
      CHECK(no_dead_ends(relative_complement(e, g)));
      CHECK(is_subset(relative_complement(e, g), e));
      for (int a = 0; a < alg.letters(); ++a) {
        const Word w{static_cast<Letter>(a)};
        const TailSet d = derivative(e, w);
        if (d.is_empty()) continue;
        CHECK(is_subset(prepend(w, d), e));
        for (const auto& x : prefixes(d, 7)) CHECK(e.contains_prefix(concat(w, x)));
      }
    }
  }
}

TEST_CASE("relative complement is the closure of the difference") {
  const CylinderLattice gm(corpus("golden_mean"));
  const TailSet rest = relative_complement(gm.full(), gm.follower(w01("1")));
  CHECK(rest == prepend(w01("1"), gm.follower(w01("1"))));
  const CylinderLattice even(corpus("even"));
  const TailSet diff = relative_complement(even.follower(w01("1")), even.follower(w01("10")));
  CHECK(diff.contains(pt("", "0")));  // limit of 0^{2n}1... not in the difference itself
  CHECK(diff.contains(pt("00", "1")));
  CHECK_FALSE(diff.contains(pt("0", "1")));
}

TEST_CASE("membership agrees with long prefixes") {
  for (const auto& name : oracle::kCorpus) {
    const Algebra alg(corpus(name));
    oracle::Gen gen(alg, 5);
    for (int i = 0; i < 100; ++i) {
      const TailSet e = gen.tail();
      const UPPoint p = gen.point();
      const std::size_t n = 2 * (p.transient().size() + p.period().size() * static_cast<std::size_t>(std::max(1, e.num_states())));
      CHECK(e.contains(p) == e.contains_prefix(p.prefix(n)));
    }
  }
}
