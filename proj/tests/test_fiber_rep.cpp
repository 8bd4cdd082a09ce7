#include "doctest.h"
#include "oracles.hpp"

#include <Eigen/Eigenvalues>

#include "gammalg/error.hpp"

using namespace gammalg;
using oracle::corpus;

namespace {

Word w01(const std::string& s) {
  Word w;
  for (char c : s) w.push_back(static_cast<Letter>(c - '0'));
  return w;
}

UPPoint pt(const std::string& t, const std::string& p) { return UPPoint(w01(t), w01(p)); }

double max_abs(const Eigen::MatrixXcd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("fiber enumeration") {
  const auto full = corpus("full2");
  const Fiber f = fiber(full, pt("", "0"), 2);
  CHECK(f.size() == 4);
  CHECK(f.points[0] == pt("", "0"));
  CHECK(f.points[3] == pt("11", "0"));
  CHECK(fiber(corpus("golden_mean"), pt("", "0"), 2).size() == 3);
  const Fiber g = fiber(corpus("forbidden10"), pt("", "1"), 1);
  CHECK(g.points == std::vector<UPPoint>{pt("0", "1"), pt("", "1")});
  for (const std::string name : {"full2", "full3"}) {
    const auto aut = corpus(name);
    const std::size_t n = static_cast<std::size_t>(aut.letters());
    for (std::size_t k = 1; k <= 3; ++k)
      for (const auto& a : default_samples(aut, 1, 4)) {
        std::size_t want = 1;
        for (std::size_t i = 0; i < k; ++i) want *= n;
        CHECK(fiber(aut, a, k).size() == want);
      }
  }
  try {
    fiber(corpus("golden_mean"), pt("", "1"), 1);
    FAIL("expected InvalidPoint");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidPoint);
  }
  // Fiber size is the preimage count of the base point.
  for (const auto& name : oracle::kCorpus) {
    const auto aut = corpus(name);
    const CylinderLattice lat(aut);
    for (std::size_t k = 1; k <= 3; ++k) {
      const TailFunction c = lat.preimage_count_function(k);
      for (const auto& a : default_samples(aut, 2, 6)) CHECK(Scalar(static_cast<double>(fiber(aut, a, k).size())) == c(a));
    }
  }
}

TEST_CASE("represent examples") {
  const Algebra full(corpus("full2"));
  const Fiber f = fiber(full.automaton(), pt("", "0"), 1);
  CHECK(represent(f, full.one()).entries.isApprox(Eigen::MatrixXcd::Identity(2, 2)));
  const auto vv = represent(f, full.v() * adjoint(full.v())).entries;
  CHECK(max_abs(vv - Eigen::MatrixXcd::Constant(2, 2, 0.5)) < 1e-15);
  CHECK(represent(f, full.p(2)).entries.isApprox(Eigen::MatrixXcd::Identity(2, 2)));
  try {
    represent(f, full.t(w01("0")));
    FAIL("expected NotCoreElement");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotCoreElement);
  }
  try {
    represent(f, full.a_uv(w01("01"), w01("10")));
    FAIL("expected LevelTooLow");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::LevelTooLow);
  }
}

TEST_CASE("represent is a *-homomorphism") {
  for (const auto& name : oracle::kCorpus) {
    const Algebra alg(corpus(name));
    oracle::Gen gen(alg, 41);
    const auto samples = default_samples(alg.automaton(), 5, 4);
    for (int i = 0; i < 20; ++i) {
      const Element a = gen.core(), b = gen.core();
      for (std::size_t k = 2; k <= 3; ++k) {
        const Fiber f = fiber(alg.automaton(), samples[static_cast<std::size_t>(i) % samples.size()], k);
        const auto ma = represent(f, a).entries, mb = represent(f, b).entries;
        CHECK(max_abs(represent(f, a * b).entries - ma * mb) <= 1e-9);
        CHECK(max_abs(represent(f, adjoint(a)).entries - ma.adjoint()) <= 1e-12);
        const Eigen::MatrixXcd pos = represent(f, adjoint(a) * a).entries;
        if (pos.size() > 0) {
          Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(pos);
          CHECK(es.eigenvalues().minCoeff() >= -1e-8);
        }
      }
    }
  }
}

TEST_CASE("spectral norm") {
  Eigen::MatrixXcd m(2, 2);
  m << 1, -1, -1, 1;
  CHECK(spectral_norm(m) == doctest::Approx(2.0).epsilon(1e-9));
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(3, 3);
  d(0, 0) = 3.0;
  d(1, 2) = Scalar(0.0, -5.0);
  CHECK(spectral_norm(d) == doctest::Approx(5.0).epsilon(1e-9));
  CHECK(spectral_norm(Eigen::MatrixXcd::Zero(2, 2)) == 0.0);
}

TEST_CASE("norm sandwich") {
  const Algebra full(corpus("full2"));
  const auto samples = default_samples(full.automaton());
  const NormBounds one = norm_bounds(full, full.one(), 1, samples);
  CHECK(one.lower == doctest::Approx(1.0));
  CHECK(one.upper == 2.0);
  const NormBounds p = norm_bounds(full, full.a_uv(w01("0"), w01("0")), 1, samples);
  CHECK(p.lower == doctest::Approx(1.0));
  CHECK(p.upper == 2.0);
  for (const auto& name : oracle::kCorpus) {
    const Algebra alg(corpus(name));
    oracle::Gen gen(alg, 43);
    const auto pts = default_samples(alg.automaton());
    for (int i = 0; i < 15; ++i) {
      const Element a = gen.core();
      for (std::size_t k = 2; k <= 3; ++k) {
        const NormBounds b = norm_bounds(alg, a, k, pts);
        CHECK(b.lower <= b.upper);
        CHECK(b.upper == b.k_max.convert_to<double>() * sup_norm(a));
      }
      // Single terms: some fiber meets the support.
      const Element t = alg.term(gen.word(2), gen.word(2), gen.tail(), 1.0);
      const Element core = degree_component(0, t);
      if (core.is_zero()) continue;
      const NormBounds b = norm_bounds(alg, core, 2, pts);
      CHECK(b.lower >= sup_norm(core) - 1e-9);
      CHECK(b.upper <= b.k_max.convert_to<double>() * b.lower + 1e-9);
    }
  }
}

TEST_CASE("truncated regular representation") {
  const Algebra full(corpus("full2"));
  const auto& aut = full.automaton();
  CHECK(truncated_pi_x(aut, full.v(), pt("", "0"), 3, 2).norm >= 0.99);
  const Compression id = truncated_pi_x(aut, full.one(), pt("", "0"), 2, 1);
  CHECK(max_abs(id.entries - Eigen::MatrixXcd::Identity(id.entries.rows(), id.entries.cols())) == 0.0);
  CHECK(id.norm == doctest::Approx(1.0));
  const Compression zero = truncated_pi_x(aut, full.t(w01("0")) - full.t(w01("0")), pt("", "0"), 2, 2);
  CHECK(max_abs(zero.entries) == 0.0);
  CHECK(truncated_pi_x(aut, full.t(w01("0")), pt("", "0"), 1, 1).norm >= 0.999);
  try {
    truncated_pi_x(aut, full.one(), pt("", "0"), 12, 3, 100);
    FAIL("expected BasisOverflow");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BasisOverflow);
  }
  for (const auto& name : oracle::kCorpus) {
    const Algebra alg(corpus(name));
    oracle::Gen gen(alg, 47);
    for (int i = 0; i < 5; ++i) {
      const Element e = gen.element();
      const UPPoint x = gen.point();
      double table[4][3];
      for (std::size_t L = 0; L <= 3; ++L)
        for (int D = 0; D <= 2; ++D) {
          table[L][D] = truncated_pi_x(alg.automaton(), e, x, L, D).norm;
          if (L > 0) CHECK(table[L][D] >= table[L - 1][D] - 1e-9);
          if (D > 0) CHECK(table[L][D] >= table[L][D - 1] - 1e-9);
        }
      const double big = truncated_pi_x(alg.automaton(), e, x, 3, 2).norm;
      CHECK(big >= truncated_pi_x(alg.automaton(), e, x, 2, 1).norm - 1e-9);
      CHECK(big >= truncated_pi_x(alg.automaton(), e, x, 3, 1).norm - 1e-9);
    }
  }
}
