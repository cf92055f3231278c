#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>

#include <Eigen/Dense>

#include "uind/physbounds.hpp"
#include "uind/sources.hpp"

using namespace uind;

namespace {

SourceModel make(decltype(SourceModel::family) family) {
  SourceModel s;
  s.family = std::move(family);
  return s;
}

SymbolString sym(const char* s) { return parse_symbols(s, {}); }

}  // namespace

TEST_CASE("rationals") {
  CHECK(parse_rational("2/4") == Rational(1, 2));
  CHECK(parse_rational("1") == Rational(1));
  CHECK(format_rational(Rational(3, 4)) == "3/4");
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("x"));
}

TEST_CASE("conditional pdfs") {
  auto b = make(BernoulliSource{Rational(1, 2)});
  CHECK(conditional_pdf(b, sym("0110"), 1) == Rational(1, 2));

  auto p = make(PeriodicSource{sym("01")});
  CHECK(conditional_pdf(p, sym("010"), 1) == Rational(1));
  CHECK(conditional_pdf(p, sym("010"), 0) == Rational(0));
  CHECK_THROWS(conditional_pdf(p, sym("00"), 0));

  MarkovSource m{1, {{Rational(1, 3), Rational(2, 3)}, {Rational(3, 4), Rational(1, 4)}}};
  auto mk = make(m);
  CHECK(conditional_pdf(mk, sym("001"), 0) == Rational(3, 4));
  CHECK(conditional_pdf(mk, sym("0"), 1) == Rational(2, 3));
  // short history reads as padded with 0
  CHECK(conditional_pdf(mk, {}, 1) == Rational(2, 3));

  // INC, LOOP, OUT, END: an endless stream of 1s
  auto prog = make(ProgramSource{Program::parse("010110001111"), 1000});
  CHECK(conditional_pdf(prog, sym("11"), 1) == Rational(1));
  CHECK_THROWS(conditional_pdf(prog, sym("10"), 1));
}

TEST_CASE("pdfs sum to one exactly") {
  MarkovSource m{2,
                 {{Rational(1, 3), Rational(2, 3)},
                  {Rational(1, 7), Rational(6, 7)},
                  {Rational(1, 2), Rational(1, 2)},
                  {Rational(5, 9), Rational(4, 9)}}};
  std::vector<SourceModel> sources = {make(BernoulliSource{Rational(2, 9)}), make(m),
                                      make(PeriodicSource{sym("0010")})};
  for (const auto& s : sources) {
    auto h = sample(s, 12, 3);
    for (std::size_t t = 0; t <= h.size(); ++t) {
      SymbolString prefix(h.begin(), h.begin() + static_cast<std::ptrdiff_t>(t));
      CHECK(conditional_pdf(s, prefix, 0) + conditional_pdf(s, prefix, 1) == Rational(1));
    }
  }
}

TEST_CASE("source validation") {
  CHECK_THROWS(make(BernoulliSource{Rational(0)}).validate());
  CHECK_THROWS(make(BernoulliSource{Rational(1)}).validate());
  CHECK_THROWS(make(MarkovSource{1, {{Rational(1, 3), Rational(1, 3)}, {Rational(1), Rational(0)}}})
                   .validate());
  CHECK_THROWS(make(MarkovSource{1, {{Rational(1), Rational(0)}}}).validate());
  CHECK_THROWS(make(PeriodicSource{}).validate());
}

TEST_CASE("SplitMix64 reference stream") {
  SplitMix64 rng(1234567);
  CHECK(rng.next() == 6457827717110365317ULL);
  CHECK(rng.next() == 3203168211198807973ULL);
  CHECK(rng.next() == 9817491932198370423ULL);
}

TEST_CASE("draw rule") {
  // u / 2^64 below 1/3 picks symbol 0
  std::vector<Rational> pdf = {Rational(1, 3), Rational(2, 3)};
  SplitMix64 a(1), b(1);
  for (int i = 0; i < 200; ++i) {
    const auto u = static_cast<long double>(b.next()) / 18446744073709551616.0L;
    CHECK(draw_symbol(a, pdf) == (u < 1.0L / 3 ? 0 : 1));
  }
  SplitMix64 c(5);
  for (int i = 0; i < 50; ++i) CHECK(draw_symbol(c, {Rational(0), Rational(1)}) == 1);
}

TEST_CASE("sampling") {
  CHECK(sample(make(PeriodicSource{sym("01")}), 6, 99) == sym("010101"));
  auto prog = make(ProgramSource{Program::parse("010110001111"), 1000});
  CHECK(sample(prog, 5, 0) == sym("11111"));

  auto b = make(BernoulliSource{Rational(1, 2)});
  CHECK(sample(b, 64, 42) == sample(b, 64, 42));
  CHECK(sample(b, 64, 42) != sample(b, 64, 43));
  CHECK(sample(b, 0, 1).empty());
}

TEST_CASE("Bernoulli frequency for the default seed") {
  auto b = make(BernoulliSource{Rational(1, 2)});
  const auto x = sample(b, 10000, 1);
  int ones = 0;
  for (auto s : x) ones += s;
  // pinned from an independent re-implementation of the generator and draw rule
  CHECK(ones == 4836);
  CHECK(ones >= 4700);
  CHECK(ones <= 5300);
}

TEST_CASE("entropy") {
  Eigen::VectorXd pure(2), mixed(2), skew(2);
  pure << 1, 0;
  mixed << 0.5, 0.5;
  skew << 0.75, 0.25;
  CHECK(von_neumann_entropy(DensityMatrix::diagonal(pure)) == doctest::Approx(0).epsilon(1e-12));
  CHECK(std::fabs(von_neumann_entropy(DensityMatrix::diagonal(mixed)) - std::numbers::ln2) <= 1e-9);
  const double want = -(0.75 * std::log(0.75) + 0.25 * std::log(0.25));
  CHECK(std::fabs(von_neumann_entropy(DensityMatrix::diagonal(skew)) - want) <= 1e-12);

  for (int d : {1, 3, 8}) {
    ComplexMatrix id = ComplexMatrix::Identity(d, d) / static_cast<double>(d);
    CHECK(std::fabs(von_neumann_entropy(DensityMatrix(id)) - std::log(d)) <= 1e-9);
  }
}

TEST_CASE("density matrix validation") {
  ComplexMatrix m(2, 2);
  m << 0.5, std::complex<double>(0, 0.1), std::complex<double>(0, 0.1), 0.5;
  CHECK_THROWS(DensityMatrix{m});
  m << 0.6, 0, 0, 0.6;
  CHECK_THROWS(DensityMatrix{m});
  m << 1.5, 0, 0, -0.5;
  CHECK_THROWS(DensityMatrix{m});
  m << 1 + 1e-12, 0, 0, -1e-12;
  CHECK_NOTHROW(DensityMatrix{m});
}

TEST_CASE("density matrix text format") {
  std::istringstream in("2\n0.5 0\n0 -0.5\n0 0.5\n0.5 0\n");
  auto rho = DensityMatrix::parse(in);
  CHECK(rho.dim() == 2);
  CHECK(rho.entries()(0, 1) == std::complex<double>(0, -0.5));
  CHECK(von_neumann_entropy(rho) == doctest::Approx(0).epsilon(1e-12));
  std::istringstream bad("2\n1 0\n");
  CHECK_THROWS(DensityMatrix::parse(bad));
}

TEST_CASE("basis invariance") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 10; ++trial) {
    const int d = 2 + trial % 5;
    Eigen::VectorXd p(d);
    for (int i = 0; i < d; ++i) p[i] = std::fabs(g(rng));
    p /= p.sum();
    auto rho = DensityMatrix::diagonal(p);
    ComplexMatrix z(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) z(i, j) = {g(rng), g(rng)};
    ComplexMatrix u = Eigen::HouseholderQR<ComplexMatrix>(z).householderQ();
    ComplexMatrix rotated = u * rho.entries() * u.adjoint();
    rotated = (rotated + rotated.adjoint().eval()) / 2.0;
    CHECK(std::fabs(von_neumann_entropy(DensityMatrix(rotated)) - von_neumann_entropy(rho)) <= 1e-9);
  }
}

TEST_CASE("Bekenstein bound") {
  CHECK(bekenstein_bound(1, 0) == 0);
  const double r1 = bekenstein_bound(1, 1);
  CHECK(std::fabs(r1 / 1.9875e26 - 1) <= 1e-3);
  CHECK(r1 == doctest::Approx(2 * std::numbers::pi / (1.054571817e-34 * 299792458.0)).epsilon(1e-12));
  CHECK(std::fabs(bekenstein_bound(2, 1) / (2 * r1) - 1) <= 1e-12);
  CHECK(std::fabs(bekenstein_bound(3, 5) / (15 * r1) - 1) <= 1e-12);
  CHECK(bekenstein_bound_thermodynamic(1, 1) == doctest::Approx(r1 * 1.380649e-23));
  CHECK(nats_to_bits(std::numbers::ln2) == doctest::Approx(1.0));
  CHECK_THROWS(bekenstein_bound(-1, 1));
  CHECK_THROWS(bekenstein_bound(1, -1));
}
