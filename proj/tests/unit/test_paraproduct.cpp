#include <gtest/gtest.h>

#include <cmath>

#include "bsq/norms.hpp"
#include "bsq/paraproduct.hpp"
#include "bsq/spectral_ops.hpp"
#include "support.hpp"

using namespace bsq;
using bsq::testing::brute_force_product;
using bsq::testing::coeff_distance;
using bsq::testing::random_bandlimited;

namespace {

const LebesgueExponent kInf = LebesgueExponent::infinity();

// Separately coded projector: evaluates the telescoped cutoff pair on each mode.
SpectralField project(const SpectralField& f, const LPFamily& fam, int j, bool partial) {
  const Grid& g = f.grid();
  SpectralField out(g);
  for (int a = 0; a < g.n(); ++a) {
    for (int b = 0; b < g.n(); ++b) {
      const int k1 = g.wavenumber(a), k2 = g.wavenumber(b);
      const double r = std::hypot(k1, k2);
      double m = 0.0;
      if (partial) {
        m = j < -1 ? 0.0 : lp_cutoff(r / std::exp2(j + 1), fam.params());
      } else if (j == -1) {
        m = lp_cutoff(r, fam.params());
      } else if (j >= 0) {
        m = lp_cutoff(r / std::exp2(j + 1), fam.params()) - lp_cutoff(r / std::exp2(j), fam.params());
      }
      out.at(k1, k2) = m * f.at(k1, k2);
    }
  }
  return out;
}

// T_f g by a double sum of exact convolutions over all band pairs.
SpectralField oracle_paraproduct(const SpectralField& f, const SpectralField& g, const LPFamily& fam) {
  SpectralField out(f.grid());
  for (int j = 1; j <= fam.j_max(); ++j) {
    for (int k = -1; k <= j - 2; ++k) out += brute_force_product(project(f, fam, k, false), project(g, fam, j, false));
  }
  return out;
}

SpectralField oracle_remainder(const SpectralField& f, const SpectralField& g, const LPFamily& fam) {
  SpectralField out(f.grid());
  for (int j = -1; j <= fam.j_max(); ++j) {
    for (int k = std::max(-1, j - 1); k <= std::min(fam.j_max(), j + 1); ++k) {
      out += brute_force_product(project(f, fam, j, false), project(g, fam, k, false));
    }
  }
  return out;
}

SpectralField oracle_commutator(const VelocityField& u, const SpectralField& rho, int j, const LPFamily& fam) {
  const auto grad = gradient(rho);
  const auto flux = brute_force_product(u.u1, grad.u1) + brute_force_product(u.u2, grad.u2);
  const int low = std::max(j - 2, -1);
  const auto band_grad = gradient(project(rho, fam, j, false));
  const auto lowu1 = project(u.u1, fam, low, true), lowu2 = project(u.u2, fam, low, true);
  return project(flux, fam, j, false) - brute_force_product(lowu1, band_grad.u1) -
         brute_force_product(lowu2, band_grad.u2);
}

VelocityField random_velocity(const Grid& g, double kmax, unsigned seed) {
  return biot_savart(random_bandlimited(g, kmax, seed));
}

}  // namespace

class BonyExactness : public ::testing::TestWithParam<unsigned> {};

TEST_P(BonyExactness, PartsSumToDealiasedProduct) {
  const Grid g(128);
  const LPFamily fam(g);
  const auto f = random_bandlimited(g, g.dealias_radius(), GetParam(), false);
  const auto h = random_bandlimited(g, g.dealias_radius(), GetParam() + 1000, false);
  const auto split = bony_decompose(f, h, fam);
  const auto prod = product(f, h);
  EXPECT_LE(coeff_distance(split.sum(), prod), 1e-11 * std::max(1.0, prod.max_abs_coeff()));
}

INSTANTIATE_TEST_SUITE_P(Seeds, BonyExactness, ::testing::Range(0u, 10u));

TEST(Bony, MatchesDoubleSumOracle) {
  const Grid g(64);
  const LPFamily fam(g);
  for (unsigned seed = 0; seed < 2; ++seed) {
    const auto f = random_bandlimited(g, 12, 40 + seed, false);
    const auto h = random_bandlimited(g, 12, 50 + seed, false);
    const auto split = bony_decompose(f, h, fam);
    EXPECT_LE(coeff_distance(split.t_fg, oracle_paraproduct(f, h, fam)), 1e-11);
    EXPECT_LE(coeff_distance(split.t_gf, oracle_paraproduct(h, f, fam)), 1e-11);
    EXPECT_LE(coeff_distance(split.remainder, oracle_remainder(f, h, fam)), 1e-11);
  }
}

TEST(Bony, ConstantFactor) {
  const Grid g(64);
  const LPFamily fam(g);
  const double c = 1.7;
  const auto f = SpectralField::single_mode(g, 0, 0, c);
  const auto h = random_bandlimited(g, 20, 3, false);
  const auto split = bony_decompose(f, h, fam);
  const auto low = band_project(h, fam, -1) + band_project(h, fam, 0);
  EXPECT_EQ(split.t_gf.max_abs_coeff(), 0.0);
  EXPECT_LE(coeff_distance(split.t_fg, c * (h - low)), 1e-13);
  EXPECT_LE(coeff_distance(split.remainder, c * low), 1e-13);
  EXPECT_LE(coeff_distance(split.sum(), c * h), 1e-13);
}

TEST(Bony, SeparatedBandsHaveNoRemainder) {
  const Grid g(128);
  const LPFamily fam(g);
  const auto f = SpectralField::single_mode(g, 1, 0, 1.0);
  const auto h = SpectralField::single_mode(g, 0, 32, 1.0);
  EXPECT_LE(bony_decompose(f, h, fam).remainder.max_abs_coeff(), 1e-15);
}

TEST(Commutator, ConstantVelocityGivesZero) {
  const Grid g(64);
  const LPFamily fam(g);
  const VelocityField u{SpectralField::single_mode(g, 0, 0, 0.3), SpectralField::single_mode(g, 0, 0, -2.0)};
  const auto rho = random_bandlimited(g, 21, 8);
  for (int j = -1; j <= fam.j_max(); ++j) {
    EXPECT_EQ(commutator_rj(u, rho, j, fam).max_abs_coeff(), 0.0);
    const auto r = commutator_bound_ratio(u, rho, j, fam);
    EXPECT_EQ(r.lhs, 0.0);
    EXPECT_EQ(r.ratio, 0.0);
    EXPECT_FALSE(r.violation);
  }
}

TEST(Commutator, Bilinear) {
  const Grid g(64);
  const LPFamily fam(g);
  const auto u = random_velocity(g, 10, 1);
  const auto rho = random_bandlimited(g, 10, 2);
  const VelocityField u2{2.0 * u.u1, 2.0 * u.u2};
  for (int j = -1; j <= fam.j_max(); ++j) {
    EXPECT_LE(coeff_distance(commutator_rj(u2, rho, j, fam), 2.0 * commutator_rj(u, rho, j, fam)), 1e-13);
  }
}

TEST(Commutator, TaylorGreenAgainstIndependentAssembly) {
  const Grid g(64);
  const LPFamily fam(g);
  const auto w = SpectralField::from_function(g, [](double x, double y) { return -2 * std::cos(x) * std::cos(y); });
  const auto u = biot_savart(w);
  const auto rho = SpectralField::from_function(g, [](double, double y) { return std::sin(4 * y); });
  EXPECT_LE(coeff_distance(commutator_rj(u, rho, 2, fam), oracle_commutator(u, rho, 2, fam)), 1e-13);
}

class CommutatorOracle : public ::testing::TestWithParam<unsigned> {};

TEST_P(CommutatorOracle, AllBandsMatchAssembly) {
  const Grid g(32);
  const LPFamily fam(g);
  const auto u = random_velocity(g, 5, GetParam());
  const auto rho = random_bandlimited(g, 5, GetParam() + 500);
  const auto all = commutator_all(u, rho, fam);
  for (int j = -1; j <= fam.j_max(); ++j) {
    EXPECT_LE(coeff_distance(all[static_cast<std::size_t>(j + 1)], oracle_commutator(u, rho, j, fam)), 1e-12)
        << "j=" << j;
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, CommutatorOracle, ::testing::Range(0u, 20u));

TEST(Commutator, RightSideMatchesHandAssembly) {
  const Grid g(64);
  const LPFamily fam(g);
  const auto u = random_velocity(g, 15, 61);
  const auto rho = random_bandlimited(g, 15, 62);
  const int jm = fam.j_max();
  auto sup = [](const SpectralField& f) { return lp_norm(f, LebesgueExponent::infinity()); };
  auto grad_sup = [&](int j, bool partial) {
    const VelocityField a = gradient(project(u.u1, fam, j, partial));
    const VelocityField b = gradient(project(u.u2, fam, j, partial));
    const auto s = [](const SpectralField& f) { return f.to_physical(); };
    const auto a1 = s(a.u1), a2 = s(a.u2), b1 = s(b.u1), b2 = s(b.u2);
    double m = 0.0;
    for (std::size_t i = 0; i < a1.size(); ++i) {
      m = std::max(m, std::sqrt(a1[i] * a1[i] + a2[i] * a2[i] + b1[i] * b1[i] + b2[i] * b2[i]));
    }
    return m;
  };
  const VelocityField low{project(u.u1, fam, -1, false), project(u.u2, fam, -1, false)};
  for (int j = -1; j <= jm; ++j) {
    double expected = 0.0;
    for (int l = std::max(-1, j - 1); l <= std::min(jm, j + 1); ++l) {
      const int s = std::max(l - 2, -1);
      expected += sup(project(rho, fam, s, true)) * grad_sup(l, false) + grad_sup(s, true) * sup(project(rho, fam, l, false));
    }
    double tail = 0.0;
    for (int l = std::max(-1, j - 1); l <= jm; ++l) {
      const double gu = l == -1 ? lp_norm(low, LebesgueExponent::infinity()) : grad_sup(l, false);
      double rs = 0.0;
      for (int m = std::max(-1, l - 1); m <= std::min(jm, l + 1); ++m) rs += sup(project(rho, fam, m, false));
      tail += std::exp2(-l) * gu * rs;
    }
    expected += std::exp2(j) * tail;
    EXPECT_NEAR(commutator_bound_ratio(u, rho, j, fam).rhs, expected, 1e-10 * expected) << "j=" << j;
  }
}

TEST(Commutator, RatioStableUnderRefinement) {
  auto max_ratio = [](int n) {
    const Grid g(n);
    const LPFamily fam(g);
    const auto w = SpectralField::from_function(g, [](double x, double y) {
      return std::sin(x) * std::cos(2 * y) + 0.5 * std::cos(3 * x + y);
    });
    const auto rho = SpectralField::from_function(g, [](double x, double y) { return std::cos(4 * x - 2 * y) + std::sin(5 * y); });
    double m = 0.0;
    for (const auto& r : commutator_bound_sweep(biot_savart(w), rho, fam)) m = std::max(m, r.ratio);
    return m;
  };
  const double a = max_ratio(64), b = max_ratio(128);
  EXPECT_GT(a, 0.0);
  EXPECT_LE(std::abs(a - b), 0.1 * a);
}

TEST(Paraproduct, RemainderBoundHasOneConstant) {
  // ||R(u, rho)||_{B0_inf,1} <= C ||rho||_{B0_inf,inf} ||u||_{B0_inf,1}; record C over random pairs.
  const Grid g(64);
  const LPFamily fam(g);
  double c_max = 0.0;
  for (unsigned seed = 0; seed < 20; ++seed) {
    const auto u = random_velocity(g, 21, seed);
    const auto rho = random_bandlimited(g, 21, seed + 99);
    const auto r = bony_decompose(u.u1, rho, fam).remainder;
    const double lhs = norm(r, BesovNorm{0.0, kInf, LebesgueExponent(1.0)}, fam);
    const double rhs = norm(rho, B0InfInfNorm{}, fam) * norm(u.u1, BesovNorm{0.0, kInf, LebesgueExponent(1.0)}, fam);
    c_max = std::max(c_max, lhs / rhs);
  }
  EXPECT_GT(c_max, 0.0);
  EXPECT_LT(c_max, 10.0);
}
