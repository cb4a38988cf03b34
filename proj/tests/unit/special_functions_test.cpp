// Reference values computed with mpmath at 40 digits.
#include <gtest/gtest.h>

#include <cmath>

#include "silico/errors.hpp"
#include "silico/special_functions.hpp"

namespace sf = silico::sf;
using silico::DomainError;

TEST(SpecialFunctions, Zeta) {
  EXPECT_NEAR(sf::zeta(-0.5), -0.20788622497735456602, 1e-15);
  EXPECT_NEAR(sf::zeta(0.5), -1.4603545088095868129, 1e-15);
  EXPECT_NEAR(sf::zeta(2.5), 1.3414872572509171798, 1e-15);
  EXPECT_NEAR(sf::zeta(-2.5), 0.0085169287778503305424, 1e-16);
  EXPECT_NEAR(sf::zeta(-3.0), 1.0 / 120.0, 1e-17);
  EXPECT_NEAR(sf::zeta(1.0001), 10000.577222946437629, 1e-8);
  EXPECT_EQ(sf::zeta(-2.0), 0.0);
  EXPECT_EQ(sf::zeta(-10.0), 0.0);
  EXPECT_THROW(sf::zeta(1.0), DomainError);
}

TEST(SpecialFunctions, Gamma) {
  EXPECT_NEAR(sf::gamma(0.3), 2.9915689876875907446, 1e-14);
  EXPECT_NEAR(sf::gamma(-1.5), 2.3632718012073547031, 1e-14);
  EXPECT_NEAR(sf::log_gamma(50.5), 146.51925549072062722, 1e-12);
  EXPECT_THROW(sf::gamma(0.0), DomainError);
  EXPECT_THROW(sf::gamma(-3.0), DomainError);
  EXPECT_THROW(sf::log_gamma(-1.0), DomainError);
}

TEST(SpecialFunctions, IncompleteGamma) {
  EXPECT_NEAR(sf::gamma_p(2.5, 1.3), 0.23863473215498609683, 1e-15);
  EXPECT_NEAR(sf::incomplete_gamma_upper(2.5, 4.0), 0.20769032981158048375, 1e-15);
  EXPECT_NEAR(sf::incomplete_gamma_upper(0.5, 0.1), 1.1604624847937442309, 1e-14);
  EXPECT_THROW(sf::gamma_p(-1.0, 1.0), DomainError);
}

TEST(SpecialFunctions, BernoulliAndHarmonic) {
  EXPECT_EQ(sf::bernoulli_2k(0), 1.0);
  EXPECT_NEAR(sf::bernoulli_2k(1), 1.0 / 6.0, 1e-17);
  EXPECT_NEAR(sf::bernoulli_2k(10), -529.12424242424242424, 1e-12);
  EXPECT_NEAR(sf::bernoulli_2k(30) / -2.1399949257225333666e+34, 1.0, 1e-14);
  EXPECT_THROW(sf::bernoulli_2k(31), DomainError);
  EXPECT_EQ(sf::harmonic(0), 0.0);
  EXPECT_NEAR(sf::harmonic(7), 2.5928571428571428571, 1e-15);
}

TEST(SpecialFunctions, Binomial) {
  EXPECT_DOUBLE_EQ(sf::binomial(5.0, 2), 10.0);
  EXPECT_DOUBLE_EQ(sf::binomial(0.5, 0), 1.0);
  EXPECT_DOUBLE_EQ(sf::binomial(0.5, 2), -0.125);
  EXPECT_DOUBLE_EQ(sf::binomial(-1.0, 3), -1.0);
}

TEST(SpecialFunctions, H10ClosedFormAgainstDirectSum) {
  const double xs[] = {0.5, 1.0, 5.0, 30.0, 200.0};
  const double ref[] = {0.26794159607265600693, 0.56343634308190952928, 3.3736016285532701144,
                        24.574633722085874568, 183.84926628983688225};
  for (int i = 0; i < 5; ++i) {
    EXPECT_NEAR(sf::h10_closed_form(xs[i]) / ref[i], 1.0, 1e-10) << xs[i];
  }
  EXPECT_THROW(sf::h10_closed_form(0.0), DomainError);
}
