#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "prism/decision/decision.hpp"

using namespace prism;

namespace {
AgentParams params_with_mu(std::vector<double> mu) {
  AgentParams p;
  const std::size_t k = mu.size();
  p.theta_diag.assign(k, 1.0);
  p.sigma_diag.assign(k, 0.1);
  p.psi.assign(k, {0.0, 0.0});
  p.mu = EmotionVector(std::move(mu));
  p.gamma = 0.5;
  return p;
}
}  // namespace

TEST_CASE("interaction_impulse") {
  SocialGraph graph(3);
  graph.add_edge(0, 1, 1.0);
  graph.add_edge(0, 2, 1.0);
  const AgentParams p = params_with_mu({0.5, 0.5});
  const ActivationWeights w{0.5, 1.0, 2.0};

  SECTION("all terms vanish at rest") {
    const double u = interaction_impulse({0.5, 0.5}, p, 0, {}, graph, false, w);
    CHECK(u == Catch::Approx(0.0).margin(1e-15));
  }

  SECTION("two active unit-weight neighbors at w1=0.5") {
    const double u = interaction_impulse({0.5, 0.5}, p, 0, {1, 2}, graph, false, w);
    CHECK(u == Catch::Approx(1.0));
  }

  SECTION("mention indicator contributes w3") {
    const double u = interaction_impulse({0.5, 0.5}, p, 0, {}, graph, true, {0.0, 0.0, 2.0});
    CHECK(u == Catch::Approx(2.0));
  }

  SECTION("inactive or unconnected neighbors do not contribute") {
    SocialGraph g2(3);
    g2.add_edge(0, 1, 0.8);
    const double u = interaction_impulse({0.5, 0.5}, p, 0, {2}, g2, false, w);
    CHECK(u == Catch::Approx(0.0).margin(1e-15));
  }

  SECTION("monotone in edge mass, energy and mention") {
    const double base = interaction_impulse({0.6, 0.4}, p, 0, {1}, graph, false, w);
    const double more_neighbors = interaction_impulse({0.6, 0.4}, p, 0, {1, 2}, graph, false, w);
    CHECK(more_neighbors >= base);
    const double more_energy = interaction_impulse({0.8, 0.2}, p, 0, {1}, graph, false, w);
    CHECK(more_energy > base);
    const double mentioned = interaction_impulse({0.6, 0.4}, p, 0, {1}, graph, true, w);
    CHECK(mentioned > base);
  }

  SECTION("agitation strictly raises the impulse when w2 > 0") {
    const double calm = interaction_impulse({0.55, 0.45}, p, 0, {}, graph, false, w);
    const double agitated = interaction_impulse({0.9, 0.1}, p, 0, {}, graph, false, w);
    CHECK(agitated > calm);
  }

  SECTION("agent must be a graph node") {
    CHECK_THROWS_AS(interaction_impulse({0.5, 0.5}, p, 9, {}, graph, false, w), DomainError);
  }
}

TEST_CASE("should_activate uses a strict threshold") {
  CHECK(should_activate(1.0, 0.5) == Action::Reply);
  CHECK(should_activate(0.5, 0.5) == Action::Silence);
  CHECK(should_activate(0.0, 0.0) == Action::Silence);
}

TEST_CASE("update_belief conjugate update") {
  SECTION("single unit-noise observation from the standard prior") {
    const Belief b = update_belief({0.0, 1.0}, 1.0, 1.0);
    CHECK(b.mean == Catch::Approx(0.5));
    CHECK(b.precision == Catch::Approx(2.0));
  }

  SECTION("an uninformative observation leaves the mean in place") {
    const Belief b = update_belief({0.3, 2.0}, -1.0, 1e12);
    CHECK(std::abs(b.mean - 0.3) < 1e-10);
  }

  SECTION("two sequential observations equal the batch posterior") {
    Belief b{0.0, 1.0};
    b = update_belief(b, 1.0, 1.0);
    b = update_belief(b, 1.0, 1.0);
    CHECK(b.mean == Catch::Approx(2.0 / 3.0));
    CHECK(b.precision == Catch::Approx(3.0));
  }

  SECTION("domain errors") {
    CHECK_THROWS_AS(update_belief({0.0, 1.0}, 0.5, 0.0), DomainError);
    CHECK_THROWS_AS(update_belief({0.0, 1.0}, 0.5, -1.0), DomainError);
    CHECK_THROWS_AS(update_belief({0.0, 0.0}, 0.5, 1.0), DomainError);
  }
}

TEST_CASE("sequential updates match the closed-form batch posterior") {
  std::mt19937 gen(101);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> len(1, 100);
  for (int trial = 0; trial < 100; ++trial) {
    const double mu0 = u(gen);
    const double tau0 = 0.5 + std::abs(u(gen));
    const double var = 0.3 + std::abs(u(gen)) * 2.0;
    std::vector<double> ys(static_cast<std::size_t>(len(gen)));
    for (double& y : ys) y = u(gen);

    Belief b{mu0, tau0};
    for (double y : ys) b = update_belief(b, y, var);

    const auto batch = oracles::gaussian_batch_posterior(mu0, tau0, ys, var);
    CHECK(std::abs(b.mean - batch.mean) < 1e-10);
    CHECK(std::abs(b.precision - batch.precision) < 1e-10);

    // Permutation invariance over the same multiset.
    std::shuffle(ys.begin(), ys.end(), gen);
    Belief b2{mu0, tau0};
    for (double y : ys) b2 = update_belief(b2, y, var);
    CHECK(std::abs(b.mean - b2.mean) < 1e-10);
    CHECK(std::abs(b.precision - b2.precision) < 1e-10);
  }
}

TEST_CASE("precision is non-decreasing and increments by the observation precision") {
  Belief b{0.2, 1.5};
  const double var = 0.8;
  for (int i = 0; i < 20; ++i) {
    const Belief next = update_belief(b, 0.1 * i, var);
    CHECK(next.precision == Catch::Approx(b.precision + 1.0 / var));
    CHECK(next.precision > b.precision);
    b = next;
  }
}
