#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sphdg/mesh.hpp"

using namespace sphdg;

TEST_CASE("uniform mesh") {
  const Mesh m = Mesh::uniform(0, 0.5, 200);
  CHECK(m.n_cells() == 200);
  CHECK(m.face(0) == 0.0);
  CHECK(m.face(200) == 0.5);
  for (int j = 0; j < 200; ++j) CHECK(m.width(j) == doctest::Approx(0.0025).epsilon(1e-14));

  const Mesh one = Mesh::uniform(0, 1, 1);
  CHECK(one.n_cells() == 1);
  CHECK(one.face(1) == 1.0);

  const Mesh shifted = Mesh::uniform(0.5, 1, 25);
  CHECK(shifted.face(0) == 0.5);
  CHECK(shifted.face(1) == doctest::Approx(0.52).epsilon(1e-14));
  CHECK(shifted.face(25) == 1.0);

  CHECK_THROWS_AS(Mesh::uniform(0, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(Mesh::uniform(1, 1, 10), std::invalid_argument);
}

TEST_CASE("geometric mesh") {
  // Yahil-style grid: innermost cell 1e5 cm, outer face near 1e10 cm
  const Mesh m = Mesh::geometric(0, 1e5, 1.03203, 256);
  CHECK(m.r_outer() == doctest::Approx(1e10).epsilon(0.01));
  CHECK(m.width(255) == doctest::Approx(3e8).epsilon(0.05));
  for (int j = 0; j + 1 < 256; ++j)
    CHECK(m.width(j + 1) / m.width(j) == doctest::Approx(1.03203).epsilon(1e-9));

  // toy-collapse N=128 row: 2 km first cell, outer face ~1.5e3 km
  const Mesh toy = Mesh::geometric(0, 2e5, 1.02292, 128);
  CHECK(toy.r_outer() == doctest::Approx(1.5e8).epsilon(0.01));

  CHECK_THROWS_AS(Mesh::geometric(0, 1.0, 0.9, 4), std::invalid_argument);
}

TEST_CASE("geometric growth -> 1 is uniform") {
  const Mesh g = Mesh::geometric(0, 0.01, 1.0, 100);
  const Mesh u = Mesh::uniform(0, 1.0, 100);
  for (int i = 0; i <= 100; ++i) {
    if (u.face(i) == 0)
      CHECK(g.face(i) == 0.0);
    else
      CHECK(std::abs(g.face(i) - u.face(i)) <= 1e-12 * u.face(i));
  }
}

TEST_CASE("midpoints and width sum") {
  const Mesh m = Mesh::uniform(0, 1, 2);
  CHECK(m.midpoint(0) == doctest::Approx(0.25));
  CHECK(m.midpoint(1) == doctest::Approx(0.75));
  CHECK_THROWS_AS(m.midpoint(2), std::out_of_range);

  const Mesh g = Mesh::geometric(0.1, 0.01, 1.05, 50);
  double sum = 0;
  for (int j = 0; j < g.n_cells(); ++j) {
    sum += g.width(j);
    CHECK(g.midpoint(j) == doctest::Approx(0.5 * (g.face(j) + g.face(j + 1))).epsilon(1e-15));
  }
  CHECK(sum == doctest::Approx(g.r_outer() - g.r_min()).epsilon(8 * 2.3e-16));
}

TEST_CASE("locate") {
  const Mesh m = Mesh::uniform(0, 1, 4);
  CHECK(m.locate(0.1) == 0);
  CHECK(m.locate(0.26) == 1);
  CHECK(m.locate(1.0) == 3);
  CHECK(m.locate(0.0) == 0);
}
