// Copyright 2026 The ebkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>

#include "doctest.h"
#include "ebkit/errors.hpp"
#include "ebkit/gaussian.hpp"
#include "ebkit/random.hpp"

using namespace ebkit;

namespace {

GaussianChannel chan(double x, double y) {
  return GaussianChannel(x * RMatrix::Identity(2, 2), y * RMatrix::Identity(2, 2));
}

}  // namespace

TEST_CASE("symplectic form") {
  for (int n = 1; n <= 3; ++n) {
    const RMatrix s = symplectic_form(n);
    CHECK((s + s.transpose()).norm() == 0.0);
    CHECK((s * s + RMatrix::Identity(2 * n, 2 * n)).norm() == 0.0);
  }
  CHECK_THROWS_AS(symplectic_form(0), Error);
}

TEST_CASE("validity") {
  CHECK(is_valid(chan(1, 0)));
  CHECK(is_valid(chan(0, 1)));
  CHECK_FALSE(is_valid(chan(1, -1)));
  CHECK(chan(0, 1).valid());
  CHECK_FALSE(chan(1, -1).valid());
}

TEST_CASE("copositivity") {
  CHECK(is_cocp(chan(1, 2)));
  CHECK_FALSE(is_cocp(chan(1, 0)));
  CHECK(is_cocp(chan(0, 1)));
  CHECK(std::abs(embedded_min_eig(cocp_matrix(chan(1, 2)))) < 1e-14);
}

TEST_CASE("entanglement breaking") {
  CHECK(is_eb(chan(0, 1)).sdp.status == sdp::Status::Feasible);
  CHECK(is_eb(chan(1, 0)).sdp.status != sdp::Status::Feasible);
  const sdp::GaussianSplit s = is_eb(chan(1, 2));
  REQUIRE(s.sdp.status == sdp::Status::Feasible);
  CHECK((s.n + s.m - 2.0 * RMatrix::Identity(2, 2)).norm() < 1e-7);
}

TEST_CASE("classical noise channels: EB iff coCP") {
  for (int k = 0; k <= 80; ++k) {
    const double y = 0.05 * k;
    const GaussianChannel c = chan(1, y);
    const bool cocp = is_cocp(c);
    CHECK(cocp == (y >= 2.0 - 1e-12));
    if (std::abs(y - 2.0) < 1e-9) continue;
    const sdp::GaussianSplit s = is_eb(c);
    CHECK((s.sdp.status == sdp::Status::Feasible) == cocp);
  }
}

TEST_CASE("EB split recovers both conditions") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const GaussianChannel c = random_cocp_channel(1 + seed % 2, seed);
    const GaussianChannel cc = compose(c, c);
    const sdp::GaussianSplit s = is_eb(cc);
    REQUIRE(s.sdp.status == sdp::Status::Feasible);
    CHECK(is_valid(cc));
    CHECK(is_cocp(cc));
  }
}

TEST_CASE("composition") {
  const GaussianChannel c = chan(1, 2);
  const GaussianChannel cc = compose(c, c);
  CHECK((cc.x() - RMatrix::Identity(2, 2)).norm() == 0.0);
  CHECK((cc.y() - 4.0 * RMatrix::Identity(2, 2)).norm() == 0.0);
  const GaussianChannel cid = compose(chan(1, 0), c);
  CHECK((cid.y() - c.y()).norm() == 0.0);
  CHECK_THROWS_AS(compose(c, GaussianChannel(RMatrix::Identity(4, 4), RMatrix::Zero(4, 4))), Error);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const GaussianChannel a = random_cocp_channel(2, 3 * seed), b = random_cocp_channel(2, 3 * seed + 1),
                          d = random_cocp_channel(2, 3 * seed + 2);
    const GaussianChannel l = compose(a, compose(b, d)), r = compose(compose(a, b), d);
    CHECK((l.x() - r.x()).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, l.x().cwiseAbs().maxCoeff()));
    CHECK((l.y() - r.y()).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, l.y().cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("composition of valid channels is valid") {
  Rng rng(9);
  int checked = 0;
  for (std::uint64_t seed = 0; checked < 500; ++seed) {
    const int n = 1 + seed % 3;
    const GaussianChannel a = random_cocp_channel(n, 2 * seed), b = random_cocp_channel(n, 2 * seed + 1);
    // Drop the coCP margin but stay valid.
    const GaussianChannel va(a.x(), a.y() - 0.005 * RMatrix::Identity(2 * n, 2 * n));
    REQUIRE(va.valid());
    CHECK(compose(va, b).valid());
    ++checked;
  }
}

TEST_CASE("PPT squared witness") {
  Ppt2Witness w = ppt2_witness(chan(1, 2), chan(1, 2));
  CHECK((w.n - 2.0 * RMatrix::Identity(2, 2)).norm() == 0.0);
  CHECK((w.m - 2.0 * RMatrix::Identity(2, 2)).norm() == 0.0);
  CHECK(w.verified);
  w = ppt2_witness(chan(1, 2), chan(0, 1));
  CHECK((w.n - RMatrix::Identity(2, 2)).norm() == 0.0);
  CHECK((w.m - 2.0 * RMatrix::Identity(2, 2)).norm() == 0.0);
  CHECK(w.verified);
  CHECK_THROWS_AS(ppt2_witness(chan(1, 0), chan(1, 2)), Error);
}

TEST_CASE("random coCP generator") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const GaussianChannel c = random_cocp_channel(1 + seed % 3, seed);
    CHECK(is_valid(c));
    CHECK(is_cocp(c));
    CHECK(embedded_min_eig(validity_matrix(c)) >= 0.01 - 1e-9);
    CHECK(embedded_min_eig(cocp_matrix(c)) >= 0.01 - 1e-9);
    CHECK(c.x().cwiseAbs().maxCoeff() <= 1.0);
  }
  const GaussianChannel a = random_cocp_channel(2, 42), b = random_cocp_channel(2, 42);
  CHECK(a.x() == b.x());
  CHECK(a.y() == b.y());
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const GaussianChannel c = random_cocp_channel(1, seed);
    CHECK(is_eb(compose(c, c)).sdp.status == sdp::Status::Feasible);
  }
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(GaussianChannel(RMatrix::Identity(3, 3), RMatrix::Identity(3, 3)), Error);
  RMatrix y = RMatrix::Identity(2, 2);
  y(0, 1) = 1.0;
  CHECK_THROWS_AS(GaussianChannel(RMatrix::Identity(2, 2), y), Error);
}
