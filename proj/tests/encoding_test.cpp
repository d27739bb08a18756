// Copyright 2026 The gbsgraph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>

#include "gbsgraph/encoding.hpp"
#include "gbsgraph/error.hpp"
#include "gbsgraph/instances.hpp"
#include "gbsgraph/linalg.hpp"
#include "oracles.hpp"

using namespace gbsgraph;

namespace {

const ComplexMatrix kSwap = ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});

double roundtrip_error(const Graph& g, double scale) {
    const DeviceParams p = encode_graph(g, scale);
    const ComplexMatrix a = sampling_matrix(state_from_device(p.device())).a;
    return relative_distance(a, g.adjacency() * Complex{scale});
}

}  // namespace

TEST(EncodeGraph, ZeroGraphIsVacuum) {
    const DeviceParams p = encode_graph(Graph(ComplexMatrix(3, 3)), 0.5);
    for (const double r : p.squeezing) {
        EXPECT_EQ(r, 0.0);
    }
    EXPECT_LT(frobenius_distance(state_from_device(p.device()).husimi(), ComplexMatrix::identity(6)), 1e-12);
}

TEST(EncodeGraph, SwapGraphSqueezing) {
    const DeviceParams p = encode_graph(Graph(kSwap), 0.5);
    ASSERT_EQ(p.squeezing.size(), 2u);
    EXPECT_NEAR(p.squeezing[0], std::atanh(0.5), 1e-12);
    EXPECT_NEAR(p.squeezing[1], std::atanh(0.5), 1e-12);
    EXPECT_NEAR(p.squeezing[0], 0.5493, 1e-4);
    EXPECT_LT(roundtrip_error(Graph(kSwap), 0.5), 1e-10);
}

TEST(EncodeGraph, RandomRoundtrip) {
    Rng rng(41);
    for (std::size_t n = 2; n <= 16; n += 2) {
        const Graph g(oracle::random_symmetric(n, rng));
        EXPECT_LT(roundtrip_error(g, 0.9 * max_scale(g)), 1e-8) << "n=" << n;
    }
}

TEST(EncodeGraph, ScaleRange) {
    const Graph g(kSwap);
    EXPECT_THROW(encode_graph(g, 0.0), ValidationError);
    EXPECT_THROW(encode_graph(g, 1.0), ValidationError);
    EXPECT_THROW(encode_graph(g, -0.5), ValidationError);
    EXPECT_DOUBLE_EQ(max_scale(g), 1.0);
}

TEST(EncodeGraph, PermutationEquivariant) {
    Rng rng(42);
    const Graph g(oracle::random_symmetric(6, rng));
    const std::vector<std::size_t> perm{4, 1, 5, 0, 3, 2};
    const Graph pg(g.adjacency().principal(perm));
    const double c = 0.8 * max_scale(g);
    const ComplexMatrix a = sampling_matrix(state_from_device(encode_graph(g, c).device())).a;
    const ComplexMatrix pa = sampling_matrix(state_from_device(encode_graph(pg, c).device())).a;
    EXPECT_LT(frobenius_distance(pa, a.principal(perm)), 1e-9);
}

TEST(ChooseScale, SwapGraphClosedForm) {
    // A = c X is a two-mode squeezed state; each mode is thermal with
    // nbar = sinh^2(atanh c) = c^2 / (1 - c^2), so expected clicks = 2 c^2.
    const Graph g(kSwap);
    for (const double target : {0.1, 0.5, 1.0, 1.5}) {
        const double c = choose_scale(g, target);
        EXPECT_NEAR(c, std::sqrt(target / 2.0), 1e-6);
        const GaussianState s = state_from_device(encode_graph(g, c).device());
        const double nbar = mean_photon_number(s, 0) + mean_photon_number(s, 1);
        EXPECT_NEAR(nbar, 2.0 * std::pow(std::sinh(std::atanh(c)), 2), 1e-9);
    }
}

TEST(ChooseScale, HitsTargetAndIsMonotone) {
    const Graph g = random_complex_graph(16, 5);
    double previous = 0.0;
    for (const double target : {0.5, 2.0, 4.0, 6.0, 8.0}) {
        const double c = choose_scale(g, target);
        EXPECT_NEAR(expected_clicks_at_scale(g, c), target, 1e-4);
        EXPECT_GT(c, previous);
        previous = c;
    }
    EXPECT_LT(choose_scale(g, 1e-6), 1e-2 * max_scale(g));
}

TEST(ChooseScale, UnreachableTargetNamesSupremum) {
    // Vertex 2 is isolated and never clicks, so expected clicks stay below 2.
    ComplexMatrix m(3, 3);
    m(0, 1) = m(1, 0) = 1.0;
    const Graph g(m);
    try {
        choose_scale(g, 2.5);
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("supremum"), std::string::npos);
    }
    EXPECT_THROW(choose_scale(g, 0.0), ValidationError);
    EXPECT_THROW(choose_scale(g, 3.0), ValidationError);
    EXPECT_THROW(choose_scale(Graph(ComplexMatrix(3, 3)), 1.0), ValidationError);
}

TEST(Subgraph, InducedOnClicks) {
    ComplexMatrix m(6, 6);
    const std::vector<std::size_t> clique{1, 2, 4, 5};
    for (const std::size_t i : clique) {
        for (const std::size_t j : clique) {
            if (i != j) {
                m(i, j) = 1.0;
            }
        }
    }
    m(0, 3) = m(3, 0) = 2.0;
    const Graph g(m);
    const Graph k4 = subgraph(g, ClickPattern::from_string("011011"));
    ASSERT_EQ(k4.vertex_count(), 4u);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            EXPECT_EQ(k4.weight(i, j), Complex(i == j ? 0.0 : 1.0));
        }
    }
    EXPECT_EQ(subgraph(g, ClickPattern::from_string("111111")).adjacency(), g.adjacency());
    EXPECT_EQ(subgraph(g, ClickPattern::from_string("000000")).vertex_count(), 0u);
    EXPECT_THROW(subgraph(g, ClickPattern::from_string("0110")), ValidationError);
}
