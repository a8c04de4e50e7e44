// Copyright 2026 The netexp Authors.
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

#include "netexp/clustering.h"

#include <numeric>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "netexp/errors.h"
#include "test_util.h"

namespace netexp {
namespace {

using testing::Complete;
using testing::Cycle;
using testing::FloydWarshall;
using testing::kInf;

// Net properties (a)-(c) straight from all-pairs distances.
bool NetOracle(const Graph& g, const Clustering& c, const std::vector<int>& centers, int eps) {
  const auto d = FloydWarshall(g);
  const int n = g.num_vertices();
  if (static_cast<int>(centers.size()) != c.num_clusters()) return false;
  for (int k = 0; k < c.num_clusters(); ++k) {
    if (c.cluster_of(centers[k]) != k) return false;
  }
  for (size_t a = 0; a < centers.size(); ++a) {
    for (size_t b = a + 1; b < centers.size(); ++b) {
      if (d[centers[a]][centers[b]] < eps) return false;
    }
  }
  for (int v = 0; v < n; ++v) {
    int best = kInf;
    for (int ctr : centers) best = std::min(best, d[ctr][v]);
    if (best > eps - 1) return false;
    if (d[centers[c.cluster_of(v)]][v] != best) return false;
  }
  return true;
}

TEST(ClusteringTest, ValidatesDenseIds) {
  EXPECT_NO_THROW(Clustering({0, 1, 1, 0}));
  EXPECT_THROW(Clustering({0, 2, 2}), std::invalid_argument);
  EXPECT_THROW(Clustering({0, -1}), std::invalid_argument);
  const Clustering c({1, 0, 1});
  EXPECT_EQ(c.num_clusters(), 2);
  EXPECT_EQ(c.members()[1], (std::vector<int>{0, 2}));
}

TEST(SingletonTest, Basics) {
  EXPECT_EQ(SingletonClustering(1).num_clusters(), 1);
  const auto c = SingletonClustering(5);
  EXPECT_EQ(c.assignment(), (std::vector<int>{0, 1, 2, 3, 4}));
}

TEST(EpsilonNetTest, EpsilonOneIsSingleton) {
  CounterRng g_rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = testing::RandomGraph(15, 0.3, g_rng);
    CounterRng rng(trial);
    const auto net = EpsilonNetClustering(g, 1, rng);
    EXPECT_EQ(net.clustering, SingletonClustering(15));
  }
}

TEST(EpsilonNetTest, CompleteGraphOneCluster) {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    CounterRng rng(seed);
    const auto net = EpsilonNetClustering(Complete(5), 2, rng);
    EXPECT_EQ(net.clustering.num_clusters(), 1);
  }
}

TEST(EpsilonNetTest, SixCycleTwoClustersOfThree) {
  std::set<int> first_centers;
  for (uint64_t seed = 0; seed < 200; ++seed) {
    CounterRng rng(seed);
    const auto net = EpsilonNetClustering(Cycle(6), 3, rng);
    ASSERT_EQ(net.clustering.num_clusters(), 2);
    EXPECT_EQ(net.clustering.members()[0].size(), 3u);
    EXPECT_EQ(net.clustering.members()[1].size(), 3u);
    EXPECT_EQ(FloydWarshall(Cycle(6))[net.centers[0]][net.centers[1]], 3);
    first_centers.insert(net.centers[0]);
  }
  // All three antipodal center pairs occur.
  EXPECT_EQ(first_centers.size(), 3u);
}

TEST(EpsilonNetTest, PassesValidationAndOracle) {
  CounterRng g_rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(g_rng.UniformInt(12));
    const Graph g = testing::RandomGraph(n, g_rng.Uniform() * 0.6, g_rng);
    const int eps = 1 + static_cast<int>(g_rng.UniformInt(4));
    CounterRng rng(trial);
    const auto net = EpsilonNetClustering(g, eps, rng);
    const auto v = ValidateNet(g, net.clustering, net.centers, eps);
    ASSERT_TRUE(v.ok) << "trial " << trial << ": " << v.violations.front();
    ASSERT_TRUE(NetOracle(g, net.clustering, net.centers, eps));
    // Ties go to the smallest center id.
    const auto d = FloydWarshall(g);
    for (int u = 0; u < n; ++u) {
      int best = kInf, owner = -1;
      for (size_t k = 0; k < net.centers.size(); ++k) {
        if (d[net.centers[k]][u] < best) {
          best = d[net.centers[k]][u];
          owner = static_cast<int>(k);
        }
      }
      ASSERT_EQ(net.clustering.cluster_of(u), owner);
    }
  }
}

TEST(EpsilonNetTest, ClustersInsideCenterBall) {
  CounterRng rng(5);
  const Graph g = GenerateSmallWorld({1000, 10, 0.01}, rng);
  for (int eps : {2, 3, 4}) {
    const auto net = EpsilonNetClustering(g, eps, rng);
    const auto v = ValidateNet(g, net.clustering, net.centers, eps);
    ASSERT_TRUE(v.ok) << v.violations.front();
    for (int c = 0; c < net.clustering.num_clusters(); ++c) {
      const auto d = BfsDistances(g, net.centers[c], eps - 1);
      for (int u : net.clustering.members()[c]) EXPECT_NE(d[u], kUnreached);
    }
  }
}

TEST(EpsilonNetTest, DisconnectedGraph) {
  const std::vector<Edge> edges = {{0, 1}, {1, 2}, {3, 4}};
  const Graph g = Graph::FromEdges(6, edges);
  CounterRng rng(3);
  const auto net = EpsilonNetClustering(g, 3, rng);
  EXPECT_TRUE(ValidateNet(g, net.clustering, net.centers, 3).ok);
  EXPECT_EQ(net.clustering.num_clusters(), 3);
}

TEST(ValidateNetTest, AdjacentCentersFail) {
  const Clustering c({0, 1, 1, 1, 0, 0});
  const std::vector<int> centers = {0, 1};
  const auto v = ValidateNet(Cycle(6), c, centers, 3);
  EXPECT_FALSE(v.ok);
  ASSERT_FALSE(v.violations.empty());
  EXPECT_NE(v.violations.front().find("1 hops"), std::string::npos) << v.violations.front();
}

TEST(ValidateNetTest, AgreesWithOracleOnRandomPartitions) {
  CounterRng rng(77);
  int passes = 0, fails = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 1 + static_cast<int>(rng.UniformInt(12));
    const Graph g = testing::RandomGraph(n, rng.Uniform(), rng);
    const int eps = 1 + static_cast<int>(rng.UniformInt(3));
    Clustering c;
    std::vector<int> centers;
    if (rng.Bernoulli(0.3)) {
      auto net = EpsilonNetClustering(g, eps, rng);
      c = net.clustering;
      centers = net.centers;
      // Perturb one label to probe near-valid inputs.
      if (rng.Bernoulli(0.5) && c.num_clusters() > 1) {
        auto labels = c.assignment();
        const int v = static_cast<int>(rng.UniformInt(n));
        if (std::count(labels.begin(), labels.end(), labels[v]) > 1 &&
            std::find(centers.begin(), centers.end(), v) == centers.end()) {
          labels[v] = (labels[v] + 1) % c.num_clusters();
          c = Clustering(labels);
        }
      }
    } else {
      c = testing::RandomClustering(n, 1 + static_cast<int>(rng.UniformInt(n)), rng);
      for (const auto& m : c.members()) centers.push_back(m[rng.UniformInt(m.size())]);
    }
    const bool want = NetOracle(g, c, centers, eps);
    ASSERT_EQ(ValidateNet(g, c, centers, eps).ok, want) << "trial " << trial;
    (want ? passes : fails)++;
  }
  EXPECT_GT(passes, 100);
  EXPECT_GT(fails, 100);
}

TEST(ClusteringIoTest, RoundTripAndErrors) {
  const Clustering c({2, 0, 1, 1, 0});
  std::stringstream ss;
  WriteClustering(ss, c);
  EXPECT_EQ(ReadClustering(ss), c);
  std::istringstream gap("0\n2\n");
  EXPECT_THROW(ReadClustering(gap), ConfigError);
  std::istringstream junk("0\nx\n");
  EXPECT_THROW(ReadClustering(junk), ConfigError);
}

}  // namespace
}  // namespace netexp
