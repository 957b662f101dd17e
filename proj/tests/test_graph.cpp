#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <limits>
#include <random>
#include <sstream>
#include <tuple>

#include "doctest.h"
#include "helpers.hpp"
#include "labelprop/graph.hpp"

using namespace labelprop;

TEST_CASE("build_graph groups arcs by source and keeps input order") {
  const std::vector<Arc> arcs{{2, 0, 1.0}, {0, 1, 2.0}, {2, 1, 3.0}, {0, 2, 4.0}};
  const Graph g = build_graph(3, arcs);
  CHECK(g.num_vertices() == 3);
  CHECK(g.num_arcs() == 4);
  CHECK(g.offsets == std::vector<EdgeId>{0, 2, 2, 4});
  CHECK(g.targets == std::vector<VertexId>{1, 2, 0, 1});
  CHECK(g.weights == std::vector<Weight>{2.0, 4.0, 1.0, 3.0});
  CHECK(g.weighted_degrees == std::vector<Weight>{6.0, 0.0, 4.0});
  CHECK(g.total_weight_2m == 10.0);
  CHECK(g.degree(0) == 2);
  CHECK(g.degree(1) == 0);
}

TEST_CASE("build_graph rejects out-of-range endpoints and bad weights") {
  CHECK_THROWS_AS(build_graph(2, std::vector<Arc>{{0, 2, 1.0}}), BoundsError);
  CHECK_THROWS_AS(build_graph(2, std::vector<Arc>{{2, 0, 1.0}}), BoundsError);
  CHECK_THROWS_AS(build_graph(2, std::vector<Arc>{{0, 1, -1.0}}),
                  ValidationError);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(build_graph(2, std::vector<Arc>{{0, 1, nan}}),
                  ValidationError);
}

TEST_CASE("empty graph") {
  const Graph g = build_graph(0, {});
  CHECK(g.num_vertices() == 0);
  CHECK(g.num_arcs() == 0);
  CHECK(g.total_weight_2m == 0.0);
  CHECK(validate(g).empty());
}

TEST_CASE("edge list: basic symmetrized load") {
  std::istringstream in("0 1\n1 2\n");
  const Graph g = load_edge_list(in);
  CHECK(g.num_vertices() == 3);
  CHECK(g.num_arcs() == 4);
  CHECK(g.weighted_degrees == std::vector<Weight>{1.0, 2.0, 1.0});
  CHECK(g.total_weight_2m == 4.0);
  // Vertex 1's arcs appear in input order: the reverse of (0,1), then (1,2).
  CHECK(g.targets[g.offsets[1]] == 0);
  CHECK(g.targets[g.offsets[1] + 1] == 2);
  CHECK(validate(g).empty());
}

TEST_CASE("edge list: weighted column and default weight") {
  std::istringstream in("0 1 2.5\n2 3\n");
  EdgeListOptions opt;
  opt.weighted = true;
  const Graph g = load_edge_list(in, opt);
  CHECK(g.weighted_degrees[0] == 2.5);
  CHECK(g.weighted_degrees[3] == 1.0);
  CHECK(g.total_weight_2m == 7.0);
}

TEST_CASE("edge list: third column is ignored when not weighted") {
  std::istringstream in("0 1 9.0\n");
  const Graph g = load_edge_list(in);
  CHECK(g.total_weight_2m == 2.0);
}

TEST_CASE("edge list: comments and blank lines") {
  std::istringstream in("% comment\n# comment\n\n   \n0 1\n");
  const Graph g = load_edge_list(in);
  CHECK(g.num_arcs() == 2);
}

TEST_CASE("edge list: one-indexed ids") {
  std::istringstream good("1 2\n");
  EdgeListOptions opt;
  opt.one_indexed = true;
  const Graph g = load_edge_list(good, opt);
  CHECK(g.num_vertices() == 2);
  CHECK(g.neighbors(0)[0] == 1);

  std::istringstream bad("0 1\n");
  CHECK_THROWS_AS(load_edge_list(bad, opt), BoundsError);
}

TEST_CASE("edge list: malformed lines carry their line number") {
  std::istringstream one_field("0\n");
  CHECK_THROWS_WITH_AS(load_edge_list(one_field),
                       doctest::Contains("line 1"), ParseError);

  std::istringstream four_fields("0 1\n0 1 2 3\n");
  CHECK_THROWS_WITH_AS(load_edge_list(four_fields),
                       doctest::Contains("line 2"), ParseError);

  std::istringstream letters("a b\n");
  CHECK_THROWS_AS(load_edge_list(letters), ParseError);

  std::istringstream bad_weight("0 1 abc\n");
  EdgeListOptions opt;
  opt.weighted = true;
  CHECK_THROWS_AS(load_edge_list(bad_weight, opt), ParseError);
}

TEST_CASE("edge list: negative ids and weights rejected") {
  std::istringstream neg_id("-1 0\n");
  CHECK_THROWS_AS(load_edge_list(neg_id), BoundsError);

  std::istringstream neg_w("0 1 -2.0\n");
  EdgeListOptions opt;
  opt.weighted = true;
  CHECK_THROWS_AS(load_edge_list(neg_w, opt), ValidationError);
}

TEST_CASE("edge list: self-loop stored once under symmetrization") {
  std::istringstream in("0 0\n0 1\n");
  const Graph g = load_edge_list(in);
  CHECK(g.num_arcs() == 3);
  CHECK(g.weighted_degrees[0] == 2.0);
  CHECK(validate(g).empty());
}

TEST_CASE("edge list: duplicates are kept as parallel edges") {
  std::istringstream in("0 1\n0 1\n");
  const Graph g = load_edge_list(in);
  CHECK(g.num_arcs() == 4);
  CHECK(g.weighted_degrees[0] == 2.0);
}

TEST_CASE("edge list: pre-symmetrized input with symmetrize off") {
  std::istringstream in("0 1\n1 0\n");
  EdgeListOptions opt;
  opt.symmetrize = false;
  const Graph g = load_edge_list(in, opt);
  CHECK(g.num_arcs() == 2);
  CHECK(validate(g).empty());
}

TEST_CASE("matrix market: symmetric pattern fixture file") {
  const Graph g =
      load_matrix_market_file(LABELPROP_TEST_DATA_DIR "/two_triangles.mtx");
  CHECK(g.num_vertices() == 6);
  CHECK(g.num_arcs() == 14);
  CHECK(g.weighted_degrees ==
        std::vector<Weight>{2.0, 2.0, 3.0, 2.0, 2.0, 3.0});
  CHECK(g.total_weight_2m == 14.0);
  CHECK(validate(g).empty());
}

TEST_CASE("matrix market: general entries are symmetrized without dedup") {
  std::istringstream in(
      "%%MatrixMarket matrix coordinate real general\n"
      "2 2 2\n"
      "1 2 3.5\n"
      "2 1 3.5\n");
  const Graph g = load_matrix_market(in);
  CHECK(g.num_arcs() == 4);  // each entry contributes its mirror
  CHECK(g.weighted_degrees[0] == 7.0);
  CHECK(validate(g).empty());
}

TEST_CASE("matrix market: integer field and diagonal entries") {
  std::istringstream in(
      "%%MatrixMarket matrix coordinate integer symmetric\n"
      "3 3 2\n"
      "2 2 4\n"
      "3 1 2\n");
  const Graph g = load_matrix_market(in);
  CHECK(g.num_arcs() == 3);  // the diagonal entry is stored once
  CHECK(g.weighted_degrees == std::vector<Weight>{2.0, 4.0, 2.0});
}

TEST_CASE("matrix market: rectangular shapes use the larger side") {
  std::istringstream in(
      "%%MatrixMarket matrix coordinate pattern general\n"
      "3 5 1\n"
      "1 4\n");
  const Graph g = load_matrix_market(in);
  CHECK(g.num_vertices() == 5);
  CHECK(g.num_arcs() == 2);
}

TEST_CASE("matrix market: zero entries is a valid edgeless graph") {
  std::istringstream in(
      "%%MatrixMarket matrix coordinate pattern symmetric\n"
      "4 4 0\n");
  const Graph g = load_matrix_market(in);
  CHECK(g.num_vertices() == 4);
  CHECK(g.num_arcs() == 0);
}

TEST_CASE("matrix market: field arity is enforced") {
  std::istringstream pattern_with_value(
      "%%MatrixMarket matrix coordinate pattern general\n"
      "2 2 1\n"
      "1 2 1.0\n");
  CHECK_THROWS_AS(load_matrix_market(pattern_with_value), ParseError);

  std::istringstream real_without_value(
      "%%MatrixMarket matrix coordinate real general\n"
      "2 2 1\n"
      "1 2\n");
  CHECK_THROWS_AS(load_matrix_market(real_without_value), ParseError);
}

TEST_CASE("matrix market: entry count must match the header") {
  std::istringstream too_few(
      "%%MatrixMarket matrix coordinate pattern general\n"
      "3 3 3\n"
      "1 2\n"
      "2 3\n");
  CHECK_THROWS_WITH_AS(load_matrix_market(too_few),
                       doctest::Contains("declares 3"), ValidationError);

  std::istringstream too_many(
      "%%MatrixMarket matrix coordinate pattern general\n"
      "3 3 1\n"
      "1 2\n"
      "2 3\n");
  CHECK_THROWS_AS(load_matrix_market(too_many), ValidationError);
}

TEST_CASE("matrix market: unsupported headers") {
  std::istringstream no_banner("3 3 1\n1 2\n");
  CHECK_THROWS_AS(load_matrix_market(no_banner), FormatError);

  std::istringstream array(
      "%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n4\n");
  CHECK_THROWS_AS(load_matrix_market(array), FormatError);

  std::istringstream complex_field(
      "%%MatrixMarket matrix coordinate complex general\n1 1 1\n1 1 1 0\n");
  CHECK_THROWS_AS(load_matrix_market(complex_field), FormatError);

  std::istringstream hermitian(
      "%%MatrixMarket matrix coordinate real hermitian\n1 1 1\n1 1 1\n");
  CHECK_THROWS_AS(load_matrix_market(hermitian), FormatError);

  std::istringstream skew(
      "%%MatrixMarket matrix coordinate real skew-symmetric\n2 2 1\n2 1 1\n");
  CHECK_THROWS_AS(load_matrix_market(skew), FormatError);
}

TEST_CASE("matrix market: out-of-range and negative entries") {
  std::istringstream out_of_range(
      "%%MatrixMarket matrix coordinate pattern general\n"
      "2 2 1\n"
      "1 3\n");
  CHECK_THROWS_AS(load_matrix_market(out_of_range), BoundsError);

  std::istringstream negative(
      "%%MatrixMarket matrix coordinate real general\n"
      "2 2 1\n"
      "1 2 -1.0\n");
  CHECK_THROWS_AS(load_matrix_market(negative), ValidationError);
}

TEST_CASE("edge list round trip preserves the exact representation") {
  std::mt19937 rng(7001);
  testutil::RandomGraphOptions opt;
  opt.weighted = true;
  opt.anchor_last_vertex = true;  // keep N inferable from the listing
  for (int rep = 0; rep < 20; ++rep) {
    const Graph g = testutil::random_graph(rng, opt);
    std::ostringstream out;
    write_edge_list(g, out);
    std::istringstream in(out.str());
    EdgeListOptions lopt;
    lopt.weighted = true;
    lopt.symmetrize = false;  // the writer emits every stored arc
    const Graph back = load_edge_list(in, lopt);
    CHECK(back.offsets == g.offsets);
    CHECK(back.targets == g.targets);
    CHECK(back.weights == g.weights);
    CHECK(back.weighted_degrees == g.weighted_degrees);
    CHECK(back.total_weight_2m == g.total_weight_2m);
  }
}

TEST_CASE("matrix market round trip preserves the arc multiset") {
  std::mt19937 rng(7002);
  for (const bool weighted : {false, true}) {
    testutil::RandomGraphOptions opt;
    opt.weighted = weighted;
    opt.anchor_last_vertex = true;
    for (int rep = 0; rep < 10; ++rep) {
      const Graph g = testutil::random_graph(rng, opt);
      std::ostringstream out;
      write_matrix_market(g, out);
      std::istringstream in(out.str());
      const Graph back = load_matrix_market(in);
      REQUIRE(back.num_vertices() == g.num_vertices());
      REQUIRE(back.num_arcs() == g.num_arcs());
      for (VertexId v = 0; v < g.num_vertices(); ++v) {
        auto collect = [v](const Graph& gr) {
          std::vector<std::pair<VertexId, Weight>> arcs;
          for (EdgeId k = gr.offsets[v]; k < gr.offsets[v + 1]; ++k) {
            arcs.emplace_back(gr.targets[k], gr.weights[k]);
          }
          std::sort(arcs.begin(), arcs.end());
          return arcs;
        };
        CHECK(collect(back) == collect(g));
      }
      // The writer is deterministic: serializing twice gives the same bytes.
      std::ostringstream again;
      write_matrix_market(g, again);
      CHECK(out.str() == again.str());
    }
  }
}

TEST_CASE("binary CSR round trip is bit-exact") {
  std::mt19937 rng(7003);
  testutil::RandomGraphOptions opt;
  opt.weighted = true;
  for (int rep = 0; rep < 20; ++rep) {
    const Graph g = testutil::random_graph(rng, opt);
    std::ostringstream out(std::ios::binary);
    save_csr_binary(g, out);
    std::istringstream in(out.str(), std::ios::binary);
    const Graph back = load_csr_binary(in);
    CHECK(back.offsets == g.offsets);
    CHECK(back.targets == g.targets);
    CHECK(back.weights == g.weights);
    CHECK(back.weighted_degrees == g.weighted_degrees);
    CHECK(back.total_weight_2m == g.total_weight_2m);

    std::ostringstream again(std::ios::binary);
    save_csr_binary(back, again);
    CHECK(out.str() == again.str());
  }
}

TEST_CASE("binary CSR rejects corrupt streams") {
  const Graph g = testutil::triangle();
  std::ostringstream out(std::ios::binary);
  save_csr_binary(g, out);
  const std::string bytes = out.str();

  std::string bad_magic = bytes;
  bad_magic[0] = 'X';
  std::istringstream in1(bad_magic, std::ios::binary);
  CHECK_THROWS_AS(load_csr_binary(in1), FormatError);

  std::string bad_version = bytes;
  bad_version[8] = 9;  // version field follows the 8 magic bytes
  std::istringstream in2(bad_version, std::ios::binary);
  CHECK_THROWS_AS(load_csr_binary(in2), FormatError);

  std::istringstream in3(bytes.substr(0, bytes.size() / 2), std::ios::binary);
  CHECK_THROWS_AS(load_csr_binary(in3), ValidationError);
}

TEST_CASE("validate flags a missing reverse arc") {
  Graph g;
  g.offsets = {0, 1, 1};
  g.targets = {1};
  g.weights = {1.0};
  g.weighted_degrees = {1.0, 0.0};
  g.total_weight_2m = 1.0;
  const auto violations = validate(g);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].invariant == "symmetry");
  CHECK(violations[0].index == 0);
}

TEST_CASE("validate flags mismatched reverse weights") {
  const Graph g = build_graph(
      2, std::vector<Arc>{{0, 1, 2.0}, {1, 0, 3.0}});
  const auto violations = validate(g);
  REQUIRE(!violations.empty());
  CHECK(violations[0].invariant == "symmetry");
}

TEST_CASE("validate flags stale cached sums") {
  Graph g = testutil::triangle();
  g.weighted_degrees[0] += 1.0;
  const auto violations = validate(g);
  bool degree_flagged = false;
  bool total_flagged = false;
  for (const auto& v : violations) {
    if (v.invariant == "weighted_degree" && v.index == 0) degree_flagged = true;
    if (v.invariant == "total_weight") total_flagged = true;
  }
  CHECK(degree_flagged);
  CHECK(total_flagged);
}

TEST_CASE("validate flags structural corruption") {
  Graph g = testutil::triangle();
  g.targets[0] = 99;
  bool found = false;
  for (const auto& v : validate(g)) {
    if (v.invariant == "target_range" && v.index == 0) found = true;
  }
  CHECK(found);

  Graph h = testutil::triangle();
  h.weights[2] = -1.0;
  found = false;
  for (const auto& v : validate(h)) {
    if (v.invariant == "weight_range" && v.index == 2) found = true;
  }
  CHECK(found);
}

TEST_CASE("validate passes on all loaders' output") {
  std::mt19937 rng(7004);
  for (int rep = 0; rep < 20; ++rep) {
    testutil::RandomGraphOptions opt;
    opt.weighted = rep % 2 == 0;
    const Graph g = testutil::random_graph(rng, opt);
    CHECK(validate(g).empty());
  }
}

TEST_CASE("file helpers raise IoError for unusable paths") {
  CHECK_THROWS_AS(load_edge_list_file("/nonexistent/nope.txt"), IoError);
  CHECK_THROWS_AS(load_matrix_market_file("/nonexistent/nope.mtx"), IoError);
  CHECK_THROWS_AS(load_csr_binary_file("/nonexistent/nope.csrbin"), IoError);
  CHECK_THROWS_AS(
      write_edge_list_file(testutil::triangle(), "/nonexistent/dir/x.txt"),
      IoError);
}
