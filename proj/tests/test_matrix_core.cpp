#include <doctest.h>

#include "support/fixtures.hpp"

#include <czek/matrix_core.hpp>

#include <cmath>

using namespace czek;

namespace {

DataMatrix data(std::initializer_list<std::initializer_list<double>> rows) {
  DataMatrix d;
  const Index n = static_cast<Index>(rows.size());
  const Index p = static_cast<Index>(rows.begin()->size());
  d.values.resize(n, p);
  Index i = 0;
  for (const auto& r : rows) {
    Index j = 0;
    for (double v : r) d.values(i, j++) = v;
    ++i;
  }
  d.row_labels = default_labels(n);
  for (Index j = 0; j < p; ++j) d.col_labels.push_back("v" + std::to_string(j + 1));
  return d;
}

bool message_contains(const std::function<void()>& f, const std::string& needle) {
  try {
    f();
  } catch (const ValidationError& e) {
    return std::string(e.what()).find(needle) != std::string::npos;
  }
  return false;
}

}  // namespace

TEST_CASE("standardize two-value column") {
  const auto s = standardize(data({{1}, {3}}));
  CHECK(s.values(0, 0) == doctest::Approx(-0.7071067812).epsilon(1e-10));
  CHECK(s.values(1, 0) == doctest::Approx(0.7071067812).epsilon(1e-10));
}

TEST_CASE("standardize maps a constant column to zeros") {
  const auto s = standardize(data({{5, 1}, {5, 2}, {5, 4}}));
  for (Index i = 0; i < 3; ++i) CHECK(s.values(i, 0) == 0.0);
}

TEST_CASE("standardize uses the n-1 divisor") {
  const auto s = standardize(data({{1, 10}, {2, 20}, {3, 30}}));
  for (Index j = 0; j < 2; ++j) {
    CHECK(s.values(0, j) == doctest::Approx(-1.0));
    CHECK(s.values(1, j) == doctest::Approx(0.0));
    CHECK(s.values(2, j) == doctest::Approx(1.0));
  }
}

TEST_CASE("standardized columns have mean 0 and sd 1") {
  std::mt19937_64 g(11);
  DataMatrix d;
  d.values.resize(17, 4);
  for (Index i = 0; i < 17; ++i)
    for (Index j = 0; j < 4; ++j) d.values(i, j) = 100.0 * fixture::unit(g) - 30.0;
  d.row_labels = default_labels(17);
  d.col_labels = {"a", "b", "c", "d"};
  const auto s = standardize(d);
  for (Index j = 0; j < 4; ++j) {
    const double mean = s.values.col(j).mean();
    const double var = (s.values.col(j).array() - mean).square().sum() / 16.0;
    CHECK(std::abs(mean) < 1e-12);
    CHECK(var == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("built-in metrics") {
  const auto d = data({{0, 0}, {3, 4}});
  CHECK(compute_distance(d, Metric::euclidean)(0, 1) == doctest::Approx(5.0));
  CHECK(compute_distance(d, Metric::manhattan)(0, 1) == doctest::Approx(7.0));
  CHECK(compute_distance(d, Metric::maximum)(0, 1) == doctest::Approx(4.0));

  const auto same = data({{1, 1}, {1, 1}});
  for (Metric m : {Metric::euclidean, Metric::manhattan, Metric::maximum})
    CHECK(compute_distance(same, m)(0, 1) == 0.0);
}

TEST_CASE("distances are invariant to translating every row") {
  auto d = data({{0, 1, 2}, {3, -1, 7}, {2, 2, 2}, {-4, 0, 1}});
  auto shifted = d;
  shifted.values.rowwise() += Eigen::RowVector3d(10, -3, 0.5);
  for (Metric m : {Metric::euclidean, Metric::manhattan, Metric::maximum}) {
    const auto a = compute_distance(d, m);
    const auto b = compute_distance(shifted, m);
    CHECK((a.values() - b.values()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("custom hook is symmetrized and checked") {
  const auto d = data({{1, 0}, {4, 0}, {2, 0}});
  // deliberately asymmetric: the first argument counts double
  DistanceHook lopsided = [](const RowView& a, const RowView& b) {
    return std::abs(2 * a(0) - b(0));
  };
  const auto w = compute_distance(d, Metric::custom, lopsided);
  CHECK(w(0, 1) == doctest::Approx((std::abs(2 - 4.0) + std::abs(8 - 1.0)) / 2));
  CHECK(w(0, 1) == w(1, 0));
  CHECK(w(2, 2) == 0.0);

  DistanceHook negative = [](const RowView& a, const RowView& b) { return a(0) - b(0) - 100; };
  CHECK(message_contains([&] { compute_distance(d, Metric::custom, negative); }, "1"));
  CHECK_THROWS_AS(compute_distance(d, Metric::custom, DistanceHook{}), ValidationError);
  DistanceHook nan_hook = [](const RowView&, const RowView&) { return std::nan(""); };
  CHECK_THROWS_AS(compute_distance(d, Metric::custom, nan_hook), ValidationError);
}

TEST_CASE("metric names") {
  CHECK(parse_metric("euclidean") == Metric::euclidean);
  CHECK(parse_metric("manhattan") == Metric::manhattan);
  CHECK(parse_metric("maximum") == Metric::maximum);
  CHECK(to_string(Metric::manhattan) == "manhattan");
  CHECK_THROWS_AS(parse_metric("cosine"), ValidationError);
}

TEST_CASE("data validation") {
  auto d = data({{1, 2}, {3, 4}});
  CHECK_NOTHROW(validate(d));
  auto bad = d;
  bad.values(1, 1) = std::nan("");
  CHECK_THROWS_AS(validate(bad), ValidationError);
  auto dup = d;
  dup.row_labels = {"x", "x"};
  CHECK_THROWS_AS(validate(dup), ValidationError);
  CHECK_THROWS_AS(validate(data({{1, 2}})), ValidationError);
}

TEST_CASE("distance matrix contract") {
  Eigen::Matrix3d w;
  w << 0, 1, 2, 1, 0, 3, 2, 3, 0;
  CHECK_NOTHROW(DistanceMatrix(w, default_labels(3)));

  auto diag = w;
  diag(1, 1) = 0.5;
  CHECK_THROWS_AS(DistanceMatrix(diag, default_labels(3)), ValidationError);
  auto neg = w;
  neg(0, 2) = neg(2, 0) = -1;
  CHECK_THROWS_AS(DistanceMatrix(neg, default_labels(3)), ValidationError);
  auto inf = w;
  inf(0, 1) = inf(1, 0) = INFINITY;
  CHECK_THROWS_AS(DistanceMatrix(inf, default_labels(3)), ValidationError);
  auto asym = w;
  asym(0, 1) = 1.1;
  CHECK_THROWS_AS(DistanceMatrix(asym, default_labels(3)), ValidationError);
  CHECK_THROWS_AS(DistanceMatrix(w, {"a", "b"}), ValidationError);
  CHECK_THROWS_AS(DistanceMatrix(Eigen::MatrixXd::Zero(2, 3), default_labels(2)), ValidationError);

  auto tiny = w;
  tiny(0, 1) += 1e-12;  // inside the symmetry tolerance
  CHECK_NOTHROW(DistanceMatrix(tiny, default_labels(3)));
}

TEST_CASE("submatrix keeps the requested rows in order") {
  Eigen::Matrix3d w;
  w << 0, 1, 2, 1, 0, 3, 2, 3, 0;
  const DistanceMatrix d(w, {"a", "b", "c"});
  const std::vector<Index> keep{2, 0};
  const auto s = d.submatrix(keep);
  CHECK(s.size() == 2);
  CHECK(s(0, 1) == 2.0);
  CHECK(s.labels() == std::vector<std::string>{"c", "a"});
}

TEST_CASE("symmetrization of a single transcription slip") {
  Eigen::Matrix3d raw;
  raw << 0, 10.54, 7, 10.504, 0, 8, 7, 8, 0;
  const std::vector<std::string> labels{"Neandertal", "Galley Hill", "Spy"};

  try {
    validate_or_symmetrize(raw, labels, SymmetryMode::strict);
    FAIL("strict mode accepted an asymmetric matrix");
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("Neandertal") != std::string::npos);
    CHECK(msg.find("Galley Hill") != std::string::npos);
  }

  const auto r = validate_or_symmetrize(raw, labels, SymmetryMode::symmetrize);
  CHECK(r.distances(0, 1) == doctest::Approx(10.522).epsilon(1e-12));
  CHECK(r.distances(1, 0) == r.distances(0, 1));
  REQUIRE(r.asymmetric_pairs.size() == 1);
  CHECK(r.asymmetric_pairs[0].i == 0);
  CHECK(r.asymmetric_pairs[0].j == 1);
  CHECK(r.asymmetric_pairs[0].w_ij == 10.54);
  CHECK(r.asymmetric_pairs[0].w_ji == 10.504);
}

TEST_CASE("strict mode lists every asymmetric pair") {
  Eigen::Matrix3d raw;
  raw << 0, 1, 2, 1.5, 0, 3, 2, 3.5, 0;
  try {
    validate_or_symmetrize(raw, {"a", "b", "c"}, SymmetryMode::strict);
    FAIL("no error");
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("a") != std::string::npos);
    CHECK(msg.find("c") != std::string::npos);
    CHECK(msg.find("3.5") != std::string::npos);
    CHECK(msg.find("1.5") != std::string::npos);
  }
}

TEST_CASE("symmetric input passes through either mode unchanged") {
  const auto w = fixture::random_distances(6, 5);
  for (auto mode : {SymmetryMode::strict, SymmetryMode::symmetrize}) {
    const auto r = validate_or_symmetrize(w.values(), w.labels(), mode);
    CHECK(r.asymmetric_pairs.empty());
    CHECK(r.distances.values() == w.values());
  }
}

TEST_CASE("permutation basics") {
  const auto p = Permutation({2, 0, 1});
  CHECK(p.reversed() == Permutation({1, 0, 2}));
  CHECK(p.inverse() == std::vector<Index>{1, 2, 0});
  CHECK(p.one_based() == std::vector<long long>{3, 1, 2});
  const std::vector<long long> one{3, 1, 2};
  CHECK(Permutation::from_one_based(one) == p);
  CHECK(Permutation::identity(3) == Permutation({0, 1, 2}));
  CHECK(message_contains([] { Permutation({0, 0, 2}); }, "not a bijection"));
  CHECK_THROWS_AS(Permutation({0, 3, 1}), ValidationError);
  const std::vector<long long> zero{0, 1};
  CHECK_THROWS_AS(Permutation::from_one_based(zero), ValidationError);
}
