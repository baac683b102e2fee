#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <tielab/partition.hpp>
#include <tielab/rng.hpp>

#include <algorithm>
#include <set>

using namespace tielab;

TEST_CASE("basic accessors") {
  Partition lam{3, 1};
  CHECK(part(lam, 0) == 3);
  CHECK(part(lam, 1) == 1);
  CHECK(part(lam, 2) == 0);
  CHECK(part(lam, 17) == 0);
  CHECK(weight(lam) == 4);
  CHECK(weight(Partition{}) == 0);
}

TEST_CASE("normalize strips trailing zeros") {
  Partition lam{4, 2, 0, 0};
  normalize(lam);
  CHECK(lam == Partition{4, 2});
  Partition empty{0, 0};
  normalize(empty);
  CHECK(empty.empty());
}

TEST_CASE("is_partition") {
  CHECK(is_partition(Partition{}));
  CHECK(is_partition(Partition{5}));
  CHECK(is_partition(Partition{3, 3, 1}));
  CHECK(!is_partition(Partition{1, 2}));
  CHECK(!is_partition(Partition{2, -1}));
  CHECK(!is_partition(Partition{2, 0, 1}));
}

TEST_CASE("conjugate is an involution and matches hand values") {
  CHECK(conjugate(Partition{3, 1}) == Partition{2, 1, 1});
  CHECK(conjugate(Partition{}) == Partition{});
  CHECK(conjugate(Partition{1, 1, 1, 1}) == Partition{4});
  CHECK(conjugate(Partition{4, 2, 1}) == Partition{3, 2, 1, 1});
  for (const auto& lam : enumerate_partitions(9)) {
    CHECK(conjugate(conjugate(lam)) == lam);
    CHECK(weight(conjugate(lam)) == weight(lam));
  }
}

TEST_CASE("odd_rows and odd_cols") {
  CHECK(odd_rows(Partition{}) == 0);
  CHECK(odd_rows(Partition{3, 1}) == 2);
  CHECK(odd_rows(Partition{2, 2}) == 0);
  CHECK(odd_rows(Partition{5, 4, 3}) == 2);
  // odd columns of lambda = odd rows of the conjugate
  CHECK(odd_cols(Partition{3, 1}) == odd_rows(Partition{2, 1, 1}));
  CHECK(odd_cols(Partition{3, 1}) == 2);
  CHECK(odd_cols(Partition{2, 2}) == 2);
  for (const auto& lam : enumerate_partitions(9)) {
    CHECK(odd_cols(lam) == odd_rows(conjugate(lam)));
    // parity of the weight matches parity of the odd-row count
    CHECK((weight(lam) - odd_rows(lam)) % 2 == 0);
  }
}

TEST_CASE("containment and horizontal strips") {
  CHECK(contains(Partition{3, 2}, Partition{2, 1}));
  CHECK(contains(Partition{3, 2}, Partition{}));
  CHECK(!contains(Partition{3, 2}, Partition{4}));
  CHECK(!contains(Partition{3, 2}, Partition{2, 2, 1}));

  CHECK(horizontal_strip(Partition{3, 1}, Partition{2, 1}));
  CHECK(horizontal_strip(Partition{3, 1}, Partition{1}));
  // two cells stacked in one column: not a horizontal strip
  CHECK(!horizontal_strip(Partition{2, 2}, Partition{1}));
  CHECK(horizontal_strip(Partition{2, 2}, Partition{2, 1}));
  CHECK(horizontal_strip(Partition{5}, Partition{}));
  // mu not contained in lam
  CHECK(!horizontal_strip(Partition{3}, Partition{4}));
}

TEST_CASE("partitions_of counts and order") {
  int expected[] = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
  for (int n = 0; n <= 10; ++n) {
    auto ps = partitions_of(n);
    CHECK((int)ps.size() == expected[n]);
    CHECK(count_partitions(n) == expected[n]);
    std::set<Partition> seen;
    for (const auto& p : ps) {
      CHECK(is_partition(p));
      CHECK(weight(p) == n);
      seen.insert(p);
    }
    CHECK((int)seen.size() == (int)ps.size());
  }
}

TEST_CASE("enumerate_partitions is graded and complete") {
  auto all = enumerate_partitions(10);
  CHECK((int)all.size() == 139);  // sum of p(0..10)
  int prev = 0;
  for (const auto& lam : all) {
    CHECK(weight(lam) >= prev);
    prev = weight(lam);
  }
}

TEST_CASE("for_each_subdiagram visits exactly the contained shapes") {
  // (2,1) has containment-subdiagrams {}, (1), (2), (1,1), (2,1): five total
  int count = 0;
  for_each_subdiagram(Partition{2, 1}, 0, [&](const Partition&) { ++count; });
  CHECK(count == 5);
  // floor of one part: every visited mu has mu_1 >= ... handled by min length
  count = 0;
  for_each_subdiagram(Partition{2, 1}, 1, [&](const Partition& mu) {
    CHECK((int)mu.size() >= 1);
    ++count;
  });
  CHECK(count == 4);

  for (const auto& lam : enumerate_partitions(8)) {
    std::set<Partition> via_visit;
    for_each_subdiagram(lam, 0, [&](const Partition& mu) {
      CHECK(contains(lam, mu));
      via_visit.insert(mu);
    });
    std::set<Partition> via_filter;
    for (const auto& mu : enumerate_partitions(weight(lam))) {
      if (contains(lam, mu)) via_filter.insert(mu);
    }
    CHECK(via_visit == via_filter);
  }
}

TEST_CASE("sample_q_partition matches the q-measure") {
  const double z = 0.4;
  auto eng = make_engine(20260817, 0);
  const int nsamp = 200000;
  int empties = 0, first_le_2 = 0;
  double mean_weight = 0;
  for (int i = 0; i < nsamp; ++i) {
    auto kap = sample_q_partition(eng, z);
    CHECK(is_partition(kap));
    if (kap.empty()) ++empties;
    if (part(kap, 0) <= 2) ++first_le_2;
    mean_weight += weight(kap);
  }
  mean_weight /= nsamp;
  // P(empty) = prod (1-z^j); E|kappa| = sum j z^j/(1-z^j)
  double p_empty = 1, mean = 0;
  for (int j = 1; j < 200; ++j) {
    double zj = std::pow(z, j);
    p_empty *= 1 - zj;
    mean += j * zj / (1 - zj);
  }
  double sd_empty = std::sqrt(p_empty * (1 - p_empty) / nsamp);
  CHECK(std::abs((double)empties / nsamp - p_empty) < 4 * sd_empty);
  // P(kappa_1 <= k) = prod_{j>k} (1-z^j) ... = (z;z)_inf / (z;z)_k evaluated as a ratio
  double p_le2 = 1;
  for (int j = 3; j < 200; ++j) p_le2 *= 1 - std::pow(z, j);
  double sd_le2 = std::sqrt(p_le2 * (1 - p_le2) / nsamp);
  CHECK(std::abs((double)first_le_2 / nsamp - p_le2) < 4 * sd_le2);
  CHECK(std::abs(mean_weight - mean) < 0.02);
  // degenerate rate gives the empty partition
  auto kap0 = sample_q_partition(eng, 0.0);
  CHECK(kap0.empty());
}
