#include "doctest.h"
#include "lampk/errors.hpp"
#include "lampk/findim.hpp"

using namespace lampk;

TEST_CASE("algebra validation") {
  CHECK_THROWS_AS(validate_algebra({2}), Error);       // M_2 alone: method fails
  CHECK_THROWS_AS(validate_algebra({3, 2}), Error);
  CHECK_THROWS_AS(validate_algebra({}), Error);
  CHECK(validate_algebra({2, 1, 3}).block_sizes == std::vector<int>{1, 2, 3});
  CHECK(validate_algebra({1}).n() == 0);
  CHECK(validate_algebra({1, 2}).dimension() == 5);
  CHECK(validate_algebra({1, 2}).diag_dim() == 3);
}

TEST_CASE("algebra from a group") {
  CHECK(algebra_from_group(GroupModel::make("cyclic(2)")).blocks() == 2);
  CHECK(algebra_from_group(GroupModel::make("cyclic(3)")).n() == 2);
  CHECK(algebra_from_group(GroupModel::make("symmetric(3)")).n() == 2);
  CHECK(algebra_from_group(GroupModel::make("cyclic(2)")).symbolic());
  CHECK_THROWS_AS(algebra_from_group(GroupModel::make("lattice(1)")), Error);
}

TEST_CASE("minimal projections and rank vectors") {
  FinDimAlgebra a = validate_algebra({1, 2});
  auto mins = minimal_projections(a);
  REQUIRE(mins.size() == 2);
  CHECK(rank_vector(mins[0]) == std::vector<long long>{1, 0});
  CHECK(rank_vector(mins[1]) == std::vector<long long>{0, 1});
  CHECK(rank_vector(tensor_unit(a, 1)) == std::vector<long long>{1, 2});
  CHECK(rank_vector(tensor_unit(a, 2)) == std::vector<long long>{1, 2, 2, 4});

  // additive on orthogonal projections
  BlockElement sum = tensor_unit(a, 1);
  for (size_t i = 0; i < sum.diag.size(); ++i)
    sum.diag[i] = mins[0].diag[i] + mins[1].diag[i];
  auto r = rank_vector(sum);
  CHECK(r[0] == 1);
  CHECK(r[1] == 1);

  BlockElement bad = tensor_unit(a, 1);
  bad.diag[0] = 2;
  CHECK_THROWS_AS(rank_vector(bad), Error);
}

TEST_CASE("the projection family e_phi") {
  FinDimAlgebra a = validate_algebra({1, 1});
  CHECK(e_phi(a, {}) == tensor_unit(a, 0));  // empty support: e_phi = 1
  BlockElement p = e_phi(a, {1, 1});
  CHECK(p.is_projection());
  long long total = 0;
  for (int x : p.diag) total += x;
  CHECK(total == 1);  // rank-1 projection in the 4-dimensional algebra

  for (const std::vector<int>& labels :
       {std::vector<int>{0}, {1}, {0, 1}, {2, 0}, {1, 2}}) {
    BlockElement q = e_phi(validate_algebra({1, 2, 3}), labels);
    CHECK_FALSE(q.is_zero());
    CHECK(q.is_projection());
  }
  CHECK_THROWS_AS(e_phi(a, {2}), Error);  // label out of range
}

TEST_CASE("M matrices") {
  CHECK(m_matrix(validate_algebra({1, 2})) == IntMatrix{{1, 0}, {2, 1}});
  CHECK(m_matrix(validate_algebra({1})) == IntMatrix{{1}});
  CHECK(m_tensor(validate_algebra({1, 2}), 0).is_identity());
  CHECK(m_tensor(validate_algebra({1, 2}), 2) ==
        IntMatrix{{1, 0, 0, 0}, {2, 1, 0, 0}, {2, 0, 1, 0}, {4, 2, 2, 1}});

  for (const std::vector<int>& sizes : {std::vector<int>{1}, {1, 2}, {1, 2, 3}, {1, 4, 4}}) {
    FinDimAlgebra a = validate_algebra(sizes);
    CHECK(m_matrix(a).det() == 1);
    for (int t = 0; t <= 2; ++t) {
      IntMatrix mt = m_tensor(a, t);
      CHECK(smith_normal_form(mt).s.is_identity());
      CHECK(mt.mul(unimodular_inverse(mt)).is_identity());
    }
    // Kronecker functoriality
    CHECK(m_tensor(a, 3) == m_tensor(a, 1).kronecker(m_tensor(a, 2)));
  }
}

TEST_CASE("family verification") {
  CheckReport r = verify_family(validate_algebra({1, 1}), 2);
  CHECK(r.ok);
  CHECK(r.family_size == 4);  // labels {0,1}^2
  CHECK(r.rank == 4);
  CHECK(verify_family(validate_algebra({1, 2, 3}), 1).ok);
  CHECK(verify_family(validate_algebra({1}), 2).ok);
}

TEST_CASE("K0 diagram") {
  CHECK(verify_k0_diagram(validate_algebra({1, 2}), 1).ok);
  CHECK(verify_k0_diagram(validate_algebra({1}), 3).ok);
  CHECK(verify_k0_diagram(validate_algebra({1, 2, 2}), 2).ok);
  CHECK(verify_k0_diagram(validate_algebra({1, 3, 4}), 2).ok);
}

TEST_CASE("function algebra isomorphism") {
  CheckReport r = verify_function_algebra_iso(validate_algebra({1, 1}), 2);
  CHECK(r.ok);
  CHECK(r.span_dimension == 4);
  CHECK(verify_function_algebra_iso(validate_algebra({1}), 2).ok);  // n = 0
  CHECK(verify_function_algebra_iso(validate_algebra({1, 2, 3}), 2).ok);
}

TEST_CASE("caps") {
  Caps tight;
  tight.tensor_dim = 8;
  CHECK_THROWS_AS(tensor_unit(validate_algebra({1, 2}), 3, tight), Error);
  CHECK_THROWS_AS(verify_k0_diagram(validate_algebra({1, 4, 4, 4}), 4), Error);
}
