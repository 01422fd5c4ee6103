#include <set>

#include "doctest.h"
#include "lampk/errors.hpp"
#include "lampk/group.hpp"

using namespace lampk;

TEST_CASE("group construction") {
  CHECK(GroupModel::make("cyclic(1)")->order() == 1);
  CHECK(GroupModel::make("symmetric(3)")->order() == 6);
  CHECK(GroupModel::make("dihedral(4)")->order() == 8);
  CHECK(GroupModel::make("cyclic(2)xcyclic(2)")->order() == 4);
  CHECK_FALSE(GroupModel::make("lattice(2)")->is_finite());
  CHECK_FALSE(GroupModel::make("free(2)")->is_finite());
  CHECK_THROWS_AS(GroupModel::make("lattice(0)"), Error);
  CHECK_THROWS_AS(GroupModel::make("nonsense(3)"), Error);

  Caps tight;
  tight.group_order = 5;
  CHECK_THROWS_AS(GroupModel::make("symmetric(3)", tight), Error);
}

TEST_CASE("explicit tables are validated") {
  // Z/2 as a table
  auto z2 = GroupModel::from_table({{0, 1}, {1, 0}});
  CHECK(z2->order() == 2);
  // not a Latin square
  CHECK_THROWS_AS(GroupModel::from_table({{0, 0}, {1, 1}}), Error);
  // Z/2 with the identity at index 1 is still a group
  CHECK(GroupModel::from_table({{1, 0}, {0, 1}})->order() == 2);
  // a Latin square (quasigroup) without any identity element
  CHECK_THROWS_AS(GroupModel::from_table({{0, 2, 1}, {2, 1, 0}, {1, 0, 2}}), Error);
}

TEST_CASE("group axioms on sampled triples") {
  for (const char* d : {"symmetric(3)", "dihedral(4)", "cyclic(6)"}) {
    GroupPtr g = GroupModel::make(d);
    auto els = g->elements();
    Elem e = g->identity();
    for (const Elem& a : els) {
      CHECK(g->mul(a, g->inv(a)) == e);
      CHECK(g->mul(e, a) == a);
      for (const Elem& b : els)
        for (const Elem& c : els)
          CHECK(g->mul(g->mul(a, b), c) == g->mul(a, g->mul(b, c)));
    }
  }
}

TEST_CASE("conjugacy classes") {
  CHECK(conjugacy_classes(GroupModel::make("cyclic(2)")).count() == 2);

  auto s3 = conjugacy_classes(GroupModel::make("symmetric(3)"));
  CHECK(s3.count() == 3);
  std::multiset<size_t> sizes;
  for (const auto& c : s3.classes) sizes.insert(c.size());
  CHECK(sizes == std::multiset<size_t>{1, 2, 3});
  CHECK(s3.classes[0].size() == 1);  // identity class first
  CHECK(s3.nontrivial().size() == 2);

  CHECK(conjugacy_classes(GroupModel::make("dihedral(4)")).count() == 5);

  // partition: class sizes sum to |G| and divide |G|
  for (const char* d : {"symmetric(3)", "dihedral(4)", "cyclic(2)xcyclic(4)"}) {
    GroupPtr g = GroupModel::make(d);
    auto cc = conjugacy_classes(g);
    size_t total = 0;
    for (const auto& c : cc.classes) {
      total += c.size();
      CHECK(g->order() % c.size() == 0);
    }
    CHECK(total == static_cast<size_t>(g->order()));
  }
}

TEST_CASE("subgroup lattice") {
  CHECK(all_subgroups(GroupModel::make("cyclic(1)")).size() == 1);
  CHECK(all_subgroups(GroupModel::make("cyclic(4)")).size() == 3);

  GroupPtr s3 = GroupModel::make("symmetric(3)");
  auto subs = all_subgroups(s3);
  CHECK(subs.size() == 6);
  std::multiset<long long> orders;
  for (const auto& h : subs) {
    orders.insert(h.order());
    CHECK(s3->order() % h.order() == 0);  // Lagrange
  }
  CHECK(orders == std::multiset<long long>{1, 2, 2, 2, 3, 6});

  CHECK(finite_subgroup_classes(s3).size() == 4);
  CHECK(finite_subgroup_classes(GroupModel::make("cyclic(4)")).size() == 3);
  auto tf = finite_subgroup_classes(GroupModel::make("free(2)"));
  REQUIRE(tf.size() == 1);
  CHECK(tf[0].rep.is_trivial());
}

TEST_CASE("normalizers") {
  GroupPtr s3 = GroupModel::make("symmetric(3)");
  CHECK(normalizer(Subgroup::trivial(s3)).whole_group);
  for (const Subgroup& h : all_subgroups(s3)) {
    Subgroup n = normalizer(h);
    if (h.order() == 2) CHECK(n.same_as(h));
    if (h.order() == 3) CHECK(n.order() == 6);
    for (const Elem& e : h.elems) CHECK(n.contains(e));  // C subset of N_C
  }
}

TEST_CASE("coset spaces") {
  GroupPtr c4 = GroupModel::make("cyclic(4)");
  CHECK(coset_space(Subgroup::whole(c4)).size() == 1);
  for (const Subgroup& h : all_subgroups(c4))
    if (h.order() == 2) CHECK(coset_space(h).size() == 2);
  CosetSpace z = coset_space(Subgroup::trivial(GroupModel::make("lattice(1)")));
  CHECK(z.lazy);
  CHECK(z.rep_of(Elem{{7}}) == Elem{{7}});
}

TEST_CASE("wreath products") {
  GroupPtr c2 = GroupModel::make("cyclic(2)");
  GroupPtr c3 = GroupModel::make("cyclic(3)");
  GroupPtr w22 = GroupModel::wreath_product(c2, c2);
  CHECK(w22->order() == 8);
  CHECK(conjugacy_classes(w22).count() == 5);  // isomorphic to dihedral(4)

  GroupPtr w32 = GroupModel::wreath_product(c3, c2);
  CHECK(w32->order() == 18);
  CHECK(conjugacy_classes(w32).count() == 9);

  CHECK(GroupModel::wreath_product(c2, c3)->order() == 24);
  Caps tight;
  tight.group_order = 20;
  CHECK_THROWS_AS(GroupModel::wreath_product(c2, c3, tight), Error);
}

TEST_CASE("balls in infinite models") {
  GroupPtr z = GroupModel::make("lattice(1)");
  auto b2 = z->ball(2);
  REQUIRE(b2.size() == 5);
  CHECK(b2.front() == Elem{{-2}});
  CHECK(b2.back() == Elem{{2}});

  GroupPtr f2 = GroupModel::make("free(2)");
  CHECK(f2->ball(1).size() == 5);
  CHECK(f2->ball(2).size() == 17);  // 1 + 4 + 4*3

  for (int r = 0; r <= 4; ++r) {
    CHECK(static_cast<long long>(GroupModel::make("lattice(2)")->ball(r).size()) ==
          lattice_ball_size(2, r));
    CHECK(static_cast<long long>(f2->ball(r).size()) == free_ball_size(2, r));
    CHECK(lattice_ball_size(2, r) == (2LL * r + 1) * (2 * r + 1));
  }
  // ball(r) is a prefix-closed subset of ball(r+1)
  auto b3 = f2->ball(3);
  std::set<std::vector<int32_t>> big;
  for (const Elem& e : b3) big.insert(e.v);
  for (const Elem& e : f2->ball(2)) CHECK(big.count(e.v) == 1);
}

TEST_CASE("free group arithmetic") {
  GroupPtr f2 = GroupModel::make("free(2)");
  Elem a{{1}}, ai{{-1}}, b{{2}};
  CHECK(f2->mul(a, ai) == f2->identity());
  CHECK(f2->mul(a, b) == Elem{{1, 2}});
  CHECK(f2->inv(Elem{{1, 2}}) == Elem{{-2, -1}});
  CHECK(f2->less(a, ai));  // shortlex with a < a^{-1} < b < b^{-1}
  CHECK(f2->less(ai, b));
  CHECK(f2->less(b, Elem{{1, 1}}));  // length before lex
}
