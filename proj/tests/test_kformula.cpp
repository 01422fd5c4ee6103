#include "doctest.h"
#include "lampk/errors.hpp"
#include "lampk/kformula.hpp"

using namespace lampk;

TEST_CASE("formal K-group arithmetic") {
  FormalKGroup a, b, c;
  a.k0.finite_rank = 2;
  a.k1.symbolic["K1(X)"] = 1;
  b.k0.finite_rank = 3;
  b.k0.countably_infinite = true;
  c.k1.finite_rank = 1;
  c.k1.symbolic["K1(X)"] = 2;

  CHECK(a.plus(b) == b.plus(a));
  CHECK(a.plus(b.plus(c)) == a.plus(b).plus(c));
  CHECK(a.plus(FormalKGroup::zero()) == a);
  FormalKGroup s = a.plus(c);
  CHECK(s.k1.symbolic.at("K1(X)") == 3);
  CHECK(a.scaled(3).k0.finite_rank == 6);
  CHECK(a.scaled(0) == FormalKGroup::zero());
}

TEST_CASE("base K table") {
  CHECK(base_k(GroupModel::make("symmetric(3)")).k0.finite_rank == 3);
  CHECK(base_k(GroupModel::make("symmetric(3)")).k1.finite_rank == 0);
  FormalKGroup z = base_k(GroupModel::make("lattice(1)"));
  CHECK(z.k0.finite_rank == 1);
  CHECK(z.k1.finite_rank == 1);
  FormalKGroup z3 = base_k(GroupModel::make("lattice(3)"));
  CHECK(z3.k0.finite_rank == 4);
  CHECK(z3.k1.finite_rank == 4);
  FormalKGroup f2 = base_k(GroupModel::make("free(2)"));
  CHECK(f2.k0.finite_rank == 1);
  CHECK(f2.k1.finite_rank == 2);

  BaseKTable t;
  t.overrides["lattice(1)"] = {7, 9};
  CHECK(base_k(GroupModel::make("lattice(1)"), t).k0.finite_rank == 7);
  CHECK(base_k(GroupModel::make("lattice(1)"), t).k1.finite_rank == 9);
}

TEST_CASE("finite assembly anchors") {
  GroupPtr c2 = GroupModel::make("cyclic(2)");
  GroupPtr c3 = GroupModel::make("cyclic(3)");

  KReport lit22 = assemble_literal(1, c2);
  CHECK(lit22.totals.k0.finite_rank == 5);  // 2 + 1 + 2
  CHECK(lit22.totals.k1.finite_rank == 0);

  KReport lit32 = assemble_literal(2, c2);
  CHECK(lit32.totals.k0.finite_rank == 12);  // 2 + 2 + 8, the printed formula

  KReport orb32 = assemble_orbit(2, c2);
  CHECK(orb32.totals.k0.finite_rank == 9);  // 2 + 2 + (2*2 + 1)

  CHECK(assemble_orbit(1, c3).totals.k0.finite_rank == 8);  // 3 + 1 + 1 + 3

  // m = 1 forces the two variants to coincide
  for (const char* d : {"cyclic(2)", "cyclic(4)", "symmetric(3)"}) {
    GroupPtr g = GroupModel::make(d);
    CHECK(assemble_literal(1, g).totals == assemble_orbit(1, g).totals);
  }

  for (const KReport& r : {lit22, lit32, orb32}) {
    CHECK(totals_recomputable(r));
    CHECK(k1_corollary_check(r));
    CHECK(r.caveat.find("satisfies the Baum-Connes conjecture with coefficients") !=
          std::string::npos);
  }
}

TEST_CASE("orbit rank never exceeds literal rank") {
  for (const char* d : {"cyclic(2)", "cyclic(3)", "cyclic(4)", "symmetric(3)"})
    for (int m = 1; m <= 3; ++m) {
      GroupPtr g = GroupModel::make(d);
      CHECK(assemble_orbit(m, g).totals.k0.finite_rank <=
            assemble_literal(m, g).totals.k0.finite_rank);
    }
}

TEST_CASE("infinite assembly") {
  GroupPtr z = GroupModel::make("lattice(1)");
  Window w{2, 5};
  KReport r = assemble_literal(1, z, w);
  CHECK(r.base.k0.finite_rank == 1);
  CHECK(r.base.k1.finite_rank == 1);
  // census rows: 1 singleton class + 5 pair classes
  REQUIRE(r.summands.size() == 2);
  CHECK(r.summands[0].count == 1);
  CHECK(r.summands[1].count == 5);
  CHECK(r.totals.k0.finite_rank == 1 + 6);
  CHECK(r.totals.k0.countably_infinite);
  CHECK(r.totals.k1.finite_rank == 1);
  CHECK(r.truncated);
  CHECK(totals_recomputable(r));
  CHECK(k1_corollary_check(r));

  // all three variants coincide summand-for-summand on torsion-free models
  KReport orb = assemble_orbit(1, z, w);
  KReport tf = assemble_torsionfree(1, z, w);
  CHECK(r.summands == orb.summands);
  CHECK(r.summands == tf.summands);
  CHECK(r.totals == orb.totals);
  CHECK(r.totals == tf.totals);

  // K1 of free(2) reports: base only, rank 2
  KReport f = assemble_torsionfree(3, GroupModel::make("free(2)"), Window{2, 2});
  CHECK(f.totals.k1.finite_rank == 2);
  CHECK_FALSE(f.totals.k1.countably_infinite);
  CHECK(k1_corollary_check(f));

  CHECK_THROWS_AS(assemble_torsionfree(1, GroupModel::make("cyclic(2)")), Error);
}

TEST_CASE("window monotonicity") {
  GroupPtr z2 = GroupModel::make("lattice(2)");
  long long prev = -1;
  for (int r = 1; r <= 4; ++r) {
    long long cur = assemble_literal(2, z2, Window{3, r}).totals.k0.finite_rank;
    CHECK(cur >= prev);
    prev = cur;
  }
  prev = -1;
  for (int k = 1; k <= 4; ++k) {
    long long cur = assemble_literal(2, z2, Window{k, 3}).totals.k0.finite_rank;
    CHECK(cur >= prev);
    prev = cur;
  }
}
