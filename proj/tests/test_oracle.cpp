#include "doctest.h"
#include "lampk/errors.hpp"
#include "lampk/oracle.hpp"

using namespace lampk;

TEST_CASE("literal Eq. 2.2 oracle") {
  CHECK(rhs_eq22_literal(1, GroupModel::make("cyclic(3)")).k0.finite_rank == 8);
  CHECK(rhs_eq22_literal(2, GroupModel::make("cyclic(2)")).k0.finite_rank == 12);
  CHECK(rhs_eq22_literal(1, GroupModel::make("cyclic(1)")).k0.finite_rank == 2);
}

TEST_CASE("cylinder pair oracle") {
  CHECK(rhs_eq22_pairs(2, GroupModel::make("cyclic(2)")).k0.finite_rank == 9);
  CHECK(rhs_eq22_pairs(2, GroupModel::make("cyclic(1)")).k0.finite_rank == 3);
  for (const char* d : {"cyclic(2)", "cyclic(3)", "cyclic(4)", "symmetric(3)"}) {
    GroupPtr g = GroupModel::make(d);
    CHECK(rhs_eq22_pairs(1, g).k0.finite_rank ==
          rhs_eq22_literal(1, g).k0.finite_rank);
  }
}

TEST_CASE("point orbit oracle") {
  CHECK(point_orbit_k(2, GroupModel::make("cyclic(2)")).k0.finite_rank == 9);
  CHECK(point_orbit_k(1, GroupModel::make("cyclic(3)")).k0.finite_rank == 8);
  // n = 0: a single fixed point, rank = |con Gamma|
  CHECK(point_orbit_k(0, GroupModel::make("symmetric(3)")).k0.finite_rank == 3);
}

TEST_CASE("wreath class counts") {
  GroupPtr c2 = GroupModel::make("cyclic(2)");
  GroupPtr c3 = GroupModel::make("cyclic(3)");
  CHECK(wreath_class_count(c2, c2) == 5);
  CHECK(wreath_class_count(c2, c3) == 8);
  CHECK(wreath_class_count(c3, c2) == 9);
}

TEST_CASE("bijection suite") {
  for (const char* d :
       {"cyclic(2)", "cyclic(3)", "cyclic(4)", "cyclic(2)xcyclic(2)", "symmetric(3)"}) {
    ComparisonVerdict v = verify_bijection(GroupModel::make(d));
    CHECK(v.equal);
    CHECK(v.lhs == v.rhs);
  }
  // frozen small counts
  CHECK(verify_bijection(GroupModel::make("cyclic(2)")).lhs == 2);
  CHECK(verify_bijection(GroupModel::make("cyclic(3)")).lhs == 3);
}

TEST_CASE("cross checks") {
  GroupPtr c2 = GroupModel::make("cyclic(2)");
  GroupPtr c3 = GroupModel::make("cyclic(3)");

  auto all5 = cross_check(1, c2, c2);
  REQUIRE(all5.size() == 5);
  for (const auto& v : all5) {
    CHECK(v.equal);
    CHECK(v.lhs == 5);
  }

  auto v23 = cross_check(1, c3, c2);
  for (const auto& v : v23) CHECK(v.equal);

  // the documented discrepancy: literal 12 vs oracle 9
  auto v32 = cross_check(2, c2, c3);
  REQUIRE(v32.size() == 5);
  for (const auto& v : v32) {
    if (v.must_match) {
      CHECK(v.equal);
    } else {
      CHECK(v.name == "assemble_literal vs point_orbit_k");
      CHECK(v.lhs == 12);
      CHECK(v.rhs == 9);
      CHECK_FALSE(v.equal);
    }
  }

  // without sigma the wreath verdict is omitted
  CHECK(cross_check(2, c2).size() == 4);

  CHECK_THROWS_AS(rhs_eq22_literal(1, GroupModel::make("lattice(1)")), Error);
}

TEST_CASE("error kinds map to exit codes") {
  CHECK(Error(ErrorKind::Parse, "x").exit_code() == 2);
  CHECK(Error(ErrorKind::Unsupported, "x").exit_code() == 3);
  CHECK(Error(ErrorKind::CapExceeded, "x").exit_code() == 4);
  CHECK(Error(ErrorKind::Internal, "x").exit_code() == 5);
  try {
    Caps tight;
    tight.subset_enum = 4;
    rhs_eq22_literal(1, GroupModel::make("cyclic(4)"), tight);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CapExceeded);
  }
}
