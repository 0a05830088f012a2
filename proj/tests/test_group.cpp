#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "haariso/error.hpp"
#include "haariso/group.hpp"

using namespace haariso;

namespace {

// Oracle: closure of a subset by plain enumeration, independent of
// generated_subgroup's worklist.
std::set<int> brute_closure(const FiniteGroup& g, std::vector<int> seed) {
  std::set<int> s(seed.begin(), seed.end());
  s.insert(g.identity);
  bool grew = true;
  while (grew) {
    grew = false;
    std::set<int> next = s;
    for (int x : s)
      for (int y : s) {
        next.insert(g.mul(x, y));
        next.insert(g.inv(x));
      }
    if (next != s) {
      s = next;
      grew = true;
    }
  }
  return s;
}

} // namespace

TEST_CASE("make_abelian basics") {
  auto z3 = make_abelian({3});
  CHECK(z3.order == 3);
  CHECK(z3.identity == 0);
  CHECK(check_group_axioms(z3));
  CHECK(*z3.abelian_factors == std::vector<int>{3});

  auto g = make_abelian({2, 4});
  CHECK(g.order == 8);
  CHECK(check_group_axioms(g));
  CHECK(*g.abelian_factors == std::vector<int>{2, 4});
  // noncyclic: no element of order 8
  bool has8 = false;
  for (int x = 0; x < 8; ++x) has8 |= (g.element_order(x) == 8);
  CHECK(!has8);

  auto h = make_abelian({3, 9});
  CHECK(h.order == 27);
  CHECK(*h.abelian_factors == std::vector<int>{3, 9});

  // [2,3] normalizes to the single invariant factor 6
  auto z6 = make_abelian({2, 3});
  CHECK(*z6.abelian_factors == std::vector<int>{6});

  CHECK_THROWS_AS(make_abelian({1}), Error);
  CHECK_THROWS_AS(make_abelian({}), Error);
}

TEST_CASE("automorphism_group counts match closed forms") {
  // |Aut(Z_n)| = phi(n)
  CHECK(automorphism_group(make_abelian({3})).size() == 2);
  CHECK(automorphism_group(make_abelian({5})).size() == 4);
  CHECK(automorphism_group(make_abelian({4})).size() == 2);
  CHECK(automorphism_group(make_abelian({9})).size() == 6);
  // |GL(2,2)| = 6
  CHECK(automorphism_group(make_abelian({2, 2})).size() == 6);
  // |GL(2,3)| = 48
  CHECK(automorphism_group(make_abelian({3, 3})).size() == 48);
  // |Aut(Z_2 x Z_4)| = 8
  CHECK(automorphism_group(make_abelian({2, 4})).size() == 8);

  auto g = make_abelian({2, 4});
  auto auts = automorphism_group(g);
  // closed under composition, contains identity
  std::set<std::vector<int>> all;
  for (const auto& a : auts) all.insert(a.images);
  std::vector<int> id(g.order);
  for (int i = 0; i < g.order; ++i) id[i] = i;
  CHECK(all.count(id) == 1);
  for (const auto& a : auts)
    for (const auto& b : auts) {
      std::vector<int> comp(g.order);
      for (int x = 0; x < g.order; ++x) comp[x] = b.images[a.images[x]];
      CHECK(all.count(comp) == 1);
    }
  for (const auto& a : auts) CHECK(is_automorphism(g, a.images));
}

TEST_CASE("generated_subgroup") {
  auto z6 = make_abelian({6});
  auto h = generated_subgroup(z6, {2});
  CHECK(h.members == std::vector<int>{0, 2, 4});

  auto z5 = make_abelian({5});
  CHECK(generated_subgroup(z5, {}).members == std::vector<int>{0});

  // (Z_2 x Z_4, {(1,0),(0,2)}): indices (1,0) -> 4, (0,2) -> 2
  auto g = make_abelian({2, 4});
  auto k = generated_subgroup(g, {4, 2});
  CHECK(k.order() == 4);
  // isomorphic to Z_2 x Z_2: every element of order <= 2
  for (int x : k.members) CHECK(g.element_order(x) <= 2);
  auto oracle = brute_closure(g, {4, 2});
  CHECK(std::vector<int>(oracle.begin(), oracle.end()) == k.members);
}

TEST_CASE("quotient_group") {
  auto z6 = make_abelian({6});
  auto [q1, p1] = quotient_group(z6, generated_subgroup(z6, {3}));
  CHECK(q1.order == 3);
  CHECK(check_group_axioms(q1));
  // projection is a homomorphism
  for (int x = 0; x < 6; ++x)
    for (int y = 0; y < 6; ++y) CHECK(p1[z6.mul(x, y)] == q1.mul(p1[x], p1[y]));

  auto g = make_abelian({2, 4});
  auto [q2, p2] = quotient_group(g, generated_subgroup(g, {1})); // {0} x Z_4
  CHECK(q2.order == 2);
  (void)p2;

  auto z9 = make_abelian({9});
  auto [q3, p3] = quotient_group(z9, generated_subgroup(z9, {3}));
  CHECK(q3.order == 3);
  CHECK(*q3.abelian_factors == std::vector<int>{3});
  (void)p3;
}

TEST_CASE("subgroups_of_order") {
  auto g = make_abelian({2, 4});
  auto subs = subgroups_of_order(g, 4);
  REQUIRE(subs.size() == 3);
  // one cyclic {(0,k)}, one cyclic {(k mod 2, k)}, one ~ Z_2 x Z_2
  int cyclic = 0, klein = 0;
  for (const auto& h : subs) {
    bool has4 = false;
    for (int x : h.members) has4 |= (g.element_order(x) == 4);
    if (has4)
      ++cyclic;
    else
      ++klein;
  }
  CHECK(cyclic == 2);
  CHECK(klein == 1);

  auto z5 = make_abelian({5});
  auto whole = subgroups_of_order(z5, 5);
  REQUIRE(whole.size() == 1);
  CHECK(whole[0].order() == 5);

  auto z15 = make_abelian({15});
  CHECK(subgroups_of_order(z15, 5).size() == 1);

  CHECK(subgroups_of_order(g, 8).size() == 1);
  CHECK(subgroups_of_order(g, 1).size() == 1);
}

TEST_CASE("sylow_shape") {
  CHECK(sylow_shape(make_abelian({45}), 3) == SylowShape::Cyclic);
  CHECK(sylow_shape(make_abelian({3, 3}), 3) == SylowShape::Elementary);
  CHECK(sylow_shape(make_abelian({3, 9}), 3) == SylowShape::Other);
  CHECK(sylow_shape(make_abelian({9, 9}), 3) == SylowShape::Homocyclic);
  CHECK(sylow_shape(make_abelian({5}), 3) == SylowShape::Trivial);

  CHECK(every_sylow_elementary_or_cyclic(make_abelian({2, 4})) == false);
  CHECK(every_sylow_elementary_or_cyclic(make_abelian({15})));
  CHECK(every_sylow_elementary_or_cyclic(make_abelian({2, 2})));
  CHECK(every_sylow_homocyclic(make_abelian({9, 9})));
  CHECK(every_sylow_homocyclic(make_abelian({3, 9})) == false);
}

TEST_CASE("invariant factors recovered from a bare table") {
  for (auto factors : {std::vector<int>{4}, {2, 2}, {2, 4}, {3, 9}, {2, 6}, {12}}) {
    auto g = make_abelian(factors);
    auto expect = *g.abelian_factors;
    FiniteGroup bare = g;
    bare.abelian_factors.reset();
    CHECK(invariant_factors_of(bare) == expect);
  }
}

TEST_CASE("subgroup_as_group") {
  auto z6 = make_abelian({6});
  auto h = generated_subgroup(z6, {2});
  auto hg = subgroup_as_group(z6, h);
  CHECK(hg.order == 3);
  CHECK(check_group_axioms(hg));
  CHECK(*hg.abelian_factors == std::vector<int>{3});
}
