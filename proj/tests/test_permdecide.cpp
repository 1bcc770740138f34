#include <gtest/gtest.h>

#include <cuntz/cuntz.hpp>

#include "oracle.hpp"

using namespace cuntz;

namespace {

std::uint32_t idx(int n, const char* w) { return static_cast<std::uint32_t>(Word::parse(n, w).index()); }

AlgebraElement S(int n, const char* w) { return AlgebraElement::s(Word::parse(n, w)); }
AlgebraElement Sa(int n, const char* w) { return AlgebraElement::s_star(Word::parse(n, w)); }

PermUnitary flip() { return PermUnitary(2, 1, {1, 0}); }

// Symbolic check that lambda_{u_b} is a two-sided inverse of lambda_{u_a}.
bool symbolic_inverse(const PermUnitary& a, const PermUnitary& b) {
  const Endo ea(perm_unitary(a)), eb(perm_unitary(b));
  return fusion_compose(ea, eb).unitary() == AlgebraElement::one(a.n) &&
         fusion_compose(eb, ea).unitary() == AlgebraElement::one(a.n);
}

}  // namespace

TEST(PermUnitary, ElementExamples) {
  EXPECT_EQ(perm_unitary(PermUnitary::identity(2, 3)), AlgebraElement::one(2));
  EXPECT_EQ(perm_unitary(flip()), flip_flop());
  // transposition of 11 and 12 inside P_2^2
  const PermUnitary t(2, 2, {1, 0, 2, 3});
  EXPECT_EQ(perm_unitary(t), S(2, "11") * Sa(2, "12") + S(2, "12") * Sa(2, "11") + S(2, "2") * Sa(2, "2"));
  // u_sigma S_{sigma(alpha)} = S_alpha
  const auto G = oracle::fixture_G();
  const auto uG = perm_unitary(G);
  for (std::uint32_t a = 0; a < G.size(); ++a)
    EXPECT_EQ(uG * AlgebraElement::s(Word::from_index(2, 4, G(a))), AlgebraElement::s(Word::from_index(2, 4, a)));
}

TEST(PermUnitary, RejectsNonPermutations) {
  EXPECT_ANY_THROW(PermUnitary(2, 2, {0, 0, 1, 2}));
  EXPECT_ANY_THROW(PermUnitary(2, 2, {0, 1, 2}));
}

TEST(PermUnitary, LiftKeepsElement) {
  const auto G = oracle::fixture_G();
  EXPECT_EQ(perm_unitary(G.lifted(5)), perm_unitary(G));
  EXPECT_EQ(G.lifted(6), G);
  EXPECT_EQ(flip().lifted(3).k, 3);
}

TEST(PermUnitary, JsonRoundTrip) {
  const auto G = oracle::fixture_G();
  const auto j = perm_to_json(G);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(perm_from_json(j).map, G.map);
  EXPECT_THROW(perm_from_json(nlohmann::json{{"schema", 2}, {"n", 2}, {"k", 1}, {"map", {0, 1}}}), std::invalid_argument);
  EXPECT_THROW(perm_from_json(nlohmann::json::array()), std::invalid_argument);
}

TEST(ComposePerm, MatchesSymbolicFusion) {
  const auto all = oracle::all_perms(2, 2);
  for (std::size_t i = 0; i < all.size(); i += 5) {
    for (std::size_t j = 0; j < all.size(); j += 7) {
      const auto c = compose_perm(all[i], all[j]);
      EXPECT_EQ(perm_unitary(c), fusion_compose(Endo(perm_unitary(all[i])), Endo(perm_unitary(all[j]))).unitary());
    }
  }
}

TEST(ReducedMaps, IdentityTrees) {
  const auto fam = reduced_maps(PermUnitary::identity(2, 3));
  // f_1: 21,22 -> 12 -> 11 (root); f_2: 11,12 -> 21 -> 22 (root)
  const ParentArray f1{idx(2, "11"), idx(2, "11"), idx(2, "12"), idx(2, "12")};
  const ParentArray f2{idx(2, "21"), idx(2, "21"), idx(2, "22"), idx(2, "22")};
  EXPECT_EQ(fam.f[0], f1);
  EXPECT_EQ(fam.f[1], f2);
  const auto td = tree_check(fam);
  ASSERT_TRUE(td.all_trees());
  EXPECT_EQ(td.trees[0].root, idx(2, "11"));
  EXPECT_EQ(td.trees[1].root, idx(2, "22"));
  EXPECT_EQ(td.trees[0].height, 2);
}

TEST(ReducedMaps, GTrees) {
  const auto fam = reduced_maps(oracle::fixture_G());
  std::vector<std::pair<const char*, const char*>> e1{{"212", "121"}, {"121", "112"}, {"112", "122"}, {"122", "111"},
                                                      {"111", "111"}, {"211", "121"}, {"222", "112"}, {"221", "122"}};
  std::vector<std::pair<const char*, const char*>> e2{{"111", "211"}, {"112", "211"}, {"121", "212"}, {"122", "212"},
                                                      {"211", "221"}, {"212", "221"}, {"221", "222"}, {"222", "222"}};
  for (auto [a, b] : e1) EXPECT_EQ(fam.f[0][idx(2, a)], idx(2, b)) << a;
  for (auto [a, b] : e2) EXPECT_EQ(fam.f[1][idx(2, a)], idx(2, b)) << a;
  const auto td = tree_check(fam);
  ASSERT_TRUE(td.all_trees());
  EXPECT_EQ(td.trees[0].shape, "((((()())())()))");
  EXPECT_EQ(td.trees[1].shape, "(((()())(()())))");
  EXPECT_EQ(td.trees[0].height, 4);
  EXPECT_EQ(td.trees[1].height, 3);
  EXPECT_EQ(td.trees[0].leaf_count, 4);
  EXPECT_EQ(td.trees[1].leaf_count, 4);
}

TEST(ReducedMaps, DefinitionAndBalance) {
  for (const auto& s : oracle::all_perms(2, 3)) {
    const auto fam = reduced_maps(s);
    // f_i(alpha) = beta iff sigma(beta m) = i alpha for some letter m
    std::vector<int> count(4, 0);
    for (std::uint32_t w = 0; w < 8; ++w) {
      const auto img = Word::from_index(2, 3, s(w));
      const auto beta = static_cast<std::uint32_t>(Word::from_index(2, 3, w).prefix(2).index());
      const int i = img.letters()[0];
      EXPECT_EQ(fam.f[i - 1][img.suffix(2).index()], beta);
      ++count[beta];
    }
    for (int c : count) EXPECT_EQ(c, 2);
  }
}

TEST(ReducedMaps, BogolubovLiftsMatchIdentity) {
  // unlabeled trees: all equal, root fan-in n-1, height k-1
  const auto id = tree_check(reduced_maps(PermUnitary::identity(2, 3)));
  for (const auto& u : oracle::all_perms(2, 1)) {
    const auto td = tree_check(reduced_maps(u.lifted(3)));
    ASSERT_TRUE(td.all_trees());
    for (std::size_t i = 0; i < td.trees.size(); ++i) {
      EXPECT_EQ(td.trees[i].shape, id.trees[i].shape);
      EXPECT_EQ(td.trees[i].shape, td.trees[0].shape);
      EXPECT_EQ(td.trees[i].height, 2);
    }
  }
}

TEST(TreeCheck, DetectsCycles) {
  // f_1 = swap of two points is not a tree
  const ParentArray swap{1, 0};
  const auto t = tree_info(swap);
  EXPECT_FALSE(t.is_tree);
  const ParentArray two_roots{0, 1};
  EXPECT_FALSE(tree_info(two_roots).is_tree);
  const ParentArray chain{0, 0, 1};
  const auto c = tree_info(chain);
  ASSERT_TRUE(c.is_tree);
  EXPECT_EQ(c.root, 0u);
  EXPECT_EQ(c.height, 2);
  EXPECT_EQ(c.leaf_count, 1);
}

TEST(DecideDiagonal, AgreesWithConstantCompositesOracle) {
  for (int k : {2, 3}) {
    int yes = 0;
    for (const auto& s : oracle::all_perms(2, k)) {
      const auto fam = reduced_maps(s);
      const int states = static_cast<int>(fam.f[0].size());
      const int cap = states * (states - 1) / 2 + 1;
      const int m = oracle::least_constant_length(fam.f, cap);
      const auto v = decide_diagonal(s);
      EXPECT_EQ(v.yes(), m >= 0);
      if (m >= 0) {
        ++yes;
        EXPECT_EQ(v.m, m);
      } else {
        EXPECT_EQ(v.outcome, DiagonalVerdict::Outcome::No);
      }
    }
    // diagonal automorphisms: 8 at level 2, 384 at level 3
    EXPECT_EQ(yes, k == 2 ? 8 : 384);
  }
  EXPECT_EQ(decide_diagonal(PermUnitary::identity(2, 3)).m, 2);
  EXPECT_TRUE(decide_diagonal(flip()).yes());
}

TEST(DecideDiagonal, CycleWitness) {
  for (const auto& s : oracle::all_perms(2, 2)) {
    const auto v = decide_diagonal(s);
    if (v.yes() || v.pair_cycle.empty()) continue;
    const auto fam = reduced_maps(s);
    const std::size_t len = v.pair_cycle.size();
    ASSERT_EQ(v.cycle_letters.size(), len);
    for (std::size_t i = 0; i < len; ++i) {
      const auto [x, y] = v.pair_cycle[i];
      const auto [nx, ny] = v.pair_cycle[(i + 1) % len];
      const auto& f = fam.f[v.cycle_letters[i] - 1];
      EXPECT_EQ(std::minmax(f[x], f[y]), std::minmax(nx, ny));
    }
  }
}

TEST(DecideAutomorphism, ExhaustiveP22AgainstSymbolicInverseSearch) {
  const auto all = oracle::all_perms(2, 2);
  int auts = 0;
  for (const auto& s : all) {
    bool found = false;
    for (const auto& t : all)
      if (symbolic_inverse(s, t)) found = true;
    const auto v = decide_automorphism(s);
    EXPECT_NE(v.outcome, AutVerdict::Outcome::Undecided);
    EXPECT_EQ(v.is_aut(), found);
    if (v.is_aut()) {
      ++auts;
      EXPECT_TRUE(symbolic_inverse(s, *v.inverse));
    }
  }
  EXPECT_EQ(auts, 4);
}

TEST(DecideAutomorphism, SyncAgreesWithPureStabilization) {
  AutOptions plain;
  plain.use_sync = false;
  plain.budget_m = theoretical_bound(2, 3);
  for (const auto& s : oracle::all_perms(2, 3)) {
    if (!decide_diagonal(s).yes()) continue;
    const auto a = decide_automorphism(s);
    const auto b = decide_automorphism(s, plain);
    ASSERT_NE(b.outcome, AutVerdict::Outcome::Undecided);
    EXPECT_EQ(a.is_aut(), b.is_aut());
    if (a.is_aut()) {
      EXPECT_LE(a.h, 16);
    }
  }
}

TEST(DecideAutomorphism, Identity) {
  const auto v = decide_automorphism(PermUnitary::identity(2, 3));
  ASSERT_TRUE(v.is_aut());
  EXPECT_EQ(v.h, 1);
  EXPECT_EQ(perm_unitary(*v.inverse), AlgebraElement::one(2));
}

TEST(DecideAutomorphism, G) {
  const auto G = oracle::fixture_G();
  const auto v = decide_automorphism(G);
  ASSERT_TRUE(v.is_aut());
  EXPECT_EQ(v.h, 6);
  EXPECT_EQ(v.m, 6);
  EXPECT_TRUE(symbolic_inverse(G, *v.inverse));
  EXPECT_EQ(decide_diagonal(G).m, 6);
}

TEST(DecideAutomorphism, BogolubovLiftsInvertByAdjoint) {
  for (const auto& u : oracle::all_perms(2, 1)) {
    const auto v = decide_automorphism(u.lifted(3));
    ASSERT_TRUE(v.is_aut());
    EXPECT_EQ(v.h, 1);
    EXPECT_EQ(perm_unitary(*v.inverse), adjoint(perm_unitary(u)));
  }
}

TEST(DecideAutomorphism, ReportsReasons) {
  int tree = 0, diag = 0;
  for (const auto& s : oracle::all_perms(2, 2)) {
    const auto r = decide_automorphism(s);
    if (r.reason == AutVerdict::Reason::TreeFailed) ++tree;
    if (r.reason == AutVerdict::Reason::DiagonalFailed) ++diag;
    if (r.is_aut()) {
      EXPECT_EQ(r.reason, AutVerdict::Reason::None);
    }
  }
  EXPECT_GT(tree, 0);
  EXPECT_EQ(tree + diag, 24 - 8);
}

TEST(FixesGenerator, GFixesS2) {
  const auto G = oracle::fixture_G();
  EXPECT_TRUE(fixes_generator(G.word_perm(), 2));
  EXPECT_FALSE(fixes_generator(G.word_perm(), 1));
  const Endo e(perm_unitary(G));
  EXPECT_EQ(e(AlgebraElement::s(2, 2)), AlgebraElement::s(2, 2));
  EXPECT_NE(e(AlgebraElement::s(2, 1)), AlgebraElement::s(2, 1));
}

TEST(OutEquivalent, GPowers) {
  const auto G = oracle::fixture_G();
  const auto id = PermUnitary::identity(2, 1);
  EXPECT_EQ(out_equivalent(G, G, 16), OutRelation::Equal);
  PermUnitary p = G;
  for (int e = 1; e <= 3; ++e) {
    EXPECT_EQ(out_equivalent(p, id, 16), OutRelation::Distinct) << "power " << e;
    p = compose_perm(G, p);
  }
  EXPECT_EQ(out_equivalent(flip(), id, 16), OutRelation::Distinct);
  for (const auto& s : oracle::all_perms(2, 2)) {
    if (decide_automorphism(s).is_aut()) continue;
    EXPECT_THROW(out_equivalent(s, id, 16), std::invalid_argument);
    break;
  }
}

TEST(OutEquivalent, InnerConjugatesAreEqual) {
  // lambda_{z phi(z*)} = Ad z is inner for any z in P_2^2
  const auto G = oracle::fixture_G();
  for (const auto& z : oracle::all_perms(2, 2)) {
    const WordPerm zw = z.word_perm();
    const auto inner = PermUnitary::from_word_perm(compose(zw, zw.inverse().phi()));
    EXPECT_EQ(out_equivalent(inner, PermUnitary::identity(2, 1), 16), OutRelation::Equal);
    // Ad z o lambda_G is in the class of lambda_G
    EXPECT_EQ(out_equivalent(compose_perm(inner, G), G, 16), OutRelation::Equal);
  }
}

TEST(PowerOrder, Examples) {
  const auto id = power_order(PermUnitary::identity(2, 2), 12);
  EXPECT_EQ(id.aut_order, 1);
  EXPECT_EQ(id.out_order, 1);
  const auto f = power_order(flip(), 12);
  EXPECT_EQ(f.aut_order, 2);
  EXPECT_EQ(f.out_order, 2);
  const auto g = power_order(oracle::fixture_G(), 12);
  EXPECT_EQ(g.aut_order, 6);
  EXPECT_EQ(g.out_order, 6);
  const auto capped = power_order(oracle::fixture_G(), 3);
  EXPECT_FALSE(capped.aut_order.has_value());
}

TEST(PowerOrder, SixthPowerIsIdentitySymbolically) {
  const Endo g(perm_unitary(oracle::fixture_G()));
  Endo p = g;
  for (int e = 2; e <= 6; ++e) p = fusion_compose(g, p);
  EXPECT_EQ(p.unitary(), AlgebraElement::one(2));
}
