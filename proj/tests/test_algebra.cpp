#include <gtest/gtest.h>

#include <cuntz/algebra.hpp>
#include <cuntz/algebra_io.hpp>

#include <random>

#include "oracle.hpp"

using namespace cuntz;

namespace {

AlgebraElement S(int n, const char* w) { return AlgebraElement::s(Word::parse(n, w)); }
AlgebraElement Sa(int n, const char* w) { return AlgebraElement::s_star(Word::parse(n, w)); }
AlgebraElement P(int n, const char* w) { return AlgebraElement::projection(Word::parse(n, w)); }

std::vector<std::pair<int, bool>> random_factors(int n, int len, std::mt19937_64& rng) {
  std::vector<std::pair<int, bool>> f(len);
  for (auto& x : f) x = {1 + static_cast<int>(rng() % n), (rng() & 1) != 0};
  return f;
}

AlgebraElement product_range(int n, const std::vector<std::pair<int, bool>>& f, std::size_t lo, std::size_t hi) {
  return generator_product(n, std::vector<std::pair<int, bool>>(f.begin() + lo, f.begin() + hi));
}

std::vector<Word> random_complete_code(int n, int splits, std::mt19937_64& rng) {
  std::vector<Word> code{Word(n)};
  for (int s = 0; s < splits; ++s) {
    const std::size_t i = rng() % code.size();
    const Word w = code[i];
    code.erase(code.begin() + static_cast<long>(i));
    for (int a = 1; a <= n; ++a) code.push_back(w + Word::letter_word(n, a));
  }
  return code;
}

}  // namespace

TEST(CuntzRelations, Generators) {
  for (int n : {2, 3, 4}) {
    AlgebraElement sum(n);
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        const auto p = AlgebraElement::s_star(n, i) * AlgebraElement::s(n, j);
        EXPECT_EQ(p, i == j ? AlgebraElement::one(n) : AlgebraElement::zero(n));
      }
      sum += AlgebraElement::s(n, i) * AlgebraElement::s_star(n, i);
    }
    EXPECT_EQ(sum, AlgebraElement::one(n));
  }
}

TEST(Multiply, BasicAndFlipFlopExamples) {
  EXPECT_EQ(Sa(2, "1") * S(2, "1"), AlgebraElement::one(2));
  EXPECT_TRUE((Sa(2, "1") * S(2, "2")).is_zero());
  const auto F = flip_flop();
  EXPECT_EQ(F * F, AlgebraElement::one(2));
  EXPECT_EQ(adjoint(F), F);
}

TEST(Multiply, ReductionRule) {
  // S_beta^* S_gamma = S_gamma' if gamma = beta gamma', S_beta'^* if beta = gamma beta', else 0
  EXPECT_EQ(Sa(2, "12") * S(2, "121"), S(2, "1"));
  EXPECT_EQ(Sa(2, "121") * S(2, "12"), Sa(2, "1"));
  EXPECT_TRUE((Sa(2, "12") * S(2, "2")).is_zero());
}

TEST(Multiply, RandomReassociationAgreesWithRewritingAndAction) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + static_cast<int>(trial % 2);
    const int len = 1 + static_cast<int>(rng() % 8);
    const auto f = random_factors(n, len, rng);
    const std::size_t cut = rng() % (f.size() + 1);
    const auto left = product_range(n, f, 0, cut) * product_range(n, f, cut, f.size());
    const auto right = generator_product(n, f);
    ASSERT_EQ(left, right);
    const auto rw = oracle::rewrite(f);
    if (!rw) {
      EXPECT_TRUE(right.is_zero());
    } else {
      EXPECT_EQ(right, AlgebraElement::monomial(Word::from_letters(n, rw->first), Word::from_letters(n, rw->second)));
    }
  }
}

TEST(Multiply, ProductsMatchOperatorAction) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(trial % 2);
    auto rand_elem = [&] {
      AlgebraElement a(n);
      const int terms = 1 + static_cast<int>(rng() % 3);
      for (int t = 0; t < terms; ++t) {
        const auto fa = oracle::random_letters(n, static_cast<int>(rng() % 4), rng);
        const auto fb = oracle::random_letters(n, static_cast<int>(rng() % 4), rng);
        a += AlgebraElement::monomial(Word::from_letters(n, fa), Word::from_letters(n, fb),
                                      Coefficient(mpq_class(static_cast<long>(rng() % 5) - 2, 1 + rng() % 3)));
      }
      return a;
    };
    const auto a = rand_elem();
    const auto b = rand_elem();
    const auto ab = a * b;
    for (int probe = 0; probe < 6; ++probe) {
      const auto xi = oracle::basis(oracle::random_letters(n, 20, rng));
      EXPECT_EQ(oracle::act(ab, xi), oracle::act(a, oracle::act(b, xi)));
      EXPECT_EQ(oracle::act(a + b, xi), [&] {
        auto v = oracle::act(a, xi);
        for (const auto& [w, c] : oracle::act(b, xi)) v[w] += c;
        for (auto it = v.begin(); it != v.end();) it = it->second.is_zero() ? v.erase(it) : std::next(it);
        return v;
      }());
    }
  }
}

TEST(Adjoint, InvolutiveAndAntimultiplicative) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(trial % 2);
    const auto a = generator_product(n, random_factors(n, 1 + rng() % 6, rng)) + Coefficient::i() * generator_product(n, random_factors(n, 1 + rng() % 6, rng));
    const auto b = generator_product(n, random_factors(n, 1 + rng() % 6, rng));
    EXPECT_EQ(adjoint(adjoint(a)), a);
    EXPECT_EQ(adjoint(a * b), adjoint(b) * adjoint(a));
  }
  const auto s1 = AlgebraElement::s(2, 1);
  ASSERT_EQ(adjoint(s1).terms().size(), 1u);
  EXPECT_TRUE(adjoint(s1).terms().begin()->first.alpha.empty());
  EXPECT_EQ(adjoint(s1).terms().begin()->first.beta, Word::parse(2, "1"));
}

TEST(Adjoint, ThetaIsSelfAdjointInvolution) {
  for (int n : {2, 3}) {
    const auto th = flip_theta(n);
    EXPECT_EQ(adjoint(th), th);
    EXPECT_EQ(th * th, AlgebraElement::one(n));
  }
}

TEST(Equality, PaddingIdentityHolds) {
  // S_alpha S_beta^* = sum_gamma S_{alpha gamma} S_{beta gamma}^*
  EXPECT_EQ(S(2, "12") * Sa(2, "1") * (P(2, "1") + P(2, "2")), S(2, "121") * Sa(2, "11") + S(2, "122") * Sa(2, "12"));
  EXPECT_EQ(P(2, "11") + P(2, "12") + P(2, "21") + P(2, "22"), AlgebraElement::one(2));
}

TEST(Classify, Examples) {
  const auto th = classify(flip_theta(2));
  EXPECT_EQ(th.grade, 0);
  EXPECT_EQ(th.f_level, 2);
  EXPECT_TRUE(th.in_Pn);
  EXPECT_TRUE(th.unitary);

  const auto p1 = classify(P(2, "1"));
  EXPECT_EQ(p1.d_level, 1);
  EXPECT_FALSE(p1.unitary);

  const auto u = parse_expression(2, "S11 S1* + S12 S21* + S2 S22*");
  const auto cu = classify(u);
  EXPECT_TRUE(cu.in_Sn);
  EXPECT_FALSE(cu.in_Pn);
  EXPECT_FALSE(cu.grade.has_value());
  EXPECT_TRUE(cu.unitary);
  // oracle: u u^* and u^* u act as the identity on long words
  std::mt19937_64 rng(1);
  for (int probe = 0; probe < 20; ++probe) {
    const auto xi = oracle::basis(oracle::random_letters(2, 12, rng));
    EXPECT_EQ(oracle::act(u, oracle::act(adjoint(u), xi)), xi);
    EXPECT_EQ(oracle::act(adjoint(u), oracle::act(u, xi)), xi);
  }

  const auto g1 = classify(S(2, "12") * Sa(2, "1"));
  EXPECT_EQ(g1.grade, 1);
  EXPECT_FALSE(g1.f_level.has_value());
}

TEST(Classify, UnitaryIffBothCodesComplete) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(trial % 2);
    const int splits = 1 + static_cast<int>(rng() % 4);
    auto alpha = random_complete_code(n, splits, rng);
    auto beta = random_complete_code(n, splits, rng);
    std::shuffle(beta.begin(), beta.end(), rng);
    AlgebraElement u(n);
    for (std::size_t i = 0; i < alpha.size(); ++i) u += AlgebraElement::monomial(alpha[i], beta[i]);
    EXPECT_TRUE(classify(u).unitary);
    EXPECT_TRUE(classify(u).in_Sn);
    // beta no longer complete: one word replaced by a proper extension
    auto broken = beta;
    broken[0] = broken[0] + Word::letter_word(n, 1);
    AlgebraElement v(n);
    for (std::size_t i = 0; i < alpha.size(); ++i) v += AlgebraElement::monomial(alpha[i], broken[i]);
    EXPECT_FALSE(classify(v).unitary);
  }
}

TEST(Classify, PermutativeUnitariesAreInPn) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(trial % 2);
    const int k = 1 + static_cast<int>(rng() % 2);
    auto words = enumerate_words(n, k);
    auto img = words;
    std::shuffle(img.begin(), img.end(), rng);
    AlgebraElement u(n);
    for (std::size_t i = 0; i < words.size(); ++i) u += AlgebraElement::monomial(img[i], words[i]);
    const auto c = classify(u);
    EXPECT_TRUE(c.in_Pn);
    EXPECT_EQ(c.grade, 0);
  }
}

TEST(Expect, Examples) {
  EXPECT_TRUE(expect(S(2, "1"), ExpectTarget::F).is_zero());
  EXPECT_EQ(expect(P(2, "12") + S(2, "1") * Sa(2, "2"), ExpectTarget::D), P(2, "12"));
  EXPECT_EQ(expect(flip_theta(2), ExpectTarget::F), flip_theta(2));
}

TEST(Expect, IdempotentAndNested) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    AlgebraElement a(2);
    for (int t = 0; t < 4; ++t) a += generator_product(2, random_factors(2, 1 + rng() % 6, rng));
    const auto ef = expect(a, ExpectTarget::F);
    EXPECT_EQ(expect(ef, ExpectTarget::F), ef);
    EXPECT_EQ(expect(expect(a, ExpectTarget::D), ExpectTarget::D), expect(a, ExpectTarget::D));
    EXPECT_EQ(expect(a, ExpectTarget::D), expect(ef, ExpectTarget::D));
  }
  EXPECT_EQ(expect(AlgebraElement::one(2), ExpectTarget::D), AlgebraElement::one(2));
}

TEST(Grading, HomogeneousProductsAddGrades) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = generator_product(2, random_factors(2, 1 + rng() % 5, rng));
    const auto b = generator_product(2, random_factors(2, 1 + rng() % 5, rng));
    const auto ab = a * b;
    if (a.is_zero() || b.is_zero() || ab.is_zero()) continue;
    EXPECT_EQ(classify(ab).grade, *classify(a).grade + *classify(b).grade);
  }
}

TEST(TextFormat, PrintsAndParses) {
  EXPECT_EQ(to_text(parse_expression(2, "S1* S1")), "1");
  EXPECT_EQ(to_text(AlgebraElement::zero(2)), "0");
  const auto e = parse_expression(2, "S(12)S*(21) - 1/2 S1 S1*");
  EXPECT_EQ(to_text(e), "(-1/2)*S(1)S*(1) + 1*S(12)S*(21)");
  EXPECT_EQ(parse_expression(2, to_text(e)), e);
  EXPECT_EQ(parse_expression(2, "i S1 (S2 + S1)*"), Coefficient::i() * (S(2, "1") * adjoint(S(2, "2") + S(2, "1"))));
  EXPECT_THROW(parse_expression(2, "S3"), ParseError);
  EXPECT_THROW(parse_expression(2, "S1 +"), ParseError);
  EXPECT_THROW(parse_expression(2, "(S1"), ParseError);
  EXPECT_EQ(infer_alphabet("S13 S2*"), 3);
}

TEST(JsonFormat, RoundTrip) {
  const auto e = parse_expression(3, "S(12)S*(3) + i S2 - 3/4 S33*");
  const auto doc = element_document(e);
  EXPECT_EQ(doc.at("schema"), 1);
  EXPECT_EQ(element_from_document(doc), e);
  EXPECT_EQ(element_from_document(nlohmann::json::parse(doc.dump())), e);
}
