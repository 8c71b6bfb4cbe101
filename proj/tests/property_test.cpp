#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace qlocal;
using qtest::loops;

namespace {

Scalar random_scalar(std::mt19937& rng, int order) {
  std::uniform_int_distribution<int> c(-5, 5), d(1, 4);
  Scalar s = Scalar(c(rng), d(rng));
  if (order > 1)
    for (long k = 1; k < order; ++k) s += Scalar(c(rng), d(rng)) * Scalar::root_of_unity(order, k);
  return s;
}

}  // namespace

TEST(FieldProperties, AxiomsOnRandomElements) {
  std::mt19937 rng(11);
  for (int order : {1, 3, 4, 5, 12}) {
    for (int t = 0; t < 40; ++t) {
      Scalar a = random_scalar(rng, order), b = random_scalar(rng, order), c = random_scalar(rng, order);
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ(a * b, b * a);
      EXPECT_EQ((a * b) * c, a * (b * c));
      if (!a.is_zero()) {
        EXPECT_EQ(a * a.inverse(), Scalar(1));
      }
      EXPECT_EQ(Scalar::parse(a.str(), order), a);
    }
  }
}

TEST(MatrixProperties, BareissRankMatchesGaussRank) {
  std::mt19937 rng(12);
  std::uniform_int_distribution<int> dim(1, 5), entry(-2, 2);
  for (int t = 0; t < 60; ++t) {
    const int order = t % 3 == 0 ? 3 : 1;
    Matrix m(static_cast<std::size_t>(dim(rng)), static_cast<std::size_t>(dim(rng)));
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        m(i, j) = order == 1 ? Scalar(entry(rng)) : Scalar(entry(rng)) * Scalar::root_of_unity(3, entry(rng) + 2);
    // force some dependencies
    if (m.rows() > 1)
      for (std::size_t j = 0; j < m.cols(); ++j) m(m.rows() - 1, j) = m(0, j) * Scalar(2);
    EXPECT_EQ(m.rank(), m.rank_fraction_free());
    Matrix n = m.nullspace();
    EXPECT_EQ(n.cols() + m.rank(), m.cols());
    if (n.cols() > 0) {
      EXPECT_TRUE((m * n).is_zero());
    }
  }
}

TEST(TextProperties, FormatParseRoundTrip) {
  std::mt19937 rng(13);
  auto q = loops({"X", "Y", "Z"});
  for (int t = 0; t < 100; ++t) {
    NCPoly f = qtest::random_poly(q, rng, 0, 4, 5);
    EXPECT_EQ(parse_poly(q, format_poly(f)), f) << format_poly(f);
  }
}

TEST(RewriteProperties, GradedDimsMatchExhaustiveOracle) {
  std::mt19937 rng(14);
  for (int t = 0; t < 25; ++t) {
    Presentation p = qtest::random_loop_presentation(rng);
    for (std::size_t D : {3u, 4u}) {
      auto rs = complete(p, D);
      EXPECT_EQ(rs.graded_dims(), qtest::oracle_graded_dims(p.quiver_ptr(), p.relations(), D))
          << format_poly(p.relations()[0]);
    }
  }
}

TEST(RewriteProperties, NormalFormIsIdempotentAndKillsIdeal) {
  std::mt19937 rng(15);
  for (int t = 0; t < 20; ++t) {
    Presentation p = qtest::random_loop_presentation(rng);
    const std::size_t D = 4;
    auto rs = complete(p, D);
    const QuiverPtr& q = p.quiver_ptr();
    NCPoly f = qtest::random_poly(q, rng, 0, 4, 6);
    NCPoly nf = rs.normal_form(f);
    EXPECT_EQ(rs.normal_form(nf), nf);
    for (const auto& [w, c] : nf.terms()) EXPECT_FALSE(rs.reducible(w));
    for (const auto& r : p.relations()) {
      NCPoly u = qtest::random_poly(q, rng, 0, 1, 1, 1);
      NCPoly prod = (u * r).truncated(D);
      // u r is in the ideal; modulo W^{D+1} its normal form vanishes
      EXPECT_TRUE(rs.normal_form(prod).truncated(D).is_zero() || prod.max_degree() > D);
    }
  }
}

TEST(RewriteProperties, GrGeneratorsGenerateMinimalParts) {
  // every minimal part of a relation lies in the ideal of the reported gr generators
  std::mt19937 rng(16);
  int checked = 0;
  for (int t = 0; t < 15; ++t) {
    Presentation p = qtest::random_loop_presentation(rng);
    if (!p.admissible()) continue;
    auto gr = gr_ideal(p, 4);
    if (gr.generators.empty()) continue;
    Presentation gp(p.quiver_ptr(), gr.generators, Flavor::graded);
    auto rs = complete(gp, 4);
    ++checked;
    for (const auto& r : p.relations())
      if (r.min_degree() <= 4) {
        EXPECT_TRUE(rs.normal_form(r.min_part()).is_zero()) << format_poly(r);
      }
  }
  EXPECT_GE(checked, 5);
}

TEST(ExtProperties, TangentSpaceEqualsCocycles) {
  std::mt19937 rng(17);
  for (int t = 0; t < 25; ++t) {
    auto inst = qtest::random_valid_instance(rng);
    ASSERT_TRUE(check_representation(inst.rep).ok);
    EXPECT_EQ(tangent_space_dim(inst.presentation, inst.rep), static_cast<std::int64_t>(cocycle_dim(inst.rep, inst.rep)));
  }
}

TEST(ExtProperties, ExtIsAdditive) {
  std::mt19937 rng(18);
  for (int t = 0; t < 10; ++t) {
    auto inst = qtest::random_valid_instance(rng);
    const auto& m = inst.rep;
    Representation mm = direct_sum(m, m);
    EXPECT_EQ(ext1_dim(mm, m), 2 * ext1_dim(m, m));
    EXPECT_EQ(hom_dim(m, mm), 2 * hom_dim(m, m));
  }
}

TEST(ExtProperties, OrbitPlusExtIsCocycles) {
  std::mt19937 rng(19);
  for (int t = 0; t < 10; ++t) {
    auto inst = qtest::random_valid_instance(rng);
    const auto& m = inst.rep;
    EXPECT_EQ(static_cast<std::int64_t>(ext1_dim(m, m)) + orbit_dim(m), static_cast<std::int64_t>(cocycle_dim(m, m)));
  }
}

TEST(NcalgProperties, CyclicDerivativeMatchesDefinition) {
  std::mt19937 rng(20);
  for (const auto& q : qtest::superpotential_quivers()) {
    for (int t = 0; t < 10; ++t) {
      Superpotential w = qtest::random_superpotential(q, rng, 5);
      for (std::size_t a = 0; a < q->num_arrows(); ++a) {
        EXPECT_EQ(cyclic_derivative(w, a), qtest::oracle_cyclic_derivative(w.as_poly(), a));
        NCPoly s = cyclic_symmetrize(w);
        EXPECT_EQ(right_strip(s, a), left_strip(a, s));
      }
    }
  }
}

TEST(StructureProperties, SuperpotentialRoundTrip) {
  std::mt19937 rng(21);
  for (const auto& q : qtest::superpotential_quivers()) {
    for (int t = 0; t < 8; ++t) {
      Superpotential w = qtest::random_superpotential(q, rng, 5);
      std::map<std::size_t, NCPoly> rels;
      for (std::size_t a = 0; a < q->num_arrows(); ++a) rels.emplace(a, cyclic_derivative(w, a));
      auto v = superpotential_form(q, rels);
      ASSERT_TRUE(v.yes) << v.certificate;
      for (std::size_t a = 0; a < q->num_arrows(); ++a) EXPECT_EQ(cyclic_derivative(*v.w, a), rels.at(a));
    }
  }
}

TEST(StructureProperties, PreprojectiveRoundTripSmallQuivers) {
  std::size_t checked = 0;
  for (std::size_t n = 1; n <= 3; ++n)
    for (std::size_t m = 1; m <= 3; ++m)
      qtest::for_each_quiver(n, m, [&](const Quiver& q) {
        auto qd = make_quiver(double_quiver(q));
        auto v = preprojective_form(preprojective_relations(qd));
        ASSERT_TRUE(v.yes) << v.witness;
        EXPECT_EQ(v.base_change, Matrix::identity(qd->num_arrows()));
        for (const auto& [a, b] : v.pairing) EXPECT_EQ(*qd->partner(a), b);
        ++checked;
      });
  EXPECT_GT(checked, 100u);
}

TEST(StructureProperties, PreprojectiveInvariantUnderRescaling) {
  std::mt19937 rng(22);
  std::uniform_int_distribution<int> sc(1, 4), sign(0, 1);
  for (std::size_t m = 1; m <= 3; ++m)
    qtest::for_each_quiver(2, m, [&](const Quiver& q) {
      auto qd = make_quiver(double_quiver(q));
      std::vector<Scalar> scale;
      for (std::size_t a = 0; a < qd->num_arrows(); ++a) scale.push_back(Scalar(sign(rng) ? sc(rng) : -sc(rng), sc(rng)));
      std::vector<NCPoly> rels;
      for (const auto& r : preprojective_relations(qd)) {
        NCPoly s(qd);
        for (const auto& [w, c] : r.terms()) {
          Scalar f = c;
          for (std::size_t k = 0; k < w.length(); ++k) f *= scale[w[k]];
          s.add_term(w, f);
        }
        rels.push_back(s);
      }
      auto v = preprojective_form(rels);
      ASSERT_TRUE(v.yes) << v.witness;
      // antisymmetry certificate: alpha_t(a) g_ab = -alpha_t(b) g_ba
      auto qp = extract_quadratic(rels);
      for (std::size_t a = 0; a < qd->num_arrows(); ++a)
        for (std::size_t b = 0; b < qd->num_arrows(); ++b)
          EXPECT_EQ(v.alpha[qd->arrow(a).tail] * qp.at(a, b), -(v.alpha[qd->arrow(b).tail] * qp.at(b, a)));
    });
}

TEST(DeformProperties, GeometricInverseMultipliesBack) {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> entry(-2, 2), dim(1, 3);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = static_cast<std::size_t>(dim(rng)), K = 3, k = 2;
    Matrix c = Matrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) c(i, j) = entry(rng);
    TensorSeries s = TensorSeries::constant(k, K, c);
    for (const SymWord& w : {SymWord{0}, SymWord{1}, SymWord{0, 1}, SymWord{1, 1, 0}}) {
      Matrix m(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = entry(rng);
      s.add_term(w, m);
    }
    TensorSeries one = TensorSeries::constant(k, K, Matrix::identity(n));
    TensorSeries inv = geometric_inverse(s);
    EXPECT_EQ(ts_multiply(s, inv), one);
    EXPECT_EQ(ts_multiply(inv, s), one);
  }
}

TEST(SessionProperties, PrintParseRoundTripOnRandomSessions) {
  std::mt19937 rng(24);
  std::uniform_int_distribution<int> nloops(1, 3), nrels(1, 3), dim(1, 3), entry(-3, 3), coin(0, 1);
  const std::vector<std::string> loop_names{"X", "Y", "Z"};
  for (int t = 0; t < 40; ++t) {
    std::ostringstream src;
    const int k = nloops(rng);
    std::vector<std::string> names(loop_names.begin(), loop_names.begin() + k);
    src << "field q\n";
    src << "quiver Q" << t << " { vertices: v w; arrows: ";
    for (int i = 0; i < k; ++i) src << (i ? ", " : "") << names[i] << ": v -> v";
    src << ", b: v -> w }\n";
    auto q = make_quiver(Quiver({"v", "w"}, [&] {
      std::vector<ArrowSpec> a;
      for (const auto& n : names) a.push_back({n, "v", "v"});
      a.push_back({"b", "w", "v"});
      return a;
    }()));
    src << "algebra A { relations: ";
    const int r = nrels(rng);
    for (int i = 0; i < r; ++i) {
      std::vector<std::string> lq(names);
      NCPoly p = qtest::random_poly(loops(lq), rng, 2, 3, 2);
      src << (i ? "; " : "") << format_poly(p);
    }
    src << (coin(rng) ? "; flavor: complete" : "") << " }\n";
    std::string text = src.str();
    // insert the 'over' clause
    text.replace(text.find("algebra A {"), 11, "algebra A over Q" + std::to_string(t) + " {");
    const int n = dim(rng);
    std::ostringstream rep;
    rep << "rep R of A { dim: v=" << n << " w=1";
    for (int i = 0; i < k; ++i) {
      rep << "; " << names[i] << " = [";
      for (int a = 0; a < n; ++a) {
        rep << (a ? ", " : "") << "[";
        for (int b = 0; b < n; ++b) rep << (b ? ", " : "") << entry(rng);
        rep << "]";
      }
      rep << "]";
    }
    rep << "; b = [[";
    for (int b = 0; b < n; ++b) rep << (b ? ", " : "") << entry(rng) << "/" << (b + 2);
    rep << "]] }\n";
    text += rep.str();
    text += "tangent R\nmincounts A 4\ngrideal A\n";
    Session s = parse_session(text);
    std::string printed = print_session(s);
    EXPECT_EQ(parse_session(printed), s) << text << "\n---\n" << printed;
    EXPECT_EQ(print_session(parse_session(printed)), printed);
    (void)q;
  }
}

TEST(SessionProperties, ReportsAreDeterministic) {
  const std::string src = qtest::read_file(std::string(QLOCAL_SAMPLES_DIR) + "/structure.qls");
  std::string first = run_session(parse_session(src), {}).document.dump();
  for (int i = 0; i < 3; ++i) EXPECT_EQ(run_session(parse_session(src), {}).document.dump(), first);
}
