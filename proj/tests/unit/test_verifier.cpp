#include <gtest/gtest.h>

#include <set>

#include "gentile/verifier.hpp"

using namespace gentile;

namespace {

Verdict run(IdentityId id, int n, int nu = 2, int m = 2, Subspace sub = Subspace::sector(1),
            Interpretation interp = Interpretation::not_applicable, EvalMode mode = {}) {
  return run_task({id, n, nu, m, sub, interp, mode});
}

}  // namespace

TEST(Identities, NamesRoundTrip) {
  for (auto id : kAllIdentities) EXPECT_EQ(parse_identity(to_string(id)), id);
  EXPECT_FALSE(parse_identity("EQ_NOPE").has_value());
}

TEST(Verifier, SingleModeGuaranteedIdentitiesHold) {
  for (int n = 1; n <= 8; ++n)
    for (auto id : {IdentityId::NBRACKET_EQ6, IdentityId::PHASE_EQ7, IdentityId::FG_CONSISTENCY_EQ13_14,
                    IdentityId::BRACKET_FN_EQ19_PLAIN}) {
      const auto v = run(id, n);
      EXPECT_EQ(v.status, Status::pass) << to_string(id) << " n=" << n << " r=" << v.residual << " " << v.error;
      EXPECT_LT(v.residual, 1e-12);
      EXPECT_TRUE(v.guaranteed);
    }
}

TEST(Verifier, SecondPhaseRelationHoldsOnlyWithHalfPhase) {
  EXPECT_LT(run(IdentityId::PHASE_EQ8, 1).residual, 1e-12);
  for (int n = 2; n <= 8; ++n) {
    const auto v = run(IdentityId::PHASE_EQ8, n);
    EXPECT_EQ(v.status, Status::report_only);
    EXPECT_GT(v.residual, 0.5) << n;
    EXPECT_LT(v.diagnostics.at("residual_with_half_phase"), 1e-12) << n;
  }
}

TEST(Verifier, CrossModeNBracketIsRecorded) {
  const auto v = run(IdentityId::NBRACKET_EQ6, 2);
  EXPECT_GT(v.diagnostics.at("cross_mode_residual"), 0.5);
  EXPECT_LT(run(IdentityId::NBRACKET_EQ6, 1).diagnostics.at("cross_mode_residual"), 3.0);
}

TEST(Verifier, DeformedBracketReadingFailsPlainHolds) {
  const auto nb = run(IdentityId::BRACKET_FN_EQ19_NBRACKET, 2);
  EXPECT_EQ(nb.status, Status::report_only);
  EXPECT_GT(nb.residual, 1.0);
  EXPECT_EQ(run(IdentityId::BRACKET_FN_EQ19_PLAIN, 2).status, Status::pass);
}

TEST(Verifier, ManyModeGuaranteedIdentitiesHold) {
  for (int n = 1; n <= 3; ++n)
    for (int nu = 2; nu <= 3; ++nu)
      for (auto sub : {Subspace::full(), Subspace::sector(1)})
        for (auto id : {IdentityId::HERMITICITY_CASIMIR, IdentityId::SECTOR_CONSERVATION}) {
          const auto v = run(id, n, nu, 2, sub);
          EXPECT_EQ(v.status, Status::pass) << to_string(id) << " n=" << n << " nu=" << nu << " " << sub.str() << " "
                                            << v.error;
        }
}

TEST(Verifier, FermiLimitAgreesWithTheoremRecipe) {
  for (int nu = 2; nu <= 3; ++nu)
    for (auto sub : {Subspace::full(), Subspace::sector(1)}) {
      const auto v = run(IdentityId::LIMIT_EQ5, 1, nu, 2, sub);
      EXPECT_LT(v.diagnostics.at("theorem_consistency"), 1e-12);
      EXPECT_EQ(v.diagnostics.at("sign"), -1.0);
      EXPECT_EQ(v.status, Status::report_only);
    }
  const auto far = run(IdentityId::LIMIT_EQ5, 2);
  EXPECT_EQ(far.diagnostics.at("limit_applies"), 0.0);
  EXPECT_EQ(far.diagnostics.count("theorem_consistency"), 0u);
}

TEST(Verifier, ContestedResidualsAreFinite) {
  for (auto interp : {Interpretation::entrywise_real, Interpretation::hermitian_part}) {
    const auto v = run(IdentityId::THEOREM_EQ3, 2, 2, 2, Subspace::full(), interp);
    EXPECT_EQ(v.status, Status::report_only);
    EXPECT_TRUE(std::isfinite(v.residual));
    EXPECT_TRUE(v.error.empty());
  }
  for (auto id : {IdentityId::COMMUTATOR_EQ12, IdentityId::DUALITY_TAU_E, IdentityId::QUARTIC_EQ22,
                  IdentityId::CASIMIR_SPECTRUM_MATCH}) {
    const auto v = run(id, 2, 3);
    EXPECT_EQ(v.status, Status::report_only) << to_string(id);
    EXPECT_TRUE(std::isfinite(v.residual)) << to_string(id) << " " << v.error;
  }
}

TEST(Verifier, FrozenContestedValues) {
  // duality holds at n = 1 and fails beyond it
  EXPECT_LT(run(IdentityId::DUALITY_TAU_E, 1, 3, 2, Subspace::full()).residual, 1e-12);
  EXPECT_GT(run(IdentityId::DUALITY_TAU_E, 2, 2, 2, Subspace::full()).residual, 1.0);
  EXPECT_LT(run(IdentityId::QUARTIC_EQ22, 3).residual, 1e-12);
}

TEST(Verifier, OverCapDenseRequestIsAnError) {
  VerifierSettings s;
  s.dense_cap = 10;
  const auto v = run_task({IdentityId::HERMITICITY_CASIMIR, 1, 2, 2, Subspace::full(), {}, {}}, s);
  EXPECT_EQ(v.status, Status::fail);
  EXPECT_FALSE(v.error.empty());
  EXPECT_TRUE(std::isnan(v.residual));
  s = {};
  s.basis_cap = 4;
  EXPECT_FALSE(run_task({IdentityId::HERMITICITY_CASIMIR, 1, 2, 2, Subspace::full(), {}, {}}, s).error.empty());
}

TEST(Verifier, SampledModeNeedsEnoughVectors) {
  const auto v = run(IdentityId::HERMITICITY_CASIMIR, 1, 2, 2, Subspace::sector(1), {}, EvalMode{true, 8, 42});
  EXPECT_FALSE(v.error.empty());
}

TEST(Verifier, SampledAgreesWithDenseOnGuaranteedIdentities) {
  for (auto id : {IdentityId::HERMITICITY_CASIMIR, IdentityId::SECTOR_CONSERVATION, IdentityId::PHASE_EQ7}) {
    const auto d = run(id, 2, 2, 2, Subspace::full());
    const auto s = run(id, 2, 2, 2, Subspace::full(), {}, EvalMode{true, 64, 42});
    EXPECT_LE(s.residual, d.residual + 1e-10) << to_string(id);
    EXPECT_EQ(s.status, Status::pass) << to_string(id);
  }
}

TEST(Grid, ExpansionCountsAndOrder) {
  GridSpec g;
  const auto tasks = expand_grid(g);
  EXPECT_EQ(tasks.size(), 15u * 3 * 2 * 1 * 2);
  for (std::size_t i = 1; i < tasks.size(); ++i) EXPECT_LT(tasks[i - 1].key(), tasks[i].key());
  g.ns.assign(1000, 1);
  EXPECT_THROW(expand_grid(g), DomainError);
}

TEST(Grid, OneVerdictPerIdentityAndOrder) {
  GridSpec g;
  g.ns = {1, 2, 3};
  g.nus = {2};
  g.subspaces = {Subspace::sector(1)};
  g.interpretations = {Interpretation::entrywise_real};
  const auto verdicts = run_grid(g);
  EXPECT_EQ(verdicts.size(), 14u * 3);
  std::set<std::pair<int, int>> seen;
  for (const auto& v : verdicts) EXPECT_TRUE(seen.insert({static_cast<int>(v.task.identity), v.task.n}).second);
}

TEST(Grid, DefaultGridHasNoGuaranteedFailures) {
  const auto verdicts = run_grid(GridSpec{});
  for (const auto& v : verdicts) {
    EXPECT_TRUE(v.error.empty()) << v.error;
    if (v.guaranteed) {
      EXPECT_EQ(v.status, Status::pass) << to_string(v.task.identity) << " n=" << v.task.n;
    }
  }
}
