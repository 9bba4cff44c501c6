// Copyright 2026 The progbox Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "progbox/scenarios.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <random>
#include <sstream>
#include <stdexcept>

namespace progbox {

namespace {

// Wire names for the three- and four-qubit registers.
constexpr std::size_t kA = 0;
constexpr std::size_t kB = 1;
constexpr std::size_t kC = 2;
constexpr std::size_t kD = 3;
constexpr std::size_t kC1 = 2;
constexpr std::size_t kC2 = 3;

// (A,B,C1,C2) -> (C1,C2,A,B): wire i moves to kOrderPermutation[i].
const std::vector<std::size_t> kOrderPermutation{2, 3, 0, 1};

ComplexMatrix anti(std::size_t i, std::size_t j, std::size_t n) {
  return sym_antisym_projectors({i, j}, n).antisymmetric;
}

ComplexMatrix sym(std::size_t i, std::size_t j, std::size_t n) {
  return sym_antisym_projectors({i, j}, n).symmetric;
}

ComplexMatrix outer(const ComplexVector& a) { return a * a.adjoint(); }

// |bit><bit| on one wire of an n-qubit register.
ComplexMatrix wire_projector(char bit, std::size_t wire, std::size_t n) {
  const std::vector<std::size_t> wires{wire};
  return embed_operator(outer(basis_vector(std::string(1, bit))), wires, n);
}

DensityMatrix averaged(const PureState& psi, const BoxPattern& pattern,
                       const ScenarioContext& ctx) {
  return average_pattern(psi, pattern, ctx.method, ctx.options).rho;
}

DensityMatrix design_average(const PureState& psi, const BoxPattern& pattern) {
  return average_pattern(psi, pattern, AveragingMethod::Design).rho;
}

double trace_of(const ComplexMatrix& op, const DensityMatrix& rho) {
  return (op * rho.matrix()).trace().real();
}

std::string format_number(double x) {
  std::ostringstream os;
  os.precision(15);
  os << x;
  return os.str();
}

Scenario base_scenario(std::string id, std::string citation, PureState state, BoxPattern p1,
                       BoxPattern p2, const std::string& reference_key) {
  Scenario s{std::move(id), std::move(citation), std::move(state), std::move(p1),
             std::move(p2), Povm{}, {}, {0.5, 0.5}, ScenarioMode::Unambiguous,
             reference(reference_key), {}, {}};
  return s;
}

void note_four_qubit_norm(Scenario& s) {
  const double raw = four_qubit_test_state_raw_norm();
  s.metadata.push_back("four-qubit test state: raw norm " + format_number(raw) +
                       (std::abs(raw - 1.0) <= 1e-12 ? " (no renormalization)"
                                                     : " (renormalized by " +
                                                           format_number(1.0 / raw) + ")"));
}

// ---------------------------------------------------------------------------
// One reference box, one unlabelled box.

Scenario one_ref_unambiguous() {
  Scenario s = base_scenario("one-ref-unambiguous",
                             "one reference + one unlabelled box; singlet input, symmetric "
                             "component identifies V: success 3/8, failure 5/8",
                             bell(BellKind::PsiMinus), BoxPattern::parse("UU"),
                             BoxPattern::parse("UV"), "one-ref-unambiguous.success");
  s.povm = Povm{{{kIdentify2, sym(0, 1, 2)}, {kFail, anti(0, 1, 2)}}};
  s.identifies = {{kIdentify2, 1}};
  s.extra_checks = [povm = s.povm, ids = s.identifies](const ScenarioContext& ctx) {
    std::vector<Check> out;
    const std::vector<DensityMatrix> states{ctx.rho1, ctx.rho2};
    const std::vector<double> priors{0.5, 0.5};
    const UnambiguousResult r = unambiguous_eval(povm, states, priors, ids);
    const ReferenceValue& fail = reference("one-ref-unambiguous.failure");
    out.push_back(make_check("failure probability", r.failure_prob, fail.value, fail.tolerance));

    // A test state in the symmetric subspace, detecting the antisymmetric part.
    const PureState symmetric_input = bell(BellKind::PhiPlus);
    const std::vector<DensityMatrix> sym_states{
        averaged(symmetric_input, BoxPattern::parse("UU"), ctx),
        averaged(symmetric_input, BoxPattern::parse("UV"), ctx)};
    const Povm sym_povm{{{kIdentify2, anti(0, 1, 2)}, {kFail, sym(0, 1, 2)}}};
    const UnambiguousResult rs = unambiguous_eval(sym_povm, sym_states, priors, ids);
    const ReferenceValue& sym_ref = reference("one-ref-unambiguous.symmetric-input-success");
    out.push_back(make_check("symmetric-input success", rs.p_success, sym_ref.value,
                             sym_ref.tolerance));
    out.push_back(make_check("symmetric-input cross-talk", rs.cross_talk, 0.0, kCrossTalkTolerance));
    const double rank2 = static_cast<double>(range_basis(ctx.rho2).dim());
    out.push_back(make_check("rank of the V-hypothesis state", rank2, 4.0, 0.0));
    return out;
  };
  return s;
}

Scenario one_ref_minerror() {
  Scenario s = base_scenario("one-ref-minerror",
                             "one reference + one unlabelled box; singlet input, Helstrom "
                             "measurement: error 1/8",
                             bell(BellKind::PsiMinus), BoxPattern::parse("UU"),
                             BoxPattern::parse("UV"), "one-ref-minerror.error");
  s.mode = ScenarioMode::MinError;
  const DensityMatrix rho1 = design_average(s.state, s.pattern1);
  const DensityMatrix rho2 = design_average(s.state, s.pattern2);
  s.povm = helstrom(rho1, rho2).optimal_projectors;
  s.identifies = {{kIdentify1, 0}, {kIdentify2, 1}};
  s.extra_checks = [](const ScenarioContext& ctx) {
    std::vector<Check> out;
    const MinErrorResult h = helstrom(ctx.rho1, ctx.rho2);
    const ReferenceValue& ref = reference("one-ref-minerror.error");
    out.push_back(make_check("Helstrom error", h.p_error, ref.value, ref.tolerance));
    out.push_back(make_check("identify-1 projector equals P_anti",
                             max_abs_diff(h.optimal_projectors.at(kIdentify1), anti(0, 1, 2)), 0.0,
                             1e-10));
    std::vector<double> grid;
    for (int i = 0; i <= 10; ++i) grid.push_back(i / 10.0);
    double worst = 0.0;
    for (const SingletWeightRow& row : singlet_weight_scan(grid)) {
      worst = std::max(worst, row.deviation);
    }
    out.push_back(make_check("singlet-weight scan vs 2|1/4 - |a|^2|", worst, 0.0, 1e-10));
    return out;
  };
  return s;
}

// ---------------------------------------------------------------------------
// Two reference boxes (U on A, V on B), one unlabelled box on C.

PureState singlet_ac_with_b(const ComplexVector& b_input) {
  const std::vector<Placement> factors{{bell(BellKind::PsiMinus).amplitudes(), {kA, kC}},
                                       {b_input, {kB}}};
  return PureState::normalized(place(factors, 3));
}

Scenario two_ref_singlet() {
  Scenario s = base_scenario("two-ref-singlet",
                             "U and V references + one unlabelled box; singlet on (A,C): "
                             "success 3/8",
                             singlet_ac_with_b(basis_vector("0")), BoxPattern::parse("UVU"),
                             BoxPattern::parse("UVV"), "two-ref-singlet.success");
  s.povm = Povm{{{kIdentify2, sym(kA, kC, 3)}, {kFail, anti(kA, kC, 3)}}};
  s.identifies = {{kIdentify2, 1}};
  s.metadata.push_back("qubit B input defaults to |0>");
  s.extra_checks = [s_copy = s](const ScenarioContext& ctx) {
    // The B input is arbitrary; repeat with a fixed pseudo-random one.
    std::mt19937_64 rng(20260101);
    std::normal_distribution<double> normal;
    ComplexVector b(2);
    b << Complex(normal(rng), normal(rng)), Complex(normal(rng), normal(rng));
    const PureState psi = singlet_ac_with_b(b);
    const DensityMatrix r1 = averaged(psi, s_copy.pattern1, ctx);
    const DensityMatrix r2 = averaged(psi, s_copy.pattern2, ctx);
    const ReferenceValue& ref = reference("two-ref-singlet.success");
    return std::vector<Check>{
        make_check("success with a random qubit-B input", figure_of_merit(s_copy, r1, r2),
                   ref.value, ref.tolerance)};
  };
  return s;
}

Scenario two_ref_symmetric() {
  Scenario s = base_scenario("two-ref-symmetric",
                             "U and V references + one unlabelled box; symmetric input, "
                             "2/3-weighted antisymmetric detectors: success 1/6",
                             basis_state("000"), BoxPattern::parse("UVU"),
                             BoxPattern::parse("UVV"), "two-ref-symmetric.success");
  s.povm = complete_with_failure({{kIdentify1, (2.0 / 3.0) * anti(kB, kC, 3)},
                                  {kIdentify2, (2.0 / 3.0) * anti(kA, kC, 3)}});
  s.identifies = {{kIdentify1, 0}, {kIdentify2, 1}};
  s.extra_checks = [s_copy = s](const ScenarioContext& ctx) {
    std::vector<Check> out;
    const PovmReport report = validate_povm(s_copy.povm);
    out.push_back(make_condition("POVM complete and positive", report.completeness_error, 0.0,
                                 report.valid));
    // Largest w with I - w (P_anti(B,C) + P_anti(A,C)) >= 0.
    const double lmax = herm_eig(anti(kB, kC, 3) + anti(kA, kC, 3)).eigenvalues(0);
    const ReferenceValue& w = reference("two-ref-symmetric.detector-weight");
    out.push_back(make_check("largest detector weight", 1.0 / lmax, w.value, w.tolerance));
    out.push_back(make_check("rho1 = P_sym(A,C) x I_B / 6",
                             max_abs_diff(ctx.rho1.matrix(), sym(kA, kC, 3) / 6.0), 0.0, 1e-10));
    // Random pairwise baseline: test one pair or the other with probability 1/2.
    Scenario baseline = s_copy;
    baseline.povm = complete_with_failure(
        {{kIdentify1, 0.5 * anti(kB, kC, 3)}, {kIdentify2, 0.5 * anti(kA, kC, 3)}});
    const ReferenceValue& base = reference("two-ref-symmetric.random-pairwise-success");
    out.push_back(make_check("random pairwise baseline",
                             figure_of_merit(baseline, ctx.rho1, ctx.rho2), base.value,
                             base.tolerance));
    return out;
  };
  return s;
}

Scenario two_ref_minerror_3q() {
  Scenario s = base_scenario("two-ref-minerror-3q",
                             "U and V references + one unlabelled box; approximate double "
                             "singlet, Helstrom measurement: error (1 - 1/sqrt3)/2",
                             approx_double_singlet_3q(), BoxPattern::parse("UVU"),
                             BoxPattern::parse("UVV"), "two-ref-minerror-3q.error");
  s.mode = ScenarioMode::MinError;
  s.povm = helstrom(design_average(s.state, s.pattern1), design_average(s.state, s.pattern2))
               .optimal_projectors;
  s.identifies = {{kIdentify1, 0}, {kIdentify2, 1}};
  s.extra_checks = [psi = s.state](const ScenarioContext& ctx) {
    std::vector<Check> out;
    const ReferenceValue& err = reference("two-ref-minerror-3q.error");
    out.push_back(make_check("Helstrom error", helstrom(ctx.rho1, ctx.rho2).p_error, err.value,
                             err.tolerance));

    const ComplexMatrix diff = 0.5 * (ctx.rho1.matrix() - ctx.rho2.matrix());
    const ReferenceValue& bev = reference("two-ref-minerror-3q.block-eigenvalue");
    // Blocks {|010>,|100>,|001>} and {|101>,|011>,|110>}.
    const std::array<std::array<Eigen::Index, 3>, 2> blocks{{{2, 4, 1}, {5, 3, 6}}};
    double worst = 0.0;
    ComplexMatrix remainder = diff;
    for (const auto& idx : blocks) {
      ComplexMatrix block(3, 3);
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          block(i, j) = diff(idx[i], idx[j]);
          remainder(idx[i], idx[j]) = 0.0;
        }
      }
      const Eigen::VectorXd ev = herm_eig(block).eigenvalues;
      const Eigen::Vector3d expected(bev.value, 0.0, -bev.value);
      worst = std::max(worst, (ev - expected).cwiseAbs().maxCoeff());
    }
    out.push_back(make_check("3x3 block eigenvalues +-1/(4 sqrt3), 0", worst, 0.0, bev.tolerance));
    out.push_back(make_check("entries outside the two blocks", remainder.cwiseAbs().maxCoeff(), 0.0,
                             1e-12));
    const ReferenceValue& tn = reference("two-ref-minerror-3q.trace-norm");
    out.push_back(make_check("sum of |eigenvalues|", abs_eig_sum(diff), tn.value, tn.tolerance));

    const ReferenceValue& fid = reference("two-ref-minerror-3q.singlet-fidelity");
    const DensityMatrix full = DensityMatrix::from_pure(psi);
    const ComplexVector singlet = bell(BellKind::PsiMinus).amplitudes();
    for (const auto& [name, keep] : {std::pair<const char*, std::vector<std::size_t>>{
                                         "singlet fidelity of (A,C)", {kA, kC}},
                                     {"singlet fidelity of (B,C)", {kB, kC}}}) {
      const DensityMatrix marginal = partial_trace(full, keep);
      const double f = singlet.dot(marginal.matrix() * singlet).real();
      out.push_back(make_check(name, f, fid.value, fid.tolerance));
    }
    return out;
  };
  return s;
}

// ---------------------------------------------------------------------------
// Four-qubit strategies for the same problem (fourth qubit D untouched).

ComplexMatrix four_qubit_rho1_closed_form() {
  ComplexVector w(2);
  w << 1.0, 0.5;
  const std::vector<std::size_t> d{kD};
  return 0.25 * anti(kA, kC, 4) * embed_operator(outer(w), d, 4) +
         (1.0 / 16.0) * sym(kA, kC, 4) * wire_projector('1', kD, 4);
}

ComplexMatrix four_qubit_rho2_closed_form() {
  ComplexVector w(2);
  w << 0.5, 1.0;
  const std::vector<std::size_t> d{kD};
  return 0.25 * anti(kB, kC, 4) * embed_operator(outer(w), d, 4) +
         (1.0 / 16.0) * sym(kB, kC, 4) * wire_projector('0', kD, 4);
}

Scenario two_ref_4q_pairwise() {
  Scenario s = base_scenario("two-ref-4q-pairwise",
                             "U and V references + one unlabelled box; four-qubit state, "
                             "pairwise POVM: success 3/8 for both hypotheses",
                             four_qubit_test_state(), BoxPattern::parse("UVUI"),
                             BoxPattern::parse("UVVI"), "two-ref-4q-pairwise.success");
  const ComplexMatrix d0 = wire_projector('0', kD, 4);
  const ComplexMatrix d1 = wire_projector('1', kD, 4);
  s.povm = complete_with_failure(
      {{kIdentify1, sym(kB, kC, 4) * d1}, {kIdentify2, sym(kA, kC, 4) * d0}});
  s.identifies = {{kIdentify1, 0}, {kIdentify2, 1}};
  note_four_qubit_norm(s);
  s.extra_checks = [povm = s.povm, d0, d1](const ScenarioContext& ctx) {
    std::vector<Check> out;
    const ReferenceValue& ref = reference("two-ref-4q-pairwise.success");
    out.push_back(make_check("Tr(Pi1 rho1)", trace_of(povm.at(kIdentify1), ctx.rho1), ref.value,
                             ref.tolerance));
    out.push_back(make_check("Tr(Pi2 rho2)", trace_of(povm.at(kIdentify2), ctx.rho2), ref.value,
                             ref.tolerance));
    out.push_back(make_check("Tr(Pi1 rho2)", trace_of(povm.at(kIdentify1), ctx.rho2), 0.0,
                             ref.tolerance));
    out.push_back(make_check("Tr(Pi2 rho1)", trace_of(povm.at(kIdentify2), ctx.rho1), 0.0,
                             ref.tolerance));
    const ComplexMatrix displayed_fail = anti(kB, kC, 4) * d1 + anti(kA, kC, 4) * d0;
    out.push_back(make_check("failure element = P_anti(B,C)|1><1| + P_anti(A,C)|0><0|",
                             max_abs_diff(povm.at(kFail), displayed_fail), 0.0, 1e-12));
    out.push_back(make_check("rho1 closed form",
                             max_abs_diff(ctx.rho1.matrix(), four_qubit_rho1_closed_form()), 0.0,
                             1e-10));
    out.push_back(make_check("rho2 closed form",
                             max_abs_diff(ctx.rho2.matrix(), four_qubit_rho2_closed_form()), 0.0,
                             1e-10));
    out.push_back(make_check("test state raw norm", four_qubit_test_state_raw_norm(), 1.0, 1e-12));
    return out;
  };
  return s;
}

Scenario two_ref_4q_subspace() {
  Scenario s = base_scenario("two-ref-4q-subspace",
                             "U and V references + one unlabelled box; four-qubit state, POVM "
                             "discriminating the ranges of the two averaged states: published "
                             "per-state success ~0.43",
                             four_qubit_test_state(), BoxPattern::parse("UVUI"),
                             BoxPattern::parse("UVVI"), "two-ref-4q-subspace.success");
  const DensityMatrix rho1 = design_average(s.state, s.pattern1);
  const DensityMatrix rho2 = design_average(s.state, s.pattern2);
  const Subspace s1 = range_basis(rho1);
  const Subspace s2 = range_basis(rho2);
  const SubspacePovm sp = unambiguous_subspace_povm(s1, s2);
  s.povm = sp.povm;
  s.identifies = {{kIdentify1, 0}, {kIdentify2, 1}};
  note_four_qubit_norm(s);
  {
    std::ostringstream os;
    os << "range dimensions " << s1.dim() << " and " << s2.dim() << "; Jordan cosines";
    for (const JordanPair& p : jordan_bases(s1, s2).pairs) os << ' ' << format_number(p.cosine);
    s.metadata.push_back(os.str());
  }
  s.extra_checks = [sp](const ScenarioContext& ctx) {
    std::vector<Check> out;
    const ComplexMatrix& pi1 = sp.povm.at(kIdentify1);
    const ComplexMatrix& pi2 = sp.povm.at(kIdentify2);
    const double t11 = trace_of(pi1, ctx.rho1);
    const double t22 = trace_of(pi2, ctx.rho2);
    const ReferenceValue& published = reference("two-ref-4q-subspace.success");
    const ReferenceValue& frozen = reference("two-ref-4q-subspace.success-frozen");
    for (const auto& [name, value] :
         {std::pair<const char*, double>{"Tr(Pi1 rho1)", t11}, {"Tr(Pi2 rho2)", t22}}) {
      out.push_back(make_check(std::string(name) + " vs published ~0.43", value, published.value,
                               published.tolerance));
      out.push_back(make_check(std::string(name) + " vs frozen value", value, frozen.value,
                               frozen.tolerance));
      out.push_back(make_condition(std::string(name) + " exceeds pairwise 3/8", value, 0.375,
                                   value > 0.375 + 1e-9));
    }
    const PovmReport report = validate_povm(sp.povm);
    out.push_back(make_condition("POVM complete and positive", report.completeness_error, 0.0,
                                 report.valid));
    out.push_back(make_condition("neither range contains the other", sp.precondition_ok ? 1 : 0,
                                 1.0, sp.precondition_ok));
    const Subspace r1 = range_basis(ctx.rho1);
    const Subspace r2 = range_basis(ctx.rho2);
    double leak = 0.0;
    for (Eigen::Index j = 0; j < r2.basis().cols(); ++j) {
      leak = std::max(leak, (pi1 * r2.basis().col(j)).norm());
    }
    for (Eigen::Index j = 0; j < r1.basis().cols(); ++j) {
      leak = std::max(leak, (pi2 * r1.basis().col(j)).norm());
    }
    out.push_back(make_check("identify elements annihilate the opposing range", leak, 0.0, 1e-9));
    const ReferenceValue& coeff = reference("two-ref-4q-subspace.block-coefficient");
    for (const JordanBlockWeight& b : sp.block_weights) {
      out.push_back(make_check("Jordan block detector weight", b.weight, coeff.value,
                               coeff.tolerance));
    }
    return out;
  };
  return s;
}

// ---------------------------------------------------------------------------
// Two references (U on A, V on B) and two unlabelled boxes C1, C2.

Povm pair_same_unambiguous_povm() {
  return complete_with_failure({{kIdentify1, sym(kA, kC1, 4) * anti(kB, kC2, 4)},
                                {kIdentify2, anti(kA, kC1, 4) * sym(kB, kC2, 4)}});
}

Scenario pair_same_unambiguous() {
  Scenario s = base_scenario("pair-same-unambiguous",
                             "U and V references + two identical unlabelled boxes; double "
                             "singlet, unambiguous: success 3/4",
                             double_singlet({kA, kC1}, {kB, kC2}, 4), BoxPattern::parse("UVVV"),
                             BoxPattern::parse("UVUU"), "pair-same-unambiguous.success");
  s.povm = pair_same_unambiguous_povm();
  s.identifies = {{kIdentify1, 0}, {kIdentify2, 1}};
  s.extra_checks = [povm = s.povm](const ScenarioContext& ctx) {
    std::vector<Check> out;
    out.push_back(make_check("rho1 = I(A,C1) x P_anti(B,C2) / 4",
                             max_abs_diff(ctx.rho1.matrix(), 0.25 * anti(kB, kC2, 4)), 0.0, 1e-10));
    out.push_back(make_check("rho2 = P_anti(A,C1) x I(B,C2) / 4",
                             max_abs_diff(ctx.rho2.matrix(), 0.25 * anti(kA, kC1, 4)), 0.0, 1e-10));
    const ComplexMatrix displayed_fail =
        sym(kA, kC1, 4) * sym(kB, kC2, 4) + anti(kA, kC1, 4) * anti(kB, kC2, 4);
    out.push_back(make_check("failure element = P_sym P_sym + P_anti P_anti",
                             max_abs_diff(povm.at(kFail), displayed_fail), 0.0, 1e-12));
    out.push_back(make_check("Tr(Pi1 rho1)", trace_of(povm.at(kIdentify1), ctx.rho1), 0.75, 1e-10));
    out.push_back(make_check("Tr(Pi2 rho2)", trace_of(povm.at(kIdentify2), ctx.rho2), 0.75, 1e-10));
    return out;
  };
  return s;
}

Scenario pair_same_minerror() {
  Scenario s = base_scenario("pair-same-minerror",
                             "U and V references + two identical unlabelled boxes; double "
                             "singlet, failure outcomes reassigned: error 1/8",
                             double_singlet({kA, kC1}, {kB, kC2}, 4), BoxPattern::parse("UVVV"),
                             BoxPattern::parse("UVUU"), "pair-same-minerror.error");
  s.mode = ScenarioMode::MinError;
  const ComplexMatrix s_ac = sym(kA, kC1, 4);
  const ComplexMatrix a_ac = anti(kA, kC1, 4);
  const ComplexMatrix s_bc = sym(kB, kC2, 4);
  const ComplexMatrix a_bc = anti(kB, kC2, 4);
  s.povm = Povm{{{kIdentify1, s_ac * a_bc + s_ac * s_bc}, {kIdentify2, a_ac * s_bc + a_ac * a_bc}}};
  s.identifies = {{kIdentify1, 0}, {kIdentify2, 1}};
  s.metadata.push_back("ambiguous P_anti x P_anti outcome is assigned to the second hypothesis");
  s.extra_checks = [povm = s.povm](const ScenarioContext& ctx) {
    const PovmReport report = validate_povm(povm);
    const ReferenceValue& ref = reference("pair-same-minerror.error");
    return std::vector<Check>{
        make_condition("POVM complete and positive", report.completeness_error, 0.0, report.valid),
        make_check("Helstrom error matches", helstrom(ctx.rho1, ctx.rho2).p_error, ref.value,
                   ref.tolerance)};
  };
  return s;
}

Scenario order_two_u_refs() {
  // Same physical test state; the identical-pair POVM is carried back
  // through the wire reordering. Hypothesis 1 (C1=U, C2=V) corresponds to
  // the identical-pair hypothesis "both U" and vice versa.
  Scenario s = base_scenario("order-two-u-refs",
                             "order finding with two U references; maps onto the identical-pair "
                             "problem by reordering boxes and exchanging U and V: success 3/4",
                             double_singlet({kA, kC1}, {kB, kC2}, 4), BoxPattern::parse("UUUV"),
                             BoxPattern::parse("UUVU"), "order-two-u-refs.success");
  const Povm pair = pair_same_unambiguous_povm();
  const std::vector<std::size_t> back = inverse_permutation(kOrderPermutation);
  s.povm = complete_with_failure({{kIdentify1, permute_qubits(pair.at(kIdentify2), back)},
                                  {kIdentify2, permute_qubits(pair.at(kIdentify1), back)}});
  s.identifies = {{kIdentify1, 0}, {kIdentify2, 1}};
  s.metadata.push_back("wire reordering (A,B,C1,C2) -> (C1,C2,A,B), U <-> V in hypothesis 2");
  s.extra_checks = [psi = s.state](const ScenarioContext& ctx) {
    const EquivalenceWitness w = equivalence_witness_order_refs(ctx.method, ctx.options);
    const PureState moved = permute_qubits(psi, kOrderPermutation);
    const PureState pair_state = double_singlet({kA, kC1}, {kB, kC2}, 4);
    return std::vector<Check>{
        make_condition("reordered patterns match the identical-pair patterns", 0.0, 0.0,
                       w.patterns_match),
        make_check("witness deviation, hypothesis 1", w.deviation_first, 0.0, 1e-10),
        make_check("witness deviation, hypothesis 2", w.deviation_second, 0.0, 1e-10),
        make_check("reordered test state equals the double singlet",
                   max_abs_diff(moved.projector(), pair_state.projector()), 0.0, 1e-12)};
  };
  return s;
}

ComplexVector on_pairs(const ComplexVector& first, WirePair p1, const ComplexVector& second,
                       WirePair p2) {
  const std::vector<Placement> f{{first, {p1.first, p1.second}}, {second, {p2.first, p2.second}}};
  return place(f, 4);
}

Scenario order_uv_refs() {
  Scenario s = base_scenario("order-uv-refs",
                             "order finding with U and V references; only the second ordering "
                             "can be identified: Tr(Pi2 rho2) = 2/3, success 1/3",
                             double_singlet({kA, kC1}, {kB, kC2}, 4), BoxPattern::parse("UVUV"),
                             BoxPattern::parse("UVVU"), "order-uv-refs.success");
  const WirePair bc1{kB, kC1};
  const WirePair ac2{kA, kC2};
  const ComplexVector psi_plus = bell(BellKind::PsiPlus).amplitudes();
  const ComplexVector q = (on_pairs(psi_plus, bc1, psi_plus, ac2) -
                           on_pairs(basis_vector("00"), bc1, basis_vector("11"), ac2) -
                           on_pairs(basis_vector("11"), bc1, basis_vector("00"), ac2)) /
                          std::sqrt(3.0);
  const ComplexMatrix s_bc1 = sym(kB, kC1, 4);
  const ComplexMatrix a_bc1 = anti(kB, kC1, 4);
  const ComplexMatrix s_ac2 = sym(kA, kC2, 4);
  const ComplexMatrix a_ac2 = anti(kA, kC2, 4);
  const ComplexMatrix detect = s_bc1 * s_ac2 - outer(q) + s_bc1 * a_ac2 + a_bc1 * s_ac2;
  s.povm = complete_with_failure({{kIdentify2, hermitian_part(detect)}});
  s.identifies = {{kIdentify2, 1}};
  s.metadata.push_back("the first ordering's state lies inside the second's support");
  s.extra_checks = [s_copy = s, bc1, ac2, s_bc1, a_bc1, s_ac2, a_ac2](const ScenarioContext& ctx) {
    std::vector<Check> out;
    const ReferenceValue& t22 = reference("order-uv-refs.identify-2-on-rho2");
    out.push_back(make_check("Tr(Pi2 rho2)", trace_of(s_copy.povm.at(kIdentify2), ctx.rho2),
                             t22.value, t22.tolerance));
    out.push_back(make_check("rho1 equals the unaveraged double-singlet projector",
                             max_abs_diff(ctx.rho1.matrix(), s_copy.state.projector()), 0.0, 1e-10));
    const ComplexMatrix rho2_closed = 0.25 * (s_bc1 * s_ac2 / 3.0 + a_bc1 * a_ac2);
    out.push_back(make_check("rho2 closed form", max_abs_diff(ctx.rho2.matrix(), rho2_closed), 0.0,
                             1e-10));

    // Bell-basis expansion over the (B,C1), (A,C2) pairs.
    const ComplexVector psi_plus = bell(BellKind::PsiPlus).amplitudes();
    const ComplexVector psi_minus = bell(BellKind::PsiMinus).amplitudes();
    const std::array<std::pair<ComplexVector, double>, 4> terms{{
        {on_pairs(psi_plus, bc1, psi_plus, ac2), 0.5},
        {on_pairs(psi_minus, bc1, psi_minus, ac2), 0.5},
        {on_pairs(basis_vector("00"), bc1, basis_vector("11"), ac2), -0.5},
        {on_pairs(basis_vector("11"), bc1, basis_vector("00"), ac2), -0.5},
    }};
    ComplexVector rebuilt = ComplexVector::Zero(16);
    double worst = 0.0;
    for (const auto& [vec, coeff] : terms) {
      worst = std::max(worst, std::abs(vec.dot(s_copy.state.amplitudes()) - coeff));
      rebuilt += coeff * vec;
    }
    worst = std::max(worst, (rebuilt - s_copy.state.amplitudes()).norm());
    out.push_back(make_check("four-term Bell expansion with coefficients 1/2", worst, 0.0, 1e-12));
    const bool first_never = std::none_of(s_copy.identifies.begin(), s_copy.identifies.end(),
                                          [](const auto& kv) { return kv.second == 0; });
    out.push_back(make_condition("no identify element for the first ordering", 0.0, 0.0,
                                 first_never));
    return out;
  };
  return s;
}

struct Registration {
  const char* id;
  Scenario (*build)();
};

const std::vector<Registration>& registry() {
  static const std::vector<Registration> r{
      {"one-ref-unambiguous", one_ref_unambiguous},
      {"one-ref-minerror", one_ref_minerror},
      {"two-ref-singlet", two_ref_singlet},
      {"two-ref-symmetric", two_ref_symmetric},
      {"two-ref-minerror-3q", two_ref_minerror_3q},
      {"two-ref-4q-pairwise", two_ref_4q_pairwise},
      {"two-ref-4q-subspace", two_ref_4q_subspace},
      {"pair-same-unambiguous", pair_same_unambiguous},
      {"pair-same-minerror", pair_same_minerror},
      {"order-two-u-refs", order_two_u_refs},
      {"order-uv-refs", order_uv_refs},
  };
  return r;
}

void apply_pattern(ComplexVector& v, const BoxPattern& pattern, const Gate& u, const Gate& v_gate) {
  for (std::size_t w = 0; w < pattern.size(); ++w) {
    switch (pattern.labels()[w]) {
      case Box::RefU: apply_wire(v, u, w); break;
      case Box::RefV: apply_wire(v, v_gate, w); break;
      case Box::Idle: break;
    }
  }
}

}  // namespace

std::string_view to_string(ScenarioMode m) {
  return m == ScenarioMode::Unambiguous ? "unambiguous" : "min_error";
}

Check make_check(std::string name, double value, double expected, double tolerance) {
  return {std::move(name), value, expected, tolerance, std::abs(value - expected) <= tolerance};
}

Check make_condition(std::string name, double value, double expected, bool condition) {
  return {std::move(name), value, expected, 0.0, condition};
}

const std::vector<std::string>& scenario_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const Registration& r : registry()) out.emplace_back(r.id);
    return out;
  }();
  return ids;
}

Scenario build_scenario(std::string_view id) {
  for (const Registration& r : registry()) {
    if (id == r.id) return r.build();
  }
  throw std::invalid_argument("unknown scenario id '" + std::string(id) + "'");
}

double figure_of_merit(const Scenario& s, const DensityMatrix& rho1, const DensityMatrix& rho2) {
  const std::vector<DensityMatrix> states{rho1, rho2};
  const UnambiguousResult r = unambiguous_eval(s.povm, states, s.priors, s.identifies);
  return s.mode == ScenarioMode::Unambiguous ? r.p_success : 1.0 - r.p_success;
}

ScenarioResult run_scenario(const Scenario& s, const ScenarioRunOptions& options) {
  if (s.pattern1.size() != s.state.num_qubits() || s.pattern2.size() != s.state.num_qubits()) {
    throw std::invalid_argument("scenario " + s.id + ": pattern length does not match the state");
  }
  const AveragingMethod exact = options.method == AveragingMethod::MonteCarlo
                                    ? AveragingMethod::Design
                                    : options.method;
  AveragingOptions avg;
  avg.quadrature_nodes = options.quadrature_nodes;
  avg.seed = options.seed;
  avg.shards = options.shards;
  const ScenarioContext ctx{average_pattern(s.state, s.pattern1, exact, avg).rho,
                            average_pattern(s.state, s.pattern2, exact, avg).rho, exact, avg};

  const std::vector<DensityMatrix> states{ctx.rho1, ctx.rho2};
  const UnambiguousResult r = unambiguous_eval(s.povm, states, s.priors, s.identifies);

  ScenarioResult out;
  out.id = s.id;
  out.mode = s.mode;
  out.method = options.method;
  out.analytic = s.mode == ScenarioMode::Unambiguous ? r.p_success : 1.0 - r.p_success;
  out.paper_value = s.reference.value;
  out.tolerance = s.reference.tolerance;
  out.cross_talk = r.cross_talk;
  out.citation = s.citation;
  out.metadata = s.metadata;

  bool pass = std::abs(out.analytic - out.paper_value) <= out.tolerance;
  if (s.mode == ScenarioMode::Unambiguous) pass = pass && r.cross_talk <= kCrossTalkTolerance;

  if (options.mc_samples > 0) {
    // Per-draw figure of merit on the unaveraged output states.
    std::vector<std::pair<ComplexMatrix, std::size_t>> detectors;
    for (const PovmElement& e : s.povm.elements) {
      if (e.label != kFail) detectors.emplace_back(e.op, s.identifies.at(e.label));
    }
    const bool unambiguous = s.mode == ScenarioMode::Unambiguous;
    auto stat = [&](const Gate& u, const Gate& v) {
      std::array<ComplexVector, 2> out_states{s.state.amplitudes(), s.state.amplitudes()};
      apply_pattern(out_states[0], s.pattern1, u, v);
      apply_pattern(out_states[1], s.pattern2, u, v);
      double correct = 0.0;
      for (const auto& [op, target] : detectors) {
        const ComplexVector& phi = out_states[target];
        correct += s.priors[target] * phi.dot(op * phi).real();
      }
      return unambiguous ? correct : 1.0 - correct;
    };
    const ScalarEstimate est =
        monte_carlo_expectation(stat, options.mc_samples, options.seed, options.shards);
    out.mc_estimate = est.mean;
    out.mc_stderr = est.stderr_of_mean;
    pass = pass && std::abs(est.mean - out.analytic) <= 4.0 * est.stderr_of_mean + 1e-12;
  }

  if (s.extra_checks) out.checks = s.extra_checks(ctx);
  pass = pass && std::all_of(out.checks.begin(), out.checks.end(),
                             [](const Check& c) { return c.pass; });
  out.pass = pass;
  return out;
}

std::vector<ScenarioResult> run_all(const ScenarioRunOptions& options) {
  std::vector<std::future<ScenarioResult>> futures;
  for (const std::string& id : scenario_ids()) {
    futures.push_back(std::async(std::launch::async, [id, options] {
      return run_scenario(build_scenario(id), options);
    }));
  }
  std::vector<ScenarioResult> results;
  for (auto& f : futures) results.push_back(f.get());
  return results;
}

EquivalenceWitness equivalence_witness_order_refs(AveragingMethod method,
                                                  const AveragingOptions& options) {
  EquivalenceWitness w;
  w.permutation = kOrderPermutation;
  w.order_pattern1 = BoxPattern::parse("UUUV");
  w.order_pattern2 = BoxPattern::parse("UUVU");
  w.mapped_pattern1 = w.order_pattern1.permuted(w.permutation);
  w.mapped_pattern2 = w.order_pattern2.permuted(w.permutation).swapped_uv();
  w.pair_pattern1 = BoxPattern::parse("UVVV");
  w.pair_pattern2 = BoxPattern::parse("UVUU");
  w.patterns_match = w.mapped_pattern1 == w.pair_pattern2 && w.mapped_pattern2 == w.pair_pattern1;

  const PureState order_state = double_singlet({kA, kC1}, {kB, kC2}, 4);
  const PureState pair_state = double_singlet({kA, kC1}, {kB, kC2}, 4);
  const auto avg = [&](const PureState& psi, const BoxPattern& p) {
    return average_pattern(psi, p, method, options).rho.matrix();
  };
  const ComplexMatrix moved1 = permute_qubits(avg(order_state, w.order_pattern1), w.permutation);
  const ComplexMatrix moved2 = permute_qubits(avg(order_state, w.order_pattern2), w.permutation);
  w.deviation_first = max_abs_diff(moved1, avg(pair_state, w.pair_pattern2));
  w.deviation_second = max_abs_diff(moved2, avg(pair_state, w.pair_pattern1));
  w.pass = w.patterns_match && w.deviation_first <= 1e-10 && w.deviation_second <= 1e-10;
  return w;
}

}  // namespace progbox
