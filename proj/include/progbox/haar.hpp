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

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "progbox/linalg.hpp"
#include "progbox/states.hpp"

/// Averages over two independent Haar-random SU(2) elements U and V.
///
/// Three engines compute the same quantity E_{U,V}[W X W^dagger], where W
/// applies U, V or nothing to each wire according to a BoxPattern:
///  - design: uniform sum over the 24-element single-qubit Clifford group,
///    exact for up to three copies of each unitary;
///  - quadrature: Gauss-Legendre tensor grid over the rotation-angle /
///    axis parameterization;
///  - monte_carlo: seeded sampling with per-entry standard errors.
namespace progbox {

enum class Box { RefU, RefV, Idle };

/// Which unknown unitary acts on each wire.
class BoxPattern {
 public:
  BoxPattern() = default;
  explicit BoxPattern(std::vector<Box> labels) : labels_(std::move(labels)) {}
  BoxPattern(std::initializer_list<Box> labels) : labels_(labels) {}

  /// Parses a string such as "UVUI" (U, V, I per wire).
  static BoxPattern parse(std::string_view text);

  std::size_t size() const { return labels_.size(); }
  const std::vector<Box>& labels() const { return labels_; }
  std::size_t count(Box b) const;
  std::vector<std::size_t> wires(Box b) const;

  /// Label of wire i moves to wire perm[i].
  BoxPattern permuted(std::span<const std::size_t> perm) const;
  /// Exchanges RefU and RefV.
  BoxPattern swapped_uv() const;

  std::string to_string() const;
  bool operator==(const BoxPattern&) const = default;

 private:
  std::vector<Box> labels_;
};

/// Largest number of wires per unknown unitary that the design engine
/// averages exactly.
inline constexpr std::size_t kDesignMaxCopies = 3;

/// Rotation by theta about the axis (sin mu cos phi, sin mu sin phi, cos mu).
struct Su2Params {
  double theta = 0.0;  // [0, 2 pi]
  double phi = 0.0;    // [0, 2 pi]
  double mu = 0.0;     // [0, pi]
};

/// Haar density in these coordinates: sin^2(theta/2) sin(mu) / (4 pi^2).
double su2_haar_density(const Su2Params& p);

/// exp(-i theta e.sigma / 2). Throws std::invalid_argument for parameters
/// outside their ranges.
Gate su2_from_params(const Su2Params& p);

/// Haar-random SU(2) element from a normalized Gaussian quaternion.
Gate sample_haar_su2(std::mt19937_64& rng);

/// The 24 single-qubit Clifford elements modulo global phase, generated by
/// closing {H, S} under multiplication.
const std::vector<Gate>& clifford_group();

struct WeightedGate {
  Gate gate;
  double weight;
};

/// Tensor-product Gauss-Legendre rule on (theta, phi, mu), Haar density folded
/// into the weights and the weights rescaled to sum to one.
std::vector<WeightedGate> su2_quadrature(std::size_t nodes_per_angle);

enum class AveragingMethod { Design, Quadrature, MonteCarlo };

std::string_view to_string(AveragingMethod m);
std::optional<AveragingMethod> parse_averaging_method(std::string_view text);

struct AveragingOptions {
  std::size_t quadrature_nodes = 24;
  std::size_t mc_samples = 100000;
  std::uint64_t seed = 7;
  /// Monte Carlo work is split into this many independently seeded streams
  /// (seed + shard index); results depend on (seed, shards) only.
  std::size_t shards = 4;
  /// Exact engines: average V before U instead of U before V.
  bool v_first = false;
};

struct OperatorAverage {
  ComplexMatrix value;
  AveragingMethod method = AveragingMethod::Design;
  std::size_t samples = 0;  // group elements, grid nodes or random draws
  /// Largest per-entry standard error (zero for the exact engines).
  double stderr_bound = 0.0;
  /// Per-entry standard errors; empty for the exact engines.
  Eigen::MatrixXd entry_stderr;
};

/// E_{U,V}[W x W^dagger] for an arbitrary operator x. Throws
/// std::invalid_argument if the pattern length does not match x, or if the
/// design engine is asked for more than kDesignMaxCopies wires of U or V.
OperatorAverage average_operator(const ComplexMatrix& x, const BoxPattern& pattern,
                                 AveragingMethod method, const AveragingOptions& options = {});

struct AverageResult {
  DensityMatrix rho;
  AveragingMethod method;
  std::size_t samples;
  double stderr_bound;
};

AverageResult average_pattern(const PureState& psi, const BoxPattern& pattern,
                              AveragingMethod method, const AveragingOptions& options = {});

/// Mean and standard error of a scalar statistic over random (U, V) draws.
struct ScalarEstimate {
  double mean = 0.0;
  double stderr_of_mean = 0.0;
  std::size_t samples = 0;
};

using UnitaryPairStatistic = std::function<double(const Gate& u, const Gate& v)>;

/// Draws `samples` (U, V) pairs (U first) split over `shards` streams seeded
/// with seed + shard index, and averages `stat`. Shards run concurrently and
/// are merged in index order.
ScalarEstimate monte_carlo_expectation(const UnitaryPairStatistic& stat, std::size_t samples,
                                       std::uint64_t seed, std::size_t shards);

struct TwirlCheck {
  std::string name;
  AveragingMethod method;
  double max_deviation;
  double stderr_bound;
  double allowed;  // deviation bound actually applied
  bool pass;
};

struct TwirlReport {
  std::vector<TwirlCheck> checks;
  bool all_pass() const;
};

/// Checks the single- and two-qubit Haar twirl identities
/// (|0><0|, |1><1| -> I/2; |0><1| -> 0; |00><00| -> P_sym/3; |00><11| -> 0;
/// |psi-><00| -> 0) under each method: design to 1e-12, quadrature to 1e-9,
/// Monte Carlo to four standard errors.
TwirlReport twirl_identity_suite(const AveragingOptions& options = {});

}  // namespace progbox
