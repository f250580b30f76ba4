// Copyright 2026 The kspec Authors
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

#include <limits>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "kspec/grid.hpp"
#include "kspec/model.hpp"

namespace kspec {

// Lattice norms. Every Lq norm is a Riemann sum with weight (L/M)^N; vector
// valued fields use the pointwise Euclidean magnitude. q = infinity is the
// lattice maximum, which can only underestimate the continuum supremum.

double lebesgue_norm(const Grid& grid, const RealField& field, double q);
double lebesgue_norm(const Grid& grid, const std::vector<RealField>& components, double q);

/// sum over multi-indices |alpha| <= m of ||d^alpha f||_q, derivatives taken spectrally.
double sobolev_norm(const Grid& grid, const SpectralField& spectrum, int m, double q);
double sobolev_norm(const Grid& grid, const std::vector<SpectralField>& components, int m, double q);
/// ||theta||_{W^m_q} + ||u||_{W^l_q}.
double sobolev_pair_norm(const Grid& grid, const SpectralState& state, int m, int l, double q);

/// Littlewood-Paley blocks in lattice units r = |xi| L / (2 pi): block 0 is
/// chi(r / (1/2)) and block j >= 1 is chi(r / 2^(j-1)) - chi(r / 2^(j-2)), with
/// chi the CutoffProfile bridge. Adjacent blocks overlap and the blocks sum to 1.
struct BesovSpec {
  double s = 0.0;
  double q = 2.0;
  double p = 2.0;
};

int besov_block_count(const Grid& grid);
/// Multiplier of block j at lattice radius r.
double besov_block_weight(int j, double radius);

struct BesovEvaluation {
  double value = 0.0;
  std::vector<double> weighted_blocks;  // 2^{js} ||Delta_j f||_q
  double top_fraction = 0.0;            // share of the top block in the ell^p sum
  bool resolution_warning = false;      // top_fraction > 1%
};

BesovEvaluation besov_evaluate(const Grid& grid, const std::vector<SpectralField>& components, const BesovSpec& spec);
/// Throws ResolutionWarning when strict and the top block carries more than 1% of the norm.
double besov_norm(const Grid& grid, const SpectralField& spectrum, const BesovSpec& spec, bool strict = false);
double besov_norm(const Grid& grid, const std::vector<SpectralField>& components, const BesovSpec& spec,
                  bool strict = false);

/// sum_i ||(theta0, u0)||_{D_{q_i,p}} + ||(theta0, u0)||_{L_{q1/2}}, with
/// D_{q,p} = B^{3-2/p}_{q,p} x B^{2(1-1/p)}_{q,p}.
double data_norm_I(const SpectralState& data, const ExponentSet& exps, const Grid& grid);

/// Time samples of named norms.
class NormTimeline {
 public:
  struct Sample {
    double t = 0.0;
    std::map<std::string, double> values;
  };

  /// Times must increase strictly; values must be finite and nonnegative.
  void add(double t, std::map<std::string, double> values);
  const std::vector<Sample>& samples() const noexcept { return samples_; }
  bool empty() const noexcept { return samples_.empty(); }
  bool has(const std::string& name) const;
  /// Long-format CSV with header t,name,value.
  void write_csv(std::ostream& os) const;

 private:
  std::vector<Sample> samples_;
};

std::string exponent_label(double q);
/// "L<q>(D^j(theta,u))": ||grad^j theta||_q + ||grad^j u||_q.
std::string gradient_pair_name(int j, double q);
/// "W^{m,l}_<q>(theta,u)".
std::string sobolev_pair_name(int m, int l, double q);
/// "W^{1,0}_<q>(dt theta,dt u)".
std::string time_derivative_name(double q);

/// ||grad^j theta||_q + ||grad^j u||_q for j in {0, 1}.
double gradient_pair_norm(const Grid& grid, const SpectralState& state, int j, double q);

/// Everything script_N needs at one instant; `time_derivative` is (theta_t, u_t).
std::map<std::string, double> script_N_constituents(const Grid& grid, const SpectralState& state,
                                                    const SpectralState& time_derivative, const ExponentSet& exps);

/// The per-field catalogue: Lq of theta, u, grad theta, grad u and W^m_q of
/// theta and u for m <= 3 and q in {q1/2, q1, q2, 2, inf}.
std::map<std::string, double> standard_norms(const Grid& grid, const SpectralState& state, const ExponentSet& exps);

/// max over samples with t_k <= t of (1 + t_k)^ell value_k.
double weighted_sup(const NormTimeline& timeline, const std::string& name, double ell,
                    double t = std::numeric_limits<double>::infinity());

/// (int_0^t ((1+s)^ell value(s))^p ds)^(1/p) by the trapezoid rule on the samples.
double weighted_time_lp(const NormTimeline& timeline, const std::string& name, double ell, double p,
                        double t = std::numeric_limits<double>::infinity());

/// The composite functional: for j in {0,1} and i in {1,2}, the three weighted
/// sups of (grad^j theta, grad^j u) in L_inf, L_q1, L_q2 plus the two weighted
/// L_p-in-time terms in W^{3,2}_{q_i} and W^{1,0}_{q_i}. Throws MissingConstituent.
double script_N(const NormTimeline& timeline, const ExponentSet& exps,
                double t = std::numeric_limits<double>::infinity());

}  // namespace kspec
