#pragma once

#include <span>
#include <string>
#include <vector>

#include "antichain/random.hpp"
#include "antichain/unit_fraction.hpp"

namespace antichain {

enum class GeneratorMethod { Pair, PD, NormalNA, ILHS, Independent };

std::string method_name(GeneratorMethod m);
GeneratorMethod method_from_name(const std::string& name);

// Which k-tuple construction to use, with its parameters. Independent is the
// degenerate control arm (k i.i.d. uniforms).
struct GeneratorSpec {
  GeneratorMethod method = GeneratorMethod::ILHS;
  int k = 2;
  int ilhs_iterations = 7;  // T, ILHS only

  void validate() const;
};

// One joint draw of k marginally-uniform variates plus provenance.
struct AntitheticTuple {
  std::vector<double> values;
  GeneratorSpec spec;
  bool exchangeable = false;
};

// One joint draw of k N(0,1) variates with pairwise correlation -1/(k-1)
// and exactly zero sum by construction.
struct NormalTuple {
  std::vector<double> values;
  int k = 0;
};

// Classical quantile pair {u, 1-u}.
AntitheticTuple pair_antithetic(double u);

// Permuted displacement, Arvidsen-Johnsson dyadic shifts, unpermuted.
// Exact 128-bit fixed point; 2 <= k <= 64.
std::vector<UnitFraction> pd_raw_exact(const UnitFraction& r1, int k);
AntitheticTuple pd_raw(const UnitFraction& r1, int k);

// Displacement vector under a uniform random permutation; exchangeable,
// sum exactly k/2, pairwise correlation -1/(k-1).
AntitheticTuple pd_permuted(RandomStream& stream, int k);

// (Z_1,...,Z_k) exchangeable standard normals with pairwise correlation
// -1/(k-1), built by centering k i.i.d. normals and rescaling by
// sqrt(k/(k-1)); sum is zero up to accumulation rounding.
NormalTuple normal_na_tuple(RandomStream& stream, int k);

// Entrywise Phi; negative association survives the monotone map.
AntitheticTuple gaussian_to_uniform(const NormalTuple& z);

// One refinement step U <- (perm + U)/k.
AntitheticTuple ilhs_step(const AntitheticTuple& tuple, std::span<const int> perm);

// Iterative Latin hypercube sample: T refinement steps from an i.i.d. start.
// Pairwise correlation -(1/(k-1))(1 - k^{-2T}).
AntitheticTuple ilhs_tuple(RandomStream& stream, int k, int iterations);

// Rueschendorf-Uckelmann scale construction for N(0,1) margins:
// X_i = Q V_i with Q chi(3) (density 2 x^2 phi(x) on x >= 0) and
// (V_1,...,V_k) exchangeable Uniform(-1,1) summing to zero exactly
// (V_i = 2 U_i - 1 with U from pd_permuted). shared_q gives extreme
// antithesis (sum X_i = 0); independent Q_i trade it for negative
// association, with correlation -(1/(k-1)) / (1 + CV^2(Q)).
std::vector<double> ru_tuple(RandomStream& stream, int k, bool shared_q);

// In-place uniform k-tuple draw per spec; `out` must have size spec.k.
// This is the allocation-free path used by the coupling engine.
void draw_uniform_tuple(RandomStream& stream, const GeneratorSpec& spec, std::span<double> out);

AntitheticTuple draw_uniform_tuple(RandomStream& stream, const GeneratorSpec& spec);

// Draw from chi distribution with 3 degrees of freedom.
double chi3_from_stream(RandomStream& stream);

// One N(0,1) draw by quantile transform (monotone in the uniform consumed).
double normal_from_stream(RandomStream& stream);

}  // namespace antichain
