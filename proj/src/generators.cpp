#include "antichain/generators.hpp"

#include <cmath>
#include <stdexcept>

#include "antichain/errors.hpp"
#include "antichain/normal.hpp"

namespace antichain {

std::string method_name(GeneratorMethod m) {
  switch (m) {
    case GeneratorMethod::Pair: return "pair";
    case GeneratorMethod::PD: return "pd";
    case GeneratorMethod::NormalNA: return "normal";
    case GeneratorMethod::ILHS: return "ilhs";
    case GeneratorMethod::Independent: return "independent";
  }
  throw std::logic_error("unknown method");
}

GeneratorMethod method_from_name(const std::string& name) {
  if (name == "pair") return GeneratorMethod::Pair;
  if (name == "pd") return GeneratorMethod::PD;
  if (name == "normal") return GeneratorMethod::NormalNA;
  if (name == "ilhs") return GeneratorMethod::ILHS;
  if (name == "independent") return GeneratorMethod::Independent;
  throw std::domain_error("unknown generator method: " + name);
}

void GeneratorSpec::validate() const {
  switch (method) {
    case GeneratorMethod::Pair:
      if (k != 2) throw std::domain_error("pair generator requires k = 2");
      break;
    case GeneratorMethod::PD:
      if (k < 2) throw std::domain_error("pd generator requires k >= 2");
      if (k > 64) throw capability_error("pd generator: k > 64 exhausts the fixed-point mantissa");
      break;
    case GeneratorMethod::ILHS:
      if (k < 2) throw std::domain_error("ilhs generator requires k >= 2");
      if (ilhs_iterations < 1) throw std::domain_error("ilhs generator requires T >= 1");
      break;
    case GeneratorMethod::NormalNA:
      if (k < 2) throw std::domain_error("normal generator requires k >= 2");
      break;
    case GeneratorMethod::Independent:
      if (k < 1) throw std::domain_error("independent control requires k >= 1");
      break;
  }
}

AntitheticTuple pair_antithetic(double u) {
  if (!(u > 0.0 && u < 1.0)) throw std::domain_error("pair_antithetic: u must be in (0,1)");
  AntitheticTuple t;
  t.values = {u, 1.0 - u};
  t.spec = {GeneratorMethod::Pair, 2, 0};
  t.exchangeable = false;
  return t;
}

std::vector<UnitFraction> pd_raw_exact(const UnitFraction& r1, int k) {
  if (k < 2) throw std::domain_error("pd_raw: k must be >= 2");
  if (k > 64) throw capability_error("pd_raw: k > 64 exhausts the fixed-point mantissa");
  std::vector<UnitFraction> r(static_cast<std::size_t>(k));
  r[0] = r1;
  // r_i = {2^{i-2} r_1 + 1/2}, i = 2..k-1, and r_k = 1 - {2^{k-2} r_1}
  UnitFraction shifted = r1;  // 2^{i-2} r_1 mod 1
  for (int i = 2; i < k; ++i) {
    r[static_cast<std::size_t>(i - 1)] = shifted.add_half_mod1();
    shifted = shifted.double_mod1();
  }
  if (k == 2) {
    r[1] = r1.complement();
  } else {
    r[static_cast<std::size_t>(k - 1)] = shifted.complement();
  }
  return r;
}

AntitheticTuple pd_raw(const UnitFraction& r1, int k) {
  auto exact = pd_raw_exact(r1, k);
  AntitheticTuple t;
  t.values.reserve(exact.size());
  for (const auto& f : exact) t.values.push_back(f.to_double());
  t.spec = {GeneratorMethod::PD, k, 0};
  t.exchangeable = false;
  return t;
}

AntitheticTuple pd_permuted(RandomStream& stream, int k) {
  auto exact = pd_raw_exact(UnitFraction::from_stream(stream), k);
  auto perm = sample_permutation(stream, k);
  AntitheticTuple t;
  t.values.resize(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i)
    t.values[static_cast<std::size_t>(i)] = exact[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])].to_double();
  t.spec = {GeneratorMethod::PD, k, 0};
  t.exchangeable = true;
  return t;
}

double normal_from_stream(RandomStream& stream) {
  return std_normal_quantile(stream.next_open01());
}

NormalTuple normal_na_tuple(RandomStream& stream, int k) {
  if (k < 2) throw std::domain_error("normal_na_tuple: k must be >= 2");
  NormalTuple t;
  t.k = k;
  t.values.resize(static_cast<std::size_t>(k));
  double sum = 0.0;
  for (auto& v : t.values) {
    v = normal_from_stream(stream);
    sum += v;
  }
  const double mean = sum / k;
  const double scale = std::sqrt(static_cast<double>(k) / (k - 1.0));
  for (auto& v : t.values) v = (v - mean) * scale;
  return t;
}

AntitheticTuple gaussian_to_uniform(const NormalTuple& z) {
  AntitheticTuple t;
  t.values.reserve(z.values.size());
  for (double v : z.values) {
    if (!std::isfinite(v)) throw std::domain_error("gaussian_to_uniform: non-finite input");
    t.values.push_back(std_normal_cdf(v));
  }
  t.spec = {GeneratorMethod::NormalNA, z.k, 0};
  t.exchangeable = true;
  return t;
}

AntitheticTuple ilhs_step(const AntitheticTuple& tuple, std::span<const int> perm) {
  const std::size_t k = tuple.values.size();
  if (perm.size() != k) throw std::domain_error("ilhs_step: permutation length mismatch");
  AntitheticTuple out = tuple;
  for (std::size_t i = 0; i < k; ++i)
    out.values[i] = (perm[i] + tuple.values[i]) / static_cast<double>(k);
  return out;
}

namespace {

void ilhs_fill(RandomStream& stream, int k, int iterations, std::span<double> out, std::span<int> perm) {
  for (int i = 0; i < k; ++i) out[static_cast<std::size_t>(i)] = stream.next_double();
  for (int t = 0; t < iterations; ++t) {
    sample_permutation(stream, k, perm);
    for (int i = 0; i < k; ++i) {
      auto s = static_cast<std::size_t>(i);
      out[s] = (perm[s] + out[s]) / static_cast<double>(k);
    }
  }
}

}  // namespace

AntitheticTuple ilhs_tuple(RandomStream& stream, int k, int iterations) {
  if (k < 2) throw std::domain_error("ilhs_tuple: k must be >= 2");
  if (iterations < 1) throw std::domain_error("ilhs_tuple: T must be >= 1");
  AntitheticTuple t;
  t.values.resize(static_cast<std::size_t>(k));
  std::vector<int> perm(static_cast<std::size_t>(k));
  ilhs_fill(stream, k, iterations, t.values, perm);
  t.spec = {GeneratorMethod::ILHS, k, iterations};
  t.exchangeable = true;
  return t;
}

double chi3_from_stream(RandomStream& stream) {
  double s = 0.0;
  for (int i = 0; i < 3; ++i) {
    double z = normal_from_stream(stream);
    s += z * z;
  }
  return std::sqrt(s);
}

std::vector<double> ru_tuple(RandomStream& stream, int k, bool shared_q) {
  if (k < 2) throw std::domain_error("ru_tuple: k must be >= 2");
  auto u = pd_permuted(stream, k);
  std::vector<double> x(static_cast<std::size_t>(k));
  if (shared_q) {
    const double q = chi3_from_stream(stream);
    for (int i = 0; i < k; ++i)
      x[static_cast<std::size_t>(i)] = q * (2.0 * u.values[static_cast<std::size_t>(i)] - 1.0);
  } else {
    for (int i = 0; i < k; ++i)
      x[static_cast<std::size_t>(i)] = chi3_from_stream(stream) * (2.0 * u.values[static_cast<std::size_t>(i)] - 1.0);
  }
  return x;
}

void draw_uniform_tuple(RandomStream& stream, const GeneratorSpec& spec, std::span<double> out) {
  if (static_cast<int>(out.size()) != spec.k) throw std::domain_error("draw_uniform_tuple: bad span size");
  switch (spec.method) {
    case GeneratorMethod::Pair: {
      const double u = stream.next_open01();
      out[0] = u;
      out[1] = 1.0 - u;
      return;
    }
    case GeneratorMethod::PD: {
      auto exact = pd_raw_exact(UnitFraction::from_stream(stream), spec.k);
      // stack permutation; k <= 64 here
      int perm[64];
      sample_permutation(stream, spec.k, std::span<int>(perm, static_cast<std::size_t>(spec.k)));
      for (int i = 0; i < spec.k; ++i)
        out[static_cast<std::size_t>(i)] = exact[static_cast<std::size_t>(perm[i])].to_double();
      return;
    }
    case GeneratorMethod::NormalNA: {
      NormalTuple z = normal_na_tuple(stream, spec.k);
      for (int i = 0; i < spec.k; ++i)
        out[static_cast<std::size_t>(i)] = std_normal_cdf(z.values[static_cast<std::size_t>(i)]);
      return;
    }
    case GeneratorMethod::ILHS: {
      std::vector<int> perm(static_cast<std::size_t>(spec.k));
      ilhs_fill(stream, spec.k, spec.ilhs_iterations, out, perm);
      return;
    }
    case GeneratorMethod::Independent: {
      for (int i = 0; i < spec.k; ++i) out[static_cast<std::size_t>(i)] = stream.next_open01();
      return;
    }
  }
  throw std::logic_error("unknown method");
}

AntitheticTuple draw_uniform_tuple(RandomStream& stream, const GeneratorSpec& spec) {
  spec.validate();
  AntitheticTuple t;
  t.values.resize(static_cast<std::size_t>(spec.k));
  draw_uniform_tuple(stream, spec, t.values);
  t.spec = spec;
  t.exchangeable = spec.method != GeneratorMethod::Pair;  // i.i.d. is trivially exchangeable
  return t;
}

}  // namespace antichain
