#pragma once

#include <cstdint>
#include <string>

#include "qbivar/data.hpp"
#include "qbivar/model.hpp"

namespace qbd {

/// Counter-based SplitMix64: the k-th output of a stream depends only on
/// (seed, stream, k), so any block of draws can be produced independently.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) : key_(mix(seed ^ mix(stream + 1))) {}
  [[nodiscard]] std::uint64_t bits(std::uint64_t k) const;
  /// Uniform on the open interval (0, 1) with 53 random bits.
  [[nodiscard]] double uniform(std::uint64_t k) const;
  static std::uint64_t mix(std::uint64_t z);

 private:
  std::uint64_t key_;
};

enum class SamplerMethod { transform, exact };

std::string sampler_name(SamplerMethod m);
SamplerMethod sampler_from_name(const std::string& name);

struct SamplerSpec {
  std::uint64_t seed = 0;
  std::size_t n = 1;
  SamplerMethod method = SamplerMethod::exact;
};

/// P(X2 > x2 | X1 = Q1(u1)) obtained by differentiating the joint survival in
/// x1, written at the level v with x2 = (1 + theta u1) Q2(v):
///   (1 - v) - (1 - u1) theta Q2(v) / ((1 + theta u1) q2(v)).
/// Where this drops below zero the survival construction is not a proper
/// distribution; the exact sampler then puts no mass beyond the first zero.
double exact_conditional_survival(const BivariateParams& bp, double u1, double v,
                                  const NumericConfig& cfg = {});

/// transform: (Q1(U1), (1 + theta U1) Q2(U2)) with independent uniforms.
/// exact: X1 = Q1(U1), then X2 by inverting exact_conditional_survival at 1 - U2.
/// Draw i uses counters 2i and 2i+1 of stream 0.
PairedSample draw(const BivariateParams& bp, const SamplerSpec& spec,
                  const NumericConfig& cfg = {});

}  // namespace qbd
