#include "spinlab/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "spinlab/errors.hpp"

namespace spinlab {

namespace {
bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }
}  // namespace

ModelParams ModelParams::bias_voter(double lambda, double theta) {
  if (!positive_finite(lambda) || !positive_finite(theta) || !(lambda > theta)) {
    throw InvalidParameter("bias voter requires lambda > theta > 0");
  }
  return {Dynamics::bias_voter, lambda, theta, Normalization::degree};
}

ModelParams ModelParams::classic_voter(double rate) {
  if (!positive_finite(rate)) throw InvalidParameter("classic voter requires rate > 0");
  return {Dynamics::bias_voter, rate, rate, Normalization::degree};
}

ModelParams ModelParams::contact(double lambda) {
  if (!positive_finite(lambda)) throw InvalidParameter("contact process requires lambda > 0");
  return {Dynamics::contact, lambda, 1.0, Normalization::degree};
}

std::string ModelParams::describe() const {
  std::string out = dynamics == Dynamics::contact ? "contact(lambda=" : "bias_voter(lambda=";
  out += std::to_string(lambda);
  if (dynamics == Dynamics::bias_voter) out += ",theta=" + std::to_string(theta);
  if (normalization == Normalization::vertex_count) out += ",norm=|V|";
  return out + ")";
}

Configuration::Configuration(const Graph& g, std::uint8_t fill)
    : spins_(g.size(), fill), fingerprint_(g.fingerprint()) {
  if (fill > 1) throw InvalidParameter("spin values are 0 or 1");
}

Configuration::Configuration(const Graph& g, std::vector<std::uint8_t> spins)
    : spins_(std::move(spins)), fingerprint_(g.fingerprint()) {
  if (spins_.size() != g.size()) throw InvalidParameter("configuration size differs from graph");
  if (std::any_of(spins_.begin(), spins_.end(), [](std::uint8_t s) { return s > 1; })) {
    throw InvalidParameter("spin values are 0 or 1");
  }
}

std::uint64_t Configuration::count_ones() const {
  return std::accumulate(spins_.begin(), spins_.end(), std::uint64_t{0});
}

bool Configuration::is_uniform(std::uint8_t value) const {
  return std::all_of(spins_.begin(), spins_.end(), [value](std::uint8_t s) { return s == value; });
}

}  // namespace spinlab
